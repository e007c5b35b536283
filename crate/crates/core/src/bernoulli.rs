//! Bernoulli numbers and two evaluation strategies for Bernoulli
//! polynomials: a deliberately naive one, recomputing every power of the
//! argument from scratch, and a batch one amortizing work across all
//! degrees at a fixed argument.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write as _;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{fmt_rat, BigInt, BigRat, MulCounter};

/// Bernoulli numbers `B_0 ..= B_max`, with the convention `B_1 = -1/2`.
#[derive(Debug, Clone)]
pub struct BernTable {
    values: Vec<BigRat>,
}

/// Build the table by the defining recurrence
/// `B_n = -1/(n+1) * sum_{k<n} C(n+1, k) B_k`, all indices computed — the
/// vanishing of odd indices past 1 falls out rather than being assumed.
pub fn bernoulli_table(max_index: u32, ctr: &mut MulCounter) -> BernTable {
    let mut values = Vec::with_capacity(max_index as usize + 1);
    values.push(BigRat::one());
    // row holds the binomials C(n+1, 0..=n+1) for the n under construction
    let mut row: Vec<BigInt> = vec![BigInt::one(), BigInt::one()];
    for n in 1..=max_index as usize {
        // extend Pascal's triangle from C(n, .) to C(n+1, .)
        row.push(BigInt::one());
        for i in (1..row.len() - 1).rev() {
            let s = &row[i] + &row[i - 1];
            row[i] = s;
        }
        let mut sum = BigRat::zero();
        for (k, b) in values.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let term = ctr.mul_rat_int(b, &row[k]);
            sum = ctr.add_rat(&sum, &term);
        }
        let b = ctr.div_rat_int(&-sum, &BigInt::from(n as u64 + 1));
        values.push(b);
    }
    BernTable { values }
}

impl BernTable {
    /// Largest index the table holds.
    pub fn max_index(&self) -> u32 {
        (self.values.len() - 1) as u32
    }

    /// `B_i`, or a `TableUnderflow` error past the built range.
    pub fn get(&self, i: u32) -> Result<&BigRat> {
        self.values.get(i as usize).ok_or(Error::TableUnderflow {
            needed: i,
            max: self.max_index(),
        })
    }

    pub fn values(&self) -> &[BigRat] {
        &self.values
    }

    /// The least common denominator `L` together with the integer
    /// numerators `B_i * L`, in index order.
    pub fn common_denominator_view(&self) -> (BigInt, Vec<BigInt>) {
        let mut l = BigInt::one();
        for v in &self.values {
            l = num_integer::lcm(l, v.denom().clone());
        }
        let numerators = self
            .values
            .iter()
            .map(|v| v.numer() * (&l / v.denom()))
            .collect();
        (l, numerators)
    }

    /// One `index value` line per entry, values in `num/den` form.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (i, v) in self.values.iter().enumerate() {
            let _ = writeln!(out, "{} {}", i, fmt_rat(v));
        }
        out
    }
}

/// `B_r(x) = sum_s C(r, s) B_{r-s} x^s` evaluated term by term, each power
/// `x^s` rebuilt from scratch by repeated multiplication.  Quadratically
/// many products in `r` for a single value; the point of this evaluator is
/// to be the honest baseline the batch strategy is measured against.
pub fn bern_poly_naive(
    r: u32,
    x: &BigRat,
    table: &BernTable,
    ctr: &mut MulCounter,
) -> Result<BigRat> {
    if r > table.max_index() {
        return Err(Error::TableUnderflow {
            needed: r,
            max: table.max_index(),
        });
    }
    let mut acc = table.get(r)?.clone(); // s = 0 term
    let mut binom = BigInt::one(); // C(r, s), updated multiplicatively
    for s in 1..=r {
        binom = ctr.mul(&binom, &BigInt::from(r - s + 1));
        binom /= BigInt::from(s); // exact: consecutive binomials divide
        let b = table.get(r - s)?;
        let pw = ctr.pow_rat_repeated(x, s);
        if b.is_zero() {
            continue;
        }
        let coef = ctr.mul_rat_int(b, &binom);
        let term = ctr.mul_rat(&coef, &pw);
        acc = ctr.add_rat(&acc, &term);
    }
    Ok(acc)
}

/// All values `B_0(x) ..= B_max(x)` at one argument.
#[derive(Debug, Clone)]
pub struct BernPolyBatch {
    argument: BigRat,
    values: Vec<BigRat>,
}

impl BernPolyBatch {
    pub fn argument(&self) -> &BigRat {
        &self.argument
    }

    pub fn max_degree(&self) -> u32 {
        (self.values.len() - 1) as u32
    }

    pub fn get(&self, r: u32) -> Result<&BigRat> {
        self.values.get(r as usize).ok_or(Error::TableUnderflow {
            needed: r,
            max: self.max_degree(),
        })
    }
}

/// Evaluate every `B_r(x)` for `r <= max_degree` at a fixed `x`, one Horner
/// pass per degree over coefficients `C(r, s) B_{r-s}`, binomials kept as a
/// running Pascal row.  Linearly many products per degree, so the whole
/// batch costs what a handful of naive top-degree evaluations would.
pub fn bern_poly_batch(
    max_degree: u32,
    x: &BigRat,
    table: &BernTable,
    ctr: &mut MulCounter,
) -> Result<BernPolyBatch> {
    if max_degree > table.max_index() {
        return Err(Error::TableUnderflow {
            needed: max_degree,
            max: table.max_index(),
        });
    }
    let mut values = Vec::with_capacity(max_degree as usize + 1);
    values.push(BigRat::one());
    let mut row: Vec<BigInt> = vec![BigInt::one()]; // C(0, .)
    for r in 1..=max_degree {
        row.push(BigInt::one());
        for i in (1..row.len() - 1).rev() {
            let s = &row[i] + &row[i - 1];
            row[i] = s;
        }
        // Horner in x: coefficient of x^s is C(r, s) B_{r-s}; the top
        // coefficient is B_0 = 1.
        let mut acc = BigRat::one();
        for s in (0..r).rev() {
            acc = ctr.mul_rat(&acc, x);
            let b = table.get(r - s)?;
            if b.is_zero() {
                continue;
            }
            let coef = ctr.mul_rat_int(b, &row[s as usize]);
            acc = ctr.add_rat(&acc, &coef);
        }
        values.push(acc);
    }
    Ok(BernPolyBatch {
        argument: x.clone(),
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_rat;

    fn rat(n: i64, d: i64) -> BigRat {
        BigRat::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn known_values() {
        let mut ctr = MulCounter::new();
        let t = bernoulli_table(12, &mut ctr);
        assert_eq!(t.get(0).unwrap(), &BigRat::one());
        assert_eq!(t.get(1).unwrap(), &rat(-1, 2));
        assert_eq!(t.get(2).unwrap(), &rat(1, 6));
        assert_eq!(t.get(4).unwrap(), &rat(-1, 30));
        assert_eq!(t.get(6).unwrap(), &rat(1, 42));
        assert_eq!(t.get(8).unwrap(), &rat(-1, 30));
        assert_eq!(t.get(10).unwrap(), &rat(5, 66));
        assert_eq!(t.get(12).unwrap(), &rat(-691, 2730));
        assert!(ctr.mults() > 0);
    }

    #[test]
    fn odd_indices_vanish_from_recurrence() {
        let mut ctr = MulCounter::new();
        let t = bernoulli_table(25, &mut ctr);
        for i in (3..=25).step_by(2) {
            assert!(t.get(i).unwrap().is_zero(), "B_{i} must vanish");
        }
    }

    #[test]
    fn von_staudt_clausen_denominators() {
        // denominator of B_2k is the product of primes p with p-1 | 2k
        let mut ctr = MulCounter::new();
        let t = bernoulli_table(30, &mut ctr);
        for k in 1..=15u32 {
            let n = 2 * k;
            let mut den = BigInt::one();
            for p in 2..=n + 1 {
                let is_prime = (2..p).all(|q| p % q != 0);
                if is_prime && n % (p - 1) == 0 {
                    den *= BigInt::from(p);
                }
            }
            assert_eq!(t.get(n).unwrap().denom(), &den, "denominator of B_{n}");
        }
    }

    #[test]
    fn underflow_reported() {
        let mut ctr = MulCounter::new();
        let t = bernoulli_table(8, &mut ctr);
        assert_eq!(
            t.get(9),
            Err(Error::TableUnderflow { needed: 9, max: 8 })
        );
        let x = rat(1, 3);
        assert!(matches!(
            bern_poly_naive(9, &x, &t, &mut ctr),
            Err(Error::TableUnderflow { needed: 9, max: 8 })
        ));
        assert!(matches!(
            bern_poly_batch(9, &x, &t, &mut ctr),
            Err(Error::TableUnderflow { needed: 9, max: 8 })
        ));
    }

    #[test]
    fn polynomial_values() {
        let mut ctr = MulCounter::new();
        let t = bernoulli_table(6, &mut ctr);
        // B_2(x) = x^2 - x + 1/6
        let b = bern_poly_naive(2, &rat(1, 2), &t, &mut ctr).unwrap();
        assert_eq!(b, rat(-1, 12));
        let b = bern_poly_naive(2, &rat(1, 5), &t, &mut ctr).unwrap();
        assert_eq!(b, rat(1, 150));
        let b = bern_poly_naive(6, &rat(1, 5), &t, &mut ctr).unwrap();
        assert_eq!(b, parse_rat("4537/656250").unwrap());
        let b = bern_poly_naive(6, &rat(2, 5), &t, &mut ctr).unwrap();
        assert_eq!(b, parse_rat("-12347/656250").unwrap());
    }

    #[test]
    fn endpoints_recover_numbers() {
        let mut ctr = MulCounter::new();
        let t = bernoulli_table(14, &mut ctr);
        for r in 0..=14 {
            let at0 = bern_poly_naive(r, &BigRat::zero(), &t, &mut ctr).unwrap();
            assert_eq!(&at0, t.get(r).unwrap(), "B_{r}(0) = B_{r}");
            let at1 = bern_poly_naive(r, &BigRat::one(), &t, &mut ctr).unwrap();
            let expect = if r == 1 { rat(1, 2) } else { t.get(r).unwrap().clone() };
            assert_eq!(at1, expect, "B_{r}(1) = (-1)^{r} B_{r}");
        }
    }

    #[test]
    fn batch_matches_naive() {
        let mut ctr = MulCounter::new();
        let t = bernoulli_table(20, &mut ctr);
        for (n, d) in [(1i64, 5i64), (2, 5), (3, 7), (1, 2), (7, 11), (-3, 4)] {
            let x = rat(n, d);
            let batch = bern_poly_batch(20, &x, &t, &mut ctr).unwrap();
            for r in 0..=20 {
                let naive = bern_poly_naive(r, &x, &t, &mut ctr).unwrap();
                assert_eq!(batch.get(r).unwrap(), &naive, "degree {r} at {n}/{d}");
            }
        }
    }

    #[test]
    fn common_denominator_reconstructs() {
        let mut ctr = MulCounter::new();
        let t = bernoulli_table(12, &mut ctr);
        let (l, nums) = t.common_denominator_view();
        assert_eq!(nums.len(), t.values().len());
        for (i, v) in t.values().iter().enumerate() {
            assert_eq!(BigRat::new(nums[i].clone(), l.clone()), *v);
        }
        // the denominator of B_12 divides the common one
        assert_eq!(&l % 2730u32, BigInt::zero());
    }

    #[test]
    fn dump_shape() {
        let mut ctr = MulCounter::new();
        let t = bernoulli_table(3, &mut ctr);
        assert_eq!(t.dump(), "0 1\n1 -1/2\n2 1/6\n3 0\n");
    }

    // Count growth: batch work at degree 2M within a constant of 4x the
    // work at M (quadratic), naive single top-degree evaluations within a
    // constant of 8x (cubic).  Bands pinned from measurement with slack.
    #[test]
    fn count_growth_batch_quadratic() {
        let x = rat(1, 5);
        let mut counts = Vec::new();
        for m in [16u32, 32, 64] {
            let mut build = MulCounter::new();
            let t = bernoulli_table(m, &mut build);
            let mut ctr = MulCounter::new();
            bern_poly_batch(m, &x, &t, &mut ctr).unwrap();
            counts.push(ctr.mults());
        }
        for w in counts.windows(2) {
            let ratio = w[1] as f64 / w[0] as f64;
            assert!(
                ratio <= 4.5,
                "batch doubling ratio {ratio} exceeds quadratic band, counts {counts:?}"
            );
            assert!(ratio >= 3.0, "batch doubling ratio {ratio} suspiciously low");
        }
    }

    #[test]
    fn count_growth_naive_cubic() {
        // evaluating every degree up to M naively is cubic overall
        let x = rat(1, 5);
        let mut counts = Vec::new();
        for m in [16u32, 32, 64] {
            let mut build = MulCounter::new();
            let t = bernoulli_table(m, &mut build);
            let mut ctr = MulCounter::new();
            for r in 0..=m {
                bern_poly_naive(r, &x, &t, &mut ctr).unwrap();
            }
            counts.push(ctr.mults());
        }
        for w in counts.windows(2) {
            let ratio = w[1] as f64 / w[0] as f64;
            assert!(
                (6.5..=9.0).contains(&ratio),
                "degreewise naive doubling ratio {ratio} out of band, counts {counts:?}"
            );
        }
    }

    #[test]
    fn batch_cheaper_than_degreewise_naive() {
        let x = rat(2, 7);
        for m in [8u32, 16, 32] {
            let mut build = MulCounter::new();
            let t = bernoulli_table(m, &mut build);
            let mut batch_ctr = MulCounter::new();
            bern_poly_batch(m, &x, &t, &mut batch_ctr).unwrap();
            let mut naive_ctr = MulCounter::new();
            for r in 0..=m {
                bern_poly_naive(r, &x, &t, &mut naive_ctr).unwrap();
            }
            assert!(
                batch_ctr.mults() < naive_ctr.mults(),
                "batch {} not below degreewise naive {} at M = {m}",
                batch_ctr.mults(),
                naive_ctr.mults()
            );
        }
    }
}
