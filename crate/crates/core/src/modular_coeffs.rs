//! Truncated integer q-series and the pipeline that extracts, for each
//! `m`, the integer coefficients tying zeta values to divisor-sum
//! convolutions.
//!
//! The pipeline forms `T_4m = G_w * delta^(-r)` with `r = floor(m/3) + 1`
//! and the weight `w` cycling through 10, 6, 14 as `m` runs mod 3; the
//! principal-part coefficients of `T_4m` at `q^0, q^-1, ..., q^-r` are the
//! table.  Everything is exact integer arithmetic on finite windows.

use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::bernoulli::{bernoulli_table, BernTable};
use crate::error::{Error, Result};
use crate::exact::{BigInt, MulCounter};

/// Integer Laurent series window: coefficients of `q^lead ..= q^trunc`,
/// everything below `lead` implicitly zero, everything above `trunc`
/// unknown.  Nonempty by construction (`coeffs` holds at least one entry).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntSeries {
    lead: i64,
    coeffs: Vec<BigInt>,
}

impl IntSeries {
    /// Wrap explicit coefficients for `q^lead` onward.
    pub fn from_coeffs(lead: i64, coeffs: Vec<BigInt>) -> IntSeries {
        assert!(!coeffs.is_empty(), "a series window holds at least one term");
        IntSeries { lead, coeffs }
    }

    pub fn lead(&self) -> i64 {
        self.lead
    }

    /// Highest exponent the window still knows.
    pub fn trunc(&self) -> i64 {
        self.lead + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `q^e`: zero below the lead, `None` past the window.
    pub fn known_coeff(&self, e: i64) -> Option<BigInt> {
        if e < self.lead {
            Some(BigInt::zero())
        } else if e <= self.trunc() {
            Some(self.coeffs[(e - self.lead) as usize].clone())
        } else {
            None
        }
    }

    /// Multiply by `q^delta`.
    pub fn shift(mut self, delta: i64) -> IntSeries {
        self.lead += delta;
        self
    }
}

/// Product of two windows.  The result is only known up to
/// `min(trunc_a + lead_b, trunc_b + lead_a)`; both inputs have nonempty
/// windows, so the output window is nonempty too.
pub fn series_mul(a: &IntSeries, b: &IntSeries, ctr: &mut MulCounter) -> IntSeries {
    let lead = a.lead + b.lead;
    let trunc = (a.trunc() + b.lead).min(b.trunc() + a.lead);
    let mut out = vec![BigInt::zero(); (trunc - lead + 1) as usize];
    for (i, ca) in a.coeffs.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        let ea = a.lead + i as i64;
        for (j, cb) in b.coeffs.iter().enumerate() {
            if cb.is_zero() {
                continue;
            }
            let e = ea + b.lead + j as i64;
            if e > trunc {
                break;
            }
            out[(e - lead) as usize] += ctr.mul(ca, cb);
        }
    }
    IntSeries { lead, coeffs: out }
}

/// Invert a window whose leading coefficient is a unit (`1` or `-1`), by
/// the linear recurrence the relation `a * b = 1` imposes.  The result
/// window has lead `-a.lead` and the width it can honestly claim,
/// `a.trunc() - 2 * a.lead`.
pub fn series_invert(a: &IntSeries, ctr: &mut MulCounter) -> Result<IntSeries> {
    let a0 = &a.coeffs[0];
    let negate = if a0.is_one() {
        true
    } else if (-a0).is_one() {
        false
    } else {
        return Err(Error::Domain("series inversion needs a unit leading coefficient"));
    };
    let n = a.coeffs.len();
    let mut b = vec![BigInt::zero(); n];
    b[0] = a0.clone();
    for t in 1..n {
        let mut s = BigInt::zero();
        for i in 1..=t {
            if a.coeffs[i].is_zero() || b[t - i].is_zero() {
                continue;
            }
            s += ctr.mul(&a.coeffs[i], &b[t - i]);
        }
        b[t] = if negate { -s } else { s };
    }
    Ok(IntSeries {
        lead: -a.lead,
        coeffs: b,
    })
}

/// Partition numbers as a series window `sum p(n) q^n`, `n <= n_max`, by
/// the pentagonal-number recurrence.  Additions only; nothing to count.
pub fn partition_series(n_max: i64) -> IntSeries {
    assert!(n_max >= 0);
    let mut p = Vec::with_capacity(n_max as usize + 1);
    p.push(BigInt::one());
    for n in 1..=n_max {
        let mut acc = BigInt::zero();
        let mut k = 1i64;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            let g2 = k * (3 * k + 1) / 2;
            if g1 > n {
                break;
            }
            let sign = k % 2 == 1;
            let take = |g: i64, acc: &mut BigInt| {
                if g <= n {
                    let v = &p[(n - g) as usize];
                    if sign {
                        *acc += v;
                    } else {
                        *acc -= v;
                    }
                }
            };
            take(g1, &mut acc);
            take(g2, &mut acc);
            k += 1;
        }
        p.push(acc);
    }
    IntSeries { lead: 0, coeffs: p }
}

/// The weight-3/2 theta factor `sum (-1)^n (2n+1) q^(n(n+1)/2)`.
pub fn theta_series(trunc: i64) -> IntSeries {
    assert!(trunc >= 0);
    let mut coeffs = vec![BigInt::zero(); trunc as usize + 1];
    let mut n = 0i64;
    loop {
        let e = n * (n + 1) / 2;
        if e > trunc {
            break;
        }
        let v = 2 * n + 1;
        coeffs[e as usize] = BigInt::from(if n % 2 == 0 { v } else { -v });
        n += 1;
    }
    IntSeries { lead: 0, coeffs }
}

/// The discriminant cusp form `delta = q * theta^8`, window up to
/// `q^trunc`, `trunc >= 1`.  Its coefficients are the tau values
/// `1, -24, 252, -1472, ...`.
pub fn delta(trunc: i64, ctr: &mut MulCounter) -> IntSeries {
    assert!(trunc >= 1);
    let th = theta_series(trunc - 1);
    let sq = series_mul(&th, &th, ctr);
    let quad = series_mul(&sq, &sq, ctr);
    let oct = series_mul(&quad, &quad, ctr);
    oct.shift(1)
}

/// `delta^(-1)` known through `q^trunc`, `trunc >= -1`; the window starts
/// at `q^-1` with coefficient 1.
pub fn delta_inverse(trunc: i64, ctr: &mut MulCounter) -> IntSeries {
    assert!(trunc >= -1);
    let d = delta(trunc + 2, ctr);
    series_invert(&d, ctr).expect("delta leads with coefficient 1")
}

/// Eisenstein series `G_k = 1 - (2k / B_k) sum sigma_(k-1)(n) q^n` for the
/// three weights the pipeline cycles through; the normalizer `2k / B_k` is
/// integral exactly there (504, 264, 24).
pub fn eisenstein(
    k: u32,
    trunc: i64,
    table: &BernTable,
    ctr: &mut MulCounter,
) -> Result<IntSeries> {
    if !matches!(k, 6 | 10 | 14) {
        return Err(Error::UnsupportedWeight(k));
    }
    if trunc < 0 {
        return Err(Error::Domain("Eisenstein window must include q^0"));
    }
    let b = table.get(k)?;
    let scaled = ctr.mul(&BigInt::from(2 * k), b.denom());
    let (factor, rem) = scaled.div_rem(b.numer());
    if !rem.is_zero() {
        return Err(Error::Internal("Eisenstein normalizer is not integral"));
    }
    let mut coeffs = Vec::with_capacity(trunc as usize + 1);
    coeffs.push(BigInt::one());
    for n in 1..=trunc {
        let s = crate::arith_functions::sigma(k - 1, &BigInt::from(n), None, ctr)?;
        coeffs.push(-ctr.mul(&factor, &s));
    }
    Ok(IntSeries { lead: 0, coeffs })
}

/// Coefficient table for one `m`: `c[l]` is the coefficient of `q^-l` in
/// `T_4m` for `1 <= l <= r`, and `c[0]` is its constant term — the
/// normalizer the zeta formulas divide by.  Invariants checked at build
/// time: `c[r] = 1` and `c[0] != 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffTable {
    pub m: u32,
    pub r: u32,
    pub c: Vec<BigInt>,
}

/// Builds coefficient tables for ascending `m`, holding one running power
/// `delta^(-r)` that deepens only when `r` grows — the reason requests must
/// not rewind.
#[derive(Debug, Clone)]
pub struct CoeffPipeline {
    r_max: u32,
    g6: IntSeries,
    g10: IntSeries,
    g14: IntSeries,
    delta_inv: IntSeries,
    current: IntSeries,
    r_cur: u32,
}

impl CoeffPipeline {
    /// Size every window for the range `2m <= m_upper` (`m_upper` even,
    /// at least 2): the deepest power needed is `r_max = m_upper / 6 + 1`.
    pub fn new(m_upper: u32, ctr: &mut MulCounter) -> Result<CoeffPipeline> {
        if m_upper < 2 || !m_upper.is_multiple_of(2) {
            return Err(Error::Domain("range bound must be even and at least 2"));
        }
        let r_max = m_upper / 6 + 1;
        let t = i64::from(r_max);
        let bern = bernoulli_table(14, ctr);
        let g6 = eisenstein(6, t, &bern, ctr)?;
        let g10 = eisenstein(10, t, &bern, ctr)?;
        let g14 = eisenstein(14, t, &bern, ctr)?;
        let delta_inv = delta_inverse(t, ctr);
        let current = delta_inv.clone();
        Ok(CoeffPipeline {
            r_max,
            g6,
            g10,
            g14,
            delta_inv,
            current,
            r_cur: 1,
        })
    }

    pub fn r_max(&self) -> u32 {
        self.r_max
    }

    /// The table for one `m`.  Requests must arrive with nondecreasing
    /// `r = floor(m/3) + 1`; a deeper power than the window was sized for
    /// is a `Window` error.
    pub fn coeff_table(&mut self, m: u32, ctr: &mut MulCounter) -> Result<CoeffTable> {
        if m == 0 {
            return Err(Error::Domain("m must be at least 1"));
        }
        let r = m / 3 + 1;
        if r > self.r_max {
            return Err(Error::Window {
                needed_r: r,
                r_max: self.r_max,
            });
        }
        if r < self.r_cur {
            return Err(Error::Domain("coefficient requests must not rewind"));
        }
        while self.r_cur < r {
            self.current = series_mul(&self.current, &self.delta_inv, ctr);
            self.r_cur += 1;
        }
        let w = 12 * r + 2 - 4 * m;
        let g = match w {
            6 => &self.g6,
            10 => &self.g10,
            14 => &self.g14,
            _ => return Err(Error::Internal("weight cycle left {6, 10, 14}")),
        };
        let t = series_mul(g, &self.current, ctr);
        let mut c = Vec::with_capacity(r as usize + 1);
        for l in 0..=i64::from(r) {
            match t.known_coeff(-l) {
                Some(v) => c.push(v),
                None => return Err(Error::Internal("window lost the principal part")),
            }
        }
        if !c[r as usize].is_one() {
            return Err(Error::Internal("principal part must lead with 1"));
        }
        if c[0].is_zero() {
            return Err(Error::Internal("constant coefficient vanished"));
        }
        Ok(CoeffTable { m, r, c })
    }
}
