//! Exact integers and rationals, plus the instrumented multiplication
//! counter every algorithm in this crate reports through.

use alloc::string::String;
use core::fmt::Write as _;

use num_traits::{One, Signed, Zero};

pub use num_bigint::BigInt;

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator (the underlying `Ratio` normalizes on construction).
pub type BigRat = num_rational::BigRational;

/// `p`-adic valuation of a rational: the exponent of `p` in its
/// factorization, or `Infinite` for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    /// The valuation as a plain integer, `None` when infinite.
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

/// Exponent of `p` in `n`; `n` must be nonzero, `p` at least 2.
fn int_valuation(n: &BigInt, p: &BigInt) -> i64 {
    debug_assert!(!n.is_zero());
    let mut m = n.abs();
    let mut v = 0i64;
    loop {
        let (q, r) = num_integer::Integer::div_rem(&m, p);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

/// `p`-adic valuation of `q`.  Negative when `p` divides the denominator;
/// `q` in lowest terms means at most one side carries `p`.
pub fn valuation(q: &BigRat, p: &BigInt) -> Valuation {
    assert!(*p >= BigInt::from(2), "valuation needs p >= 2");
    if q.is_zero() {
        return Valuation::Infinite;
    }
    let vn = int_valuation(q.numer(), p);
    if vn > 0 {
        return Valuation::Finite(vn);
    }
    Valuation::Finite(-int_valuation(q.denom(), p))
}

/// `ceil(log2 x)` for `x >= 1`, with `ceil_lg(0) = ceil_lg(1) = 0`.
fn ceil_lg(x: u64) -> u64 {
    if x <= 1 {
        0
    } else {
        64 - u64::from((x - 1).leading_zeros())
    }
}

/// Counts every multiplication an algorithm performs, in three currencies:
/// a plain count, a schoolbook cost `t * t'`, and a softly-weighted cost
/// `t * (1 + ceil(lg t'))^2` standing in for subquadratic multiplication —
/// `t` the bit length of the larger operand, `t'` of the smaller.
///
/// Rational operations are charged in integer multiplications: a product is
/// two, a cross-denominator sum is three, a same-denominator sum is free.
/// Divisions, gcds and additions of integers are never charged.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MulCounter {
    mults: u64,
    naive_cost: u128,
    fast_cost: u128,
}

impl MulCounter {
    pub fn new() -> Self {
        Self::default()
    }

    /// Plain number of integer multiplications.
    pub fn mults(&self) -> u64 {
        self.mults
    }

    /// Accumulated `t * t'` cost.
    pub fn naive_cost(&self) -> u128 {
        self.naive_cost
    }

    /// Accumulated `t * (1 + ceil(lg t'))^2` cost.
    pub fn fast_cost(&self) -> u128 {
        self.fast_cost
    }

    pub fn reset(&mut self) {
        *self = Self::default();
    }

    /// Fold another counter's tallies into this one.
    pub fn merge(&mut self, other: &MulCounter) {
        self.mults += other.mults;
        self.naive_cost += other.naive_cost;
        self.fast_cost += other.fast_cost;
    }

    fn record(&mut self, a: &BigInt, b: &BigInt) {
        let (ba, bb) = (a.bits(), b.bits());
        let (t, tp) = if ba >= bb { (ba, bb) } else { (bb, ba) };
        self.mults += 1;
        self.naive_cost += u128::from(t) * u128::from(tp);
        let w = 1 + u128::from(ceil_lg(tp));
        self.fast_cost += u128::from(t) * w * w;
    }

    /// Counted integer product.
    pub fn mul(&mut self, a: &BigInt, b: &BigInt) -> BigInt {
        self.record(a, b);
        a * b
    }

    /// Counted `base^exp` by binary powering: one multiplication per
    /// squaring and per set bit beyond the first.
    pub fn pow(&mut self, base: &BigInt, mut exp: u32) -> BigInt {
        if exp == 0 {
            return BigInt::one();
        }
        let mut acc: Option<BigInt> = None;
        let mut sq = base.clone();
        loop {
            if exp & 1 == 1 {
                acc = Some(match acc {
                    None => sq.clone(),
                    Some(a) => self.mul(&a, &sq),
                });
            }
            exp >>= 1;
            if exp == 0 {
                break;
            }
            sq = self.mul(&sq, &sq);
        }
        acc.expect("exp >= 1 sets acc")
    }

    /// Counted rational product: numerators and denominators each multiply
    /// once; the result renormalizes for free.
    pub fn mul_rat(&mut self, a: &BigRat, b: &BigRat) -> BigRat {
        let n = self.mul(a.numer(), b.numer());
        let d = self.mul(a.denom(), b.denom());
        BigRat::new(n, d)
    }

    /// Counted product of a rational by an integer (one multiplication).
    pub fn mul_rat_int(&mut self, a: &BigRat, k: &BigInt) -> BigRat {
        let n = self.mul(a.numer(), k);
        BigRat::new(n, a.denom().clone())
    }

    /// Counted quotient of a rational by a nonzero integer (one
    /// multiplication, on the denominator).
    pub fn div_rat_int(&mut self, a: &BigRat, k: &BigInt) -> BigRat {
        assert!(!k.is_zero(), "division by zero integer");
        let d = self.mul(a.denom(), k);
        BigRat::new(a.numer().clone(), d)
    }

    /// Counted rational sum: three multiplications across distinct
    /// denominators, none when the denominators coincide.
    pub fn add_rat(&mut self, a: &BigRat, b: &BigRat) -> BigRat {
        if a.denom() == b.denom() {
            return BigRat::new(a.numer() + b.numer(), a.denom().clone());
        }
        let l = self.mul(a.numer(), b.denom());
        let r = self.mul(b.numer(), a.denom());
        let d = self.mul(a.denom(), b.denom());
        BigRat::new(l + r, d)
    }

    /// Counted rational difference, charged like [`MulCounter::add_rat`].
    pub fn sub_rat(&mut self, a: &BigRat, b: &BigRat) -> BigRat {
        if a.denom() == b.denom() {
            return BigRat::new(a.numer() - b.numer(), a.denom().clone());
        }
        let l = self.mul(a.numer(), b.denom());
        let r = self.mul(b.numer(), a.denom());
        let d = self.mul(a.denom(), b.denom());
        BigRat::new(l - r, d)
    }

    /// Counted `a^exp` by repeated multiplication from scratch: exactly
    /// `exp - 1` rational products, no reuse.  This is the deliberately
    /// naive evaluation strategy; contrast [`MulCounter::pow`].
    pub fn pow_rat_repeated(&mut self, a: &BigRat, exp: u32) -> BigRat {
        if exp == 0 {
            return BigRat::one();
        }
        let mut acc = a.clone();
        for _ in 1..exp {
            acc = self.mul_rat(&acc, a);
        }
        acc
    }
}

/// Render a rational as `num/den`, or just `num` when the denominator is 1.
pub fn fmt_rat(q: &BigRat) -> String {
    let mut s = String::new();
    if q.denom().is_one() {
        let _ = write!(s, "{}", q.numer());
    } else {
        let _ = write!(s, "{}/{}", q.numer(), q.denom());
    }
    s
}

/// Parse the `fmt_rat` shape back.  Rejects empty parts and a zero
/// denominator; the result is renormalized, so parsing is the left inverse
/// of formatting but not injective on raw strings.
pub fn parse_rat(s: &str) -> Option<BigRat> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        None => (s, None),
        Some((n, d)) => (n, Some(d)),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = match den {
        None => BigInt::one(),
        Some(d) => d.parse().ok()?,
    };
    if den.is_zero() {
        return None;
    }
    Some(BigRat::new(num, den))
}
