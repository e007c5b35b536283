//! Multiplicative machinery under the modular routes: factorization,
//! divisor power sums `sigma_k`, a reusable cache for them, and the
//! theta-restricted convolutions `e` and `s` built on top.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::characters::{kronecker, Discriminant};
use crate::error::{Error, Result};
use crate::exact::{BigInt, MulCounter};

/// Prime factorization as ascending `(prime, exponent)` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorMap {
    factors: Vec<(BigInt, u32)>,
}

impl FactorMap {
    pub fn factors(&self) -> &[(BigInt, u32)] {
        &self.factors
    }

    /// Multiply the factorization back together.
    pub fn reconstruct(&self) -> BigInt {
        let mut n = BigInt::one();
        for (p, a) in &self.factors {
            n *= p.pow(*a);
        }
        n
    }
}

/// Pluggable factorization strategy, for swapping in something stronger
/// than the built-in default should the inputs ever outgrow it.
pub trait FactorBackend {
    fn factor(&self, n: &BigInt) -> Result<FactorMap>;
}

fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(n)) as u64
}

fn pow_mod(mut a: u64, mut e: u64, n: u64) -> u64 {
    let mut r = 1u64 % n;
    a %= n;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, n);
        }
        a = mul_mod(a, a, n);
        e >>= 1;
    }
    r
}

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller-Rabin over the 12-base set, valid for all `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in MR_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// One nontrivial factor of an odd composite `n` with no factor below
/// 2^16, by the rho cycle method; retries with the next polynomial offset
/// until a split appears.
fn rho_u64(n: u64) -> u64 {
    debug_assert!(n % 2 == 1 && !is_prime_u64(n));
    for c in 1..u64::MAX {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        loop {
            x = f(x);
            y = f(f(y));
            if x == y {
                break; // cycle closed without a split; change c
            }
            let d = num_integer::gcd(x.abs_diff(y), n);
            if d != 1 {
                return d;
            }
        }
    }
    unreachable!("some offset always splits an odd composite")
}

const TRIAL_BOUND: u64 = 1 << 16;

fn factor_u64_into(mut n: u64, out: &mut BTreeMap<BigInt, u32>) {
    let push = |p: u64, out: &mut BTreeMap<BigInt, u32>| {
        *out.entry(BigInt::from(p)).or_insert(0) += 1;
    };
    while n.is_multiple_of(2) {
        push(2, out);
        n /= 2;
    }
    let mut p = 3u64;
    while p <= TRIAL_BOUND && p * p <= n {
        while n.is_multiple_of(p) {
            push(p, out);
            n /= p;
        }
        p += 2;
    }
    if n == 1 {
        return;
    }
    if p * p > n || is_prime_u64(n) {
        push(n, out);
        return;
    }
    // all remaining factors exceed the trial bound
    let mut pending = alloc::vec![n];
    while let Some(m) = pending.pop() {
        if is_prime_u64(m) {
            push(m, out);
            continue;
        }
        let d = rho_u64(m);
        pending.push(d);
        pending.push(m / d);
    }
}

/// Probable-prime test for inputs past `u64`: Miller-Rabin over the same
/// base set, no longer deterministic out there but far beyond any range
/// this crate sweeps.
fn is_probable_prime_big(n: &BigInt) -> bool {
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    debug_assert!(n.is_positive());
    let one = BigInt::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().expect("n > 1 is not zero");
    let d = &n_minus_1 >> s;
    'witness: for a in MR_BASES {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigInt::from(2u32), n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn rho_big(n: &BigInt) -> BigInt {
    let one = BigInt::one();
    let two = BigInt::from(2u32);
    for c in 1u64.. {
        let cc = BigInt::from(c);
        let f = |x: &BigInt| (x * x + &cc) % n;
        let mut x = two.clone();
        let mut y = two.clone();
        loop {
            x = f(&x);
            y = f(&f(&y));
            if x == y {
                break;
            }
            let d = (&x - &y).abs().gcd(n);
            if d != one {
                return d;
            }
        }
    }
    unreachable!("some offset always splits an odd composite")
}

/// Default factorization: trial division below 2^16, then rho splitting
/// with (probable-)primality certification of the pieces.
pub struct DefaultFactorizer;

impl FactorBackend for DefaultFactorizer {
    fn factor(&self, n: &BigInt) -> Result<FactorMap> {
        if !n.is_positive() {
            return Err(Error::Domain("factorization needs n >= 1"));
        }
        let mut map = BTreeMap::new();
        if let Some(v) = n.to_u64() {
            factor_u64_into(v, &mut map);
        } else {
            let mut m = n.clone();
            let mut p = BigInt::from(2u32);
            let bound = BigInt::from(TRIAL_BOUND);
            while p <= bound {
                while (&m % &p).is_zero() {
                    *map.entry(p.clone()).or_insert(0) += 1;
                    m /= &p;
                }
                p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
            }
            if let Some(v) = m.to_u64() {
                factor_u64_into(v, &mut map);
            } else {
                let mut pending = alloc::vec![m];
                while let Some(q) = pending.pop() {
                    if q.is_one() {
                        continue;
                    }
                    if is_probable_prime_big(&q) {
                        *map.entry(q).or_insert(0) += 1;
                        continue;
                    }
                    let d = rho_big(&q);
                    let rest = &q / &d;
                    pending.push(d);
                    pending.push(rest);
                }
            }
        }
        Ok(FactorMap {
            factors: map.into_iter().collect(),
        })
    }
}

/// Factor with the default backend.
pub fn factor(n: &BigInt) -> Result<FactorMap> {
    DefaultFactorizer.factor(n)
}

/// Memo for `sigma_k` values at one fixed exponent `k`.  Lookups are
/// consulted before any factoring happens; an optional capacity bounds the
/// footprint by evicting the largest keys first (small arguments recur the
/// most across discriminants).
#[derive(Debug, Clone)]
pub struct SigmaCache {
    exponent: u32,
    map: BTreeMap<BigInt, BigInt>,
    hits: u64,
    misses: u64,
    capacity: Option<usize>,
}

impl SigmaCache {
    pub fn new(exponent: u32) -> Self {
        SigmaCache {
            exponent,
            map: BTreeMap::new(),
            hits: 0,
            misses: 0,
            capacity: None,
        }
    }

    pub fn with_capacity(exponent: u32, capacity: usize) -> Self {
        SigmaCache {
            capacity: Some(capacity),
            ..SigmaCache::new(exponent)
        }
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn hits(&self) -> u64 {
        self.hits
    }

    pub fn misses(&self) -> u64 {
        self.misses
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    fn insert(&mut self, n: BigInt, v: BigInt) {
        self.map.insert(n, v);
        if let Some(cap) = self.capacity {
            while self.map.len() > cap {
                self.map.pop_last();
            }
        }
    }
}

/// Divisor power sum `sigma_k(n) = sum_{d | n} d^k`, multiplicative across
/// the factorization, each prime contributing `1 + p^k + ... + p^(ak)`.
pub fn sigma(
    k: u32,
    n: &BigInt,
    mut cache: Option<&mut SigmaCache>,
    ctr: &mut MulCounter,
) -> Result<BigInt> {
    if !n.is_positive() {
        return Err(Error::Domain("sigma needs n >= 1"));
    }
    if let Some(c) = cache.as_deref_mut() {
        if c.exponent != k {
            return Err(Error::CacheExponent {
                cache: c.exponent,
                requested: k,
            });
        }
        if let Some(v) = c.map.get(n) {
            c.hits += 1;
            return Ok(v.clone());
        }
    }
    let fm = factor(n)?;
    let mut acc = BigInt::one();
    let mut first = true;
    for (p, a) in fm.factors() {
        let q = ctr.pow(p, k);
        let mut term = &q + BigInt::one();
        let mut pw = q.clone();
        for _ in 2..=*a {
            pw = ctr.mul(&pw, &q);
            term += &pw;
        }
        acc = if first { term } else { ctr.mul(&acc, &term) };
        first = false;
    }
    if let Some(c) = cache {
        c.misses += 1;
        c.insert(n.clone(), acc.clone());
    }
    Ok(acc)
}

/// `e_k(n) = sum sigma_k((n - x^2) / 4)` over all integers `x` with
/// `x^2 = n mod 4` and `x^2 < n`; zero when `n = 2, 3 mod 4` (no such `x`),
/// and `x^2 = n` exactly is outside the domain (it would ask for
/// `sigma(0)`).  Every call bumps `e_calls`, the currency the modular
/// routes are compared in.
pub fn e_function(
    k: u32,
    n: &BigInt,
    mut cache: Option<&mut SigmaCache>,
    e_calls: &mut u64,
    ctr: &mut MulCounter,
) -> Result<BigInt> {
    *e_calls += 1;
    if !n.is_positive() {
        return Err(Error::Domain("e needs n >= 1"));
    }
    let four = BigInt::from(4u32);
    let residue = (n % &four).to_u32().expect("residue fits");
    let start = match residue {
        0 => BigInt::zero(),
        1 => BigInt::one(),
        _ => return Ok(BigInt::zero()),
    };
    let mut total = BigInt::zero();
    let mut x = start;
    loop {
        let x_sq = ctr.mul(&x, &x);
        if x_sq >= *n {
            if x_sq == *n {
                return Err(Error::Domain("e is undefined on perfect squares"));
            }
            break;
        }
        let arg = (n - x_sq) / &four; // exact: x^2 = n mod 4
        let s = sigma(k, &arg, cache.as_deref_mut(), ctr)?;
        // x and -x contribute equally; x = 0 once
        total += if x.is_zero() { s } else { &s + &s };
        x += 2u32;
    }
    Ok(total)
}

/// `s_l(D, 2m) = sum over j | l of chi_D(j) j^(2m-1) e_(2m-1)((l/j)^2 D)`.
/// Divisors with vanishing character are skipped before their `e` value is
/// ever requested.
pub fn s_function(
    l: u32,
    d: Discriminant,
    m: u32,
    mut cache: Option<&mut SigmaCache>,
    e_calls: &mut u64,
    ctr: &mut MulCounter,
) -> Result<BigInt> {
    if l == 0 {
        return Err(Error::Domain("s needs l >= 1"));
    }
    if m == 0 {
        return Err(Error::Domain("m must be at least 1"));
    }
    let k = 2 * m - 1;
    let mut total = BigInt::zero();
    for j in 1..=l {
        if !l.is_multiple_of(j) {
            continue;
        }
        let chi = kronecker(d, u64::from(j));
        if chi == 0 {
            continue;
        }
        let q = BigInt::from(l / j);
        let q_sq = ctr.mul(&q, &q);
        let arg = ctr.mul(&q_sq, &BigInt::from(d.get()));
        let e = e_function(k, &arg, cache.as_deref_mut(), e_calls, ctr)?;
        let term = if j == 1 {
            e
        } else {
            let jp = ctr.pow(&BigInt::from(j), k);
            ctr.mul(&jp, &e)
        };
        if chi > 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn factorization_basics() {
        let fm = factor(&big(360)).unwrap();
        let expect: Vec<(BigInt, u32)> = vec![(big(2), 3), (big(3), 2), (big(5), 1)];
        assert_eq!(fm.factors(), &expect[..]);
        assert_eq!(fm.reconstruct(), big(360));

        let fm = factor(&big(9991)).unwrap();
        let expect: Vec<(BigInt, u32)> = vec![(big(97), 1), (big(103), 1)];
        assert_eq!(fm.factors(), &expect[..]);

        assert!(factor(&big(1)).unwrap().factors().is_empty());
        assert!(factor(&big(0)).is_err());
        assert!(factor(&big(-6)).is_err());
    }

    #[test]
    fn factorization_beyond_trial_range() {
        // product of two primes past the 2^16 trial bound forces the rho path
        let p = 1_000_003u64;
        let q = 1_000_033u64;
        let n = BigInt::from(p) * BigInt::from(q);
        let fm = factor(&n).unwrap();
        let expect: Vec<(BigInt, u32)> = vec![(BigInt::from(p), 1), (BigInt::from(q), 1)];
        assert_eq!(fm.factors(), &expect[..]);
        assert_eq!(fm.reconstruct(), n);
    }

    #[test]
    fn primality_spot_checks() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(97));
        assert!(is_prime_u64(1_000_003));
        assert!(is_prime_u64(18_446_744_073_709_551_557)); // largest u64 prime
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(9991));
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to first 4 bases
    }

    #[test]
    fn sigma_values() {
        let mut ctr = MulCounter::new();
        assert_eq!(sigma(1, &big(4), None, &mut ctr).unwrap(), big(7));
        assert_eq!(sigma(3, &big(6), None, &mut ctr).unwrap(), big(252));
        assert_eq!(sigma(1, &big(1), None, &mut ctr).unwrap(), big(1));
        assert_eq!(sigma(0, &big(12), None, &mut ctr).unwrap(), big(6));
        assert_eq!(sigma(5, &big(2), None, &mut ctr).unwrap(), big(33));
        assert!(sigma(1, &big(0), None, &mut ctr).is_err());
    }

    #[test]
    fn sigma_is_multiplicative() {
        let mut ctr = MulCounter::new();
        for (a, b) in [(4i64, 9), (5, 8), (7, 16), (27, 25)] {
            let lhs = sigma(3, &big(a * b), None, &mut ctr).unwrap();
            let l = sigma(3, &big(a), None, &mut ctr).unwrap();
            let r = sigma(3, &big(b), None, &mut ctr).unwrap();
            assert_eq!(lhs, l * r, "sigma_3({a} * {b})");
        }
    }

    #[test]
    fn cache_transparent_and_accounted() {
        let mut ctr = MulCounter::new();
        let mut cache = SigmaCache::new(3);
        let ns = [6i64, 10, 6, 15, 10, 6, 1, 1];
        let mut bare = Vec::new();
        for n in ns {
            bare.push(sigma(3, &big(n), None, &mut ctr).unwrap());
        }
        let mut cached = Vec::new();
        for n in ns {
            cached.push(sigma(3, &big(n), Some(&mut cache), &mut ctr).unwrap());
        }
        assert_eq!(bare, cached);
        assert_eq!(cache.misses(), 4); // distinct arguments
        assert_eq!(cache.hits(), 4);
        assert_eq!(cache.len(), 4);
    }

    #[test]
    fn cache_rejects_wrong_exponent() {
        let mut ctr = MulCounter::new();
        let mut cache = SigmaCache::new(3);
        assert_eq!(
            sigma(5, &big(6), Some(&mut cache), &mut ctr),
            Err(Error::CacheExponent {
                cache: 3,
                requested: 5
            })
        );
    }

    #[test]
    fn cache_evicts_largest_first() {
        let mut ctr = MulCounter::new();
        let mut cache = SigmaCache::with_capacity(1, 2);
        for n in [30i64, 4, 100] {
            sigma(1, &big(n), Some(&mut cache), &mut ctr).unwrap();
        }
        assert_eq!(cache.len(), 2);
        // 100 displaced itself as the largest key; 4 and 30 survive
        sigma(1, &big(4), Some(&mut cache), &mut ctr).unwrap();
        sigma(1, &big(30), Some(&mut cache), &mut ctr).unwrap();
        assert_eq!(cache.hits(), 2);
        sigma(1, &big(100), Some(&mut cache), &mut ctr).unwrap();
        assert_eq!(cache.misses(), 4); // 100 was evicted, recomputed
    }

    #[test]
    fn e_values() {
        let mut ctr = MulCounter::new();
        let mut calls = 0u64;
        assert_eq!(
            e_function(1, &big(5), None, &mut calls, &mut ctr).unwrap(),
            big(2)
        );
        assert_eq!(
            e_function(1, &big(20), None, &mut calls, &mut ctr).unwrap(),
            big(22)
        );
        assert_eq!(
            e_function(5, &big(20), None, &mut calls, &mut ctr).unwrap(),
            big(5242)
        );
        assert_eq!(calls, 3);
        // no admissible x at all
        assert_eq!(
            e_function(1, &big(7), None, &mut calls, &mut ctr).unwrap(),
            big(0)
        );
        assert_eq!(
            e_function(3, &big(10), None, &mut calls, &mut ctr).unwrap(),
            big(0)
        );
        // perfect squares would need sigma(0)
        assert!(e_function(1, &big(4), None, &mut calls, &mut ctr).is_err());
        assert!(e_function(1, &big(1), None, &mut calls, &mut ctr).is_err());
        assert!(e_function(1, &big(0), None, &mut calls, &mut ctr).is_err());
    }

    #[test]
    fn s_values() {
        let d5 = Discriminant::new(5).unwrap();
        let mut ctr = MulCounter::new();
        let mut calls = 0u64;
        assert_eq!(
            s_function(1, d5, 1, None, &mut calls, &mut ctr).unwrap(),
            big(2)
        );
        // s_2 = e_1(4*5) - 2 * e_1(5) = 22 - 4
        assert_eq!(
            s_function(2, d5, 1, None, &mut calls, &mut ctr).unwrap(),
            big(18)
        );
        assert_eq!(calls, 3);
        // j = 5 divides l = 5 but chi_5(5) = 0: only one e call issued
        calls = 0;
        s_function(5, d5, 1, None, &mut calls, &mut ctr).unwrap();
        assert_eq!(calls, 1);
        assert!(s_function(0, d5, 1, None, &mut calls, &mut ctr).is_err());
        assert!(s_function(1, d5, 0, None, &mut calls, &mut ctr).is_err());
    }
}
