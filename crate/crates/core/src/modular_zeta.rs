//! Zeta values through the coefficient tables: a short combination of the
//! divisor-sum convolutions `s_l`, in two arrangements that differ only in
//! how many `e` evaluations they spend — the whole point of comparing
//! them.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::arith_functions::{e_function, s_function, SigmaCache};
use crate::characters::{fundamental_discriminants, kronecker, Discriminant};
use crate::elementary_zeta::{Method, ZetaValue};
use crate::error::{Error, Result};
use crate::exact::{BigInt, BigRat, MulCounter};
use crate::modular_coeffs::{CoeffPipeline, CoeffTable};

/// A zeta value from a modular route, plus what it paid for: the number of
/// `e` evaluations issued on the way.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularEval {
    pub zeta: ZetaValue,
    pub e_calls: u64,
}

fn check_table(m: u32, ct: &CoeffTable) -> Result<()> {
    if ct.m != m {
        return Err(Error::Domain("coefficient table built for a different m"));
    }
    if ct.c.len() != ct.r as usize + 1 {
        return Err(Error::Internal("coefficient table length drifted"));
    }
    if ct.c[0].is_zero() {
        // dividing by the constant coefficient is about to happen
        return Err(Error::Internal("constant coefficient vanished"));
    }
    Ok(())
}

fn finish(d: Discriminant, m: u32, acc: BigInt, c0: &BigInt, method: Method, ctr: &mut MulCounter) -> Result<ZetaValue> {
    let num = ctr.mul(&BigInt::from(-4), &acc);
    let value = BigRat::new(num, c0.clone());
    if value.is_zero() {
        return Err(Error::Internal("zeta value vanished"));
    }
    Ok(ZetaValue {
        d,
        m,
        value,
        method,
    })
}

/// `zeta_D(1-2m) = -4 / c[0] * sum_{l=1..r} c[l] * s_l(D, 2m)`.
/// Spends one `e` evaluation per divisor of each `l` whose character value
/// survives — `sum tau(l)` of them in the generic case.
pub fn zeta_eq2(
    d: Discriminant,
    m: u32,
    ct: &CoeffTable,
    mut cache: Option<&mut SigmaCache>,
    ctr: &mut MulCounter,
) -> Result<ModularEval> {
    check_table(m, ct)?;
    let mut e_calls = 0u64;
    let mut acc = BigInt::zero();
    for l in 1..=ct.r {
        let s = s_function(l, d, m, cache.as_deref_mut(), &mut e_calls, ctr)?;
        if s.is_zero() {
            continue;
        }
        let cl = &ct.c[l as usize];
        acc += if cl.is_one() { s } else { ctr.mul(cl, &s) };
    }
    let zeta = finish(d, m, acc, &ct.c[0], Method::Eq2, ctr)?;
    Ok(ModularEval { zeta, e_calls })
}

/// The same combination resummed over `k = l / j`, so each `e` value is
/// computed once and shared: exactly `r` evaluations, at `k^2 D` for
/// `k = 1..r`, regardless of how the character falls.
pub fn zeta_eq3(
    d: Discriminant,
    m: u32,
    ct: &CoeffTable,
    mut cache: Option<&mut SigmaCache>,
    ctr: &mut MulCounter,
) -> Result<ModularEval> {
    check_table(m, ct)?;
    let k_exp = 2 * m - 1;
    let big_d = BigInt::from(d.get());
    let mut e_calls = 0u64;
    let mut acc = BigInt::zero();
    for k in 1..=ct.r {
        let mut inner = BigInt::zero();
        for j in 1..=ct.r / k {
            let chi = kronecker(d, u64::from(j));
            if chi == 0 {
                continue;
            }
            let c = &ct.c[(j * k) as usize];
            let term = if j == 1 {
                c.clone()
            } else {
                let jp = ctr.pow(&BigInt::from(j), k_exp);
                if c.is_one() {
                    jp
                } else {
                    ctr.mul(&jp, c)
                }
            };
            if chi > 0 {
                inner += term;
            } else {
                inner -= term;
            }
        }
        let kk = BigInt::from(k);
        let k_sq = ctr.mul(&kk, &kk);
        let arg = ctr.mul(&k_sq, &big_d);
        let e = e_function(k_exp, &arg, cache.as_deref_mut(), &mut e_calls, ctr)?;
        if !inner.is_zero() && !e.is_zero() {
            acc += ctr.mul(&inner, &e);
        }
    }
    let zeta = finish(d, m, acc, &ct.c[0], Method::Eq3, ctr)?;
    Ok(ModularEval { zeta, e_calls })
}

/// Scope and caching policy of a sweep over discriminants and `m`.
#[derive(Debug, Clone)]
pub struct SweepOptions {
    /// sweep every fundamental discriminant in `5..=d_max`
    pub d_max: u64,
    /// and every `m` with `2m <= m_upper`
    pub m_upper: u32,
    pub use_cache: bool,
    pub cache_capacity: Option<usize>,
}

/// Per-`m` accounting of one sweep: the divisor-sum cache lives exactly as
/// long as one `m` (its exponent changes with `m`), so hits and misses are
/// reported at that grain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepMStat {
    pub m: u32,
    pub e_calls: u64,
    pub hits: u64,
    pub misses: u64,
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    /// all values, outer loop `m` ascending, inner loop discriminant ascending
    pub values: Vec<ZetaValue>,
    pub per_m: Vec<SweepMStat>,
}

/// Evaluate the shared-`e` route over a whole grid.  One coefficient
/// pipeline serves every `m`; the `e` arguments `k^2 D` repeat heavily
/// across discriminants, which is what the optional cache exploits.
pub fn sweep(opts: &SweepOptions, ctr: &mut MulCounter) -> Result<SweepResult> {
    if opts.d_max < 5 {
        return Err(Error::Domain("sweep scope is empty: d_max < 5"));
    }
    let ds: Vec<Discriminant> = fundamental_discriminants(5, opts.d_max).collect();
    let mut pipe = CoeffPipeline::new(opts.m_upper, ctr)?;
    let mut values = Vec::with_capacity(ds.len() * (opts.m_upper / 2) as usize);
    let mut per_m = Vec::with_capacity((opts.m_upper / 2) as usize);
    for m in 1..=opts.m_upper / 2 {
        let ct = pipe.coeff_table(m, ctr)?;
        let mut cache = if opts.use_cache {
            Some(match opts.cache_capacity {
                Some(cap) => SigmaCache::with_capacity(2 * m - 1, cap),
                None => SigmaCache::new(2 * m - 1),
            })
        } else {
            None
        };
        let mut stat = SweepMStat {
            m,
            e_calls: 0,
            hits: 0,
            misses: 0,
        };
        for &d in &ds {
            let ev = zeta_eq3(d, m, &ct, cache.as_mut(), ctr)?;
            stat.e_calls += ev.e_calls;
            values.push(ev.zeta);
        }
        if let Some(c) = &cache {
            stat.hits = c.hits();
            stat.misses = c.misses();
        }
        per_m.push(stat);
    }
    Ok(SweepResult { values, per_m })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bernoulli::bernoulli_table;
    use crate::elementary_zeta::{zeta_eq1_range, Eq1Variant};
    use crate::exact::parse_rat;

    fn dd(d: u64) -> Discriminant {
        Discriminant::new(d).unwrap()
    }

    #[test]
    fn pinned_values_both_routes() {
        let mut ctr = MulCounter::new();
        let mut pipe = CoeffPipeline::new(12, &mut ctr).unwrap();
        let cases = [
            (5u64, 1u32, "1/30"),
            (8, 1, "1/12"),
            (12, 1, "1/6"),
            (13, 1, "1/6"),
            (5, 2, "1/60"),
            (12, 2, "23/60"),
            (5, 3, "67/630"),
            (13, 3, "33463/1638"),
            (5, 5, "412751/1650"),
        ];
        let mut last_m = 0;
        for (d, m, want) in cases {
            // tables must be fetched in nondecreasing order of r
            assert!(m >= last_m || m / 3 == last_m / 3);
            last_m = m;
            let ct = pipe.coeff_table(m, &mut ctr).unwrap();
            let want = parse_rat(want).unwrap();
            let v2 = zeta_eq2(dd(d), m, &ct, None, &mut ctr).unwrap();
            let v3 = zeta_eq3(dd(d), m, &ct, None, &mut ctr).unwrap();
            assert_eq!(v2.zeta.value, want, "route 2 at d = {d}, m = {m}");
            assert_eq!(v3.zeta.value, want, "route 3 at d = {d}, m = {m}");
            assert_eq!(v2.zeta.method, Method::Eq2);
            assert_eq!(v3.zeta.method, Method::Eq3);
        }
    }

    #[test]
    fn e_call_budgets() {
        // at m = 6 the table has r = 3: the resummed route spends exactly
        // 3 evaluations, the direct one tau(1) + tau(2) + tau(3) = 5
        let mut ctr = MulCounter::new();
        let mut pipe = CoeffPipeline::new(12, &mut ctr).unwrap();
        let ct = pipe.coeff_table(6, &mut ctr).unwrap();
        let v2 = zeta_eq2(dd(5), 6, &ct, None, &mut ctr).unwrap();
        let v3 = zeta_eq3(dd(5), 6, &ct, None, &mut ctr).unwrap();
        assert_eq!(v2.e_calls, 5);
        assert_eq!(v3.e_calls, 3);
        assert_eq!(v2.zeta.value, v3.zeta.value);
    }

    #[test]
    fn agrees_with_character_sum() {
        let mut ctr = MulCounter::new();
        let mut pipe = CoeffPipeline::new(10, &mut ctr).unwrap();
        let tables: Vec<CoeffTable> = (1..=5)
            .map(|m| pipe.coeff_table(m, &mut ctr).unwrap())
            .collect();
        let bern = bernoulli_table(10, &mut ctr);
        for d in [5u64, 8, 12, 13, 17, 21] {
            let eq1 = zeta_eq1_range(dd(d), 10, Eq1Variant::Batch, &bern, &mut ctr).unwrap();
            for (i, ct) in tables.iter().enumerate() {
                let m = i as u32 + 1;
                let v2 = zeta_eq2(dd(d), m, ct, None, &mut ctr).unwrap();
                let v3 = zeta_eq3(dd(d), m, ct, None, &mut ctr).unwrap();
                assert_eq!(v2.zeta.value, eq1[i].value, "d = {d}, m = {m}");
                assert_eq!(v3.zeta.value, eq1[i].value, "d = {d}, m = {m}");
            }
        }
    }

    #[test]
    fn cache_is_transparent() {
        let mut ctr = MulCounter::new();
        let mut pipe = CoeffPipeline::new(12, &mut ctr).unwrap();
        let ct = pipe.coeff_table(6, &mut ctr).unwrap();
        let bare = zeta_eq3(dd(21), 6, &ct, None, &mut ctr).unwrap();
        let mut cache = SigmaCache::new(11);
        let cached = zeta_eq3(dd(21), 6, &ct, Some(&mut cache), &mut ctr).unwrap();
        assert_eq!(bare.zeta.value, cached.zeta.value);
        assert!(cache.misses() > 0);
        let mut tiny = SigmaCache::with_capacity(11, 1);
        let capped = zeta_eq3(dd(21), 6, &ct, Some(&mut tiny), &mut ctr).unwrap();
        assert_eq!(bare.zeta.value, capped.zeta.value);
    }

    #[test]
    fn table_mismatch_rejected() {
        let mut ctr = MulCounter::new();
        let mut pipe = CoeffPipeline::new(12, &mut ctr).unwrap();
        let ct1 = pipe.coeff_table(1, &mut ctr).unwrap();
        assert!(matches!(
            zeta_eq2(dd(5), 2, &ct1, None, &mut ctr),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            zeta_eq3(dd(5), 2, &ct1, None, &mut ctr),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn sweep_matches_pointwise() {
        let mut ctr = MulCounter::new();
        let opts = SweepOptions {
            d_max: 13,
            m_upper: 4,
            use_cache: true,
            cache_capacity: None,
        };
        let res = sweep(&opts, &mut ctr).unwrap();
        // discriminants 5, 8, 12, 13 by two values of m
        assert_eq!(res.values.len(), 8);
        assert_eq!(res.per_m.len(), 2);
        let mut pipe = CoeffPipeline::new(4, &mut ctr).unwrap();
        let mut i = 0;
        for m in 1..=2u32 {
            let ct = pipe.coeff_table(m, &mut ctr).unwrap();
            for d in [5u64, 8, 12, 13] {
                let v = zeta_eq3(dd(d), m, &ct, None, &mut ctr).unwrap();
                assert_eq!(res.values[i].value, v.zeta.value, "d = {d}, m = {m}");
                assert_eq!(res.values[i].d.get(), d);
                assert_eq!(res.values[i].m, m);
                i += 1;
            }
        }
        for stat in &res.per_m {
            assert_eq!(stat.e_calls, 4); // r = 1: one call per discriminant
            // the e arguments D = 5, 8, 12, 13 unfold into sigma arguments
            // (D - x^2)/4: one for D = 5, two for each of the others, with
            // three distinct values {1, 2, 3} across the whole m-slice
            assert_eq!(stat.hits + stat.misses, 7);
            assert_eq!(stat.misses, 3);
        }
    }

    #[test]
    fn sweep_cache_is_transparent() {
        let mut ctr = MulCounter::new();
        let base = SweepOptions {
            d_max: 21,
            m_upper: 8,
            use_cache: false,
            cache_capacity: None,
        };
        let bare = sweep(&base, &mut ctr).unwrap();
        let cached = sweep(
            &SweepOptions {
                use_cache: true,
                ..base.clone()
            },
            &mut ctr,
        )
        .unwrap();
        let capped = sweep(
            &SweepOptions {
                use_cache: true,
                cache_capacity: Some(3),
                ..base
            },
            &mut ctr,
        )
        .unwrap();
        assert_eq!(bare.values.len(), cached.values.len());
        for i in 0..bare.values.len() {
            assert_eq!(bare.values[i].value, cached.values[i].value);
            assert_eq!(bare.values[i].value, capped.values[i].value);
        }
        for stat in &bare.per_m {
            assert_eq!(stat.hits, 0);
            assert_eq!(stat.misses, 0);
        }
        // uncapped cache, fixed m: every distinct sigma argument missed
        // once, everything else hit
        for stat in &cached.per_m {
            assert!(stat.hits + stat.misses > 0);
        }
    }

    #[test]
    fn sweep_rejects_empty_scope() {
        let mut ctr = MulCounter::new();
        let opts = SweepOptions {
            d_max: 4,
            m_upper: 4,
            use_cache: false,
            cache_capacity: None,
        };
        assert!(matches!(sweep(&opts, &mut ctr), Err(Error::Domain(_))));
    }
}
