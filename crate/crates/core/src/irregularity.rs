//! Index of irregularity of an odd prime `p` with respect to a
//! discriminant `D`: how many zeta values in a fixed window have nonzero
//! `p`-adic valuation.
//!
//! The window runs over `2m = 2, 4, ..., delta` with `delta = p - 1`, or
//! `(p - 1) / 2` when `D = p` itself; the last entry is tested with one
//! extra factor of `p` (its functional-equation twin carries that factor).

use alloc::vec::Vec;

use crate::arith_functions::is_prime_u64;
use crate::bernoulli::bernoulli_table;
use crate::characters::Discriminant;
use crate::elementary_zeta::{zeta_eq1_range, Eq1Variant};
use crate::error::{Error, Result};
use crate::exact::{valuation, BigInt, BigRat, MulCounter, Valuation};
use crate::modular_coeffs::CoeffPipeline;
use crate::modular_zeta::zeta_eq3;

/// Which value-producing route backs the classification.  Both must yield
/// the same report; the choice only matters for cost.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    Eq1,
    Eq3,
}

impl Engine {
    pub fn name(self) -> &'static str {
        match self {
            Engine::Eq1 => "eq1",
            Engine::Eq3 => "eq3",
        }
    }
}

/// Everything the classification saw: which window slots hit (nonzero
/// valuation), which of those dipped negative (denominator anomalies), and
/// whether `p` was prime to `D` in the first place (`condition_ok`; the
/// `D = p` case is fine by construction).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrregularityReport {
    pub p: u64,
    pub d: Discriminant,
    pub delta: u32,
    /// number of hits — the index of irregularity
    pub index: u32,
    /// window slots `2m` with nonzero valuation, ascending
    pub hits: Vec<u32>,
    /// the subset of hits with negative valuation
    pub anomalies: Vec<u32>,
    pub condition_ok: bool,
    pub engine: Engine,
}

/// Classify `p` against `d`.  `p` must be an odd prime; the window bound
/// `delta` is always even, so the zeta range machinery applies as is.
pub fn irregularity_index(
    p: u64,
    d: Discriminant,
    engine: Engine,
    ctr: &mut MulCounter,
) -> Result<IrregularityReport> {
    if p < 3 || !is_prime_u64(p) {
        return Err(Error::Domain("p must be an odd prime"));
    }
    if p > 1 << 31 {
        return Err(Error::Domain("p out of supported range"));
    }
    let delta = if d.get() == p {
        ((p - 1) / 2) as u32
    } else {
        (p - 1) as u32
    };
    // d = p fundamental forces p = 1 mod 4, so delta is even either way
    debug_assert!(delta >= 2 && delta % 2 == 0);
    let values: Vec<BigRat> = match engine {
        Engine::Eq1 => {
            let table = bernoulli_table(delta, ctr);
            zeta_eq1_range(d, delta, Eq1Variant::Batch, &table, ctr)?
                .into_iter()
                .map(|z| z.value)
                .collect()
        }
        Engine::Eq3 => {
            let mut pipe = CoeffPipeline::new(delta, ctr)?;
            let mut out = Vec::with_capacity((delta / 2) as usize);
            for m in 1..=delta / 2 {
                let ct = pipe.coeff_table(m, ctr)?;
                out.push(zeta_eq3(d, m, &ct, None, ctr)?.zeta.value);
            }
            out
        }
    };
    let big_p = BigInt::from(p);
    let mut hits = Vec::new();
    let mut anomalies = Vec::new();
    for (i, v) in values.iter().enumerate() {
        let two_m = 2 * (i as u32 + 1);
        let val = match valuation(v, &big_p) {
            Valuation::Finite(x) => x,
            Valuation::Infinite => return Err(Error::Internal("zeta value vanished")),
        };
        let tested = if two_m == delta { val + 1 } else { val };
        if tested != 0 {
            hits.push(two_m);
            if tested < 0 {
                anomalies.push(two_m);
            }
        }
    }
    Ok(IrregularityReport {
        p,
        d,
        delta,
        index: hits.len() as u32,
        hits,
        anomalies,
        condition_ok: d.get() == p || !d.get().is_multiple_of(p),
        engine,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dd(d: u64) -> Discriminant {
        Discriminant::new(d).unwrap()
    }

    #[test]
    fn seven_is_regular_for_five() {
        // window: zeta_5(-1) = 1/30, zeta_5(-3) = 1/60, then
        // 7 * zeta_5(-5) = 67/90 — no factor of 7 anywhere
        let mut ctr = MulCounter::new();
        let rep = irregularity_index(7, dd(5), Engine::Eq1, &mut ctr).unwrap();
        assert_eq!(rep.delta, 6);
        assert_eq!(rep.index, 0);
        assert!(rep.hits.is_empty());
        assert!(rep.anomalies.is_empty());
        assert!(rep.condition_ok);
    }

    #[test]
    fn own_discriminant_shrinks_window() {
        // D = p = 5: delta = 2, single slot, 5 * zeta_5(-1) = 1/6
        let mut ctr = MulCounter::new();
        let rep = irregularity_index(5, dd(5), Engine::Eq1, &mut ctr).unwrap();
        assert_eq!(rep.delta, 2);
        assert_eq!(rep.index, 0);
        assert!(rep.condition_ok);
    }

    #[test]
    fn three_against_five() {
        // delta = 2: 3 * zeta_5(-1) = 1/10, valuation 0
        let mut ctr = MulCounter::new();
        let rep = irregularity_index(3, dd(5), Engine::Eq1, &mut ctr).unwrap();
        assert_eq!(rep.delta, 2);
        assert_eq!(rep.index, 0);
    }

    #[test]
    fn sixty_seven_hits_at_six() {
        // zeta_5(-5) = 67/630 puts a clean factor of 67 in slot 2m = 6
        let mut ctr = MulCounter::new();
        let rep = irregularity_index(67, dd(5), Engine::Eq1, &mut ctr).unwrap();
        assert_eq!(rep.delta, 66);
        assert!(rep.hits.contains(&6), "hits: {:?}", rep.hits);
        assert!(rep.index >= 1);
        for a in &rep.anomalies {
            assert!(rep.hits.contains(a));
        }
    }

    #[test]
    fn shared_factor_flagged() {
        let mut ctr = MulCounter::new();
        let rep = irregularity_index(5, dd(40), Engine::Eq1, &mut ctr).unwrap();
        assert!(!rep.condition_ok);
        assert_eq!(rep.delta, 4);
    }

    #[test]
    fn engines_agree() {
        let mut ctr = MulCounter::new();
        for p in [3u64, 5, 7, 11, 13] {
            for d in [5u64, 8, 12, 13] {
                let a = irregularity_index(p, dd(d), Engine::Eq1, &mut ctr).unwrap();
                let b = irregularity_index(p, dd(d), Engine::Eq3, &mut ctr).unwrap();
                assert_eq!(a.index, b.index, "p = {p}, d = {d}");
                assert_eq!(a.hits, b.hits, "p = {p}, d = {d}");
                assert_eq!(a.anomalies, b.anomalies);
                assert_eq!(a.delta, b.delta);
                assert_eq!(a.engine, Engine::Eq1);
                assert_eq!(b.engine, Engine::Eq3);
            }
        }
    }

    #[test]
    fn rejects_bad_p() {
        let mut ctr = MulCounter::new();
        for p in [0u64, 1, 2, 4, 9, 15] {
            assert!(
                matches!(
                    irregularity_index(p, dd(5), Engine::Eq1, &mut ctr),
                    Err(Error::Domain(_))
                ),
                "p = {p} must be rejected"
            );
        }
    }
}
