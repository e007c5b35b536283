//! Benchmark harness: run each method over a grid, verify the methods
//! agree on every value, and report the counters under the three cost
//! models together with (unasserted) wall time.

use std::time::Instant;

use quadirr_core::arith_functions::SigmaCache;
use quadirr_core::bernoulli::bernoulli_table;
use quadirr_core::characters::Discriminant;
use quadirr_core::elementary_zeta::{zeta_eq1_range, Eq1Variant};
use quadirr_core::exact::fmt_rat;
use quadirr_core::modular_coeffs::CoeffPipeline;
use quadirr_core::modular_zeta::{zeta_eq2, zeta_eq3};
use quadirr_core::{BigRat, Error, MulCounter};

/// The comparable configurations: the two evaluation strategies of the
/// character-sum route, the two modular arrangements, and the shared-`e`
/// arrangement with a per-`m` divisor-sum cache.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchMethod {
    Eq1Naive,
    Eq1Batch,
    Eq2,
    Eq3,
    Eq3Cached,
}

impl BenchMethod {
    pub const ALL: [BenchMethod; 5] = [
        BenchMethod::Eq1Naive,
        BenchMethod::Eq1Batch,
        BenchMethod::Eq2,
        BenchMethod::Eq3,
        BenchMethod::Eq3Cached,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BenchMethod::Eq1Naive => "eq1-naive",
            BenchMethod::Eq1Batch => "eq1-batch",
            BenchMethod::Eq2 => "eq2",
            BenchMethod::Eq3 => "eq3",
            BenchMethod::Eq3Cached => "eq3-cached",
        }
    }

    pub fn parse(s: &str) -> Option<BenchMethod> {
        Self::ALL.into_iter().find(|m| m.name() == s)
    }
}

/// One measured run: a method over all `2m <= m_upper` at one
/// discriminant.  Wall time is informational; the counters are the data.
#[derive(Debug, Clone)]
pub struct BenchRecord {
    pub method: BenchMethod,
    pub d: u64,
    pub m_upper: u32,
    pub wall_ms: f64,
    pub mult_count: u64,
    pub cost_naive: u128,
    pub cost_fast: u128,
}

/// A record together with the values it produced, kept for cross-method
/// verification before anything is emitted.
#[derive(Debug, Clone)]
pub struct MethodRun {
    pub record: BenchRecord,
    /// `(m, value)` ascending in `m`
    pub values: Vec<(u32, BigRat)>,
}

/// Evaluate one method over the whole `m` range at one discriminant, fresh
/// counter, nothing shared with any other run.
pub fn run_method(method: BenchMethod, d: Discriminant, m_upper: u32) -> Result<MethodRun, Error> {
    let start = Instant::now();
    let mut ctr = MulCounter::new();
    let values: Vec<(u32, BigRat)> = match method {
        BenchMethod::Eq1Naive | BenchMethod::Eq1Batch => {
            let variant = if method == BenchMethod::Eq1Naive {
                Eq1Variant::Naive
            } else {
                Eq1Variant::Batch
            };
            let table = bernoulli_table(m_upper, &mut ctr);
            zeta_eq1_range(d, m_upper, variant, &table, &mut ctr)?
                .into_iter()
                .map(|z| (z.m, z.value))
                .collect()
        }
        BenchMethod::Eq2 | BenchMethod::Eq3 | BenchMethod::Eq3Cached => {
            let mut pipe = CoeffPipeline::new(m_upper, &mut ctr)?;
            let mut out = Vec::with_capacity((m_upper / 2) as usize);
            for m in 1..=m_upper / 2 {
                let ct = pipe.coeff_table(m, &mut ctr)?;
                let mut cache = if method == BenchMethod::Eq3Cached {
                    Some(SigmaCache::new(2 * m - 1))
                } else {
                    None
                };
                let ev = if method == BenchMethod::Eq2 {
                    zeta_eq2(d, m, &ct, cache.as_mut(), &mut ctr)?
                } else {
                    zeta_eq3(d, m, &ct, cache.as_mut(), &mut ctr)?
                };
                out.push((m, ev.zeta.value));
            }
            out
        }
    };
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(MethodRun {
        record: BenchRecord {
            method,
            d: d.get(),
            m_upper,
            wall_ms,
            mult_count: ctr.mults(),
            cost_naive: ctr.naive_cost(),
            cost_fast: ctr.fast_cost(),
        },
        values,
    })
}

/// Why a grid run stopped: a plain computation error, or the oracle
/// tripping — two methods disagreeing on a value they must share.
#[derive(Debug)]
pub enum BenchError {
    Core(Error),
    Mismatch {
        d: u64,
        m: u32,
        left: BenchMethod,
        right: BenchMethod,
        want: String,
        got: String,
    },
}

impl From<Error> for BenchError {
    fn from(e: Error) -> Self {
        BenchError::Core(e)
    }
}

impl std::fmt::Display for BenchError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BenchError::Core(e) => write!(f, "{e}"),
            BenchError::Mismatch {
                d,
                m,
                left,
                right,
                want,
                got,
            } => write!(
                f,
                "oracle violation: {} and {} disagree at D={d}, m={m}: {want} vs {got}",
                left.name(),
                right.name()
            ),
        }
    }
}

/// Parse `"D1,D2,...;M1,M2,..."`.  Empty halves are rejected.
pub fn parse_grid(s: &str) -> Option<(Vec<u64>, Vec<u32>)> {
    let (ds, ms) = s.split_once(';')?;
    let parse_list = |part: &str| -> Option<Vec<u64>> {
        let items: Vec<u64> = part
            .split(',')
            .map(|x| x.trim().parse().ok())
            .collect::<Option<_>>()?;
        (!items.is_empty()).then_some(items)
    };
    let ds = parse_list(ds)?;
    let ms = parse_list(ms)?
        .into_iter()
        .map(|m| u32::try_from(m).ok())
        .collect::<Option<Vec<u32>>>()?;
    Some((ds, ms))
}

/// Run every method on every grid cell, sequentially for clean counters.
/// All methods must produce identical values on a cell before any of its
/// records are kept.
pub fn run_grid(
    ds: &[Discriminant],
    ms: &[u32],
    methods: &[BenchMethod],
) -> Result<Vec<BenchRecord>, BenchError> {
    let mut records = Vec::with_capacity(ds.len() * ms.len() * methods.len());
    for &d in ds {
        for &m_upper in ms {
            let mut runs = Vec::with_capacity(methods.len());
            for &method in methods {
                runs.push(run_method(method, d, m_upper)?);
            }
            if let Some((first, rest)) = runs.split_first() {
                for other in rest {
                    for ((m, a), (_, b)) in first.values.iter().zip(&other.values) {
                        if a != b {
                            return Err(BenchError::Mismatch {
                                d: d.get(),
                                m: *m,
                                left: first.record.method,
                                right: other.record.method,
                                want: fmt_rat(a),
                                got: fmt_rat(b),
                            });
                        }
                    }
                }
            }
            records.extend(runs.into_iter().map(|r| r.record));
        }
    }
    Ok(records)
}
