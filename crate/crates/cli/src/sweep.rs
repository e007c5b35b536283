//! Sweep driver: the core's single-threaded sweep, plus an opt-in
//! thread-fanned variant for the discriminant loop.  Fanning out changes
//! nothing observable: values, their order, and every counter total are
//! identical for any worker count.

use std::thread;

use quadirr_core::arith_functions::SigmaCache;
use quadirr_core::characters::{fundamental_discriminants, Discriminant};
use quadirr_core::elementary_zeta::ZetaValue;
use quadirr_core::modular_coeffs::CoeffPipeline;
use quadirr_core::modular_zeta::{sweep, zeta_eq3, SweepMStat, SweepOptions};
use quadirr_core::{Error, MulCounter};

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub d_max: u64,
    pub m_upper: u32,
    pub use_cache: bool,
    pub cache_capacity: Option<usize>,
    /// worker threads for the inner discriminant loop; `<= 1` runs the
    /// core path untouched
    pub jobs: usize,
}

#[derive(Debug)]
pub struct SweepOutput {
    pub values: Vec<ZetaValue>,
    pub per_m: Vec<SweepMStat>,
    pub counter: MulCounter,
}

pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepOutput, Error> {
    let opts = SweepOptions {
        d_max: cfg.d_max,
        m_upper: cfg.m_upper,
        use_cache: cfg.use_cache,
        cache_capacity: cfg.cache_capacity,
    };
    if cfg.jobs <= 1 {
        let mut ctr = MulCounter::new();
        let res = sweep(&opts, &mut ctr)?;
        return Ok(SweepOutput {
            values: res.values,
            per_m: res.per_m,
            counter: ctr,
        });
    }
    run_sweep_fanned(&opts, cfg.jobs)
}

struct WorkerOut {
    values: Vec<ZetaValue>,
    e_calls: u64,
    hits: u64,
    misses: u64,
    counter: MulCounter,
}

/// Same traversal as the core sweep — `m` outer, discriminants inner —
/// with each `m`'s discriminant list split into contiguous chunks, one
/// worker per chunk.  Workers keep private counters and caches; results
/// are merged back in chunk order, so the value stream matches the
/// sequential one exactly.  Counter totals match too, because each
/// `(d, m)` evaluation performs the same operations wherever it runs —
/// only a *shared* cache could couple the chunks, so each worker gets its
/// own (the hit/miss split then differs from the sequential run, but the
/// values never do).
fn run_sweep_fanned(opts: &SweepOptions, jobs: usize) -> Result<SweepOutput, Error> {
    if opts.d_max < 5 {
        return Err(Error::Domain("sweep scope is empty: d_max < 5"));
    }
    let ds: Vec<Discriminant> = fundamental_discriminants(5, opts.d_max).collect();
    let mut ctr = MulCounter::new();
    let mut pipe = CoeffPipeline::new(opts.m_upper, &mut ctr)?;
    let mut values = Vec::new();
    let mut per_m = Vec::with_capacity((opts.m_upper / 2) as usize);
    for m in 1..=opts.m_upper / 2 {
        let ct = pipe.coeff_table(m, &mut ctr)?;
        let chunk = ds.len().div_ceil(jobs).max(1);
        let outs: Vec<Result<WorkerOut, Error>> = thread::scope(|s| {
            let handles: Vec<_> = ds
                .chunks(chunk)
                .map(|part| {
                    let ct = &ct;
                    s.spawn(move || {
                        let mut wctr = MulCounter::new();
                        let mut cache = if opts.use_cache {
                            Some(match opts.cache_capacity {
                                Some(cap) => SigmaCache::with_capacity(2 * m - 1, cap),
                                None => SigmaCache::new(2 * m - 1),
                            })
                        } else {
                            None
                        };
                        let mut vals = Vec::with_capacity(part.len());
                        let mut e_calls = 0u64;
                        for &d in part {
                            let ev = zeta_eq3(d, m, ct, cache.as_mut(), &mut wctr)?;
                            e_calls += ev.e_calls;
                            vals.push(ev.zeta);
                        }
                        let (hits, misses) = cache
                            .as_ref()
                            .map_or((0, 0), |c| (c.hits(), c.misses()));
                        Ok(WorkerOut {
                            values: vals,
                            e_calls,
                            hits,
                            misses,
                            counter: wctr,
                        })
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("sweep worker panicked"))
                .collect()
        });
        let mut stat = SweepMStat {
            m,
            e_calls: 0,
            hits: 0,
            misses: 0,
        };
        for out in outs {
            let out = out?;
            values.extend(out.values);
            stat.e_calls += out.e_calls;
            stat.hits += out.hits;
            stat.misses += out.misses;
            ctr.merge(&out.counter);
        }
        per_m.push(stat);
    }
    Ok(SweepOutput {
        values,
        per_m,
        counter: ctr,
    })
}
