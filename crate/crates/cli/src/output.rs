//! Output formatting.  CSV carries a header row and exact `num/den`
//! values; JSON renders integers that fit 53 bits as numbers and falls
//! back to decimal strings above that, so consumers never see silently
//! rounded values.

use std::fmt::Write as _;

use quadirr_core::elementary_zeta::ZetaValue;
use quadirr_core::exact::fmt_rat;
use quadirr_core::irregularity::IrregularityReport;
use quadirr_core::modular_coeffs::CoeffTable;
use quadirr_core::modular_zeta::SweepMStat;

use crate::bench::BenchRecord;

/// Largest integer JSON numbers can carry without loss.
const JSON_SAFE: u128 = 1 << 53;

fn json_int(v: u128) -> serde_json::Value {
    if v <= JSON_SAFE {
        serde_json::Value::from(v as u64)
    } else {
        serde_json::Value::from(v.to_string())
    }
}

pub fn zeta_csv(values: &[ZetaValue]) -> String {
    let mut out = String::from("D,m,zeta\n");
    for v in values {
        writeln!(out, "{},{},{}", v.d.get(), v.m, fmt_rat(&v.value)).unwrap();
    }
    out
}

pub fn zeta_json(values: &[ZetaValue]) -> String {
    let arr: Vec<serde_json::Value> = values
        .iter()
        .map(|v| {
            serde_json::json!({
                "D": json_int(v.d.get() as u128),
                "m": v.m,
                "zeta": fmt_rat(&v.value),
            })
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&arr).expect("json encoding cannot fail");
    s.push('\n');
    s
}

pub fn irregular_json(rep: &IrregularityReport) -> String {
    let obj = serde_json::json!({
        "p": json_int(rep.p as u128),
        "D": json_int(rep.d.get() as u128),
        "delta": rep.delta,
        "index": rep.index,
        "hits": rep.hits,
        "anomalies": rep.anomalies,
        "condition_ok": rep.condition_ok,
        "engine": rep.engine.name(),
    });
    let mut s = serde_json::to_string_pretty(&obj).expect("json encoding cannot fail");
    s.push('\n');
    s
}

pub fn bench_csv(records: &[BenchRecord]) -> String {
    let mut out = String::from("method,D,M,wall_ms,mult_count,cost_naive,cost_fast\n");
    for r in records {
        writeln!(
            out,
            "{},{},{},{:.3},{},{},{}",
            r.method.name(),
            r.d,
            r.m_upper,
            r.wall_ms,
            r.mult_count,
            r.cost_naive,
            r.cost_fast
        )
        .unwrap();
    }
    out
}

pub fn bench_json(records: &[BenchRecord]) -> String {
    let arr: Vec<serde_json::Value> = records
        .iter()
        .map(|r| {
            serde_json::json!({
                "method": r.method.name(),
                "D": json_int(r.d as u128),
                "M": r.m_upper,
                "wall_ms": r.wall_ms,
                "mult_count": json_int(r.mult_count as u128),
                "cost_naive": json_int(r.cost_naive),
                "cost_fast": json_int(r.cost_fast),
            })
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&arr).expect("json encoding cannot fail");
    s.push('\n');
    s
}

pub fn coeff_csv(tables: &[CoeffTable]) -> String {
    let mut out = String::from("m,l,c\n");
    for t in tables {
        for (l, c) in t.c.iter().enumerate() {
            writeln!(out, "{},{},{}", t.m, l, c).unwrap();
        }
    }
    out
}

/// One stderr line per `m` with the shared-`e` call count and, when a
/// cache was in play, its hit/miss split.
pub fn sweep_summary(per_m: &[SweepMStat], cached: bool) -> Vec<String> {
    per_m
        .iter()
        .map(|s| {
            if cached {
                format!(
                    "m={}: e_calls={} cache_hits={} cache_misses={}",
                    s.m, s.e_calls, s.hits, s.misses
                )
            } else {
                format!("m={}: e_calls={}", s.m, s.e_calls)
            }
        })
        .collect()
}
