//! Self-check: every route recomputes the same values over a scope of
//! discriminants, with the character-sum route as the reference.  A
//! deliberate fault hook corrupts one coefficient table so tests can
//! prove a disagreement is actually caught and located.

use quadirr_core::bernoulli::bernoulli_table;
use quadirr_core::characters::{fundamental_discriminants, Discriminant};
use quadirr_core::elementary_zeta::{zeta_eq1_range, Eq1Variant};
use quadirr_core::exact::fmt_rat;
use quadirr_core::modular_coeffs::CoeffPipeline;
use quadirr_core::modular_zeta::{zeta_eq2, zeta_eq3};
use quadirr_core::{BigInt, BigRat, Error, MulCounter};

#[derive(Debug)]
pub struct SelftestReport {
    /// one line per check group, e.g. "eq2 vs eq1 over 18 discriminants: ok"
    pub checks: Vec<String>,
    /// one line per disagreement, naming the exact `(D, 2m)` location
    pub failures: Vec<String>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn run(d_max: u64, m_upper: u32, inject_fault: bool) -> Result<SelftestReport, Error> {
    if d_max < 5 {
        return Err(Error::Domain("selftest scope is empty: d_max < 5"));
    }
    let ds: Vec<Discriminant> = fundamental_discriminants(5, d_max).collect();
    let mut ctr = MulCounter::new();
    let table = bernoulli_table(m_upper, &mut ctr);
    let mut checks = Vec::new();
    let mut failures = Vec::new();

    // Character-sum route, both evaluation strategies; the batch values
    // become the reference for the modular routes.
    let mut reference: Vec<Vec<BigRat>> = Vec::with_capacity(ds.len());
    let mut variant_failures = 0usize;
    for &d in &ds {
        let naive = zeta_eq1_range(d, m_upper, Eq1Variant::Naive, &table, &mut ctr)?;
        let batch = zeta_eq1_range(d, m_upper, Eq1Variant::Batch, &table, &mut ctr)?;
        for (a, b) in naive.iter().zip(&batch) {
            if a.value != b.value {
                variant_failures += 1;
                failures.push(format!(
                    "eq1-naive vs eq1-batch at D={}, 2m={}: {} vs {}",
                    d,
                    2 * a.m,
                    fmt_rat(&a.value),
                    fmt_rat(&b.value)
                ));
            }
        }
        reference.push(batch.into_iter().map(|z| z.value).collect());
    }
    checks.push(format!(
        "eq1-naive vs eq1-batch over {} discriminants, 2m <= {}: {}",
        ds.len(),
        m_upper,
        if variant_failures == 0 { "ok" } else { "FAIL" }
    ));

    // Modular routes against the reference, per (D, m).
    let mut pipe = CoeffPipeline::new(m_upper, &mut ctr)?;
    let mut eq2_failures = 0usize;
    let mut eq3_failures = 0usize;
    for m in 1..=m_upper / 2 {
        let mut ct = pipe.coeff_table(m, &mut ctr)?;
        if inject_fault && m == 1 {
            // knock the constant coefficient off by one; every value at
            // this m must now disagree with the reference
            ct.c[0] += BigInt::from(1);
        }
        for (i, &d) in ds.iter().enumerate() {
            let want = &reference[i][m as usize - 1];
            let v2 = zeta_eq2(d, m, &ct, None, &mut ctr)?;
            if &v2.zeta.value != want {
                eq2_failures += 1;
                failures.push(format!(
                    "eq2 vs eq1 at D={}, 2m={}: {} vs {}",
                    d,
                    2 * m,
                    fmt_rat(&v2.zeta.value),
                    fmt_rat(want)
                ));
            }
            let v3 = zeta_eq3(d, m, &ct, None, &mut ctr)?;
            if &v3.zeta.value != want {
                eq3_failures += 1;
                failures.push(format!(
                    "eq3 vs eq1 at D={}, 2m={}: {} vs {}",
                    d,
                    2 * m,
                    fmt_rat(&v3.zeta.value),
                    fmt_rat(want)
                ));
            }
        }
    }
    checks.push(format!(
        "eq2 vs eq1 over {} discriminants, 2m <= {}: {}",
        ds.len(),
        m_upper,
        if eq2_failures == 0 { "ok" } else { "FAIL" }
    ));
    checks.push(format!(
        "eq3 vs eq1 over {} discriminants, 2m <= {}: {}",
        ds.len(),
        m_upper,
        if eq3_failures == 0 { "ok" } else { "FAIL" }
    ));

    Ok(SelftestReport { checks, failures })
}
