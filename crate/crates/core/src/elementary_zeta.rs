//! Zeta values at negative odd integers through the finite character sum
//! `zeta_D(1-2m) = (B_2m / 4m^2) * D^(2m-1) * sum_j chi_D(j) B_2m(j/D)`,
//! the sum running over `1 <= j <= D`.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::bernoulli::{bern_poly_batch, bern_poly_naive, BernTable};
use crate::characters::{kronecker, Discriminant};
use crate::error::{Error, Result};
use crate::exact::{BigInt, BigRat, MulCounter};

/// Which route produced a value.  The two elementary variants differ only
/// in evaluation strategy and must agree bit for bit; the modular routes
/// are independent algorithms that must agree with them as well.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Eq1Naive,
    Eq1Batch,
    Eq2,
    Eq3,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Eq1Naive => "eq1-naive",
            Method::Eq1Batch => "eq1-batch",
            Method::Eq2 => "eq2",
            Method::Eq3 => "eq3",
        }
    }
}

/// An exact special value `zeta_D(1-2m)`, tagged with its origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaValue {
    pub d: Discriminant,
    pub m: u32,
    pub value: BigRat,
    pub method: Method,
}

/// Evaluation strategy for the Bernoulli-polynomial factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Eq1Variant {
    /// every power of `j/D` rebuilt per term
    Naive,
    /// one amortized pass per `j` covering all degrees at once
    Batch,
}

fn method_of(variant: Eq1Variant) -> Method {
    match variant {
        Eq1Variant::Naive => Method::Eq1Naive,
        Eq1Variant::Batch => Method::Eq1Batch,
    }
}

/// Scale a character sum `s` into the zeta value for one `m`.
fn assemble(
    d: Discriminant,
    m: u32,
    s: &BigRat,
    table: &BernTable,
    method: Method,
    ctr: &mut MulCounter,
) -> Result<ZetaValue> {
    let four_m_sq = BigInt::from(4u32) * BigInt::from(m) * BigInt::from(m);
    let factor = ctr.div_rat_int(table.get(2 * m)?, &four_m_sq);
    let d_pow = ctr.pow(&BigInt::from(d.get()), 2 * m - 1);
    let scaled = ctr.mul_rat_int(&factor, &d_pow);
    let value = ctr.mul_rat(&scaled, s);
    if value.is_zero() {
        // the L-factor of a nontrivial real character never vanishes here
        return Err(Error::Internal("zeta value vanished"));
    }
    Ok(ZetaValue {
        d,
        m,
        value,
        method,
    })
}

/// Single value `zeta_D(1-2m)` by the character sum.
pub fn zeta_eq1(
    d: Discriminant,
    m: u32,
    variant: Eq1Variant,
    table: &BernTable,
    ctr: &mut MulCounter,
) -> Result<ZetaValue> {
    if m == 0 {
        return Err(Error::Domain("m must be at least 1"));
    }
    match variant {
        Eq1Variant::Batch => {
            let mut all = zeta_eq1_range(d, 2 * m, variant, table, ctr)?;
            Ok(all.swap_remove(m as usize - 1))
        }
        Eq1Variant::Naive => {
            let mut sum = BigRat::zero();
            for j in 1..=d.get() {
                let chi = kronecker(d, j);
                if chi == 0 {
                    continue;
                }
                let x = BigRat::new(BigInt::from(j), BigInt::from(d.get()));
                let b = bern_poly_naive(2 * m, &x, table, ctr)?;
                sum = if chi > 0 {
                    ctr.add_rat(&sum, &b)
                } else {
                    ctr.sub_rat(&sum, &b)
                };
            }
            assemble(d, m, &sum, table, Method::Eq1Naive, ctr)
        }
    }
}

/// Every value `zeta_D(1-2m)` for `2m <= m_upper`, ascending in `m`.
/// `m_upper` must be even and at least 2.  The batch variant walks each
/// residue `j/D` once; the naive variant prices what refusing to share
/// powers costs, for the same bit-identical results.
pub fn zeta_eq1_range(
    d: Discriminant,
    m_upper: u32,
    variant: Eq1Variant,
    table: &BernTable,
    ctr: &mut MulCounter,
) -> Result<Vec<ZetaValue>> {
    if m_upper < 2 || !m_upper.is_multiple_of(2) {
        return Err(Error::Domain("range bound must be even and at least 2"));
    }
    if m_upper > table.max_index() {
        return Err(Error::TableUnderflow {
            needed: m_upper,
            max: table.max_index(),
        });
    }
    let half = (m_upper / 2) as usize;
    let mut sums = vec![BigRat::zero(); half];
    for j in 1..=d.get() {
        let chi = kronecker(d, j);
        if chi == 0 {
            continue;
        }
        let x = BigRat::new(BigInt::from(j), BigInt::from(d.get()));
        match variant {
            Eq1Variant::Batch => {
                let bp = bern_poly_batch(m_upper, &x, table, ctr)?;
                for m in 1..=half as u32 {
                    let b = bp.get(2 * m)?;
                    let slot = &mut sums[m as usize - 1];
                    *slot = if chi > 0 {
                        ctr.add_rat(slot, b)
                    } else {
                        ctr.sub_rat(slot, b)
                    };
                }
            }
            Eq1Variant::Naive => {
                for m in 1..=half as u32 {
                    let b = bern_poly_naive(2 * m, &x, table, ctr)?;
                    let slot = &mut sums[m as usize - 1];
                    *slot = if chi > 0 {
                        ctr.add_rat(slot, &b)
                    } else {
                        ctr.sub_rat(slot, &b)
                    };
                }
            }
        }
    }
    let method = method_of(variant);
    let mut out = Vec::with_capacity(half);
    for m in 1..=half as u32 {
        out.push(assemble(d, m, &sums[m as usize - 1], table, method, ctr)?);
    }
    Ok(out)
}
