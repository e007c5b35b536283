//! Fundamental discriminants and the real quadratic character attached to
//! one, evaluated through the Kronecker symbol.

use crate::error::{Error, Result};

/// True when `d` is squarefree.  `d >= 1`; plain trial division, adequate
/// for the discriminant ranges this crate sweeps.
fn squarefree(mut n: u64) -> bool {
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return false;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    true
}

/// True when `d` is the discriminant of a real quadratic field: either
/// `d = 1 mod 4` and squarefree, or `d = 4m` with `m = 2, 3 mod 4` and `m`
/// squarefree.  `d` must exceed 1 (the field is real, not rational).
pub fn is_fundamental(d: u64) -> bool {
    if d <= 1 {
        return false;
    }
    match d % 4 {
        1 => squarefree(d),
        0 => {
            let m = d / 4;
            (m % 4 == 2 || m % 4 == 3) && squarefree(m)
        }
        _ => false,
    }
}

/// A validated fundamental discriminant `> 1`.  Constructing one is the only
/// entry point, so every function taking a `Discriminant` may assume
/// fundamentality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Discriminant(u64);

impl Discriminant {
    pub fn new(d: u64) -> Result<Self> {
        if is_fundamental(d) {
            Ok(Discriminant(d))
        } else {
            Err(Error::NonFundamental(d))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

impl core::fmt::Display for Discriminant {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// All fundamental discriminants in `lo..=hi`, ascending.
pub fn fundamental_discriminants(lo: u64, hi: u64) -> impl Iterator<Item = Discriminant> {
    (lo..=hi).filter(|&d| is_fundamental(d)).map(Discriminant)
}

/// Jacobi symbol `(a | n)` for odd `n >= 1`, by quadratic reciprocity.
fn jacobi(mut a: u64, mut n: u64) -> i8 {
    debug_assert!(n % 2 == 1);
    a %= n;
    let mut sign = 1i8;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            // (2 | n) = -1 exactly when n = 3, 5 mod 8
            if matches!(n % 8, 3 | 5) {
                sign = -sign;
            }
        }
        core::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// Kronecker symbol `(a | j)` for `a >= 1`, extending the Jacobi symbol by
/// the factor-of-two rule `(a | 2) = 0, 1, -1` for `a` even, `= 1, 7 mod 8`,
/// `= 3, 5 mod 8` respectively, and `(a | 0) = [a == 1]`.
pub(crate) fn kronecker_u64(a: u64, j: u64) -> i8 {
    debug_assert!(a >= 1);
    if j == 0 {
        return i8::from(a == 1);
    }
    let tz = j.trailing_zeros();
    let odd = j >> tz;
    let mut sign = 1i8;
    if tz > 0 {
        if a.is_multiple_of(2) {
            return 0;
        }
        if tz % 2 == 1 && matches!(a % 8, 3 | 5) {
            sign = -1;
        }
    }
    sign * jacobi(a, odd)
}

/// The real character mod `d`: `chi_d(j) = (d | j)` as a Kronecker symbol.
/// Completely multiplicative in `j`, periodic with period `d`, and zero
/// exactly on the `j` sharing a factor with `d`.
pub fn kronecker(d: Discriminant, j: u64) -> i8 {
    kronecker_u64(d.get(), j)
}
