//! Closed-form Ramsey and Gallai-Ramsey values.

use std::fmt;

use thiserror::Error;

use crate::catalog::{CatalogId, Named};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("no formula for {0}")]
    UnknownFamily(String),
    #[error("k must be at least 1")]
    BadK,
    #[error("value for {family} at k={k} overflows 64 bits")]
    Overflow { family: String, k: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ValueKind {
    Exact(u64),
    /// The value lies in `lo..=hi`.
    Range { lo: u64, hi: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrValue {
    pub kind: ValueKind,
    pub k: usize,
    pub family: CatalogId,
    pub note: Option<&'static str>,
}

impl GrValue {
    pub fn lo(&self) -> u64 {
        match self.kind {
            ValueKind::Exact(v) => v,
            ValueKind::Range { lo, .. } => lo,
        }
    }

    pub fn hi(&self) -> u64 {
        match self.kind {
            ValueKind::Exact(v) => v,
            ValueKind::Range { hi, .. } => hi,
        }
    }

    pub fn exact(&self) -> Option<u64> {
        match self.kind {
            ValueKind::Exact(v) => Some(v),
            ValueKind::Range { .. } => None,
        }
    }
}

impl fmt::Display for GrValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ValueKind::Exact(v) => write!(f, "{v}"),
            ValueKind::Range { lo, hi } => write!(f, "{lo}..={hi}"),
        }
    }
}

/// Normalizes labels that name the same family.
fn family_key(family: &CatalogId) -> Option<Family> {
    Some(match family {
        CatalogId::Alias(9 | 10) => Family::F9F10,
        CatalogId::Alias(12 | 13) => Family::F12F13,
        CatalogId::Alias(11) | CatalogId::Named(Named::Banner) => Family::F2n(3),
        CatalogId::F2n(n) if *n >= 3 => Family::F2n(*n),
        CatalogId::Complete(3) | CatalogId::Cycle(3) => Family::K3,
        CatalogId::Star(n) if *n >= 1 => Family::Star(*n),
        _ => return None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Family {
    F9F10,
    F12F13,
    F2n(usize),
    K3,
    Star(usize),
}

fn pow5(e: usize) -> Option<u64> {
    5u64.checked_pow(u32::try_from(e).ok()?)
}

/// `a * 5^e + b`, checked.
fn tower(a: u64, e: usize, b: u64) -> Option<u64> {
    pow5(e)?.checked_mul(a)?.checked_add(b)
}

/// `gr_k(K_3 : H)` for the families with a known value or bounds.
pub fn gr_value(family: &CatalogId, k: usize) -> Result<GrValue, FormulaError> {
    if k == 0 {
        return Err(FormulaError::BadK);
    }
    let fam = family_key(family).ok_or_else(|| FormulaError::UnknownFamily(family.label()))?;
    let overflow = || FormulaError::Overflow {
        family: family.label(),
        k,
    };
    let kk = k as u64;
    let mut note = None;
    let kind = match fam {
        Family::F9F10 => ValueKind::Exact(if k % 2 == 0 {
            tower(8, (k - 2) / 2, 1)
        } else {
            tower(4, (k - 1) / 2, 1)
        }
        .ok_or_else(overflow)?),
        Family::F12F13 => ValueKind::Exact(if k % 2 == 0 {
            tower(9, (k - 2) / 2, 1)
        } else {
            tower(4, (k - 1) / 2, 1)
        }
        .ok_or_else(overflow)?),
        Family::K3 => ValueKind::Exact(if k % 2 == 0 {
            tower(1, k / 2, 1)
        } else {
            tower(2, (k - 1) / 2, 1)
        }
        .ok_or_else(overflow)?),
        Family::F2n(n @ (3 | 4)) => ValueKind::Exact(r2_f2n(n) + kk - 2),
        Family::F2n(n) if k == 1 => ValueKind::Exact(n as u64 + 2),
        Family::F2n(n) if k == 2 => ValueKind::Exact(r2_f2n(n)),
        Family::F2n(5) => ValueKind::Exact(kk + 9),
        Family::F2n(n) => {
            let n = n as u64;
            let lo = if n % 2 == 0 {
                5 * n / 2 + kk - 6
            } else {
                (5 * n - 1) / 2 + kk - 4
            };
            let hi = kk
                .checked_mul(n - 1)
                .and_then(|v| v.checked_add(2))
                .ok_or_else(overflow)?;
            ValueKind::Range { lo, hi }
        }
        Family::Star(_) => return Err(FormulaError::UnknownFamily(family.label())),
    };
    if matches!(fam, Family::F2n(5)) && k <= 2 {
        note = Some("closed form holds for k >= 3; smaller k use the order and r2");
    }
    Ok(GrValue {
        kind,
        k,
        family: family.clone(),
        note,
    })
}

fn r2_f2n(n: usize) -> u64 {
    let n = n as u64;
    if n % 2 == 0 {
        2 * n - 1
    } else {
        2 * n
    }
}

/// Two-color Ramsey number of a family member.
pub fn r2_value(family: &CatalogId) -> Result<u64, FormulaError> {
    match family_key(family) {
        Some(Family::F9F10) => Ok(9),
        Some(Family::F12F13) => Ok(10),
        Some(Family::F2n(n)) | Some(Family::Star(n)) if n >= 3 => Ok(r2_f2n(n)),
        Some(Family::K3) => Ok(6),
        _ => Err(FormulaError::UnknownFamily(family.label())),
    }
}
