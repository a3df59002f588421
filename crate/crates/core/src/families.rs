//! Closed-form branch data for the Veronese, Hirzebruch and K3 families.

use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::arith::{int, ratio, Int};
use crate::branch::{validate_branch, BranchData, SurfaceIntrinsics};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyLabel {
    Veronese {
        b: u64,
    },
    Hirzebruch {
        t: u64,
        a: u64,
        b: u64,
    },
    K3,
    /// Position in a user-supplied list of branch data.
    Raw {
        index: usize,
    },
}

impl FamilyLabel {
    /// Family tag followed by its parameters; this is the scan sort key.
    pub fn sort_key(&self) -> (u8, Vec<u64>) {
        match *self {
            FamilyLabel::Veronese { b } => (0, vec![b]),
            FamilyLabel::Hirzebruch { t, a, b } => (1, vec![t, a, b]),
            FamilyLabel::K3 => (2, vec![]),
            FamilyLabel::Raw { index } => (3, vec![index as u64]),
        }
    }
}

impl fmt::Display for FamilyLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyLabel::Veronese { b } => write!(f, "veronese(b={b})"),
            FamilyLabel::Hirzebruch { t, a, b } => write!(f, "hirzebruch(t={t},a={a},b={b})"),
            FamilyLabel::K3 => f.write_str("k3"),
            FamilyLabel::Raw { index } => write!(f, "raw[{index}]"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyInstance {
    pub label: FamilyLabel,
    pub branch: BranchData,
    pub intrinsics: Option<SurfaceIntrinsics>,
}

fn checked(label: FamilyLabel, branch: BranchData, intrinsics: Option<SurfaceIntrinsics>) -> Result<FamilyInstance> {
    let report = validate_branch(&branch);
    if !report.ok() {
        return Err(Error::Validation(report));
    }
    Ok(FamilyInstance { label, branch, intrinsics })
}

/// `CP^2` embedded by forms of degree `b`: `n = b^2`, `m = 3b(b-1)`,
/// `mu = 3(b-1)^2`, `rho = 3(b-1)(4b-5)` and
/// `d = 3/2 (b-1)(3b^3 - 3b^2 - 14b + 16)`.
pub fn veronese(b: u64) -> Result<FamilyInstance> {
    if b < 2 {
        return Err(Error::InvalidParameter(format!("veronese needs b >= 2, got b = {b}")));
    }
    let bi = int(b as i64);
    let b1 = &bi - 1;
    let n = b * b;
    let m = &bi * &b1 * 3;
    let mu = &b1 * &b1 * 3;
    let rho = &b1 * (&bi * 4 - 5) * 3;
    let twice_d: Int = &b1 * (&bi * &bi * &bi * 3 - &bi * &bi * 3 - &bi * 14 + 16) * 3;
    let (d, rem) = twice_d.div_rem(&int(2));
    if !rem.is_zero() || d.is_negative() {
        return Err(Error::NonIntegralSolution { quantity: "d", value: ratio(twice_d, 2) });
    }
    let branch = BranchData { n, m, mu, rho, d };
    // E = b * line, K = -3 * line.
    let intrinsics = SurfaceIntrinsics::new(9, 3, n, -3 * b as i64);
    checked(FamilyLabel::Veronese { b }, branch, Some(intrinsics))
}

/// Hirzebruch surface `F_t` embedded by `|a l + b C+|` with `l` a fiber and
/// `C+^2 = t`. The node count is recovered from the dual-degree identity.
pub fn hirzebruch(t: u64, a: u64, b: u64) -> Result<FamilyInstance> {
    if a < 1 || b < 1 {
        return Err(Error::InvalidParameter(format!("hirzebruch needs a, b >= 1, got a = {a}, b = {b}")));
    }
    let (ti, ai, bi) = (t as i64, a as i64, b as i64);
    let n = 2 * a * b + t * b * b;
    let m = int(6 * ai * bi - 2 * ai - 2 * bi + ti * (3 * bi * bi - bi));
    let mu = int(6 * ai * bi - 4 * ai - 4 * bi + 4 + ti * (3 * bi * bi - 2 * bi));
    let rho = int(24 * ai * bi - 18 * ai - 18 * bi + 12 + ti * (12 * bi * bi - 9 * bi));
    let twice_d: Int = &m * &m - &m - &mu - &rho * 3;
    let (d, rem) = twice_d.div_rem(&int(2));
    if !rem.is_zero() || d.is_negative() {
        return Err(Error::NonIntegralSolution { quantity: "d", value: ratio(twice_d, 2) });
    }
    let branch = BranchData { n, m, mu, rho, d };
    // K = -2 C+ + (t - 2) l, E = a l + b C+.
    let intrinsics = SurfaceIntrinsics::new(8, 4, n, -2 * ai - 2 * bi - bi * ti);
    checked(FamilyLabel::Hirzebruch { t, a, b }, branch, Some(intrinsics))
}

/// A quartic K3 surface: `K = 0`, `c2 = 24`, `E^2 = 4`.
pub fn k3() -> FamilyInstance {
    FamilyInstance {
        label: FamilyLabel::K3,
        branch: BranchData::new(4, 12, 36, 24, 12),
        intrinsics: Some(SurfaceIntrinsics::new(0, 24, 4, 0)),
    }
}
