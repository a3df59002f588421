//! Branch-curve data of a generic projection and the intrinsic surface data it
//! is determined by.
//!
//! A generic projection `f: X -> CP^2` of degree `n` has a cuspidal branch
//! curve `S` of degree `m`, with `d` nodes, `rho` cusps and `mu` branch points
//! (`mu` is also the degree of the dual curve). Those five numbers are all the
//! cover formulas consume. They are not independent; see [`validate_branch`].

use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::arith::{from_int, int, ratio, Int, Rational};
use crate::error::{Error, Result};

/// The quintuple `(n, m, mu, rho, d)`.
///
/// Construction never validates, so inconsistent data can be carried around
/// and reported on. Compute paths call [`validate_branch`] first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BranchData {
    /// Degree of the projection.
    pub n: u64,
    /// Degree of the branch curve.
    pub m: Int,
    /// Number of branch points.
    pub mu: Int,
    /// Number of cusps.
    pub rho: Int,
    /// Number of nodes.
    pub d: Int,
}

impl BranchData {
    pub fn new(n: u64, m: impl Into<Int>, mu: impl Into<Int>, rho: impl Into<Int>, d: impl Into<Int>) -> Self {
        BranchData { n, m: m.into(), mu: mu.into(), rho: rho.into(), d: d.into() }
    }
}

impl fmt::Display for BranchData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, m={}, mu={}, rho={}, d={})", self.n, self.m, self.mu, self.rho, self.d)
    }
}

/// Intersection numbers of the embedded surface: `K^2`, `e(X)`, `E^2` and
/// `E.K` where `E` is the hyperplane class and `K` the canonical class.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SurfaceIntrinsics {
    pub c1sq: Int,
    pub c2: Int,
    /// `deg X = E^2`, which is also the projection degree.
    pub deg_n: u64,
    pub ek: Int,
}

impl SurfaceIntrinsics {
    pub fn new(c1sq: impl Into<Int>, c2: impl Into<Int>, deg_n: u64, ek: impl Into<Int>) -> Self {
        SurfaceIntrinsics { c1sq: c1sq.into(), c2: c2.into(), deg_n, ek: ek.into() }
    }
}

impl fmt::Display for SurfaceIntrinsics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(c1sq={}, c2={}, deg={}, ek={})", self.c1sq, self.c2, self.deg_n, self.ek)
    }
}

/// One failed identity. For bound checks `expected` holds the bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub identity: &'static str,
    pub expected: Int,
    pub actual: Int,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(expected={}, actual={})", self.identity, self.expected, self.actual)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn find(&self, identity: &str) -> Option<&Violation> {
        self.violations.iter().find(|v| v.identity == identity)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return f.write_str("ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

pub const DUAL_DEGREE: &str = "dual-degree";
pub const GENUS_NONNEGATIVE: &str = "genus-nonnegative";
pub const DEGREE_POSITIVE: &str = "projection-degree-positive";
pub const BRANCH_DEGREE_EVEN: &str = "branch-degree-even";
pub const NODES_NEED_FOUR_SHEETS: &str = "nodes-need-n>=4";
pub const CUSPS_NEED_THREE_SHEETS: &str = "cusps-need-n>=3";

/// Degree of the dual of a plane curve of degree `m` with `d` nodes and `rho`
/// cusps: `m^2 - m - 2d - 3rho`.
pub fn dual_degree(m: &Int, d: &Int, rho: &Int) -> Int {
    m * m - m - d * 2 - rho * 3
}

/// Geometric genus of the normalization: `(m-1)(m-2)/2 - d - rho`.
pub fn genus_of_model(m: &Int, d: &Int, rho: &Int) -> Rational {
    ratio((m - 1) * (m - 2), 2) - from_int(d) - from_int(rho)
}

pub fn validate_branch(data: &BranchData) -> ValidationReport {
    let mut violations = Vec::new();
    let zero = Int::zero();

    if data.n == 0 {
        violations.push(Violation { identity: DEGREE_POSITIVE, expected: int(1), actual: int(0) });
    }
    for (name, value) in [
        ("m-nonnegative", &data.m),
        ("mu-nonnegative", &data.mu),
        ("rho-nonnegative", &data.rho),
        ("d-nonnegative", &data.d),
    ] {
        if value.is_negative() {
            violations.push(Violation { identity: name, expected: zero.clone(), actual: value.clone() });
        }
    }

    let expected_mu = dual_degree(&data.m, &data.d, &data.rho);
    if expected_mu != data.mu {
        violations.push(Violation { identity: DUAL_DEGREE, expected: expected_mu, actual: data.mu.clone() });
    }

    // (m-1)(m-2) is always even, so the genus is integral; only its sign can fail.
    let genus = genus_of_model(&data.m, &data.d, &data.rho);
    if genus.is_negative() {
        violations.push(Violation { identity: GENUS_NONNEGATIVE, expected: zero.clone(), actual: genus.to_integer() });
    }

    // m = E.K + 3E^2 and E^2 + E.K is even by adjunction.
    if data.m.is_odd() {
        violations.push(Violation {
            identity: BRANCH_DEGREE_EVEN,
            expected: zero.clone(),
            actual: data.m.mod_floor(&int(2)),
        });
    }
    // A node comes from two pairs of sheets meeting, a cusp from three sheets.
    if data.n < 4 && !data.d.is_zero() {
        violations.push(Violation { identity: NODES_NEED_FOUR_SHEETS, expected: zero.clone(), actual: data.d.clone() });
    }
    if data.n < 3 && !data.rho.is_zero() {
        violations.push(Violation { identity: CUSPS_NEED_THREE_SHEETS, expected: zero, actual: data.rho.clone() });
    }

    ValidationReport { violations }
}

/// Solves `(d, rho)` from the branch degree, the branch point count and the
/// genus of the normalization:
/// `2d + 3rho = m(m-1) - mu` and `d + rho = (m-1)(m-2)/2 - g`.
pub fn solve_nodes_cusps(m: &Int, mu: &Int, genus: &Rational) -> (Rational, Rational) {
    let rho = from_int(&(m * (m - 1) - mu - (m - 1) * (m - 2))) + genus * from_int(&int(2));
    let d = ratio((m - 1) * (m - 2), 2) - genus - &rho;
    (d, rho)
}

fn nonnegative_integer(quantity: &'static str, value: Rational) -> Result<Int> {
    if value.is_integer() && !value.is_negative() {
        Ok(value.to_integer())
    } else {
        Err(Error::NonIntegralSolution { quantity, value })
    }
}

/// Branch data of a generic projection of a surface with the given intrinsics.
///
/// `m = E.(K+3E)` from `R = K + 3E`; `mu = c2 + 3n + 2E.K` from the Lefschetz
/// pencil count with `e(E) = -E.(E+K)`; `g(R) = 1 + R.(R+K)/2`. The node and
/// cusp counts then follow from [`solve_nodes_cusps`].
pub fn derive_branch(s: &SurfaceIntrinsics) -> Result<BranchData> {
    let n = int(s.deg_n as i64);
    let m: Int = &s.ek + &n * 3;
    if !m.is_positive() {
        return Err(Error::DegenerateSurface { m });
    }
    let mu = &s.c2 + &n * 3 + &s.ek * 2;
    let genus = from_int(&int(1)) + ratio(&s.c1sq * 2 + &s.ek * 9 + &n * 9, 2);
    let (d, rho) = solve_nodes_cusps(&m, &mu, &genus);
    let rho = nonnegative_integer("rho", rho)?;
    let d = nonnegative_integer("d", d)?;
    let data = BranchData { n: s.deg_n, m, mu, rho, d };
    let report = validate_branch(&data);
    if !report.ok() {
        return Err(Error::Validation(report));
    }
    Ok(data)
}
