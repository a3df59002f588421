//! Chern numbers of the fibered-product covers `X_k`.
//!
//! `X_k` is the closure of the `k`-fold fibered product of `X` over the
//! generic projection `f`, minus the big diagonal. It maps to `CP^2` with
//! degree `n(n-1)...(n-k+1)` and to `X_{k-1}` with degree `n-k+1`; `X_n` is
//! isomorphic to `X_{n-1}`, the full Galois cover.
//!
//! Two independent evaluation routes live here. The closed forms in this
//! module evaluate the product formulas directly. [`oracle`] walks the
//! step-by-step recursions from `X_0 = CP^2` upward. [`chern`] runs both and
//! reports whether they agree.

pub mod oracle;

use std::fmt;

use crate::arith::{factorial, from_int, int, range_product, ratio, require_integer, Int, Rational};
use crate::branch::{derive_branch, validate_branch, BranchData, SurfaceIntrinsics};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChernPair {
    pub c1sq: Int,
    pub c2: Int,
}

impl ChernPair {
    pub fn new(c1sq: impl Into<Int>, c2: impl Into<Int>) -> Self {
        ChernPair { c1sq: c1sq.into(), c2: c2.into() }
    }
}

impl fmt::Display for ChernPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(c1^2={}, c2={})", self.c1sq, self.c2)
    }
}

/// Closed-form and recursive evaluations of the same cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCheckedChern {
    /// Cover index actually evaluated (`n` is folded onto `n-1`).
    pub k: u64,
    pub closed: ChernPair,
    pub oracle: ChernPair,
}

impl CrossCheckedChern {
    pub fn agree(&self) -> bool {
        self.closed == self.oracle
    }

    /// The value to publish: the oracle wins on disagreement.
    pub fn value(&self) -> &ChernPair {
        &self.oracle
    }
}

/// Degree, node and cusp counts of the branch curve `S_k` of `f_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchLocus {
    pub m_k: Int,
    pub d_k: Int,
    pub rho_k: Int,
}

/// Per-`k` intersection data of the cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverSequences {
    pub k: u64,
    pub m_k: Int,
    pub d_k: Int,
    pub rho_k: Int,
    /// Branch points of `S_k` not coming from `S_{k-1}`.
    pub mu_prime_k: Int,
    /// `E_k . T'_k`, hyperplane class against the ramification of `g_k`.
    pub e_dot_t: Int,
    /// `S_{k+1} . T'_k`.
    pub s_dot_t: Int,
}

fn check_k(data: &BranchData, k: u64) -> Result<()> {
    if k == 0 || k >= data.n {
        return Err(Error::InvalidK { k, n: data.n });
    }
    Ok(())
}

// Product over [n + lo_off, n + hi_off] with the empty-product convention.
fn prod(n: i64, lo_off: i64, hi_off: i64) -> Int {
    range_product(n + lo_off, n + hi_off)
}

/// Degree of `g_k: X_k -> CP^2`.
pub fn deg_g(n: u64, k: u64) -> Result<Int> {
    if k == 0 || k > n {
        return Err(Error::InvalidK { k, n });
    }
    Ok(range_product((n - k + 1) as i64, n as i64))
}

/// Branch-locus product formulas without the domain check. `k = n` is meaningful
/// here: it is the degree of `S_n`, which vanishes.
pub(crate) fn locus_raw(data: &BranchData, k: u64) -> BranchLocus {
    if k == 1 {
        return BranchLocus { m_k: data.m.clone(), d_k: data.d.clone(), rho_k: data.rho.clone() };
    }
    let (n, k) = (data.n as i64, k as i64);
    BranchLocus {
        m_k: prod(n, -k, -2) * &data.m,
        d_k: prod(n, -k - 2, -4) * &data.d,
        rho_k: prod(n, -k - 1, -3) * &data.rho,
    }
}

pub fn branch_locus_at(data: &BranchData, k: u64) -> Result<BranchLocus> {
    check_k(data, k)?;
    Ok(locus_raw(data, k))
}

pub fn mu_prime(data: &BranchData, k: u64) -> Result<Int> {
    check_k(data, k)?;
    let BranchData { mu, rho, d, .. } = data;
    let n = data.n as i64;
    let ki = k as i64;
    Ok(match k {
        1 => mu.clone(),
        2 => mu * (n - 2) + rho + d * 2,
        _ => {
            prod(n, -ki, -2) * mu
                + prod(n, -ki, -3) * (ki - 1) * rho
                + prod(n, -ki, -4) * ((ki - 1) * (2 * n - ki - 4)) * d
        }
    })
}

/// `E_k . T'_k`.
pub fn hyperplane_dot_ram(data: &BranchData, k: u64) -> Result<Int> {
    check_k(data, k)?;
    if k == 1 {
        return Ok(data.m.clone());
    }
    let n = data.n as i64;
    let ki = k as i64;
    let twice = &data.m * prod(n, -ki + 1, -2) * ((2 * n - 1) * ki - ki * ki);
    require_integer("E_k.T'_k", ratio(twice, 2))
}

/// `S_{k+1} . T'_k`.
pub fn branch_dot_ram(data: &BranchData, k: u64) -> Result<Int> {
    check_k(data, k)?;
    let BranchData { rho, d, .. } = data;
    if k == 1 {
        return Ok(rho * 2 + d * 2);
    }
    let n = data.n as i64;
    let ki = k as i64;
    Ok(prod(n, -ki - 1, -3) * (2 * ki) * rho + prod(n, -ki - 1, -4) * ((2 * n - ki - 5) * ki) * d)
}

/// All closed-form sequence values at `k`.
pub fn sequences(data: &BranchData, k: u64) -> Result<CoverSequences> {
    let locus = branch_locus_at(data, k)?;
    Ok(CoverSequences {
        k,
        m_k: locus.m_k,
        d_k: locus.d_k,
        rho_k: locus.rho_k,
        mu_prime_k: mu_prime(data, k)?,
        e_dot_t: hyperplane_dot_ram(data, k)?,
        s_dot_t: branch_dot_ram(data, k)?,
    })
}

pub fn c1sq_closed(data: &BranchData, k: u64) -> Result<Int> {
    check_k(data, k)?;
    let BranchData { m, rho, d, .. } = data;
    let m_r = from_int(m);
    let half_m_minus_6 = &m_r / from_int(&int(2)) - from_int(&int(6));
    if k == 1 {
        let value = from_int(&int(9 * data.n as i64)) + half_m_minus_6 * &m_r - from_int(rho) - from_int(d);
        return require_integer("c1^2", value);
    }
    let n = data.n as i64;
    let ki = k as i64;
    let half = ratio(1, 2);
    let value = from_int(&(prod(n, -ki + 1, 0) * 9))
        + &half * from_int(&(prod(n, -ki + 1, -2) * ((2 * n - ki - 1) * ki))) * half_m_minus_6 * &m_r
        - from_int(&(prod(n, -ki - 1, -3) * ki * rho))
        - &half * from_int(&(prod(n, -ki - 1, -4) * ((2 * n - ki - 5) * ki) * d));
    require_integer("c1^2", value)
}

/// The general `c_2` product formula. Only valid for `k >= 4`; at `k = 3` it
/// disagrees with the recursion, which is why [`c2_closed`] dispatches `k < 4`
/// to the dedicated formulas.
pub fn c2_general_form(data: &BranchData, k: u64) -> Rational {
    let BranchData { m, mu, rho, d, .. } = data;
    let n = data.n as i64;
    let ki = k as i64;
    let p = prod(n, -ki + 1, -2);
    let q = prod(n, -ki + 1, -3);
    let r = prod(n, -ki + 1, -4);
    let pk = &p * ((2 * n - ki - 1) * ki);

    from_int(&(prod(n, -ki + 1, 0) * 3)) - from_int(&(&pk * m))
        + ratio(&pk * mu, 2)
        + from_int(&(q * ((ki - 1) * ki) * rho)) * (ratio(n, 2) - ratio(ki + 1, 3))
        + ratio(&r * (ki * (ki + 1)) * ((ki + 6) * (ki - 1) + 4 * n * (n - ki - 1)) * d, 4)
        + from_int(&(r * (4 * n * ki - 2 * n * n * ki) * d))
}

pub fn c2_closed(data: &BranchData, k: u64) -> Result<Int> {
    check_k(data, k)?;
    let BranchData { m, mu, rho, d, .. } = data;
    let n = data.n as i64;
    let value = match k {
        1 => from_int(&(int(3 * n) - m * 2 + mu)),
        2 => from_int(&(int(3 * n * (n - 1)) - m * (2 * (2 * n - 3)) + mu * (2 * n - 3) + rho + d * 2)),
        3 => {
            from_int(&(int(3 * n * (n - 1) * (n - 2)) - m * (3 * (2 * n - 4) * (n - 2))))
                + ratio(mu * (3 * (2 * n - 4) * (n - 2)), 2)
                + from_int(&(d * (2 * (3 * n - 9)) + rho * (3 * n - 8)))
        }
        _ => c2_general_form(data, k),
    };
    require_integer("c2", value)
}

pub fn chern_closed(data: &BranchData, k: u64) -> Result<ChernPair> {
    Ok(ChernPair { c1sq: c1sq_closed(data, k)?, c2: c2_closed(data, k)? })
}

fn effective_k(data: &BranchData, k: u64) -> Result<u64> {
    if k == 0 || k > data.n {
        return Err(Error::InvalidK { k, n: data.n });
    }
    let eff = if k == data.n { k - 1 } else { k };
    if eff == 0 {
        return Err(Error::InvalidK { k, n: data.n });
    }
    Ok(eff)
}

fn require_valid(data: &BranchData) -> Result<()> {
    let report = validate_branch(data);
    if report.ok() {
        Ok(())
    } else {
        Err(Error::Validation(report))
    }
}

/// Both evaluations at `k`, with `1 <= k <= n` and `k = n` folded onto `n-1`.
/// Fails with [`Error::Validation`] if the branch data is inconsistent.
pub fn chern(data: &BranchData, k: u64) -> Result<CrossCheckedChern> {
    require_valid(data)?;
    chern_unchecked(data, k)
}

/// As [`chern`], skipping validation. Used to evaluate suspicious data as given.
pub fn chern_unchecked(data: &BranchData, k: u64) -> Result<CrossCheckedChern> {
    let eff = effective_k(data, k)?;
    let closed = chern_closed(data, eff)?;
    let step = oracle::OracleWalk::new(data).nth((eff - 1) as usize).expect("walk covers 1..n-1");
    Ok(CrossCheckedChern { k: eff, closed, oracle: step.chern()? })
}

/// Cross-checked values for every `k` in `1..n`, sharing one oracle walk.
pub fn chern_all(data: &BranchData) -> Result<Vec<CrossCheckedChern>> {
    require_valid(data)?;
    chern_all_unchecked(data)
}

pub fn chern_all_unchecked(data: &BranchData) -> Result<Vec<CrossCheckedChern>> {
    oracle::OracleWalk::new(data)
        .map(|step| Ok(CrossCheckedChern { k: step.k, closed: chern_closed(data, step.k)?, oracle: step.chern()? }))
        .collect()
}

/// Full Galois cover: `c1^2 = n!/4 (m-6)^2`, `c2 = n!(3 - m + d/4 + mu/2 + rho/6)`.
pub fn galois_chern(data: &BranchData) -> Result<ChernPair> {
    require_valid(data)?;
    if data.n < 2 {
        return Err(Error::InvalidParameter(format!("full Galois cover needs n >= 2, got n = {}", data.n)));
    }
    let BranchData { m, mu, rho, d, .. } = data;
    let nf = from_int(&factorial(data.n));
    let m6 = m - 6;
    let c1sq = &nf * ratio(&m6 * &m6, 4);
    let c2 =
        &nf * (from_int(&int(3)) - from_int(m) + ratio(d.clone(), 4) + ratio(mu.clone(), 2) + ratio(rho.clone(), 6));
    Ok(ChernPair { c1sq: require_integer("c1^2(X_Gal)", c1sq)?, c2: require_integer("c2(X_Gal)", c2)? })
}

/// Full Galois cover straight from surface intrinsics.
pub fn corollary_n(s: &SurfaceIntrinsics) -> Result<ChernPair> {
    if s.deg_n < 2 {
        return Err(Error::InvalidParameter(format!("full Galois cover needs deg >= 2, got {}", s.deg_n)));
    }
    let n = int(s.deg_n as i64);
    let ek = &s.ek;
    let nf = factorial(s.deg_n);
    let c1_bracket = ek * ek + &n * ek * 6 + &n * &n * 9 - ek * 12 - &n * 36 + 36;
    let c2_bracket =
        int(72) - &s.c1sq * 10 - ek * 54 - &n * 114 + &n * &n * 27 + &s.c2 * 14 + ek * ek * 3 + &n * ek * 18;
    Ok(ChernPair {
        c1sq: require_integer("c1^2(X_n)", ratio(&nf * c1_bracket, 4))?,
        c2: require_integer("c2(X_n)", ratio(&nf * c2_bracket, 24))?,
    })
}

/// The pipeline intrinsics -> branch data -> full Galois cover.
pub fn galois_from_intrinsics(s: &SurfaceIntrinsics) -> Result<ChernPair> {
    galois_chern(&derive_branch(s)?)
}
