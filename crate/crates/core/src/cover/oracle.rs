//! Recursive evaluation of the cover invariants.
//!
//! Starts from `X_0 = CP^2` (`c2 = 3`) and steps through `X_1, X_2, ...`
//! using only the branch-locus counts of each `S_k` and the one-step
//! recursions
//!
//! ```text
//! mu'_k = (n-k) mu'_{k-1} + rho_{k-1} + 2 d_{k-1}          mu'_1 = mu
//! a_k   = (n-k-1) a_{k-1} + 2 rho_k + 2 d_k                a_1   = 2 rho + 2 d
//! c2_k  = (n-k+1) c2_{k-1} - 2 m_k + mu'_k                 c2_0  = 3
//! E_k.T'_k = (deg g_k * m - m_{k+1}) / 2
//! c1^2_k = 9 deg g_k - 6 E_k.T'_k - a_k / 2 + (m/2) E_k.T'_k
//! ```
//!
//! where `a_k = S_{k+1}.T'_k`. None of the closed product formulas for
//! `mu'_k`, `a_k`, `c1^2` or `c2` are used.

use crate::arith::{from_int, int, ratio, require_integer, Int};
use crate::branch::BranchData;
use crate::error::Result;

use super::{check_k, locus_raw, BranchLocus, ChernPair, CoverSequences};

/// One step of the walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleStep {
    pub k: u64,
    pub locus: BranchLocus,
    pub mu_prime: Int,
    /// `2 E_k.T'_k`, kept doubled so odd values survive until checked.
    pub twice_e_dot_t: Int,
    /// `a_k = S_{k+1}.T'_k`.
    pub s_dot_t: Int,
    pub deg_g: Int,
    pub c2: Int,
    m: Int,
}

impl OracleStep {
    pub fn e_dot_t(&self) -> Result<Int> {
        require_integer("E_k.T'_k", ratio(self.twice_e_dot_t.clone(), 2))
    }

    /// `K_{X_k}^2` with `K = -3E_k + T'_k` and `T'_k = (g_k^*(S) - S_{k+1}) / 2`.
    pub fn c1sq(&self) -> Result<Int> {
        let e_dot_t = ratio(self.twice_e_dot_t.clone(), 2);
        let value = from_int(&(&self.deg_g * 9)) - &e_dot_t * from_int(&int(6)) - ratio(self.s_dot_t.clone(), 2)
            + ratio(self.m.clone(), 2) * e_dot_t;
        require_integer("c1^2", value)
    }

    pub fn chern(&self) -> Result<ChernPair> {
        Ok(ChernPair { c1sq: self.c1sq()?, c2: self.c2.clone() })
    }

    pub fn sequences(&self) -> Result<CoverSequences> {
        Ok(CoverSequences {
            k: self.k,
            m_k: self.locus.m_k.clone(),
            d_k: self.locus.d_k.clone(),
            rho_k: self.locus.rho_k.clone(),
            mu_prime_k: self.mu_prime.clone(),
            e_dot_t: self.e_dot_t()?,
            s_dot_t: self.s_dot_t.clone(),
        })
    }
}

/// Iterator over `k = 1, 2, ..., n-1`.
#[derive(Debug, Clone)]
pub struct OracleWalk<'a> {
    data: &'a BranchData,
    k: u64,
    deg_g: Int,
    prev_locus: Option<BranchLocus>,
    mu_prime: Int,
    a: Int,
    c2: Int,
}

impl<'a> OracleWalk<'a> {
    pub fn new(data: &'a BranchData) -> Self {
        OracleWalk {
            data,
            k: 0,
            deg_g: int(1),
            prev_locus: None,
            mu_prime: Int::default(),
            a: Int::default(),
            c2: int(3),
        }
    }
}

impl Iterator for OracleWalk<'_> {
    type Item = OracleStep;

    fn next(&mut self) -> Option<OracleStep> {
        let data = self.data;
        let k = self.k + 1;
        if k >= data.n {
            return None;
        }
        let n = data.n as i64;
        let ki = k as i64;
        let locus = locus_raw(data, k);

        self.deg_g *= n - ki + 1;
        self.mu_prime = match &self.prev_locus {
            None => data.mu.clone(),
            Some(prev) => &self.mu_prime * (n - ki) + &prev.rho_k + &prev.d_k * 2,
        };
        self.a = if k == 1 {
            &data.rho * 2 + &data.d * 2
        } else {
            &self.a * (n - ki - 1) + &locus.rho_k * 2 + &locus.d_k * 2
        };
        self.c2 = &self.c2 * (n - ki + 1) - &locus.m_k * 2 + &self.mu_prime;

        let next_m = locus_raw(data, k + 1).m_k;
        let twice_e_dot_t = &self.deg_g * &data.m - next_m;

        self.k = k;
        let step = OracleStep {
            k,
            locus: locus.clone(),
            mu_prime: self.mu_prime.clone(),
            twice_e_dot_t,
            s_dot_t: self.a.clone(),
            deg_g: self.deg_g.clone(),
            c2: self.c2.clone(),
            m: data.m.clone(),
        };
        self.prev_locus = Some(locus);
        Some(step)
    }
}

fn step_at(data: &BranchData, k: u64) -> Result<OracleStep> {
    check_k(data, k)?;
    Ok(OracleWalk::new(data).nth((k - 1) as usize).expect("k < n"))
}

pub fn mu_prime_oracle(data: &BranchData, k: u64) -> Result<Int> {
    Ok(step_at(data, k)?.mu_prime)
}

pub fn branch_dot_ram_oracle(data: &BranchData, k: u64) -> Result<Int> {
    Ok(step_at(data, k)?.s_dot_t)
}

pub fn c1sq_oracle(data: &BranchData, k: u64) -> Result<Int> {
    step_at(data, k)?.c1sq()
}

pub fn c2_oracle(data: &BranchData, k: u64) -> Result<Int> {
    Ok(step_at(data, k)?.c2)
}

pub fn sequences_oracle(data: &BranchData, k: u64) -> Result<CoverSequences> {
    step_at(data, k)?.sequences()
}
