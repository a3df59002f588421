//! One output row: cross-checked Chern pair, geography and flags.

use crate::branch::{validate_branch, BranchData};
use crate::cover::{chern_all_unchecked, chern_unchecked, ChernPair, CrossCheckedChern};
use crate::error::{Error, Result};
use crate::geography::{geography, GeographyReport};
use crate::published::discrepancy_flags;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    /// Index as requested.
    pub k: u64,
    pub checked: CrossCheckedChern,
    pub geography: GeographyReport,
    pub flags: Vec<String>,
}

impl Evaluation {
    pub fn chern(&self) -> &ChernPair {
        self.checked.value()
    }

    fn build(data: &BranchData, k: u64, checked: CrossCheckedChern, mut flags: Vec<String>) -> Self {
        if k != checked.k {
            flags.push(format!("isomorphic-cover(k={})", checked.k));
        }
        if !checked.agree() {
            flags.push(format!("closed-oracle-mismatch(closed={}, oracle={})", checked.closed, checked.oracle));
        }
        let value = checked.value().clone();
        flags.extend(discrepancy_flags(data, checked.k, &value));
        let geography = geography(&value);
        flags.extend(geography.diagnostic_flags());
        Evaluation { k, checked, geography, flags }
    }
}

fn preflight(data: &BranchData, force: bool) -> Result<Vec<String>> {
    let report = validate_branch(data);
    if report.ok() {
        return Ok(Vec::new());
    }
    if !force {
        return Err(Error::Validation(report));
    }
    Ok(report.violations.iter().map(|v| format!("violation:{v}")).collect())
}

/// Evaluates `data` at `k`. With `force`, inconsistent data is evaluated
/// anyway and each validator violation is attached as a flag.
pub fn evaluate(data: &BranchData, k: u64, force: bool) -> Result<Evaluation> {
    let base = preflight(data, force)?;
    let checked = chern_unchecked(data, k)?;
    Ok(Evaluation::build(data, k, checked, base))
}

/// Evaluates every `k` in `1..n`.
pub fn evaluate_all(data: &BranchData, force: bool) -> Result<Vec<Evaluation>> {
    let base = preflight(data, force)?;
    Ok(chern_all_unchecked(data)?
        .into_iter()
        .map(|checked| Evaluation::build(data, checked.k, checked, base.clone()))
        .collect())
}
