//! Parameter-grid scans over the surface families.
//!
//! Each instance is evaluated independently (in parallel when allowed), then
//! rows are sorted by `(family parameters, k)`, so the output is identical for
//! every thread count.

use std::cmp::Ordering;
use std::ops::RangeInclusive;

use num_traits::Signed;

use crate::arith::Rational;
use crate::branch::BranchData;
use crate::error::{Error, Result};
use crate::evaluate::{evaluate, evaluate_all, Evaluation};
use crate::families::{hirzebruch, k3, veronese, FamilyInstance, FamilyLabel};
use crate::geography::{crossing_ratio, sign_change_k};
use crate::par::{map_ordered, Execution};
use crate::published::printed_veronese_slope;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Veronese { b: RangeInclusive<u64> },
    Hirzebruch { t: RangeInclusive<u64>, a: RangeInclusive<u64>, b: RangeInclusive<u64> },
    K3,
    Raw(Vec<BranchData>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KPolicy {
    /// Every `k` in `1..n`.
    All,
    /// One `k`; instances with `n < k` are skipped.
    Fixed(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRow {
    pub label: FamilyLabel,
    pub branch: BranchData,
    pub eval: Evaluation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceSummary {
    pub label: FamilyLabel,
    pub n: u64,
    /// First `k` where the signature goes from negative to positive.
    pub sign_change_k: Option<u64>,
    /// `sign_change_k / n`.
    pub crossing_ratio: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeRecord {
    pub label: FamilyLabel,
    pub k: u64,
    pub slope: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanResult {
    pub rows: Vec<ScanRow>,
    pub instances: Vec<InstanceSummary>,
    pub max_slope: Option<SlopeRecord>,
    /// Maximum over `k >= 2`, i.e. excluding the surface itself.
    pub max_cover_slope: Option<SlopeRecord>,
    /// Row with `k >= 2` whose slope is nearest the printed Veronese slope.
    pub nearest_printed_slope: Option<SlopeRecord>,
    /// Every row carrying a flag, as `(row index, flag)`.
    pub findings: Vec<(usize, String)>,
}

fn range_vec(name: &str, r: &RangeInclusive<u64>) -> Result<Vec<u64>> {
    if r.is_empty() {
        return Err(Error::InvalidParameter(format!("empty range for {name}: {}..{}", r.start(), r.end())));
    }
    Ok(r.clone().collect())
}

pub fn instances(spec: &FamilySpec) -> Result<Vec<FamilyInstance>> {
    match spec {
        FamilySpec::Veronese { b } => range_vec("b", b)?.into_iter().map(veronese).collect(),
        FamilySpec::Hirzebruch { t, a, b } => {
            let (ts, as_, bs) = (range_vec("t", t)?, range_vec("a", a)?, range_vec("b", b)?);
            let mut out = Vec::with_capacity(ts.len() * as_.len() * bs.len());
            for &t in &ts {
                for &a in &as_ {
                    for &b in &bs {
                        out.push(hirzebruch(t, a, b)?);
                    }
                }
            }
            Ok(out)
        }
        FamilySpec::K3 => Ok(vec![k3()]),
        FamilySpec::Raw(list) => {
            if list.is_empty() {
                return Err(Error::InvalidParameter("empty branch data list".to_owned()));
            }
            Ok(list
                .iter()
                .enumerate()
                .map(|(index, branch)| FamilyInstance {
                    label: FamilyLabel::Raw { index },
                    branch: branch.clone(),
                    intrinsics: None,
                })
                .collect())
        }
    }
}

fn scan_instance(inst: &FamilyInstance, policy: KPolicy) -> Result<Vec<Evaluation>> {
    match policy {
        KPolicy::All => evaluate_all(&inst.branch, false),
        KPolicy::Fixed(k) if k > inst.branch.n => Ok(Vec::new()),
        KPolicy::Fixed(k) => Ok(vec![evaluate(&inst.branch, k, false)?]),
    }
}

fn better(candidate: &SlopeRecord, best: &Option<SlopeRecord>) -> bool {
    match best {
        None => true,
        Some(b) => candidate.slope > b.slope,
    }
}

pub fn scan(spec: &FamilySpec, policy: KPolicy, exec: Execution) -> Result<ScanResult> {
    if policy == KPolicy::Fixed(0) {
        return Err(Error::InvalidParameter("k must be at least 1".to_owned()));
    }
    let mut insts = instances(spec)?;
    insts.sort_by_key(|x| x.label.sort_key());

    let evaluated = map_ordered(exec, &insts, |inst| scan_instance(inst, policy));

    let mut rows = Vec::new();
    let mut summaries = Vec::new();
    for (inst, evals) in insts.iter().zip(evaluated) {
        let evals = evals?;
        let (sign_change, ratio) = if policy == KPolicy::All {
            let taus: Vec<Rational> = evals.iter().map(|e| e.geography.signature.clone()).collect();
            let k = sign_change_k(&taus);
            (k, k.map(|k| crossing_ratio(k, inst.branch.n)))
        } else {
            (None, None)
        };
        summaries.push(InstanceSummary {
            label: inst.label,
            n: inst.branch.n,
            sign_change_k: sign_change,
            crossing_ratio: ratio,
        });
        rows.extend(evals.into_iter().map(|eval| ScanRow { label: inst.label, branch: inst.branch.clone(), eval }));
    }
    rows.sort_by(|x, y| x.label.sort_key().cmp(&y.label.sort_key()).then(x.eval.k.cmp(&y.eval.k)));

    let target = printed_veronese_slope();
    let mut max_slope = None;
    let mut max_cover_slope = None;
    let mut nearest: Option<(Rational, SlopeRecord)> = None;
    let mut findings = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        findings.extend(row.eval.flags.iter().map(|f| (i, f.clone())));
        let Some(slope) = row.eval.geography.slope.clone() else { continue };
        let rec = SlopeRecord { label: row.label, k: row.eval.k, slope };
        if row.eval.checked.k >= 2 {
            let dist = (&rec.slope - &target).abs();
            if nearest.as_ref().is_none_or(|(d, _)| dist.cmp(d) == Ordering::Less) {
                nearest = Some((dist, rec.clone()));
            }
            if better(&rec, &max_cover_slope) {
                max_cover_slope = Some(rec.clone());
            }
        }
        if better(&rec, &max_slope) {
            max_slope = Some(rec);
        }
    }

    Ok(ScanResult {
        rows,
        instances: summaries,
        max_slope,
        max_cover_slope,
        nearest_printed_slope: nearest.map(|(_, r)| r),
        findings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, ratio};
    use crate::cover::ChernPair;

    #[test]
    fn veronese_three_all_k() {
        let res = scan(&FamilySpec::Veronese { b: 3..=3 }, KPolicy::All, Execution::Sequential).unwrap();
        assert_eq!(res.rows.len(), 8);
        let r4 = &res.rows[3];
        assert_eq!(r4.eval.k, 4);
        assert_eq!(r4.eval.chern(), &ChernPair::new(35784, 22176));
        assert_eq!(r4.eval.geography.slope, Some(ratio(35784, 22176)));
        // k = 1 is CP^2 itself with slope 3
        assert_eq!(res.max_slope.as_ref().unwrap().k, 1);
        assert!(res.max_cover_slope.as_ref().unwrap().slope < ratio(3, 1));
        assert_eq!(res.instances[0].sign_change_k, None);
    }

    #[test]
    fn k3_rows_and_flag() {
        let res = scan(&FamilySpec::K3, KPolicy::All, Execution::Sequential).unwrap();
        let c2: Vec<_> = res.rows.iter().map(|r| r.eval.chern().c2.clone()).collect();
        assert_eq!(c2, vec![int(24), int(144), int(384)]);
        assert_eq!(res.findings, vec![(2, "published-k3-c2-discrepancy(printed=240, computed=384)".to_owned())]);
    }

    #[test]
    fn veronese_two_top_cover_is_zero() {
        let res = scan(&FamilySpec::Veronese { b: 2..=2 }, KPolicy::Fixed(3), Execution::Sequential).unwrap();
        assert_eq!(res.rows.len(), 1);
        assert_eq!(res.rows[0].eval.chern(), &ChernPair::new(0, 0));
        assert_eq!(res.rows[0].eval.geography.slope, None);
    }

    #[test]
    fn fixed_k_skips_small_instances() {
        let res = scan(&FamilySpec::Veronese { b: 2..=3 }, KPolicy::Fixed(5), Execution::Sequential).unwrap();
        assert_eq!(res.rows.len(), 1);
        assert_eq!(res.rows[0].label, FamilyLabel::Veronese { b: 3 });
    }

    #[test]
    fn sign_change_found_for_large_b() {
        let res = scan(&FamilySpec::Veronese { b: 8..=8 }, KPolicy::All, Execution::Parallel).unwrap();
        assert_eq!(res.instances[0].sign_change_k, Some(55));
        assert_eq!(res.instances[0].crossing_ratio, Some(ratio(55, 64)));
    }

    #[test]
    fn rejects_empty_ranges() {
        #[allow(clippy::reversed_empty_ranges)]
        let err = scan(&FamilySpec::Veronese { b: 4..=3 }, KPolicy::All, Execution::Sequential).unwrap_err();
        assert!(matches!(err, Error::InvalidParameter(_)));
        let err = scan(&FamilySpec::Raw(vec![]), KPolicy::All, Execution::Sequential).unwrap_err();
        assert!(matches!(err, Error::InvalidParameter(_)));
        let err = scan(&FamilySpec::K3, KPolicy::Fixed(0), Execution::Sequential).unwrap_err();
        assert!(matches!(err, Error::InvalidParameter(_)));
    }

    #[test]
    fn thread_count_does_not_change_result() {
        let spec = FamilySpec::Hirzebruch { t: 0..=2, a: 1..=3, b: 1..=3 };
        let seq = scan(&spec, KPolicy::All, Execution::Sequential).unwrap();
        for exec in [Execution::Parallel, Execution::Threads(2), Execution::Threads(7)] {
            assert_eq!(scan(&spec, KPolicy::All, exec).unwrap(), seq);
        }
    }

    #[test]
    fn raw_lists_are_scanned() {
        let spec = FamilySpec::Raw(vec![BranchData::new(4, 12, 36, 24, 12)]);
        let res = scan(&spec, KPolicy::Fixed(2), Execution::Sequential).unwrap();
        assert_eq!(res.rows[0].eval.chern(), &ChernPair::new(48, 144));
        assert_eq!(res.rows[0].label.to_string(), "raw[0]");
    }
}
