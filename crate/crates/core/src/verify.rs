//! Self-verification: runs every cross-check on a configurable grid.
//!
//! Hard invariants fail the run. Warning-level checks (Noether congruence,
//! the classical inequalities, printed values) are tallied and reported with
//! their first offending instance but never fail it.

use std::fmt;

use num_traits::Zero;

use crate::arith::{factorial, falling_factorial, from_int, int, range_product, ratio, Int};
use crate::branch::{
    derive_branch, dual_degree, genus_of_model, solve_nodes_cusps, validate_branch, BranchData, SurfaceIntrinsics,
};
use crate::cover::{self, oracle, ChernPair};
use crate::error::Result;
use crate::families::{hirzebruch, k3, veronese, FamilyInstance};
use crate::geography::{geography, slope_of, tau_times_three};
use crate::par::{map_ordered, Execution};
use crate::published;

type KFn = fn(&BranchData, u64) -> Result<Int>;

/// The closed-form side of each cross-check. Swappable so the harness itself
/// can be tested against a corrupted formula.
#[derive(Clone, Copy)]
pub struct Kernels {
    pub c1sq_closed: KFn,
    pub c2_closed: KFn,
    pub mu_prime: KFn,
    pub branch_dot_ram: KFn,
    pub galois: fn(&BranchData) -> Result<ChernPair>,
    pub corollary: fn(&SurfaceIntrinsics) -> Result<ChernPair>,
}

impl Default for Kernels {
    fn default() -> Self {
        Kernels {
            c1sq_closed: cover::c1sq_closed,
            c2_closed: cover::c2_closed,
            mu_prime: cover::mu_prime,
            branch_dot_ram: cover::branch_dot_ram,
            galois: cover::galois_chern,
            corollary: cover::corollary_n,
        }
    }
}

impl Kernels {
    fn closed(&self, data: &BranchData, k: u64) -> Result<ChernPair> {
        Ok(ChernPair { c1sq: (self.c1sq_closed)(data, k)?, c2: (self.c2_closed)(data, k)? })
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    /// Largest projection degree in the synthetic grid.
    pub max_n: u64,
    /// Skip the synthetic grid; check family instances only.
    pub families_only: bool,
    pub veronese_b_max: u64,
    pub hirzebruch_t_max: u64,
    pub hirzebruch_ab_max: u64,
    pub execution: Execution,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_n: 12,
            families_only: false,
            veronese_b_max: 10,
            hirzebruch_t_max: 3,
            hirzebruch_ab_max: 6,
            execution: Execution::Parallel,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Invariant,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub level: Level,
    pub cases: usize,
    pub failures: usize,
    /// Smallest failing input, rendered.
    pub counterexample: Option<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match (self.passed(), self.level) {
            (true, _) => "PASS",
            (false, Level::Invariant) => "FAIL",
            (false, Level::Warning) => "WARN",
        };
        write!(f, "{status:<5}{:<28}{:>7} cases", self.name, self.cases)?;
        if let Some(c) = &self.counterexample {
            write!(f, "  {} failing, first: {c}", self.failures)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.passed() || c.level == Level::Warning)
    }

    pub fn get(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }
}

// Failures carry a sort key so "first" is deterministic under parallelism.
struct Tally {
    name: &'static str,
    level: Level,
    cases: usize,
    failures: Vec<(Vec<i64>, String)>,
}

impl Tally {
    fn new(name: &'static str, level: Level) -> Self {
        Tally { name, level, cases: 0, failures: Vec::new() }
    }

    fn record(&mut self, ok: bool, key: Vec<i64>, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push((key, describe()));
        }
    }

    fn merge(&mut self, other: Tally) {
        self.cases += other.cases;
        self.failures.extend(other.failures);
    }

    fn finish(mut self) -> CheckOutcome {
        self.failures.sort();
        CheckOutcome {
            name: self.name,
            level: self.level,
            cases: self.cases,
            failures: self.failures.len(),
            counterexample: self.failures.into_iter().next().map(|(_, s)| s),
        }
    }
}

fn key_of(data: &BranchData, k: u64) -> Vec<i64> {
    let small = |v: &Int| i64::try_from(v).unwrap_or(i64::MAX);
    vec![data.n as i64, small(&data.m), small(&data.d), small(&data.rho), k as i64]
}

/// Consistent branch data with `n <= max_n`, even `m <= 14` and up to six
/// nodes and cusps.
pub fn synthetic_grid(max_n: u64) -> Vec<BranchData> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for m in (0..=14i64).step_by(2) {
            for d in 0..=6i64 {
                for rho in 0..=6i64 {
                    let mu = dual_degree(&int(m), &int(d), &int(rho));
                    let data = BranchData::new(n, m, mu, rho, d);
                    if validate_branch(&data).ok() {
                        out.push(data);
                    }
                }
            }
        }
    }
    out
}

pub fn family_instances(cfg: &VerifyConfig) -> Vec<FamilyInstance> {
    let mut out: Vec<FamilyInstance> = (2..=cfg.veronese_b_max).filter_map(|b| veronese(b).ok()).collect();
    for t in 0..=cfg.hirzebruch_t_max {
        for a in 1..=cfg.hirzebruch_ab_max {
            for b in 1..=cfg.hirzebruch_ab_max {
                out.extend(hirzebruch(t, a, b).ok());
            }
        }
    }
    out.push(k3());
    out
}

const CLOSED_ORACLE: &str = "closed-equals-oracle";
const MU_PRIME: &str = "mu-prime-agreement";
const A_K: &str = "branch-dot-ram-agreement";
const INTEGRALITY: &str = "integrality";
const ISOMORPHISM: &str = "isomorphism-rule";
const GALOIS: &str = "galois-coincidence";
const SIGNATURE: &str = "signature-slope-identity";
const NOETHER: &str = "noether-mod12";
const INEQUALITIES: &str = "geography-inequalities";

/// Checks that need only branch data, run per instance.
fn branch_checks(data: &BranchData, kernels: &Kernels, with_geography: bool) -> Vec<Tally> {
    let mut closed_oracle = Tally::new(CLOSED_ORACLE, Level::Invariant);
    let mut mu = Tally::new(MU_PRIME, Level::Invariant);
    let mut ak = Tally::new(A_K, Level::Invariant);
    let mut integral = Tally::new(INTEGRALITY, Level::Invariant);
    let mut iso = Tally::new(ISOMORPHISM, Level::Invariant);
    let mut galois = Tally::new(GALOIS, Level::Invariant);
    let mut sig = Tally::new(SIGNATURE, Level::Invariant);
    let mut noether = Tally::new(NOETHER, Level::Warning);
    let mut ineq = Tally::new(INEQUALITIES, Level::Warning);

    let mut last_closed = None;
    for step in oracle::OracleWalk::new(data) {
        let k = step.k;
        let key = key_of(data, k);
        let closed = kernels.closed(data, k);
        let oracle_pair = step.chern();
        integral.record(closed.is_ok() && oracle_pair.is_ok(), key.clone(), || {
            format!("{data} k={k}: closed={closed:?} oracle={oracle_pair:?}")
        });
        if let (Ok(c), Ok(o)) = (&closed, &oracle_pair) {
            closed_oracle.record(c == o, key.clone(), || format!("{data} k={k}: closed {c} vs oracle {o}"));
            if with_geography {
                let g = geography(o);
                sig.record(
                    &g.signature * from_int(&int(3)) == tau_times_three(o)
                        && slope_of(&g).map_or(o.c2.is_zero(), |s| s * from_int(&o.c2) == from_int(&o.c1sq)),
                    key.clone(),
                    || format!("{data} k={k}: {o}"),
                );
                noether.record(g.noether_mod12_ok, key.clone(), || format!("{data} k={k}: {o}"));
                ineq.record(g.bmy_ok && g.nonneg_ok && g.noether_line_ok, key.clone(), || {
                    format!("{data} k={k}: {o} flags={:?}", g.diagnostic_flags())
                });
            }
        }
        let mp = (kernels.mu_prime)(data, k);
        mu.record(mp.as_ref() == Ok(&step.mu_prime), key.clone(), || {
            format!("{data} k={k}: closed {mp:?} vs recursion {}", step.mu_prime)
        });
        let a = (kernels.branch_dot_ram)(data, k);
        ak.record(a.as_ref() == Ok(&step.s_dot_t), key, || {
            format!("{data} k={k}: closed {a:?} vs recursion {}", step.s_dot_t)
        });
        last_closed = closed.ok();
    }

    if data.n >= 2 {
        let key = key_of(data, data.n);
        let top = cover::chern(data, data.n);
        let below = cover::chern(data, data.n - 1);
        iso.record(top.is_ok() && top == below, key.clone(), || format!("{data}: {top:?} vs {below:?}"));
        let g = (kernels.galois)(data);
        galois.record(g.as_ref().ok() == last_closed.as_ref(), key, || {
            format!("{data}: galois {g:?} vs closed k=n-1 {last_closed:?}")
        });
    }

    vec![closed_oracle, mu, ak, integral, iso, galois, sig, noether, ineq]
}

fn merge_into(acc: &mut Vec<Tally>, more: Vec<Tally>) {
    if acc.is_empty() {
        *acc = more;
        return;
    }
    for (a, m) in acc.iter_mut().zip(more) {
        a.merge(m);
    }
}

fn arithmetic_checks() -> Vec<Tally> {
    let mut split = Tally::new("range-product-split", Level::Invariant);
    for a in -6i64..=6 {
        for b in (a - 1)..=8 {
            for c in b..=10 {
                let ok = range_product(a, b) * range_product(b + 1, c) == range_product(a, c);
                split.record(ok, vec![a, b, c], || format!("a={a} b={b} c={c}"));
            }
        }
    }
    let mut falling = Tally::new("falling-factorial", Level::Invariant);
    for n in 0..=20u64 {
        for k in 0..=n {
            let ok = falling_factorial(n, k) * factorial(n - k) == factorial(n);
            falling.record(ok, vec![n as i64, k as i64], || format!("n={n} k={k}"));
        }
    }
    let mut field = Tally::new("rational-field-laws", Level::Invariant);
    let vals: Vec<_> = [(-3, 2), (0, 1), (5, 7), (-4, 6), (9, 3)].iter().map(|&(p, q)| ratio(p, q)).collect();
    for (i, x) in vals.iter().enumerate() {
        for (j, y) in vals.iter().enumerate() {
            for (l, z) in vals.iter().enumerate() {
                let ok =
                    (x + y) + z == x + (y + z) && x * y == y * x && x * (y + z) == x * y + x * z && (x + y) - y == *x;
                field.record(ok, vec![i as i64, j as i64, l as i64], || format!("{x}, {y}, {z}"));
            }
        }
    }
    vec![split, falling, field]
}

fn family_checks(insts: &[FamilyInstance], kernels: &Kernels) -> Vec<Tally> {
    let mut valid = Tally::new("family-validation", Level::Invariant);
    let mut round = Tally::new("family-round-trip", Level::Invariant);
    let mut base = Tally::new("base-case", Level::Invariant);
    let mut corollary = Tally::new("corollary-coincidence", Level::Invariant);
    let mut resolve = Tally::new("nodes-cusps-resolve", Level::Invariant);
    let mut printed = Tally::new("published-values", Level::Warning);

    for (i, inst) in insts.iter().enumerate() {
        let key = vec![i as i64];
        let data = &inst.branch;
        valid.record(validate_branch(data).ok(), key.clone(), || format!("{}: {data}", inst.label));
        let g = genus_of_model(&data.m, &data.d, &data.rho);
        let (d, rho) = solve_nodes_cusps(&data.m, &data.mu, &g);
        resolve.record(d == from_int(&data.d) && rho == from_int(&data.rho), key.clone(), || {
            format!("{}: re-solved d={d}, rho={rho}", inst.label)
        });
        if let Some(s) = &inst.intrinsics {
            let derived = derive_branch(s);
            round.record(derived.as_ref() == Ok(data), key.clone(), || {
                format!("{}: derive{s} = {derived:?}, closed form {data}", inst.label)
            });
            if data.n >= 2 {
                let k1 = kernels.closed(data, 1);
                let want = ChernPair { c1sq: s.c1sq.clone(), c2: s.c2.clone() };
                base.record(k1.as_ref() == Ok(&want), key.clone(), || {
                    format!("{}: k=1 gives {k1:?}, surface has {want}", inst.label)
                });
                let c = (kernels.corollary)(s);
                let gal = (kernels.galois)(data);
                corollary.record(c.is_ok() && c == gal, key.clone(), || {
                    format!("{}: corollary {c:?} vs galois {gal:?}", inst.label)
                });
            }
        }
        if published::PUBLISHED.iter().any(|p| p.branch_data() == *data) {
            for pair in cover::chern_all(data).unwrap_or_default() {
                for cmp in published::compare(data, pair.k, pair.value()) {
                    printed.record(cmp.reproduced, vec![i as i64, pair.k as i64], || cmp.flag().unwrap_or_default());
                }
            }
        }
    }

    let mut veronese_nodes = Tally::new("veronese-nodes", Level::Invariant);
    for inst in insts {
        if let crate::families::FamilyLabel::Veronese { b } = inst.label {
            let d = &inst.branch.d;
            let ok = *d >= Int::zero() && (d.is_zero() == (b == 2));
            veronese_nodes.record(ok, vec![b as i64], || format!("b={b}: d={d}"));
        }
    }

    vec![valid, round, resolve, base, corollary, veronese_nodes, printed]
}

fn derive_checks(execution: Execution) -> Vec<Tally> {
    let inputs: Vec<(i64, i64, u64, i64)> = (-12..=12)
        .flat_map(|c1| (-4..=40).step_by(4).map(move |c2| (c1, c2)))
        .flat_map(|(c1, c2)| (1..=10u64).flat_map(move |n| (-12..=4).map(move |ek| (c1, c2, n, ek))))
        .collect();
    let results = map_ordered(execution, &inputs, |&(c1, c2, n, ek)| {
        let s = SurfaceIntrinsics::new(c1, c2, n, ek);
        derive_branch(&s).ok().map(|data| {
            let valid = validate_branch(&data).ok();
            let base = cover::chern(&data, 1).map(|c| c.value().clone());
            (s, data, valid, base)
        })
    });
    let mut validates = Tally::new("derived-validates", Level::Invariant);
    let mut base = Tally::new("derived-base-case", Level::Invariant);
    for (i, r) in results.into_iter().enumerate() {
        let Some((s, data, valid, chern)) = r else { continue };
        validates.record(valid, vec![i as i64], || format!("derive{s} = {data}"));
        if data.n >= 2 {
            let want = ChernPair { c1sq: s.c1sq.clone(), c2: s.c2.clone() };
            base.record(chern.as_ref() == Ok(&want), vec![i as i64], || format!("derive{s} k=1: {chern:?}"));
        }
    }
    vec![validates, base]
}

pub fn run(cfg: &VerifyConfig) -> VerifyReport {
    run_with(cfg, &Kernels::default())
}

pub fn run_with(cfg: &VerifyConfig, kernels: &Kernels) -> VerifyReport {
    let insts = family_instances(cfg);

    let mut tallies = arithmetic_checks();
    tallies.extend(family_checks(&insts, kernels));
    if !cfg.families_only {
        tallies.extend(derive_checks(cfg.execution));
    }

    let family_branches: Vec<BranchData> = insts.iter().map(|i| i.branch.clone()).collect();
    let mut per_branch = Vec::new();
    for t in map_ordered(cfg.execution, &family_branches, |d| branch_checks(d, kernels, true)) {
        merge_into(&mut per_branch, t);
    }
    if !cfg.families_only {
        let grid = synthetic_grid(cfg.max_n);
        for t in map_ordered(cfg.execution, &grid, |d| branch_checks(d, kernels, false)) {
            merge_into(&mut per_branch, t);
        }
    }
    tallies.extend(per_branch);

    VerifyReport { checks: tallies.into_iter().map(Tally::finish).collect() }
}
