//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::process::{Command, ExitCode};

use fibered_chern::arith::{format_decimal, int, Int};
use fibered_chern::branch::{derive_branch, BranchData, SurfaceIntrinsics};
use fibered_chern::cover::{self, oracle, ChernPair};
use fibered_chern::error::Result as LibResult;
use fibered_chern::evaluate::evaluate;
use fibered_chern::families::{hirzebruch, k3, veronese, FamilyInstance};
use fibered_chern::geography::geography;
use num_integer::Integer;

type Outcome = Result<String, String>;

/// Everything computed by criteria 1-8, audited by criterion 9.
#[derive(Default)]
struct Ledger {
    pairs: Vec<(String, ChernPair)>,
    errors: Vec<String>,
}

impl Ledger {
    fn note(&mut self, what: impl Into<String>, r: LibResult<ChernPair>) -> Option<ChernPair> {
        let what = what.into();
        match r {
            Ok(p) => {
                self.pairs.push((what, p.clone()));
                Some(p)
            }
            Err(e) => {
                self.errors.push(format!("{what}: {e}"));
                None
            }
        }
    }

    fn note_int(&mut self, what: impl Into<String>, r: LibResult<Int>) -> Option<Int> {
        let what = what.into();
        r.map_err(|e| self.errors.push(format!("{what}: {e}"))).ok()
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cross_checked(led: &mut Ledger, tag: &str, data: &BranchData, k: u64) -> Result<ChernPair, String> {
    let c = cover::chern(data, k).map_err(|e| format!("{tag} k={k}: {e}"))?;
    led.note(format!("{tag} k={k} closed"), Ok(c.closed.clone()));
    led.note(format!("{tag} k={k} oracle"), Ok(c.oracle.clone()));
    ensure(c.agree(), || format!("{tag} k={k}: closed {} vs oracle {}", c.closed, c.oracle))?;
    Ok(c.closed)
}

fn grid_instances() -> Vec<FamilyInstance> {
    let mut v: Vec<_> = (2..=8).map(|b| veronese(b).unwrap()).collect();
    for t in 0..=2 {
        for a in 1..=4 {
            for b in 1..=4 {
                v.push(hirzebruch(t, a, b).unwrap());
            }
        }
    }
    v.push(k3());
    v
}

fn c1_k3_golden(led: &mut Ledger) -> Outcome {
    let data = k3().branch;
    let want = [(1, 0, 24), (2, 48, 144)];
    for (k, c1, c2) in want {
        let got = cross_checked(led, "k3", &data, k)?;
        ensure(got == ChernPair::new(c1, c2), || format!("k={k}: got {got}, want ({c1}, {c2})"))?;
    }
    let top = cross_checked(led, "k3", &data, 3)?;
    ensure(top.c1sq == int(216), || format!("k=3 c1^2 = {}, want 216", top.c1sq))?;
    Ok("k=1 (0, 24), k=2 (48, 144), k=3 c1^2 216".into())
}

fn c2_k3_discrepancy(led: &mut Ledger) -> Outcome {
    let inst = k3();
    let data = &inst.branch;
    let s = inst.intrinsics.unwrap();
    let closed = led.note_int("k3 c2 closed k=3", cover::c2_closed(data, 3));
    let rec = led.note_int("k3 c2 recursion k=3", oracle::c2_oracle(data, 3));
    let gal = led.note("k3 galois", cover::galois_chern(data)).map(|p| p.c2);
    let cor = led.note("k3 corollary", cover::corollary_n(&s)).map(|p| p.c2);
    let routes = [("closed", closed), ("recursion", rec), ("galois", gal), ("corollary", cor)];
    for (name, v) in &routes {
        ensure(v.as_ref() == Some(&int(384)), || format!("{name} route gives {v:?}, want 384"))?;
    }
    let eval = evaluate(data, 3, false).map_err(|e| e.to_string())?;
    let flag = "published-k3-c2-discrepancy(printed=240, computed=384)";
    ensure(eval.flags.iter().any(|f| f == flag), || format!("flags {:?} lack {flag}", eval.flags))?;
    Ok(format!("all four routes give 384; flag {flag}"))
}

fn c3_closed_equals_oracle(led: &mut Ledger) -> Outcome {
    let mut cases = 0;
    for inst in grid_instances() {
        let tag = inst.label.to_string();
        let all = cover::chern_all(&inst.branch).map_err(|e| format!("{tag}: {e}"))?;
        for c in &all {
            cases += 1;
            led.note(format!("{tag} k={} closed", c.k), Ok(c.closed.clone()));
            led.note(format!("{tag} k={} oracle", c.k), Ok(c.oracle.clone()));
            ensure(c.agree(), || format!("{tag} k={}: closed {} vs oracle {}", c.k, c.closed, c.oracle))?;
        }
        // per-k entry point, including the k = n alias
        for k in [1, inst.branch.n - 1, inst.branch.n] {
            cases += 1;
            cross_checked(led, &tag, &inst.branch, k)?;
        }
    }
    Ok(format!("{cases} (instance, k) pairs agree exactly"))
}

fn c4_veronese_round_trip(_: &mut Ledger) -> Outcome {
    for b in 2..=10u64 {
        let bi = b as i128;
        let s = SurfaceIntrinsics::new(9, 3, b * b, -3 * b as i64);
        let derived = derive_branch(&s).map_err(|e| format!("b={b}: {e}"))?;
        let fam = veronese(b).map_err(|e| format!("b={b}: {e}"))?.branch;
        ensure(derived == fam, || format!("b={b}: derived {derived} vs family {fam}"))?;
        let twice_d = 3 * (bi - 1) * (3 * bi.pow(3) - 3 * bi * bi - 14 * bi + 16);
        ensure(twice_d % 2 == 0, || format!("b={b}: 2d = {twice_d} is odd"))?;
        let printed = BranchData {
            n: b * b,
            m: Int::from(3 * bi * (bi - 1)),
            mu: Int::from(3 * (bi - 1).pow(2)),
            rho: Int::from(3 * (bi - 1) * (4 * bi - 5)),
            d: Int::from(twice_d / 2),
        };
        ensure(derived == printed, || format!("b={b}: derived {derived} vs printed {printed}"))?;
    }
    Ok("b = 2..10 match the printed closed forms".into())
}

fn c5_hirzebruch_round_trip(_: &mut Ledger) -> Outcome {
    let mut cases = 0;
    for t in 0..=2i64 {
        for a in 1..=4i64 {
            for b in 1..=4i64 {
                let n = (2 * a * b + t * b * b) as u64;
                let s = SurfaceIntrinsics::new(8, 4, n, -2 * a - 2 * b - b * t);
                let tag = format!("t={t} a={a} b={b}");
                let got = derive_branch(&s).map_err(|e| format!("{tag}: {e}"))?;
                let m = 6 * a * b - 2 * a - 2 * b + t * (3 * b * b - b);
                let mu = 6 * a * b - 4 * a - 4 * b + 4 + t * (3 * b * b - 2 * b);
                let rho = 24 * a * b - 18 * a - 18 * b + 12 + t * (12 * b * b - 9 * b);
                ensure(got.n == n && got.m == int(m) && got.mu == int(mu) && got.rho == int(rho), || {
                    format!("{tag}: derived {got}, printed (m={m}, mu={mu}, rho={rho})")
                })?;
                let twice_d = m * m - m - mu - 3 * rho;
                ensure(twice_d.is_even() && twice_d >= 0 && got.d == int(twice_d / 2), || {
                    format!("{tag}: 2d = {twice_d}, derived d = {}", got.d)
                })?;
                let fam = hirzebruch(t as u64, a as u64, b as u64).map_err(|e| format!("{tag}: {e}"))?.branch;
                ensure(fam == got, || format!("{tag}: family {fam} vs derived {got}"))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} grid points; m^2-m-mu-3rho even, d non-negative"))
}

fn c6_galois_coincidences(led: &mut Ledger) -> Outcome {
    let insts = grid_instances();
    for inst in &insts {
        let tag = inst.label.to_string();
        let data = &inst.branch;
        let gal = led
            .note(format!("{tag} galois"), cover::galois_chern(data))
            .ok_or_else(|| format!("{tag}: galois failed"))?;
        let top = cross_checked(led, &tag, data, data.n - 1)?;
        ensure(gal == top, || format!("{tag}: galois {gal} vs k=n-1 {top}"))?;
        let s = inst.intrinsics.as_ref().ok_or_else(|| format!("{tag}: no intrinsics"))?;
        let cor = led.note(format!("{tag} corollary"), cover::corollary_n(s));
        let via = led.note(format!("{tag} galois(derive)"), cover::galois_from_intrinsics(s));
        ensure(cor.is_some() && cor == via, || format!("{tag}: corollary {cor:?} vs galois(derive) {via:?}"))?;
    }
    Ok(format!("{} instances", insts.len()))
}

fn c7_base_case(led: &mut Ledger) -> Outcome {
    let insts = grid_instances();
    for inst in &insts {
        let tag = inst.label.to_string();
        let s = inst.intrinsics.as_ref().unwrap();
        let data = derive_branch(s).map_err(|e| format!("{tag}: {e}"))?;
        let got = cross_checked(led, &tag, &data, 1)?;
        let want = ChernPair { c1sq: s.c1sq.clone(), c2: s.c2.clone() };
        ensure(got == want, || format!("{tag}: k=1 gives {got}, surface has {want}"))?;
    }
    Ok(format!("{} instances", insts.len()))
}

fn c8_veronese_three_four(led: &mut Ledger) -> Outcome {
    let data = veronese(3).unwrap().branch;
    let got = cross_checked(led, "veronese(b=3)", &data, 4)?;
    ensure(got == ChernPair::new(35784, 22176), || format!("got {got}"))?;
    let slope = geography(&got).slope.ok_or("no slope")?;
    let shown = format_decimal(&slope, 4);
    ensure(shown == "1.6136", || format!("slope displays as {shown}"))?;
    let eval = evaluate(&data, 4, false).map_err(|e| e.to_string())?;
    let flag = "published-veronese-slope-unreproduced(printed=2.73, computed=1.6136)";
    ensure(eval.flags.iter().any(|f| f == flag), || format!("flags {:?} lack {flag}", eval.flags))?;
    Ok(format!("(35784, 22176), slope {slope} = {shown}; flag {flag}"))
}

fn c9_integrality(led: &mut Ledger) -> (Outcome, Vec<String>) {
    let outcome = if led.errors.is_empty() {
        Ok(format!("{} computed pairs, all denominators clear", led.pairs.len()))
    } else {
        Err(format!("{} failures, first: {}", led.errors.len(), led.errors[0]))
    };
    let warnings = led
        .pairs
        .iter()
        .filter(|(_, p)| !geography(p).noether_mod12_ok)
        .map(|(what, p)| format!("noether-mod12 fails for {what}: {p}"))
        .collect();
    (outcome, warnings)
}

fn run_bin(args: &[&str]) -> Result<(Vec<u8>, Vec<u8>), String> {
    let out =
        Command::new(env!("CARGO_BIN_EXE_fibered-chern")).args(args).output().map_err(|e| format!("spawn: {e}"))?;
    if !out.status.success() {
        return Err(format!("{args:?} exited {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
    }
    Ok((out.stdout, out.stderr))
}

fn c10_scanner_determinism(_: &mut Ledger) -> Outcome {
    let base = ["scan", "veronese", "--b-min", "2", "--b-max", "6"];
    let mut detail = String::new();
    for fmt in ["table", "json", "csv"] {
        let mut reference: Option<(Vec<u8>, Vec<u8>)> = None;
        for threads in ["1", "2", "4", "0"] {
            for _ in 0..2 {
                let mut args = base.to_vec();
                args.extend(["--format", fmt, "--threads", threads]);
                let got = run_bin(&args)?;
                match &reference {
                    None => reference = Some(got),
                    Some(r) => ensure(*r == got, || format!("format {fmt}: output differs at --threads {threads}"))?,
                }
            }
        }
        if fmt == "table" {
            let text = String::from_utf8_lossy(&reference.unwrap().0).into_owned();
            let report: Vec<&str> = text.lines().filter(|l| l.contains("sign_change_k")).collect();
            ensure(report.len() == 5, || format!("expected 5 sign-change lines, got {report:?}"))?;
            detail = report.iter().map(|l| l.rsplit(": ").next().unwrap_or("")).collect::<Vec<_>>().join(", ");
        }
    }
    Ok(format!("byte-identical over 3 formats x 4 thread settings x 2 runs; sign-change k* for b=2..6: {detail}"))
}

fn main() -> ExitCode {
    type Criterion = fn(&mut Ledger) -> Outcome;
    let criteria: [(&str, Criterion); 8] = [
        ("K3 golden values", c1_k3_golden),
        ("K3 c2 discrepancy detection", c2_k3_discrepancy),
        ("closed form equals recursion", c3_closed_equals_oracle),
        ("Veronese round trip", c4_veronese_round_trip),
        ("Hirzebruch round trip", c5_hirzebruch_round_trip),
        ("Galois and intrinsic coincidences", c6_galois_coincidences),
        ("base-case round trip", c7_base_case),
        ("Veronese b=3, k=4", c8_veronese_three_four),
    ];
    let mut led = Ledger::default();
    let mut failed = 0;
    let mut report = |i: usize, name: &str, outcome: Outcome| match outcome {
        Ok(detail) => println!("PASS  {i:>2}. {name}: {detail}"),
        Err(why) => {
            failed += 1;
            println!("FAIL  {i:>2}. {name}: {why}");
        }
    };
    for (i, (name, f)) in criteria.iter().enumerate() {
        report(i + 1, name, f(&mut led));
    }
    let (outcome, warnings) = c9_integrality(&mut led);
    report(9, "integrality", outcome);
    for w in &warnings {
        println!("WARN      {w}");
    }
    if warnings.is_empty() {
        println!("          noether mod 12 holds on all {} pairs", led.pairs.len());
    }
    report(10, "scanner determinism", c10_scanner_determinism(&mut led));

    println!("{} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
