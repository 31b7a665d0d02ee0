//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use ordcalc::harness::{self, enumerate, registry, run_suite, variant_violations, PropertyInfo, UniverseSpec};
use ordcalc::norms::{bracket_walk, walk_length};
use ordcalc::term::nat_to_term;
use ordcalc::{f, fundseq, fundseq_nat, g, hardy, parse, HardyBudget, OrdTerm, SystemTag};
use serde_json::Value;

const T: SystemTag = SystemTag::Stepwise;
const B: SystemTag = SystemTag::Simultaneous;

/// Wall-clock limits per criterion.
const VECTORS_LIMIT: Duration = Duration::from_secs(1);
const SUITE_LIMIT: Duration = Duration::from_secs(60);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn t(s: &str) -> OrdTerm {
    parse(s, T).unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn expect_eq(what: &str, got: &OrdTerm, want: &OrdTerm) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got}, want {want}"))
    }
}

fn iterate(fs: &[u32], times: u64) -> OrdTerm {
    let mut x = OrdTerm::Zero;
    for _ in 0..times {
        for &l in fs.iter().rev() {
            x = OrdTerm::theta(T, l, x);
        }
    }
    x
}

fn vectors() -> Outcome {
    let start = Instant::now();
    let omega1 = t("t1(0)");

    let phi = t("t0(t1(t0(0)))");
    for n in 0..=5 {
        let want = OrdTerm::theta(T, 0, omega1.times(n + 1));
        expect_eq(&format!("phi_omega(0)[{n}]"), &fundseq_nat(&phi, n).unwrap(), &want)?;
    }

    let gamma0 = t("t0(t1(t1(0)))");
    let gamma = t("t0(t1(t0(t1(t1(0)))))");
    for n in 0..=3 {
        let g0n = fundseq_nat(&gamma0, n).unwrap();
        expect_eq(&format!("Gamma_0[{n}]"), &g0n, &iterate(&[0, 1], n + 1))?;
        let want = OrdTerm::theta(T, 0, OrdTerm::theta(T, 1, g0n).add(&gamma0));
        expect_eq(&format!("theta_0(theta_1(Gamma_0))[{n}]"), &fundseq_nat(&gamma, n).unwrap(), &want)?;
    }

    let eps = OrdTerm::theta(T, 0, omega1.add(&gamma0));
    let mut want = OrdTerm::theta(T, 0, gamma0.clone());
    for n in 0..=3 {
        expect_eq(&format!("epsilon_(Gamma_0+1)[{n}]"), &fundseq_nat(&eps, n).unwrap(), &want)?;
        want = OrdTerm::theta(T, 0, want);
    }

    let eta = t("t0(t1(t2(t1(0))))");
    for n in 0..=3 {
        expect_eq(&format!("eta[{n}]"), &fundseq_nat(&eta, n).unwrap(), &iterate(&[0, 1, 2], n + 1))?;
    }
    let delta = t("t1(t2(t1(0)))");
    for z in [OrdTerm::Zero, nat_to_term(1, T), t("t0(t0(0))")] {
        let want = OrdTerm::theta(T, 1, OrdTerm::theta(T, 2, z.clone()));
        expect_eq(&format!("Delta[{z}]"), &fundseq(&delta, &z).unwrap().value, &want)?;
    }

    let a = t("t0(t1(t2(0)+t0(0)))");
    let fa = parse("b0(b2(0)+b1(b2(0)+b0(0)))", B).unwrap();
    expect_eq("f", &f(&a).unwrap(), &fa)?;
    expect_eq("g", &g(&fa).unwrap(), &a)?;

    let elapsed = start.elapsed();
    if elapsed > VECTORS_LIMIT {
        return Err(format!("took {elapsed:?}, limit {VECTORS_LIMIT:?}"));
    }
    Ok("all example vectors match".into())
}

fn is_iso(id: &str) -> bool {
    id.starts_with("bar_") || id.starts_with("iso_") || id == "commutation"
}

fn is_hardy(id: &str) -> bool {
    id.starts_with("hardy_") || id == "walk_equivalence"
}

fn pick(keep: impl Fn(&str) -> bool) -> Vec<PropertyInfo> {
    registry().into_iter().filter(|p| keep(p.id)).collect()
}

fn suite(spec: UniverseSpec, which: Vec<PropertyInfo>, limit: Option<Duration>) -> Outcome {
    let start = Instant::now();
    let reports = run_suite(&spec, &which, harness::DEFAULT_N_CAP);
    let elapsed = start.elapsed();
    let checked: u64 = reports.iter().map(|r| r.instances_checked).sum();
    let bad: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| format!("{} ({} failures, e.g. {:?})", r.property_id, r.failures, r.counterexamples.first()))
        .collect();
    if !bad.is_empty() {
        return Err(bad.join("; "));
    }
    if reports.iter().any(|r| r.instances_checked == 0) {
        return Err("a property checked no instances".into());
    }
    if let Some(limit) = limit {
        if elapsed > limit {
            return Err(format!("took {elapsed:.1?}, limit {limit:?}"));
        }
    }
    Ok(format!("{} properties, {checked} instances, 0 counterexamples", reports.len()))
}

fn main_suite() -> Outcome {
    let which = pick(|id| !is_iso(id) && !is_hardy(id) && id != "variant_bachmann_detected");
    suite(UniverseSpec::new(T, 8, 2), which, Some(SUITE_LIMIT))
}

fn iso_suite() -> Outcome {
    suite(UniverseSpec::new(T, 7, 2), pick(is_iso), Some(SUITE_LIMIT))
}

fn hardy_checks() -> Outcome {
    let budget = HardyBudget::default();
    let zero = OrdTerm::Zero;
    let one = nat_to_term(1, T);
    let omega = t("t0(t0(0))");
    let omega2 = t("t0(t0(0)+t0(0))");
    for n in 0..=10 {
        let (h0, h1) = (hardy(&zero, n, budget).unwrap(), hardy(&one, n, budget).unwrap());
        if h0 != n || h1 != n + 1 {
            return Err(format!("H_0({n}) = {h0}, H_1({n}) = {h1}"));
        }
    }
    for n in 0..=5 {
        let h = hardy(&omega, n, budget).unwrap();
        if h != 2 * n + 2 {
            return Err(format!("H_omega({n}) = {h}"));
        }
    }
    // least k with omega^2[2:k] = 0, found by walking k upward
    let h = hardy(&omega2, 2, budget).map_err(|e| e.to_string())?;
    let brute = (2..).find(|&k| bracket_walk(&omega2, 2, k).unwrap().is_zero()).unwrap();
    let walked = walk_length(&omega2, 2, budget).map_err(|e| e.to_string())?;
    if h != brute || h != walked {
        return Err(format!("H_(omega^2)(2) = {h}, least k = {brute}, walk = {walked}"));
    }
    let props = suite(UniverseSpec::new(T, 5, 1), pick(is_hardy), None)?;
    Ok(format!("spot values hold, H_(omega^2)(2) = {h}; {props}"))
}

fn negative_fixture() -> Outcome {
    let r = suite(UniverseSpec::new(T, 8, 2), pick(|id| id == "variant_bachmann_detected"), None)?;
    let universe = enumerate(&UniverseSpec::new(T, 8, 2));
    let witness = t(harness::VARIANT_WITNESS);
    let hits = variant_violations(&witness, &universe, harness::DEFAULT_N_CAP);
    let Some((n, beta)) = hits.first() else {
        return Err(format!("variant shows no violation at {witness}"));
    };
    Ok(format!("{r}; variant fails at {witness}[{n}] < {beta}"))
}

fn ordcalc(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ordcalc")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn json_keys(args: &[&str], keys: &[&str]) -> Result<(), String> {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, out) = ordcalc(&full);
    if code != 0 {
        return Err(format!("{args:?} exited {code}"));
    }
    let v: Value = serde_json::from_str(out.trim()).map_err(|e| format!("{args:?}: {e}"))?;
    let obj = v.as_object().ok_or_else(|| format!("{args:?}: not an object"))?;
    let mut got: Vec<&str> = obj.keys().map(String::as_str).collect();
    got.sort_unstable();
    let mut want = keys.to_vec();
    want.sort_unstable();
    if got != want {
        return Err(format!("{args:?}: keys {got:?}, want {want:?}"));
    }
    Ok(())
}

fn cli_contract() -> Outcome {
    let (code, out) = ordcalc(&["check", "--suite", "all"]);
    if code != 0 {
        return Err(format!("check --suite all exited {code}"));
    }
    let lines = out.lines().count();
    if lines != registry().len() {
        return Err(format!("{lines} report lines for {} properties", registry().len()));
    }
    for line in out.lines() {
        let v: Value = serde_json::from_str(line).map_err(|e| e.to_string())?;
        for key in ["property_id", "universe", "instances_checked", "failures", "counterexamples", "elapsed"] {
            if v.get(key).is_none() {
                return Err(format!("report without `{key}`: {line}"));
            }
        }
    }

    let mut printed = 0;
    for (sys, norm) in [(T, 8), (B, 8)] {
        for a in enumerate(&UniverseSpec::new(sys, norm, 2)) {
            for text in [a.to_string(), a.pretty()] {
                if parse(&text, sys).as_ref() != Ok(&a) {
                    return Err(format!("{text} does not read back"));
                }
            }
            printed += 1;
        }
    }

    let shapes: &[(&[&str], &[&str])] = &[
        (&["parse", "t0(t1(0))+1"], &["cnorm", "input", "pretty", "system", "term"]),
        (&["cmp", "t0(0)", "t1(0)"], &["a", "b", "result"]),
        (&["star", "t0(t1(0))", "1"], &["input", "k", "result"]),
        (&["fs", "t0(t1(0))", "2"], &["clause", "input", "result", "support", "zeta"]),
        (&["dom", "t1(0)"], &["input", "result"]),
        (&["chi", "0", "t1(0)"], &["i", "input", "result"]),
        (&["norm", "t0(0)"], &["input", "result"]),
        (&["gnorm", "t0(t0(0))"], &["input", "result"]),
        (&["hardy", "t0(t0(0))", "3"], &["input", "n", "result"]),
        (&["walk", "t0(t0(0))", "3", "2"], &["input", "k", "n", "result"]),
        (&["to-bar", "t0(t1(t2(0)+t0(0)))"], &["simultaneous", "stepwise"]),
        (&["--bar", "to-step", "b0(b2(0))"], &["simultaneous", "stepwise"]),
        (&["support", "t0(t1(0))"], &["input", "result"]),
        (&["fixp", "t1(0)", "t0(t1(0))", "0"], &["delta", "eta", "j", "result"]),
    ];
    for (args, keys) in shapes {
        json_keys(args, keys)?;
    }
    let (code, out) = ordcalc(&["--json", "parse", "t0("]);
    let v: Value = serde_json::from_str(out.trim()).map_err(|e| e.to_string())?;
    if code != 1 || v["exit_code"] != 1 || !v["error"].is_string() {
        return Err(format!("syntax error reported as {code}: {out}"));
    }
    Ok(format!("suite exit 0, {printed} terms read back, {} JSON shapes valid", shapes.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 6] = [
        ("example vectors", vectors),
        ("exhaustive suite on U(T,8,2)", main_suite),
        ("isomorphism suite on U(T,7,2)", iso_suite),
        ("Hardy values and laws", hardy_checks),
        ("negative fixture", negative_fixture),
        ("command line contract", cli_contract),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS [{}] {name} ({secs:.2}s): {msg}", k + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL [{}] {name} ({secs:.2}s): {msg}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
