//! Acceptance criteria, one pass/fail line each.
//!
//! Runs every criterion in order, prints its verdict with the measured
//! runtime, and fails at the end if any criterion failed.

use std::f64::consts::PI;
use std::io::Write;
use std::time::{Duration, Instant};

use radius_bounds::harness::{run_suite, total_violations, BoundReport, RunConfig, Verdict};

struct Outcome {
    id: u32,
    title: &'static str,
    failures: Vec<String>,
    elapsed: Duration,
    limit: Option<Duration>,
}

fn say(line: &str) {
    // Straight to stderr so the lines survive output capture.
    let _ = writeln!(std::io::stderr(), "{line}");
}

fn of_kind<'a>(reports: &'a [BoundReport], suite: &str, kind: &str) -> Vec<&'a BoundReport> {
    let prefix = format!("{suite}/{kind}/");
    reports.iter().filter(|r| r.case_id.starts_with(&prefix)).collect()
}

fn entry_value(r: &BoundReport, name: &str, reference: &str) -> Option<f64> {
    r.bounds
        .iter()
        .find(|b| b.bound_name == name && b.reference == reference)
        .map(|b| b.bound_value)
}

/// Every listed check present in every report, none violated, and at least `min` reports.
fn require(failures: &mut Vec<String>, reports: &[&BoundReport], min: usize, checks: &[(&str, &str)], label: &str) {
    if reports.len() < min {
        failures.push(format!("{label}: {} trials, need {min}", reports.len()));
    }
    for (name, reference) in checks {
        let mut seen = 0;
        for r in reports {
            for b in r.bounds.iter().filter(|b| b.bound_name == *name && b.reference == *reference) {
                seen += 1;
                if b.verdict == Verdict::Violated {
                    failures.push(format!("{}: {name} vs {reference} violated, margin {:?}", r.case_id, b.margin));
                }
            }
        }
        if seen == 0 {
            failures.push(format!("{label}: no {name} vs {reference} checks ran"));
        }
    }
}

fn run(suite: &str) -> (Vec<BoundReport>, Duration, Vec<String>) {
    let start = Instant::now();
    match run_suite(suite, &RunConfig::default()) {
        Ok(r) => (r, start.elapsed(), Vec::new()),
        Err(e) => (Vec::new(), start.elapsed(), vec![format!("{suite} failed to run: {e}")]),
    }
}

fn criterion_1() -> Outcome {
    let (reports, elapsed, mut failures) = run("berezin");
    let ex = of_kind(&reports, "berezin", "hardy-example");
    let closed = (4.0 + 7f64.sqrt()) / 4.0;
    match ex.first() {
        None => failures.push("no Hardy example report".into()),
        Some(r) => {
            let check = |name: &str, reference: &str, want: f64, tol: f64, failures: &mut Vec<String>| match entry_value(r, name, reference)
            {
                Some(v) if (v - want).abs() <= tol => {}
                Some(v) => failures.push(format!("{name} = {v:.12}, want {want:.12} within {tol:e}")),
                None => failures.push(format!("{name} missing")),
            };
            check("COR1B_LIMIT", "(4+sqrt7)/4", closed, 1e-9, &mut failures);
            check("BAKHERAD_LIMIT", "2", 2.0, 0.0, &mut failures);
            check("NORM_BER_P_Z", "1/2", 0.5, 1e-3, &mut failures);
            check("NORM_BER_P_C", "1", 1.0, 1e-6, &mut failures);
            match entry_value(r, "BER_P_Z_P_C", "0") {
                Some(0.0) => {}
                other => failures.push(format!("ber(P_z P_C) = {other:?}, want exactly 0")),
            }
            if r.inputs.is_some() || r.violations() > 0 {
                failures.push(format!("Hardy example has {} violations", r.violations()));
            }
        }
    }
    if total_violations(&reports) > 0 {
        failures.push(format!("{} violations in the berezin suite", total_violations(&reports)));
    }
    Outcome {
        id: 1,
        title: "Hardy example reproduction at N = 200",
        failures,
        elapsed,
        limit: Some(Duration::from_secs(30)),
    }
}

fn criterion_2_and_7() -> (Outcome, Outcome) {
    let (reports, elapsed, errors) = run("oracle-selftest");
    let mut f2 = errors.clone();
    let shifts = of_kind(&reports, "oracle-selftest", "shift");
    require(&mut f2, &shifts, 19, &[("W(L_n)", "cos(pi/(n+1))")], "shift");
    for r in &shifts {
        let n = r
            .case_id
            .rsplit('/')
            .next()
            .and_then(|s| s.parse::<usize>().ok())
            .map(|k| k + 2)
            .unwrap_or(0);
        let exact = (PI / (n as f64 + 1.0)).cos();
        match entry_value(r, "W(L_n)", "cos(pi/(n+1))") {
            Some(v) if (v - exact).abs() <= 1e-8 => {}
            other => f2.push(format!("w(L_{n}) = {other:?}, want {exact}")),
        }
    }
    require(
        &mut f2,
        &of_kind(&reports, "oracle-selftest", "rank-one"),
        100,
        &[("W(row)", "row formula")],
        "rank-one",
    );
    require(
        &mut f2,
        &of_kind(&reports, "oracle-selftest", "nonneg"),
        500,
        &[("NUMRAD_NONNEG", "w(T)")],
        "nonneg",
    );

    let mut f7 = errors;
    require(
        &mut f7,
        &of_kind(&reports, "oracle-selftest", "buzano"),
        1000,
        &[("BUZANO", "|<x,z><z,y>|")],
        "buzano",
    );
    require(
        &mut f7,
        &of_kind(&reports, "oracle-selftest", "lemma4"),
        1000,
        &[("LEMMA4", "|<Ax,y>|+|<By,x>|")],
        "lemma4",
    );
    require(
        &mut f7,
        &of_kind(&reports, "oracle-selftest", "offdiag-equal"),
        200,
        &[("2W([[0,B],[B,0]])", "2w(B)")],
        "offdiag-equal",
    );
    (
        Outcome {
            id: 2,
            title: "Oracle self-test",
            failures: f2,
            elapsed,
            limit: Some(Duration::from_secs(20)),
        },
        Outcome {
            id: 7,
            title: "Lemma-level properties (1e5 Buzano and lemma samples)",
            failures: f7,
            elapsed,
            limit: None,
        },
    )
}

fn criterion_3() -> Outcome {
    let (reports, elapsed, mut failures) = run("numrad-chain");
    let blocks = of_kind(&reports, "numrad-chain", "block");
    require(
        &mut failures,
        &blocks,
        1000,
        &[("THM2", "w(T)"), ("AOK_B", "THM2"), ("HOU_DU", "AOK_B"), ("AOK_A", "AOK_B")],
        "numrad-chain",
    );
    if total_violations(&reports) > 0 {
        failures.push(format!("{} violations", total_violations(&reports)));
    }
    Outcome {
        id: 3,
        title: "Numerical-radius chain",
        failures,
        elapsed,
        limit: Some(Duration::from_secs(60)),
    }
}

fn criterion_4() -> Outcome {
    let (reports, elapsed, mut failures) = run("spectral");
    require(
        &mut failures,
        &of_kind(&reports, "spectral", "quadruple"),
        1000,
        &[("COR_S1", "r(A1B1+A2B2)"), ("AOK_STUD", "COR_S1"), ("KITTANEH_AMS", "AOK_STUD")],
        "quadruple",
    );
    require(
        &mut failures,
        &of_kind(&reports, "spectral", "square"),
        1000,
        &[
            ("COR_S2", "r(A+B)"),
            ("COR_S3(+)", "r(AB+BA)"),
            ("COR_S3(-)", "r(AB-BA)"),
            ("COR_S4_AB", "r(AB+BA)"),
            ("COR_S4_AB", "r(AB-BA)"),
            ("COR_S4_BA", "r(AB+BA)"),
            ("COR_S4_BA", "r(AB-BA)"),
            ("COR_S5", "r(AB)"),
        ],
        "square",
    );
    if total_violations(&reports) > 0 {
        failures.push(format!("{} violations", total_violations(&reports)));
    }
    Outcome {
        id: 4,
        title: "Spectral suite",
        failures,
        elapsed,
        limit: Some(Duration::from_secs(60)),
    }
}

/// Real root of `z³ + z + 1` by Cardano; the other two have modulus `1/sqrt|x|`.
fn cubic_roots_oracle() -> (f64, f64) {
    let d = (0.25f64 + 1.0 / 27.0).sqrt();
    let x = (-0.5 + d).cbrt() + (-0.5 - d).cbrt();
    (x, 1.0 / x.abs().sqrt())
}

fn criterion_5() -> Outcome {
    let (reports, elapsed, mut failures) = run("poly");
    require(
        &mut failures,
        &of_kind(&reports, "poly", "random"),
        1000,
        &[
            ("ESTPOLY", "max|root|"),
            ("ABD", "ESTPOLY"),
            ("ESTPOLY", "ABD"),
            ("COMPANION_COR1", "ESTPOLY"),
        ],
        "random",
    );
    let cubic = of_kind(&reports, "poly", "cubic");
    require(&mut failures, &cubic, 1, &[("ESTPOLY", "quoted"), ("MAX_ROOT", "quoted")], "cubic");
    let (x, modulus) = cubic_roots_oracle();
    if (x.powi(3) + x + 1.0).abs() > 1e-12 {
        failures.push(format!("Cardano root {x} is off"));
    }
    if let Some(r) = cubic.first() {
        let max_root = x.abs().max(modulus);
        if (r.oracle_value - max_root).abs() > 1e-10 {
            failures.push(format!("companion max root {} vs Cardano {max_root}", r.oracle_value));
        }
        if (max_root - 1.2106).abs() > 1e-3 {
            failures.push(format!("Cardano max root {max_root} not near 1.2106"));
        }
    }
    if total_violations(&reports) > 0 {
        failures.push(format!("{} violations", total_violations(&reports)));
    }
    Outcome {
        id: 5,
        title: "Polynomial suite",
        failures,
        elapsed,
        limit: Some(Duration::from_secs(20)),
    }
}

fn criterion_6() -> Outcome {
    let (reports, elapsed, mut failures) = run("kronecker");
    require(
        &mut failures,
        &of_kind(&reports, "kronecker", "pair"),
        500,
        &[("COR3", "w(A⊗B)"), ("KHARE", "COR3"), ("HOLBROOK", "COR3")],
        "kronecker",
    );
    if total_violations(&reports) > 0 {
        failures.push(format!("{} violations", total_violations(&reports)));
    }
    Outcome {
        id: 6,
        title: "Kronecker suite",
        failures,
        elapsed,
        limit: Some(Duration::from_secs(60)),
    }
}

#[test]
fn acceptance() {
    let (c2, c7) = criterion_2_and_7();
    let mut outcomes = vec![criterion_1(), c2, criterion_3(), criterion_4(), criterion_5(), criterion_6(), c7];
    outcomes.sort_by_key(|o| o.id);
    let mut failed = 0;
    say("");
    for o in &mut outcomes {
        if let Some(limit) = o.limit {
            if o.elapsed > limit {
                o.failures
                    .push(format!("runtime {:.1} s exceeds {} s", o.elapsed.as_secs_f64(), limit.as_secs()));
            }
        }
        let time = match o.limit {
            Some(l) => format!("{:.1} s, limit {} s", o.elapsed.as_secs_f64(), l.as_secs()),
            None => format!("{:.1} s", o.elapsed.as_secs_f64()),
        };
        let status = if o.failures.is_empty() { "PASS" } else { "FAIL" };
        say(&format!("acceptance criterion {}: {status}  {} ({time})", o.id, o.title));
        for f in o.failures.iter().take(10) {
            say(&format!("    {f}"));
        }
        failed += usize::from(!o.failures.is_empty());
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
