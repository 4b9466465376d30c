//! End-to-end acceptance run: one PASS or FAIL line per criterion.

use std::sync::Arc;
use std::time::{Duration, Instant};

use ncgalois::presentations::{parse_document, parse_presentation, print_presentation};
use ncgalois::suites::{run_suite, Backend, SuiteConfig};
use ncgalois::*;

const BUDGET: Duration = Duration::from_secs(300);

struct Gate {
    failed: Vec<usize>,
}

impl Gate {
    fn record(&mut self, n: usize, title: &str, result: std::result::Result<(), String>) {
        match result {
            Ok(()) => println!("PASS criterion {n:>2}: {title}"),
            Err(why) => {
                println!("FAIL criterion {n:>2}: {title}: {why}");
                self.failed.push(n);
            }
        }
    }
}

/// Every record whose id starts with one of `prefixes` has an ok status, and
/// at least one record matched.
fn records_ok(report: &SuiteReport, prefixes: &[&str]) -> std::result::Result<(), String> {
    let hits: Vec<&CheckRecord> =
        report.checks.iter().filter(|c| prefixes.iter().any(|p| c.id.starts_with(p))).collect();
    if hits.is_empty() {
        return Err(format!("no checks matched {prefixes:?}"));
    }
    match hits.iter().find(|c| !c.status.ok()) {
        Some(c) => Err(format!("{} {}: {}", c.id, c.status.as_str(), c.witness.clone().unwrap_or_default())),
        None => Ok(()),
    }
}

fn all(results: impl IntoIterator<Item = std::result::Result<(), String>>) -> std::result::Result<(), String> {
    results.into_iter().collect::<std::result::Result<Vec<_>, _>>().map(|_| ())
}

/// The defining equations, written out independently of the registry text.
fn equations_vanish(cat: &Catalog<Scalar>) -> std::result::Result<(), String> {
    let eqs: &[(&str, &str)] = &[
        ("quantum_plane", "x*y - p*y*x"),
        ("gl2", "a*b - q*b*a"),
        ("gl2", "(a*d - q*b*c)*Dinv - 1"),
        ("gl2", "Dinv*(a*d - q*b*c) - 1"),
        ("gl2", "a*Dinv - Dinv*a"),
        ("gl2", "d*Dinv - Dinv*d"),
        ("cotangent_calculus", "x*xi - p*q*xi*x"),
        ("cotangent_calculus", "y*eta - p*q*eta*y"),
        ("frame_bundle", "x*a - p*q*a*x"),
        ("frame_bundle", "x*c - (p*q - 1)*a*y - p*c*x"),
        ("frame_bundle", "y*Dinv - p^-1*q^-2*Dinv*y"),
    ];
    for (name, text) in eqs {
        let a = cat.algebra(name).map_err(|e| e.to_string())?;
        let f = a.parse(text).map_err(|e| e.to_string())?;
        if !f.is_zero() {
            return Err(format!("{text} reduces to {} in {name}", a.fmt(&f)));
        }
    }
    Ok(())
}

fn erratum_observed(report: &SuiteReport) -> std::result::Result<(), String> {
    records_ok(report, &["erratum."])?;
    let broken: Vec<&CheckRecord> = report.checks.iter().filter(|c| c.id.starts_with("erratum.") && c.id != "erratum.control").collect();
    let observed = |id: &str| broken.iter().any(|c| c.id == id && c.status == Status::ExpectedFailureObserved);
    if !(observed("erratum.confluence") || observed("erratum.action")) {
        return Err("neither confluence nor the action axioms failed for the swapped variant".into());
    }
    if !observed("erratum.completion") {
        return Err("completion reported no collapse".into());
    }
    Ok(())
}

fn dsl_round_trip() -> std::result::Result<(), String> {
    for reg in [Registry::standard(), Registry::swapped()] {
        for name in reg.algebra_names() {
            let p = reg.presentation(name).map_err(|e| e.to_string())?;
            let back = parse_presentation(&print_presentation(&p)).map_err(|e| format!("{name}: {e}"))?;
            if back != *p {
                return Err(format!("{name} changed under print then parse"));
            }
        }
    }
    // Malformed inputs, each with the position of the offending token.
    let cases: &[(&str, &str)] = &[
        ("algebra bad {\n    generators: x, y;\n    relations: x*z = y;\n}", "z"),
        ("algebra bad {\n    generators: x, y;\n    relations: x*y = = y;\n}", "= y"),
        ("algebra bad {\n    generators: x, y\n    relations: x*y = y;\n}", "relations"),
        ("algebra bad {\n    generators: x, y;\n    relations: x*y = (y;\n}", ";\n}"),
    ];
    let reg = Registry::standard();
    for (text, token) in cases {
        let offset = text.rfind(token).unwrap();
        let line = text[..offset].matches('\n').count() + 1;
        let column = offset - text[..offset].rfind('\n').map_or(0, |i| i + 1) + 1;
        match parse_document(text, &|n| reg.lookup(n)) {
            Ok(_) => return Err(format!("accepted malformed input {text:?}")),
            Err(e) => match e.location() {
                Some(loc) if loc.line == line && loc.column == column => {}
                other => return Err(format!("{e}: expected {line}:{column}, got {other:?}")),
            },
        }
    }
    Ok(())
}

fn main() {
    let start = Instant::now();
    let mut gate = Gate { failed: Vec::new() };
    let reg = Arc::new(Registry::standard());
    let cat = Catalog::<Scalar>::new(reg.clone(), Arc::new(Symbolic));
    let cfg = SuiteConfig { degree: 3, seed: 0, backend: Backend::Symbolic, timings: false };
    let report = run_suite("all", &cfg, reg.clone()).expect("suite runs");

    gate.record(1, "defining relations vanish", all([records_ok(&report, &["relations."]), equations_vanish(&cat)]));
    gate.record(2, "local confluence to degree 6", records_ok(&report, &["confluence."]));
    gate.record(3, "Hopf axioms and re-derived inverse commutation", records_ok(&report, &["hopf."]));
    gate.record(4, "action axioms and smash product", records_ok(&report, &["action.", "smash."]));
    gate.record(5, "cleft Hopf-Galois extension", records_ok(&report, &["galois."]));
    gate.record(6, "cotangent realization", records_ok(&report, &["cotangent.covariance", "cotangent.iso", "cotangent.free"]));
    gate.record(7, "tangent realization", records_ok(&report, &["tangent."]));
    gate.record(8, "duality", records_ok(&report, &["duality."]));
    gate.record(9, "swapped parameters collapse", erratum_observed(&report));
    gate.record(10, "Leibniz rule", records_ok(&report, &["cotangent.leibniz"]));

    let numeric = (1..=3u64).map(|seed| {
        let cfg = SuiteConfig { seed, backend: Backend::Numeric, ..cfg.clone() };
        let r = run_suite("all", &cfg, reg.clone()).map_err(|e| e.to_string())?;
        let ids: Vec<&str> = report.checks.iter().map(|c| c.id.as_str()).collect();
        let nids: Vec<&str> = r.checks.iter().map(|c| c.id.as_str()).collect();
        if ids != nids {
            return Err(format!("seed {seed}: different check set"));
        }
        records_ok(&r, &[""]).map_err(|e| format!("seed {seed}: {e}"))?;
        erratum_observed(&r).map_err(|e| format!("seed {seed}: {e}"))
    });
    gate.record(11, "numeric backend agrees at three points", all(numeric));
    gate.record(12, "presentation language round trip and diagnostics", dsl_round_trip());

    let elapsed = start.elapsed();
    println!("acceptance run took {:.1} s", elapsed.as_secs_f64());
    if elapsed > BUDGET {
        println!("FAIL time budget: {:.1} s exceeds {} s", elapsed.as_secs_f64(), BUDGET.as_secs());
        gate.failed.push(0);
    }
    if !gate.failed.is_empty() {
        std::process::exit(1);
    }
}
