//! One pass/fail line per acceptance criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use serde_json::Value;

use qkl::chars::identities::kw_vs_irreducible;
use qkl::chars::{find_kostant_certificate, verify_kw_identity};
use qkl::verify::{example_weight, run_suite, Suite, SuiteReport, VerifyConfig};

struct Line {
    id: u32,
    what: &'static str,
    pass: bool,
    detail: String,
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn suite_line(id: u32, what: &'static str, suite: Suite, cfg: &VerifyConfig, limit: Duration) -> (Line, SuiteReport) {
    let (report, took) = timed(|| run_suite(suite, cfg));
    let pass = report.pass() && !report.cases.is_empty() && took < limit;
    let detail = format!(
        "{} cases, {} failed, {:.2?} (limit {:?})",
        report.cases.len(),
        report.failed(),
        took,
        limit
    );
    (
        Line {
            id,
            what,
            pass,
            detail,
        },
        report,
    )
}

fn example_kw() -> Line {
    let lam = example_weight();
    let (pass, detail) = match find_kostant_certificate(&lam, 64) {
        Ok(Some(cert)) => {
            let identity = verify_kw_identity(&lam, &cert, 4).map(|r| r.pass).unwrap_or(false);
            let character = kw_vs_irreducible(&lam, &cert, 4).map(|r| r.pass).unwrap_or(false);
            let sharp: u64 = (1..=cert.roots.len() as u64).product();
            let prefactor = (1u64 << lam.n().div_ceil(2)) / sharp;
            (
                identity && character && prefactor == 2,
                format!("{lam}: certificate {}, prefactor {prefactor}", cert.borel),
            )
        }
        Ok(None) => (false, format!("{lam}: no certificate")),
        Err(e) => (false, e.to_string()),
    };
    Line {
        id: 8,
        what: "worked q(4) example",
        pass,
        detail,
    }
}

fn collect_invariants(report: &SuiteReport, out: &mut Vec<Value>) {
    for case in &report.cases {
        match &case["invariants"] {
            Value::Array(items) => out.extend(items.iter().cloned()),
            Value::Object(_) => out.push(case["invariants"].clone()),
            _ => {}
        }
    }
}

fn main() -> ExitCode {
    let cfg = VerifyConfig::default();
    let sec = Duration::from_secs;
    let mut lines = Vec::new();
    let mut reports = Vec::new();
    let plan: [(u32, &str, Suite, Duration); 10] = [
        (1, "Hecke relations on random tensors", Suite::Hecke, sec(10)),
        (2, "canonical basis procedure", Suite::Procedure, sec(60)),
        (3, "raising lemma, both branches", Suite::Lemma25, sec(60)),
        (4, "gl(1|1) closed form", Suite::ClosedForm, sec(5)),
        (5, "u(1) and l(1) are inverse", Suite::Inversion, sec(60)),
        (6, "shift invariance", Suite::Shift, sec(60)),
        (7, "typical weights: K = L = U", Suite::Typical, sec(60)),
        (8, "Kac-Wakimoto identity and formula", Suite::Kw, sec(120)),
        (9, "Sergeev-Pragacz", Suite::Sp, sec(120)),
        (10, "translation functors", Suite::Translation, sec(60)),
    ];
    for (id, what, suite, limit) in plan {
        let (line, report) = suite_line(id, what, suite, &cfg, limit);
        lines.push(line);
        if id == 8 {
            lines.push(example_kw());
        }
        reports.push((suite, report));
    }

    let mut inv = Vec::new();
    for (suite, report) in &reports {
        if matches!(suite, Suite::Typical | Suite::Kw | Suite::Sp) {
            collect_invariants(report, &mut inv);
        }
    }
    let held = inv
        .iter()
        .filter(|v| v.as_object().is_some_and(|o| o.values().all(|x| x == true)))
        .count();
    lines.push(Line {
        id: 11,
        what: "positivity and block symmetry of emitted characters",
        pass: !inv.is_empty() && held == inv.len(),
        detail: format!("{held} of {} characters", inv.len()),
    });

    let mut ok = true;
    for l in &lines {
        ok &= l.pass;
        println!(
            "criterion {:>2} {}: {} ({})",
            l.id,
            if l.pass { "PASS" } else { "FAIL" },
            l.what,
            l.detail
        );
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
