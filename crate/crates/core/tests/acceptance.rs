//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on failure.

use ldescent_core::cli::verify::{run_suite, Suite, VerifyOptions, VerifyReport};
use std::time::Duration;

const SEED: u64 = 20240611;

struct Line {
    id: usize,
    name: &'static str,
    pass: bool,
    note: String,
}

fn run(suite: Suite, cases: usize) -> VerifyReport {
    run_suite(suite, &VerifyOptions::new(cases, SEED))
}

fn secs(r: &VerifyReport) -> Duration {
    Duration::from_secs_f64(r.wall_seconds)
}

fn summary(r: &VerifyReport) -> String {
    let first = r.violations.first().map(|v| format!("; first violation (case seed {}): {}", v.case_seed, v.detail));
    format!(
        "{} cases, {} checks, {} violations, {:.2}s{}",
        r.cases,
        r.checked,
        r.violations.len(),
        r.wall_seconds,
        first.unwrap_or_default()
    )
}

fn main() {
    let mut lines = Vec::new();

    let r = run(Suite::Hilbert, 0);
    lines.push(Line {
        id: 1,
        name: "hilbert symbols vs brute force",
        pass: r.ok() && r.checked == 64 + 16 * 3 + 4 && secs(&r) < Duration::from_secs(10),
        note: summary(&r),
    });

    let r = run(Suite::ComponentGroup, 500);
    lines.push(Line {
        id: 2,
        name: "component group sizing and membership",
        pass: r.ok() && r.cases >= 500 && secs(&r) < Duration::from_secs(30),
        note: summary(&r),
    });

    let r = run(Suite::Contragredient, 500);
    lines.push(Line {
        id: 3,
        name: "contragredient involution and eta compatibility",
        pass: r.ok() && r.cases >= 500,
        note: summary(&r),
    });

    let r = run(Suite::GgpUniqueness, 300);
    lines.push(Line {
        id: 4,
        name: "distinguished pair uniqueness",
        pass: r.ok() && r.checked >= 200,
        note: summary(&r),
    });

    let r = run(Suite::Tower, 1000);
    lines.push(Line {
        id: 5,
        name: "tower property with padded witnesses",
        pass: r.ok() && r.cases >= 1000 && secs(&r) < Duration::from_secs(300),
        note: format!("{}, {} padded witnesses re-found", summary(&r), r.stat("padded_witnesses")),
    });

    let r = run(Suite::Discreteness, 300);
    lines.push(Line {
        id: 6,
        name: "discreteness of the first descent",
        pass: r.ok() && r.stat("with_occurrence") >= 200,
        note: format!("{}, {} with a first occurrence", summary(&r), r.stat("with_occurrence")),
    });

    let r = run(Suite::Foi, 200);
    let foi_cases = r.stat("with_occurrence");
    lines.push(Line {
        id: 7,
        name: "spectral and arithmetic first occurrence agree",
        pass: r.ok() && foi_cases >= 100 && secs(&r) < Duration::from_secs(600),
        note: format!("{}, {} with a first occurrence", summary(&r), foi_cases),
    });

    let r = run(Suite::FirstDescent, 200);
    lines.push(Line {
        id: 8,
        name: "first-descent spectrum equals the first descent",
        pass: r.ok() && r.stat("with_occurrence") >= 100 && r.stat("with_occurrence") == foi_cases,
        note: format!("{}, {} members compared", summary(&r), r.stat("members")),
    });

    let r = run(Suite::GlPadding, 300);
    lines.push(Line {
        id: 9,
        name: "multiplicity invariant under GL padding",
        pass: r.ok() && r.checked >= 500,
        note: summary(&r),
    });

    let r = run(Suite::Spaces, 0);
    lines.push(Line {
        id: 10,
        name: "spaces, orbits and admissibility up to dim 12",
        pass: r.ok() && r.checked > 0,
        note: summary(&r),
    });

    let mut failed = 0;
    for l in &lines {
        println!("[{}] {:>2} {}: {}", if l.pass { "PASS" } else { "FAIL" }, l.id, l.name, l.note);
        failed += usize::from(!l.pass);
    }
    println!("acceptance: {} passed, {} failed", lines.len() - failed, failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
