//! Runs every acceptance criterion at its default sweep and prints one line
//! per criterion. Exits nonzero if any criterion fails.

use std::time::Duration;

use yangian::suite::{run, RunConfig, Suite};

struct Criterion {
    number: usize,
    suite: Suite,
    title: &'static str,
    /// Check ids that must appear in the report.
    required: &'static [&'static str],
    time_limit: Option<Duration>,
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        number: 1,
        suite: Suite::Relations,
        title: "parabolic relations, n in {2,3}, p in {3,5}, superscripts <= 4",
        required: &["pr1", "pr7", "pr14"],
        time_limit: Some(Duration::from_secs(300)),
    },
    Criterion {
        number: 2,
        suite: Suite::SeriesIdentities,
        title: "series identities, n <= 3, ell <= 2",
        required: &[
            "ee", "ee2", "ef", "ed1", "ed2", "ed1-prime", "ed2-prime", "eee", "ede", "ed2e", "ed2ed-prime", "coeff-1111", "coeff-2222",
            "coeff-3333", "coeff-4444", "coeff-5555", "de-shift", "ed-shift", "down", "up", "dd-induct",
        ],
        time_limit: None,
    },
    Criterion {
        number: 3,
        suite: Suite::Gauss,
        title: "Gauss decomposition, n <= 4, order 6",
        required: &["gauss-reconstruct", "gauss-quasidet", "gauss-split"],
        time_limit: None,
    },
    Criterion {
        number: 4,
        suite: Suite::HcCenter,
        title: "Harish-Chandra center factorization and centrality",
        required: &["hc-factorization", "hc-central"],
        time_limit: None,
    },
    Criterion {
        number: 5,
        suite: Suite::PCenter,
        title: "p-center at p = 3, unshifted and shifted",
        required: &["b-vanishing", "b-rank-one", "p-center-central", "p-center-gr", "bc-central", "bc-gr"],
        time_limit: None,
    },
    Criterion {
        number: 6,
        suite: Suite::Roots,
        title: "shifted root recursion: witness independence and leading terms",
        required: &["root-witness", "root-gr"],
        time_limit: None,
    },
    Criterion {
        number: 7,
        suite: Suite::Maps,
        title: "omega, tau, psi and permutation maps",
        required: &["omega-involution", "tau-involution", "psi-rank-one", "psi-block", "psi-p-center", "perm-p-center"],
        time_limit: None,
    },
    Criterion {
        number: 8,
        suite: Suite::Gr,
        title: "associativity fuzz and PBW dimension counts",
        required: &["associativity", "pbw-dimension"],
        time_limit: None,
    },
];

fn evaluate(c: &Criterion, workers: usize) -> Result<String, String> {
    let report = run(&RunConfig { suite: c.suite, workers, ..RunConfig::default() }).map_err(|e| e.to_string())?;
    let s = &report.summary;
    let mut problems = Vec::new();
    if s.fail > 0 || s.skipped > 0 {
        let first = report.checks.iter().find(|r| !r.passed()).map(|r| format!(" (first: {} {:?})", r.id, r.params));
        problems.push(format!("{} failed, {} skipped{}", s.fail, s.skipped, first.unwrap_or_default()));
    }
    for id in c.required {
        if !report.checks.iter().any(|r| r.id == *id) {
            problems.push(format!("no {id} checks"));
        }
    }
    if let Some(limit) = c.time_limit {
        if report.elapsed > limit {
            problems.push(format!("took {:.1?}, limit {:.0?}", report.elapsed, limit));
        }
    }
    let line = format!("{} checks in {:.1?}", s.pass, report.elapsed);
    if problems.is_empty() {
        Ok(line)
    } else {
        Err(format!("{line}; {}", problems.join("; ")))
    }
}

fn main() {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    let mut failed = 0;
    for c in CRITERIA {
        match evaluate(c, workers) {
            Ok(detail) => println!("PASS criterion {} [{}] {}: {detail}", c.number, c.suite.name(), c.title),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {} [{}] {}: {detail}", c.number, c.suite.name(), c.title);
            }
        }
    }
    println!("{} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
