//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! `cargo test -p starq-cli --test acceptance -- --nocapture` (the target has
//! no libtest harness, so output is always shown).

use std::process::Command;
use std::time::{Duration, Instant};

use starq::analysis::{RELATIVE_TOLERANCE, TAIL_TOLERANCE};
use starq::verify::{run_suite, Suite, SuiteReport};

const SEED: u64 = 7;

struct Criterion {
    id: u32,
    suite: Suite,
    what: &'static str,
    tolerance: &'static str,
    limit: Option<Duration>,
}

fn criteria() -> Vec<Criterion> {
    let c = |id, suite, what, tolerance, limit: Option<u64>| Criterion {
        id,
        suite,
        what,
        tolerance,
        limit: limit.map(Duration::from_secs),
    };
    vec![
        c(1, Suite::Associativity, "associativity, 200 triples, n <= 4, deg <= 4", "exact", Some(60)),
        c(2, Suite::Axioms, "C_0, C_1 antisymmetry, unit C_r, 100 cases", "exact", None),
        c(3, Suite::Oracle, "star vs naive_star, n = 3, 5 forms", "exact", Some(120)),
        c(4, Suite::Orderings, "std/Weyl examples, Weyl conjugation, representations", "exact", None),
        c(5, Suite::Adjoint, "adjoint(rho_std f) = rho_std(N^2 conj f), n+m <= 5", "exact", None),
        c(6, Suite::Equivalence, "exp(z Delta_S) equivalence, 50 symmetric S", "exact", None),
        c(7, Suite::Gutt, "Gutt associativity, KKS commutator, BCH property, BCH oracle", "exact", None),
        c(8, Suite::Seminorms, "p_R axioms, exponential norms, convergence verdicts", "rel 1e-12, tail 1e-10", None),
        c(9, Suite::Weyl, "Weyl relations, translations, inner automorphisms", "exact", Some(60)),
        c(10, Suite::Continuity, "p_R partial sums of e^v * e^w, R = 1/2, K = 40", "tail 1e-10", None),
    ]
}

fn summarize(r: &SuiteReport) -> String {
    let failing: Vec<String> = r
        .checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{} ({}/{} failed; {})", c.name, c.failures, c.cases, c.first_failure.as_deref().unwrap_or("no cases")))
        .collect();
    let cases: usize = r.checks.iter().map(|c| c.cases).sum();
    if failing.is_empty() {
        format!("{cases} cases")
    } else {
        failing.join("; ")
    }
}

fn starq(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_starq")).args(args).output().expect("spawn starq")
}

/// Round-trip suite, byte-identical reruns, and `verify all`.
fn cli_criterion() -> (bool, String) {
    let mut notes = Vec::new();
    let round = run_suite(Suite::Roundtrip, SEED);
    notes.push(format!("round-trip {}", summarize(&round)));
    let mut identical = true;
    for args in [
        vec!["verify", "associativity", "--seed", "7", "--json"],
        vec!["star", "p^3*q + i*h", "q^2 - p", "--json"],
        vec!["bch", "X + Y", "Y - Z", "--order", "5"],
        vec!["expcheck", "--v", "0.3,-1.2", "--alpha", "0.7", "--R", "0.5"],
    ] {
        let (a, b) = (starq(&args), starq(&args));
        if a.stdout != b.stdout || a.status.code() != b.status.code() || a.stdout.is_empty() {
            identical = false;
            notes.push(format!("rerun differs: {args:?}"));
        }
    }
    let all = starq(&["verify", "all", "--seed", "7"]);
    let all_ok = all.status.code() == Some(0);
    notes.push(format!("verify all exit {}", all.status.code().map_or("signal".into(), |c| c.to_string())));
    (round.passed && identical && all_ok, notes.join(", "))
}

fn main() {
    let mut failed = 0;
    let mark = |ok: bool| if ok { "PASS" } else { "FAIL" };
    println!("acceptance (seed {SEED}); rel tol {RELATIVE_TOLERANCE:e}, tail tol {TAIL_TOLERANCE:e}");
    for c in criteria() {
        let start = Instant::now();
        let report = run_suite(c.suite, SEED);
        let elapsed = start.elapsed();
        let in_time = c.limit.is_none_or(|l| elapsed < l);
        let ok = report.passed && in_time;
        let budget = match c.limit {
            Some(l) => format!("{:.1}s < {}s", elapsed.as_secs_f64(), l.as_secs()),
            None => format!("{:.1}s", elapsed.as_secs_f64()),
        };
        println!(
            "criterion {:>2} {} [{}] {}: {} [{}; {}]",
            c.id,
            mark(ok),
            c.suite.name(),
            c.what,
            summarize(&report),
            c.tolerance,
            budget
        );
        failed += usize::from(!ok);
    }
    let start = Instant::now();
    let (ok, notes) = cli_criterion();
    println!(
        "criterion 11 {} [cli] round-trip, deterministic reruns, verify all: {} [exact; {:.1}s]",
        mark(ok),
        notes,
        start.elapsed().as_secs_f64()
    );
    failed += usize::from(!ok);
    println!("{} of 11 criteria passed", 11 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
