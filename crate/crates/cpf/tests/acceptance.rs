//! End-to-end acceptance gate: nine criteria, one test — and one printed
//! PASS/FAIL line — per criterion. Every criterion asserts both exact
//! correctness and a wall-clock budget; run with `--nocapture` to see the
//! lines for passing criteria too.

use std::time::{Duration, Instant};

use cpf::suites::{
    suite_axioms, suite_cases, suite_identities, suite_invariance, suite_knots, suite_merge,
    suite_oracle, suite_table1, SuiteConfig, SuiteReport,
};
use cpf::{conway_potential, oracle_invariant, ColoredBraid};

/// Times a suite, prints the single criterion line, and asserts all checks
/// pass within the budget.
fn criterion(name: &str, budget: Duration, report: SuiteReport, elapsed: Duration) {
    let ok = report.all_pass() && elapsed <= budget;
    println!(
        "{} {name}: {}/{} checks in {elapsed:.2?} (budget {budget:?})",
        if ok { "PASS" } else { "FAIL" },
        report.passed(),
        report.total(),
    );
    for c in report.checks.iter().filter(|c| !c.pass).take(10) {
        println!("       failed: {} — {}", c.name, c.detail.as_deref().unwrap_or(""));
    }
    assert!(report.all_pass(), "{name}: {} checks failed", report.total() - report.passed());
    assert!(elapsed <= budget, "{name}: {elapsed:?} exceeded the {budget:?} budget");
}

fn timed(f: impl FnOnce() -> SuiteReport) -> (SuiteReport, Duration) {
    let t = Instant::now();
    let r = f();
    (r, t.elapsed())
}

#[test]
fn criterion_1_anchor_links_evaluate_exactly() {
    let anchors: &[(&str, usize, &str, &[&str], &str)] = &[
        ("unknot", 1, "", &["a"], "(1)/(a - a^-1)"),
        ("two-unlink", 2, "", &["a", "b"], "0"),
        ("positive Hopf", 2, "1 1", &["a", "b"], "1"),
        ("negative Hopf", 2, "-1 -1", &["a", "b"], "-1"),
        ("(2,4) torus", 2, "1 1 1 1", &["a", "b"], "a*b + a^-1*b^-1"),
        ("trefoil", 2, "1 1 1", &["a", "a"], "(a^2 - 1 + a^-2)/(a - a^-1)"),
        ("figure-eight", 3, "1 -2 1 -2", &["a", "a", "a"], "(-a^2 + 3 - a^-2)/(a - a^-1)"),
        ("three-chain", 3, "1 1 2 2", &["a", "b", "c"], "b - b^-1"),
    ];
    let budget = Duration::from_secs(1);
    let mut ok = true;
    let mut worst = Duration::ZERO;
    for (name, n, word, colors, expected) in anchors {
        let t = Instant::now();
        let cb = ColoredBraid::parse(*n, word, colors).unwrap();
        let v = conway_potential(&cb).unwrap();
        let elapsed = t.elapsed();
        worst = worst.max(elapsed);
        if v.render() != *expected {
            println!("       {name}: got {}, expected {expected}", v.render());
            ok = false;
        }
        assert!(elapsed <= budget, "{name} took {elapsed:?}, budget {budget:?} each");
    }
    // The figure-eight value must also survive the independent determinant
    // route, not just the skein engine.
    let t = Instant::now();
    let fig8 = ColoredBraid::parse(3, "1 -2 1 -2", &["a", "a", "a"]).unwrap();
    let v = conway_potential(&fig8).unwrap();
    let oracle = oracle_invariant(&fig8).unwrap();
    let cross = oracle.matches(&v.value);
    worst = worst.max(t.elapsed());
    ok &= cross;
    println!(
        "{} criterion 1 (anchors): 8 values + figure-eight determinant cross-check, worst item {worst:.2?} (budget 1s each)",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "an anchor value or the determinant cross-check failed");
}

#[test]
fn criterion_2_coefficient_table_recomputes() {
    let (r, e) = timed(suite_table1);
    assert_eq!(r.total(), 164, "24 rows + 120 coefficients + 20 vanishing rows");
    criterion("criterion 2 (coefficient table)", Duration::from_secs(5), r, e);
}

#[test]
fn criterion_3_relator_identities_hold() {
    let (r, e) = timed(suite_identities);
    criterion("criterion 3 (relator identities)", Duration::from_secs(10), r, e);
}

#[test]
fn criterion_4_bridge_case_rewrites_hold() {
    let (r, e) = timed(suite_cases);
    criterion("criterion 4 (bridge-case rewrites)", Duration::from_secs(10), r, e);
}

#[test]
fn criterion_5_markov_invariance_on_200_links() {
    let cfg = SuiteConfig { trials: 200, seed: 42, max_strands: 4, max_length: 10 };
    let (r, e) = timed(|| suite_invariance(&cfg));
    criterion("criterion 5 (Markov invariance ×200)", Duration::from_secs(60), r, e);
}

#[test]
fn criterion_6_skein_relators_in_100_contexts_each() {
    let cfg = SuiteConfig { trials: 100, seed: 42, max_strands: 4, max_length: 10 };
    let (r, e) = timed(|| suite_axioms(&cfg));
    assert_eq!(r.total(), 500, "five relator families × 100 contexts");
    criterion("criterion 6 (skein relators ×100 each)", Duration::from_secs(120), r, e);
}

#[test]
fn criterion_7_determinant_oracle_agrees_on_the_corpus() {
    let cfg = SuiteConfig { trials: 200, seed: 42, max_strands: 4, max_length: 10 };
    let (r, e) = timed(|| suite_oracle(&cfg));
    criterion("criterion 7 (determinant oracle ×200)", Duration::from_secs(120), r, e);
}

#[test]
fn criterion_8_color_merging_commutes_on_50_links() {
    let cfg = SuiteConfig { trials: 50, seed: 42, max_strands: 4, max_length: 10 };
    let (r, e) = timed(|| suite_merge(&cfg));
    criterion("criterion 8 (color merging ×50)", Duration::from_secs(60), r, e);
}

#[test]
fn criterion_9_knot_relations_on_50_knots() {
    let cfg = SuiteConfig { trials: 50, seed: 42, max_strands: 4, max_length: 10 };
    let (r, e) = timed(|| suite_knots(&cfg));
    criterion("criterion 9 (knot relations ×50)", Duration::from_secs(60), r, e);
}
