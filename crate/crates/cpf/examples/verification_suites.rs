//! Runs a small slice of every seeded verification suite in-process.
//!
//! The same suites back `cpf verify --suite …`; each draws a reproducible
//! corpus from a seed and checks one family of properties: the skein
//! relators inserted into random contexts, Markov-move invariance, the
//! algebra identities, the frozen coefficient table, agreement with the
//! determinant oracle, and the knot-specific relations.
//!
//! Run with: cargo run --example verification_suites

use cpf::suites::{run_suite, SuiteConfig};

fn main() {
    let cfg = SuiteConfig { trials: 10, seed: 2026, max_strands: 4, max_length: 9 };
    let mut all_ok = true;
    for suite in ["identities", "table1", "axioms", "invariance", "oracle", "knots"] {
        let report = run_suite(suite, &cfg).expect("known suite name");
        println!(
            "{suite:12} {:3}/{:3} checks passed",
            report.passed(),
            report.total()
        );
        all_ok &= report.all_pass();
    }
    if all_ok {
        println!("all suites green (seed {}, {} trials each)", cfg.seed, cfg.trials);
    } else {
        println!("some checks FAILED — rerun `cpf verify` with the same seed for detail");
        std::process::exit(1);
    }
}
