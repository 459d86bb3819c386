//! Recomputes the frozen Fox-Jacobian cross-check table from scratch.
//!
//! Six 7×7 Jacobian blocks are rebuilt by Fox calculus from their Wirtinger
//! relators, the 120 signed minors are expanded and compared entry by entry
//! against the frozen coefficient table, and the 6-term linear relation
//! between the columns is checked on all 20 rows.
//!
//! Run with: cargo run --example coefficient_table

use cpf::verify_table1;

fn main() {
    let report = verify_table1();
    let sections: &[(&str, &Vec<(String, bool)>)] = &[
        ("Jacobian rows", &report.block_rows),
        ("minor coefficients", &report.coefficients),
        ("vanishing combinations", &report.zero_rows),
    ];
    for (what, checks) in sections {
        let ok = checks.iter().filter(|(_, b)| *b).count();
        println!("{what}: {ok}/{} verified", checks.len());
        for (name, _) in checks.iter().filter(|(_, b)| !*b) {
            println!("  FAIL {name}");
        }
    }
    println!(
        "total: {}/{} checks passed",
        report.total() - report.failed(),
        report.total()
    );
    std::process::exit(if report.all_pass() { 0 } else { 1 });
}
