//! Brute-force audit of the three correction tables.
//!
//! For each of the sixteen table entries, every candidate gate pair from the
//! entry's allowed set is substituted into an otherwise-correct run and the
//! worst-case fidelity over all governed branches is recorded. The table's
//! pair must reach fidelity 1 everywhere; every other pair must fail
//! somewhere. That makes each entry the *unique* fix for its branch, not just
//! a sufficient one.
//!
//! Run: cargo run --example correction_audit

use bqct::protocol::verify_correction_uniqueness;
use bqct::qsim::QubitState;
use num_complex::Complex64;

fn main() {
    // generic inputs: far from every Pauli eigenstate, so a wrong correction
    // always shows up in fidelity
    let alice = QubitState::new(Complex64::new(0.8, 0.0), Complex64::new(0.0, 0.6)).unwrap();
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let bob = QubitState::new(Complex64::new(0.6, 0.0), Complex64::new(0.8 * r, 0.8 * r)).unwrap();

    let checks = verify_correction_uniqueness(&alice, &bob).unwrap();
    println!(
        "{:<18} {:16} {:>6} {:>22} {:>18}",
        "stage", "key", "rule", "table min fidelity", "best alternative"
    );
    for c in &checks {
        println!(
            "{:<18} {:16} {:>6} {:>22.12} {:>18.12}   {}",
            format!("{:?}", c.stage),
            c.key,
            c.rule.to_string(),
            c.table_min_fidelity,
            c.best_alternative_fidelity,
            if c.unique { "unique" } else { "NOT UNIQUE" },
        );
    }
    let all = checks.iter().all(|c| c.unique);
    println!(
        "\n{} of {} entries are the unique fix",
        checks.iter().filter(|c| c.unique).count(),
        checks.len()
    );
    std::process::exit(if all { 0 } else { 1 });
}
