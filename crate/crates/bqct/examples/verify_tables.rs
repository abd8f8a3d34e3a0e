//! Check the hard-coded reference tables against live simulation.
//!
//! Two oracles run here: the four channel variants against their published
//! amplitude table, and the eight collapse rows (four Z-measurement branches,
//! four X-measurement branches) against the states the simulator actually
//! produces, compared amplitude by amplitude after phase normalization.
//!
//! Run: cargo run --example verify_tables

use bqct::channel::{prepare_channel, reference_amplitudes, ChannelCode};
use bqct::protocol::verify_collapse_tables_seeded;
use num_complex::Complex64;

fn main() {
    let mut all_pass = true;

    println!("channel amplitudes:");
    for code in ChannelCode::all() {
        let sv = prepare_channel(code);
        let mut max_dev = 0.0f64;
        for (bits, amp) in reference_amplitudes(code) {
            let got = sv.amplitude_of(bits).unwrap();
            max_dev = max_dev.max((got - Complex64::new(amp, 0.0)).norm());
        }
        let pass = max_dev <= 1e-12;
        all_pass &= pass;
        println!(
            "  code {code}: deviation {max_dev:.3e}  {}",
            if pass { "PASS" } else { "FAIL" }
        );
    }

    println!("\ncollapse rows (10 random input pairs):");
    for seed in 0..10 {
        let report = verify_collapse_tables_seeded(seed);
        for row in &report.rows {
            all_pass &= row.pass;
            if seed == 0 {
                println!(
                    "  {:?} {:10} p={:.4}  deviation {:.3e}  {}",
                    row.table,
                    row.row,
                    row.probability,
                    row.max_deviation,
                    if row.pass { "PASS" } else { "FAIL" }
                );
            }
        }
    }
    println!("  ... (seeds 1..9 identical in structure)");

    println!(
        "\n{}",
        if all_pass {
            "all tables PASS"
        } else {
            "FAILURES above"
        }
    );
    std::process::exit(if all_pass { 0 } else { 1 });
}
