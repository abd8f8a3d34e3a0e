//! Born-rule statistics over ten thousand sampled runs.
//!
//! The equal-amplitude channel makes all 32 measurement branches equally
//! likely regardless of the inputs. This example samples 10,000 runs, prints
//! the branch histogram, and computes the chi-square statistic against the
//! uniform distribution (31 degrees of freedom; the 0.001-significance
//! critical value is 61.098).
//!
//! Run: cargo run --release --example sampling_statistics

use bqct::protocol::{run_bqct, RunMode};
use bqct::qsim::QubitState;
use bqct::transcript::Event;
use bqct::ChannelCode;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let code = ChannelCode::new(false, true);
    let mut rng = ChaCha8Rng::seed_from_u64(2718);
    let alice_in = QubitState::random(&mut rng);
    let bob_in = QubitState::random(&mut rng);

    let trials = 10_000;
    let mut counts = [0u32; 32];
    for _ in 0..trials {
        let r = run_bqct(
            code,
            &alice_in,
            &bob_in,
            RunMode::Sample { seed: rng.gen() },
        )
        .unwrap();
        let mut index = 0usize;
        for e in r.transcript.measurements() {
            if let Event::Measurement { value, .. } = e {
                index = (index << 1) | *value as usize;
            }
        }
        counts[index] += 1;
    }

    let expected = trials as f64 / 32.0;
    println!("branch counts over {trials} sampled runs (expected {expected:.1} each):");
    for (i, &c) in counts.iter().enumerate() {
        let bar = "#".repeat((c as usize) / 20);
        println!("  {i:2}: {c:4} {bar}");
    }

    let chi2: f64 = counts
        .iter()
        .map(|&c| {
            let d = c as f64 - expected;
            d * d / expected
        })
        .sum();
    println!("\nchi-square = {chi2:.3} (31 dof; 0.001 critical value 61.098)");
    println!(
        "{}",
        if chi2 < 61.098 {
            "consistent with uniform 1/32"
        } else {
            "NOT uniform"
        }
    );
}
