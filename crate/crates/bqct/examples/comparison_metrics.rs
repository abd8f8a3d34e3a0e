//! Resource accounting, derived from a live run.
//!
//! The "Our method" row is computed, not transcribed: measurement counts come
//! from an actual transcript, the guessing probability from counting the
//! pairwise-distinct channel states the controller can prepare, and the
//! efficiency from the qubit counts as an exact rational. The prior-work rows
//! are literature constants shown for context.
//!
//! Run: cargo run --example comparison_metrics

use bqct::metrics::{comparison_row, distinct_channel_variants, literature_rows, render_table};
use bqct::protocol::{run_bqct, RunMode};
use bqct::qsim::QubitState;
use bqct::ChannelCode;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let alice_in = QubitState::random(&mut rng);
    let bob_in = QubitState::random(&mut rng);
    let live = run_bqct(
        ChannelCode::new(false, true),
        &alice_in,
        &bob_in,
        RunMode::Sample { seed: 6 },
    )
    .unwrap();

    println!(
        "distinct channel variants (computed by pairwise fidelity): {}",
        distinct_channel_variants()
    );

    let derived = comparison_row(&live.transcript).unwrap();
    let mut rows = literature_rows();
    rows.push(derived);
    println!();
    print!("{}", render_table(&rows));
    println!();
    println!("zero two-qubit measurements and the lowest guessing probability in its class");
}
