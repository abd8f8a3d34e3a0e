//! What the controller's permission is worth, operationally.
//!
//! If Charlie never announces his wiring and never measures `c`, the users
//! are stuck after step 6. For wirings 01, 10 and 11 at least one carrier
//! qubit is still entangled with `c` (its reduced purity is strictly below
//! 1), so no local operation can finish the reconstruction. Wiring 00 leaves
//! `c` unentangled: both carriers are already pure and that variant grants
//! the controller no actual control.
//!
//! Run: cargo run --example controller_withholding

use bqct::protocol::{run_bqct_withheld, RunMode};
use bqct::qsim::QubitState;
use bqct::ChannelCode;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(321);
    let alice_in = QubitState::random(&mut rng);
    let bob_in = QubitState::random(&mut rng);

    println!(
        "{:<6} {:>12} {:>12}   controlled?",
        "code", "purity(b0)", "purity(a1)"
    );
    for code in ChannelCode::all() {
        let w = run_bqct_withheld(code, &alice_in, &bob_in, RunMode::Sample { seed: 5 }).unwrap();
        let controlled = w.purity_b0.min(w.purity_a1) < 1.0 - 1e-3;
        println!(
            "{:<6} {:>12.6} {:>12.6}   {}",
            code.to_string(),
            w.purity_b0,
            w.purity_a1,
            if controlled {
                "yes, a carrier is still tied to c"
            } else {
                "no, both carriers already pure"
            }
        );
    }
    println!("\npurity 1 means the qubit factored out; below 1 it is still entangled with c");
}
