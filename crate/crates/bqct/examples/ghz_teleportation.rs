//! Exchange multi-qubit GHZ-class states through the one-qubit protocol.
//!
//! Alice holds a 3-qubit `δ₀|000⟩ + δ₁|111⟩`, Bob a 2-qubit one. Each side
//! folds its state onto a single representative qubit with a CNOT chain,
//! the ordinary run teleports the two representatives, the sizes travel as
//! 8-bit classical codes, and each receiver fans back out onto ancillas.
//! The channel cost is unchanged: same five measurements, same five-qubit
//! channel.
//!
//! Run: cargo run --example ghz_teleportation

use bqct::ghz::{run_bqct_ghz, GhzState};
use bqct::protocol::RunMode;
use bqct::ChannelCode;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let alice = GhzState::random(3, &mut rng).unwrap();
    let bob = GhzState::random(2, &mut rng).unwrap();

    println!(
        "alice sends 3 qubits: ({:.4}{:+.4}i)|000⟩ + ({:.4}{:+.4}i)|111⟩",
        alice.coeffs.c0.re, alice.coeffs.c0.im, alice.coeffs.c1.re, alice.coeffs.c1.im
    );
    println!(
        "bob   sends 2 qubits: ({:.4}{:+.4}i)|00⟩ + ({:.4}{:+.4}i)|11⟩\n",
        bob.coeffs.c0.re, bob.coeffs.c0.im, bob.coeffs.c1.re, bob.coeffs.c1.im
    );

    let r = run_bqct_ghz(
        ChannelCode::new(false, true),
        &alice,
        &bob,
        RunMode::Sample { seed: 3 },
    )
    .unwrap();

    println!("{}", r.transcript);
    println!(
        "alice reconstructed bob's 2-qubit state, fidelity {:.12}",
        r.fidelity_alice
    );
    println!(
        "bob reconstructed alice's 3-qubit state, fidelity {:.12}",
        r.fidelity_bob
    );
    println!(
        "measurements used: {} (same as the one-qubit run)",
        r.transcript.single_qubit_measurements()
    );
}
