//! Prepare all four variants of the five-qubit channel and show their
//! amplitude tables.
//!
//! The controller decides which of the qubits `a0`, `b1` drive a CNOT onto
//! his qubit `c`; the two wiring bits are the code he later announces. Every
//! variant is an equal superposition of four basis kets with amplitude +1/2,
//! and the four variants are pairwise distinct, which is what caps an
//! eavesdropper's guess at 1/4.
//!
//! Run: cargo run --example channel_preparation

use bqct::channel::{prepare_channel, reference_amplitudes, ChannelCode, CHANNEL_LABELS};

fn main() {
    println!(
        "register order: {:?}\n",
        CHANNEL_LABELS.map(|l| l.to_string())
    );

    for code in ChannelCode::all() {
        let sv = prepare_channel(code);
        println!("code {code}:");
        for (idx, amp) in sv.amplitudes().iter().enumerate() {
            if amp.norm() > 1e-12 {
                println!("  |{idx:05b}⟩  {:+.4}{:+.4}i", amp.re, amp.im);
            }
        }
        let mut max_dev = 0.0f64;
        for (bits, want) in reference_amplitudes(code) {
            let got = sv.amplitude_of(bits).unwrap();
            max_dev = max_dev.max((got - num_complex::Complex64::new(want, 0.0)).norm());
        }
        println!("  deviation from the reference table: {max_dev:.3e}\n");
    }

    let states: Vec<_> = ChannelCode::all()
        .iter()
        .map(|&c| prepare_channel(c))
        .collect();
    println!("pairwise fidelities (distinctness):");
    for (i, a) in states.iter().enumerate() {
        for (j, b) in states.iter().enumerate().skip(i + 1) {
            println!(
                "  {} vs {}: {:.4}",
                ChannelCode::all()[i],
                ChannelCode::all()[j],
                a.fidelity(b).unwrap()
            );
        }
    }
}
