//! Acceptance suite: one test per criterion, each printing a pass line.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use bqct::channel::{prepare_channel, reference_amplitudes, ChannelCode};
use bqct::ghz::{run_bqct_ghz, GhzCode, GhzState};
use bqct::metrics::{comparison_row, Rational};
use bqct::protocol::{
    enumerate_branches, lookup_charlie_correction, lookup_x_correction, lookup_z_correction,
    run_bqct, run_bqct_withheld, verify_collapse_tables_seeded, verify_correction_uniqueness,
    CorrectionRule, RunMode,
};
use bqct::qsim::{Gate, QubitState};
use bqct::transcript::Event;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

const FIDELITY_BOUND: f64 = 1.0 - 1e-10;
const CHANNEL_TOLERANCE: f64 = 1e-12;
const COLLAPSE_TOLERANCE: f64 = 1e-10;
/// Upper 0.001 quantile of chi-square with 31 degrees of freedom.
const CHI2_CRITICAL_31_DOF: f64 = 61.0983;

fn pass(line: &str) {
    println!("criterion {line}: PASS");
}

/// Inputs far enough from every Pauli eigenstate that a wrong correction is
/// visible in fidelity.
fn generic_pair(rng: &mut ChaCha8Rng) -> (QubitState, QubitState) {
    loop {
        let a = QubitState::random(rng);
        let b = QubitState::random(rng);
        let spread = |q: &QubitState| 2.0 * q.c0.norm_sqr() * q.c1.norm_sqr();
        if spread(&a) > 2e-3 && spread(&b) > 2e-3 {
            return (a, b);
        }
    }
}

#[test]
fn criterion_1_protocol_correctness() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut executions = 0usize;
    let mut min_fidelity = 1.0f64;
    for _ in 0..100 {
        let alice = QubitState::random(&mut rng);
        let bob = QubitState::random(&mut rng);
        for code in ChannelCode::all() {
            let branches = enumerate_branches(code, &alice, &bob).unwrap();
            assert_eq!(branches.len(), 32);
            let total: f64 = branches.iter().map(|b| b.probability).sum();
            assert!((total - 1.0).abs() <= 1e-10);
            for b in &branches {
                executions += 1;
                min_fidelity = min_fidelity
                    .min(b.result.fidelity_alice)
                    .min(b.result.fidelity_bob);
            }
        }
    }
    assert_eq!(executions, 12_800);
    assert!(
        min_fidelity >= FIDELITY_BOUND,
        "worst recovered fidelity {min_fidelity}"
    );
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "took {elapsed:?}");
    pass(&format!(
        "1 (protocol correctness: 4 codes x 32 branches x 100 inputs, min fidelity {min_fidelity:.12}, {elapsed:.2?})"
    ));
}

#[test]
fn criterion_2_channel_oracle() {
    let mut worst = 0.0f64;
    for code in ChannelCode::all() {
        let sv = prepare_channel(code);
        let mut expected = vec![Complex64::new(0.0, 0.0); 32];
        for (bits, amp) in reference_amplitudes(code) {
            expected[usize::from_str_radix(bits, 2).unwrap()] = Complex64::new(amp, 0.0);
        }
        for (got, want) in sv.amplitudes().iter().zip(&expected) {
            worst = worst.max((got - want).norm());
        }
    }
    assert!(worst <= CHANNEL_TOLERANCE, "worst deviation {worst}");
    pass(&format!(
        "2 (channel oracle: four variants, max deviation {worst:.3e})"
    ));
}

#[test]
fn criterion_3_collapse_oracles() {
    let mut worst = 0.0f64;
    for seed in 0..10u64 {
        let report = verify_collapse_tables_seeded(seed);
        assert_eq!(report.rows.len(), 8);
        for row in &report.rows {
            assert!(
                row.pass && row.max_deviation <= COLLAPSE_TOLERANCE,
                "seed {seed}, {:?} {}: deviation {}",
                row.table,
                row.row,
                row.max_deviation
            );
            worst = worst.max(row.max_deviation);
        }
    }
    pass(&format!(
        "3 (collapse oracles: 8 rows x 10 seeds, max deviation {worst:.3e})"
    ));
}

#[test]
fn criterion_4_correction_oracles() {
    use Gate::{I, X, Z};
    let rule = |on_b0, on_a1| CorrectionRule { on_b0, on_a1 };

    // the sixteen entries, written out
    assert_eq!(lookup_x_correction(false, false), rule(I, I));
    assert_eq!(lookup_x_correction(false, true), rule(I, X));
    assert_eq!(lookup_x_correction(true, false), rule(X, I));
    assert_eq!(lookup_x_correction(true, true), rule(X, X));

    assert_eq!(lookup_z_correction(false, false), rule(I, I));
    assert_eq!(lookup_z_correction(false, true), rule(I, Z));
    assert_eq!(lookup_z_correction(true, false), rule(Z, I));
    assert_eq!(lookup_z_correction(true, true), rule(Z, Z));

    for code in ChannelCode::all() {
        assert_eq!(lookup_charlie_correction(code, false), rule(I, I));
    }
    assert_eq!(
        lookup_charlie_correction(ChannelCode::new(false, false), true),
        rule(I, I)
    );
    assert_eq!(
        lookup_charlie_correction(ChannelCode::new(false, true), true),
        rule(I, Z)
    );
    assert_eq!(
        lookup_charlie_correction(ChannelCode::new(true, false), true),
        rule(Z, I)
    );
    assert_eq!(
        lookup_charlie_correction(ChannelCode::new(true, true), true),
        rule(Z, Z)
    );

    // brute force: each entry is the unique pair in its gate set that keeps
    // every governed branch at fidelity 1
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (alice, bob) = generic_pair(&mut rng);
    let checks = verify_correction_uniqueness(&alice, &bob).unwrap();
    assert_eq!(checks.len(), 16);
    for c in &checks {
        assert!(
            c.table_min_fidelity >= FIDELITY_BOUND,
            "{:?} {}: table rule fidelity {}",
            c.stage,
            c.key,
            c.table_min_fidelity
        );
        assert!(
            c.unique,
            "{:?} {}: alternative reaches {}",
            c.stage, c.key, c.best_alternative_fidelity
        );
    }
    pass("4 (correction oracles: 16 entries match and each is the unique fix on its branch)");
}

#[test]
fn criterion_5_metrics_row() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let alice = QubitState::random(&mut rng);
    let bob = QubitState::random(&mut rng);
    let live = run_bqct(
        ChannelCode::new(false, true),
        &alice,
        &bob,
        RunMode::Sample { seed: 55 },
    )
    .unwrap();
    let row = comparison_row(&live.transcript).unwrap();
    assert_eq!(row.alice_qubits_sent, 1);
    assert_eq!(row.bob_qubits_sent, 1);
    assert_eq!(row.channel_qubits, 5);
    assert_eq!(row.efficiency, Rational::new(2, 5));
    assert_eq!(row.bsm_count, 0);
    assert_eq!(row.sm_count, 5);
    assert_eq!(row.guess_probability, Rational::new(1, 4));
    pass("5 (metrics row: derived (1, 1, 5, 2/5, 0, 5, 1/4) by exact rational equality)");
}

#[test]
fn criterion_6_ghz_extension() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut min_fidelity = 1.0f64;
    for n in 1..=6usize {
        for m in 1..=6usize {
            let alice = GhzState::random(n, &mut rng).unwrap();
            let bob = GhzState::random(m, &mut rng).unwrap();
            let r = run_bqct_ghz(
                ChannelCode::new(true, true),
                &alice,
                &bob,
                RunMode::Sample {
                    seed: (n * 16 + m) as u64,
                },
            )
            .unwrap();
            min_fidelity = min_fidelity.min(r.fidelity_alice).min(r.fidelity_bob);
        }
    }
    assert!(
        min_fidelity >= FIDELITY_BOUND,
        "worst GHZ fidelity {min_fidelity}"
    );

    for n in 1..=256usize {
        assert_eq!(GhzCode::encode_qubit_count(n).unwrap().qubit_count(), n);
    }
    pass(&format!(
        "6 (GHZ extension: n,m in 1..=6 all recover, min fidelity {min_fidelity:.12}; codes 1..=256 round-trip)"
    ));
}

#[test]
fn criterion_7_sampling_statistics() {
    let code = ChannelCode::new(false, true);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let alice = QubitState::random(&mut rng);
    let bob = QubitState::random(&mut rng);

    let histogram = |master_seed: u64| -> [u32; 32] {
        let mut seeds = ChaCha8Rng::seed_from_u64(master_seed);
        let mut counts = [0u32; 32];
        for _ in 0..10_000 {
            let r = run_bqct(code, &alice, &bob, RunMode::Sample { seed: seeds.gen() }).unwrap();
            let mut index = 0usize;
            for e in r.transcript.measurements() {
                if let Event::Measurement { value, .. } = e {
                    index = (index << 1) | *value as usize;
                }
            }
            counts[index] += 1;
        }
        counts
    };

    let counts = histogram(777);
    let expected = 10_000.0 / 32.0;
    let chi2: f64 = counts
        .iter()
        .map(|&c| {
            let d = c as f64 - expected;
            d * d / expected
        })
        .sum();
    assert!(
        chi2 < CHI2_CRITICAL_31_DOF,
        "chi-square {chi2} exceeds the 0.001 critical value"
    );

    // same master seed, same histogram, bit for bit
    assert_eq!(counts, histogram(777));
    pass(&format!(
        "7 (sampling statistics: 10000 runs, chi-square {chi2:.2} < {CHI2_CRITICAL_31_DOF}; deterministic)"
    ));
}

#[test]
fn criterion_8_controller_property() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for trial in 0..5 {
        let (alice, bob) = generic_pair(&mut rng);
        for code in ChannelCode::all() {
            let w = run_bqct_withheld(code, &alice, &bob, RunMode::Sample { seed: trial }).unwrap();
            if code == ChannelCode::new(false, false) {
                assert!(
                    w.purity_b0 >= FIDELITY_BOUND && w.purity_a1 >= FIDELITY_BOUND,
                    "code 00 grants no control: purities {} {}",
                    w.purity_b0,
                    w.purity_a1
                );
            } else {
                let min_purity = w.purity_b0.min(w.purity_a1);
                assert!(
                    min_purity <= 1.0 - 1e-3,
                    "code {code}: carriers disentangled early (purity {min_purity})"
                );
            }
        }
    }
    pass("8 (controller property: codes 01/10/11 leave a carrier entangled until the broadcast; code 00 does not)");
}
