//! Carrying n-qubit GHZ-class states through the one-qubit protocol.
//!
//! A GHZ-class state `δ₀|0…0⟩ + δ₁|1…1⟩` has only two amplitudes, so the
//! sender can fold it onto a single representative qubit with a CNOT chain,
//! teleport that qubit through the ordinary run, and the receiver fans the
//! arrived qubit back out onto fresh ancillas with the mirror CNOT chain. The
//! qubit counts travel as fixed-width classical codes so each receiver knows
//! how far to fan out.

use crate::channel::ChannelCode;
use crate::protocol::{run_bqct, ProtocolError, RunMode};
use crate::qsim::{QsimError, QubitLabel, QubitState, StateVector, FIDELITY_TOLERANCE};
use crate::transcript::{Event, Party, Payload, Transcript};
use num_complex::Complex64;
use serde::Serializer;
use std::fmt;
use std::str::FromStr;

/// Largest register the desk-scale simulator will build.
pub const MAX_GHZ_QUBITS: usize = 8;

#[derive(Debug, thiserror::Error)]
pub enum GhzError {
    #[error("qubit count {0} is outside 1..=256")]
    CountOutOfRange(usize),
    #[error("a {0}-qubit register exceeds the desk-scale bound of {MAX_GHZ_QUBITS}")]
    RegisterTooLarge(usize),
    #[error("state is not GHZ-class: amplitude {magnitude} at basis index {index}")]
    NotGhzClass { index: usize, magnitude: f64 },
    #[error("{labels} labels for a {qubits}-qubit state")]
    WrongLabelCount { labels: usize, qubits: usize },
    #[error(transparent)]
    Protocol(#[from] ProtocolError),
    #[error(transparent)]
    Qsim(#[from] QsimError),
}

pub type Result<T> = std::result::Result<T, GhzError>;

/// Fixed-width classical encoding of an entangled-state size: the code value
/// `k` announces a `(k+1)`-qubit state, so eight bits cover 1..=256 qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GhzCode {
    value: u8,
}

impl GhzCode {
    /// Width of the on-wire encoding, in bits.
    pub const WIDTH: usize = 8;

    pub fn encode_qubit_count(n: usize) -> Result<Self> {
        if !(1..=256).contains(&n) {
            return Err(GhzError::CountOutOfRange(n));
        }
        Ok(GhzCode {
            value: (n - 1) as u8,
        })
    }

    pub fn qubit_count(&self) -> usize {
        self.value as usize + 1
    }
}

impl fmt::Display for GhzCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:08b}", self.value)
    }
}

impl FromStr for GhzCode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if s.len() != Self::WIDTH || !s.chars().all(|c| c == '0' || c == '1') {
            return Err(format!("ghz code must be {} bits, got {s:?}", Self::WIDTH));
        }
        Ok(GhzCode {
            value: u8::from_str_radix(s, 2).unwrap(),
        })
    }
}

impl serde::Serialize for GhzCode {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// `δ₀|0…0⟩ + δ₁|1…1⟩` on `qubits` qubits, described by its two coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GhzState {
    pub coeffs: QubitState,
    pub qubits: usize,
}

impl GhzState {
    pub fn new(coeffs: QubitState, qubits: usize) -> Result<Self> {
        if qubits == 0 || qubits > 256 {
            return Err(GhzError::CountOutOfRange(qubits));
        }
        Ok(GhzState { coeffs, qubits })
    }

    pub fn random<R: rand::Rng>(qubits: usize, rng: &mut R) -> Result<Self> {
        GhzState::new(QubitState::random(rng), qubits)
    }

    /// Materializes the state on the given labels (one per qubit).
    pub fn to_state_vector(&self, labels: &[QubitLabel]) -> Result<StateVector> {
        if labels.len() != self.qubits {
            return Err(GhzError::WrongLabelCount {
                labels: labels.len(),
                qubits: self.qubits,
            });
        }
        if self.qubits > MAX_GHZ_QUBITS {
            return Err(GhzError::RegisterTooLarge(self.qubits));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << self.qubits];
        amps[0] = self.coeffs.c0;
        amps[(1 << self.qubits) - 1] = self.coeffs.c1;
        Ok(StateVector::from_amplitudes(labels, amps)?)
    }
}

/// Ancilla register `anc_0 … anc_{n-1}`.
pub fn anc_labels(n: usize) -> Vec<QubitLabel> {
    (0..n).map(|k| QubitLabel::Anc(k as u16)).collect()
}

/// Folds a GHZ-class register onto its first qubit.
///
/// Verifies the state really is GHZ-class (every amplitude off the all-zeros
/// and all-ones kets at most 1e-10), then applies CNOTs from the first label
/// onto each other label. Afterwards the first label carries `δ₀|0⟩ + δ₁|1⟩`
/// and every other label is `|0⟩`.
pub fn compress_ghz(sv: &StateVector, ghz_labels: &[QubitLabel]) -> Result<StateVector> {
    let aligned = sv.reordered(ghz_labels)?;
    let n = ghz_labels.len();
    let top = (1usize << n) - 1;
    for (index, amp) in aligned.amplitudes().iter().enumerate() {
        if index != 0 && index != top && amp.norm() > FIDELITY_TOLERANCE {
            return Err(GhzError::NotGhzClass {
                index,
                magnitude: amp.norm(),
            });
        }
    }
    let mut out = aligned;
    for k in 1..n {
        out = out.apply_cnot(ghz_labels[0], ghz_labels[k])?;
    }
    Ok(out)
}

/// Fans a received qubit out to an n-qubit GHZ-class state.
///
/// The received state lands on `anc_0`, `n-1` fresh ancillas start in `|0⟩`,
/// and a CNOT from `anc_0` onto each ancilla produces `δ₀|0…0⟩ + δ₁|1…1⟩`.
pub fn expand_ghz(received: &QubitState, n: usize) -> Result<StateVector> {
    if n == 0 || n > MAX_GHZ_QUBITS {
        return Err(GhzError::RegisterTooLarge(n));
    }
    let labels = anc_labels(n);
    let mut sv = received.to_state_vector(labels[0]);
    for ancilla in &labels[1..] {
        let zero = StateVector::new_basis_state(&[*ancilla], "0")?;
        sv = sv.tensor(&zero)?;
    }
    for ancilla in &labels[1..] {
        sv = sv.apply_cnot(labels[0], *ancilla)?;
    }
    Ok(sv)
}

/// Outcome of a GHZ-mode exchange. The recovered states are full registers on
/// `anc_*` labels; fidelities are against the counterpart's original state.
#[derive(Debug, Clone)]
pub struct GhzRunResult {
    pub alice_recovered: StateVector,
    pub bob_recovered: StateVector,
    pub fidelity_alice: f64,
    pub fidelity_bob: f64,
    pub transcript: Transcript,
}

/// Teleports an n-qubit and an m-qubit GHZ-class state between Alice and Bob
/// in one run: compress on each side, one ordinary run over the same
/// five-qubit channel, announce the sizes, fan out on each side.
pub fn run_bqct_ghz(
    code: ChannelCode,
    alice_ghz: &GhzState,
    bob_ghz: &GhzState,
    mode: RunMode,
) -> Result<GhzRunResult> {
    let (n, m) = (alice_ghz.qubits, bob_ghz.qubits);
    if n > MAX_GHZ_QUBITS {
        return Err(GhzError::RegisterTooLarge(n));
    }
    if m > MAX_GHZ_QUBITS {
        return Err(GhzError::RegisterTooLarge(m));
    }

    let mut transcript = Transcript::new();
    let mut compress_side = |party: Party, state: &GhzState| -> Result<QubitState> {
        let labels = anc_labels(state.qubits);
        let sv = state.to_state_vector(&labels)?;
        let compressed = compress_ghz(&sv, &labels)?;
        for k in 1..state.qubits {
            transcript.push(Event::Cnot {
                party,
                control: labels[0],
                target: labels[k],
            });
        }
        Ok(compressed.extract_qubit(labels[0])?)
    };
    let alice_rep = compress_side(Party::Alice, alice_ghz)?;
    let bob_rep = compress_side(Party::Bob, bob_ghz)?;

    let base = run_bqct(code, &alice_rep, &bob_rep, mode)?;
    transcript.events.extend(base.transcript.events);

    // each sender announces how many qubits the receiver must fan out to
    transcript.push(Event::Message {
        sender: Party::Alice,
        receiver: Party::Bob,
        payload: Payload::GhzCode(GhzCode::encode_qubit_count(n)?),
    });
    transcript.push(Event::Message {
        sender: Party::Bob,
        receiver: Party::Alice,
        payload: Payload::GhzCode(GhzCode::encode_qubit_count(m)?),
    });

    let mut expand_side =
        |party: Party, received: &QubitState, count: usize| -> Result<StateVector> {
            let expanded = expand_ghz(received, count)?;
            let labels = anc_labels(count);
            for k in 1..count {
                transcript.push(Event::Cnot {
                    party,
                    control: labels[0],
                    target: labels[k],
                });
            }
            Ok(expanded)
        };
    // Alice received Bob's coefficients and rebuilds his m-qubit state
    let alice_recovered = expand_side(Party::Alice, &base.alice_recovered, m)?;
    let bob_recovered = expand_side(Party::Bob, &base.bob_recovered, n)?;

    let fidelity_alice = alice_recovered.fidelity(&bob_ghz.to_state_vector(&anc_labels(m))?)?;
    let fidelity_bob = bob_recovered.fidelity(&alice_ghz.to_state_vector(&anc_labels(n))?)?;

    Ok(GhzRunResult {
        alice_recovered,
        bob_recovered,
        fidelity_alice,
        fidelity_bob,
        transcript,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocol::BranchSelector;
    use crate::qsim::Gate;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn code_round_trip_is_exact() {
        for n in 1..=256usize {
            let code = GhzCode::encode_qubit_count(n).unwrap();
            assert_eq!(code.qubit_count(), n);
            let reparsed: GhzCode = code.to_string().parse().unwrap();
            assert_eq!(reparsed, code);
        }
        assert!(GhzCode::encode_qubit_count(0).is_err());
        assert!(GhzCode::encode_qubit_count(257).is_err());
    }

    #[test]
    fn code_examples() {
        assert_eq!(
            GhzCode::encode_qubit_count(1).unwrap().to_string(),
            "00000000"
        );
        assert_eq!(
            GhzCode::encode_qubit_count(3).unwrap().to_string(),
            "00000010"
        );
        assert_eq!("00000001".parse::<GhzCode>().unwrap().qubit_count(), 2);
        assert_eq!("11111111".parse::<GhzCode>().unwrap().qubit_count(), 256);
    }

    /// Independent oracle: the same CNOT chain as explicit 2^n x 2^n matrices.
    #[allow(clippy::needless_range_loop)]
    fn cnot_chain_matrix(n: usize) -> Vec<Vec<f64>> {
        let dim = 1 << n;
        let mut m = vec![vec![0.0; dim]; dim];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        for k in 1..n {
            let tmask = 1usize << (n - 1 - k);
            let cmask = 1usize << (n - 1);
            let mut step = vec![vec![0.0; dim]; dim];
            for i in 0..dim {
                let j = if i & cmask != 0 { i ^ tmask } else { i };
                step[j][i] = 1.0;
            }
            // m = step * m
            let mut next = vec![vec![0.0; dim]; dim];
            for (r, next_row) in next.iter_mut().enumerate() {
                for c in 0..dim {
                    let mut acc = 0.0;
                    for t in 0..dim {
                        acc += step[r][t] * m[t][c];
                    }
                    next_row[c] = acc;
                }
            }
            m = next;
        }
        m
    }

    #[test]
    fn compression_matches_matrix_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for n in 1..=5usize {
            let ghz = GhzState::random(n, &mut rng).unwrap();
            let labels = anc_labels(n);
            let sv = ghz.to_state_vector(&labels).unwrap();
            let compressed = compress_ghz(&sv, &labels).unwrap();

            let m = cnot_chain_matrix(n);
            let dim = 1 << n;
            let mut expected = vec![Complex64::new(0.0, 0.0); dim];
            for (r, row) in m.iter().enumerate() {
                for (c, &entry) in row.iter().enumerate() {
                    expected[r] += entry * sv.amplitudes()[c];
                }
            }
            for (got, want) in compressed.amplitudes().iter().zip(&expected) {
                assert!((got - want).norm() < 1e-12, "n={n}");
            }
            // representative on the first label, ancillas at |0⟩
            let rep = compressed.extract_qubit(labels[0]).unwrap();
            assert!((rep.fidelity(&ghz.coeffs) - 1.0).abs() < FIDELITY_TOLERANCE);
        }
    }

    #[test]
    fn single_qubit_compression_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let ghz = GhzState::random(1, &mut rng).unwrap();
        let labels = anc_labels(1);
        let sv = ghz.to_state_vector(&labels).unwrap();
        let out = compress_ghz(&sv, &labels).unwrap();
        for (a, b) in sv.amplitudes().iter().zip(out.amplitudes()) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn non_ghz_input_is_rejected() {
        let labels = anc_labels(2);
        let sv = StateVector::new_basis_state(&labels, "00")
            .unwrap()
            .apply_single(Gate::H, labels[1])
            .unwrap(); // |0⟩⊗|+⟩ has weight on |01⟩
        match compress_ghz(&sv, &labels) {
            Err(GhzError::NotGhzClass { index: 1, .. }) => {}
            other => panic!("expected NotGhzClass, got {other:?}"),
        }
    }

    #[test]
    fn expansion_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let d = QubitState::random(&mut rng);
        let sv = expand_ghz(&d, 2).unwrap();
        assert!((sv.amplitude_of("00").unwrap() - d.c0).norm() < 1e-12);
        assert!((sv.amplitude_of("11").unwrap() - d.c1).norm() < 1e-12);
        assert!(sv.amplitude_of("01").unwrap().norm() < 1e-12);

        let zero = expand_ghz(&QubitState::zero(), 4).unwrap();
        assert!((zero.amplitude_of("0000").unwrap().norm() - 1.0).abs() < 1e-12);

        let one_qubit = expand_ghz(&d, 1).unwrap();
        assert_eq!(one_qubit.amplitudes()[0], d.c0);
        assert_eq!(one_qubit.amplitudes()[1], d.c1);
    }

    #[test]
    fn compression_round_trips_through_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for n in 1..=MAX_GHZ_QUBITS {
            let ghz = GhzState::random(n, &mut rng).unwrap();
            let labels = anc_labels(n);
            let sv = ghz.to_state_vector(&labels).unwrap();
            let rep = compress_ghz(&sv, &labels)
                .unwrap()
                .extract_qubit(labels[0])
                .unwrap();
            let back = expand_ghz(&rep, n).unwrap();
            assert!(
                (back.fidelity(&sv).unwrap() - 1.0).abs() < FIDELITY_TOLERANCE,
                "n={n}"
            );
        }
    }

    #[test]
    fn asymmetric_exchange_recovers_both_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(100);
        let alice = GhzState::random(3, &mut rng).unwrap();
        let bob = GhzState::random(2, &mut rng).unwrap();
        let r = run_bqct_ghz(
            ChannelCode::new(false, true),
            &alice,
            &bob,
            RunMode::Sample { seed: 17 },
        )
        .unwrap();
        assert!(r.fidelity_alice >= 1.0 - FIDELITY_TOLERANCE);
        assert!(r.fidelity_bob >= 1.0 - FIDELITY_TOLERANCE);
        assert_eq!(r.alice_recovered.num_qubits(), 2);
        assert_eq!(r.bob_recovered.num_qubits(), 3);
    }

    #[test]
    fn degenerate_exchange_reduces_to_the_base_run() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let alice = GhzState::random(1, &mut rng).unwrap();
        let bob = GhzState::random(1, &mut rng).unwrap();
        let code = ChannelCode::new(true, true);
        let sel = BranchSelector::from_index(21);
        let ghz = run_bqct_ghz(code, &alice, &bob, RunMode::Enumerate(sel)).unwrap();
        let base = run_bqct(code, &alice.coeffs, &bob.coeffs, RunMode::Enumerate(sel)).unwrap();
        assert!(
            (ghz.alice_recovered
                .extract_qubit(QubitLabel::Anc(0))
                .unwrap()
                .fidelity(&base.alice_recovered)
                - 1.0)
                .abs()
                < FIDELITY_TOLERANCE
        );
        // only the two size announcements distinguish the transcripts
        let ghz_msgs = ghz.transcript.messages().count();
        let base_msgs = base.transcript.messages().count();
        assert_eq!(ghz_msgs, base_msgs + 2);
    }

    #[test]
    fn transcript_carries_two_size_announcements_and_five_measurements() {
        let mut rng = ChaCha8Rng::seed_from_u64(50);
        let alice = GhzState::random(4, &mut rng).unwrap();
        let bob = GhzState::random(3, &mut rng).unwrap();
        let r = run_bqct_ghz(
            ChannelCode::new(true, false),
            &alice,
            &bob,
            RunMode::Sample { seed: 1 },
        )
        .unwrap();
        let ghz_codes = r
            .transcript
            .messages()
            .filter(|e| {
                matches!(
                    e,
                    Event::Message {
                        payload: Payload::GhzCode(_),
                        ..
                    }
                )
            })
            .count();
        assert_eq!(ghz_codes, 2);
        assert_eq!(r.transcript.single_qubit_measurements(), 5);
        // compression (3+2) and expansion (2+3) chains on top of the 2 protocol CNOTs
        assert_eq!(r.transcript.cnot_count(), 2 + 5 + 5);
    }

    #[test]
    fn oversized_registers_are_rejected() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let big = GhzState::random(9, &mut rng).unwrap();
        let small = GhzState::random(2, &mut rng).unwrap();
        assert!(matches!(
            run_bqct_ghz(
                ChannelCode::new(false, false),
                &big,
                &small,
                RunMode::Sample { seed: 0 }
            ),
            Err(GhzError::RegisterTooLarge(9))
        ));
    }
}
