//! Resource accounting and the comparison table.
//!
//! Everything in the "our method" row is derived, never assumed: measurement
//! counts come from a live transcript, the eavesdropper guessing probability
//! from the number of pairwise-distinct channel states the controller can
//! actually prepare, and the efficiency from the qubit counts. Rows for prior
//! protocols are carried as literature constants for rendering only.
//!
//! Ratios are exact rationals; `2/5` and `1/4` compare by equality, not by
//! float tolerance.

use crate::channel::{prepare_channel, ChannelCode, CHANNEL_LABELS};
use crate::qsim::FIDELITY_TOLERANCE;
use crate::transcript::Transcript;
use num_rational::Ratio;
use serde::{Serialize, Serializer};
use std::fmt;

pub type Rational = Ratio<i64>;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum MetricsError {
    #[error("transcript is incomplete: the controller never measured")]
    IncompleteTranscript,
    #[error("a channel of zero qubits has no efficiency")]
    ZeroChannelQubits,
    #[error("at least one channel variant is required")]
    ZeroVariants,
}

pub type Result<T> = std::result::Result<T, MetricsError>;

fn serialize_ratio<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(r)
}

/// One row of the comparison table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComparisonRow {
    pub protocol_name: String,
    pub alice_qubits_sent: u32,
    pub bob_qubits_sent: u32,
    pub channel_qubits: u32,
    #[serde(serialize_with = "serialize_ratio")]
    pub efficiency: Rational,
    pub bsm_count: u32,
    pub sm_count: u32,
    #[serde(serialize_with = "serialize_ratio")]
    pub guess_probability: Rational,
}

impl ComparisonRow {
    fn channel_description(&self) -> String {
        let words = [
            "Zero", "One", "Two", "Three", "Four", "Five", "Six", "Seven", "Eight", "Nine", "Ten",
        ];
        match words.get(self.channel_qubits as usize) {
            Some(w) => format!("{w}-qubits"),
            None => format!("{}-qubits", self.channel_qubits),
        }
    }
}

/// Counts measurement events by arity: `(two-qubit, single-qubit)`.
///
/// The engine only ever performs single-qubit projective measurements, so the
/// two-qubit count of any honest transcript is zero; it is still counted
/// rather than assumed.
pub fn transcript_counts(t: &Transcript) -> Result<(u32, u32)> {
    if !t.is_complete() {
        return Err(MetricsError::IncompleteTranscript);
    }
    let sm = t.single_qubit_measurements() as u32;
    let bsm = (t.measurements().count() as u32) - sm;
    Ok((bsm, sm))
}

/// Sent qubits over channel qubits, as an exact rational.
pub fn efficiency(sent_qubits: u32, channel_qubits: u32) -> Result<Rational> {
    if channel_qubits == 0 {
        return Err(MetricsError::ZeroChannelQubits);
    }
    Ok(Rational::new(sent_qubits as i64, channel_qubits as i64))
}

/// Probability of an eavesdropper guessing the controller's wiring: uniform
/// over the distinct channel variants.
pub fn guess_probability(distinct_channel_variants: u32) -> Result<Rational> {
    if distinct_channel_variants == 0 {
        return Err(MetricsError::ZeroVariants);
    }
    Ok(Rational::new(1, distinct_channel_variants as i64))
}

/// Counts the pairwise-distinct states the controller can prepare, by
/// preparing all of them and comparing fidelities.
pub fn distinct_channel_variants() -> u32 {
    let states: Vec<_> = ChannelCode::all()
        .iter()
        .map(|&c| prepare_channel(c))
        .collect();
    let mut distinct = 0u32;
    for (i, s) in states.iter().enumerate() {
        let repeated = states[..i]
            .iter()
            .any(|earlier| earlier.fidelity(s).unwrap() > 1.0 - FIDELITY_TOLERANCE);
        if !repeated {
            distinct += 1;
        }
    }
    distinct
}

/// Derives the "our method" row from a live transcript.
pub fn comparison_row(t: &Transcript) -> Result<ComparisonRow> {
    let (bsm_count, sm_count) = transcript_counts(t)?;
    let alice_sent = 1u32;
    let bob_sent = 1u32;
    let channel_qubits = CHANNEL_LABELS.len() as u32;
    Ok(ComparisonRow {
        protocol_name: "Our method".to_string(),
        alice_qubits_sent: alice_sent,
        bob_qubits_sent: bob_sent,
        channel_qubits,
        efficiency: efficiency(alice_sent + bob_sent, channel_qubits)?,
        bsm_count,
        sm_count,
        guess_probability: guess_probability(distinct_channel_variants())?,
    })
}

/// Reference rows reported for the prior five- and six-qubit protocols.
/// Literature values, rendered for context; nothing is derived from them.
pub fn literature_rows() -> Vec<ComparisonRow> {
    let row = |name: &str, channel: u32, eff: (i64, i64), bsm: u32, sm: u32, guess: (i64, i64)| {
        ComparisonRow {
            protocol_name: name.to_string(),
            alice_qubits_sent: 1,
            bob_qubits_sent: 1,
            channel_qubits: channel,
            efficiency: Rational::new(eff.0, eff.1),
            bsm_count: bsm,
            sm_count: sm,
            guess_probability: Rational::new(guess.0, guess.1),
        }
    };
    vec![
        row("[12]", 6, (1, 3), 2, 2, (1, 4)),
        row("[13]", 6, (1, 3), 1, 4, (1, 2)),
        row("[17]", 5, (2, 5), 2, 1, (1, 2)),
    ]
}

/// Plain-text table, columns in the reference layout.
pub fn render_table(rows: &[ComparisonRow]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<12} {:<9} {:>12} {:>14} {:>15} {:>11} {:>5} {:>4} {:>6}\n",
        "Methods",
        "protocol",
        "Bob's qubits",
        "Alice's qubits",
        "quantum channel",
        "Efficiency",
        "BSMs",
        "SMs",
        "Prob."
    ));
    for r in rows {
        out.push_str(&format!(
            "{:<12} {:<9} {:>12} {:>14} {:>15} {:>11} {:>5} {:>4} {:>6}\n",
            r.protocol_name,
            "BCQT",
            r.bob_qubits_sent,
            r.alice_qubits_sent,
            r.channel_description(),
            r.efficiency.to_string(),
            r.bsm_count,
            r.sm_count,
            r.guess_probability.to_string(),
        ));
    }
    out
}

impl fmt::Display for ComparisonRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} {} {} {} {} {}",
            self.protocol_name,
            self.bob_qubits_sent,
            self.alice_qubits_sent,
            self.channel_description(),
            self.efficiency,
            self.bsm_count,
            self.sm_count,
            self.guess_probability,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocol::{run_bqct, run_bqct_withheld, RunMode};
    use crate::qsim::QubitState;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn live_transcript() -> Transcript {
        let mut rng = ChaCha8Rng::seed_from_u64(600);
        let a = QubitState::random(&mut rng);
        let b = QubitState::random(&mut rng);
        run_bqct(
            ChannelCode::new(false, true),
            &a,
            &b,
            RunMode::Sample { seed: 9 },
        )
        .unwrap()
        .transcript
    }

    #[test]
    fn base_transcript_counts() {
        assert_eq!(transcript_counts(&live_transcript()).unwrap(), (0, 5));
    }

    #[test]
    fn ghz_transcript_counts_are_unchanged() {
        use crate::ghz::{run_bqct_ghz, GhzState};
        let mut rng = ChaCha8Rng::seed_from_u64(601);
        let a = GhzState::random(3, &mut rng).unwrap();
        let b = GhzState::random(2, &mut rng).unwrap();
        let r = run_bqct_ghz(
            ChannelCode::new(false, true),
            &a,
            &b,
            RunMode::Sample { seed: 1 },
        )
        .unwrap();
        assert_eq!(transcript_counts(&r.transcript).unwrap(), (0, 5));
    }

    #[test]
    fn incomplete_transcripts_are_rejected() {
        assert_eq!(
            transcript_counts(&Transcript::new()).unwrap_err(),
            MetricsError::IncompleteTranscript
        );
        let mut rng = ChaCha8Rng::seed_from_u64(602);
        let a = QubitState::random(&mut rng);
        let b = QubitState::random(&mut rng);
        let withheld = run_bqct_withheld(
            ChannelCode::new(true, true),
            &a,
            &b,
            RunMode::Sample { seed: 2 },
        )
        .unwrap();
        assert_eq!(
            transcript_counts(&withheld.transcript).unwrap_err(),
            MetricsError::IncompleteTranscript
        );
    }

    #[test]
    fn efficiency_is_exact() {
        assert_eq!(efficiency(2, 5).unwrap(), Rational::new(2, 5));
        assert_eq!(efficiency(2, 6).unwrap(), Rational::new(1, 3));
        assert_eq!(efficiency(0, 5).unwrap(), Rational::new(0, 1));
        assert_eq!(
            efficiency(2, 0).unwrap_err(),
            MetricsError::ZeroChannelQubits
        );
    }

    #[test]
    fn guess_probability_is_exact() {
        assert_eq!(guess_probability(4).unwrap(), Rational::new(1, 4));
        assert_eq!(guess_probability(2).unwrap(), Rational::new(1, 2));
        assert_eq!(guess_probability(1).unwrap(), Rational::new(1, 1));
        assert_eq!(
            guess_probability(0).unwrap_err(),
            MetricsError::ZeroVariants
        );
    }

    #[test]
    fn four_distinct_variants_are_counted() {
        assert_eq!(distinct_channel_variants(), 4);
    }

    #[test]
    fn derived_row_matches_the_reference() {
        let row = comparison_row(&live_transcript()).unwrap();
        assert_eq!(row.protocol_name, "Our method");
        assert_eq!(
            (
                row.alice_qubits_sent,
                row.bob_qubits_sent,
                row.channel_qubits
            ),
            (1, 1, 5)
        );
        assert_eq!(row.efficiency, Rational::new(2, 5));
        assert_eq!((row.bsm_count, row.sm_count), (0, 5));
        assert_eq!(row.guess_probability, Rational::new(1, 4));
    }

    #[test]
    fn literature_row_17() {
        let rows = literature_rows();
        let r17 = rows.iter().find(|r| r.protocol_name == "[17]").unwrap();
        assert_eq!(
            (
                r17.alice_qubits_sent,
                r17.bob_qubits_sent,
                r17.channel_qubits
            ),
            (1, 1, 5)
        );
        assert_eq!(r17.efficiency, Rational::new(2, 5));
        assert_eq!((r17.bsm_count, r17.sm_count), (2, 1));
        assert_eq!(r17.guess_probability, Rational::new(1, 2));
    }

    #[test]
    fn rendered_row_layout() {
        let row = comparison_row(&live_transcript()).unwrap();
        assert_eq!(row.to_string(), "Our method 1 1 Five-qubits 2/5 0 5 1/4");
        let table = render_table(&[row]);
        assert!(table.contains("Five-qubits"));
        assert!(table.contains("2/5"));
    }
}
