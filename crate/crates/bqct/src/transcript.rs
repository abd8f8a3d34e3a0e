//! Ordered log of everything a protocol run does.
//!
//! A [`Transcript`] records gates, projective measurements, classical
//! messages, and correction applications as one interleaved event list, in
//! execution order. The interleaving is what lets tests assert message
//! discipline (no correction before the classical bit it depends on has been
//! sent) and what the metrics module counts resources from.
//!
//! Each event serializes to one JSON object per line via
//! [`Transcript::to_jsonl`]; the `index` field is the event's position and the
//! `kind` field selects the record schema. Field names are part of the crate's
//! public output contract and are documented in the README.

use crate::channel::ChannelCode;
use crate::ghz::GhzCode;
use crate::protocol::CorrectionRule;
use crate::qsim::{Basis, Gate, QubitLabel};
use serde::Serialize;
use std::fmt;

/// The three participants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Party {
    Alice,
    Bob,
    Charlie,
}

impl fmt::Display for Party {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Party::Alice => write!(f, "alice"),
            Party::Bob => write!(f, "bob"),
            Party::Charlie => write!(f, "charlie"),
        }
    }
}

/// Content of one classical message.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "type", content = "value", rename_all = "snake_case")]
pub enum Payload {
    /// A Z-basis measurement result (one bit).
    ZOutcome(u8),
    /// An X-basis measurement result (one bit; 0 = `+`, 1 = `−`).
    XOutcome(u8),
    /// The controller's two wiring bits.
    ChannelCode(ChannelCode),
    /// An announced entangled-state size (eight bits).
    GhzCode(GhzCode),
}

impl Payload {
    /// Number of classical bits this payload carries.
    pub fn bits(&self) -> usize {
        match self {
            Payload::ZOutcome(_) | Payload::XOutcome(_) => 1,
            Payload::ChannelCode(_) => 2,
            Payload::GhzCode(_) => GhzCode::WIDTH,
        }
    }
}

impl fmt::Display for Payload {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Payload::ZOutcome(b) => write!(f, "z={b}"),
            Payload::XOutcome(b) => write!(f, "x={}", if *b == 0 { "+" } else { "-" }),
            Payload::ChannelCode(c) => write!(f, "code={c}"),
            Payload::GhzCode(g) => write!(f, "ghz={g}"),
        }
    }
}

/// One step of a run, in execution order.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Event {
    /// The shared channel was prepared and distributed.
    ChannelPrepared { code: ChannelCode },
    /// A two-qubit CNOT applied by `party`.
    Cnot {
        party: Party,
        control: QubitLabel,
        target: QubitLabel,
    },
    /// A single-qubit projective measurement; `value` follows the
    /// [`Outcome`](crate::qsim::Outcome) bit convention and `probability` is
    /// the Born-rule weight of the branch taken.
    Measurement {
        party: Party,
        qubit: QubitLabel,
        basis: Basis,
        value: u8,
        probability: f64,
    },
    /// A classical message, delivered losslessly and in order.
    Message {
        sender: Party,
        receiver: Party,
        payload: Payload,
    },
    /// `party` looked up `rule` and applied its component `gate` to `target`.
    Correction {
        party: Party,
        rule: CorrectionRule,
        target: QubitLabel,
        gate: Gate,
    },
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Event::ChannelPrepared { code } => write!(f, "channel prepared, code {code}"),
            Event::Cnot {
                party,
                control,
                target,
            } => {
                write!(f, "{party}: CNOT {control} -> {target}")
            }
            Event::Measurement {
                party,
                qubit,
                basis,
                value,
                probability,
            } => {
                let shown = match basis {
                    Basis::Z => value.to_string(),
                    Basis::X => (if *value == 0 { "+" } else { "-" }).to_string(),
                };
                write!(
                    f,
                    "{party}: measure {qubit} in {basis:?} -> {shown} (p={probability:.10})"
                )
            }
            Event::Message {
                sender,
                receiver,
                payload,
            } => {
                write!(f, "{sender} -> {receiver}: {payload}")
            }
            Event::Correction {
                party,
                rule,
                target,
                gate,
            } => {
                write!(f, "{party}: correction {rule} applies {gate} to {target}")
            }
        }
    }
}

/// Serialized record: the event plus its position in the log.
#[derive(Serialize)]
struct Record<'a> {
    index: usize,
    #[serde(flatten)]
    event: &'a Event,
}

/// The full ordered log of one run.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Transcript {
    pub events: Vec<Event>,
}

impl Transcript {
    pub fn new() -> Self {
        Transcript { events: Vec::new() }
    }

    pub fn push(&mut self, event: Event) {
        self.events.push(event);
    }

    pub fn measurements(&self) -> impl Iterator<Item = &Event> {
        self.events
            .iter()
            .filter(|e| matches!(e, Event::Measurement { .. }))
    }

    pub fn messages(&self) -> impl Iterator<Item = &Event> {
        self.events
            .iter()
            .filter(|e| matches!(e, Event::Message { .. }))
    }

    pub fn corrections(&self) -> impl Iterator<Item = &Event> {
        self.events
            .iter()
            .filter(|e| matches!(e, Event::Correction { .. }))
    }

    pub fn cnot_count(&self) -> usize {
        self.events
            .iter()
            .filter(|e| matches!(e, Event::Cnot { .. }))
            .count()
    }

    /// Count of single-qubit measurement events. Every measurement this
    /// engine performs is single-qubit, so this is the full measurement count.
    pub fn single_qubit_measurements(&self) -> usize {
        self.measurements().count()
    }

    /// Total classical bits sent by `party`, summed over message payloads.
    pub fn classical_bits_from(&self, party: Party) -> usize {
        self.messages()
            .filter_map(|e| match e {
                Event::Message {
                    sender, payload, ..
                } if *sender == party => Some(payload.bits()),
                _ => None,
            })
            .sum()
    }

    /// Product of the Born-rule probabilities of all measurements in the log;
    /// the joint probability of the branch this run took.
    pub fn branch_probability(&self) -> f64 {
        self.measurements()
            .map(|e| match e {
                Event::Measurement { probability, .. } => *probability,
                _ => unreachable!(),
            })
            .product()
    }

    /// Whether the run reached the controller's measurement: incomplete runs
    /// (controller withheld) never measure `c`.
    pub fn is_complete(&self) -> bool {
        self.measurements().any(|e| {
            matches!(
                e,
                Event::Measurement {
                    qubit: QubitLabel::C,
                    ..
                }
            )
        })
    }

    /// One JSON object per event, with its `index`, newline-terminated.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for (index, event) in self.events.iter().enumerate() {
            let rec = Record { index, event };
            out.push_str(&serde_json::to_string(&rec).expect("transcript events serialize"));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Transcript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.events.iter().enumerate() {
            writeln!(f, "[{i:2}] {e}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn payload_bit_widths() {
        assert_eq!(Payload::ZOutcome(0).bits(), 1);
        assert_eq!(Payload::XOutcome(1).bits(), 1);
        assert_eq!(
            Payload::ChannelCode(ChannelCode::new(false, true)).bits(),
            2
        );
        assert_eq!(
            Payload::GhzCode(GhzCode::encode_qubit_count(3).unwrap()).bits(),
            8
        );
    }

    #[test]
    fn jsonl_record_shape() {
        let mut t = Transcript::new();
        t.push(Event::ChannelPrepared {
            code: ChannelCode::new(false, true),
        });
        t.push(Event::Message {
            sender: Party::Alice,
            receiver: Party::Bob,
            payload: Payload::ZOutcome(1),
        });
        let jsonl = t.to_jsonl();
        let lines: Vec<&str> = jsonl.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(
            lines[0],
            r#"{"index":0,"kind":"channel_prepared","code":"01"}"#
        );
        assert_eq!(
            lines[1],
            r#"{"index":1,"kind":"message","sender":"alice","receiver":"bob","payload":{"type":"z_outcome","value":1}}"#
        );
    }
}
