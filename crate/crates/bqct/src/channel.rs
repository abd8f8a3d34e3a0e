//! Preparation of the five-qubit entangled channel.
//!
//! The channel is built from `|00000⟩` on qubits `(a0, b0, a1, c, b1)` by two
//! Hadamards (on `b0`, `a1`) and two CNOTs (`b0→a0`, `a1→b1`), after which the
//! controller wires his qubit `c` in by choosing which of `a0`, `b1` control a
//! CNOT onto it. The two wiring bits are the channel code he later announces,
//! in the order `a0, b1`. Four variants exist; each is an equal superposition
//! of four basis kets with amplitude +1/2.

use crate::qsim::{Gate, QsimError, QubitLabel, StateVector};
use serde::Serializer;
use std::fmt;
use std::str::FromStr;

/// Register order used by every channel state and by the protocol.
pub const CHANNEL_LABELS: [QubitLabel; 5] = [
    QubitLabel::A0,
    QubitLabel::B0,
    QubitLabel::A1,
    QubitLabel::C,
    QubitLabel::B1,
];

/// The controller's two wiring bits, in the announced order `a0, b1`.
///
/// `a0` set means a CNOT from `a0` onto `c`; `b1` set means one from `b1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChannelCode {
    pub a0: bool,
    pub b1: bool,
}

impl ChannelCode {
    pub fn new(a0: bool, b1: bool) -> Self {
        ChannelCode { a0, b1 }
    }

    /// The four codes, in announcement order `00, 01, 10, 11`.
    pub fn all() -> [ChannelCode; 4] {
        [
            ChannelCode::new(false, false),
            ChannelCode::new(false, true),
            ChannelCode::new(true, false),
            ChannelCode::new(true, true),
        ]
    }

    pub fn bits(&self) -> (u8, u8) {
        (self.a0 as u8, self.b1 as u8)
    }
}

impl fmt::Display for ChannelCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.a0 as u8, self.b1 as u8)
    }
}

impl FromStr for ChannelCode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let b: Vec<char> = s.chars().collect();
        if b.len() != 2 || !b.iter().all(|c| *c == '0' || *c == '1') {
            return Err(format!("channel code must be two bits, got {s:?}"));
        }
        Ok(ChannelCode::new(b[0] == '1', b[1] == '1'))
    }
}

impl serde::Serialize for ChannelCode {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Builds the channel variant selected by `code` from scratch.
///
/// The result is always four basis kets with amplitude exactly +1/2 on the
/// register [`CHANNEL_LABELS`].
pub fn prepare_channel(code: ChannelCode) -> StateVector {
    let sv = StateVector::new_basis_state(&CHANNEL_LABELS, "00000")
        .expect("channel register is well-formed");
    let sv = sv.apply_single(Gate::H, QubitLabel::B0).unwrap();
    let sv = sv.apply_single(Gate::H, QubitLabel::A1).unwrap();
    let sv = sv.apply_cnot(QubitLabel::B0, QubitLabel::A0).unwrap();
    let sv = sv.apply_cnot(QubitLabel::A1, QubitLabel::B1).unwrap();
    apply_charlie_u(&sv, code).expect("channel labels present")
}

/// The controller's conditional wiring: CNOT(`a0`→`c`) when `code.a0` is set,
/// then CNOT(`b1`→`c`) when `code.b1` is set. Code `00` is the identity.
pub fn apply_charlie_u(sv: &StateVector, code: ChannelCode) -> Result<StateVector, QsimError> {
    let mut out = sv.clone();
    if code.a0 {
        out = out.apply_cnot(QubitLabel::A0, QubitLabel::C)?;
    }
    if code.b1 {
        out = out.apply_cnot(QubitLabel::B1, QubitLabel::C)?;
    }
    Ok(out)
}

/// Hard-coded reference amplitudes for each channel variant, used as the test
/// oracle against [`prepare_channel`]. Bitstrings follow [`CHANNEL_LABELS`]
/// order; every amplitude is +1/2.
pub fn reference_amplitudes(code: ChannelCode) -> [(&'static str, f64); 4] {
    let kets = match code.bits() {
        (0, 0) => ["00000", "00101", "11000", "11101"],
        (0, 1) => ["00000", "00111", "11000", "11111"],
        (1, 0) => ["00000", "00101", "11010", "11111"],
        (1, 1) => ["00000", "00111", "11010", "11101"],
        _ => unreachable!(),
    };
    [
        (kets[0], 0.5),
        (kets[1], 0.5),
        (kets[2], 0.5),
        (kets[3], 0.5),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsim::NORM_TOLERANCE;
    use num_complex::Complex64;

    #[test]
    fn code_parsing_and_display() {
        let code: ChannelCode = "01".parse().unwrap();
        assert_eq!(code, ChannelCode::new(false, true));
        assert_eq!(code.to_string(), "01");
        assert!("0".parse::<ChannelCode>().is_err());
        assert!("02".parse::<ChannelCode>().is_err());
    }

    #[test]
    fn prepared_channels_match_reference_table() {
        for code in ChannelCode::all() {
            let sv = prepare_channel(code);
            let mut expected = vec![Complex64::new(0.0, 0.0); 32];
            for (bits, amp) in reference_amplitudes(code) {
                let mut idx = 0usize;
                for ch in bits.chars() {
                    idx = (idx << 1) | (ch == '1') as usize;
                }
                expected[idx] = Complex64::new(amp, 0.0);
            }
            for (got, want) in sv.amplitudes().iter().zip(&expected) {
                assert!(
                    (got - want).norm() < NORM_TOLERANCE,
                    "code {code}: {got} vs {want}"
                );
            }
        }
    }

    #[test]
    fn code_00_wiring_is_identity() {
        let base = prepare_channel(ChannelCode::new(false, false));
        let wired = apply_charlie_u(&base, ChannelCode::new(false, false)).unwrap();
        for (a, b) in base.amplitudes().iter().zip(wired.amplitudes()) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn wiring_produces_each_variant_from_the_unwired_state() {
        // the unwired state is the code-00 channel
        let unwired = prepare_channel(ChannelCode::new(false, false));
        for code in ChannelCode::all() {
            let wired = apply_charlie_u(&unwired, code).unwrap();
            let direct = prepare_channel(code);
            for (a, b) in wired.amplitudes().iter().zip(direct.amplitudes()) {
                assert!((a - b).norm() < NORM_TOLERANCE);
            }
        }
    }

    #[test]
    fn four_equal_real_amplitudes_per_variant() {
        for code in ChannelCode::all() {
            let sv = prepare_channel(code);
            let nonzero: Vec<&Complex64> = sv
                .amplitudes()
                .iter()
                .filter(|a| a.norm() > NORM_TOLERANCE)
                .collect();
            assert_eq!(nonzero.len(), 4, "code {code}");
            for a in nonzero {
                assert!((a - Complex64::new(0.5, 0.0)).norm() < NORM_TOLERANCE);
            }
            assert!((sv.norm_sqr() - 1.0).abs() < NORM_TOLERANCE);
        }
    }

    #[test]
    fn variants_are_pairwise_distinct() {
        let all: Vec<_> = ChannelCode::all()
            .iter()
            .map(|&c| prepare_channel(c))
            .collect();
        for i in 0..all.len() {
            for j in i + 1..all.len() {
                let f = all[i].fidelity(&all[j]).unwrap();
                assert!(
                    f < 1.0 - 1e-6,
                    "variants {i} and {j} coincide (fidelity {f})"
                );
            }
        }
    }

    #[test]
    fn copy_structure_and_controller_wiring_hold_per_term() {
        // in every basis term: bit(a0) = bit(b0), bit(a1) = bit(b1), and
        // bit(c) = code.a0·bit(a0) XOR code.b1·bit(b1)
        for code in ChannelCode::all() {
            let sv = prepare_channel(code);
            for (idx, amp) in sv.amplitudes().iter().enumerate() {
                if amp.norm() < NORM_TOLERANCE {
                    continue;
                }
                let bit = |pos: usize| ((idx >> (4 - pos)) & 1) as u8; // pos 0 = a0
                let (a0, b0, a1, c, b1) = (bit(0), bit(1), bit(2), bit(3), bit(4));
                assert_eq!(a0, b0);
                assert_eq!(a1, b1);
                let expected_c = (code.a0 as u8 & a0) ^ (code.b1 as u8 & b1);
                assert_eq!(c, expected_c, "code {code}, term {idx:05b}");
            }
        }
    }
}
