//! Dense state-vector engine over labeled qubits.
//!
//! States are exact complex amplitude arrays. The leftmost label is the most
//! significant bit of the amplitude index, so a ket written `|a0 b0 a1 c b1⟩`
//! indexes the amplitude array the same way the bitstring reads.
//!
//! Every operation returns a fresh value; nothing is mutated in place. This
//! keeps independent protocol runs trivially parallelizable and makes branch
//! enumeration a pure fold.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize, Serializer};
use std::fmt;

/// Absolute tolerance for norms and unitarity checks.
pub const NORM_TOLERANCE: f64 = 1e-12;
/// Tolerance for fidelity and purity comparisons.
pub const FIDELITY_TOLERANCE: f64 = 1e-10;
/// Below this probability a measurement branch is reported as impossible
/// instead of being renormalized into garbage.
pub const ZERO_BRANCH_TOLERANCE: f64 = 1e-18;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum QsimError {
    #[error("duplicate qubit label {0}")]
    DuplicateLabel(QubitLabel),
    #[error("qubit label {0} is not in the register")]
    MissingLabel(QubitLabel),
    #[error("{labels} labels but {bits} bits")]
    LengthMismatch { labels: usize, bits: usize },
    #[error("invalid bit character {0:?} (expected '0' or '1')")]
    InvalidBit(char),
    #[error("control and target are both {0}")]
    ControlIsTarget(QubitLabel),
    #[error("outcome is in the {outcome:?} basis but the measurement is in {basis:?}")]
    BasisMismatch { basis: Basis, outcome: Basis },
    #[error("states are over different label sets")]
    LabelSetMismatch,
    #[error("amplitudes are not finite")]
    NonFinite,
    #[error("state norm² is {0}, not 1")]
    NotNormalized(f64),
    #[error("amplitude count {amps} is not 2^{labels}")]
    BadDimension { labels: usize, amps: usize },
    #[error("qubit {label} is entangled with the rest of the register (purity {purity})")]
    NotPure { label: QubitLabel, purity: f64 },
}

pub type Result<T> = std::result::Result<T, QsimError>;

/// Identity of one qubit in a register.
///
/// The five channel qubits keep the names they carry on the wire (`a0`, `b0`,
/// `a1`, `c`, `b1`); `A` and `B` are the message qubits holding the states to
/// be teleported; `anc_k` labels are free for ancillas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QubitLabel {
    A0,
    B0,
    A1,
    C,
    B1,
    A,
    B,
    Anc(u16),
}

impl fmt::Display for QubitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QubitLabel::A0 => write!(f, "a0"),
            QubitLabel::B0 => write!(f, "b0"),
            QubitLabel::A1 => write!(f, "a1"),
            QubitLabel::C => write!(f, "c"),
            QubitLabel::B1 => write!(f, "b1"),
            QubitLabel::A => write!(f, "A"),
            QubitLabel::B => write!(f, "B"),
            QubitLabel::Anc(k) => write!(f, "anc_{k}"),
        }
    }
}

impl Serialize for QubitLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Single-qubit gates used by the protocol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Gate {
    I,
    X,
    Z,
    H,
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::I => write!(f, "I"),
            Gate::X => write!(f, "X"),
            Gate::Z => write!(f, "Z"),
            Gate::H => write!(f, "H"),
        }
    }
}

/// Measurement basis: `Z` eigenstates are `|0⟩`, `|1⟩`; `X` eigenstates are
/// `|±⟩ = (|0⟩ ± |1⟩)/√2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Basis {
    Z,
    X,
}

/// One measurement outcome. `value` is a bit: in `Z`, 0 ↔ `|0⟩`, 1 ↔ `|1⟩`;
/// in `X`, 0 ↔ `|+⟩`, 1 ↔ `|−⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub basis: Basis,
    pub value: u8,
}

impl Outcome {
    pub fn z(bit: u8) -> Self {
        Outcome {
            basis: Basis::Z,
            value: bit & 1,
        }
    }

    pub fn x(bit: u8) -> Self {
        Outcome {
            basis: Basis::X,
            value: bit & 1,
        }
    }

    pub fn plus() -> Self {
        Outcome::x(0)
    }

    pub fn minus() -> Self {
        Outcome::x(1)
    }

    pub fn is_minus(&self) -> bool {
        self.basis == Basis::X && self.value == 1
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.basis {
            Basis::Z => write!(f, "{}", self.value),
            Basis::X => write!(f, "{}", if self.value == 0 { "+" } else { "-" }),
        }
    }
}

/// Result of projecting one qubit onto a measurement outcome.
///
/// `collapsed` is the renormalized post-measurement state with the measured
/// qubit removed from the register, or `None` when the branch has probability
/// below [`ZERO_BRANCH_TOLERANCE`] (an impossible branch is reported, never
/// silently renormalized).
#[derive(Debug, Clone)]
pub struct BranchResult {
    pub probability: f64,
    pub collapsed: Option<StateVector>,
}

/// A normalized single-qubit pure state `c0|0⟩ + c1|1⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    pub c0: Complex64,
    pub c1: Complex64,
}

impl QubitState {
    /// Builds a state from explicit amplitudes, requiring `|c0|² + |c1|² = 1`
    /// within [`FIDELITY_TOLERANCE`].
    pub fn new(c0: Complex64, c1: Complex64) -> Result<Self> {
        if !c0.is_finite() || !c1.is_finite() {
            return Err(QsimError::NonFinite);
        }
        let norm2 = c0.norm_sqr() + c1.norm_sqr();
        if (norm2 - 1.0).abs() > FIDELITY_TOLERANCE {
            return Err(QsimError::NotNormalized(norm2));
        }
        Ok(QubitState { c0, c1 })
    }

    pub fn zero() -> Self {
        QubitState {
            c0: Complex64::new(1.0, 0.0),
            c1: Complex64::new(0.0, 0.0),
        }
    }

    pub fn one() -> Self {
        QubitState {
            c0: Complex64::new(0.0, 0.0),
            c1: Complex64::new(1.0, 0.0),
        }
    }

    pub fn plus() -> Self {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        QubitState {
            c0: Complex64::new(r, 0.0),
            c1: Complex64::new(r, 0.0),
        }
    }

    /// Draws a Haar-random state: `|c0|²` uniform on [0,1], phases uniform.
    pub fn random<R: Rng>(rng: &mut R) -> Self {
        let u: f64 = rng.gen();
        let phi0: f64 = rng.gen::<f64>() * std::f64::consts::TAU;
        let phi1: f64 = rng.gen::<f64>() * std::f64::consts::TAU;
        QubitState {
            c0: Complex64::from_polar(u.sqrt(), phi0),
            c1: Complex64::from_polar((1.0 - u).sqrt(), phi1),
        }
    }

    /// Rotates the global phase so the first coefficient of magnitude above
    /// [`NORM_TOLERANCE`] is real and positive.
    pub fn phase_normalized(&self) -> Self {
        let anchor = if self.c0.norm() > NORM_TOLERANCE {
            self.c0
        } else {
            self.c1
        };
        let phase = anchor / anchor.norm();
        QubitState {
            c0: self.c0 / phase,
            c1: self.c1 / phase,
        }
    }

    /// `|⟨self|other⟩|²`.
    pub fn fidelity(&self, other: &QubitState) -> f64 {
        let ip = self.c0.conj() * other.c0 + self.c1.conj() * other.c1;
        ip.norm_sqr().min(1.0)
    }

    /// Embeds the state as a one-qubit register.
    pub fn to_state_vector(&self, label: QubitLabel) -> StateVector {
        StateVector {
            labels: vec![label],
            amps: vec![self.c0, self.c1],
        }
    }
}

/// Dense pure state over an ordered list of labeled qubits.
///
/// Invariants: labels are unique, `amps.len() == 2^labels.len()`, and the
/// squared norm is 1 within [`NORM_TOLERANCE`]. A register may be empty, in
/// which case the state is a single unit-modulus scalar (the residue left by
/// measuring everything away).
#[derive(Debug, Clone)]
pub struct StateVector {
    labels: Vec<QubitLabel>,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// A computational basis state: `bits` is a '0'/'1' string aligned with
    /// `labels`, leftmost label first.
    pub fn new_basis_state(labels: &[QubitLabel], bits: &str) -> Result<Self> {
        check_unique(labels)?;
        if bits.len() != labels.len() {
            return Err(QsimError::LengthMismatch {
                labels: labels.len(),
                bits: bits.len(),
            });
        }
        let index = parse_bits(bits)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << labels.len()];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector {
            labels: labels.to_vec(),
            amps,
        })
    }

    /// Builds a state from raw amplitudes (length `2^labels.len()`, finite,
    /// normalized within [`NORM_TOLERANCE`]).
    pub fn from_amplitudes(labels: &[QubitLabel], amps: Vec<Complex64>) -> Result<Self> {
        check_unique(labels)?;
        if amps.len() != 1 << labels.len() {
            return Err(QsimError::BadDimension {
                labels: labels.len(),
                amps: amps.len(),
            });
        }
        if amps.iter().any(|a| !a.is_finite()) {
            return Err(QsimError::NonFinite);
        }
        let norm2: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm2 - 1.0).abs() > NORM_TOLERANCE {
            return Err(QsimError::NotNormalized(norm2));
        }
        Ok(StateVector {
            labels: labels.to_vec(),
            amps,
        })
    }

    pub fn labels(&self) -> &[QubitLabel] {
        &self.labels
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn num_qubits(&self) -> usize {
        self.labels.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Amplitude of the basis ket written in this register's label order.
    pub fn amplitude_of(&self, bits: &str) -> Result<Complex64> {
        if bits.len() != self.labels.len() {
            return Err(QsimError::LengthMismatch {
                labels: self.labels.len(),
                bits: bits.len(),
            });
        }
        Ok(self.amps[parse_bits(bits)?])
    }

    fn position(&self, label: QubitLabel) -> Result<usize> {
        self.labels
            .iter()
            .position(|&l| l == label)
            .ok_or(QsimError::MissingLabel(label))
    }

    /// Bit position of `label` inside an amplitude index (leftmost label is
    /// the most significant bit).
    fn bit_of(&self, label: QubitLabel) -> Result<usize> {
        Ok(self.labels.len() - 1 - self.position(label)?)
    }

    /// Tensor product; `self`'s labels come first.
    pub fn tensor(&self, right: &StateVector) -> Result<StateVector> {
        for l in &right.labels {
            if self.labels.contains(l) {
                return Err(QsimError::DuplicateLabel(*l));
            }
        }
        let mut labels = self.labels.clone();
        labels.extend_from_slice(&right.labels);
        let m = right.amps.len();
        let mut amps = vec![Complex64::new(0.0, 0.0); self.amps.len() * m];
        for (i, &a) in self.amps.iter().enumerate() {
            for (j, &b) in right.amps.iter().enumerate() {
                amps[i * m + j] = a * b;
            }
        }
        Ok(StateVector { labels, amps })
    }

    /// Applies a single-qubit gate to `target`.
    pub fn apply_single(&self, gate: Gate, target: QubitLabel) -> Result<StateVector> {
        let bit = self.bit_of(target)?;
        let mask = 1usize << bit;
        let mut amps = self.amps.clone();
        match gate {
            Gate::I => {}
            Gate::X => {
                for i in 0..amps.len() {
                    if i & mask == 0 {
                        amps.swap(i, i | mask);
                    }
                }
            }
            Gate::Z => {
                for (i, a) in amps.iter_mut().enumerate() {
                    if i & mask != 0 {
                        *a = -*a;
                    }
                }
            }
            Gate::H => {
                let r = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
                for i in 0..amps.len() {
                    if i & mask == 0 {
                        let lo = amps[i];
                        let hi = amps[i | mask];
                        amps[i] = r * (lo + hi);
                        amps[i | mask] = r * (lo - hi);
                    }
                }
            }
        }
        Ok(StateVector {
            labels: self.labels.clone(),
            amps,
        })
    }

    /// Applies a CNOT: flips `target`'s bit on components where `control`'s
    /// bit is 1.
    pub fn apply_cnot(&self, control: QubitLabel, target: QubitLabel) -> Result<StateVector> {
        if control == target {
            return Err(QsimError::ControlIsTarget(control));
        }
        let cbit = self.bit_of(control)?;
        let tbit = self.bit_of(target)?;
        let cmask = 1usize << cbit;
        let tmask = 1usize << tbit;
        let mut amps = self.amps.clone();
        for i in 0..amps.len() {
            if i & cmask != 0 && i & tmask == 0 {
                amps.swap(i, i | tmask);
            }
        }
        Ok(StateVector {
            labels: self.labels.clone(),
            amps,
        })
    }

    /// Projects `target` onto the eigenstate selected by `outcome` and removes
    /// it from the register.
    pub fn measure_branch(
        &self,
        target: QubitLabel,
        basis: Basis,
        outcome: Outcome,
    ) -> Result<BranchResult> {
        if outcome.basis != basis {
            return Err(QsimError::BasisMismatch {
                basis,
                outcome: outcome.basis,
            });
        }
        let bit = self.bit_of(target)?;
        let mask = 1usize << bit;
        let lo_mask = mask - 1;
        let pos = self.position(target)?;
        let mut labels = self.labels.clone();
        labels.remove(pos);

        let mut projected = vec![Complex64::new(0.0, 0.0); self.amps.len() / 2];
        for (i, &a) in self.amps.iter().enumerate() {
            let b = ((i & mask) != 0) as u8;
            let reduced = ((i >> 1) & !lo_mask) | (i & lo_mask);
            match basis {
                Basis::Z => {
                    if b == outcome.value {
                        projected[reduced] += a;
                    }
                }
                Basis::X => {
                    // ⟨±|0⟩ = 1/√2, ⟨+|1⟩ = 1/√2, ⟨−|1⟩ = −1/√2
                    let sign = if outcome.value == 1 && b == 1 {
                        -1.0
                    } else {
                        1.0
                    };
                    projected[reduced] +=
                        a * Complex64::new(sign * std::f64::consts::FRAC_1_SQRT_2, 0.0);
                }
            }
        }
        let probability: f64 = projected.iter().map(|a| a.norm_sqr()).sum();
        if probability <= ZERO_BRANCH_TOLERANCE {
            return Ok(BranchResult {
                probability: 0.0,
                collapsed: None,
            });
        }
        let scale = probability.sqrt().recip();
        for a in &mut projected {
            *a *= scale;
        }
        Ok(BranchResult {
            probability,
            collapsed: Some(StateVector {
                labels,
                amps: projected,
            }),
        })
    }

    /// Samples a measurement outcome with Born-rule probabilities. The
    /// returned branch is exactly what [`measure_branch`](Self::measure_branch)
    /// yields for the drawn outcome; a fixed RNG seed reproduces the sequence.
    pub fn measure_sample<R: Rng>(
        &self,
        target: QubitLabel,
        basis: Basis,
        rng: &mut R,
    ) -> Result<(Outcome, BranchResult)> {
        let o0 = Outcome { basis, value: 0 };
        let b0 = self.measure_branch(target, basis, o0)?;
        let draw: f64 = rng.gen();
        if draw < b0.probability {
            Ok((o0, b0))
        } else {
            let o1 = Outcome { basis, value: 1 };
            let b1 = self.measure_branch(target, basis, o1)?;
            Ok((o1, b1))
        }
    }

    /// Reorders the register to `new_labels` (same set), permuting amplitudes
    /// to match.
    pub fn reordered(&self, new_labels: &[QubitLabel]) -> Result<StateVector> {
        check_unique(new_labels)?;
        if new_labels.len() != self.labels.len()
            || !new_labels.iter().all(|l| self.labels.contains(l))
        {
            return Err(QsimError::LabelSetMismatch);
        }
        let n = self.labels.len();
        // old bit position for each new position
        let mut old_bits = Vec::with_capacity(n);
        for l in new_labels {
            old_bits.push(self.bit_of(*l)?);
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (i, slot) in amps.iter_mut().enumerate() {
            let mut old_index = 0usize;
            for (new_pos, &ob) in old_bits.iter().enumerate() {
                let new_bit = n - 1 - new_pos;
                if i & (1 << new_bit) != 0 {
                    old_index |= 1 << ob;
                }
            }
            *slot = self.amps[old_index];
        }
        Ok(StateVector {
            labels: new_labels.to_vec(),
            amps,
        })
    }

    /// `|⟨self|other⟩|²` over the same label set; `other` is aligned to this
    /// register's order first.
    pub fn fidelity(&self, other: &StateVector) -> Result<f64> {
        let aligned = other.reordered(&self.labels)?;
        let ip: Complex64 = self
            .amps
            .iter()
            .zip(aligned.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum();
        Ok(ip.norm_sqr().min(1.0))
    }

    /// 2×2 reduced density matrix of `target`, tracing out the rest.
    pub fn reduced_density(&self, target: QubitLabel) -> Result<[[Complex64; 2]; 2]> {
        let bit = self.bit_of(target)?;
        let mask = 1usize << bit;
        let mut rho = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (i, &a) in self.amps.iter().enumerate() {
            if i & mask != 0 {
                continue;
            }
            let a0 = a;
            let a1 = self.amps[i | mask];
            rho[0][0] += a0 * a0.conj();
            rho[0][1] += a0 * a1.conj();
            rho[1][0] += a1 * a0.conj();
            rho[1][1] += a1 * a1.conj();
        }
        Ok(rho)
    }

    /// `tr(ρ²)` for the reduced state of `target`; 1 means the qubit is in a
    /// pure state, 1/2 means maximally entangled with the rest.
    pub fn reduced_purity(&self, target: QubitLabel) -> Result<f64> {
        let rho = self.reduced_density(target)?;
        let p = rho[0][0].norm_sqr() + rho[1][1].norm_sqr() + 2.0 * rho[0][1].norm_sqr();
        Ok(p)
    }

    /// Extracts `target` as a phase-normalized [`QubitState`], failing if its
    /// reduced state is not pure within [`FIDELITY_TOLERANCE`] (which would
    /// mean the qubit is still entangled with the rest).
    pub fn extract_qubit(&self, target: QubitLabel) -> Result<QubitState> {
        let purity = self.reduced_purity(target)?;
        if 1.0 - purity > FIDELITY_TOLERANCE {
            return Err(QsimError::NotPure {
                label: target,
                purity,
            });
        }
        // Pure product state: read the pair of amplitudes along the slice of
        // the rest-register where the state has the most weight.
        let bit = self.bit_of(target)?;
        let mask = 1usize << bit;
        let mut best = 0usize;
        let mut best_weight = -1.0;
        for i in 0..self.amps.len() {
            if i & mask != 0 {
                continue;
            }
            let w = self.amps[i].norm_sqr() + self.amps[i | mask].norm_sqr();
            if w > best_weight {
                best_weight = w;
                best = i;
            }
        }
        let c0 = self.amps[best];
        let c1 = self.amps[best | mask];
        let norm = (c0.norm_sqr() + c1.norm_sqr()).sqrt();
        Ok(QubitState {
            c0: c0 / norm,
            c1: c1 / norm,
        }
        .phase_normalized())
    }
}

fn check_unique(labels: &[QubitLabel]) -> Result<()> {
    for (i, l) in labels.iter().enumerate() {
        if labels[i + 1..].contains(l) {
            return Err(QsimError::DuplicateLabel(*l));
        }
    }
    Ok(())
}

fn parse_bits(bits: &str) -> Result<usize> {
    let mut index = 0usize;
    for ch in bits.chars() {
        index <<= 1;
        match ch {
            '0' => {}
            '1' => index |= 1,
            other => return Err(QsimError::InvalidBit(other)),
        }
    }
    Ok(index)
}
