//! Exact simulator and verifier for bidirectional controlled quantum
//! teleportation (BQCT) over a five-qubit entangled channel.
//!
//! Three parties take part: Alice and Bob each teleport one unknown qubit to
//! the other at the same time, and a controller (Charlie) gates the exchange
//! by deciding how his qubit is wired into the shared channel and when he
//! measures it. The crate simulates the whole protocol exactly on dense state
//! vectors and proves, by exhaustive branch enumeration, that both transmitted
//! states are always recovered with fidelity 1.
//!
//! Modules:
//! - [`qsim`]: the dense state-vector engine (labeled qubits, gates,
//!   projective measurement in Z and X, fidelity, single-qubit extraction).
//! - [`channel`]: preparation of the four five-qubit channel variants and the
//!   reference amplitude table they must match.
//! - [`protocol`]: the eight-step three-party run, correction lookups, branch
//!   enumeration, and the collapse-table verifier.
//! - [`ghz`]: the extension that carries n-qubit GHZ-class states through the
//!   same channel (compress, teleport, fan out).
//! - [`metrics`]: exact-rational resource accounting and the comparison table.
//! - [`transcript`]: the ordered gate/measurement/message log every run emits.
//! - [`cli`]: the command-line driver (`run`, `enumerate`, `verify-tables`,
//!   `ghz`, `metrics`).
//!
//! Start with the examples: each one exercises a single capability end to end
//! (`cargo run --example enumerate_branches`, etc.).

pub mod channel;
pub mod cli;
pub mod ghz;
pub mod metrics;
pub mod protocol;
pub mod qsim;
pub mod transcript;

pub use channel::ChannelCode;
pub use ghz::{GhzCode, GhzState};
pub use protocol::{BranchSelector, CorrectionRule, ProtocolResult, RunMode};
pub use qsim::{Basis, BranchResult, Gate, Outcome, QubitLabel, QubitState, StateVector};
pub use transcript::{Event, Party, Transcript};
