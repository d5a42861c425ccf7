//! Heat transfer between two coupled quantum harmonic oscillators prepared in
//! thermal states.
//!
//! * [`analytic`]: closed-form Heisenberg propagators on resonance and the heat
//!   and free-entropy changes built from them.
//! * [`fock`]: an independent oracle on a truncated Fock space (exact unitary
//!   evolution, classical averages, entropy production, effective Hamiltonians).
//! * [`diagnostics`]: Clausius verdicts, violation scans and the commutator audit.
//! * [`cli`]: the `qsub-thermo` command-line front end.

pub mod analytic;
pub mod cli;
pub mod diagnostics;
mod error;
pub mod fock;
mod model;
pub mod quadrature;

pub use error::{Error, Result};
pub use model::{HeatReport, Interaction, InteractionKind, OscillatorSystem, ThermalPreparation};
