//! Truncated Fock-space oracle: dense operators on `n_a · n_b` levels, exact
//! evolution, and every heat and entropy quantity computed from the state.

mod config;
mod entropy;
mod evolution;
mod hamiltonian;
mod modes;
mod operator;
mod simulation;
mod thermal;

pub use config::{levels_for, thermal_tail, FockConfig, DEFAULT_EVOL_TOL, DEFAULT_TAIL_TOL, MAX_LEVELS};
pub use entropy::{log_hermitian, relative_entropy, support_weight, von_neumann_entropy};
pub use evolution::{evolve, Dynamics, EigenObservable, Propagator};
pub use hamiltonian::{
    build_hamiltonian, mechanical_energies, nonstandard_energies, spectrum_match, Hamiltonian,
    SpectrumMatch,
};
pub use modes::{annihilation, build_operators, number, ModeOperators};
pub use operator::{DenseOperator, HermitianEigen, C64};
pub use simulation::{
    diagonal_split, effective_hamiltonian_of, heat_changes_numeric, BareEnergyFn, EntropyProduction,
    FockSimulation, JarzynskiReport, TrueHeatTransfer,
};
pub use thermal::{thermal_state, thermal_weights, ProductThermalState};
