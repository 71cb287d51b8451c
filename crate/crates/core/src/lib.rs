//! Free fermions on chains with smoothly varying hoppings.
//!
//! A hopping profile `J(x)` plays the role of a static (1+1)D optical metric.
//! This crate diagonalizes the half-filled chain exactly and measures what a
//! deformed conformal field theory predicts for it: vacuum energies and their
//! finite-size corrections, block entanglement entropies, obstacle potentials
//! and the Casimir force seen by an observer at the chain edge.
//!
//! Modules, bottom-up:
//!
//! - [`metric`]: metric families and realized hopping profiles
//! - [`tridiag`]: symmetric tridiagonal eigensolver
//! - [`vacuum`]: correlation matrix, energies, local correlators
//! - [`entanglement`]: block entropies and CFT predictions
//! - [`casimir`]: obstacle potentials and edge forces
//! - [`fit`]: Cardy-form least squares and crossover scales
//! - [`experiment`]: config-driven sweeps with CSV output
//! - [`checks`]: the end-to-end validation suite
//! - [`oracle`]: brute-force many-body reference for short chains

pub mod casimir;
pub mod checks;
pub mod entanglement;
pub mod error;
pub mod experiment;
pub mod fit;
pub mod metric;
pub mod oracle;
pub mod tridiag;
pub mod vacuum;

pub use casimir::{
    casimir_force, force_prediction, force_sweep, hellmann_feynman_estimate, obstacle_net_force, potential_scan,
    ForceForm, ForceRecord, PotentialScan,
};
pub use entanglement::{
    block_entropy, cft_entropy_deformed, cft_entropy_flat, cft_entropy_rainbow, cft_entropy_rindler,
    entropy_profile, EntropyProfile,
};
pub use error::{Error, Result};
pub use fit::{
    crossover_size, effective_fermi_velocity, fit_curved_cardy, fit_flat_cardy, CardyModel, CardyPoint, FitResult,
    ParityMode,
};
pub use metric::{build_profile, deformed_coordinate, log_derivative, uv_cutoff, HoppingProfile, MetricKind, MetricSpec};
pub use tridiag::{eigendecompose, eigenvalues, HoppingMatrix, Spectrum};
pub use vacuum::{
    correlation_matrix, first_order_energy, ground_state_energy, local_correlators, vacuum_energy, CorrelationMatrix,
    Vacuum,
};
