//! Bound states of the position-dependent-mass Schrodinger equation for the
//! potential family `V(x) = -a sech^6 x - b sech^4 x - c sech^2 x` with the
//! solitonic mass `m(x) = m0 sech^2 x`, together with the constant-mass
//! counterpart, closed-form Heun solutions and zero-mode searches.

pub mod error;
pub mod heun;
pub mod model;
pub mod spectral;
pub mod transform;

pub use error::{Error, Result};
pub use model::{
    classify_wells, classify_wells_with_tol, effective_potential_at, kinematic_potential_at,
    mass_at, potential_at, MassProfile, OrderingParams, Parity, PhaseKind, PotentialParams,
    StationaryKind, StationaryPoint, WellPhase,
};
pub use transform::{l2_norm, pullback_wavefunction, x_of_z, z_of_x, AnsatzConstants, Grid, Space};
pub use spectral::{
    find_bound_states_cm, find_bound_states_pdm, find_zero_mode_depths, residual, shoot_z,
    sl_matrix_eigenvalues, tunneling_weight, BoundState, ShootConfig, ShootResult,
    SpectrumResult, ZeroModeDepth, ZeroModeFamily,
};
