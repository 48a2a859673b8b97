//! Bound-state spectra. The position-dependent-mass problem is shot in the
//! regular z-space form, the constant-mass problem in x, and a tridiagonal
//! Sturm-Liouville discretization serves as an independent oracle.

mod constant_mass;
mod matrix;
mod numerov;
mod residual;
mod search;
mod shooting;
mod state;
mod zero_modes;

pub use constant_mass::{
    cm_box_length, find_bound_states_cm, find_bound_states_cm_with, CmConfig, MAX_CM_BOX,
};
pub use matrix::{
    sl_matrix_eigenvalues, sl_matrix_eigenvalues_richardson, sturm_count, MIN_MATRIX_GRID,
};
pub use residual::{residual, tunneling_weight};
pub use shooting::{
    find_bound_states_pdm, find_bound_states_pdm_with, pdm_state_at, shoot_z, ShootConfig,
    ShootResult, DEFAULT_EPS, DEFAULT_GRID_POINTS,
};
pub use state::{default_window, BoundState, Convergence, Method, SpectrumResult};
pub use zero_modes::{
    calibrate_c_term_sign, cm_threshold_scan, find_zero_mode_depths,
    find_zero_mode_depths_with, ThresholdResonance, ZeroModeDepth, ZeroModeFamily,
    C_TERM_SIGN, ZERO_MODE_DECAY_TOL,
};
