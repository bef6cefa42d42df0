//! Spectral side of the Rellich–Hardy problem in the variables (t = log r, σ).
//!
//! A curl-free test field is described by a profile h and a spherical mode;
//! its two weighted integrals reduce to 1-D quadratic forms with the P/Q
//! symbols, which this module evaluates, minimizes and compares with the
//! exact constants.

pub mod decompose;
pub mod forms;
pub mod profile;
pub mod quotient;

use serde::Serialize;
use thiserror::Error;

pub use decompose::{decompose_potential, Decomposition, ModeBasis, ModeProfile};
pub use forms::{form_from_coefficients, quadratic_form, tau_coefficients, FormValue, Moments};
pub use profile::{base_derivatives, default_points_per_unit, make_profile, Profile, ProfileKind};
pub use quotient::{
    brute_min_tau_nu, minimizing_sequence, remainder_check, remainder_suite, rh_quotient, BruteMinReport, Mode,
    QuotientReport, RemainderReport, SequenceReport, SpectralField, TauGrid,
};

use crate::constants::ConstantsError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("points_per_unit = {points_per_unit} is below 16")]
    InsufficientResolution { points_per_unit: u32 },
    #[error("form polynomial has tau-degree {degree} > 3")]
    DegreeTooHigh { degree: usize },
    #[error("backend_disagreement: quadrature {gl} vs Fourier {fft} (relative {rel_diff:e})")]
    BackendDisagreement { gl: f64, fft: f64, rel_diff: f64 },
    #[error("degenerate_mode: P1(0, alpha_1) vanishes at lambda = 0")]
    DegenerateMode,
    #[error("argmin_not_at_zero: minimum at tau = {tau}, nu = {nu}")]
    ArgminNotAtZero { tau: f64, nu: u32 },
    #[error("mean_not_converged: angular refinement changed the result by {change:e}")]
    MeanNotConverged { change: f64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Constants(#[from] ConstantsError),
}

/// Numerical tolerances and resolutions.
#[derive(Clone, Debug, Serialize)]
pub struct SpectralConfig {
    /// Relative agreement required between the two form backends.
    pub form_rel_tol: f64,
    /// Slack for lower-bound claims on quotients.
    pub bound_tol: f64,
    /// Slack for the remainder inequality, relative to the form scale.
    pub remainder_tol: f64,
    /// Relative agreement of the (τ, ν) scan minimum with C_min.
    pub min_rel_tol: f64,
    /// Gauss–Legendre cells over the undilated support [−1, 1].
    pub gl_cells: usize,
    /// Angular nodes used by `decompose_potential`.
    pub angular_nodes: usize,
    /// Relative tolerance of the angular refinement in `decompose_potential`.
    pub mean_tol: f64,
}

impl Default for SpectralConfig {
    fn default() -> Self {
        Self {
            form_rel_tol: 1e-8,
            bound_tol: 1e-6,
            remainder_tol: 1e-8,
            min_rel_tol: 1e-10,
            gl_cells: 64,
            angular_nodes: 64,
            mean_tol: 1e-10,
        }
    }
}
