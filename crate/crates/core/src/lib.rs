//! Exact-observability analysis for observed semigroup systems in diagonal form.
//!
//! A system is a finite family of modes: eigenvalues `λₙ` of the generator `A`
//! (the semigroup acts as `e^{-λₙ t}` on each mode) together with the Gram
//! matrix of the observation data `⟨CUₙ, CUₘ⟩`. Everything downstream is
//! computed exactly on that finite section:
//!
//! * [`gramian`]: closed-form observability Gramians, `m(τ)²` and `M(τ)²`.
//! * [`bfc`]: search for `M(η) < m(τ)` with `η < τ` and its consequences.
//! * [`squarefn`]: the weighted lower square-function estimate per mode.
//! * [`certifier`]: coercivity constant `δ` and observability certificates.
//! * [`diagnostics`]: spectral summaries and declared-metadata consistency rules.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
// `!(x > 0.0)` is used throughout so that NaN is rejected along with the range.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod bfc;
pub mod certifier;
pub mod demos;
pub mod diagnostics;
pub mod eigen;
mod error;
pub mod gramian;
pub mod grid;
pub mod matrix;
pub mod quad;
pub mod special;
pub mod spectral;
pub mod squarefn;
mod sum;

pub use error::{Error, Result};
pub use matrix::CMatrix;
pub use spectral::{
    epsilon_lower, output_energy_density, semigroup_apply, validate_system, ObservationData,
    ObservedMode, SpectralMetadata, SpectralSystem, StateVector, ValidatedSystem,
};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;

/// Default relative tolerance for the adaptive quadratures.
pub const DEFAULT_QUAD_TOL: f64 = 1e-9;
