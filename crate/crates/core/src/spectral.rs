//! Spectral model of an observed system: eigenvalues of `A`, observation
//! data, and the elementary semigroup and output evaluations.

use alloc::string::String;
use alloc::vec::Vec;

// Redundant once std is linked (test builds), needed under no_std.
#[allow(unused_imports)]
use num_traits::Float;

use crate::eigen::hermitian_extremal;
use crate::matrix::CMatrix;
use crate::sum::CompensatedSum;
use crate::{Error, Result, C64};

/// Relative tolerance (against the trace) for the PSD check on the C-Gram.
pub const PSD_TOL: f64 = 1e-10;

/// One eigenmode: `A Uₙ = λₙ Uₙ` and, when observation is given per mode,
/// the output vector `CUₙ ∈ ℂ^p`.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservedMode {
    pub lambda: C64,
    pub obs: Option<Vec<C64>>,
}

/// Observation operator in the eigenbasis.
#[derive(Debug, Clone, PartialEq)]
pub enum ObservationData {
    /// One output vector `CUₙ` per mode, all of the same length `p ≥ 1`.
    Vectors(Vec<Vec<C64>>),
    /// `G[m][n] = ⟨CUₙ, CUₘ⟩_Y` given directly.
    CGram(CMatrix),
}

/// Declarations about the untruncated family that a finite section cannot
/// reveal on its own.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SpectralMetadata {
    pub re_spectrum_unbounded: bool,
    pub compact_resolvent: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralSystem {
    pub label: String,
    pub eigenvalues: Vec<C64>,
    pub observation: ObservationData,
    pub metadata: Option<SpectralMetadata>,
    /// Reject `λ = 0` during validation.
    pub injective_required: bool,
}

impl SpectralSystem {
    /// Assembles a system from modes carrying their own output vectors.
    pub fn from_modes(label: impl Into<String>, modes: Vec<ObservedMode>) -> Result<Self> {
        let mut eigenvalues = Vec::with_capacity(modes.len());
        let mut vectors = Vec::with_capacity(modes.len());
        for m in modes {
            eigenvalues.push(m.lambda);
            vectors.push(m.obs.ok_or(Error::InvalidArgument("mode without output vector"))?);
        }
        Ok(SpectralSystem {
            label: label.into(),
            eigenvalues,
            observation: ObservationData::Vectors(vectors),
            metadata: None,
            injective_required: false,
        })
    }

    pub fn with_cgram(label: impl Into<String>, eigenvalues: Vec<C64>, cgram: CMatrix) -> Self {
        SpectralSystem {
            label: label.into(),
            eigenvalues,
            observation: ObservationData::CGram(cgram),
            metadata: None,
            injective_required: false,
        }
    }

    pub fn with_metadata(mut self, metadata: SpectralMetadata) -> Self {
        self.metadata = Some(metadata);
        self
    }

    pub fn modes(&self) -> usize {
        self.eigenvalues.len()
    }
}

/// A system whose standing hypotheses have been checked, with the
/// observation Gram matrix materialized.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidatedSystem {
    label: String,
    eigenvalues: Vec<C64>,
    cgram: CMatrix,
    metadata: Option<SpectralMetadata>,
}

impl ValidatedSystem {
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn eigenvalues(&self) -> &[C64] {
        &self.eigenvalues
    }

    pub fn cgram(&self) -> &CMatrix {
        &self.cgram
    }

    pub fn metadata(&self) -> Option<SpectralMetadata> {
        self.metadata
    }

    pub fn modes(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn max_re(&self) -> f64 {
        self.eigenvalues.iter().map(|l| l.re).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min_re(&self) -> f64 {
        self.eigenvalues.iter().map(|l| l.re).fold(f64::INFINITY, f64::min)
    }

    /// Index of the first mode with `λ = 0`, if any.
    pub fn zero_mode(&self) -> Option<usize> {
        self.eigenvalues.iter().position(|l| l.re == 0.0 && l.im == 0.0)
    }

    pub fn ensure_injective(&self) -> Result<()> {
        match self.zero_mode() {
            Some(index) => Err(Error::ZeroEigenvalue { index }),
            None => Ok(()),
        }
    }

    /// The system for `ω + A`; stays valid for `ω ≥ 0`.
    pub fn shifted(&self, omega: f64) -> Result<ValidatedSystem> {
        if !(omega >= 0.0) || !omega.is_finite() {
            return Err(Error::InvalidArgument("shift must be finite and nonnegative"));
        }
        Ok(ValidatedSystem {
            label: self.label.clone(),
            eigenvalues: self.eigenvalues.iter().map(|l| l + omega).collect(),
            cgram: self.cgram.clone(),
            metadata: self.metadata,
        })
    }

    /// Diagonal of `S(t) = T(t)` in the eigenbasis: `e^{-λₙ t}`.
    pub fn semigroup_diagonal(&self, t: f64) -> Vec<C64> {
        self.eigenvalues.iter().map(|l| (-l * t).exp()).collect()
    }
}

/// Checks the standing hypotheses and materializes the observation Gram matrix.
pub fn validate_system(sys: &SpectralSystem) -> Result<ValidatedSystem> {
    let n = sys.eigenvalues.len();
    if n == 0 {
        return Err(Error::EmptySystem);
    }
    for (index, l) in sys.eigenvalues.iter().enumerate() {
        if !(l.re.is_finite() && l.im.is_finite()) {
            return Err(Error::InvalidArgument("eigenvalue is not finite"));
        }
        if l.re < 0.0 {
            return Err(Error::NegativeRealPart { index });
        }
        if sys.injective_required && l.re == 0.0 && l.im == 0.0 {
            return Err(Error::ZeroEigenvalue { index });
        }
    }

    let cgram = match &sys.observation {
        ObservationData::Vectors(vectors) => {
            if vectors.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: vectors.len() });
            }
            let p = vectors[0].len();
            if p == 0 {
                return Err(Error::InvalidArgument("output dimension must be at least 1"));
            }
            if let Some(v) = vectors.iter().find(|v| v.len() != p) {
                return Err(Error::DimensionMismatch { expected: p, found: v.len() });
            }
            // G[m][n] = ⟨CUₙ, CUₘ⟩ = Σ_k CUₙ[k] conj(CUₘ[k]); PSD by construction.
            CMatrix::hermitian_from_upper(n, |m, k| {
                let mut acc = CompensatedSum::default();
                for (a, b) in vectors[k].iter().zip(&vectors[m]) {
                    acc.add(a * b.conj());
                }
                acc.value()
            })
        }
        ObservationData::CGram(g) => {
            if g.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, found: g.dim() });
            }
            if g.as_slice().iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
                return Err(Error::InvalidArgument("observation Gram entry is not finite"));
            }
            if !g.is_hermitian(crate::eigen::HERMITIAN_TOL) {
                return Err(Error::NotHermitian);
            }
            let g = CMatrix::hermitian_from_upper(n, |i, j| g[(i, j)]);
            let (min, _) = hermitian_extremal(&g)?;
            if min < -PSD_TOL * g.trace().abs().max(f64::MIN_POSITIVE) {
                return Err(Error::NotPsd { min_eigenvalue: min });
            }
            g
        }
    };

    Ok(ValidatedSystem {
        label: sys.label.clone(),
        eigenvalues: sys.eigenvalues.clone(),
        cgram,
        metadata: sys.metadata,
    })
}

/// Coefficients `αₙ` of a state in the orthonormal eigenbasis.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    pub coeffs: Vec<C64>,
}

impl StateVector {
    pub fn new(coeffs: Vec<C64>) -> Self {
        StateVector { coeffs }
    }

    pub fn zeros(n: usize) -> Self {
        StateVector { coeffs: alloc::vec![C64::new(0.0, 0.0); n] }
    }

    /// The `k`-th basis vector.
    pub fn basis(n: usize, k: usize) -> Self {
        let mut x = Self::zeros(n);
        x.coeffs[k] = C64::new(1.0, 0.0);
        x
    }

    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }
}

fn check_dim(sys: &ValidatedSystem, x: &StateVector) -> Result<()> {
    if x.coeffs.len() != sys.modes() {
        return Err(Error::DimensionMismatch { expected: sys.modes(), found: x.coeffs.len() });
    }
    Ok(())
}

/// `T(t)x`: each coefficient is multiplied by `e^{-λₙ t}`.
pub fn semigroup_apply(sys: &ValidatedSystem, t: f64, x: &StateVector) -> Result<StateVector> {
    if !(t >= 0.0) {
        return Err(Error::NegativeTime);
    }
    check_dim(sys, x)?;
    let coeffs = sys
        .eigenvalues()
        .iter()
        .zip(&x.coeffs)
        .map(|(l, a)| a * (-l * t).exp())
        .collect();
    Ok(StateVector { coeffs })
}

/// `‖CT(t)x‖²_Y`, the integrand of the output energy.
pub fn output_energy_density(sys: &ValidatedSystem, t: f64, x: &StateVector) -> Result<f64> {
    let y = semigroup_apply(sys, t, x)?;
    Ok(sys.cgram().quadratic_form(&y.coeffs).re)
}

/// `ε(t) = inf_{‖x‖=1} ‖T(t)x‖`, which is `e^{-t · max Re λₙ}` here.
pub fn epsilon_lower(sys: &ValidatedSystem, t: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::NegativeTime);
    }
    if t == 0.0 {
        return Ok(1.0);
    }
    Ok((-t * sys.max_re()).exp())
}
