//! Built-in families: a 1-D wave equation with pointwise velocity
//! observation, the free Schrödinger group and the Dirichlet heat equation,
//! the latter two observed through the gradient.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;
use core::str::FromStr;

use crate::matrix::CMatrix;
use crate::spectral::{ObservationData, SpectralMetadata, SpectralSystem};
use crate::{Error, Result, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Demo {
    Wave,
    Schrodinger1d,
    Heat1d,
}

impl Demo {
    pub fn name(self) -> &'static str {
        match self {
            Demo::Wave => "wave",
            Demo::Schrodinger1d => "schrodinger1d",
            Demo::Heat1d => "heat1d",
        }
    }

    pub fn build(self, n: usize) -> Result<SpectralSystem> {
        match self {
            Demo::Wave => wave(n),
            Demo::Schrodinger1d => schrodinger1d(n),
            Demo::Heat1d => heat1d(n),
        }
    }
}

impl fmt::Display for Demo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Demo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "wave" => Ok(Demo::Wave),
            "schrodinger1d" => Ok(Demo::Schrodinger1d),
            "heat1d" => Ok(Demo::Heat1d),
            _ => Err(Error::InvalidArgument("unknown demo (expected wave, schrodinger1d or heat1d)")),
        }
    }
}

const STRIP_BOUNDED: SpectralMetadata =
    SpectralMetadata { re_spectrum_unbounded: false, compact_resolvent: false };

fn check(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("number of modes must be at least 1"));
    }
    Ok(())
}

/// `λ = -ikπ` for `k = 1, -1, 2, -2, …, N, -N` with scalar output `CU = -i`.
pub fn wave(n: usize) -> Result<SpectralSystem> {
    check(n)?;
    let mut eigenvalues = Vec::with_capacity(2 * n);
    for k in 1..=n {
        let w = k as f64 * PI;
        eigenvalues.push(C64::new(0.0, -w));
        eigenvalues.push(C64::new(0.0, w));
    }
    let vectors = vec![vec![C64::new(0.0, -1.0)]; 2 * n];
    Ok(SpectralSystem {
        label: format!("wave N={n}"),
        eigenvalues,
        observation: ObservationData::Vectors(vectors),
        metadata: Some(STRIP_BOUNDED),
        injective_required: false,
    })
}

/// `λ = i(kπ)²` with C-Gram `diag((kπ)²)`.
pub fn schrodinger1d(n: usize) -> Result<SpectralSystem> {
    check(n)?;
    let sq: Vec<f64> = (1..=n).map(|k| (k as f64 * PI) * (k as f64 * PI)).collect();
    Ok(SpectralSystem {
        label: format!("schrodinger1d N={n}"),
        eigenvalues: sq.iter().map(|&s| C64::new(0.0, s)).collect(),
        observation: ObservationData::CGram(CMatrix::diagonal(&sq)),
        metadata: Some(STRIP_BOUNDED),
        injective_required: true,
    })
}

/// `λ = (kπ)²` with C-Gram `diag((kπ)²)`.
pub fn heat1d(n: usize) -> Result<SpectralSystem> {
    check(n)?;
    let sq: Vec<f64> = (1..=n).map(|k| (k as f64 * PI) * (k as f64 * PI)).collect();
    Ok(SpectralSystem {
        label: format!("heat1d N={n}"),
        eigenvalues: sq.iter().map(|&s| C64::new(s, 0.0)).collect(),
        observation: ObservationData::CGram(CMatrix::diagonal(&sq)),
        metadata: Some(SpectralMetadata { re_spectrum_unbounded: true, compact_resolvent: true }),
        injective_required: true,
    })
}
