//! Scenario files: a JSON description of a diagonal system.
//!
//! ```json
//! {
//!   "label": "two modes",
//!   "output_dim": 1,
//!   "modes": [
//!     { "re": 1.0, "im": 0.0, "obs": [[1.0, 0.0]] },
//!     { "re": 2.0, "im": 3.0, "obs": [[0.0, -1.0]] }
//!   ],
//!   "metadata": { "re_spectrum_unbounded": false, "compact_resolvent": false }
//! }
//! ```
//!
//! Complex numbers are `[re, im]` pairs. Observation is given either per mode
//! (`obs`, with `output_dim` entries each) or as a system-level `cgram`
//! holding `⟨CUₙ, CUₘ⟩` in row `m`, column `n`, in which case `output_dim` is 0.
//! Floats are written in shortest round-trip form, so saving and loading is
//! lossless.

use std::fs;
use std::path::Path;

use obslab_core::demos::Demo;
use obslab_core::{CMatrix, ObservationData, SpectralMetadata, SpectralSystem, C64};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Mode {
    pub re: f64,
    pub im: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub obs: Option<Vec<[f64; 2]>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    pub re_spectrum_unbounded: bool,
    pub compact_resolvent: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub label: String,
    pub output_dim: usize,
    pub modes: Vec<Mode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cgram: Option<Vec<Vec<[f64; 2]>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

fn pair(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

fn complex(p: [f64; 2]) -> C64 {
    C64::new(p[0], p[1])
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

impl Scenario {
    pub fn from_system(sys: &SpectralSystem) -> Self {
        let (output_dim, obs, cgram) = match &sys.observation {
            ObservationData::Vectors(v) => {
                let p = v.first().map_or(0, Vec::len);
                let obs: Vec<Option<Vec<[f64; 2]>>> =
                    v.iter().map(|o| Some(o.iter().copied().map(pair).collect())).collect();
                (p, obs, None)
            }
            ObservationData::CGram(g) => {
                let n = g.dim();
                let rows = (0..n).map(|i| g.row(i).iter().copied().map(pair).collect()).collect();
                (0, vec![None; n], Some(rows))
            }
        };
        let modes = sys
            .eigenvalues
            .iter()
            .zip(obs)
            .map(|(l, obs)| Mode { re: l.re, im: l.im, obs })
            .collect();
        Scenario {
            label: sys.label.clone(),
            output_dim,
            modes,
            cgram,
            metadata: sys.metadata.map(|m| Metadata {
                re_spectrum_unbounded: m.re_spectrum_unbounded,
                compact_resolvent: m.compact_resolvent,
            }),
        }
    }

    /// Checks the schema invariants; error messages name the offending field.
    pub fn check(&self) -> Result<(), CliError> {
        if self.modes.is_empty() {
            return Err(invalid("modes: at least one mode is required"));
        }
        let n = self.modes.len();
        let with_obs = self.modes.iter().filter(|m| m.obs.is_some()).count();
        match (&self.cgram, with_obs) {
            (Some(_), k) if k > 0 => {
                return Err(invalid("modes[].obs and cgram are mutually exclusive"));
            }
            (None, k) if k < n => {
                let i = self.modes.iter().position(|m| m.obs.is_none()).unwrap_or(0);
                return Err(invalid(format!("modes[{i}].obs: missing (required when cgram is absent)")));
            }
            _ => {}
        }
        for (i, m) in self.modes.iter().enumerate() {
            if !m.re.is_finite() || !m.im.is_finite() {
                return Err(invalid(format!("modes[{i}]: eigenvalue must be finite")));
            }
        }
        match &self.cgram {
            Some(rows) => {
                if self.output_dim != 0 {
                    return Err(invalid("output_dim: must be 0 when cgram is given"));
                }
                if rows.len() != n {
                    return Err(invalid(format!("cgram: expected {n} rows, found {}", rows.len())));
                }
                for (i, r) in rows.iter().enumerate() {
                    if r.len() != n {
                        return Err(invalid(format!("cgram[{i}]: expected {n} entries, found {}", r.len())));
                    }
                }
            }
            None => {
                if self.output_dim == 0 {
                    return Err(invalid("output_dim: must be positive when modes carry obs"));
                }
                for (i, m) in self.modes.iter().enumerate() {
                    let len = m.obs.as_ref().map_or(0, Vec::len);
                    if len != self.output_dim {
                        return Err(invalid(format!(
                            "modes[{i}].obs: expected {} entries (output_dim), found {len}",
                            self.output_dim
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_system(&self) -> Result<SpectralSystem, CliError> {
        self.check()?;
        let eigenvalues = self.modes.iter().map(|m| C64::new(m.re, m.im)).collect();
        let observation = match &self.cgram {
            Some(rows) => {
                let n = rows.len();
                ObservationData::CGram(CMatrix::from_fn(n, |i, j| complex(rows[i][j])))
            }
            None => ObservationData::Vectors(
                self.modes
                    .iter()
                    .map(|m| m.obs.iter().flatten().copied().map(complex).collect())
                    .collect(),
            ),
        };
        Ok(SpectralSystem {
            label: self.label.clone(),
            eigenvalues,
            observation,
            metadata: self.metadata.map(|m| SpectralMetadata {
                re_spectrum_unbounded: m.re_spectrum_unbounded,
                compact_resolvent: m.compact_resolvent,
            }),
            injective_required: false,
        })
    }

    pub fn to_json(&self) -> Result<String, CliError> {
        let mut s = serde_json::to_string_pretty(self).map_err(|e| invalid(format!("cannot serialize: {e}")))?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let sc: Scenario = serde_json::from_str(text).map_err(|e| invalid(format!("scenario: {e}")))?;
        sc.check()?;
        Ok(sc)
    }
}

pub fn build_demo(demo: Demo, n: usize) -> Result<Scenario, CliError> {
    Ok(Scenario::from_system(&demo.build(n)?))
}

pub fn load_scenario(path: &Path) -> Result<Scenario, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io { path: path.to_owned(), source: e })?;
    Scenario::from_json(&text)
}

pub fn save_scenario(scenario: &Scenario, path: &Path) -> Result<(), CliError> {
    scenario.check()?;
    fs::write(path, scenario.to_json()?).map_err(|e| CliError::Io { path: path.to_owned(), source: e })
}
