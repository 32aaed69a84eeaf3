//! Run configuration: JSON schema, defaults, validation, resolution.
//!
//! A config file is a single JSON object with `hamiltonian`,
//! `initial_state`, `noise`, `integration` and `analysis` sections.
//! Unknown keys are rejected at every level so a misspelled field can
//! never silently fall back to a default. Integration and analysis
//! settings are optional; their defaults depend on the Hamiltonian
//! (two frame-rotation periods of horizon, a coefficient grid that
//! resolves the drive period), so they are filled in by [`RunConfig::resolved`],
//! not by serde.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{HamiltonianParams, InitialStateSpec, NoiseSpec};
use crate::observables::default_threshold;

fn default_delta() -> f64 {
    1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HamiltonianSection {
    /// Level splitting. Fixed to 1.0: it defines the unit system.
    #[serde(default = "default_delta")]
    pub delta: f64,
    pub omega_r: f64,
    #[serde(default)]
    pub phi_r: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialStateSection {
    pub theta: f64,
    #[serde(default)]
    pub phi: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct IntegrationSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h_coeff: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output_stride: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AnalysisSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub hamiltonian: HamiltonianSection,
    pub initial_state: InitialStateSection,
    #[serde(default)]
    pub noise: NoiseSpec,
    #[serde(default)]
    pub integration: IntegrationSection,
    #[serde(default)]
    pub analysis: AnalysisSection,
}

/// A validated run with every default filled in.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedRun {
    pub hamiltonian: HamiltonianParams,
    pub initial_state: InitialStateSpec,
    pub noise: NoiseSpec,
    pub t_max: f64,
    pub dt: f64,
    pub h_coeff: f64,
    pub output_stride: usize,
    pub threshold: f64,
    /// Non-fatal validation notes (for example a 1/f channel whose
    /// correlation decays slower than the noise strength).
    pub warnings: Vec<String>,
}

pub fn default_dt() -> f64 {
    1e-3
}

/// Default coefficient grid: fine enough for the bath cutoff scales used
/// in practice and never coarser than 1/200 of the frame-rotation period.
pub fn default_h_coeff(h: &HamiltonianParams) -> f64 {
    (0.002 / h.delta).min(h.frame_period() / 200.0)
}

pub fn default_t_max(h: &HamiltonianParams) -> f64 {
    2.0 * h.frame_period()
}

pub fn default_output_stride() -> usize {
    10
}

impl RunConfig {
    pub fn from_json_str(text: &str) -> Result<RunConfig> {
        serde_json::from_str(text).map_err(|e| Error::config(format!("config parse: {e}")))
    }

    pub fn to_json_string(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("config serializes");
        out.push('\n');
        out
    }

    /// Validate every section and fill in the Hamiltonian-dependent
    /// defaults.
    pub fn resolved(&self) -> Result<ResolvedRun> {
        if self.hamiltonian.delta != 1.0 {
            return Err(Error::config(format!(
                "hamiltonian.delta: fixed to 1.0 (it sets the time unit), got {}",
                self.hamiltonian.delta
            )));
        }
        let hamiltonian = HamiltonianParams::new(
            self.hamiltonian.delta,
            self.hamiltonian.omega_r,
            self.hamiltonian.phi_r,
        )?;
        let initial_state = InitialStateSpec::new(self.initial_state.theta, self.initial_state.phi)?;
        let warnings = self.noise.validate()?;

        let t_max = self.integration.t_max.unwrap_or_else(|| default_t_max(&hamiltonian));
        if !(t_max.is_finite() && t_max > 0.0) {
            return Err(Error::config(format!("integration.t_max: must be > 0, got {t_max}")));
        }
        let dt = self.integration.dt.unwrap_or_else(default_dt);
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::config(format!("integration.dt: must be > 0, got {dt}")));
        }
        let h_coeff = self.integration.h_coeff.unwrap_or_else(|| default_h_coeff(&hamiltonian));
        if !(h_coeff.is_finite() && h_coeff > 0.0) {
            return Err(Error::config(format!("integration.h_coeff: must be > 0, got {h_coeff}")));
        }
        let max_h = hamiltonian.frame_period() / 20.0;
        if h_coeff > max_h {
            return Err(Error::config(format!(
                "integration.h_coeff: {h_coeff} is coarser than a twentieth of the \
                 frame-rotation period ({max_h:.6e})"
            )));
        }
        if dt > h_coeff {
            return Err(Error::config(format!(
                "integration.dt: {dt} exceeds the coefficient grid step integration.h_coeff = \
                 {h_coeff}; the integrator would leave the tabulated resolution"
            )));
        }
        let output_stride = self.integration.output_stride.unwrap_or_else(default_output_stride);
        if output_stride == 0 {
            return Err(Error::config("integration.output_stride: must be >= 1"));
        }
        let threshold = self.analysis.threshold.unwrap_or_else(default_threshold);
        if !(threshold.is_finite() && threshold > 0.0 && threshold < 1.0) {
            return Err(Error::config(format!(
                "analysis.threshold: must lie strictly between 0 and 1, got {threshold}"
            )));
        }

        Ok(ResolvedRun {
            hamiltonian,
            initial_state,
            noise: self.noise,
            t_max,
            dt,
            h_coeff,
            output_stride,
            threshold,
            warnings,
        })
    }
}

/// A parameter scan: one base run plus a dotted path (`noise.z.gamma`)
/// into its JSON form and the list of values to substitute there.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub base: RunConfig,
    pub path: String,
    pub values: Vec<f64>,
}

impl SweepConfig {
    pub fn from_json_str(text: &str) -> Result<SweepConfig> {
        let sweep: SweepConfig = serde_json::from_str(text)
            .map_err(|e| Error::config(format!("sweep config parse: {e}")))?;
        sweep.base.resolved()?;
        sweep.with_value(sweep.values.first().copied().unwrap_or(0.0))?;
        Ok(sweep)
    }

    /// The base config with the swept field replaced by `value`. The path
    /// must land on a numeric leaf; the substituted document is re-parsed
    /// under the full schema so a sweep can never construct a config that
    /// would not load from disk.
    pub fn with_value(&self, value: f64) -> Result<RunConfig> {
        if !value.is_finite() {
            return Err(Error::config(format!("sweep value must be finite, got {value}")));
        }
        let mut tree = serde_json::to_value(&self.base)
            .map_err(|e| Error::config(format!("sweep base serialization: {e}")))?;
        let pointer: String =
            self.path.split('.').fold(String::new(), |acc, seg| acc + "/" + seg);
        let leaf = tree.pointer_mut(&pointer).ok_or_else(|| {
            Error::config(format!("sweep path `{}` does not exist in the base config", self.path))
        })?;
        if !leaf.is_number() {
            return Err(Error::config(format!(
                "sweep path `{}` is not a numeric field (found {leaf})",
                self.path
            )));
        }
        *leaf = serde_json::Value::from(value);
        serde_json::from_value(tree)
            .map_err(|e| Error::config(format!("sweep point {value} at `{}`: {e}", self.path)))
    }
}
