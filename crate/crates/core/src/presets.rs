//! Named parameter sets for the reference scenarios.
//!
//! Every preset drives the qubit at omega_r = 0.1 with phi_r = 0 and
//! differs only in the initial polar angle, the noise channels, and
//! (for the slow 1/f scenarios) the time horizon. Integration fields
//! left unset fall back to the standard defaults at resolve time.

use std::f64::consts::FRAC_PI_3;

use crate::config::{
    AnalysisSection, HamiltonianSection, InitialStateSection, IntegrationSection, RunConfig,
};
use crate::error::{Error, Result};
use crate::model::{NoiseModel, NoiseSpec};

pub const PRESET_NAMES: [&str; 15] = [
    "fig1_high_t",
    "fig1_zero_t",
    "fig2_high_t",
    "fig2_zero_t_002",
    "fig2_zero_t_0002",
    "fig3_long",
    "fig3_trans",
    "fig3_both",
    "fig4_long",
    "fig4_trans",
    "fig4_both",
    "fig5_weak",
    "fig5_strong",
    "fig7_long",
    "fig7_trans",
];

fn base(theta: f64, noise: NoiseSpec, t_max: Option<f64>) -> RunConfig {
    RunConfig {
        hamiltonian: HamiltonianSection { delta: 1.0, omega_r: 0.1, phi_r: 0.0 },
        initial_state: InitialStateSection { theta, phi: 0.0 },
        noise,
        integration: IntegrationSection { t_max, ..IntegrationSection::default() },
        analysis: AnalysisSection::default(),
    }
}

fn on_axes(z: NoiseModel, x: NoiseModel) -> NoiseSpec {
    NoiseSpec { z, x, y: NoiseModel::None }
}

pub fn preset(name: &str) -> Result<RunConfig> {
    let theta_fig12 = 2.0 * FRAC_PI_3;
    let high_t = |gamma| NoiseModel::OhmicHighT { gamma, temperature: 100.0 };
    let zero_t = |gamma| NoiseModel::OhmicZeroT { gamma, cutoff: 100.0 };
    let cfg = match name {
        "fig1_high_t" => base(theta_fig12, on_axes(high_t(0.002), high_t(0.002)), None),
        "fig1_zero_t" => base(theta_fig12, on_axes(zero_t(0.002), zero_t(0.002)), None),
        "fig2_high_t" => base(theta_fig12, on_axes(high_t(0.02), high_t(0.02)), None),
        "fig2_zero_t_002" => base(theta_fig12, on_axes(zero_t(0.02), zero_t(0.02)), None),
        "fig2_zero_t_0002" => base(theta_fig12, on_axes(zero_t(0.002), zero_t(0.002)), None),
        "fig3_long" => base(FRAC_PI_3, on_axes(high_t(0.02), NoiseModel::None), None),
        "fig3_trans" => base(FRAC_PI_3, on_axes(NoiseModel::None, high_t(0.02)), None),
        "fig3_both" => base(FRAC_PI_3, on_axes(high_t(0.02), high_t(0.02)), None),
        "fig4_long" => base(FRAC_PI_3, on_axes(zero_t(0.02), NoiseModel::None), None),
        "fig4_trans" => base(FRAC_PI_3, on_axes(NoiseModel::None, zero_t(0.02)), None),
        "fig4_both" => base(FRAC_PI_3, on_axes(zero_t(0.02), zero_t(0.02)), None),
        "fig5_weak" => {
            let n = NoiseModel::OneOverF { sigma: 0.1, zeta: 0.2 };
            base(FRAC_PI_3, on_axes(n, n), Some(30.0))
        }
        "fig5_strong" => {
            let n = NoiseModel::OneOverF { sigma: 0.5, zeta: 0.75 };
            base(FRAC_PI_3, on_axes(n, n), Some(12.0))
        }
        "fig7_long" => {
            let n = NoiseModel::OneOverF { sigma: 0.2, zeta: 0.5 };
            base(FRAC_PI_3, on_axes(n, NoiseModel::None), Some(20.0))
        }
        "fig7_trans" => {
            let n = NoiseModel::OneOverF { sigma: 0.2, zeta: 0.5 };
            base(FRAC_PI_3, on_axes(NoiseModel::None, n), Some(20.0))
        }
        other => {
            return Err(Error::config(format!(
                "unknown preset `{other}`; available presets: {}",
                PRESET_NAMES.join(", ")
            )));
        }
    };
    Ok(cfg)
}
