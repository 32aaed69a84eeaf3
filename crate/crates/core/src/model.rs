//! Core parameter and state types.
//!
//! The qubit lives in the rotating frame with effective Hamiltonian
//!
//! ```text
//!     H_eff = (1/2) (Delta sigma_z + Omega_x sigma_x + Omega_y sigma_y),
//!     Omega_x = Omega_R cos(phi_R),   Omega_y = Omega_R sin(phi_R),
//! ```
//!
//! in units hbar = k_B = 1 with Delta the energy unit. States are kept as
//! Bloch vectors r with rho = (I + r.sigma)/2; the dense 2x2 density matrix
//! is a view used for validation and as an independent test oracle.

use nalgebra::{Matrix2, Vector3};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance for rejecting a Bloch vector as unphysical (|r| > 1 + this).
pub const BLOCH_NORM_SLACK: f64 = 1e-6;

/// Noise coupling axis: z is longitudinal (commutes with the qubit gap),
/// x and y are the two transverse directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Z,
    X,
    Y,
}

impl Axis {
    /// All axes in the fixed build order used by the coefficient tables.
    pub const ALL: [Axis; 3] = [Axis::Z, Axis::X, Axis::Y];

    /// Cartesian index (x = 0, y = 1, z = 2) used by Bloch-vector components.
    pub fn cartesian(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }
}

/// Drive/splitting parameters of the effective Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HamiltonianParams {
    /// Level splitting Delta; the unit of every energy in the simulation.
    pub delta: f64,
    /// Drive amplitude Omega_R >= 0.
    pub omega_r: f64,
    /// Drive phase phi_R.
    pub phi_r: f64,
}

impl HamiltonianParams {
    pub fn new(delta: f64, omega_r: f64, phi_r: f64) -> Result<Self> {
        if !delta.is_finite() || delta <= 0.0 {
            return Err(Error::config(format!(
                "hamiltonian.delta: must be finite and positive, got {delta}"
            )));
        }
        if !omega_r.is_finite() || omega_r < 0.0 {
            return Err(Error::config(format!(
                "hamiltonian.omega_r: must be finite and non-negative, got {omega_r}"
            )));
        }
        if !phi_r.is_finite() {
            return Err(Error::config("hamiltonian.phi_r: must be finite"));
        }
        Ok(Self { delta, omega_r, phi_r })
    }

    /// Transverse drive component Omega_x = Omega_R cos(phi_R).
    pub fn omega_x(&self) -> f64 {
        self.omega_r * self.phi_r.cos()
    }

    /// Transverse drive component Omega_y = Omega_R sin(phi_R).
    pub fn omega_y(&self) -> f64 {
        self.omega_r * self.phi_r.sin()
    }

    /// Precession vector h = (Omega_x, Omega_y, Delta); the unitary part of
    /// the Bloch equation is dr/dt = h x r.
    pub fn field(&self) -> Vector3<f64> {
        Vector3::new(self.omega_x(), self.omega_y(), self.delta)
    }

    /// Rotation period of the interaction-frame functions,
    /// pi / sqrt(Omega_R^2 + Delta^2) (their argument is 2 t sqrt(...)).
    pub fn frame_period(&self) -> f64 {
        std::f64::consts::PI / (self.omega_r.powi(2) + self.delta.powi(2)).sqrt()
    }
}

impl Default for HamiltonianParams {
    fn default() -> Self {
        Self { delta: 1.0, omega_r: 0.0, phi_r: 0.0 }
    }
}

/// Initial pure state |psi> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InitialStateSpec {
    /// Polar angle theta in [0, pi].
    pub theta: f64,
    /// Azimuthal angle phi.
    pub phi: f64,
}

impl InitialStateSpec {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !theta.is_finite() || !(0.0..=std::f64::consts::PI).contains(&theta) {
            return Err(Error::config(format!(
                "initial_state.theta: must lie in [0, pi], got {theta}"
            )));
        }
        if !phi.is_finite() {
            return Err(Error::config("initial_state.phi: must be finite"));
        }
        Ok(Self { theta, phi })
    }
}

/// Bloch vector of the pure state with the given angles:
/// r = (sin theta cos phi, sin theta sin phi, cos theta).
pub fn bloch_from_angles(spec: &InitialStateSpec) -> Vector3<f64> {
    let (st, ct) = (spec.theta.sin(), spec.theta.cos());
    Vector3::new(st * spec.phi.cos(), st * spec.phi.sin(), ct)
}

/// Stochastic environment attached to one coupling axis.
///
/// `sigma`/`zeta` describe a symmetric-telegraph (1/f-type) environment with
/// autocorrelation sigma^2 exp(-2 zeta |t|); the Ohmic variants describe a
/// bosonic bath with coupling `gamma` and ultraviolet cutoff `cutoff`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case", deny_unknown_fields)]
pub enum NoiseModel {
    /// No environment on this axis.
    None,
    /// Ohmic bath in the high-temperature limit: constant diffusion
    /// gamma * temperature, no anomalous diffusion.
    OhmicHighT { gamma: f64, temperature: f64 },
    /// Ohmic bath at finite temperature; the diffusion kernel is evaluated
    /// by quadrature.
    OhmicFiniteT { gamma: f64, cutoff: f64, temperature: f64 },
    /// Ohmic bath at zero temperature (closed-form kernel).
    OhmicZeroT { gamma: f64, cutoff: f64 },
    /// 1/f-type environment: exponentially correlated noise of strength
    /// sigma and switching rate zeta. Contributes no dissipation.
    OneOverF { sigma: f64, zeta: f64 },
}

impl NoiseModel {
    /// Ohmic coupling strength, zero for non-Ohmic models. This is the
    /// gamma_a that enters the (temperature-independent) dissipation rates.
    pub fn ohmic_gamma(&self) -> f64 {
        match *self {
            NoiseModel::OhmicHighT { gamma, .. }
            | NoiseModel::OhmicFiniteT { gamma, .. }
            | NoiseModel::OhmicZeroT { gamma, .. } => gamma,
            _ => 0.0,
        }
    }
}

impl std::fmt::Display for NoiseModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            NoiseModel::None => write!(f, "none"),
            NoiseModel::OhmicHighT { gamma, temperature } => {
                write!(f, "ohmic_high_t(gamma={gamma}, temperature={temperature})")
            }
            NoiseModel::OhmicFiniteT { gamma, cutoff, temperature } => {
                write!(f, "ohmic_finite_t(gamma={gamma}, cutoff={cutoff}, temperature={temperature})")
            }
            NoiseModel::OhmicZeroT { gamma, cutoff } => {
                write!(f, "ohmic_zero_t(gamma={gamma}, cutoff={cutoff})")
            }
            NoiseModel::OneOverF { sigma, zeta } => {
                write!(f, "one_over_f(sigma={sigma}, zeta={zeta})")
            }
        }
    }
}

/// One noise channel: an axis plus the environment model coupled to it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseChannelSpec {
    pub axis: Axis,
    pub model: NoiseModel,
}

impl NoiseChannelSpec {
    pub fn none(axis: Axis) -> Self {
        Self { axis, model: NoiseModel::None }
    }

    /// Validate parameter ranges. Hard violations are errors; the weak-memory
    /// guideline zeta > sigma for 1/f noise only produces a warning string.
    pub fn validate(&self) -> Result<Vec<String>> {
        let path = match self.axis {
            Axis::Z => "noise.z",
            Axis::X => "noise.x",
            Axis::Y => "noise.y",
        };
        let mut warnings = Vec::new();
        let check = |ok: bool, msg: String| if ok { Ok(()) } else { Err(Error::Config(msg)) };
        match self.model {
            NoiseModel::None => {}
            NoiseModel::OhmicHighT { gamma, temperature } => {
                check(gamma.is_finite() && gamma >= 0.0,
                    format!("{path}.gamma: must be finite and >= 0, got {gamma}"))?;
                check(temperature.is_finite() && temperature > 0.0,
                    format!("{path}.temperature: must be finite and > 0, got {temperature}"))?;
            }
            NoiseModel::OhmicFiniteT { gamma, cutoff, temperature } => {
                check(gamma.is_finite() && gamma >= 0.0,
                    format!("{path}.gamma: must be finite and >= 0, got {gamma}"))?;
                check(cutoff.is_finite() && cutoff > 0.0,
                    format!("{path}.cutoff: must be finite and > 0, got {cutoff}"))?;
                check(temperature.is_finite() && temperature > 0.0,
                    format!("{path}.temperature: must be finite and > 0, got {temperature}"))?;
            }
            NoiseModel::OhmicZeroT { gamma, cutoff } => {
                check(gamma.is_finite() && gamma >= 0.0,
                    format!("{path}.gamma: must be finite and >= 0, got {gamma}"))?;
                check(cutoff.is_finite() && cutoff > 0.0,
                    format!("{path}.cutoff: must be finite and > 0, got {cutoff}"))?;
            }
            NoiseModel::OneOverF { sigma, zeta } => {
                check(sigma.is_finite() && sigma >= 0.0,
                    format!("{path}.sigma: must be finite and >= 0, got {sigma}"))?;
                check(zeta.is_finite() && zeta > 0.0,
                    format!("{path}.zeta: must be finite and > 0, got {zeta}"))?;
                if sigma > 0.0 && zeta <= sigma {
                    warnings.push(format!(
                        "{path}: zeta = {zeta} <= sigma = {sigma}; the weak-memory regime \
                         assumes zeta > sigma, results may carry memory effects"
                    ));
                }
            }
        }
        Ok(warnings)
    }
}

/// The full environment: one model per coupling axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NoiseSpec {
    pub z: NoiseModel,
    pub x: NoiseModel,
    pub y: NoiseModel,
}

impl Default for NoiseSpec {
    fn default() -> Self {
        Self { z: NoiseModel::None, x: NoiseModel::None, y: NoiseModel::None }
    }
}

impl NoiseSpec {
    /// Channels in the fixed (z, x, y) build order.
    pub fn channels(&self) -> [NoiseChannelSpec; 3] {
        [
            NoiseChannelSpec { axis: Axis::Z, model: self.z },
            NoiseChannelSpec { axis: Axis::X, model: self.x },
            NoiseChannelSpec { axis: Axis::Y, model: self.y },
        ]
    }

    pub fn model(&self, axis: Axis) -> &NoiseModel {
        match axis {
            Axis::Z => &self.z,
            Axis::X => &self.x,
            Axis::Y => &self.y,
        }
    }

    pub fn is_noise_free(&self) -> bool {
        self.channels().iter().all(|c| c.model == NoiseModel::None)
    }

    /// Validate all channels; collects warnings, fails on the first hard error.
    pub fn validate(&self) -> Result<Vec<String>> {
        let mut warnings = Vec::new();
        for ch in self.channels() {
            warnings.extend(ch.validate()?);
        }
        Ok(warnings)
    }
}

/// Qubit state, canonically a Bloch vector (trace is 1 by construction).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    bloch: Vector3<f64>,
}

impl QubitState {
    /// Build from a Bloch vector, rejecting clearly unphysical input
    /// (|r| > 1 + 1e-6 or non-finite components).
    pub fn from_bloch(r: Vector3<f64>) -> Result<Self> {
        if !r.iter().all(|c| c.is_finite()) {
            return Err(Error::config("bloch vector: components must be finite"));
        }
        let n = r.norm();
        if n > 1.0 + BLOCH_NORM_SLACK {
            return Err(Error::config(format!(
                "bloch vector: |r| = {n} exceeds 1 + {BLOCH_NORM_SLACK}"
            )));
        }
        Ok(Self { bloch: r })
    }

    /// Build without the physicality gate. Used by the integrator, whose
    /// output may transiently leave the Bloch ball (that excursion is a
    /// monitored diagnostic, not an error).
    pub(crate) fn from_bloch_unchecked(r: Vector3<f64>) -> Self {
        Self { bloch: r }
    }

    pub fn from_angles(spec: &InitialStateSpec) -> Self {
        // Unit vector by construction; skip the norm gate.
        Self { bloch: bloch_from_angles(spec) }
    }

    pub fn bloch(&self) -> Vector3<f64> {
        self.bloch
    }

    /// Density matrix rho = (I + r.sigma)/2.
    pub fn density(&self) -> Matrix2<Complex64> {
        density_from_bloch(&self.bloch)
    }

    /// Recover the state from a density matrix, validating trace one,
    /// Hermiticity and positivity within 1e-12 / the Bloch-norm slack.
    pub fn from_density(rho: &Matrix2<Complex64>) -> Result<Self> {
        let tr = rho[(0, 0)] + rho[(1, 1)];
        if (tr.re - 1.0).abs() > 1e-12 || tr.im.abs() > 1e-12 {
            return Err(Error::config(format!("density matrix: trace must be 1, got {tr}")));
        }
        let herm_defect = (rho[(0, 1)] - rho[(1, 0)].conj()).norm()
            .max(rho[(0, 0)].im.abs())
            .max(rho[(1, 1)].im.abs());
        if herm_defect > 1e-12 {
            return Err(Error::config(format!(
                "density matrix: not Hermitian (defect {herm_defect:.3e})"
            )));
        }
        let r = Vector3::new(
            2.0 * rho[(0, 1)].re,
            -2.0 * rho[(0, 1)].im,
            rho[(0, 0)].re - rho[(1, 1)].re,
        );
        Self::from_bloch(r)
    }

    /// Off-diagonal element rho_01 = (r_x - i r_y)/2.
    pub fn rho01(&self) -> Complex64 {
        Complex64::new(self.bloch.x / 2.0, -self.bloch.y / 2.0)
    }

    /// Coherence |rho_01| = sqrt(r_x^2 + r_y^2)/2.
    pub fn coherence(&self) -> f64 {
        self.bloch.xy().norm() / 2.0
    }

    /// Purity Tr(rho^2) = (1 + |r|^2)/2.
    pub fn purity(&self) -> f64 {
        (1.0 + self.bloch.norm_squared()) / 2.0
    }
}

/// rho = (I + r.sigma)/2 as a dense matrix, same physicality gate as
/// [`QubitState::from_bloch`].
pub fn density_from_bloch_checked(r: &Vector3<f64>) -> Result<Matrix2<Complex64>> {
    QubitState::from_bloch(*r).map(|s| s.density())
}

/// rho = (I + r.sigma)/2 without validation.
pub fn density_from_bloch(r: &Vector3<f64>) -> Matrix2<Complex64> {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    Matrix2::new(
        c(0.5 * (1.0 + r.z), 0.0),
        c(0.5 * r.x, -0.5 * r.y),
        c(0.5 * r.x, 0.5 * r.y),
        c(0.5 * (1.0 - r.z), 0.0),
    )
}

/// The Pauli matrices indexed as [sigma_x, sigma_y, sigma_z].
pub fn pauli_matrices() -> [Matrix2<Complex64>; 3] {
    let c = Complex64::new;
    [
        Matrix2::new(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)),
        Matrix2::new(c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)),
        Matrix2::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)),
    ]
}
