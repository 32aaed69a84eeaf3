//! Non-unitary dynamics of a driven two-level system coupled to
//! longitudinal and transverse noise.
//!
//! The pipeline has three stages. [`coefficients`] tabulates the
//! time-dependent diffusion and dissipation coefficients of a
//! perturbative, time-local master equation by pairing each bath's noise
//! kernel ([`kernels`]) with the closed-form interaction-frame rotation
//! ([`frame`]). [`evolver`] integrates the resulting Bloch-vector
//! equation of motion with a fixed-step fourth-order scheme.
//! [`observables`] extracts coherence series, an envelope-threshold
//! decoherence time, and the matching analytic estimates. [`config`],
//! [`presets`] and [`driver`] wrap the stages behind a JSON run
//! description, named reference scenarios, and parallel parameter sweeps.

pub mod coefficients;
pub mod config;
pub mod driver;
pub mod error;
pub mod evolver;
pub mod frame;
pub mod kernels;
pub mod model;
pub mod observables;
pub mod presets;
pub mod quad;

pub use coefficients::{build_coefficient_table, coefficients_at, CoefficientSet, CoefficientTable};
pub use config::{ResolvedRun, RunConfig, SweepConfig};
pub use driver::{
    coefficients_csv, execute_run, execute_sweep, run_document, sweep_csv, trajectory_csv,
    RunOutcome, SweepRecord, SweepSummary,
};
pub use error::{Error, Result};
pub use evolver::{assemble_generator, integrate, rhs_dense, BlochGenerator, Trajectory};
pub use frame::{frame_rotation, FrameRotation};
pub use kernels::{
    high_t_diffusion_constant, noise_kernel_ohmic_finite_t, noise_kernel_ohmic_zero_t,
    noise_kernel_one_over_f, ohmic_dissipation_rates, ohmic_spectral_density, DissipationRates,
};
pub use model::{
    Axis, HamiltonianParams, InitialStateSpec, NoiseChannelSpec, NoiseModel, NoiseSpec, QubitState,
};
pub use observables::{
    analytic_td_estimate, bloch_norm_series, coherence_series, decoherence_report,
    default_threshold, envelope_decoherence_time, purity_series, AnalyticTdKind,
    DecoherenceReport, EnvelopeAnalysis,
};
pub use presets::{preset, PRESET_NAMES};
pub use quad::{integrate as quad_integrate, oscillatory_panels, QuadOptions, Quadrature};
