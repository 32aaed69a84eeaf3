//! Environment correlation kernels.
//!
//! Each noise channel is characterized by a symmetrized correlation
//! ("noise") kernel nu_a(t), which drives the diffusion coefficients, and a
//! dissipation kernel whose Ohmic form is a delta-derivative and therefore
//! collapses to six constant rates. Supported environments:
//!
//! * Ohmic bath, high-temperature limit: nu is delta-correlated and the
//!   diffusion coefficient is the constant gamma * T (no pointwise kernel).
//! * Ohmic bath, zero temperature: closed form
//!   nu(t) = gamma (Lt sin Lt + cos Lt - 1)/t^2 with cutoff L.
//! * Ohmic bath, finite temperature: nu(t) = int_0^L gamma w cos(wt)
//!   coth(w/(2T)) dw by adaptive quadrature. The sharp integration band
//!   [0, L] is the form whose T -> 0 limit reproduces the zero-temperature
//!   closed form above; `ohmic_spectral_density` keeps the exponential
//!   cutoff for spectral inspection.
//! * 1/f-type environment: nu(t) = sigma^2 exp(-2 zeta |t|), with zero
//!   dissipation kernel.

use crate::error::{Error, Result};
use crate::model::{HamiltonianParams, NoiseModel};
use crate::quad::{self, QuadOptions};

/// Ohmic spectral density with exponential ultraviolet cutoff,
/// J(w) = gamma w exp(-w/cutoff).
pub fn ohmic_spectral_density(omega: f64, gamma: f64, cutoff: f64) -> Result<f64> {
    if omega < 0.0 {
        return Err(Error::config(format!("spectral density: omega must be >= 0, got {omega}")));
    }
    Ok(gamma * omega * (-omega / cutoff).exp())
}

/// Constant diffusion coefficient of the delta-correlated high-temperature
/// Ohmic kernel: d = gamma * temperature, no anomalous-diffusion part.
pub fn high_t_diffusion_constant(gamma: f64, temperature: f64) -> f64 {
    gamma * temperature
}

/// Zero-temperature Ohmic noise kernel. Even in t; the removable 0/0 at
/// t = 0 is evaluated by Taylor expansion below |cutoff * t| = 1e-4.
pub fn noise_kernel_ohmic_zero_t(t: f64, gamma: f64, cutoff: f64) -> f64 {
    let x = cutoff * t;
    if x.abs() < 1e-4 {
        let x2 = x * x;
        return gamma * cutoff * cutoff * (0.5 - x2 / 8.0 + x2 * x2 / 144.0);
    }
    gamma * (t * cutoff * x.sin() + x.cos() - 1.0) / (t * t)
}

/// Finite-temperature Ohmic noise kernel by adaptive quadrature over the
/// band [0, cutoff]. coth(w/2T) is clamped to 1 once w/T > 40 and the
/// w -> 0 limit of the integrand is 2 gamma T.
pub fn noise_kernel_ohmic_finite_t(t: f64, gamma: f64, cutoff: f64, temperature: f64) -> Result<f64> {
    if temperature <= 0.0 {
        return Err(Error::config(format!(
            "finite-temperature kernel: temperature must be > 0, got {temperature}"
        )));
    }
    let beta = 1.0 / temperature;
    let integrand = move |w: f64| {
        if w <= 0.0 {
            return 2.0 * gamma * temperature;
        }
        let coth = if beta * w > 40.0 { 1.0 } else { (0.5 * beta * w).tanh().recip() };
        gamma * w * coth * (w * t).cos()
    };
    let opts = QuadOptions {
        initial_panels: quad::oscillatory_panels(0.0, cutoff, 2.0 * std::f64::consts::PI / t.abs().max(1e-12)),
        ..QuadOptions::default()
    };
    quad::integrate(integrand, 0.0, cutoff, &opts)
        .map(|q| q.value)
        .map_err(|e| Error::numerical(format!("finite-temperature kernel at t = {t}: {e}")))
}

/// 1/f noise kernel sigma^2 exp(-2 zeta |t|).
pub fn noise_kernel_one_over_f(t: f64, sigma: f64, zeta: f64) -> f64 {
    sigma * sigma * (-2.0 * zeta * t.abs()).exp()
}

/// Pointwise kernel for the models whose diffusion coefficients are built
/// by cumulative integration. High-T (delta-correlated) and noise-free
/// channels have no pointwise kernel and are handled by their closed forms.
pub(crate) fn stationary_noise_kernel(model: &NoiseModel, t: f64) -> Result<f64> {
    match *model {
        NoiseModel::OhmicZeroT { gamma, cutoff } => Ok(noise_kernel_ohmic_zero_t(t, gamma, cutoff)),
        NoiseModel::OhmicFiniteT { gamma, cutoff, temperature } => {
            noise_kernel_ohmic_finite_t(t, gamma, cutoff, temperature)
        }
        NoiseModel::OneOverF { sigma, zeta } => Ok(noise_kernel_one_over_f(t, sigma, zeta)),
        NoiseModel::None | NoiseModel::OhmicHighT { .. } => Err(Error::config(
            "stationary_noise_kernel: model is handled by closed-form coefficients",
        )),
    }
}

/// The six constant dissipation rates. They are temperature-independent and
/// shared by every Ohmic variant; 1/f channels contribute nothing.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DissipationRates {
    pub g_xy: f64,
    pub g_xz: f64,
    pub g_zx: f64,
    pub g_zy: f64,
    pub g_yx: f64,
    pub g_yz: f64,
}

/// Dissipation rates for Ohmic couplings gamma_z, gamma_x, gamma_y. Each
/// rate is gamma_a times the t = 0 slope of the corresponding frame
/// function (see the property test below).
pub fn ohmic_dissipation_rates(
    h: &HamiltonianParams,
    gamma_z: f64,
    gamma_x: f64,
    gamma_y: f64,
) -> DissipationRates {
    let (ox, oy, d) = (h.omega_x(), h.omega_y(), h.delta);
    DissipationRates {
        g_xy: 2.0 * d * gamma_x,
        g_xz: -2.0 * gamma_x * oy,
        g_zx: 2.0 * gamma_z * oy,
        g_zy: -2.0 * ox * gamma_z,
        g_yx: -2.0 * gamma_y * d,
        g_yz: 2.0 * gamma_y * ox,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::frame_rotation;
    use crate::model::Axis;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    #[test]
    fn spectral_density_shape() {
        let (g, l) = (0.002, 100.0);
        assert_eq!(ohmic_spectral_density(0.0, g, l).unwrap(), 0.0);
        // maximum at the cutoff, value gamma * cutoff / e
        let at_cutoff = ohmic_spectral_density(l, g, l).unwrap();
        assert_relative_eq!(at_cutoff, g * l / std::f64::consts::E, max_relative = 1e-14);
        assert!(ohmic_spectral_density(l - 1.0, g, l).unwrap() < at_cutoff);
        assert!(ohmic_spectral_density(l + 1.0, g, l).unwrap() < at_cutoff);
        assert!(ohmic_spectral_density(-1.0, g, l).is_err());
        assert_eq!(ohmic_spectral_density(3.0, 0.0, l).unwrap(), 0.0);
    }

    #[test]
    fn zero_t_kernel_against_direct_quadrature() {
        // nu(t) = int_0^L gamma w cos(wt) dw has the closed form implemented;
        // check against independent numerical integration.
        let (g, l) = (0.7, 3.0);
        for &t in &[0.05, 0.3, 1.0, 2.5, 7.0] {
            let direct = quad::integrate(
                |w| g * w * (w * t).cos(),
                0.0,
                l,
                &QuadOptions {
                    initial_panels: quad::oscillatory_panels(0.0, l, 2.0 * std::f64::consts::PI / t),
                    ..QuadOptions::default()
                },
            )
            .unwrap()
            .value;
            assert_abs_diff_eq!(noise_kernel_ohmic_zero_t(t, g, l), direct, epsilon = 1e-9);
        }
    }

    #[test]
    fn zero_t_kernel_small_time_limit_and_branch_continuity() {
        let (g, l) = (1.3, 2.0);
        assert_relative_eq!(
            noise_kernel_ohmic_zero_t(1e-9, g, l),
            g * l * l / 2.0,
            max_relative = 1e-12
        );
        // Across the Taylor switch at |Lt| = 1e-4 the two branches agree.
        let below = noise_kernel_ohmic_zero_t(0.99e-4 / l, g, l);
        let above = noise_kernel_ohmic_zero_t(1.01e-4 / l, g, l);
        assert_relative_eq!(below, above, max_relative = 1e-7);
    }

    #[test]
    fn zero_t_kernel_at_cutoff_times_pi() {
        // Lt = pi: sin term vanishes, nu = -2 gamma L^2 / pi^2.
        let (g, l) = (0.31, 4.0);
        let t = std::f64::consts::PI / l;
        assert_relative_eq!(
            noise_kernel_ohmic_zero_t(t, g, l),
            -2.0 * g * l * l / std::f64::consts::PI.powi(2),
            max_relative = 1e-12
        );
    }

    #[test]
    fn finite_t_kernel_reaches_zero_t_limit() {
        let (g, l) = (1.0, 1.0);
        for &x in &[0.1, 0.7, 3.0, 9.0] {
            let t = x / l;
            let cold = noise_kernel_ohmic_finite_t(t, g, l, 1e-6).unwrap();
            let exact = noise_kernel_ohmic_zero_t(t, g, l);
            assert_relative_eq!(cold, exact, max_relative = 1e-6);
        }
    }

    #[test]
    fn finite_t_kernel_at_t_zero_is_positive_and_grows_with_temperature() {
        let (g, l) = (0.5, 2.0);
        let cool = noise_kernel_ohmic_finite_t(0.0, g, l, 0.1).unwrap();
        let warm = noise_kernel_ohmic_finite_t(0.0, g, l, 10.0).unwrap();
        assert!(cool > 0.0);
        assert!(warm > cool);
        // T >> L: coth -> 2T/w, so nu(0) -> 2 gamma T L, linear in T.
        let hot = noise_kernel_ohmic_finite_t(0.0, g, l, 1e4).unwrap();
        assert_relative_eq!(hot, 2.0 * g * 1e4 * l, max_relative = 1e-3);
    }

    #[test]
    fn one_over_f_kernel_values() {
        let (s, z) = (0.5, 0.75);
        assert_eq!(noise_kernel_one_over_f(0.0, s, z), s * s);
        assert_relative_eq!(
            noise_kernel_one_over_f(1.0 / (2.0 * z), s, z),
            s * s / std::f64::consts::E,
            max_relative = 1e-14
        );
        assert_eq!(noise_kernel_one_over_f(3.0, 0.0, z), 0.0);
    }

    #[test]
    fn high_t_constant_examples() {
        assert_abs_diff_eq!(high_t_diffusion_constant(0.02, 100.0), 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(high_t_diffusion_constant(0.002, 100.0), 0.2, epsilon = 1e-15);
    }

    #[test]
    fn dissipation_rate_examples() {
        let h = HamiltonianParams::new(1.0, 0.1, 0.0).unwrap();
        let g = ohmic_dissipation_rates(&h, 0.0, 0.02, 0.0);
        assert_abs_diff_eq!(g.g_xy, 0.04, epsilon = 1e-15);
        // phi_r = 0 kills the Omega_y rates
        assert_eq!(g.g_xz, 0.0);
        assert_eq!(g.g_zx, 0.0);
        // gamma_y = 0 kills the y-channel rates
        assert_eq!(g.g_yx, 0.0);
        assert_eq!(g.g_yz, 0.0);
    }

    #[test]
    fn dissipation_rates_match_frame_slope_at_zero() {
        // g_{a,b} = gamma_a * d/dt [sigma_a(-t)]_b at t = 0, central difference.
        let h = HamiltonianParams::new(1.0, 0.73, 1.21).unwrap();
        let (gz, gx, gy) = (0.11, 0.23, 0.37);
        let rates = ohmic_dissipation_rates(&h, gz, gx, gy);
        let eps = 1e-6;
        let slope = |axis: Axis| {
            (frame_rotation(&h, eps).row(axis) - frame_rotation(&h, -eps).row(axis)) / (2.0 * eps)
        };
        let sx = slope(Axis::X);
        let sy = slope(Axis::Y);
        let sz = slope(Axis::Z);
        assert_abs_diff_eq!(rates.g_xy, gx * sx.y, epsilon = 1e-6);
        assert_abs_diff_eq!(rates.g_xz, gx * sx.z, epsilon = 1e-6);
        assert_abs_diff_eq!(rates.g_yx, gy * sy.x, epsilon = 1e-6);
        assert_abs_diff_eq!(rates.g_yz, gy * sy.z, epsilon = 1e-6);
        assert_abs_diff_eq!(rates.g_zx, gz * sz.x, epsilon = 1e-6);
        assert_abs_diff_eq!(rates.g_zy, gz * sz.y, epsilon = 1e-6);
    }

    proptest! {
        // Every pointwise kernel is even in t.
        #[test]
        fn kernels_are_even(t in 0.0..20.0f64, g in 0.0..2.0f64, l in 0.1..50.0f64) {
            let z = noise_kernel_ohmic_zero_t(t, g, l);
            prop_assert!((z - noise_kernel_ohmic_zero_t(-t, g, l)).abs() <= 1e-12 * (1.0 + z.abs()));
            let f = noise_kernel_one_over_f(t, g, l);
            prop_assert_eq!(f, noise_kernel_one_over_f(-t, g, l));
        }

        // 1/f kernel is positive, monotone decreasing in |t| and satisfies
        // nu(t1) nu(t2) / sigma^2 = nu(t1 + t2).
        #[test]
        fn one_over_f_semigroup(
            t1 in 0.0..5.0f64, t2 in 0.0..5.0f64,
            s in 0.01..2.0f64, z in 0.01..3.0f64,
        ) {
            let n1 = noise_kernel_one_over_f(t1, s, z);
            let n2 = noise_kernel_one_over_f(t2, s, z);
            let n12 = noise_kernel_one_over_f(t1 + t2, s, z);
            prop_assert!(n1 > 0.0);
            prop_assert!(n12 <= n1.min(n2) + 1e-15);
            prop_assert!((n1 * n2 / (s * s) - n12).abs() <= 1e-12 * n12.max(1e-300));
        }
    }
}
