//! Time-dependent master-equation coefficients.
//!
//! For each noisy axis a, the diffusion coefficients are cumulative
//! integrals of the channel kernel against the frame functions evaluated at
//! negative argument,
//!
//! ```text
//!     axis x:  nu_x(s) * (X_x, Y_x, Z_x)(-s)  ->  (d_xx, f_xy, f_xz)
//!     axis y:  nu_y(s) * (X_y, Y_y, Z_y)(-s)  ->  (f_yx, d_yy, f_yz)
//!     axis z:  nu_z(s) * (X_z, Y_z, Z_z)(-s)  ->  (f_zx, f_zy, d_zz)
//! ```
//!
//! accumulated from 0 to t by composite Simpson on a uniform grid and read
//! back by linear interpolation. High-temperature Ohmic channels skip the
//! integration: their diffusion is the constant gamma * T on the diagonal
//! with no anomalous part. Dissipation rates are the six Ohmic constants,
//! time-independent by construction.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::frame::frame_rotation;
use crate::kernels::{self, DissipationRates};
use crate::model::{Axis, HamiltonianParams, NoiseModel, NoiseSpec};

/// All 15 coefficients at one instant.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CoefficientSet {
    pub t: f64,
    pub d_xx: f64,
    pub d_yy: f64,
    pub d_zz: f64,
    pub f_xy: f64,
    pub f_xz: f64,
    pub f_zx: f64,
    pub f_zy: f64,
    pub f_yx: f64,
    pub f_yz: f64,
    pub g: DissipationRates,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
struct DiffusionRow {
    d_xx: f64,
    d_yy: f64,
    d_zz: f64,
    f_xy: f64,
    f_xz: f64,
    f_zx: f64,
    f_zy: f64,
    f_yx: f64,
    f_yz: f64,
}

impl DiffusionRow {
    fn lerp(&self, other: &DiffusionRow, w: f64) -> DiffusionRow {
        let l = |a: f64, b: f64| a + w * (b - a);
        DiffusionRow {
            d_xx: l(self.d_xx, other.d_xx),
            d_yy: l(self.d_yy, other.d_yy),
            d_zz: l(self.d_zz, other.d_zz),
            f_xy: l(self.f_xy, other.f_xy),
            f_xz: l(self.f_xz, other.f_xz),
            f_zx: l(self.f_zx, other.f_zx),
            f_zy: l(self.f_zy, other.f_zy),
            f_yx: l(self.f_yx, other.f_yx),
            f_yz: l(self.f_yz, other.f_yz),
        }
    }
}

/// Uniform-grid table of the diffusion coefficients plus the constant
/// dissipation rates. Immutable once built.
#[derive(Debug, Clone)]
pub struct CoefficientTable {
    step: f64,
    rows: Vec<DiffusionRow>,
    dissipation: DissipationRates,
}

impl CoefficientTable {
    pub fn grid_step(&self) -> f64 {
        self.step
    }

    /// Last grid time; at least the t_max the table was built for.
    pub fn t_end(&self) -> f64 {
        (self.rows.len() - 1) as f64 * self.step
    }

    /// Number of grid nodes.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn dissipation(&self) -> DissipationRates {
        self.dissipation
    }

    /// Grid times, for diagnostics output.
    pub fn grid_times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.rows.len()).map(move |i| i as f64 * self.step)
    }
}

/// Build the coefficient table on [0, t_max] (the grid is extended to an
/// even interval count, so coverage may exceed t_max by up to one step).
pub fn build_coefficient_table(
    noise: &NoiseSpec,
    h: &HamiltonianParams,
    t_max: f64,
    h_coeff: f64,
) -> Result<CoefficientTable> {
    if !(t_max.is_finite() && t_max > 0.0) {
        return Err(Error::config(format!("integration.t_max: must be > 0, got {t_max}")));
    }
    if !(h_coeff.is_finite() && h_coeff > 0.0) {
        return Err(Error::config(format!("integration.h_coeff: must be > 0, got {h_coeff}")));
    }
    let period = h.frame_period();
    if h_coeff > period / 20.0 {
        return Err(Error::config(format!(
            "integration.h_coeff: {h_coeff} exceeds one twentieth of the frame period \
             ({:.6e}); the frame oscillation would be under-resolved",
            period
        )));
    }

    let mut n = (t_max / h_coeff).ceil() as usize;
    if n % 2 == 1 {
        n += 1;
    }
    n = n.max(2);
    let mut rows = vec![DiffusionRow::default(); n + 1];

    for ch in noise.channels() {
        match ch.model {
            NoiseModel::None => {}
            NoiseModel::OhmicHighT { gamma, temperature } => {
                let d = kernels::high_t_diffusion_constant(gamma, temperature);
                for row in &mut rows {
                    match ch.axis {
                        Axis::X => row.d_xx += d,
                        Axis::Y => row.d_yy += d,
                        Axis::Z => row.d_zz += d,
                    }
                }
            }
            model => {
                let integrand: Result<Vec<(f64, f64, f64)>> = (0..=n)
                    .into_par_iter()
                    .map(|i| {
                        let s = i as f64 * h_coeff;
                        let nu = kernels::stationary_noise_kernel(&model, s).map_err(|e| {
                            Error::numerical(format!(
                                "kernel evaluation failed on axis {:?} at s = {s}: {e}",
                                ch.axis
                            ))
                        })?;
                        let f = frame_rotation(h, -s).row(ch.axis);
                        Ok((nu * f.x, nu * f.y, nu * f.z))
                    })
                    .collect();
                let integrand = integrand?;
                let cx = cumulative_simpson(h_coeff, integrand.iter().map(|v| v.0));
                let cy = cumulative_simpson(h_coeff, integrand.iter().map(|v| v.1));
                let cz = cumulative_simpson(h_coeff, integrand.iter().map(|v| v.2));
                for (i, row) in rows.iter_mut().enumerate() {
                    match ch.axis {
                        Axis::X => {
                            row.d_xx += cx[i];
                            row.f_xy += cy[i];
                            row.f_xz += cz[i];
                        }
                        Axis::Y => {
                            row.f_yx += cx[i];
                            row.d_yy += cy[i];
                            row.f_yz += cz[i];
                        }
                        Axis::Z => {
                            row.f_zx += cx[i];
                            row.f_zy += cy[i];
                            row.d_zz += cz[i];
                        }
                    }
                }
            }
        }
    }

    let dissipation = kernels::ohmic_dissipation_rates(
        h,
        noise.z.ohmic_gamma(),
        noise.x.ohmic_gamma(),
        noise.y.ohmic_gamma(),
    );
    Ok(CoefficientTable { step: h_coeff, rows, dissipation })
}

/// Cumulative composite Simpson over a uniform grid with an even interval
/// count: every node pair fits one parabola, whose partial integrals are
/// h(5 f0 + 8 f1 - f2)/12 and h(-f0 + 8 f1 + 5 f2)/12.
fn cumulative_simpson(h: f64, values: impl Iterator<Item = f64>) -> Vec<f64> {
    let f: Vec<f64> = values.collect();
    debug_assert!(f.len() >= 3 && f.len() % 2 == 1);
    let mut out = vec![0.0; f.len()];
    let mut k = 0;
    while k + 2 < f.len() {
        out[k + 1] = out[k] + h * (5.0 * f[k] + 8.0 * f[k + 1] - f[k + 2]) / 12.0;
        out[k + 2] = out[k + 1] + h * (-f[k] + 8.0 * f[k + 1] + 5.0 * f[k + 2]) / 12.0;
        k += 2;
    }
    out
}

/// Read the table at time t, exact at grid nodes and piecewise-linear
/// between them.
pub fn coefficients_at(table: &CoefficientTable, t: f64) -> Result<CoefficientSet> {
    let end = table.t_end();
    if !(t.is_finite() && (-1e-12..=end + 1e-9).contains(&t)) {
        return Err(Error::config(format!(
            "coefficients_at: t = {t} outside the tabulated range [0, {end}]"
        )));
    }
    let u = (t / table.step).max(0.0);
    let nearest = u.round();
    let row = if (u - nearest).abs() < 1e-9 && (nearest as usize) < table.rows.len() {
        table.rows[nearest as usize]
    } else {
        let i = (u as usize).min(table.rows.len() - 2);
        table.rows[i].lerp(&table.rows[i + 1], u - i as f64)
    };
    Ok(CoefficientSet {
        t,
        d_xx: row.d_xx,
        d_yy: row.d_yy,
        d_zz: row.d_zz,
        f_xy: row.f_xy,
        f_xz: row.f_xz,
        f_zx: row.f_zx,
        f_zy: row.f_zy,
        f_yx: row.f_yx,
        f_yz: row.f_yz,
        g: table.dissipation,
    })
}
