//! Master-equation generator and trajectory integration.
//!
//! In Bloch form the equation of motion is affine, dr/dt = A(t) r + b, with
//!
//! * unitary precession dr/dt = h x r, h = (Omega_x, Omega_y, Delta),
//! * each normal-diffusion term d_ii damping the two components orthogonal
//!   to axis i at rate 4 d_ii,
//! * each anomalous term f_ij feeding component j from component i with
//!   weight +4 f_ij,
//! * each dissipation rate g_ij contributing the constant drift
//!   -4 g_ij eps_ijk to component k.
//!
//! `rhs_dense` evaluates the same equation by literal 2x2 commutator
//! algebra on the density matrix and serves as the independent oracle for
//! the affine form. Trajectories use fixed-step classical Runge-Kutta with
//! coefficients read from the pre-built table.

use nalgebra::{Matrix2, Matrix3, Vector3};
use num_complex::Complex64;

use crate::coefficients::{coefficients_at, CoefficientSet, CoefficientTable};
use crate::error::{Error, Result};
use crate::model::{pauli_matrices, HamiltonianParams, QubitState};

/// Threshold on |r| - 1 beyond which a run is flagged as leaving the Bloch
/// ball. Excursions are diagnostics, never clipped.
pub const POSITIVITY_SLACK: f64 = 1e-3;

/// Affine Bloch generator dr/dt = a_matrix * r + b_vector at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochGenerator {
    pub a_matrix: Matrix3<f64>,
    pub b_vector: Vector3<f64>,
}

pub fn assemble_generator(c: &CoefficientSet, h: &HamiltonianParams) -> BlochGenerator {
    let (ox, oy, d) = (h.omega_x(), h.omega_y(), h.delta);
    let g = &c.g;
    let a_matrix = Matrix3::new(
        -4.0 * (c.d_yy + c.d_zz),
        -d + 4.0 * c.f_yx,
        oy + 4.0 * c.f_zx,
        d + 4.0 * c.f_xy,
        -4.0 * (c.d_xx + c.d_zz),
        -ox + 4.0 * c.f_zy,
        -oy + 4.0 * c.f_xz,
        ox + 4.0 * c.f_yz,
        -4.0 * (c.d_xx + c.d_yy),
    );
    let b_vector = Vector3::new(
        4.0 * (g.g_zy - g.g_yz),
        4.0 * (g.g_xz - g.g_zx),
        4.0 * (g.g_yx - g.g_xy),
    );
    BlochGenerator { a_matrix, b_vector }
}

impl BlochGenerator {
    pub fn derivative(&self, r: &Vector3<f64>) -> Vector3<f64> {
        self.a_matrix * r + self.b_vector
    }
}

/// Literal density-matrix right-hand side:
///
/// ```text
///   drho/dt = -i [H_eff, rho]
///             - sum_i d_ii [s_i, [s_i, rho]]
///             - sum_(ij) f_ij [s_i, [s_j, rho]]
///             + i sum_(ij) g_ij [s_i, {s_j, rho}]
/// ```
///
/// with (ij) running over the six ordered pairs xy, xz, zx, zy, yx, yz.
pub fn rhs_dense(
    rho: &Matrix2<Complex64>,
    c: &CoefficientSet,
    h: &HamiltonianParams,
) -> Matrix2<Complex64> {
    let [sx, sy, sz] = pauli_matrices();
    let comm = |a: &Matrix2<Complex64>, b: &Matrix2<Complex64>| a * b - b * a;
    let acomm = |a: &Matrix2<Complex64>, b: &Matrix2<Complex64>| a * b + b * a;
    let re = |x: f64| Complex64::new(x, 0.0);

    let h_eff = (sz * re(h.delta) + sx * re(h.omega_x()) + sy * re(h.omega_y())) * re(0.5);
    let mut out = comm(&h_eff, rho) * Complex64::new(0.0, -1.0);

    for (s, d) in [(&sx, c.d_xx), (&sy, c.d_yy), (&sz, c.d_zz)] {
        out -= comm(s, &comm(s, rho)) * re(d);
    }
    let pairs = [
        (&sx, &sy, c.f_xy, c.g.g_xy),
        (&sx, &sz, c.f_xz, c.g.g_xz),
        (&sz, &sx, c.f_zx, c.g.g_zx),
        (&sz, &sy, c.f_zy, c.g.g_zy),
        (&sy, &sx, c.f_yx, c.g.g_yx),
        (&sy, &sz, c.f_yz, c.g.g_yz),
    ];
    for (si, sj, f, g) in pairs {
        out -= comm(si, &comm(sj, rho)) * re(f);
        out += comm(si, &acomm(sj, rho)) * Complex64::new(0.0, g);
    }
    out
}

/// Time series of Bloch states with the positivity diagnostic gathered
/// over every integration step (not only the recorded ones).
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<QubitState>,
    pub max_bloch_norm: f64,
    pub positivity_flagged: bool,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn final_state(&self) -> &QubitState {
        self.states.last().expect("trajectory holds the initial state")
    }
}

/// Fixed-step classical Runge-Kutta integration of the Bloch equation.
/// Records every `output_stride`-th step plus the initial and final states.
pub fn integrate(
    initial: &QubitState,
    table: &CoefficientTable,
    h: &HamiltonianParams,
    t_max: f64,
    dt: f64,
    output_stride: usize,
) -> Result<Trajectory> {
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::config(format!("integration.dt: must be > 0, got {dt}")));
    }
    if dt > table.grid_step() * (1.0 + 1e-12) {
        return Err(Error::config(format!(
            "integration.dt: {dt} exceeds the coefficient grid step {}",
            table.grid_step()
        )));
    }
    if output_stride == 0 {
        return Err(Error::config("integration.output_stride: must be >= 1"));
    }
    let n = (t_max / dt).round() as usize;
    if n == 0 {
        return Err(Error::config(format!(
            "integration.t_max: {t_max} is below one time step dt = {dt}"
        )));
    }
    if n as f64 * dt > table.t_end() + 1e-9 {
        return Err(Error::config(format!(
            "integration.t_max: {t_max} exceeds the tabulated coefficient range {}",
            table.t_end()
        )));
    }

    let rhs = |t: f64, r: &Vector3<f64>| -> Result<Vector3<f64>> {
        let c = coefficients_at(table, t)?;
        Ok(assemble_generator(&c, h).derivative(r))
    };

    let mut r = initial.bloch();
    let mut times = Vec::with_capacity(n / output_stride + 2);
    let mut states = Vec::with_capacity(n / output_stride + 2);
    times.push(0.0);
    states.push(*initial);
    let mut max_norm = r.norm();

    for k in 0..n {
        let t = k as f64 * dt;
        let k1 = rhs(t, &r)?;
        let k2 = rhs(t + dt / 2.0, &(r + k1 * (dt / 2.0)))?;
        let k3 = rhs(t + dt / 2.0, &(r + k2 * (dt / 2.0)))?;
        let k4 = rhs(t + dt, &(r + k3 * dt))?;
        r += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6.0);

        if !r.iter().all(|c| c.is_finite()) {
            return Err(Error::numerical(format!(
                "integration diverged at step {} (t = {:.6}): r = [{}, {}, {}]",
                k + 1,
                (k + 1) as f64 * dt,
                r.x,
                r.y,
                r.z
            )));
        }
        max_norm = max_norm.max(r.norm());
        if (k + 1) % output_stride == 0 || k + 1 == n {
            times.push((k + 1) as f64 * dt);
            states.push(QubitState::from_bloch_unchecked(r));
        }
    }

    Ok(Trajectory {
        times,
        states,
        max_bloch_norm: max_norm,
        positivity_flagged: max_norm > 1.0 + POSITIVITY_SLACK,
    })
}
