//! Interaction-frame rotation of the Pauli operators.
//!
//! The time-dependent coefficients of the master equation are built from the
//! Heisenberg-picture images of sigma_x, sigma_y, sigma_z under the drive.
//! Writing sigma_a(-t) = X_a(t) sigma_x + Y_a(t) sigma_y + Z_a(t) sigma_z,
//! the nine scalar functions have closed forms in terms of
//!
//! ```text
//!     w   = sqrt(Omega_R^2 + Delta^2),
//!     phi = 2 t w,   c = cos(phi),   s = sin(phi).
//! ```
//!
//! Equivalently the matrix [X|Y|Z] is the Rodrigues rotation exp(-2t [h]_x)
//! with h = (Omega_x, Omega_y, Delta); the closed forms below are used
//! directly, and the rotation picture drives a property test.

use nalgebra::{Matrix3, Vector3};

use crate::model::HamiltonianParams;

/// The nine frame functions at one instant, as rows:
/// `x` holds (X_1, Y_1, Z_1) for sigma_x, `y` the sigma_y row, `z` the
/// sigma_z row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameRotation {
    pub x: Vector3<f64>,
    pub y: Vector3<f64>,
    pub z: Vector3<f64>,
}

impl FrameRotation {
    /// Row for one coupling axis, in the order used by the coefficient
    /// pairings (sigma_x-, sigma_y-, sigma_z-component).
    pub fn row(&self, axis: crate::model::Axis) -> Vector3<f64> {
        match axis {
            crate::model::Axis::X => self.x,
            crate::model::Axis::Y => self.y,
            crate::model::Axis::Z => self.z,
        }
    }

    /// Rows stacked into the rotation matrix R with R[a][b] = (sigma_a(-t))_b.
    pub fn matrix(&self) -> Matrix3<f64> {
        Matrix3::from_rows(&[self.x.transpose(), self.y.transpose(), self.z.transpose()])
    }
}

/// Evaluate the frame functions at time `t`.
pub fn frame_rotation(h: &HamiltonianParams, t: f64) -> FrameRotation {
    let (ox, oy, d) = (h.omega_x(), h.omega_y(), h.delta);
    let w2 = h.omega_r.powi(2) + d.powi(2);
    let w = w2.sqrt();
    let (s, c) = (2.0 * t * w).sin_cos();
    let omc = 1.0 - c;

    let x = Vector3::new(
        (ox * ox + (d * d + oy * oy) * c) / w2,
        (ox * oy * omc + d * w * s) / w2,
        (ox * d * omc - oy * w * s) / w2,
    );
    let y = Vector3::new(
        (ox * oy * omc - d * w * s) / w2,
        (oy * oy + (d * d + ox * ox) * c) / w2,
        (d * oy * omc + ox * w * s) / w2,
    );
    let z = Vector3::new(
        (d * ox * omc + oy * w * s) / w2,
        (d * oy * omc - ox * w * s) / w2,
        (d * d + h.omega_r.powi(2) * c) / w2,
    );
    FrameRotation { x, y, z }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Axis;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn params(delta: f64, omega_r: f64, phi_r: f64) -> HamiltonianParams {
        HamiltonianParams::new(delta, omega_r, phi_r).unwrap()
    }

    /// Independent construction: Rodrigues rotation by angle 2t|h| about
    /// h = (Omega_x, Omega_y, Delta).
    fn rotation_oracle(h: &HamiltonianParams, t: f64) -> Matrix3<f64> {
        let field = h.field();
        let n = field.norm();
        let k = field / n;
        let kx = Matrix3::new(0.0, -k.z, k.y, k.z, 0.0, -k.x, -k.y, k.x, 0.0);
        let angle = -2.0 * t * n;
        Matrix3::identity() + kx * angle.sin() + kx * kx * (1.0 - angle.cos())
    }

    #[test]
    fn identity_at_t_zero() {
        let f = frame_rotation(&params(1.0, 0.7, 0.3), 0.0);
        assert_abs_diff_eq!(f.matrix(), Matrix3::identity(), epsilon = 1e-15);
    }

    #[test]
    fn matches_rodrigues_rotation_on_a_grid() {
        for &(d, or, pr) in &[(1.0, 0.0, 0.0), (1.0, 0.1, 0.0), (1.0, 2.5, 1.1), (0.3, 0.9, -2.0)] {
            let h = params(d, or, pr);
            for i in 0..60 {
                let t = i as f64 * 0.17;
                let got = frame_rotation(&h, t).matrix();
                let want = rotation_oracle(&h, t);
                assert_abs_diff_eq!(got, want, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn undriven_limit_is_a_z_rotation() {
        // Omega_R = 0: sigma_z is invariant and sigma_x precesses at 2 Delta.
        let h = params(1.0, 0.0, 0.0);
        let t = 0.83;
        let f = frame_rotation(&h, t);
        assert_abs_diff_eq!(f.z, Vector3::new(0.0, 0.0, 1.0), epsilon = 1e-15);
        assert_abs_diff_eq!(f.x.x, (2.0 * t).cos(), epsilon = 1e-15);
        assert_abs_diff_eq!(f.x.y, (2.0 * t).sin(), epsilon = 1e-15);
        assert_abs_diff_eq!(f.x.z, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn period_returns_every_row_to_its_start() {
        let h = params(1.0, 0.1, 0.0);
        let f = frame_rotation(&h, h.frame_period());
        assert_abs_diff_eq!(f.matrix(), Matrix3::identity(), epsilon = 1e-12);
    }

    #[test]
    fn row_accessor_matches_fields() {
        let f = frame_rotation(&params(1.0, 0.4, 0.9), 1.3);
        assert_eq!(f.row(Axis::X), f.x);
        assert_eq!(f.row(Axis::Y), f.y);
        assert_eq!(f.row(Axis::Z), f.z);
    }

    proptest! {
        // The frame matrix is orthogonal with unit determinant at all times:
        // rows are orthonormal and the map preserves lengths.
        #[test]
        fn frame_matrix_is_special_orthogonal(
            t in 0.0..50.0f64,
            omega_r in 0.0..5.0f64,
            phi_r in -3.2..3.2f64,
            delta in 0.05..3.0f64,
        ) {
            let h = params(delta, omega_r, phi_r);
            let m = frame_rotation(&h, t).matrix();
            let gram = m * m.transpose();
            for i in 0..3 {
                for j in 0..3 {
                    let want = if i == j { 1.0 } else { 0.0 };
                    prop_assert!((gram[(i, j)] - want).abs() < 1e-10,
                        "gram[{i}][{j}] = {}", gram[(i, j)]);
                }
            }
            prop_assert!((m.determinant() - 1.0).abs() < 1e-10);
        }
    }
}
