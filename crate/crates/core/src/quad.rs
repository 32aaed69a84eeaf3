//! Adaptive quadrature on a finite interval.
//!
//! Globally adaptive bisection with a 15-point Kronrod rule (7-point Gauss
//! embedded) per panel. The worst panel by error estimate is split until the
//! summed estimate meets `abs_tol.max(rel_tol * |value|)`. Oscillatory
//! integrands should seed `initial_panels` at roughly two panels per
//! oscillation period so the first pass already resolves the sign structure.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Abscissae of the 15-point Kronrod rule on [-1, 1]; odd indices are the
/// embedded 7-point Gauss nodes, index 7 is the center. Published at more
/// digits than f64 carries so the nearest representable value is exact.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_panels: usize,
    pub initial_panels: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self { rel_tol: 1e-8, abs_tol: 1e-14, max_panels: 20_000, initial_panels: 1 }
    }
}

/// Converged integral with its final error estimate and panel count.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub value: f64,
    pub error_estimate: f64,
    pub panels: usize,
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err.total_cmp(&other.err) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// One Kronrod panel. Returns (integral, error estimate).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<(f64, f64)> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let eval = |x: f64| -> Result<f64> {
        let v = f(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::numerical(format!("integrand returned {v} at x = {x}")))
        }
    };

    let fc = eval(center)?;
    let mut resg = WG[3] * fc;
    let mut resk = WGK[7] * fc;
    let mut resabs = WGK[7] * fc.abs();
    let mut fv = [0.0f64; 14]; // pairs (below, above) per non-center node

    for j in 0..7 {
        let absc = half * XGK[j];
        let f1 = eval(center - absc)?;
        let f2 = eval(center + absc)?;
        fv[2 * j] = f1;
        fv[2 * j + 1] = f2;
        let sum = f1 + f2;
        resk += WGK[j] * sum;
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * sum;
        }
    }

    // Scaled error per QUADPACK: relate |K15 - G7| to the variation of the
    // integrand around its mean, so smooth panels do not over-report.
    let reskh = resk * 0.5;
    let mut resasc = WGK[7] * (fc - reskh).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv[2 * j] - reskh).abs() + (fv[2 * j + 1] - reskh).abs());
    }
    let value = resk * half;
    let resabs = resabs * half.abs();
    let resasc = resasc * half.abs();
    let mut err = ((resk - resg) * half).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * 1.0f64.min((200.0 * err / resasc).powf(1.5));
    }
    let round_off = 50.0 * f64::EPSILON * resabs;
    if round_off > f64::MIN_POSITIVE {
        err = err.max(round_off);
    }
    Ok((value, err))
}

pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, opts: &QuadOptions) -> Result<Quadrature> {
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::config(format!("integration bounds must be finite, got [{a}, {b}]")));
    }
    if a == b {
        return Ok(Quadrature { value: 0.0, error_estimate: 0.0, panels: 0 });
    }

    let n0 = opts.initial_panels.clamp(1, opts.max_panels);
    let mut heap = BinaryHeap::with_capacity(n0 + 16);
    let mut total = 0.0;
    let mut total_err = 0.0;
    for i in 0..n0 {
        let pa = a + (b - a) * i as f64 / n0 as f64;
        let pb = if i + 1 == n0 { b } else { a + (b - a) * (i + 1) as f64 / n0 as f64 };
        let (v, e) = gk15(&f, pa, pb)?;
        total += v;
        total_err += e;
        heap.push(Panel { a: pa, b: pb, value: v, err: e });
    }

    let mut panels = n0;
    loop {
        let tol = opts.abs_tol.max(opts.rel_tol * total.abs());
        if total_err <= tol {
            return Ok(Quadrature { value: total, error_estimate: total_err, panels });
        }
        if panels >= opts.max_panels {
            return Err(Error::numerical(format!(
                "quadrature did not converge: {panels} panels, error estimate {total_err:.3e} \
                 vs tolerance {tol:.3e} on [{a}, {b}]"
            )));
        }
        let worst = heap.pop().expect("heap holds at least one panel");
        // Orientation-agnostic exhaustion test: the midpoint collapses onto
        // an endpoint once the panel is one ulp wide.
        let mid = 0.5 * (worst.a + worst.b);
        if mid == worst.a || mid == worst.b {
            return Err(Error::numerical(format!(
                "quadrature stalled: panel [{:.17e}, {:.17e}] cannot be split further \
                 (error estimate {:.3e})",
                worst.a, worst.b, worst.err
            )));
        }
        let (v1, e1) = gk15(&f, worst.a, mid)?;
        let (v2, e2) = gk15(&f, mid, worst.b)?;
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.err;
        heap.push(Panel { a: worst.a, b: mid, value: v1, err: e1 });
        heap.push(Panel { a: mid, b: worst.b, value: v2, err: e2 });
        panels += 1;
    }
}

/// Panel count seed for integrands oscillating with the given period:
/// two panels per period, clamped to a sane range.
pub fn oscillatory_panels(a: f64, b: f64, period: f64) -> usize {
    if !(period.is_finite() && period > 0.0) {
        return 1;
    }
    let n = (2.0 * (b - a).abs() / period).ceil();
    (n as usize).clamp(1, 2048)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn quad<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> f64 {
        integrate(f, a, b, &QuadOptions::default()).unwrap().value
    }

    #[test]
    fn polynomials_are_exact() {
        assert_abs_diff_eq!(quad(|x| 3.0 * x * x, 0.0, 1.0), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(quad(|x| x.powi(5) - x, -1.0, 2.0), 9.0, epsilon = 1e-12);
    }

    #[test]
    fn sine_over_half_period() {
        assert_abs_diff_eq!(quad(f64::sin, 0.0, std::f64::consts::PI), 2.0, epsilon = 1e-12);
    }

    #[test]
    fn oscillatory_integral_with_panel_seed() {
        // int_0^100 cos(5 w) dw = sin(500)/5
        let opts = QuadOptions {
            initial_panels: oscillatory_panels(0.0, 100.0, 2.0 * std::f64::consts::PI / 5.0),
            ..QuadOptions::default()
        };
        let got = integrate(|w| (5.0 * w).cos(), 0.0, 100.0, &opts).unwrap();
        let want = (500.0f64).sin() / 5.0;
        assert_abs_diff_eq!(got.value, want, epsilon = 1e-10);
    }

    #[test]
    fn integrable_endpoint_singularity_converges() {
        let got = quad(|x| x.sqrt().recip(), 1e-300, 1.0);
        assert_abs_diff_eq!(got, 2.0, epsilon = 1e-6);
    }

    #[test]
    fn empty_interval_is_zero() {
        assert_eq!(quad(|x| x, 2.5, 2.5), 0.0);
    }

    #[test]
    fn non_finite_integrand_is_reported() {
        let err = integrate(|_| f64::NAN, 0.0, 1.0, &QuadOptions::default()).unwrap_err();
        assert!(err.to_string().contains("integrand returned"), "{err}");
    }

    #[test]
    fn panel_budget_exhaustion_is_an_error() {
        let opts = QuadOptions { max_panels: 4, rel_tol: 1e-14, abs_tol: 1e-300, ..Default::default() };
        let err = integrate(|x: f64| (50.0 * x).sin().abs(), 0.0, 10.0, &opts).unwrap_err();
        assert!(err.to_string().contains("did not converge"), "{err}");
    }

    proptest! {
        // Random cubics against the antiderivative.
        #[test]
        fn random_cubics_match_antiderivative(
            c in prop::array::uniform4(-3.0..3.0f64),
            a in -2.0..2.0f64,
            len in 0.01..4.0f64,
        ) {
            let b = a + len;
            let f = |x: f64| c[0] + x * (c[1] + x * (c[2] + x * c[3]));
            let prim = |x: f64| x * (c[0] + x * (c[1] / 2.0 + x * (c[2] / 3.0 + x * c[3] / 4.0)));
            let got = quad(f, a, b);
            prop_assert!((got - (prim(b) - prim(a))).abs() < 1e-10);
        }

        // Reversing the bounds flips the sign.
        #[test]
        fn orientation_antisymmetry(a in -3.0..3.0f64, len in 0.1..3.0f64) {
            let b = a + len;
            let fwd = quad(|x| (x * x).exp_m1(), a, b);
            let rev = quad(|x| (x * x).exp_m1(), b, a);
            prop_assert!((fwd + rev).abs() < 1e-9 * (1.0 + fwd.abs()));
        }
    }
}
