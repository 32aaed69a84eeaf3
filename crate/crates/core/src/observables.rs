//! Decoherence observables extracted from trajectories.
//!
//! The operational decoherence time is an envelope crossing: compress runs
//! of exactly-equal samples, keep the runs that beat both neighbors (series
//! ends compare against -inf, a flat run is represented by its first
//! point), connect those local maxima by straight chords, and use the raw
//! series outside the first/last maximum. t_D is the first time that upper
//! envelope falls below threshold * v0. A strictly decaying series
//! therefore yields its own threshold crossing, and a constant series
//! yields none.

use std::fmt;

use crate::error::{Error, Result};
use crate::evolver::Trajectory;
use crate::model::{NoiseModel, NoiseSpec};

/// Default envelope threshold, e^-1.
pub fn default_threshold() -> f64 {
    (-1.0f64).exp()
}

pub fn coherence_series(traj: &Trajectory) -> Vec<(f64, f64)> {
    traj.times.iter().zip(&traj.states).map(|(&t, s)| (t, s.coherence())).collect()
}

pub fn bloch_norm_series(traj: &Trajectory) -> Vec<(f64, f64)> {
    traj.times.iter().zip(&traj.states).map(|(&t, s)| (t, s.bloch().norm())).collect()
}

pub fn purity_series(traj: &Trajectory) -> Vec<(f64, f64)> {
    traj.times.iter().zip(&traj.states).map(|(&t, s)| (t, s.purity())).collect()
}

/// Envelope decomposition of a sampled series: the anchor maxima and the
/// first threshold crossing of the piecewise-linear upper envelope.
#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopeAnalysis {
    pub t_d: Option<f64>,
    pub anchors: Vec<(f64, f64)>,
}

pub fn envelope_decoherence_time(series: &[(f64, f64)], threshold: f64) -> Result<EnvelopeAnalysis> {
    if series.len() < 2 {
        return Err(Error::config("envelope: series needs at least two samples"));
    }
    if !(threshold.is_finite() && threshold > 0.0) {
        return Err(Error::config(format!("analysis.threshold: must be > 0, got {threshold}")));
    }
    let v0 = series[0].1;
    if v0 <= 0.0 {
        return Err(Error::config(
            "envelope: initial value is zero, the decay baseline is undefined",
        ));
    }
    let target = threshold * v0;

    // Compress runs of exactly-equal values, then keep runs that beat both
    // neighbor runs.
    let mut runs: Vec<(usize, f64)> = Vec::new(); // (first index, value)
    let mut i = 0;
    while i < series.len() {
        let mut j = i;
        while j + 1 < series.len() && series[j + 1].1 == series[i].1 {
            j += 1;
        }
        runs.push((i, series[i].1));
        i = j + 1;
    }
    let mut anchors: Vec<(f64, f64)> = Vec::new();
    for (k, &(idx, v)) in runs.iter().enumerate() {
        let left = if k > 0 { runs[k - 1].1 } else { f64::NEG_INFINITY };
        let right = if k + 1 < runs.len() { runs[k + 1].1 } else { f64::NEG_INFINITY };
        if v > left && v > right {
            anchors.push((series[idx].0, v));
        }
    }

    // Walk the envelope as consecutive linear pieces: the raw series before
    // the first anchor, chords between anchors, the raw series after the
    // last anchor.
    let mut pieces: Vec<(f64, f64, f64, f64)> = Vec::new();
    if anchors.is_empty() {
        for w in series.windows(2) {
            pieces.push((w[0].0, w[0].1, w[1].0, w[1].1));
        }
    } else {
        let first_t = anchors[0].0;
        let last_t = anchors[anchors.len() - 1].0;
        let mut i = 0;
        while series[i].0 < first_t {
            pieces.push((series[i].0, series[i].1, series[i + 1].0, series[i + 1].1));
            i += 1;
        }
        for w in anchors.windows(2) {
            pieces.push((w[0].0, w[0].1, w[1].0, w[1].1));
        }
        let mut i = series.partition_point(|p| p.0 < last_t);
        while i + 1 < series.len() {
            pieces.push((series[i].0, series[i].1, series[i + 1].0, series[i + 1].1));
            i += 1;
        }
    }

    let mut t_d = None;
    for (t0, va, t1, vb) in pieces {
        if va >= target && vb < target {
            t_d = Some(if va == vb { t0 } else { t0 + (t1 - t0) * (va - target) / (va - vb) });
            break;
        }
    }
    Ok(EnvelopeAnalysis { t_d, anchors })
}

/// Formula behind an analytic decoherence-time value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnalyticTdKind {
    /// Longitudinal high-temperature Ohmic estimate 2/(gamma T).
    HighTLongitudinal,
    /// Longitudinal zero-temperature Ohmic LOWER BOUND 2/(gamma cutoff pi).
    ZeroTLongitudinalBound,
    /// Longitudinal 1/f in the quasi-static regime, sqrt(2)/sigma.
    OneOverFShortSwitching,
    /// Longitudinal 1/f when switching is fast on the decay scale, 1/zeta.
    OneOverFLongSwitching,
}

impl AnalyticTdKind {
    pub fn is_lower_bound(&self) -> bool {
        matches!(self, AnalyticTdKind::ZeroTLongitudinalBound)
    }
}

impl fmt::Display for AnalyticTdKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AnalyticTdKind::HighTLongitudinal => "high_t_longitudinal",
            AnalyticTdKind::ZeroTLongitudinalBound => "zero_t_longitudinal_lower_bound",
            AnalyticTdKind::OneOverFShortSwitching => "one_over_f_short_switching",
            AnalyticTdKind::OneOverFLongSwitching => "one_over_f_long_switching",
        };
        f.write_str(s)
    }
}

/// Closed-form decoherence-time estimate for the recognized longitudinal
/// regimes, keyed on the z channel. The 1/f regime test is
/// self-consistency: the quasi-static value sqrt(2)/sigma holds while
/// zeta t_D stays small; once zeta * sqrt(2)/sigma >= 10 the decay is
/// switching-dominated and 1/zeta is reported instead.
pub fn analytic_td_estimate(noise: &NoiseSpec) -> Option<(f64, AnalyticTdKind)> {
    match noise.z {
        NoiseModel::OhmicHighT { gamma, temperature } if gamma > 0.0 && temperature > 0.0 => {
            Some((2.0 / (gamma * temperature), AnalyticTdKind::HighTLongitudinal))
        }
        NoiseModel::OhmicZeroT { gamma, cutoff } if gamma > 0.0 && cutoff > 0.0 => Some((
            2.0 / (gamma * cutoff * std::f64::consts::PI),
            AnalyticTdKind::ZeroTLongitudinalBound,
        )),
        NoiseModel::OneOverF { sigma, zeta } if sigma > 0.0 => {
            let quasi_static = 2.0f64.sqrt() / sigma;
            if zeta * quasi_static >= 10.0 {
                Some((1.0 / zeta, AnalyticTdKind::OneOverFLongSwitching))
            } else {
                Some((quasi_static, AnalyticTdKind::OneOverFShortSwitching))
            }
        }
        _ => None,
    }
}

/// Post-processing summary of one run, serialized as `key = value` lines.
#[derive(Debug, Clone, PartialEq)]
pub struct DecoherenceReport {
    pub t_d_measured: Option<f64>,
    pub threshold: f64,
    pub t_d_analytic: Option<(f64, AnalyticTdKind)>,
    pub envelope: Vec<(f64, f64)>,
    pub max_bloch_norm: f64,
    pub positivity_flagged: bool,
    pub final_bloch_norm: f64,
    pub final_abs_rho01: f64,
    pub final_purity: f64,
    pub noise: NoiseSpec,
}

pub fn decoherence_report(
    traj: &Trajectory,
    noise: &NoiseSpec,
    threshold: f64,
) -> Result<DecoherenceReport> {
    let series = coherence_series(traj);
    // A pole state starts with zero coherence; there is no decay baseline,
    // so the envelope analysis is skipped rather than failed.
    let envelope = if series.first().is_some_and(|&(_, v)| v > 0.0) {
        envelope_decoherence_time(&series, threshold)?
    } else {
        EnvelopeAnalysis { t_d: None, anchors: Vec::new() }
    };
    let last = traj.final_state();
    Ok(DecoherenceReport {
        t_d_measured: envelope.t_d,
        threshold,
        t_d_analytic: analytic_td_estimate(noise),
        envelope: envelope.anchors,
        max_bloch_norm: traj.max_bloch_norm,
        positivity_flagged: traj.positivity_flagged,
        final_bloch_norm: last.bloch().norm(),
        final_abs_rho01: last.coherence(),
        final_purity: last.purity(),
        noise: *noise,
    })
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "none".into(), |x| format!("{x:.16e}"))
}

impl fmt::Display for DecoherenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "method = envelope_threshold")?;
        writeln!(f, "threshold = {:.16e}", self.threshold)?;
        writeln!(f, "t_d_measured = {}", fmt_opt(self.t_d_measured))?;
        writeln!(f, "t_d_analytic = {}", fmt_opt(self.t_d_analytic.map(|(v, _)| v)))?;
        writeln!(
            f,
            "t_d_analytic_kind = {}",
            self.t_d_analytic.map_or_else(|| "none".into(), |(_, k)| k.to_string())
        )?;
        let envelope = self
            .envelope
            .iter()
            .map(|(t, v)| format!("({t:.16e}, {v:.16e})"))
            .collect::<Vec<_>>()
            .join("; ");
        writeln!(f, "envelope_maxima = {envelope}")?;
        writeln!(f, "max_bloch_norm = {:.16e}", self.max_bloch_norm)?;
        writeln!(f, "positivity_flagged = {}", self.positivity_flagged)?;
        writeln!(f, "final_bloch_norm = {:.16e}", self.final_bloch_norm)?;
        writeln!(f, "final_abs_rho01 = {:.16e}", self.final_abs_rho01)?;
        writeln!(f, "final_purity = {:.16e}", self.final_purity)?;
        writeln!(f, "noise_z = {}", self.noise.z)?;
        writeln!(f, "noise_x = {}", self.noise.x)?;
        writeln!(f, "noise_y = {}", self.noise.y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::build_coefficient_table;
    use crate::evolver::integrate;
    use crate::model::{HamiltonianParams, InitialStateSpec, QubitState};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn sampled(f: impl Fn(f64) -> f64, t_end: f64, n: usize) -> Vec<(f64, f64)> {
        (0..=n).map(|i| {
            let t = t_end * i as f64 / n as f64;
            (t, f(t))
        }).collect()
    }

    #[test]
    fn pure_exponential_crosses_at_its_time_constant() {
        let tau = 1.37;
        let series = sampled(|t| (-t / tau).exp(), 6.0, 600);
        let got = envelope_decoherence_time(&series, default_threshold()).unwrap();
        assert_abs_diff_eq!(got.t_d.unwrap(), tau, epsilon = 0.01);
        // strictly decreasing series: only the first sample is a maximum
        assert_eq!(got.anchors.len(), 1);
        assert_eq!(got.anchors[0], (0.0, 1.0));
    }

    #[test]
    fn constant_series_never_crosses() {
        let series = sampled(|_| 0.7, 3.0, 100);
        let got = envelope_decoherence_time(&series, default_threshold()).unwrap();
        assert_eq!(got.t_d, None);
        assert_eq!(got.anchors, vec![(0.0, 0.7)]);
    }

    #[test]
    fn damped_oscillation_crossing_uses_the_peak_envelope() {
        // |cos| peaks decay as exp(-t/2): envelope crossing at t = 2, far
        // from the first raw-series crossing near t = pi/2.
        let series = sampled(|t| (-t / 2.0).exp() * t.cos().abs(), 8.0, 4000);
        let got = envelope_decoherence_time(&series, default_threshold()).unwrap();
        let t_d = got.t_d.unwrap();
        assert!((1.8..2.3).contains(&t_d), "t_d = {t_d}");
        assert!(got.anchors.len() >= 3);
    }

    #[test]
    fn zero_baseline_is_an_error() {
        let series = sampled(|t| t, 1.0, 10);
        let err = envelope_decoherence_time(&series, default_threshold()).unwrap_err();
        assert!(err.to_string().contains("baseline"), "{err}");
    }

    #[test]
    fn flat_plateau_contributes_its_first_point() {
        let series = vec![(0.0, 0.2), (1.0, 0.8), (2.0, 0.8), (3.0, 0.8), (4.0, 0.04)];
        let got = envelope_decoherence_time(&series, 0.5).unwrap();
        assert_eq!(got.anchors, vec![(1.0, 0.8)]);
        // envelope follows the series down from the plateau's last sample
        let t_d = got.t_d.unwrap();
        assert!((3.0..4.0).contains(&t_d), "t_d = {t_d}");
    }

    #[test]
    fn analytic_estimates_per_regime() {
        let high_t = NoiseSpec {
            z: NoiseModel::OhmicHighT { gamma: 0.02, temperature: 100.0 },
            ..NoiseSpec::default()
        };
        let (v, k) = analytic_td_estimate(&high_t).unwrap();
        assert_abs_diff_eq!(v, 1.0, epsilon = 1e-15);
        assert_eq!(k, AnalyticTdKind::HighTLongitudinal);
        assert!(!k.is_lower_bound());

        let zero_t = NoiseSpec {
            z: NoiseModel::OhmicZeroT { gamma: 0.02, cutoff: 100.0 },
            ..NoiseSpec::default()
        };
        let (v, k) = analytic_td_estimate(&zero_t).unwrap();
        assert_abs_diff_eq!(v, 2.0 / (2.0 * std::f64::consts::PI), epsilon = 1e-15);
        assert!(k.is_lower_bound());

        let quasi_static = NoiseSpec {
            z: NoiseModel::OneOverF { sigma: 0.5, zeta: 0.75 },
            ..NoiseSpec::default()
        };
        let (v, k) = analytic_td_estimate(&quasi_static).unwrap();
        assert_abs_diff_eq!(v, 2.0f64.sqrt() / 0.5, epsilon = 1e-15);
        assert_eq!(k, AnalyticTdKind::OneOverFShortSwitching);

        let fast_switching = NoiseSpec {
            z: NoiseModel::OneOverF { sigma: 0.5, zeta: 10.0 },
            ..NoiseSpec::default()
        };
        let (v, k) = analytic_td_estimate(&fast_switching).unwrap();
        assert_abs_diff_eq!(v, 0.1, epsilon = 1e-15);
        assert_eq!(k, AnalyticTdKind::OneOverFLongSwitching);

        assert_eq!(analytic_td_estimate(&NoiseSpec::default()), None);
        let transverse_only = NoiseSpec {
            x: NoiseModel::OhmicHighT { gamma: 0.02, temperature: 100.0 },
            ..NoiseSpec::default()
        };
        assert_eq!(analytic_td_estimate(&transverse_only), None);
    }

    #[test]
    fn measured_dephasing_time_matches_the_constant_rate_formula() {
        // d_zz constant: t_D = ln(1/threshold) / (4 d_zz), here 1/0.8.
        let h = HamiltonianParams::new(1.0, 0.0, 0.0).unwrap();
        let noise = NoiseSpec {
            z: NoiseModel::OhmicHighT { gamma: 0.002, temperature: 100.0 },
            ..NoiseSpec::default()
        };
        let table = build_coefficient_table(&noise, &h, 3.0, 2e-3).unwrap();
        let initial = QubitState::from_angles(
            &InitialStateSpec::new(2.0 * std::f64::consts::FRAC_PI_3, 0.0).unwrap(),
        );
        let traj = integrate(&initial, &table, &h, 3.0, 1e-3, 10).unwrap();
        let report = decoherence_report(&traj, &noise, default_threshold()).unwrap();
        assert_abs_diff_eq!(report.t_d_measured.unwrap(), 1.25, epsilon = 0.01);
    }

    #[test]
    fn report_renders_every_key() {
        let h = HamiltonianParams::new(1.0, 0.1, 0.0).unwrap();
        let noise = NoiseSpec {
            z: NoiseModel::OhmicHighT { gamma: 0.02, temperature: 100.0 },
            ..NoiseSpec::default()
        };
        let table = build_coefficient_table(&noise, &h, 1.0, 2e-3).unwrap();
        let initial = QubitState::from_angles(&InitialStateSpec::new(1.0, 0.0).unwrap());
        let traj = integrate(&initial, &table, &h, 1.0, 1e-3, 10).unwrap();
        let report = decoherence_report(&traj, &noise, default_threshold()).unwrap();
        let text = report.to_string();
        for key in [
            "method = envelope_threshold",
            "threshold = ",
            "t_d_measured = ",
            "t_d_analytic = ",
            "t_d_analytic_kind = ",
            "envelope_maxima = ",
            "max_bloch_norm = ",
            "positivity_flagged = ",
            "final_bloch_norm = ",
            "final_abs_rho01 = ",
            "final_purity = ",
            "noise_z = ohmic_high_t",
            "noise_x = none",
            "noise_y = none",
        ] {
            assert!(text.contains(key), "missing `{key}` in:\n{text}");
        }
        assert!(text.contains("t_d_analytic = 1.0000000000000000e0"), "{text}");
    }

    #[test]
    fn series_helpers_match_state_accessors() {
        let h = HamiltonianParams::new(1.0, 0.1, 0.0).unwrap();
        let table = build_coefficient_table(&NoiseSpec::default(), &h, 0.5, 2e-3).unwrap();
        let initial = QubitState::from_angles(&InitialStateSpec::new(1.2, 0.4).unwrap());
        let traj = integrate(&initial, &table, &h, 0.5, 1e-3, 10).unwrap();
        let coh = coherence_series(&traj);
        let norms = bloch_norm_series(&traj);
        let pur = purity_series(&traj);
        assert_eq!(coh.len(), traj.len());
        for i in 0..traj.len() {
            assert_eq!(coh[i].1, traj.states[i].coherence());
            assert_eq!(norms[i].1, traj.states[i].bloch().norm());
            assert_eq!(pur[i].1, traj.states[i].purity());
        }
    }

    proptest! {
        // Adding extra exponential damping to a damped oscillation can only
        // shorten the envelope crossing: dominance on a family whose
        // anchors stay aligned.
        #[test]
        fn extra_damping_never_delays_the_crossing(
            rate in 0.05..0.6f64,
            extra in 0.0..0.8f64,
            omega in 1.0..6.0f64,
        ) {
            let n = 3000;
            let t_end = 12.0;
            let base: Vec<(f64, f64)> = (0..=n).map(|i| {
                let t = t_end * i as f64 / n as f64;
                (t, (-rate * t).exp() * ((omega * t).cos().abs() + 0.05))
            }).collect();
            let damped: Vec<(f64, f64)> = base.iter()
                .map(|&(t, v)| (t, v * (-extra * t).exp()))
                .collect();
            let thr = default_threshold();
            let td_base = envelope_decoherence_time(&base, thr).unwrap().t_d;
            let td_damped = envelope_decoherence_time(&damped, thr).unwrap().t_d;
            // slack covers anchor positions shifting by a few samples
            match (td_base, td_damped) {
                (Some(a), Some(b)) => prop_assert!(b <= a + 0.05, "base {a}, damped {b}"),
                (None, Some(_)) => {}
                (Some(_), None) => prop_assert!(false, "damping removed the crossing"),
                (None, None) => {}
            }
        }
    }
}
