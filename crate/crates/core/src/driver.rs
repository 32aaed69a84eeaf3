//! End-to-end orchestration: config in, trajectory, report and CSV out.
//!
//! Sweep points run in parallel. Results carry their input index, so the
//! rendered table is in input order and byte-identical regardless of how
//! the work was scheduled.

use rayon::prelude::*;

use crate::coefficients::{build_coefficient_table, coefficients_at, CoefficientTable};
use crate::config::{ResolvedRun, RunConfig, SweepConfig};
use crate::error::Result;
use crate::evolver::{integrate, Trajectory};
use crate::model::QubitState;
use crate::observables::{decoherence_report, DecoherenceReport};

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub resolved: ResolvedRun,
    pub table: CoefficientTable,
    pub trajectory: Trajectory,
    pub report: DecoherenceReport,
}

pub fn execute_run(config: &RunConfig) -> Result<RunOutcome> {
    let resolved = config.resolved()?;
    let table = build_coefficient_table(
        &resolved.noise,
        &resolved.hamiltonian,
        resolved.t_max,
        resolved.h_coeff,
    )?;
    let initial = QubitState::from_angles(&resolved.initial_state);
    let trajectory = integrate(
        &initial,
        &table,
        &resolved.hamiltonian,
        resolved.t_max,
        resolved.dt,
        resolved.output_stride,
    )?;
    let report = decoherence_report(&trajectory, &resolved.noise, resolved.threshold)?;
    Ok(RunOutcome { resolved, table, trajectory, report })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSummary {
    pub t_d: Option<f64>,
    pub final_bloch_norm: f64,
    pub final_abs_rho01: f64,
}

#[derive(Debug)]
pub struct SweepRecord {
    pub value: f64,
    pub outcome: Result<SweepSummary>,
}

/// Run every sweep point. Point failures are recorded, not propagated, so
/// one divergent parameter cannot abort a scan.
pub fn execute_sweep(sweep: &SweepConfig) -> Vec<SweepRecord> {
    sweep
        .values
        .par_iter()
        .map(|&value| {
            let outcome = sweep.with_value(value).and_then(|cfg| execute_run(&cfg)).map(|out| {
                SweepSummary {
                    t_d: out.report.t_d_measured,
                    final_bloch_norm: out.report.final_bloch_norm,
                    final_abs_rho01: out.report.final_abs_rho01,
                }
            });
            SweepRecord { value, outcome }
        })
        .collect()
}

fn push_float(out: &mut String, v: f64) {
    use std::fmt::Write;
    write!(out, "{v:.16e}").expect("write to String");
}

pub const TRAJECTORY_CSV_HEADER: &str =
    "t,r_x,r_y,r_z,bloch_norm,re_rho01,im_rho01,abs_rho01,purity";

pub fn trajectory_csv(traj: &Trajectory) -> String {
    let mut out = String::with_capacity(64 + traj.len() * 220);
    out.push_str(TRAJECTORY_CSV_HEADER);
    out.push('\n');
    for (t, state) in traj.times.iter().zip(&traj.states) {
        let r = state.bloch();
        let rho01 = state.rho01();
        for (i, v) in [*t, r.x, r.y, r.z, r.norm(), rho01.re, rho01.im, state.coherence(), state.purity()]
            .into_iter()
            .enumerate()
        {
            if i > 0 {
                out.push(',');
            }
            push_float(&mut out, v);
        }
        out.push('\n');
    }
    out
}

pub const COEFFICIENTS_CSV_HEADER: &str =
    "t,d_xx,d_yy,d_zz,f_xy,f_xz,f_zx,f_zy,f_yx,f_yz,g_xy,g_xz,g_zx,g_zy,g_yx,g_yz";

pub fn coefficients_csv(table: &CoefficientTable) -> String {
    let mut out = String::with_capacity(64 + table.len() * 380);
    out.push_str(COEFFICIENTS_CSV_HEADER);
    out.push('\n');
    for t in table.grid_times() {
        let c = coefficients_at(table, t).expect("grid node is inside the table");
        for (i, v) in [
            c.t, c.d_xx, c.d_yy, c.d_zz, c.f_xy, c.f_xz, c.f_zx, c.f_zy, c.f_yx, c.f_yz,
            c.g.g_xy, c.g.g_xz, c.g.g_zx, c.g.g_zy, c.g.g_yx, c.g.g_yz,
        ]
        .into_iter()
        .enumerate()
        {
            if i > 0 {
                out.push(',');
            }
            push_float(&mut out, v);
        }
        out.push('\n');
    }
    out
}

pub const SWEEP_CSV_HEADER: &str = "value,t_d,final_bloch_norm,final_abs_rho01";

pub fn sweep_csv(records: &[SweepRecord]) -> String {
    let mut out = String::with_capacity(64 + records.len() * 100);
    out.push_str(SWEEP_CSV_HEADER);
    out.push('\n');
    for rec in records {
        push_float(&mut out, rec.value);
        match &rec.outcome {
            Ok(s) => {
                out.push(',');
                match s.t_d {
                    Some(t_d) => push_float(&mut out, t_d),
                    None => out.push_str("none"),
                }
                out.push(',');
                push_float(&mut out, s.final_bloch_norm);
                out.push(',');
                push_float(&mut out, s.final_abs_rho01);
            }
            Err(_) => out.push_str(",error,error,error"),
        }
        out.push('\n');
    }
    out
}

/// The full artifact of a run: the trajectory table, a blank line, then
/// the `key = value` report block.
pub fn run_document(outcome: &RunOutcome) -> String {
    let mut out = trajectory_csv(&outcome.trajectory);
    out.push('\n');
    out.push_str(&outcome.report.to_string());
    out
}
