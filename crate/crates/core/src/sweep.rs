//! Exit-time measurements over a list of `eps` values, run on a small worker pool.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::interfaces::{exit_time, fit_timescale, hausdorff, ExitReference, ExitTime, ProbeSet, TimescaleFit};
use crate::model::ModelParams;
use crate::profiles::{build_profile, make_jump_function, max_r, ProfileMode};
use crate::solver::{simulate, RecordStride, SimConfig, SimTrace, StopReason};

/// Horizon of one sweep point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Horizon {
    Fixed(f64),
    /// `factor * exp(1 / eps)`.
    ExpScale(f64),
}

impl Horizon {
    pub fn at(&self, epsilon: f64) -> f64 {
        match *self {
            Horizon::Fixed(t) => t,
            Horizon::ExpScale(c) => c * (1.0 / epsilon).exp(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    /// Exponents and degeneracy; its `eps` is replaced per point.
    pub params: ModelParams,
    pub domain: (f64, f64),
    pub jumps: Vec<f64>,
    pub first_value: f64,
    pub delta1: f64,
    pub eps_list: Vec<f64>,
    /// Grid step is `eps / cells_per_eps`.
    pub cells_per_eps: f64,
    pub horizon: Horizon,
    pub dt_safety: f64,
    /// Steps between records on the first attempt.
    pub record_steps: usize,
    /// Step budget per point; a point that exhausts it is censored.
    pub max_steps: usize,
    pub probe: ProbeSet,
    pub jobs: usize,
}

impl SweepSpec {
    pub fn cells_for(&self, epsilon: f64) -> usize {
        let (a, b) = self.domain;
        ((b - a) * self.cells_per_eps / epsilon).round().max(4.0) as usize
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepPoint {
    pub epsilon: f64,
    pub cells: usize,
    pub t_max: f64,
    pub exit: ExitTime,
    pub stop_reason: StopReason,
    pub steps: usize,
    pub record_steps: usize,
    pub refinements: usize,
    pub wall_seconds: f64,
    pub bound_violation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepResult {
    pub points: Vec<SweepPoint>,
    pub fit: TimescaleFit,
}

impl SweepResult {
    pub fn all_censored(&self) -> bool {
        self.points.iter().all(|p| p.exit.censored)
    }
}

const MAX_REFINEMENTS: usize = 3;

fn run_point(spec: &SweepSpec, epsilon: f64) -> Result<SweepPoint> {
    let started = Instant::now();
    let params = spec.params.with_epsilon(epsilon)?;
    let (a, b) = spec.domain;
    let v = make_jump_function(a, b, &spec.jumps, spec.first_value)?;
    let cells = spec.cells_for(epsilon);
    let profile = build_profile(&params, &v, cells, ProfileMode::Any)?;
    let t_max = spec.horizon.at(epsilon);
    let delta1 = spec.delta1;
    let stop = |trace: &SimTrace| {
        let first = &trace.interface_positions[0];
        match trace.interface_positions.last() {
            Some(now) if now.is_empty() => true,
            Some(now) => hausdorff(first, now).map_or(true, |d| d > delta1),
            None => false,
        }
    };
    let mut record_steps = spec.record_steps.max(1);
    let mut refinements = 0;
    loop {
        let config = SimConfig {
            t_end: t_max,
            dt_safety: spec.dt_safety,
            record_every: RecordStride::Steps(record_steps),
            snapshot_every: 0,
            max_steps: spec.max_steps,
            probe: spec.probe.clone(),
            ..SimConfig::default()
        };
        let outcome = simulate(&params, &profile.field, &config, Some(&stop))?;
        let exit = exit_time(&outcome.trace, ExitReference::Profile(&v), delta1)?;
        if !exit.censored && exit.jump > 2.0 * delta1 && record_steps > 1 && refinements < MAX_REFINEMENTS {
            record_steps = (record_steps / 10).max(1);
            refinements += 1;
            continue;
        }
        return Ok(SweepPoint {
            epsilon,
            cells,
            t_max,
            exit,
            stop_reason: outcome.stop_reason,
            steps: outcome.trace.steps,
            record_steps,
            refinements,
            wall_seconds: started.elapsed().as_secs_f64(),
            bound_violation: outcome.trace.max_bound_violation(),
        });
    }
}

/// Runs every point of the sweep on `spec.jobs` threads and fits the exit times.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    if spec.eps_list.is_empty() {
        return Err(Error::InvalidParameter {
            name: "eps_list",
            reason: "no epsilon values".into(),
        });
    }
    let v = make_jump_function(spec.domain.0, spec.domain.1, &spec.jumps, spec.first_value)?;
    let r = max_r(&v);
    if !(spec.delta1 > 0.0 && spec.delta1 < r) {
        return Err(Error::InvalidParameter {
            name: "delta1",
            reason: format!("must lie in (0, {r}), got {}", spec.delta1),
        });
    }
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Result<SweepPoint>>> = Mutex::new(Vec::new());
    let jobs = spec.jobs.clamp(1, spec.eps_list.len());
    std::thread::scope(|s| {
        for _ in 0..jobs {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(&eps) = spec.eps_list.get(i) else { break };
                let r = run_point(spec, eps);
                results.lock().expect("no worker panicked").push(r);
            });
        }
    });
    let mut points = results
        .into_inner()
        .expect("no worker panicked")
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    points.sort_by(|p, q| p.epsilon.total_cmp(&q.epsilon));
    let pts: Vec<(f64, f64)> = points.iter().map(|p| (p.epsilon, p.exit.time)).collect();
    let censored: Vec<bool> = points.iter().map(|p| p.exit.censored).collect();
    Ok(SweepResult {
        fit: fit_timescale(&pts, &censored),
        points,
    })
}
