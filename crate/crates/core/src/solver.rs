//! Method-of-lines integration of
//!
//! ```text
//! u_t = eps^2 (D(u) u_x)_x - (eps^2 / 2) D'(u) u_x^2 - F'(u),   u_x = 0 at a and b
//! ```
//!
//! with a conservative flux discretization and classical RK4 in time.

use serde::Serialize;

use crate::energy::energy;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::interfaces::{interface_set, ProbeSet};
use crate::model::ModelParams;

/// How often the state is recorded.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum RecordStride {
    Steps(usize),
    /// Record at the first step reaching each multiple of this time.
    Time(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimConfig {
    pub t_end: f64,
    pub dt_safety: f64,
    pub record_every: RecordStride,
    /// Keep a full snapshot every this many records (0 keeps only the first and last).
    pub snapshot_every: usize,
    pub max_steps: usize,
    pub bound_tolerance: f64,
    /// Largest tolerated energy rise between records, relative to `E(0)`.
    pub energy_tolerance: f64,
    /// `dt` is recomputed after this many steps.
    pub dt_refresh: usize,
    pub probe: ProbeSet,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            t_end: 1.0,
            dt_safety: 0.5,
            record_every: RecordStride::Steps(10),
            snapshot_every: 0,
            max_steps: usize::MAX,
            bound_tolerance: 1e-8,
            energy_tolerance: 1e-8,
            dt_refresh: 100,
            probe: ProbeSet::zero(),
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |name, reason: String| Err(Error::InvalidParameter { name, reason });
        if !(self.t_end > 0.0 && self.t_end.is_finite()) {
            return bad("t_end", format!("must be positive and finite, got {}", self.t_end));
        }
        if !(self.dt_safety > 0.0 && self.dt_safety <= 1.0) {
            return bad("dt_safety", format!("must lie in (0, 1], got {}", self.dt_safety));
        }
        match self.record_every {
            RecordStride::Steps(0) => return bad("record_every", "stride must be at least one step".into()),
            RecordStride::Time(t) if !(t > 0.0) => {
                return bad("record_every", format!("time stride must be positive, got {t}"))
            }
            _ => {}
        }
        if self.dt_refresh == 0 {
            return bad("dt_refresh", "must be at least one step".into());
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Snapshot {
    pub time: f64,
    #[serde(skip)]
    pub field: Field,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimTrace {
    pub times: Vec<f64>,
    pub energies: Vec<f64>,
    /// Running `eps^-1 sum dt_k ||(u_{k+1} - u_k) / dt_k||^2` between records.
    pub dissipation: Vec<f64>,
    pub interface_positions: Vec<Vec<f64>>,
    /// Running maximum of `(|u| - 1)_+`, per record.
    pub bound_violation: Vec<f64>,
    pub snapshots: Vec<Snapshot>,
    #[serde(skip)]
    pub final_field: Field,
    pub steps: usize,
}

impl SimTrace {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn max_bound_violation(&self) -> f64 {
        self.bound_violation.last().copied().unwrap_or(0.0)
    }

    pub fn final_time(&self) -> f64 {
        self.times.last().copied().unwrap_or(0.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StopReason {
    Completed,
    Predicate,
    MaxSteps,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimOutcome {
    pub trace: SimTrace,
    pub stop_reason: StopReason,
    /// Set when `(|u| - 1)_+` exceeded the configured tolerance at some step.
    pub bound_warning: bool,
}

/// Scratch space for the right-hand side.
struct Workspace {
    d: Vec<f64>,
    k: [Vec<f64>; 4],
    stage: Vec<f64>,
}

impl Workspace {
    fn new(len: usize) -> Self {
        Workspace {
            d: vec![0.0; len],
            k: [vec![0.0; len], vec![0.0; len], vec![0.0; len], vec![0.0; len]],
            stage: vec![0.0; len],
        }
    }
}

fn rhs(params: &ModelParams, h: f64, u: &[f64], d: &mut [f64], out: &mut [f64]) {
    let eps2 = params.epsilon() * params.epsilon();
    let c = eps2 / (h * h);
    let last = u.len() - 1;
    for (di, &ui) in d.iter_mut().zip(u) {
        *di = params.diffusivity(ui);
    }
    // mirrored ghosts: u_{-1} = u_1, u_{M+1} = u_{M-1}
    let g0 = 0.5 * (d[0] + d[1]);
    out[0] = 2.0 * c * g0 * (u[1] - u[0]) - params.potential_prime(u[0]);
    let gl = 0.5 * (d[last - 1] + d[last]);
    out[last] = -2.0 * c * gl * (u[last] - u[last - 1]) - params.potential_prime(u[last]);
    let inv2h = 0.5 / h;
    for i in 1..last {
        let gp = 0.5 * (d[i] + d[i + 1]);
        let gm = 0.5 * (d[i - 1] + d[i]);
        let ux = (u[i + 1] - u[i - 1]) * inv2h;
        out[i] = c * (gp * (u[i + 1] - u[i]) - gm * (u[i] - u[i - 1]))
            - 0.5 * eps2 * params.diffusivity_prime(u[i]) * ux * ux
            - params.potential_prime(u[i]);
    }
}

/// Semi-discrete right-hand side at every node.
pub fn spatial_operator(params: &ModelParams, field: &Field) -> Field {
    let u = field.values();
    let mut d = vec![0.0; u.len()];
    let mut out = vec![0.0; u.len()];
    rhs(params, field.step(), u, &mut d, &mut out);
    Field::new(field.a(), field.b(), out).expect("finite operator values")
}

const FD_DELTA: f64 = 1e-4;

/// Explicit stability limit of the diffusion and reaction parts, times `safety`.
pub fn stable_dt(params: &ModelParams, field: &Field, safety: f64) -> f64 {
    let h = field.step();
    let eps2 = params.epsilon() * params.epsilon();
    let (max_d, max_react) = field.values().iter().fold((0.0f64, 0.0f64), |(md, mr), &u| {
        let react = (params.potential_prime(u + FD_DELTA) - params.potential_prime(u - FD_DELTA)).abs()
            / (2.0 * FD_DELTA);
        (md.max(params.diffusivity(u)), mr.max(react))
    });
    let diffusion = h * h / (2.0 * eps2 * max_d + f64::MIN_POSITIVE);
    let reaction = 1.0 / (max_react + f64::MIN_POSITIVE);
    safety * diffusion.min(reaction)
}

fn rk4_in_place(params: &ModelParams, h: f64, u: &mut [f64], dt: f64, ws: &mut Workspace) {
    let Workspace { d, k, stage } = ws;
    let [k1, k2, k3, k4] = k;
    rhs(params, h, u, d, k1);
    for ((s, &ui), &ki) in stage.iter_mut().zip(u.iter()).zip(k1.iter()) {
        *s = ui + 0.5 * dt * ki;
    }
    rhs(params, h, stage, d, k2);
    for ((s, &ui), &ki) in stage.iter_mut().zip(u.iter()).zip(k2.iter()) {
        *s = ui + 0.5 * dt * ki;
    }
    rhs(params, h, stage, d, k3);
    for ((s, &ui), &ki) in stage.iter_mut().zip(u.iter()).zip(k3.iter()) {
        *s = ui + dt * ki;
    }
    rhs(params, h, stage, d, k4);
    let w = dt / 6.0;
    for i in 0..u.len() {
        u[i] += w * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);
    }
}

/// One classical RK4 step of length `dt`. No clamping is applied.
pub fn step(params: &ModelParams, field: &Field, dt: f64) -> Result<Field> {
    let mut u = field.values().to_vec();
    let mut ws = Workspace::new(u.len());
    rk4_in_place(params, field.step(), &mut u, dt, &mut ws);
    if u.iter().any(|v| !v.is_finite()) {
        return Err(Error::BlowUp { step: 1, time: dt });
    }
    field.with_values(u)
}

/// Squared L2 norm by the trapezoid rule.
fn l2_squared(diff: impl Iterator<Item = f64>, len: usize, h: f64) -> f64 {
    let mut total = 0.0;
    for (i, v) in diff.enumerate() {
        let w = if i == 0 || i + 1 == len { 0.5 } else { 1.0 };
        total += w * v * v;
    }
    h * total
}

pub type StopPredicate<'a> = &'a dyn Fn(&SimTrace) -> bool;

/// Integrates from `initial` until `t_end`, `max_steps`, or `stop` returns true
/// after a record.
pub fn simulate(
    params: &ModelParams,
    initial: &Field,
    config: &SimConfig,
    stop: Option<StopPredicate<'_>>,
) -> Result<SimOutcome> {
    config.validate()?;
    let outside = initial
        .values()
        .iter()
        .map(|u| (u.abs() - 1.0).max(0.0))
        .fold(0.0, f64::max);
    if outside > config.bound_tolerance {
        return Err(Error::InvalidParameter {
            name: "initial",
            reason: format!("initial data leaves [-1, 1] by {outside:e}"),
        });
    }
    let h = initial.step();
    let len = initial.values().len();
    let mut u = initial.values().to_vec();
    let mut recorded = u.clone();
    let mut ws = Workspace::new(len);
    let e0 = energy(params, initial).total;
    let mut trace = SimTrace {
        times: vec![0.0],
        energies: vec![e0],
        dissipation: vec![0.0],
        interface_positions: vec![interface_set(initial, &config.probe)?.positions],
        bound_violation: vec![outside],
        snapshots: vec![Snapshot {
            time: 0.0,
            field: initial.clone(),
        }],
        final_field: initial.clone(),
        steps: 0,
    };
    let mut t = 0.0;
    let mut t_recorded = 0.0;
    let mut dt = stable_dt(params, initial, config.dt_safety);
    let mut worst_bound = outside;
    let mut steps_since_record = 0usize;
    let mut next_record_time = match config.record_every {
        RecordStride::Time(s) => s,
        RecordStride::Steps(_) => f64::INFINITY,
    };
    let mut records = 0usize;
    let stop_reason = loop {
        if t >= config.t_end {
            break StopReason::Completed;
        }
        if trace.steps >= config.max_steps {
            break StopReason::MaxSteps;
        }
        if trace.steps > 0 && trace.steps.is_multiple_of(config.dt_refresh) {
            let current = initial.with_values(u.clone())?;
            dt = stable_dt(params, &current, config.dt_safety);
        }
        let this_dt = dt.min(config.t_end - t);
        rk4_in_place(params, h, &mut u, this_dt, &mut ws);
        trace.steps += 1;
        steps_since_record += 1;
        t = if this_dt == config.t_end - t { config.t_end } else { t + this_dt };
        let mut finite = true;
        for &v in &u {
            finite &= v.is_finite();
            worst_bound = worst_bound.max(v.abs() - 1.0);
        }
        if !finite {
            return Err(Error::BlowUp {
                step: trace.steps,
                time: t,
            });
        }
        let due = match config.record_every {
            RecordStride::Steps(s) => steps_since_record >= s,
            RecordStride::Time(_) => t >= next_record_time,
        };
        if !(due || t >= config.t_end || trace.steps >= config.max_steps) {
            continue;
        }
        if let RecordStride::Time(s) = config.record_every {
            while next_record_time <= t {
                next_record_time += s;
            }
        }
        steps_since_record = 0;
        records += 1;
        let field = initial.with_values(u.clone())?;
        let e = energy(params, &field).total;
        let previous = *trace.energies.last().unwrap();
        if e > previous + config.energy_tolerance * e0.max(f64::MIN_POSITIVE) {
            return Err(Error::EnergyIncrease {
                before: previous,
                after: e,
                time: t,
            });
        }
        let span = t - t_recorded;
        let du2 = l2_squared(u.iter().zip(&recorded).map(|(a, b)| a - b), len, h);
        let dissipation = trace.dissipation.last().unwrap() + du2 / (params.epsilon() * span);
        recorded.copy_from_slice(&u);
        t_recorded = t;
        trace.times.push(t);
        trace.energies.push(e);
        trace.dissipation.push(dissipation);
        trace.interface_positions.push(interface_set(&field, &config.probe)?.positions);
        trace.bound_violation.push(worst_bound.max(0.0));
        if config.snapshot_every > 0 && records.is_multiple_of(config.snapshot_every) {
            trace.snapshots.push(Snapshot {
                time: t,
                field: field.clone(),
            });
        }
        trace.final_field = field;
        if let Some(pred) = stop {
            if pred(&trace) {
                break StopReason::Predicate;
            }
        }
    };
    if trace.snapshots.last().map(|s| s.time) != Some(trace.final_time()) {
        trace.snapshots.push(Snapshot {
            time: trace.final_time(),
            field: trace.final_field.clone(),
        });
    }
    Ok(SimOutcome {
        bound_warning: worst_bound > config.bound_tolerance,
        trace,
        stop_reason,
    })
}

/// `|E(0) - E(T) - dissipation(T)| / max(E(0), 1e-30)`.
pub fn energy_identity_residual(trace: &SimTrace) -> f64 {
    let (Some(&e0), Some(&et), Some(&diss)) =
        (trace.energies.first(), trace.energies.last(), trace.dissipation.last())
    else {
        return 0.0;
    };
    (e0 - et - diss).abs() / e0.max(1e-30)
}
