//! Interface sets `I_K[u] = u^{-1}(K)`, their Hausdorff distance, the exit
//! time of a layered state and regression of exit times against `eps`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::fit::{fit_line, LineFit};
use crate::profiles::{max_r, PiecewiseConstant};
use crate::solver::SimTrace;

/// A closed subset of `(-1, 1)` given as a union of closed intervals (points allowed).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeSet {
    intervals: Vec<(f64, f64)>,
}

impl ProbeSet {
    pub fn new(intervals: Vec<(f64, f64)>) -> Result<Self> {
        if intervals.is_empty() {
            return Err(Error::InvalidParameter {
                name: "K",
                reason: "probe set is empty".into(),
            });
        }
        for &(lo, hi) in &intervals {
            if !(lo <= hi) {
                return Err(Error::InvalidParameter {
                    name: "K",
                    reason: format!("interval [{lo}, {hi}] is reversed"),
                });
            }
            if !(lo > -1.0 && hi < 1.0) {
                return Err(Error::InvalidParameter {
                    name: "K",
                    reason: format!("[{lo}, {hi}] touches the wells; K must sit inside (-1, 1)"),
                });
            }
        }
        Ok(ProbeSet { intervals })
    }

    /// `K = {0}`.
    pub fn zero() -> Self {
        ProbeSet {
            intervals: vec![(0.0, 0.0)],
        }
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InterfaceSet {
    pub positions: Vec<f64>,
    pub probe: ProbeSet,
}

fn crossings(field: &Field, c: f64, out: &mut Vec<f64>) {
    let u = field.values();
    for i in 0..u.len() {
        if u[i] == c {
            out.push(field.x(i));
        }
        if i + 1 < u.len() {
            let (a, b) = (u[i] - c, u[i + 1] - c);
            if a * b < 0.0 {
                out.push(field.x(i) + field.step() * a / (a - b));
            }
        }
    }
}

/// Points where the piecewise-linear interpolant of `field` meets the
/// boundary of `K`, plus the nodes whose values lie strictly inside `K`.
pub fn interface_set(field: &Field, probe: &ProbeSet) -> Result<InterfaceSet> {
    let mut positions = Vec::new();
    for &(lo, hi) in &probe.intervals {
        crossings(field, lo, &mut positions);
        if hi > lo {
            crossings(field, hi, &mut positions);
            positions.extend(
                field
                    .values()
                    .iter()
                    .enumerate()
                    .filter(|(_, &u)| u > lo && u < hi)
                    .map(|(i, _)| field.x(i)),
            );
        }
    }
    positions.sort_by(f64::total_cmp);
    positions.dedup();
    Ok(InterfaceSet {
        positions,
        probe: probe.clone(),
    })
}

/// `sup_{x in from} dist(x, to)` for sorted, nonempty inputs.
fn directed(from: &[f64], to: &[f64]) -> f64 {
    let mut j = 0;
    let mut worst: f64 = 0.0;
    for &x in from {
        while j + 1 < to.len() && to[j + 1] <= x {
            j += 1;
        }
        let mut d = (x - to[j]).abs();
        if j + 1 < to.len() {
            d = d.min((to[j + 1] - x).abs());
        }
        worst = worst.max(d);
    }
    worst
}

/// Hausdorff distance of two sorted finite sets.
pub fn hausdorff(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(directed(x, y).max(directed(y, x)))
}

/// What the interface positions are compared against.
#[derive(Clone, Copy, Debug)]
pub enum ExitReference<'a> {
    /// The jump function the run started from; the reference set is the first record.
    Profile(&'a PiecewiseConstant),
    Interfaces(&'a InterfaceSet),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExitTime {
    /// Interpolated exit time, or the last recorded time when censored.
    pub time: f64,
    pub censored: bool,
    /// Interfaces disappeared (fewer than in the reference) by the exit record.
    pub annihilation: bool,
    /// Growth of the distance across the record where it was exceeded.
    pub jump: f64,
    /// Largest distance seen up to the exit (or the end of the trace).
    pub max_distance: f64,
}

pub fn exit_time(trace: &SimTrace, reference: ExitReference<'_>, delta1: f64) -> Result<ExitTime> {
    if !(delta1 > 0.0) {
        return Err(Error::InvalidParameter {
            name: "delta1",
            reason: format!("must be positive, got {delta1}"),
        });
    }
    let reference: &[f64] = match reference {
        ExitReference::Profile(v) => {
            let r = max_r(v);
            if !(delta1 < r) {
                return Err(Error::InvalidParameter {
                    name: "delta1",
                    reason: format!("must lie below max_r(v) = {r}, got {delta1}"),
                });
            }
            trace.interface_positions.first().map(Vec::as_slice).unwrap_or(&[])
        }
        ExitReference::Interfaces(set) => &set.positions,
    };
    if reference.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut previous = 0.0;
    let mut max_distance: f64 = 0.0;
    for k in 0..trace.len() {
        let positions = &trace.interface_positions[k];
        let annihilation = positions.len() < reference.len();
        let d = if positions.is_empty() {
            f64::INFINITY
        } else {
            hausdorff(reference, positions)?
        };
        if d > delta1 || positions.is_empty() {
            let time = if k == 0 || !d.is_finite() {
                trace.times[k]
            } else {
                let (t0, t1) = (trace.times[k - 1], trace.times[k]);
                t0 + (t1 - t0) * (delta1 - previous) / (d - previous)
            };
            return Ok(ExitTime {
                time,
                censored: false,
                annihilation,
                jump: d - previous,
                max_distance: d,
            });
        }
        max_distance = max_distance.max(d);
        previous = d;
    }
    Ok(ExitTime {
        time: trace.final_time(),
        censored: true,
        annihilation: false,
        jump: 0.0,
        max_distance,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Exponential,
    Algebraic,
    Inconclusive,
}

/// A censored point read as a lower bound on its exit time.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CensoredBound {
    pub epsilon: f64,
    pub lower_bound: f64,
    /// Exit time the preferred fit predicts, if there is one.
    pub predicted: Option<f64>,
    /// The prediction does not contradict the bound.
    pub consistent: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TimescaleFit {
    pub points: Vec<(f64, f64)>,
    pub censored: Vec<bool>,
    /// `ln T` against `1/eps`.
    pub exp_fit: Option<LineFit>,
    /// `ln T` against `ln(1/eps)`.
    pub alg_fit: Option<LineFit>,
    pub verdict: Verdict,
    pub censored_bounds: Vec<CensoredBound>,
    pub diagnostics: Vec<String>,
}

/// Unexplained variance of the losing model must be at least this multiple of the winner's.
pub const VERDICT_VARIANCE_RATIO: f64 = 4.0;
/// And the coefficients of determination must differ by more than this.
pub const VERDICT_MIN_GAP: f64 = 1e-3;

fn prefers(win: &LineFit, lose: &LineFit) -> bool {
    win.slope > 0.0
        && lose.unexplained() >= VERDICT_VARIANCE_RATIO * win.unexplained()
        && win.r_squared - lose.r_squared > VERDICT_MIN_GAP
}

/// Regresses `ln T` on `1/eps` and on `ln(1/eps)` over the uncensored points.
pub fn fit_timescale(points: &[(f64, f64)], censored: &[bool]) -> TimescaleFit {
    let mut diagnostics = Vec::new();
    let censored: Vec<bool> = if censored.len() == points.len() {
        censored.to_vec()
    } else {
        diagnostics.push(format!(
            "censoring mask has {} entries for {} points; treating all as uncensored",
            censored.len(),
            points.len()
        ));
        vec![false; points.len()]
    };
    let usable: Vec<(f64, f64)> = points
        .iter()
        .zip(&censored)
        .filter(|(p, c)| !**c && p.0 > 0.0 && p.1 > 0.0 && p.1.is_finite())
        .map(|(p, _)| *p)
        .collect();
    let (exp_fit, alg_fit) = if usable.len() >= 3 {
        let ln_t: Vec<f64> = usable.iter().map(|p| p.1.ln()).collect();
        let inv: Vec<f64> = usable.iter().map(|p| 1.0 / p.0).collect();
        let ln_inv: Vec<f64> = inv.iter().map(|v| v.ln()).collect();
        (fit_line(&inv, &ln_t), fit_line(&ln_inv, &ln_t))
    } else {
        diagnostics.push(format!(
            "{} uncensored points; at least 3 are needed for a fit",
            usable.len()
        ));
        (None, None)
    };
    let verdict = match (&exp_fit, &alg_fit) {
        (Some(e), Some(a)) if prefers(e, a) => Verdict::Exponential,
        (Some(e), Some(a)) if prefers(a, e) => Verdict::Algebraic,
        _ => Verdict::Inconclusive,
    };
    let preferred = match verdict {
        Verdict::Exponential => exp_fit.map(|f| (f, false)),
        Verdict::Algebraic => alg_fit.map(|f| (f, true)),
        Verdict::Inconclusive => None,
    };
    let censored_bounds = points
        .iter()
        .zip(&censored)
        .filter(|(_, c)| **c)
        .map(|(&(epsilon, bound), _)| {
            let predicted = preferred.map(|(f, log_x)| {
                let x = if log_x { (1.0 / epsilon).ln() } else { 1.0 / epsilon };
                (f.intercept + f.slope * x).exp()
            });
            CensoredBound {
                epsilon,
                lower_bound: bound,
                predicted,
                consistent: predicted.map(|p| p >= bound),
            }
        })
        .collect();
    TimescaleFit {
        points: points.to_vec(),
        censored,
        exp_fit,
        alg_fit,
        verdict,
        censored_bounds,
        diagnostics,
    }
}
