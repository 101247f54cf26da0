//! The Ginzburg-Landau energy
//!
//! ```text
//! E[u] = integral_a^b ( eps/2 D(u) u_x^2 + F(u)/eps ) dx
//! ```
//!
//! together with the transition-cost lower bounds and the exponent sequences
//! that set the algebraic slow-motion scales.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::model::{theta, ModelParams, ThetaOptions, ThetaScale};
use crate::profiles::PiecewiseConstant;
use crate::quadrature::{gamma_constant, integrate_adaptive};

/// Energy of the cells whose midpoints fall in `(lo, hi)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PanelEnergy {
    pub lo: f64,
    pub hi: f64,
    pub energy: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EnergyReport {
    pub total: f64,
    pub gradient_part: f64,
    pub potential_part: f64,
    pub per_panel: Vec<PanelEnergy>,
}

/// Per-cell `(gradient, potential)` contributions, with `D` and `F` averaged
/// over the two nodes of the cell and a forward-difference `u_x`.
fn cell_parts<'a>(params: &'a ModelParams, field: &'a Field) -> impl Iterator<Item = (f64, f64)> + 'a {
    let eps = params.epsilon();
    let h = field.step();
    let u = field.values();
    u.windows(2).map(move |w| {
        let d = 0.5 * (params.diffusivity(w[0]) + params.diffusivity(w[1]));
        let f = 0.5 * (params.potential(w[0]) + params.potential(w[1]));
        let ux = (w[1] - w[0]) / h;
        (h * 0.5 * eps * d * ux * ux, h * f / eps)
    })
}

/// Midpoint-rule energy of `field`.
pub fn energy(params: &ModelParams, field: &Field) -> EnergyReport {
    let (gradient_part, potential_part) = cell_parts(params, field)
        .fold((0.0, 0.0), |(g, p), (cg, cp)| (g + cg, p + cp));
    EnergyReport {
        total: gradient_part + potential_part,
        gradient_part,
        potential_part,
        per_panel: Vec::new(),
    }
}

/// [`energy`] plus the split over the windows `(h_i - r, h_i + r)` around the jumps of `v`.
pub fn energy_with_panels(
    params: &ModelParams,
    field: &Field,
    v: &PiecewiseConstant,
    r: f64,
) -> EnergyReport {
    let mut report = energy(params, field);
    let h = field.step();
    let cells: Vec<f64> = cell_parts(params, field).map(|(g, p)| g + p).collect();
    report.per_panel = v
        .jumps()
        .iter()
        .map(|&hj| {
            let (lo, hi) = (hj - r, hj + r);
            let energy = cells
                .iter()
                .enumerate()
                .filter(|(i, _)| {
                    let mid = field.a() + (*i as f64 + 0.5) * h;
                    mid > lo && mid < hi
                })
                .map(|(_, e)| e)
                .sum();
            PanelEnergy { lo, hi, energy }
        })
        .collect();
    report
}

/// `| integral_{u_c}^{u_d} sqrt(2 D F) ds |`, the least energy any profile
/// moving between these two values can carry.
pub fn young_bound(params: &ModelParams, u_c: f64, u_d: f64) -> Result<f64> {
    if u_c == u_d {
        return Ok(0.0);
    }
    let (lo, hi) = if u_c < u_d { (u_c, u_d) } else { (u_d, u_c) };
    Ok(integrate_adaptive(|s| params.transition_density(s), lo, hi, 1e-12)?.value)
}

/// Exponents `k_1 .. k_{j_max}` and their limit `beta` (`+inf` when the
/// sequence is unbounded).
pub fn kj_sequence(params: &ModelParams, j_max: usize) -> Result<(Vec<f64>, f64)> {
    if j_max == 0 {
        return Err(Error::InvalidParameter {
            name: "j_max",
            reason: "need at least one term".into(),
        });
    }
    let (m, n) = (params.m(), params.n());
    let (alpha, k2) = match params.degeneracy() {
        crate::model::Degeneracy::DoubleDegenerate => {
            let a = (n + m + 2.0) / (2.0 * n);
            (a, a)
        }
        crate::model::Degeneracy::SingleDegenerate => ((n + 2.0) / (2.0 * n), (n + 1.0) / (2.0 * n)),
    };
    let mut k = Vec::with_capacity(j_max);
    k.push(0.0);
    if j_max > 1 {
        k.push(k2);
    }
    while k.len() < j_max {
        let last = *k.last().unwrap();
        k.push(alpha * (last + 1.0));
    }
    let beta = if alpha < 1.0 {
        alpha / (1.0 - alpha)
    } else {
        f64::INFINITY
    };
    Ok((k, beta))
}

/// `eps -> N gamma - theta(eps)` with unit constant in front of `theta`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LowerBound {
    pub layers: usize,
    pub gamma: f64,
    #[serde(skip)]
    pub theta: ThetaScale,
}

impl LowerBound {
    pub fn eval(&self, epsilon: f64) -> f64 {
        self.layers as f64 * self.gamma - self.theta.eval(epsilon)
    }
}

pub fn lower_bound(
    params: &ModelParams,
    layers: usize,
    r: f64,
    options: ThetaOptions,
) -> Result<LowerBound> {
    let theta = theta(params, r, options)?;
    Ok(LowerBound {
        layers,
        gamma: gamma_constant(params)?,
        theta,
    })
}

/// Outcome of the transition-layer-structure test.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TransitionCheck {
    pub is_tls: bool,
    pub l1_distance: f64,
    /// `E[u] - N gamma`; negative values are allowed.
    pub energy_excess: f64,
    /// The energy ceiling `N gamma + slack theta + discretization allowance` that was applied.
    pub energy_ceiling: f64,
}

/// Relative slack granted to the energy ceiling for quadrature error in `E`.
pub const ENERGY_ALLOWANCE: f64 = 1e-6;

/// Tests `||u - v||_1 <= delta` and `E[u] <= N gamma + slack theta(eps)`.
///
/// `theta` may be `None` for regimes without a slow-motion scale, in which
/// case only the discretization allowance is added to `N gamma`.
pub fn check_transition_structure(
    params: &ModelParams,
    field: &Field,
    v: &PiecewiseConstant,
    delta: f64,
    slack: f64,
    theta: Option<&ThetaScale>,
) -> Result<TransitionCheck> {
    if field.a() != v.a() || field.b() != v.b() {
        return Err(Error::FieldMismatch(format!(
            "field lives on [{}, {}] but the jump function on [{}, {}]",
            field.a(),
            field.b(),
            v.a(),
            v.b()
        )));
    }
    let l1_distance = v.l1_distance(field);
    let n_gamma = v.jumps().len() as f64 * gamma_constant(params)?;
    let e = energy(params, field).total;
    let scale = theta.map_or(0.0, |t| t.eval(params.epsilon()));
    let energy_ceiling = n_gamma + slack * scale + ENERGY_ALLOWANCE * n_gamma.max(1.0);
    Ok(TransitionCheck {
        is_tls: l1_distance <= delta && e <= energy_ceiling,
        l1_distance,
        energy_excess: e - n_gamma,
        energy_ceiling,
    })
}
