//! Step functions `v` with values `+-1` and the glued multi-layer profiles
//! built from copies of the standing wave centred at the jumps of `v`.

use serde::Serialize;

use crate::energy::energy;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::model::{Degeneracy, ModelParams, RegimeTag};
use crate::waves::{omega_eps, standing_wave, StandingWave};

/// `v : [a, b] -> {-1, +1}` jumping at `h_1 < ... < h_N`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PiecewiseConstant {
    a: f64,
    b: f64,
    jumps: Vec<f64>,
    first_value: f64,
}

pub fn make_jump_function(a: f64, b: f64, jumps: &[f64], first_value: f64) -> Result<PiecewiseConstant> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::InvalidJumps(format!("need finite a < b, got [{a}, {b}]")));
    }
    if first_value != 1.0 && first_value != -1.0 {
        return Err(Error::InvalidJumps(format!("first value must be +1 or -1, got {first_value}")));
    }
    if let Some(&h) = jumps.iter().find(|&&h| !(h > a && h < b)) {
        return Err(Error::InvalidJumps(format!("jump {h} lies outside ({a}, {b})")));
    }
    if let Some(w) = jumps.windows(2).find(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidJumps(format!(
            "jumps must be strictly increasing ({} then {})",
            w[0], w[1]
        )));
    }
    Ok(PiecewiseConstant {
        a,
        b,
        jumps: jumps.to_vec(),
        first_value,
    })
}

impl PiecewiseConstant {
    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn jumps(&self) -> &[f64] {
        &self.jumps
    }

    pub fn first_value(&self) -> f64 {
        self.first_value
    }

    pub fn last_value(&self) -> f64 {
        self.value_on_piece(self.jumps.len())
    }

    fn value_on_piece(&self, i: usize) -> f64 {
        if i.is_multiple_of(2) {
            self.first_value
        } else {
            -self.first_value
        }
    }

    /// Value of `v` at `x`; at a jump the value to the right is returned.
    pub fn value_at(&self, x: f64) -> f64 {
        self.value_on_piece(self.jumps.partition_point(|&h| h <= x))
    }

    /// `||u - v||_1` by the trapezoid rule, with cells split at the jumps of `v`.
    pub fn l1_distance(&self, field: &Field) -> f64 {
        let h = field.step();
        let u = field.values();
        let mut total = 0.0;
        for i in 0..field.cells() {
            let (x0, x1) = (field.x(i), field.x(i + 1));
            let lerp = |x: f64| u[i] + (u[i + 1] - u[i]) * (x - x0) / h;
            let mut left = x0;
            let start = self.jumps.partition_point(|&j| j <= x0);
            for &j in self.jumps[start..].iter().take_while(|&&j| j < x1) {
                let v = self.value_at(0.5 * (left + j));
                total += 0.5 * (j - left) * ((lerp(left) - v).abs() + (lerp(j) - v).abs());
                left = j;
            }
            let v = self.value_at(0.5 * (left + x1));
            total += 0.5 * (x1 - left) * ((lerp(left) - v).abs() + (u[i + 1] - v).abs());
        }
        total
    }

    /// Half the smallest spacing between jumps, or the distance of the outer
    /// jumps to the boundary if smaller.
    pub fn delta(&self) -> f64 {
        max_r(self)
    }
}

/// Largest `r` with `a <= h_1 - r`, `h_N + r <= b` and `h_i + r <= h_{i+1} - r`.
pub fn max_r(v: &PiecewiseConstant) -> f64 {
    let Some((&first, &last)) = v.jumps.first().zip(v.jumps.last()) else {
        return v.b - v.a;
    };
    v.jumps
        .windows(2)
        .map(|w| 0.5 * (w[1] - w[0]))
        .fold((first - v.a).min(v.b - last), f64::min)
}

/// Largest `eps` for which the glued profile is a compacton; `+inf` when the
/// standing wave never touches the wells.
pub fn epsilon_bar(params: &ModelParams, v: &PiecewiseConstant) -> Result<f64> {
    if params.regime().tag != RegimeTag::TouchingWave {
        return Ok(f64::INFINITY);
    }
    let (_, omega) = omega_eps(params)?;
    Ok(max_r(v) / (omega / params.epsilon()))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum ProfileMode {
    /// Glue the waves whatever `eps` is.
    #[default]
    Any,
    /// Refuse unless `eps < epsilon_bar`.
    Compacton,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TransitionProfile {
    #[serde(skip)]
    pub field: Field,
    pub jumps: Vec<f64>,
    /// Panel boundaries `m_1 = a, m_i = (h_{i-1} + h_i) / 2, m_{N+1} = b`.
    pub midpoints: Vec<f64>,
    pub stationary: bool,
    pub energy: f64,
    pub epsilon_bar: f64,
}

fn panel_bounds(v: &PiecewiseConstant) -> Vec<f64> {
    let mut m = Vec::with_capacity(v.jumps.len() + 1);
    m.push(v.a);
    m.extend(v.jumps.windows(2).map(|w| 0.5 * (w[0] + w[1])));
    m.push(v.b);
    m
}

fn glue(wave: &StandingWave, v: &PiecewiseConstant, bounds: &[f64], x: f64) -> f64 {
    if v.jumps.is_empty() {
        return v.first_value;
    }
    // panel i covers [m_i, m_{i+1}]; interior boundaries belong to the right panel
    let i = bounds[1..bounds.len() - 1].partition_point(|&m| m <= x);
    let h = v.jumps[i];
    let rising = v.value_on_piece(i) < 0.0;
    let s = if rising { 1.0 } else { -1.0 };
    wave.value_at(s * (x - h))
}

/// Glues `Phi(+-(x - h_i))` on the panels around each jump, sampled on `cells` cells.
pub fn build_profile(
    params: &ModelParams,
    v: &PiecewiseConstant,
    cells: usize,
    mode: ProfileMode,
) -> Result<TransitionProfile> {
    let eps_bar = epsilon_bar(params, v)?;
    let eps = params.epsilon();
    let fits = eps <= eps_bar * (1.0 + 1e-12);
    if mode == ProfileMode::Compacton && !(fits && eps_bar.is_finite()) {
        return Err(Error::NotCompacton {
            epsilon: eps,
            epsilon_bar: eps_bar,
        });
    }
    let wave = standing_wave(params, &[])?;
    let bounds = panel_bounds(v);
    let field = Field::from_fn(v.a, v.b, cells, |x| glue(&wave, v, &bounds, x))?;
    let touching = params.regime().tag == RegimeTag::TouchingWave;
    let stationary = touching
        && fits
        && match params.degeneracy() {
            Degeneracy::DoubleDegenerate => true,
            Degeneracy::SingleDegenerate => {
                v.jumps.len().is_multiple_of(2) && v.first_value == 1.0 && v.last_value() == 1.0
            }
        };
    Ok(TransitionProfile {
        energy: energy(params, &field).total,
        field,
        jumps: v.jumps.clone(),
        midpoints: bounds,
        stationary,
        epsilon_bar: eps_bar,
    })
}

/// One-sided difference quotients `(u_1 - u_0)/h` and `(u_M - u_{M-1})/h`.
pub fn check_neumann(field: &Field) -> (f64, f64) {
    let u = field.values();
    let h = field.step();
    let last = u.len() - 1;
    ((u[1] - u[0]) / h, (u[last] - u[last - 1]) / h)
}
