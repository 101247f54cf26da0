//! Monotone standing waves `Phi` connecting `-1` to `+1`.
//!
//! A standing wave solves `(eps^2 / 2) D(Phi) Phi'^2 = F(Phi)` with `Phi(0) = 0`.
//! Closed forms are used where they exist. Everywhere else the implicit
//! relation `integral_0^Phi sqrt(D / 2F) ds = x / eps` is tabulated on nodes
//! equally spaced in `y = artanh(Phi)` and inverted with cubic Hermite
//! interpolation, since `x(y)` is smooth in every regime.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fit::fit_line;
use crate::model::{approx_eq, Degeneracy, ModelParams, RegimeTag};
use crate::quadrature::{inverse_speed_split, integrate_adaptive, integrate_adaptive_points};

/// Which construction produced the profile.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum WaveForm {
    Tanh,
    Linear,
    Sine,
    Exp,
    AlgebraicSingle,
    NumericInversion,
}

/// Number of `artanh(Phi)` nodes in the inversion table (odd, so `Phi = 0` is a node).
pub const TABLE_NODES: usize = 4097;
/// Half-width of the table in `y = artanh(Phi)`; `1 - |Phi|` reaches about 2e-16.
pub const TABLE_HALF_WIDTH: f64 = 18.4;

const OMEGA_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
struct InversionTable {
    ys: Vec<f64>,
    xs: Vec<f64>,
    slopes: Vec<f64>,
}

#[derive(Clone, Debug)]
enum Shape {
    Closed,
    Table(InversionTable),
}

#[derive(Clone, Debug)]
pub struct StandingWave {
    params: ModelParams,
    omega1: f64,
    omega2: f64,
    form: WaveForm,
    shape: Shape,
    samples: Vec<(f64, f64)>,
}

/// Support endpoints `(omega1, omega2)`, infinite where the wave never reaches a well.
pub fn omega_eps(params: &ModelParams) -> Result<(f64, f64)> {
    let touching = params.regime().tag == RegimeTag::TouchingWave;
    let right = if touching {
        params.epsilon() * half_support(params)?
    } else {
        f64::INFINITY
    };
    let left = match params.degeneracy() {
        Degeneracy::DoubleDegenerate => -right,
        Degeneracy::SingleDegenerate => f64::NEG_INFINITY,
    };
    Ok((left, right))
}

/// `integral_0^1 sqrt(D / 2F) ds` for a touching wave.
///
/// With `t = 1 - s` the integrand is `t^p g(t)`, `p = (m - n) / 2 > -1`. For
/// `p < 0` the substitution `t = w^(1/(1+p))` turns it into the smooth
/// `g(w^(1/(1+p))) / (1 + p)` on `[0, 1]`; without it the tail near `t = 0`
/// is out of reach of bisection once `p` gets close to `-1`.
fn half_support(params: &ModelParams) -> Result<f64> {
    let p = *params;
    let tol = OMEGA_TOL / params.epsilon().max(1e-300);
    let power = (params.m() - params.n()) / 2.0;
    if power >= 0.0 {
        let integral = integrate_adaptive_points(
            move |q| inverse_speed_split(&p, q.from_b, 1.0 + q.x),
            0.0,
            1.0,
            tol,
            crate::quadrature::DEFAULT_MAX_PANELS,
        )?;
        return Ok(integral.value);
    }
    let q = 1.0 / (1.0 + power);
    let regular = move |t: f64| -> f64 {
        let other = match p.degeneracy() {
            Degeneracy::DoubleDegenerate => (2.0 - t).powf(power),
            Degeneracy::SingleDegenerate => (2.0 - t).powf(-p.n() / 2.0),
        };
        p.n().sqrt() * other
    };
    let integral = integrate_adaptive(|w| regular(w.powf(q)), 0.0, 1.0, tol * (1.0 + power))?;
    Ok(integral.value / (1.0 + power))
}

fn closed_form_for(params: &ModelParams) -> Option<WaveForm> {
    let (m, n) = (params.m(), params.n());
    match params.degeneracy() {
        Degeneracy::DoubleDegenerate => {
            if approx_eq(n, m + 2.0) {
                Some(WaveForm::Tanh)
            } else if approx_eq(n, m) {
                Some(WaveForm::Linear)
            } else if approx_eq(n, m + 1.0) {
                Some(WaveForm::Sine)
            } else {
                None
            }
        }
        Degeneracy::SingleDegenerate => {
            if approx_eq(n, m) && approx_eq(n, 2.0) {
                Some(WaveForm::Exp)
            } else if approx_eq(n, m) && n > 2.0 {
                Some(WaveForm::AlgebraicSingle)
            } else {
                None
            }
        }
    }
}

/// `ln(1 + e^z)` without overflow.
fn softplus(z: f64) -> f64 {
    if z > 0.0 {
        z + (-z).exp().ln_1p()
    } else {
        z.exp().ln_1p()
    }
}

/// `dx/dy` along the wave, with `Phi = tanh(y)`.
fn table_slope(params: &ModelParams, y: f64) -> f64 {
    let (m, n) = (params.m(), params.n());
    let ln2 = std::f64::consts::LN_2;
    let ln_one_minus = ln2 - softplus(2.0 * y);
    let ln_one_plus = ln2 - softplus(-2.0 * y);
    let ln_g = match params.degeneracy() {
        Degeneracy::DoubleDegenerate => ((m - n) / 2.0 + 1.0) * (ln_one_minus + ln_one_plus),
        Degeneracy::SingleDegenerate => {
            ((m - n) / 2.0 + 1.0) * ln_one_minus + (1.0 - n / 2.0) * ln_one_plus
        }
    };
    params.epsilon() * n.sqrt() * ln_g.exp()
}

impl InversionTable {
    fn build(params: &ModelParams) -> Result<Self> {
        let center = TABLE_NODES / 2;
        let dy = TABLE_HALF_WIDTH / center as f64;
        let ys: Vec<f64> = (0..TABLE_NODES)
            .map(|k| (k as f64 - center as f64) * dy)
            .collect();
        let slopes: Vec<f64> = ys.iter().map(|&y| table_slope(params, y)).collect();
        let mut xs = vec![0.0; TABLE_NODES];
        let p = *params;
        let piece = |y0: f64, y1: f64| -> Result<f64> {
            let scale = 0.5 * (table_slope(&p, y0) + table_slope(&p, y1)) * (y1 - y0);
            Ok(integrate_adaptive(|y| table_slope(&p, y), y0, y1, 1e-12 * scale)?.value)
        };
        for k in center + 1..TABLE_NODES {
            xs[k] = xs[k - 1] + piece(ys[k - 1], ys[k])?;
        }
        for k in (0..center).rev() {
            xs[k] = xs[k + 1] - piece(ys[k], ys[k + 1])?;
        }
        // keep the strictly increasing core; saturated ends belong to touching waves
        let mut lo = center;
        while lo > 0 && xs[lo - 1] < xs[lo] {
            lo -= 1;
        }
        let mut hi = center;
        while hi + 1 < TABLE_NODES && xs[hi + 1] > xs[hi] {
            hi += 1;
        }
        if hi - lo < 8 {
            return Err(Error::NonMonotoneTable(xs[center]));
        }
        Ok(InversionTable {
            ys: ys[lo..=hi].to_vec(),
            xs: xs[lo..=hi].to_vec(),
            slopes: slopes[lo..=hi].to_vec(),
        })
    }

    /// `y` with `x(y) = x`, extrapolated linearly past the ends.
    fn invert(&self, x: f64) -> f64 {
        let last = self.xs.len() - 1;
        if x <= self.xs[0] {
            return self.ys[0] + (x - self.xs[0]) / self.slopes[0];
        }
        if x >= self.xs[last] {
            return self.ys[last] + (x - self.xs[last]) / self.slopes[last];
        }
        let k = self.xs.partition_point(|&v| v <= x) - 1;
        let (y0, y1) = (self.ys[k], self.ys[k + 1]);
        let (x0, x1) = (self.xs[k], self.xs[k + 1]);
        let dy = y1 - y0;
        let (g0, g1) = (self.slopes[k] * dy, self.slopes[k + 1] * dy);
        let hermite = |t: f64| {
            let t2 = t * t;
            let t3 = t2 * t;
            (2.0 * t3 - 3.0 * t2 + 1.0) * x0
                + (t3 - 2.0 * t2 + t) * g0
                + (-2.0 * t3 + 3.0 * t2) * x1
                + (t3 - t2) * g1
        };
        let hermite_dt = |t: f64| {
            let t2 = t * t;
            (6.0 * t2 - 6.0 * t) * x0
                + (3.0 * t2 - 4.0 * t + 1.0) * g0
                + (-6.0 * t2 + 6.0 * t) * x1
                + (3.0 * t2 - 2.0 * t) * g1
        };
        let (mut lo, mut hi) = (0.0, 1.0);
        let mut t = (x - x0) / (x1 - x0);
        for _ in 0..60 {
            let r = hermite(t) - x;
            if r == 0.0 {
                break;
            }
            if r > 0.0 {
                hi = t;
            } else {
                lo = t;
            }
            let d = hermite_dt(t);
            let mut next = t - r / d;
            if !(next > lo && next < hi) || !d.is_finite() || d <= 0.0 {
                next = 0.5 * (lo + hi);
            }
            if (next - t).abs() <= 1e-16 {
                t = next;
                break;
            }
            t = next;
        }
        y0 + t * dy
    }
}

impl StandingWave {
    /// Evaluates `Phi(x)`.
    pub fn value_at(&self, x: f64) -> f64 {
        if x <= self.omega1 {
            return -1.0;
        }
        if x >= self.omega2 {
            return 1.0;
        }
        let eps = self.params.epsilon();
        let n = self.params.n();
        match (&self.shape, self.form) {
            (Shape::Closed, WaveForm::Tanh) => (x / (n.sqrt() * eps)).tanh(),
            (Shape::Closed, WaveForm::Linear) => (x / (n.sqrt() * eps)).clamp(-1.0, 1.0),
            (Shape::Closed, WaveForm::Sine) => {
                let arg = (x / (n.sqrt() * eps)).clamp(
                    -std::f64::consts::FRAC_PI_2,
                    std::f64::consts::FRAC_PI_2,
                );
                arg.sin()
            }
            (Shape::Closed, WaveForm::Exp) => (x / (2f64.sqrt() * eps)).exp() - 1.0,
            (Shape::Closed, WaveForm::AlgebraicSingle) => {
                let c = 2.0 * n.sqrt() * eps;
                (c / ((2.0 - n) * x + c)).powf(2.0 / (n - 2.0)) - 1.0
            }
            (Shape::Table(table), _) => {
                let y = table.invert(x);
                if self.omega2.is_finite() && x > *table.xs.last().unwrap() {
                    // between the last table node and the touching point
                    let (xl, pl) = (*table.xs.last().unwrap(), table.ys.last().unwrap().tanh());
                    return pl + (1.0 - pl) * (x - xl) / (self.omega2 - xl);
                }
                if self.omega1.is_finite() && x < table.xs[0] {
                    let (xf, pf) = (table.xs[0], table.ys[0].tanh());
                    return -1.0 + (pf + 1.0) * (x - self.omega1) / (xf - self.omega1);
                }
                y.tanh()
            }
            (Shape::Closed, WaveForm::NumericInversion) => unreachable!("table shape"),
        }
    }

    /// Builds a wave record around arbitrary samples, e.g. to certify a
    /// candidate profile with [`wave_residual`].
    pub fn from_samples(params: ModelParams, samples: Vec<(f64, f64)>) -> Self {
        StandingWave {
            params,
            omega1: f64::NEG_INFINITY,
            omega2: f64::INFINITY,
            form: WaveForm::NumericInversion,
            shape: Shape::Table(InversionTable {
                ys: vec![-1.0, 1.0],
                xs: vec![-1.0, 1.0],
                slopes: vec![1.0, 1.0],
            }),
            samples,
        }
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn omega1(&self) -> f64 {
        self.omega1
    }

    pub fn omega2(&self) -> f64 {
        self.omega2
    }

    pub fn form(&self) -> WaveForm {
        self.form
    }

    pub fn samples(&self) -> &[(f64, f64)] {
        &self.samples
    }

    /// Resamples the same wave on another grid.
    pub fn resample(&self, grid: &[f64]) -> Self {
        let mut w = self.clone();
        w.samples = grid.iter().map(|&x| (x, self.value_at(x))).collect();
        w
    }
}

/// Builds `Phi` with `Phi(0) = 0`, sampled on `x_grid`.
///
/// `force_numeric` skips the closed forms and always uses the inversion table.
pub fn standing_wave_with(
    params: &ModelParams,
    x_grid: &[f64],
    force_numeric: bool,
) -> Result<StandingWave> {
    if x_grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidParameter {
            name: "x_grid",
            reason: "grid must be strictly increasing".into(),
        });
    }
    let (omega1, omega2) = omega_eps(params)?;
    let closed = if force_numeric {
        None
    } else {
        closed_form_for(params)
    };
    let (form, shape) = match closed {
        Some(form) => (form, Shape::Closed),
        None => (
            WaveForm::NumericInversion,
            Shape::Table(InversionTable::build(params)?),
        ),
    };
    let mut wave = StandingWave {
        params: *params,
        omega1,
        omega2,
        form,
        shape,
        samples: Vec::new(),
    };
    wave.samples = x_grid.iter().map(|&x| (x, wave.value_at(x))).collect();
    Ok(wave)
}

pub fn standing_wave(params: &ModelParams, x_grid: &[f64]) -> Result<StandingWave> {
    standing_wave_with(params, x_grid, false)
}

/// `|eps^2 D(Phi) Phi'^2 / 2 - F(Phi)|` at every sample, with centered
/// differences. `None` at the two ends and where a stencil straddles a finite
/// support endpoint.
pub fn residual_profile(wave: &StandingWave) -> Vec<Option<f64>> {
    let p = &wave.params;
    let eps2 = p.epsilon() * p.epsilon();
    let s = &wave.samples;
    let straddles = |lo: f64, hi: f64, w: f64| w.is_finite() && lo < w && w < hi;
    (0..s.len())
        .map(|i| {
            if i == 0 || i + 1 >= s.len() {
                return None;
            }
            let (xl, xr) = (s[i - 1].0, s[i + 1].0);
            if straddles(xl, xr, wave.omega1) || straddles(xl, xr, wave.omega2) {
                return None;
            }
            let phi = s[i].1;
            let d = (s[i + 1].1 - s[i - 1].1) / (xr - xl);
            Some((0.5 * eps2 * p.diffusivity(phi) * d * d - p.potential(phi)).abs())
        })
        .collect()
}

/// Largest entry of [`residual_profile`].
pub fn wave_residual(wave: &StandingWave) -> f64 {
    residual_profile(wave).into_iter().flatten().fold(0.0, f64::max)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DecayClass {
    Finite,
    Exponential,
    Algebraic,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DecayFit {
    pub class: DecayClass,
    /// `-slope` of the preferred fit; the support endpoint for `Finite`.
    pub rate: f64,
    pub exp_r_squared: f64,
    pub alg_r_squared: f64,
}

const TAIL_WINDOW: (f64, f64) = (1e-10, 1e-2);

/// Classifies how `Phi` approaches the well on one side.
pub fn decay_rate(wave: &StandingWave, side: Side) -> Result<DecayFit> {
    let endpoint = match side {
        Side::Left => wave.omega1,
        Side::Right => wave.omega2,
    };
    if endpoint.is_finite() {
        return Ok(DecayFit {
            class: DecayClass::Finite,
            rate: endpoint,
            exp_r_squared: f64::NAN,
            alg_r_squared: f64::NAN,
        });
    }
    // (distance from origin, tail gap) ordered from the center outward
    let mut tail: Vec<(f64, f64)> = wave
        .samples
        .iter()
        .filter_map(|&(x, phi)| {
            let (dist, gap) = match side {
                Side::Left if x < 0.0 => (-x, 1.0 + phi),
                Side::Right if x > 0.0 => (x, 1.0 - phi),
                _ => return None,
            };
            (gap > TAIL_WINDOW.0 && gap < TAIL_WINDOW.1).then_some((dist, gap))
        })
        .collect();
    tail.sort_by(|a, b| a.0.total_cmp(&b.0));
    let keep = tail.len() / 4;
    if keep < 4 {
        return Err(Error::InsufficientTail(format!(
            "{} samples with tail gap in ({:e}, {:e}); need at least 16",
            tail.len(),
            TAIL_WINDOW.0,
            TAIL_WINDOW.1
        )));
    }
    let tail = &tail[tail.len() - keep..];
    let ln_gap: Vec<f64> = tail.iter().map(|t| t.1.ln()).collect();
    let dist: Vec<f64> = tail.iter().map(|t| t.0).collect();
    let ln_dist: Vec<f64> = dist.iter().map(|d| d.ln()).collect();
    let exp = fit_line(&dist, &ln_gap).ok_or_else(|| Error::InsufficientTail("degenerate tail".into()))?;
    let alg = fit_line(&ln_dist, &ln_gap).ok_or_else(|| Error::InsufficientTail("degenerate tail".into()))?;
    let (class, rate) = if exp.r_squared >= alg.r_squared {
        (DecayClass::Exponential, -exp.slope)
    } else {
        (DecayClass::Algebraic, -alg.slope)
    };
    Ok(DecayFit {
        class,
        rate,
        exp_r_squared: exp.r_squared,
        alg_r_squared: alg.r_squared,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::uniform_nodes;
    use std::f64::consts::PI;

    fn double(m: f64, n: f64, eps: f64) -> ModelParams {
        ModelParams::new(m, n, eps, Degeneracy::DoubleDegenerate).unwrap()
    }

    fn single(m: f64, n: f64, eps: f64) -> ModelParams {
        ModelParams::new(m, n, eps, Degeneracy::SingleDegenerate).unwrap()
    }

    #[test]
    fn omega_examples() {
        let (l, r) = omega_eps(&double(2.0, 2.0, 0.1)).unwrap();
        assert!((r - 2f64.sqrt() * 0.1).abs() < 1e-10 && (l + r).abs() < 1e-15);
        let (l, r) = omega_eps(&double(2.0, 3.0, 0.1)).unwrap();
        assert!((r - PI / 2.0 * 3f64.sqrt() * 0.1).abs() < 1e-10, "{r}");
        assert!((r - 0.272_070).abs() < 1e-6 && l == -r);
        assert_eq!(
            omega_eps(&double(2.0, 4.0, 0.1)).unwrap(),
            (f64::NEG_INFINITY, f64::INFINITY)
        );
        let (l, r) = omega_eps(&single(2.0, 2.0, 0.1)).unwrap();
        assert_eq!(l, f64::NEG_INFINITY);
        assert!((r - 2f64.sqrt() * 2f64.ln() * 0.1).abs() < 1e-10);
        let (_, r) = omega_eps(&single(3.0, 3.0, 0.1)).unwrap();
        let n = 3.0f64;
        let expected = 2.0 * n.sqrt() / (2.0 - n) * (2f64.powf((2.0 - n) / 2.0) - 1.0) * 0.1;
        assert!((r - expected).abs() < 1e-10);
    }

    #[test]
    fn closed_form_values() {
        let w = standing_wave(&double(2.0, 4.0, 0.1), &[-0.1, 0.0, 0.1]).unwrap();
        assert_eq!(w.form(), WaveForm::Tanh);
        assert!((w.samples()[2].1 - 0.5f64.tanh()).abs() < 1e-15);
        assert!((w.samples()[2].1 - 0.462_117_2).abs() < 1e-7);
        assert_eq!(w.samples()[1].1, 0.0);
        let w = standing_wave(&double(2.0, 2.0, 0.1), &[0.05]).unwrap();
        assert_eq!(w.form(), WaveForm::Linear);
        assert!((w.samples()[0].1 - 0.353_553_4).abs() < 1e-7);
    }

    #[test]
    fn phi_vanishes_at_origin_for_all_constructions() {
        for p in [
            double(2.0, 4.0, 0.1),
            double(2.0, 6.0, 0.1),
            double(1.5, 3.0, 0.1),
            single(2.0, 2.0, 0.1),
            single(2.0, 3.0, 0.1),
            single(3.0, 3.0, 0.1),
        ] {
            for force in [false, true] {
                let w = standing_wave_with(&p, &[0.0], force).unwrap();
                assert!(w.samples()[0].1.abs() < 1e-14, "{p:?}");
            }
        }
    }

    #[test]
    fn numeric_inversion_matches_closed_forms() {
        let grid = uniform_nodes(-1.0, 1.0, 399);
        for p in [
            double(2.0, 4.0, 0.1),
            double(2.0, 2.0, 0.1),
            double(2.0, 3.0, 0.1),
            single(2.0, 2.0, 0.1),
            single(3.0, 3.0, 0.1),
        ] {
            let exact = standing_wave(&p, &grid).unwrap();
            assert_ne!(exact.form(), WaveForm::NumericInversion);
            let numeric = standing_wave_with(&p, &grid, true).unwrap();
            let worst = exact
                .samples()
                .iter()
                .zip(numeric.samples())
                .map(|(a, b)| (a.1 - b.1).abs())
                .fold(0.0, f64::max);
            assert!(worst < 1e-8, "{p:?}: {worst:e}");
        }
    }

    #[test]
    fn residual_examples() {
        let eps: f64 = 0.1;
        let h = eps / 50.0;
        let grid: Vec<f64> = uniform_nodes(-1.0, 1.0, (2.0 / h).round() as usize);
        let w = standing_wave(&double(2.0, 4.0, eps), &grid).unwrap();
        assert!(wave_residual(&w) < 1e-4);

        let p = double(2.0, 4.0, eps);
        let zero = StandingWave::from_samples(p, grid.iter().map(|&x| (x, 0.0)).collect());
        assert!((wave_residual(&zero) - 1.0 / 8.0).abs() < 1e-15);

        let w = standing_wave(&double(2.0, 2.0, eps), &grid).unwrap();
        assert!(wave_residual(&w) < 1e-10, "{}", wave_residual(&w));
    }

    #[test]
    fn residual_is_second_order() {
        let p = double(2.0, 6.0, 0.1);
        let coarse = standing_wave(&p, &uniform_nodes(-0.5, 0.5, 100)).unwrap();
        let fine = coarse.resample(&uniform_nodes(-0.5, 0.5, 200));
        let ratio = wave_residual(&coarse) / wave_residual(&fine);
        assert!(ratio > 3.5 && ratio < 4.5, "ratio {ratio}");
    }

    #[test]
    fn decay_examples() {
        let eps = 0.1;
        let w = standing_wave(&double(2.0, 4.0, eps), &uniform_nodes(-4.0, 4.0, 4000)).unwrap();
        let d = decay_rate(&w, Side::Right).unwrap();
        assert_eq!(d.class, DecayClass::Exponential);
        assert!((d.rate - 10.0).abs() < 1e-3, "{}", d.rate);

        let w = standing_wave(&double(2.0, 2.0, eps), &uniform_nodes(-1.0, 1.0, 100)).unwrap();
        assert_eq!(decay_rate(&w, Side::Right).unwrap().class, DecayClass::Finite);
        assert_eq!(decay_rate(&w, Side::Left).unwrap().class, DecayClass::Finite);

        let p = single(3.0, 3.0, eps);
        let grid: Vec<f64> = uniform_nodes(-4.0, 0.0, 20_000)
            .into_iter()
            .map(|s| -(10f64.powf(-s)))
            .collect();
        let w = standing_wave(&p, &grid).unwrap();
        let d = decay_rate(&w, Side::Left).unwrap();
        assert_eq!(d.class, DecayClass::Algebraic);
        assert!((d.rate - 2.0).abs() < 1e-2, "{}", d.rate);
    }

    #[test]
    fn decay_needs_tail_samples() {
        let w = standing_wave(&double(2.0, 4.0, 0.1), &uniform_nodes(-0.2, 0.2, 10)).unwrap();
        assert!(matches!(decay_rate(&w, Side::Right), Err(Error::InsufficientTail(_))));
    }

    #[test]
    fn single_wave_is_one_beyond_support() {
        let p = single(2.0, 2.0, 0.1);
        let w = standing_wave(&p, &[0.2, 0.5]).unwrap();
        assert_eq!(w.samples()[0].1, 1.0);
        assert_eq!(w.samples()[1].1, 1.0);
    }
}
