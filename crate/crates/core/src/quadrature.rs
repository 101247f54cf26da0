//! Adaptive Gauss-Kronrod integration, `ln Gamma`, and the transition constant.
//!
//! Panels are stored relative to the endpoint they are closest to, so the
//! integrand can be handed the exact distances `x - a` and `b - x` even when a
//! panel is narrower than the spacing of floating-point numbers near `a` or
//! `b`. That is what makes geometric refinement toward an integrable endpoint
//! singularity converge to tight tolerances.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{approx_eq, Degeneracy, ModelParams};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// An abscissa together with its exact distances to both integration limits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadPoint {
    pub x: f64,
    pub from_a: f64,
    pub from_b: f64,
}

/// Panel budget used by [`integrate_adaptive`].
pub const DEFAULT_MAX_PANELS: usize = 20_000;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Clone, Copy, Debug)]
struct Panel {
    /// `true`: `x = a + t`; `false`: `x = b - t`.
    from_left: bool,
    t0: f64,
    t1: f64,
    value: f64,
    error: f64,
    /// Integral of `|f|` over the panel.
    magnitude: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
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
        self.error.total_cmp(&other.error)
    }
}

struct Integrator<'f, F> {
    f: &'f F,
    a: f64,
    b: f64,
    evaluations: usize,
}

impl<F: Fn(QuadPoint) -> f64> Integrator<'_, F> {
    fn point(&self, from_left: bool, t: f64) -> QuadPoint {
        let len = self.b - self.a;
        if from_left {
            QuadPoint {
                x: self.a + t,
                from_a: t,
                from_b: len - t,
            }
        } else {
            QuadPoint {
                x: self.b - t,
                from_a: len - t,
                from_b: t,
            }
        }
    }

    fn panel(&mut self, from_left: bool, t0: f64, t1: f64) -> Panel {
        let center = 0.5 * (t0 + t1);
        let half = 0.5 * (t1 - t0);
        let fc = (self.f)(self.point(from_left, center));
        let mut res_k = fc * WGK[7];
        let mut res_g = fc * WG[3];
        let mut res_abs = res_k.abs();
        let mut fv1 = [0.0; 7];
        let mut fv2 = [0.0; 7];
        for j in 0..7 {
            let dt = half * XGK[j];
            let f1 = (self.f)(self.point(from_left, center - dt));
            let f2 = (self.f)(self.point(from_left, center + dt));
            fv1[j] = f1;
            fv2[j] = f2;
            res_k += WGK[j] * (f1 + f2);
            res_abs += WGK[j] * (f1.abs() + f2.abs());
            if j % 2 == 1 {
                res_g += WG[j / 2] * (f1 + f2);
            }
        }
        self.evaluations += 15;
        let mean = 0.5 * res_k;
        let mut res_asc = WGK[7] * (fc - mean).abs();
        for j in 0..7 {
            res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
        }
        let value = res_k * half;
        let res_abs = res_abs * half.abs();
        let res_asc = res_asc * half.abs();
        let mut error = ((res_k - res_g) * half).abs();
        if res_asc != 0.0 && error != 0.0 {
            error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
        }
        if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
            error = error.max(50.0 * f64::EPSILON * res_abs);
        }
        if !value.is_finite() || !error.is_finite() {
            error = f64::INFINITY;
        }
        Panel {
            from_left,
            t0,
            t1,
            value,
            error,
            magnitude: res_abs,
        }
    }
}

/// A panel that can no longer be split in floating point.
fn unresolvable(p: &Panel) -> bool {
    let mid = 0.5 * (p.t0 + p.t1);
    mid <= p.t0 || mid >= p.t1 || (p.t1 - p.t0) <= 4.0 * f64::EPSILON * p.t1.abs()
}

/// Adaptive integration where the integrand sees exact endpoint distances.
pub fn integrate_adaptive_points<F>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
    max_panels: usize,
) -> Result<QuadResult>
where
    F: Fn(QuadPoint) -> f64,
{
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::InvalidParameter {
            name: "interval",
            reason: format!("need finite a < b, got [{a}, {b}]"),
        });
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter {
            name: "tol",
            reason: format!("tolerance must be positive, got {tol}"),
        });
    }
    let mut integ = Integrator {
        f: &f,
        a,
        b,
        evaluations: 0,
    };
    let half = 0.5 * (b - a);
    let mut heap = BinaryHeap::new();
    heap.push(integ.panel(true, 0.0, half));
    heap.push(integ.panel(false, 0.0, half));
    let mut frozen: Vec<Panel> = Vec::new();
    let totals = |heap: &BinaryHeap<Panel>, frozen: &[Panel]| {
        heap.iter()
            .chain(frozen.iter())
            .fold((0.0, 0.0, 0.0), |(v, e, m), p| (v + p.value, e + p.error, m + p.magnitude))
    };
    loop {
        let (value, error, magnitude) = totals(&heap, &frozen);
        // panel errors are floored at 50 eps |f|, so nothing below that sum is reachable
        let target = tol.max(50.0 * f64::EPSILON * magnitude);
        if error <= target && value.is_finite() {
            return Ok(QuadResult {
                value,
                error_estimate: error,
                evaluations: integ.evaluations,
            });
        }
        let n_panels = heap.len() + frozen.len();
        let Some(worst) = heap.pop() else {
            return Err(Error::QuadratureFailed {
                value,
                error_estimate: error,
                panels: n_panels,
            });
        };
        if n_panels >= max_panels {
            return Err(Error::QuadratureFailed {
                value,
                error_estimate: error,
                panels: n_panels,
            });
        }
        if unresolvable(&worst) {
            frozen.push(worst);
            continue;
        }
        let mid = 0.5 * (worst.t0 + worst.t1);
        heap.push(integ.panel(worst.from_left, worst.t0, mid));
        heap.push(integ.panel(worst.from_left, mid, worst.t1));
    }
}

/// Adaptive integration of `f` over `[a, b]` to absolute tolerance `tol`.
///
/// Abscissae are nudged inward if rounding would put them on an endpoint.
pub fn integrate_adaptive<F>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    integrate_adaptive_points(
        |p: QuadPoint| {
            let x = if p.x <= a {
                a.next_up()
            } else if p.x >= b {
                b.next_down()
            } else {
                p.x
            };
            f(x)
        },
        a,
        b,
        tol,
        DEFAULT_MAX_PANELS,
    )
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural logarithm of the Gamma function for `x > 0` (Lanczos, g = 7).
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::LogGammaDomain(x));
    }
    if x < 0.5 {
        // reflection keeps the series in its accurate range
        let pi = std::f64::consts::PI;
        return Ok((pi / (pi * x).sin()).ln() - log_gamma(1.0 - x)?);
    }
    let z = x - 1.0;
    let mut sum = LANCZOS[0];
    for (k, c) in LANCZOS.iter().enumerate().skip(1) {
        sum += c / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    Ok(0.5 * (2.0 * std::f64::consts::PI).ln() + (z + 0.5) * t.ln() - t + sum.ln())
}

/// Tolerance for the authoritative transition constant.
pub const GAMMA_TOL: f64 = 1e-10;

/// `gamma = integral over [-1, 1] of sqrt(2 D F)`, by adaptive quadrature.
pub fn gamma_constant(params: &ModelParams) -> Result<f64> {
    let p = *params;
    integrate_adaptive_points(
        move |q: QuadPoint| transition_density_split(&p, q.from_b, q.from_a),
        -1.0,
        1.0,
        GAMMA_TOL,
        DEFAULT_MAX_PANELS,
    )
    .map(|r| r.value)
}

/// `sqrt(2 D(s) F(s))` from the factors `1 - s` and `1 + s`.
pub(crate) fn transition_density_split(params: &ModelParams, one_minus: f64, one_plus: f64) -> f64 {
    let (m, n) = (params.m(), params.n());
    let prod = (one_minus * one_plus).abs();
    let f_part = prod.powf(n / 2.0) / n.sqrt();
    let d_part = match params.degeneracy() {
        Degeneracy::DoubleDegenerate => prod.powf(m / 2.0),
        Degeneracy::SingleDegenerate => one_minus.abs().powf(m / 2.0),
    };
    d_part * f_part
}

/// `sqrt(D(s) / (2 F(s)))` from the factors `1 - s` and `1 + s`.
pub(crate) fn inverse_speed_split(params: &ModelParams, one_minus: f64, one_plus: f64) -> f64 {
    let (m, n) = (params.m(), params.n());
    match params.degeneracy() {
        Degeneracy::DoubleDegenerate => {
            n.sqrt() * (one_minus * one_plus).abs().powf((m - n) / 2.0)
        }
        Degeneracy::SingleDegenerate => {
            n.sqrt() * one_minus.abs().powf((m - n) / 2.0) * one_plus.abs().powf(-n / 2.0)
        }
    }
}

/// The closed forms available in the literature, when one applies:
/// the even case with integer `n = m + 2`, and the single-degenerate case `n = 2`.
pub fn gamma_closed_form(params: &ModelParams) -> Option<f64> {
    let (m, n) = (params.m(), params.n());
    match params.degeneracy() {
        Degeneracy::DoubleDegenerate => {
            if !approx_eq(n, m + 2.0) || n.fract() != 0.0 {
                return None;
            }
            // [2^n (n-1)!]^2 / (2 sqrt(n) (2n-1)!) in log space
            let ln = 2.0 * (n * 2f64.ln() + log_gamma(n).ok()?)
                - (2.0 * n.sqrt()).ln()
                - log_gamma(2.0 * n).ok()?;
            Some(ln.exp())
        }
        Degeneracy::SingleDegenerate => {
            if !approx_eq(n, 2.0) {
                return None;
            }
            Some(4.0 * 2f64.powf((m + 5.0) / 2.0) / ((m + 4.0) * (m + 6.0)))
        }
    }
}

/// `sqrt(pi) Gamma((n+m+2)/2) / (sqrt(n) Gamma((n+m+3)/2))`, the Beta-function
/// value of `(1/sqrt(n)) * integral of (1-s^2)^((n+m)/2)` (even diffusivity).
pub fn gamma_beta_identity(params: &ModelParams) -> Result<f64> {
    let s = params.n() + params.m();
    let ln = 0.5 * std::f64::consts::PI.ln() + log_gamma((s + 2.0) / 2.0)?
        - log_gamma((s + 3.0) / 2.0)?;
    Ok(ln.exp() / params.n().sqrt())
}

/// The general display formula with `Gamma((n+m)/2)` in the numerator.
///
/// It does not match quadrature (for `m = 2, n = 4` it gives 16/105 instead of
/// 16/35) and is reported only for comparison.
pub fn gamma_display_formula(params: &ModelParams) -> Result<f64> {
    let s = params.n() + params.m();
    let ln = 0.5 * std::f64::consts::PI.ln() + log_gamma(s / 2.0)? - log_gamma((s + 3.0) / 2.0)?;
    Ok(ln.exp() / params.n().sqrt())
}
