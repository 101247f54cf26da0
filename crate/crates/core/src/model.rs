//! Diffusivity, double-well potential and regime classification.
//!
//! Every other module branches on [`ModelParams`] and [`Regime`], so the
//! closed forms for `D`, `D'`, `F` and `F'` live here and nowhere else.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which of the two diffusivities is used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Degeneracy {
    /// `D(u) = |1 - u^2|^m`, vanishing at both wells.
    #[serde(rename = "double")]
    DoubleDegenerate,
    /// `D(u) = |1 - u|^m`, vanishing at `u = +1` only.
    #[serde(rename = "single")]
    SingleDegenerate,
}

impl Degeneracy {
    pub fn as_str(self) -> &'static str {
        match self {
            Degeneracy::DoubleDegenerate => "double",
            Degeneracy::SingleDegenerate => "single",
        }
    }
}

impl std::str::FromStr for Degeneracy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "double" => Ok(Degeneracy::DoubleDegenerate),
            "single" => Ok(Degeneracy::SingleDegenerate),
            other => Err(Error::InvalidParameter {
                name: "degeneracy",
                reason: format!("expected \"double\" or \"single\", got {other:?}"),
            }),
        }
    }
}

/// A real exponent with a fast path for integer values.
#[derive(Clone, Copy, Debug, PartialEq)]
struct Exponent {
    value: f64,
    int: Option<i32>,
}

impl Exponent {
    fn new(value: f64) -> Self {
        let int = (value.fract() == 0.0 && value.abs() < 64.0).then_some(value as i32);
        Exponent { value, int }
    }

    /// `base^self` for `base >= 0`.
    #[inline]
    fn pow(self, base: f64) -> f64 {
        match self.int {
            Some(0) => 1.0,
            Some(k) => base.powi(k),
            None => base.powf(self.value),
        }
    }

    /// `base^(self - 1)` for `base >= 0`; zero exponent handled by the caller.
    #[inline]
    fn pow_minus_one(self, base: f64) -> f64 {
        match self.int {
            Some(k) => base.powi(k - 1),
            None => base.powf(self.value - 1.0),
        }
    }
}

/// Validated model parameters. Immutable after construction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    m: Exponent,
    n: Exponent,
    epsilon: f64,
    degeneracy: Degeneracy,
}

/// Serializable mirror of [`ModelParams`], matching the JSON parameter object.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsSpec {
    pub m: f64,
    pub n: f64,
    pub epsilon: f64,
    pub degeneracy: Degeneracy,
}

impl ModelParams {
    /// Validates and builds a parameter record.
    ///
    /// `m` in `[0, 1]` is accepted but flagged by [`ModelParams::outside_hypotheses`];
    /// the classical Allen-Cahn case `m = 0, n = 2` is the usual reference.
    pub fn new(m: f64, n: f64, epsilon: f64, degeneracy: Degeneracy) -> Result<Self> {
        check_finite("m", m)?;
        check_finite("n", n)?;
        check_finite("epsilon", epsilon)?;
        if epsilon <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "epsilon",
                reason: format!("epsilon must be positive, got {epsilon}"),
            });
        }
        if n < 2.0 {
            return Err(Error::InvalidParameter {
                name: "n",
                reason: format!("n below 2 (got {n})"),
            });
        }
        if m < 0.0 {
            return Err(Error::InvalidParameter {
                name: "m",
                reason: format!("m below 0 (got {m})"),
            });
        }
        Ok(ModelParams {
            m: Exponent::new(m),
            n: Exponent::new(n),
            epsilon,
            degeneracy,
        })
    }

    pub fn from_spec(spec: &ParamsSpec) -> Result<Self> {
        Self::new(spec.m, spec.n, spec.epsilon, spec.degeneracy)
    }

    pub fn spec(&self) -> ParamsSpec {
        ParamsSpec {
            m: self.m(),
            n: self.n(),
            epsilon: self.epsilon,
            degeneracy: self.degeneracy,
        }
    }

    pub fn m(&self) -> f64 {
        self.m.value
    }

    pub fn n(&self) -> f64 {
        self.n.value
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn degeneracy(&self) -> Degeneracy {
        self.degeneracy
    }

    /// Same exponents and degeneracy, different interface width.
    pub fn with_epsilon(&self, epsilon: f64) -> Result<Self> {
        Self::new(self.m(), self.n(), epsilon, self.degeneracy)
    }

    /// True when `m <= 1`, i.e. outside the range the slow-motion theory assumes.
    pub fn outside_hypotheses(&self) -> bool {
        self.m() <= 1.0
    }

    /// The base `|1-u^2|` or `|1-u|` of the diffusivity, with the sign of the
    /// inner expression.
    #[inline]
    fn diffusivity_base(&self, u: f64) -> f64 {
        match self.degeneracy {
            Degeneracy::DoubleDegenerate => 1.0 - u * u,
            Degeneracy::SingleDegenerate => 1.0 - u,
        }
    }

    #[inline]
    pub fn diffusivity(&self, u: f64) -> f64 {
        self.m.pow(self.diffusivity_base(u).abs())
    }

    #[inline]
    pub fn diffusivity_prime(&self, u: f64) -> f64 {
        if self.m.value == 0.0 {
            return 0.0;
        }
        let s = self.diffusivity_base(u);
        let inner_prime = match self.degeneracy {
            Degeneracy::DoubleDegenerate => -2.0 * u,
            Degeneracy::SingleDegenerate => -1.0,
        };
        if s == 0.0 {
            // m > 1 gives a zero derivative; m in (0,1] is singular there.
            return if self.m.value > 1.0 {
                0.0
            } else if self.m.value == 1.0 {
                inner_prime.abs()
            } else {
                f64::INFINITY
            };
        }
        self.m.value * self.m.pow_minus_one(s.abs()) * s.signum() * inner_prime
    }

    #[inline]
    pub fn potential(&self, u: f64) -> f64 {
        self.n.pow((1.0 - u * u).abs()) / (2.0 * self.n.value)
    }

    #[inline]
    pub fn potential_prime(&self, u: f64) -> f64 {
        let s = 1.0 - u * u;
        if s == 0.0 {
            return 0.0;
        }
        // d/du |s|^n / (2n) = |s|^(n-1) sign(s) (-2u) / 2
        -u * self.n.pow_minus_one(s.abs()) * s.signum()
    }

    /// `sqrt(2 D(s) F(s))`, the energy density of a transition in state space.
    #[inline]
    pub fn transition_density(&self, s: f64) -> f64 {
        (2.0 * self.diffusivity(s) * self.potential(s)).sqrt()
    }

    pub fn regime(&self) -> Regime {
        classify_regime(self)
    }
}

fn check_finite(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            reason: format!("{name} must be finite, got {value}"),
        })
    }
}

/// Shape of the standing wave, decided by the sign of `n - (m + 2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegimeTag {
    /// `n < m + 2`: the wave reaches the wells at finite points.
    TouchingWave,
    /// `n = m + 2`.
    ExponentialTails,
    /// `n > m + 2`.
    AlgebraicTails,
}

/// Catalog entry selecting the slow-motion scale.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ThetaCase {
    E1,
    E2,
    E3,
    E4,
    E5,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Regime {
    pub tag: RegimeTag,
    pub theta_case: ThetaCase,
}

/// Tolerance used when comparing exponents, e.g. for `n == m + 2`.
pub(crate) const EXPONENT_TOL: f64 = 1e-12;

pub(crate) fn approx_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= EXPONENT_TOL * (1.0 + a.abs().max(b.abs()))
}

pub fn classify_regime(params: &ModelParams) -> Regime {
    let (m, n) = (params.m(), params.n());
    let tag = if approx_eq(n, m + 2.0) {
        RegimeTag::ExponentialTails
    } else if n < m + 2.0 {
        RegimeTag::TouchingWave
    } else {
        RegimeTag::AlgebraicTails
    };
    let theta_case = match params.degeneracy() {
        Degeneracy::DoubleDegenerate => match tag {
            RegimeTag::ExponentialTails if m > 2.0 => ThetaCase::E1,
            RegimeTag::ExponentialTails if m > 1.0 => ThetaCase::E2,
            RegimeTag::AlgebraicTails => ThetaCase::E4,
            _ => ThetaCase::None,
        },
        Degeneracy::SingleDegenerate => {
            if approx_eq(n, 2.0) && m > 1.0 && m <= 2.0 {
                ThetaCase::E3
            } else if n > 2.0 && !approx_eq(n, 2.0) {
                ThetaCase::E5
            } else {
                ThetaCase::None
            }
        }
    };
    Regime { tag, theta_case }
}

/// Fraction of the admissible supremum used for the exponential amplitude `A`.
pub const DEFAULT_AMPLITUDE_FRACTION: f64 = 0.9;

/// The slow-motion scale `theta(epsilon)` of one catalog entry.
#[derive(Clone, Debug, PartialEq)]
pub enum ThetaScale {
    /// `exp(-amplitude * factor / epsilon)`; `factor` is `sqrt(n)` for E1, 1 otherwise.
    Exponential { amplitude: f64, factor: f64 },
    /// `epsilon^exponent`.
    Algebraic { exponent: f64 },
}

impl ThetaScale {
    pub fn eval(&self, epsilon: f64) -> f64 {
        match *self {
            ThetaScale::Exponential { amplitude, factor } => (-amplitude * factor / epsilon).exp(),
            ThetaScale::Algebraic { exponent } => epsilon.powf(exponent),
        }
    }

    /// `ln theta(epsilon)`, finite even where `eval` underflows.
    pub fn ln_eval(&self, epsilon: f64) -> f64 {
        match *self {
            ThetaScale::Exponential { amplitude, factor } => -amplitude * factor / epsilon,
            ThetaScale::Algebraic { exponent } => exponent * epsilon.ln(),
        }
    }
}

/// Options for [`theta`]. `amplitude` overrides the default `0.9 * sup A`;
/// `truncation` is the index `j` used in the algebraic cases.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ThetaOptions {
    pub amplitude: Option<f64>,
    pub truncation: Option<usize>,
}

/// Supremum of admissible amplitudes `A` for the exponential cases.
pub fn amplitude_supremum(params: &ModelParams, r: f64) -> Option<f64> {
    match params.regime().theta_case {
        ThetaCase::E1 => Some(4.0 * r),
        ThetaCase::E2 => Some(2.0 * r),
        ThetaCase::E3 => Some(2f64.powf((2.0 - params.m()) / 2.0) * r),
        _ => None,
    }
}

/// Builds the slow-motion scale for `params` and the layer spacing `r`.
pub fn theta(params: &ModelParams, r: f64, options: ThetaOptions) -> Result<ThetaScale> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "r",
            reason: format!("r must be positive, got {r}"),
        });
    }
    let case = params.regime().theta_case;
    match case {
        ThetaCase::None => Err(Error::NoSlowMotionScale),
        ThetaCase::E1 | ThetaCase::E2 | ThetaCase::E3 => {
            let sup = amplitude_supremum(params, r).expect("exponential case");
            let amplitude = options
                .amplitude
                .unwrap_or(DEFAULT_AMPLITUDE_FRACTION * sup);
            if !(amplitude > 0.0) {
                return Err(Error::InvalidParameter {
                    name: "amplitude",
                    reason: format!("amplitude must be positive, got {amplitude}"),
                });
            }
            let factor = if case == ThetaCase::E1 {
                params.n().sqrt()
            } else {
                1.0
            };
            Ok(ThetaScale::Exponential { amplitude, factor })
        }
        ThetaCase::E4 | ThetaCase::E5 => {
            let j = options.truncation.ok_or(Error::InvalidParameter {
                name: "truncation",
                reason: "algebraic slow-motion scales need a truncation index j".into(),
            })?;
            if j == 0 {
                return Err(Error::InvalidParameter {
                    name: "truncation",
                    reason: "truncation index j starts at 1".into(),
                });
            }
            let (k, _) = crate::energy::kj_sequence(params, j + 1)?;
            Ok(ThetaScale::Algebraic { exponent: k[j] })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn double(m: f64, n: f64) -> ModelParams {
        ModelParams::new(m, n, 0.1, Degeneracy::DoubleDegenerate).unwrap()
    }

    fn single(m: f64, n: f64) -> ModelParams {
        ModelParams::new(m, n, 0.1, Degeneracy::SingleDegenerate).unwrap()
    }

    #[test]
    fn make_params_examples() {
        let p = double(2.0, 4.0);
        assert_eq!(
            p.regime(),
            Regime {
                tag: RegimeTag::ExponentialTails,
                theta_case: ThetaCase::E2
            }
        );
        assert_eq!(double(2.0, 2.0).regime().tag, RegimeTag::TouchingWave);
        let err = ModelParams::new(2.0, 1.0, 0.1, Degeneracy::DoubleDegenerate).unwrap_err();
        assert!(err.to_string().contains("n below 2"), "{err}");
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(ModelParams::new(f64::NAN, 2.0, 0.1, Degeneracy::DoubleDegenerate).is_err());
        assert!(ModelParams::new(2.0, 2.0, 0.0, Degeneracy::DoubleDegenerate).is_err());
        assert!(ModelParams::new(-0.5, 2.0, 0.1, Degeneracy::DoubleDegenerate).is_err());
        assert!(ModelParams::new(2.0, f64::INFINITY, 0.1, Degeneracy::DoubleDegenerate).is_err());
    }

    #[test]
    fn low_m_is_flagged() {
        assert!(double(0.0, 2.0).outside_hypotheses());
        assert!(double(1.0, 2.0).outside_hypotheses());
        assert!(!double(1.5, 3.0).outside_hypotheses());
    }

    #[test]
    fn diffusivity_examples() {
        let p = double(2.0, 4.0);
        assert_eq!(p.diffusivity(0.0), 1.0);
        assert_eq!(p.diffusivity(1.0), 0.0);
        assert_eq!(single(2.0, 2.0).diffusivity(-1.0), 4.0);
    }

    #[test]
    fn potential_examples() {
        let p = double(2.0, 2.0);
        assert_eq!(p.potential(0.0), 0.25);
        assert!((p.potential(0.5) - 9.0 / 64.0).abs() < 1e-15);
        let q = double(2.0, 4.0);
        for u in [-1.0, 1.0] {
            assert_eq!(q.potential(u), 0.0);
            assert_eq!(q.potential_prime(u), 0.0);
        }
    }

    #[test]
    fn classify_examples() {
        let r = double(3.0, 5.0).regime();
        assert_eq!((r.tag, r.theta_case), (RegimeTag::ExponentialTails, ThetaCase::E1));
        let r = double(2.0, 6.0).regime();
        assert_eq!((r.tag, r.theta_case), (RegimeTag::AlgebraicTails, ThetaCase::E4));
        let r = single(2.0, 3.0).regime();
        assert_eq!((r.tag, r.theta_case), (RegimeTag::TouchingWave, ThetaCase::E5));
        let r = single(2.0, 2.0).regime();
        assert_eq!(r.theta_case, ThetaCase::E3);
        assert_eq!(single(2.5, 2.0).regime().theta_case, ThetaCase::None);
        assert_eq!(double(2.0, 3.0).regime().theta_case, ThetaCase::None);
    }

    #[test]
    fn theta_examples() {
        let p = double(2.0, 4.0);
        let th = theta(
            &p,
            0.5,
            ThetaOptions {
                amplitude: Some(0.8),
                ..Default::default()
            },
        )
        .unwrap();
        assert!((th.eval(0.1) - (-8.0f64).exp()).abs() < 1e-18);
        assert!((th.eval(0.1) - 3.3546e-4).abs() < 1e-8);

        // default amplitude is 0.9 of the supremum 2r
        let th = theta(&p, 0.5, ThetaOptions::default()).unwrap();
        assert_eq!(
            th,
            ThetaScale::Exponential {
                amplitude: 0.9,
                factor: 1.0
            }
        );

        let q = double(2.0, 6.0);
        let th = theta(
            &q,
            1.0,
            ThetaOptions {
                truncation: Some(2),
                ..Default::default()
            },
        )
        .unwrap();
        match th {
            ThetaScale::Algebraic { exponent } => assert!((exponent - 55.0 / 36.0).abs() < 1e-14),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            theta(&double(2.0, 2.0), 1.0, ThetaOptions::default()),
            Err(Error::NoSlowMotionScale)
        ));
        // algebraic cases need j
        assert!(theta(&q, 1.0, ThetaOptions::default()).is_err());
    }

    #[test]
    fn e1_uses_sqrt_n() {
        let p = double(3.0, 5.0);
        let th = theta(&p, 1.0, ThetaOptions::default()).unwrap();
        let expected = (-3.6 * 5f64.sqrt() / 0.2).exp();
        assert!((th.eval(0.2) - expected).abs() <= 1e-12 * expected);
    }

    #[test]
    fn e3_amplitude_supremum() {
        let p = ModelParams::new(1.5, 2.0, 0.1, Degeneracy::SingleDegenerate).unwrap();
        let sup = amplitude_supremum(&p, 1.0).unwrap();
        assert!((sup - 2f64.powf(0.25)).abs() < 1e-15);
    }
}
