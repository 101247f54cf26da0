use degenac::quadrature::gamma_beta_identity;
use degenac::{gamma_closed_form, gamma_constant, integrate_adaptive, Degeneracy, ModelParams};
use proptest::prelude::*;

use super::{check, Check};

pub const SUITE: &[(&str, Check)] = &[
    ("gamma matches the Beta identity", beta_identity),
    ("gamma matches every closed form", closed_forms),
    ("integration is linear", linearity),
];

fn poly(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &k| acc * x + k)
}

fn beta_identity() -> Result<(), String> {
    check(20, (0.0f64..6.0, 2.0f64..10.0), |(m, n)| {
        let p = ModelParams::new(m, n, 0.1, Degeneracy::DoubleDegenerate).unwrap();
        let q = gamma_constant(&p).unwrap();
        let b = gamma_beta_identity(&p).unwrap();
        prop_assert!((q - b).abs() < 1e-9, "m={m} n={n}: {q} vs {b}");
        Ok(())
    })
}

fn closed_forms() -> Result<(), String> {
    // double with integer n = m + 2, single with n = 2
    check(20, (1u8..7, 0.0f64..5.0), |(k, m)| {
        let n = k as f64 + 1.0;
        let p = ModelParams::new(n - 2.0, n, 0.1, Degeneracy::DoubleDegenerate).unwrap();
        let closed = gamma_closed_form(&p).unwrap();
        prop_assert!((gamma_constant(&p).unwrap() - closed).abs() < 1e-9);
        let s = ModelParams::new(m, 2.0, 0.1, Degeneracy::SingleDegenerate).unwrap();
        let closed = gamma_closed_form(&s).unwrap();
        prop_assert!((gamma_constant(&s).unwrap() - closed).abs() < 1e-9);
        Ok(())
    })
}

fn linearity() -> Result<(), String> {
    let coeffs = || prop::collection::vec(-5.0f64..5.0, 1..8);
    let strategy = (coeffs(), coeffs(), -3.0f64..3.0, -3.0f64..3.0, -2.0f64..0.0, 0.1f64..3.0);
    check(100, strategy, |(f, g, alpha, beta, a, len)| {
        let b = a + len;
        let i = |h: &dyn Fn(f64) -> f64| integrate_adaptive(h, a, b, 1e-12).unwrap().value;
        let lhs = i(&|x| alpha * poly(&f, x) + beta * poly(&g, x));
        let rhs = alpha * i(&|x| poly(&f, x)) + beta * i(&|x| poly(&g, x));
        let scale = 1.0 + lhs.abs() + rhs.abs();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * scale, "{lhs} vs {rhs}");
        Ok(())
    })
}
