use degenac::{classify_regime, Degeneracy, ModelParams};
use proptest::prelude::*;

use super::{check, Check};

pub const SUITE: &[(&str, Check)] = &[
    ("diffusivity vanishes exactly at the wells", wells),
    ("double-degenerate D and F are even", evenness),
    ("derivatives match centered differences", derivatives),
    ("regime does not depend on eps", regime_invariance),
];

fn degeneracy() -> impl Strategy<Value = Degeneracy> {
    prop_oneof![Just(Degeneracy::DoubleDegenerate), Just(Degeneracy::SingleDegenerate)]
}

fn wells() -> Result<(), String> {
    check(200, (0.5f64..6.0, 2.0f64..8.0, 0.01f64..1.0), |(m, n, eps)| {
        let d = ModelParams::new(m, n, eps, Degeneracy::DoubleDegenerate).unwrap();
        prop_assert_eq!(d.diffusivity(1.0), 0.0);
        prop_assert_eq!(d.diffusivity(-1.0), 0.0);
        let s = ModelParams::new(m, n, eps, Degeneracy::SingleDegenerate).unwrap();
        prop_assert_eq!(s.diffusivity(1.0), 0.0);
        prop_assert_eq!(s.diffusivity(-1.0), std::hint::black_box(2f64).powf(m));
        Ok(())
    })
}

fn evenness() -> Result<(), String> {
    check(1000, (-2.0f64..2.0, 0.0f64..6.0, 2.0f64..8.0), |(u, m, n)| {
        let p = ModelParams::new(m, n, 0.1, Degeneracy::DoubleDegenerate).unwrap();
        prop_assert_eq!(p.diffusivity(u), p.diffusivity(-u));
        prop_assert_eq!(p.potential(u), p.potential(-u));
        Ok(())
    })
}

fn derivatives() -> Result<(), String> {
    let m = prop_oneof![Just(2.0f64), Just(3.0), 1.5f64..4.0];
    let n = prop_oneof![Just(2.0f64), Just(4.0), Just(6.0), 2.0f64..6.0];
    // within 1e-2 of a well the third derivative of a fractional power swamps a 1e-5 stencil
    check(1000, (-0.99f64..0.99, m, n, degeneracy()), |(u, m, n, deg)| {
        let p = ModelParams::new(m, n, 0.1, deg).unwrap();
        let h = 1e-5;
        // relative error, with a floor where the derivative itself vanishes
        let close = |exact: f64, fd: f64| (exact - fd).abs() <= 1e-6 * exact.abs().max(1e-3);
        let fd_d = (p.diffusivity(u + h) - p.diffusivity(u - h)) / (2.0 * h);
        prop_assert!(close(p.diffusivity_prime(u), fd_d), "D' at {u}: {} vs {fd_d}", p.diffusivity_prime(u));
        let fd_f = (p.potential(u + h) - p.potential(u - h)) / (2.0 * h);
        prop_assert!(close(p.potential_prime(u), fd_f), "F' at {u}: {} vs {fd_f}", p.potential_prime(u));
        Ok(())
    })
}

fn regime_invariance() -> Result<(), String> {
    let m = prop_oneof![(0u8..6).prop_map(f64::from), 0.0f64..6.0];
    let n = prop_oneof![(2u8..10).prop_map(f64::from), 2.0f64..10.0];
    check(400, (m, n, 0.001f64..2.0, 0.001f64..2.0, degeneracy()), |(m, n, e1, e2, deg)| {
        let p = ModelParams::new(m, n, e1, deg).unwrap();
        let q = p.with_epsilon(e2).unwrap();
        prop_assert_eq!(classify_regime(&p), classify_regime(&q));
        Ok(())
    })
}
