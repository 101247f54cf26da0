use degenac::waves::standing_wave_with;
use degenac::{standing_wave, wave_residual, Degeneracy, ModelParams, WaveForm};
use proptest::prelude::*;

use super::{check, ensure, Check};

pub const SUITE: &[(&str, Check)] = &[
    ("numeric inversion agrees with every closed form", closed_forms),
    ("residual converges at second order", residual_order),
    ("wave depends on x / eps only", scaling),
    ("double-degenerate wave is odd", oddness),
];

fn grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..=n).map(|i| a + (b - a) * i as f64 / n as f64).collect()
}

fn closed_forms() -> Result<(), String> {
    let cases = [
        (2.0, 4.0, Degeneracy::DoubleDegenerate, WaveForm::Tanh),
        (2.0, 2.0, Degeneracy::DoubleDegenerate, WaveForm::Linear),
        (2.0, 3.0, Degeneracy::DoubleDegenerate, WaveForm::Sine),
        (2.0, 2.0, Degeneracy::SingleDegenerate, WaveForm::Exp),
        (3.0, 3.0, Degeneracy::SingleDegenerate, WaveForm::AlgebraicSingle),
    ];
    for (m, n, deg, form) in cases {
        let p = ModelParams::new(m, n, 0.1, deg).unwrap();
        let xs = grid(-1.5, 1.5, 399);
        let closed = standing_wave(&p, &xs).unwrap();
        ensure(closed.form() == form, || format!("{:?} instead of {form:?}", closed.form()))?;
        let numeric = standing_wave_with(&p, &xs, true).unwrap();
        let worst = closed
            .samples()
            .iter()
            .zip(numeric.samples())
            .map(|(c, q)| (c.1 - q.1).abs())
            .fold(0.0, f64::max);
        ensure(worst < 1e-8, || format!("{form:?}: {worst:e}"))?;
    }
    Ok(())
}

fn residual_order() -> Result<(), String> {
    for (m, n, deg) in [
        (2.0, 4.0, Degeneracy::DoubleDegenerate),
        (2.0, 3.0, Degeneracy::DoubleDegenerate),
        (2.0, 6.0, Degeneracy::DoubleDegenerate),
        (2.0, 2.0, Degeneracy::SingleDegenerate),
    ] {
        let eps = 0.1;
        let p = ModelParams::new(m, n, eps, deg).unwrap();
        let cells = (1.0 / (eps / 20.0)).round() as usize;
        let w = standing_wave(&p, &grid(-0.5, 0.5, cells)).unwrap();
        let w2 = w.resample(&grid(-0.5, 0.5, 2 * cells));
        let (r1, r2) = (wave_residual(&w), wave_residual(&w2));
        let order = (r1 / r2).log2();
        ensure(order > 1.8, || format!("m={m} n={n} {deg:?}: {r1:e} -> {r2:e}, order {order}"))?;
    }
    Ok(())
}

fn params() -> impl Strategy<Value = ModelParams> {
    let deg = prop_oneof![Just(Degeneracy::DoubleDegenerate), Just(Degeneracy::SingleDegenerate)];
    (1.5f64..4.0, 0.0f64..5.0, deg).prop_map(|(m, dn, deg)| {
        let dn = if deg == Degeneracy::SingleDegenerate { dn.min(3.0) } else { dn };
        ModelParams::new(m, (m + dn).max(2.0), 1.0, deg).unwrap()
    })
}

fn scaling() -> Result<(), String> {
    let xs = prop::collection::vec(-3.0f64..3.0, 20);
    check(24, (params(), 0.02f64..0.5, xs), |(p, eps, xs)| {
        let unit = standing_wave_with(&p, &[], true).unwrap();
        let scaled = standing_wave_with(&p.with_epsilon(eps).unwrap(), &[], true).unwrap();
        for x in xs {
            let (a, b) = (scaled.value_at(eps * x), unit.value_at(x));
            prop_assert!((a - b).abs() < 1e-10, "x={x}: {a} vs {b}");
        }
        Ok(())
    })
}

fn oddness() -> Result<(), String> {
    let xs = prop::collection::vec(0.0f64..3.0, 20);
    check(24, (1.5f64..4.0, 0.0f64..5.0, 0.02f64..0.5, xs, any::<bool>()), |(m, dn, eps, xs, numeric)| {
        let p = ModelParams::new(m, (m + dn).max(2.0), eps, Degeneracy::DoubleDegenerate).unwrap();
        let w = standing_wave_with(&p, &[], numeric).unwrap();
        prop_assert_eq!(w.value_at(0.0), 0.0);
        for x in xs {
            let x = x * eps;
            prop_assert!((w.value_at(-x) + w.value_at(x)).abs() < 1e-10);
        }
        Ok(())
    })
}
