use degenac::{
    build_profile, epsilon_bar, gamma_constant, interface_set, make_jump_function, Degeneracy,
    ModelParams, ProbeSet, ProfileMode,
};
use proptest::prelude::*;

use super::{check, Check};

pub const SUITE: &[(&str, Check)] = &[
    ("compacton chain carries exactly N gamma", compacton_energy),
    ("non-touching chain stays below N gamma", non_touching_energy),
    ("zeros sit within one cell of the jumps", zeros),
    ("L1 distance halves with eps", l1_halving),
];

/// Sorted jumps in `(-4, 4)` that are at least `gap` apart and away from the ends.
fn jumps(max: usize, gap: f64) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0f64..1.0, 1..=max).prop_map(move |raw| {
        let slot = 7.0 / raw.len() as f64;
        raw.iter()
            .enumerate()
            .map(|(i, r)| -3.5 + slot * i as f64 + 0.5 * gap + r * (slot - gap).max(0.0))
            .collect()
    })
}

fn first() -> impl Strategy<Value = f64> {
    prop_oneof![Just(-1.0), Just(1.0)]
}

fn compacton_energy() -> Result<(), String> {
    let n = prop_oneof![Just(2.0f64), Just(2.5), Just(3.0), Just(3.5)];
    check(8, (n, jumps(4, 1.0), first()), |(n, js, first)| {
        let p = ModelParams::new(2.0, n, 0.1, Degeneracy::DoubleDegenerate).unwrap();
        let v = make_jump_function(-4.0, 4.0, &js, first).unwrap();
        let eps = 0.1f64.min(0.8 * epsilon_bar(&p, &v).unwrap());
        let p = p.with_epsilon(eps).unwrap();
        // contact points with non-integer exponents limit the quadrature order, hence the fine grid
        let cells = (8.0 * 400.0 / eps).round() as usize;
        let prof = build_profile(&p, &v, cells, ProfileMode::Compacton).unwrap();
        prop_assert!(prof.stationary);
        let target = js.len() as f64 * gamma_constant(&p).unwrap();
        prop_assert!((prof.energy / target - 1.0).abs() < 1e-6, "n={n} eps={eps}: {} vs {target}", prof.energy);
        Ok(())
    })
}

fn non_touching_energy() -> Result<(), String> {
    let strategy = (1.5f64..3.0, 0.0f64..4.0, any::<bool>(), jumps(4, 0.6), first(), 0.05f64..0.2);
    check(8, strategy, |(m, dn, single, js, first, eps)| {
        let deg = if single { Degeneracy::SingleDegenerate } else { Degeneracy::DoubleDegenerate };
        let p = ModelParams::new(m, m + 2.0 + dn, eps, deg).unwrap();
        let v = make_jump_function(-4.0, 4.0, &js, first).unwrap();
        let prof = build_profile(&p, &v, (8.0 * 40.0 / eps).round() as usize, ProfileMode::Any).unwrap();
        let target = js.len() as f64 * gamma_constant(&p).unwrap();
        prop_assert!(prof.energy < target, "{} vs {target}", prof.energy);
        Ok(())
    })
}

fn zeros() -> Result<(), String> {
    let strategy = (1.5f64..3.0, 0.0f64..4.0, jumps(5, 0.6), first(), 0.03f64..0.15);
    check(8, strategy, |(m, dn, js, first, eps)| {
        let p = ModelParams::new(m, m + 2.0 + dn, eps, Degeneracy::DoubleDegenerate).unwrap();
        let v = make_jump_function(-4.0, 4.0, &js, first).unwrap();
        let prof = build_profile(&p, &v, (8.0 * 20.0 / eps).round() as usize, ProfileMode::Any).unwrap();
        let zeros = interface_set(&prof.field, &ProbeSet::zero()).unwrap().positions;
        prop_assert_eq!(zeros.len(), js.len());
        for (z, h) in zeros.iter().zip(&js) {
            prop_assert!((z - h).abs() <= prof.field.step(), "zero {z} vs jump {h}");
        }
        Ok(())
    })
}

fn l1_halving() -> Result<(), String> {
    check(8, (1.0f64..3.0, jumps(3, 1.5), first(), 0.02f64..0.06), |(m, js, first, eps)| {
        let p = ModelParams::new(m, m + 2.0, eps, Degeneracy::DoubleDegenerate).unwrap();
        let v = make_jump_function(-4.0, 4.0, &js, first).unwrap();
        let dist = |e: f64| {
            let p = p.with_epsilon(e).unwrap();
            let prof = build_profile(&p, &v, (8.0 * 20.0 / e).round() as usize, ProfileMode::Any).unwrap();
            v.l1_distance(&prof.field)
        };
        let (coarse, fine) = (dist(eps), dist(eps / 2.0));
        // the tail mass is exactly linear in eps; the grid quadrature costs a few 1e-6
        prop_assert!(coarse / fine >= 2.0 * (1.0 - 1e-4), "{coarse} -> {fine}");
        Ok(())
    })
}
