use degenac::field::uniform_nodes;
use degenac::solver::RecordStride;
use degenac::{simulate, spatial_operator, standing_wave, Degeneracy, Field, ModelParams, SimConfig};
use proptest::prelude::*;

use super::{check, ensure, Check};

pub const SUITE: &[(&str, Check)] = &[
    ("boundary flux vanishes", boundary_flux),
    ("energy decreases and values stay in bounds", monotone_energy),
    ("standing-wave drift converges at second order", grid_convergence),
];

fn degeneracy() -> impl Strategy<Value = Degeneracy> {
    prop_oneof![Just(Degeneracy::DoubleDegenerate), Just(Degeneracy::SingleDegenerate)]
}

fn modes() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-1.0f64..1.0, 0.0f64..6.3), 1..5)
}

/// Smooth data in `[-1, 1]` from a few random modes.
fn smooth_field(a: f64, b: f64, cells: usize, modes: &[(f64, f64)]) -> Field {
    let total: f64 = modes.iter().map(|(c, _)| c.abs()).sum::<f64>().max(1e-12);
    Field::from_fn(a, b, cells, |x| {
        let s: f64 = modes
            .iter()
            .enumerate()
            .map(|(k, (c, ph))| c * ((k as f64 + 1.0) * x + ph).sin())
            .sum();
        s / total
    })
    .unwrap()
}

fn boundary_flux() -> Result<(), String> {
    let strategy = (0.0f64..4.0, 2.0f64..8.0, degeneracy(), 0.05f64..1.0, 8usize..400, modes());
    check(200, strategy, |(m, n, deg, eps, cells, modes)| {
        // with mirrored ghosts the divergence part telescopes to zero under trapezoid weights
        let p = ModelParams::new(m, n, eps, deg).unwrap();
        let u = smooth_field(-1.0, 1.0, cells, &modes);
        let op = spatial_operator(&p, &u);
        let h = u.step();
        let v = u.values();
        let last = v.len() - 1;
        let (mut sum, mut scale) = (0.0, 0.0);
        for i in 0..=last {
            let boundary = i == 0 || i == last;
            let w = if boundary { 0.5 } else { 1.0 };
            let ux = if boundary { 0.0 } else { (v[i + 1] - v[i - 1]) / (2.0 * h) };
            let div = op.values()[i]
                + p.potential_prime(v[i])
                + 0.5 * eps * eps * p.diffusivity_prime(v[i]) * ux * ux;
            sum += w * div;
            scale += w * div.abs();
        }
        prop_assert!(sum.abs() <= 1e-12 * scale.max(1.0), "{sum} of {scale}");
        Ok(())
    })
}

fn monotone_energy() -> Result<(), String> {
    let m = prop_oneof![Just(2.0f64), 1.0f64..3.0];
    check(12, (m, 0.0f64..4.0, degeneracy(), 0.1f64..0.3, modes()), |(m, dn, deg, eps, modes)| {
        let p = ModelParams::new(m, (m + dn).max(2.0), eps, deg).unwrap();
        let cells = (4.0 * 20.0 / eps).round() as usize;
        let u0 = smooth_field(-2.0, 2.0, cells, &modes);
        let cfg = SimConfig { t_end: 0.5, record_every: RecordStride::Steps(5), ..SimConfig::default() };
        let out = simulate(&p, &u0, &cfg, None).unwrap();
        let e = &out.trace.energies;
        for w in e.windows(2) {
            prop_assert!(w[1] <= w[0] + 1e-10 * e[0], "energy rose {} -> {}", w[0], w[1]);
        }
        prop_assert!(out.trace.max_bound_violation() <= 1e-6, "{}", out.trace.max_bound_violation());
        Ok(())
    })
}

fn grid_convergence() -> Result<(), String> {
    let p = ModelParams::new(2.0, 4.0, 0.1, Degeneracy::DoubleDegenerate).unwrap();
    let drift = |cells: usize| {
        let w = standing_wave(&p, &uniform_nodes(-2.0, 2.0, cells)).unwrap();
        let u0 = Field::new(-2.0, 2.0, w.samples().iter().map(|s| s.1).collect()).unwrap();
        let cfg = SimConfig { t_end: 1.0, record_every: RecordStride::Steps(1000), ..SimConfig::default() };
        let out = simulate(&p, &u0, &cfg, None).unwrap();
        out.trace.final_field.max_abs_diff(&u0)
    };
    let (coarse, fine) = (drift(800), drift(1600));
    let order = (coarse / fine).log2();
    ensure(order >= 1.8, || format!("{coarse:e} -> {fine:e}, order {order}"))
}
