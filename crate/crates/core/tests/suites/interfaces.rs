use std::sync::OnceLock;

use degenac::interfaces::ExitReference;
use degenac::solver::RecordStride;
use degenac::{
    build_profile, exit_time, hausdorff, interface_set, make_jump_function, simulate, Degeneracy,
    Field, ModelParams, PiecewiseConstant, ProbeSet, ProfileMode, SimConfig, SimTrace,
};
use proptest::prelude::*;

use super::{check, ensure, Check};

pub const SUITE: &[(&str, Check)] = &[
    ("hausdorff is a metric on finite sets", metric),
    ("tanh zero is grid invariant", grid_invariance),
    ("exit time grows with delta", monotone_exit),
];

fn sorted_set() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-5.0f64..5.0, 1..12).prop_map(|mut v| {
        v.sort_by(f64::total_cmp);
        v.dedup();
        v
    })
}

/// Two close layers that merge quickly, recorded densely.
fn collapsing_run() -> &'static (PiecewiseConstant, SimTrace) {
    static RUN: OnceLock<(PiecewiseConstant, SimTrace)> = OnceLock::new();
    RUN.get_or_init(|| {
        let p = ModelParams::new(2.0, 4.0, 0.25, Degeneracy::DoubleDegenerate).unwrap();
        let v = make_jump_function(-2.0, 2.0, &[-0.4, 0.4], -1.0).unwrap();
        let prof = build_profile(&p, &v, 160, ProfileMode::Any).unwrap();
        let cfg = SimConfig { t_end: 6.0, record_every: RecordStride::Steps(4), ..SimConfig::default() };
        (v, simulate(&p, &prof.field, &cfg, None).unwrap().trace)
    })
}

fn metric() -> Result<(), String> {
    check(1000, (sorted_set(), sorted_set(), sorted_set()), |(x, y, z)| {
        let dxy = hausdorff(&x, &y).unwrap();
        prop_assert!(dxy >= 0.0);
        prop_assert_eq!(dxy, hausdorff(&y, &x).unwrap());
        prop_assert_eq!(hausdorff(&x, &x).unwrap(), 0.0);
        prop_assert_eq!(dxy == 0.0, x == y);
        let (dxz, dzy) = (hausdorff(&x, &z).unwrap(), hausdorff(&z, &y).unwrap());
        prop_assert!(dxy <= dxz + dzy + 1e-12);
        Ok(())
    })
}

fn grid_invariance() -> Result<(), String> {
    check(100, (-1.0f64..1.0, 0.02f64..0.3, 40usize..800), |(center, eps, cells)| {
        let layer = |x: f64| ((x - center) / (2.0 * eps)).tanh();
        let coarse = Field::from_fn(-2.0, 2.0, cells, layer).unwrap();
        let fine = Field::from_fn(-2.0, 2.0, 2 * cells, layer).unwrap();
        let a = interface_set(&coarse, &ProbeSet::zero()).unwrap().positions;
        let b = interface_set(&fine, &ProbeSet::zero()).unwrap().positions;
        prop_assert_eq!(a.len(), 1);
        prop_assert_eq!(b.len(), 1);
        prop_assert!((a[0] - b[0]).abs() <= fine.step(), "{} vs {}", a[0], b[0]);
        Ok(())
    })
}

fn monotone_exit() -> Result<(), String> {
    let (v, trace) = collapsing_run();
    let exit = exit_time(trace, ExitReference::Profile(v), 0.1).unwrap();
    ensure(!exit.censored, || "the reference run never exits".into())?;
    check(100, (0.01f64..0.4, 0.01f64..0.4), |(d1, d2)| {
        let (lo, hi) = if d1 <= d2 { (d1, d2) } else { (d2, d1) };
        let t_lo = exit_time(trace, ExitReference::Profile(v), lo).unwrap();
        let t_hi = exit_time(trace, ExitReference::Profile(v), hi).unwrap();
        prop_assert!(t_hi.time >= t_lo.time, "{lo}: {t_lo:?}, {hi}: {t_hi:?}");
        Ok(())
    })
}
