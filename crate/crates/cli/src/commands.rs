use std::path::{Path, PathBuf};

use degenac::energy::energy_with_panels;
use degenac::interfaces::ExitReference;
use degenac::quadrature::{gamma_beta_identity, gamma_display_formula};
use degenac::solver::{RecordStride, StopReason};
use degenac::sweep::{run_sweep, Horizon, SweepSpec};
use degenac::waves::{standing_wave_with, DecayFit, Side};
use degenac::{
    build_profile, check_transition_structure, decay_rate, energy, energy_identity_residual, exit_time,
    gamma_closed_form, gamma_constant, hausdorff, interface_set, kj_sequence, max_r, residual_profile,
    simulate, theta, Degeneracy, Field, ModelParams, ProfileMode, SimTrace, ThetaCase,
    ThetaOptions, ThetaScale,
};
use serde_json::{json, Value};

use crate::args::{
    Cli, Command, EnergyArgs, GammaArgs, LayoutArgs, ProfileArgs, ReportArgs, SimulateArgs, SweepArgs, WaveArgs,
};
use crate::config::{ConfigFile, RunConfig};
use crate::error::{CliError, Result, EXIT_CENSORED, EXIT_EARLY_STOP, EXIT_OK};
use crate::output::{list, num, opt, provenance, read_field, write_field, write_json, write_text, CsvOut};
use crate::plot::{render, Chart, Series};

/// Energy rise between records tolerated by the summaries' monotonicity check, relative to `E(0)`.
pub const ENERGY_RISE_LIMIT: f64 = 1e-10;
pub const BOUND_LIMIT: f64 = 1e-6;
pub const ENERGY_IDENTITY_LIMIT: f64 = 5e-3;
const KJ_TERMS: usize = 12;

pub fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Gamma(a) => gamma(a),
        Command::Wave(a) => wave(a),
        Command::Profile(a) => profile(a),
        Command::Energy(a) => energy_cmd(a),
        Command::Simulate(a) => simulate_cmd(a),
        Command::Sweep(a) => sweep(a),
        Command::Report(a) => report(a),
    }
}

/// `DEGENAC_JOBS` wins over `--jobs`; the default is one worker.
pub fn resolve_jobs(flag: Option<usize>) -> Result<usize> {
    let jobs = match std::env::var("DEGENAC_JOBS") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|_| CliError::Config(format!("DEGENAC_JOBS must be a positive integer, got `{v}`")))?,
        Err(_) => flag.unwrap_or(1),
    };
    if jobs == 0 {
        return Err(CliError::Config("jobs must be at least 1".into()));
    }
    Ok(jobs)
}

fn pair(flag: &str, v: &[f64]) -> Result<[f64; 2]> {
    match v {
        [a, b] => Ok([*a, *b]),
        _ => Err(CliError::Config(format!("--{flag} takes two numbers a,b, got {}", v.len()))),
    }
}

fn load(config: &str, layout: &LayoutArgs, edit: impl FnOnce(&mut ConfigFile)) -> Result<RunConfig> {
    let domain = layout.domain.as_deref().map(|d| pair("domain", d)).transpose()?;
    RunConfig::load(config, |f| {
        if let Some(h) = &layout.jumps {
            f.jumps = Some(h.clone());
        }
        if domain.is_some() {
            f.domain = domain;
        }
        if layout.first_value.is_some() {
            f.first_value = layout.first_value;
        }
        if layout.cells.is_some() {
            f.cells = layout.cells;
        }
        edit(f);
    })
}

fn print_json(value: &Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("report serializes"));
}

fn theta_or_none(params: &ModelParams, r: f64, options: ThetaOptions) -> Result<Option<ThetaScale>> {
    match theta(params, r, options) {
        Ok(t) => Ok(Some(t)),
        Err(degenac::Error::NoSlowMotionScale) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn describe_theta(t: &ThetaScale, epsilon: f64) -> Value {
    match *t {
        ThetaScale::Exponential { amplitude, factor } => json!({
            "kind": "exponential",
            "amplitude": amplitude,
            "factor": factor,
            "value": t.eval(epsilon),
            "ln_value": t.ln_eval(epsilon),
        }),
        ThetaScale::Algebraic { exponent } => json!({
            "kind": "algebraic",
            "exponent": exponent,
            "value": t.eval(epsilon),
            "ln_value": t.ln_eval(epsilon),
        }),
    }
}

fn algebraic_case(params: &ModelParams) -> bool {
    matches!(params.regime().theta_case, ThetaCase::E4 | ThetaCase::E5)
}

fn gamma(args: GammaArgs) -> Result<i32> {
    let cfg = RunConfig::load(&args.config.config, |_| {})?;
    let p = &cfg.params;
    let regime = p.regime();
    // both display formulas are written for the even diffusivity
    let (printed, corrected) = match p.degeneracy() {
        Degeneracy::DoubleDegenerate => (Some(gamma_display_formula(p)?), Some(gamma_beta_identity(p)?)),
        Degeneracy::SingleDegenerate => (None, None),
    };
    print_json(&json!({
        "m": p.m(),
        "n": p.n(),
        "degeneracy": p.degeneracy(),
        "regime": regime.tag,
        "theta_case": regime.theta_case,
        "outside_hypotheses": p.outside_hypotheses(),
        "gamma_quadrature": gamma_constant(p)?,
        "gamma_closed_form": gamma_closed_form(p),
        "gamma_display_printed": printed,
        "gamma_display_corrected": corrected,
    }));
    Ok(EXIT_OK)
}

fn parse_grid(s: &str) -> Result<(f64, f64, usize)> {
    let bad = || CliError::Config(format!("--grid expects a,b,N, got `{s}`"));
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [a, b, n] = parts.as_slice() else { return Err(bad()) };
    let (a, b, n) = (
        a.parse::<f64>().map_err(|_| bad())?,
        b.parse::<f64>().map_err(|_| bad())?,
        n.parse::<usize>().map_err(|_| bad())?,
    );
    if !(a < b) || n < 2 {
        return Err(CliError::Config(format!("--grid needs a < b and N >= 2, got `{s}`")));
    }
    Ok((a, b, n))
}

fn wave(args: WaveArgs) -> Result<i32> {
    let cfg = RunConfig::load(&args.config.config, |_| {})?;
    let (a, b, cells) = parse_grid(&args.grid)?;
    let grid = degenac::field::uniform_nodes(a, b, cells);
    let wave = standing_wave_with(&cfg.params, &grid, args.numeric)?;
    let residual = residual_profile(&wave);
    let out = cfg.output_path(&args.out);
    let mut csv = CsvOut::create(&out, &provenance(&cfg.hash(), "wave"), &["x", "phi", "residual"])?;
    for (&(x, phi), r) in wave.samples().iter().zip(&residual) {
        csv.row([num(x), num(phi), opt(*r)])?;
    }
    csv.finish()?;
    if let Some(plot) = &args.plot {
        let chart = Chart {
            title: format!("standing wave, eps = {}", cfg.params.epsilon()),
            x_label: "x".into(),
            y_label: "phi".into(),
            series: vec![Series {
                label: format!("{:?}", wave.form()),
                points: wave.samples().to_vec(),
                markers: false,
            }],
        };
        write_text(&cfg.output_path(plot), &render(&[chart]))?;
    }
    let decay = |side| decay_rate(&wave, side).ok();
    let decay: [Option<DecayFit>; 2] = [decay(Side::Left), decay(Side::Right)];
    print_json(&json!({
        "form": wave.form(),
        "omega1": wave.omega1(),
        "omega2": wave.omega2(),
        "max_residual": residual.iter().flatten().fold(0.0f64, |m, r| m.max(*r)),
        "decay_left": decay[0],
        "decay_right": decay[1],
        "csv": out,
    }));
    Ok(EXIT_OK)
}

fn profile(args: ProfileArgs) -> Result<i32> {
    let cfg = load(&args.config.config, &args.layout, |_| {})?;
    let v = cfg.require_jumps()?;
    let mode = if args.compacton { ProfileMode::Compacton } else { ProfileMode::Any };
    let prof = build_profile(&cfg.params, v, cfg.cells, mode)?;
    let out = cfg.output_path(&args.out);
    write_field(&out, &provenance(&cfg.hash(), "profile"), &prof.field)?;
    let sidecar = json!({
        "kind": "profile",
        "config_hash": cfg.hash(),
        "stationary": prof.stationary,
        "energy": prof.energy,
        "epsilon_bar": prof.epsilon_bar,
        "n_gamma": v.jumps().len() as f64 * gamma_constant(&cfg.params)?,
        "jumps": prof.jumps,
        "midpoints": prof.midpoints,
        "cells": prof.field.cells(),
    });
    write_json(&out.with_extension("json"), &sidecar)?;
    if let Some(plot) = &args.plot {
        let chart = field_chart("profile", &[("u", &prof.field)]);
        write_text(&cfg.output_path(plot), &render(&[chart]))?;
    }
    print_json(&sidecar);
    Ok(EXIT_OK)
}

fn field_chart(title: &str, fields: &[(&str, &Field)]) -> Chart {
    Chart {
        title: title.into(),
        x_label: "x".into(),
        y_label: "u".into(),
        series: fields
            .iter()
            .map(|(label, f)| Series {
                label: label.to_string(),
                points: f.xs().into_iter().zip(f.values().iter().copied()).collect(),
                markers: false,
            })
            .collect(),
    }
}

/// The field from `--init`, or the glued profile of the configured jumps.
fn initial_field(cfg: &RunConfig, init: Option<&Path>) -> Result<Field> {
    match init {
        Some(path) => read_field(path),
        None => Ok(build_profile(&cfg.params, cfg.require_jumps()?, cfg.cells, ProfileMode::Any)?.field),
    }
}

fn energy_cmd(args: EnergyArgs) -> Result<i32> {
    let cfg = load(&args.config.config, &args.layout, |_| {})?;
    let p = &cfg.params;
    let field = initial_field(&cfg, args.init.as_deref())?;
    let g = gamma_constant(p)?;
    let mut report = json!({
        "config_hash": cfg.hash(),
        "epsilon": p.epsilon(),
        "gamma": g,
        "certification": if args.init.is_some() {
            "conditional: the bounds assume E <= N gamma + eps^k_j for the supplied field"
        } else {
            "by construction: glued profiles satisfy E <= N gamma"
        },
    });
    let Some(v) = cfg.jumps.as_ref() else {
        let e = energy(p, &field);
        report["energy"] = json!(e);
        print_and_save(&cfg, args.out.as_deref(), &report)?;
        return Ok(EXIT_OK);
    };
    let r = max_r(v);
    let e = energy_with_panels(p, &field, v, r);
    let layers = v.jumps().len();
    let th = theta_or_none(p, r, cfg.theta)?;
    let delta = args.delta.unwrap_or(cfg.delta1);
    let check = check_transition_structure(p, &field, v, delta, args.slack, th.as_ref())?;
    let lower = th.as_ref().map(|t| layers as f64 * g - t.eval(p.epsilon()));
    report["layers"] = json!(layers);
    report["r"] = json!(r);
    report["n_gamma"] = json!(layers as f64 * g);
    report["energy"] = json!(e);
    report["theta"] = th.as_ref().map_or(Value::Null, |t| describe_theta(t, p.epsilon()));
    report["lower_bound"] = json!(lower);
    report["lower_bound_holds"] = json!(lower.map(|lb| e.total >= lb));
    report["transition"] = json!(check);
    report["delta"] = json!(delta);
    if algebraic_case(p) {
        let (k, beta) = kj_sequence(p, KJ_TERMS)?;
        report["kj"] = json!({ "k": k, "beta": beta });
    }
    print_and_save(&cfg, args.out.as_deref(), &report)?;
    Ok(EXIT_OK)
}

fn print_and_save(cfg: &RunConfig, out: Option<&Path>, report: &Value) -> Result<()> {
    if let Some(path) = out {
        write_json(&cfg.output_path(path), report)?;
    }
    print_json(report);
    Ok(())
}

fn worst_energy_rise(trace: &SimTrace) -> f64 {
    let e0 = trace.energies.first().map_or(1.0, |e| e.abs().max(1e-30));
    trace
        .energies
        .windows(2)
        .map(|w| (w[1] - w[0]) / e0)
        .fold(f64::NEG_INFINITY, f64::max)
}

fn simulate_cmd(args: SimulateArgs) -> Result<i32> {
    let cfg = load(&args.config.config, &args.layout, |f| {
        if args.t_end.is_some() {
            f.t_end = args.t_end;
        }
        if args.record_every.is_some() {
            f.record_every = args.record_every;
        }
        if args.snapshot_every.is_some() {
            f.snapshot_every = args.snapshot_every;
        }
        if args.max_steps.is_some() {
            f.max_steps = args.max_steps;
        }
    })?;
    if let Some(d) = args.stop_delta1 {
        if !(d > 0.0) {
            return Err(CliError::Config(format!("--stop-delta1 must be positive, got {d}")));
        }
    }
    let p = &cfg.params;
    let initial = initial_field(&cfg, args.init.as_deref())?;
    if initial.a() != cfg.domain.0 || initial.b() != cfg.domain.1 {
        eprintln!(
            "note: initial field lives on [{}, {}], config domain is [{}, {}]; using the field's",
            initial.a(),
            initial.b(),
            cfg.domain.0,
            cfg.domain.1
        );
    }
    let stop = args.stop_delta1.map(|d1| {
        move |trace: &SimTrace| {
            let first = &trace.interface_positions[0];
            match trace.interface_positions.last() {
                Some(now) if now.is_empty() => true,
                Some(now) => hausdorff(first, now).map_or(true, |d| d > d1),
                None => false,
            }
        }
    });
    let outcome = simulate(p, &initial, &cfg.sim, stop.as_ref().map(|s| s as &dyn Fn(&SimTrace) -> bool))?;
    let trace = &outcome.trace;
    let dir = cfg.output_path(&args.out);
    let prov = provenance(&cfg.hash(), "simulate");

    let mut csv = CsvOut::create(
        &dir.join("trace.csv"),
        &prov,
        &["t", "energy", "dissipation", "bound_violation", "interfaces"],
    )?;
    for k in 0..trace.len() {
        csv.row([
            num(trace.times[k]),
            num(trace.energies[k]),
            num(trace.dissipation[k]),
            num(trace.bound_violation[k]),
            list(&trace.interface_positions[k]),
        ])?;
    }
    csv.finish()?;

    let mut index = CsvOut::create(&dir.join("snapshots.csv"), &prov, &["index", "t", "file"])?;
    for (k, snap) in trace.snapshots.iter().enumerate() {
        let name = format!("snapshot_{k:04}.csv");
        write_field(&dir.join("snapshots").join(&name), &prov, &snap.field)?;
        index.row([k.to_string(), num(snap.time), format!("snapshots/{name}")])?;
    }
    index.finish()?;
    write_field(&dir.join("final.csv"), &prov, &trace.final_field)?;

    let reference = interface_set(&initial, &cfg.sim.probe)?;
    let exit = if reference.positions.is_empty() {
        None
    } else {
        Some(exit_time(trace, ExitReference::Interfaces(&reference), args.stop_delta1.unwrap_or(cfg.delta1))?)
    };
    let rise = worst_energy_rise(trace);
    let residual = energy_identity_residual(trace);
    let bound = trace.max_bound_violation();
    let summary = json!({
        "kind": "simulate",
        "config_hash": cfg.hash(),
        "params": p.spec(),
        "stop_reason": outcome.stop_reason,
        "steps": trace.steps,
        "records": trace.len(),
        "final_time": trace.final_time(),
        "bound_warning": outcome.bound_warning,
        "max_bound_violation": bound,
        "worst_energy_rise": rise,
        "energy_identity_residual": residual,
        "exit": exit,
        "checks": {
            "bound": bound <= BOUND_LIMIT,
            "energy_monotone": rise <= ENERGY_RISE_LIMIT,
            "energy_identity": residual < ENERGY_IDENTITY_LIMIT,
        },
    });
    write_json(&dir.join("trace.json"), &summary)?;
    if let Some(plot) = &args.plot {
        let energy_chart = Chart {
            title: "energy".into(),
            x_label: "t".into(),
            y_label: "E".into(),
            series: vec![Series {
                label: "E(t)".into(),
                points: trace.times.iter().copied().zip(trace.energies.iter().copied()).collect(),
                markers: false,
            }],
        };
        let fields = field_chart("fields", &[("initial", &initial), ("final", &trace.final_field)]);
        write_text(&cfg.output_path(plot), &render(&[energy_chart, fields]))?;
    }
    print_json(&summary);
    Ok(match outcome.stop_reason {
        StopReason::Completed => EXIT_OK,
        StopReason::Predicate | StopReason::MaxSteps => EXIT_EARLY_STOP,
    })
}

fn sweep(args: SweepArgs) -> Result<i32> {
    let cfg = load(&args.config.config, &args.layout, |f| {
        if let Some(eps) = &args.eps {
            f.eps_list = Some(eps.clone());
        }
        if args.delta1.is_some() {
            f.delta1 = args.delta1;
        }
        if args.t_max.is_some() {
            f.t_max = args.t_max;
        }
        if args.max_steps.is_some() {
            f.max_steps = args.max_steps;
        }
    })?;
    let jobs = resolve_jobs(args.jobs)?;
    if cfg.eps_list.is_empty() {
        return Err(CliError::Config("missing field `eps_list` (set it in the config or pass --eps)".into()));
    }
    let v = cfg.require_jumps()?;
    let record_steps = match cfg.sim.record_every {
        RecordStride::Steps(s) => s,
        RecordStride::Time(_) => unreachable!("configs record by steps"),
    };
    let spec = SweepSpec {
        params: cfg.params,
        domain: cfg.domain,
        jumps: v.jumps().to_vec(),
        first_value: v.first_value(),
        delta1: cfg.delta1,
        eps_list: cfg.eps_list.clone(),
        cells_per_eps: cfg.cells_per_eps,
        horizon: cfg.horizon,
        dt_safety: cfg.sim.dt_safety,
        record_steps,
        max_steps: cfg.sim.max_steps,
        probe: cfg.sim.probe.clone(),
        jobs,
    };
    let result = run_sweep(&spec)?;
    let th = theta_or_none(&cfg.params, max_r(v), cfg.theta)?;
    let out = cfg.output_path(&args.out);
    let mut csv = CsvOut::create(
        &out,
        &provenance(&cfg.hash(), "sweep"),
        &[
            "epsilon",
            "exit_time",
            "censored",
            "annihilation",
            "t_max",
            "cells",
            "steps",
            "record_steps",
            "refinements",
            "bound_violation",
            "ln_theta_inverse",
            "surrogate_log_ratio",
        ],
    )?;
    let mut points = Vec::new();
    let mut surrogate = Vec::new();
    for pt in &result.points {
        let ln_inv = th.as_ref().map(|t| -t.ln_eval(pt.epsilon));
        let log_ratio = ln_inv.map(|l| pt.exit.time.ln() - l);
        if !pt.exit.censored {
            surrogate.extend(log_ratio);
        }
        csv.row([
            num(pt.epsilon),
            num(pt.exit.time),
            pt.exit.censored.to_string(),
            pt.exit.annihilation.to_string(),
            num(pt.t_max),
            pt.cells.to_string(),
            pt.steps.to_string(),
            pt.record_steps.to_string(),
            pt.refinements.to_string(),
            num(pt.bound_violation),
            opt(ln_inv),
            opt(log_ratio),
        ])?;
        points.push(json!({
            "epsilon": pt.epsilon,
            "cells": pt.cells,
            "t_max": pt.t_max,
            "exit": pt.exit,
            "stop_reason": pt.stop_reason,
            "steps": pt.steps,
            "record_steps": pt.record_steps,
            "refinements": pt.refinements,
            "bound_violation": pt.bound_violation,
        }));
    }
    csv.finish()?;

    let fit = &result.fit;
    let preferred = match fit.verdict {
        degenac::Verdict::Exponential => fit.exp_fit,
        degenac::Verdict::Algebraic => fit.alg_fit,
        degenac::Verdict::Inconclusive => None,
    };
    let beta = if algebraic_case(&cfg.params) {
        Some(kj_sequence(&cfg.params, 200)?.1)
    } else {
        None
    };
    let worst_bound = result.points.iter().map(|p| p.bound_violation).fold(0.0, f64::max);
    let summary = json!({
        "kind": "sweep",
        "config_hash": cfg.hash(),
        "params": cfg.params.spec(),
        "regime": cfg.params.regime(),
        "jumps": v.jumps(),
        "first_value": v.first_value(),
        "delta1": cfg.delta1,
        "jobs": jobs,
        "horizon": match cfg.horizon {
            Horizon::Fixed(t) => json!({ "fixed": t }),
            Horizon::ExpScale(c) => json!({ "exp_scale": c }),
        },
        "verdict": fit.verdict,
        "exp_fit": fit.exp_fit,
        "alg_fit": fit.alg_fit,
        "beta": beta,
        "censored_bounds": fit.censored_bounds,
        "diagnostics": fit.diagnostics,
        "all_censored": result.all_censored(),
        "theta": th.as_ref().map(|t| describe_theta(t, cfg.params.epsilon())),
        "surrogate_min_log_ratio": surrogate.iter().copied().reduce(f64::min),
        "checks": {
            "bound": worst_bound <= BOUND_LIMIT,
            "slope_positive": preferred.map(|f| f.slope > 0.0),
            "censored_consistent": fit.censored_bounds.iter().all(|c| c.consistent != Some(false)),
        },
        "points": points,
    });
    write_json(&out.with_extension("json"), &summary)?;
    if let Some(plot) = &args.plot {
        write_text(&cfg.output_path(plot), &render(&regression_charts(&result)))?;
    }
    print_json(&json!({
        "verdict": fit.verdict,
        "all_censored": result.all_censored(),
        "csv": out,
    }));
    Ok(if result.all_censored() { EXIT_CENSORED } else { EXIT_OK })
}

fn regression_charts(result: &degenac::sweep::SweepResult) -> Vec<Chart> {
    let fit = &result.fit;
    let usable: Vec<(f64, f64)> = fit
        .points
        .iter()
        .zip(&fit.censored)
        .filter(|(p, c)| !**c && p.1 > 0.0)
        .map(|(p, _)| *p)
        .collect();
    let censored: Vec<(f64, f64)> = fit
        .points
        .iter()
        .zip(&fit.censored)
        .filter(|(p, c)| **c && p.1 > 0.0)
        .map(|(p, _)| *p)
        .collect();
    let view = |title: &str, x_label: &str, tx: fn(f64) -> f64, line: Option<degenac::fit::LineFit>| {
        let xs: Vec<f64> = fit.points.iter().map(|p| tx(p.0)).collect();
        let (lo, hi) = xs.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)));
        let mut series = vec![
            Series {
                label: "exit times".into(),
                points: usable.iter().map(|p| (tx(p.0), p.1.ln())).collect(),
                markers: true,
            },
            Series {
                label: "censored (lower bounds)".into(),
                points: censored.iter().map(|p| (tx(p.0), p.1.ln())).collect(),
                markers: true,
            },
        ];
        if let Some(f) = line {
            series.push(Series {
                label: format!("slope {:.3}, R2 {:.4}", f.slope, f.r_squared),
                points: vec![(lo, f.intercept + f.slope * lo), (hi, f.intercept + f.slope * hi)],
                markers: false,
            });
        }
        Chart {
            title: title.into(),
            x_label: x_label.into(),
            y_label: "ln T".into(),
            series,
        }
    };
    vec![
        view("exponential view", "1/eps", |e| 1.0 / e, fit.exp_fit),
        view("algebraic view", "ln(1/eps)", |e| (1.0 / e).ln(), fit.alg_fit),
    ]
}

fn read_summary(path: &Path) -> Result<Option<Value>> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let Ok(value) = serde_json::from_str::<Value>(&text) else {
        return Ok(None);
    };
    Ok(match value.get("kind").and_then(Value::as_str) {
        Some("sweep" | "simulate") => Some(value),
        _ => None,
    })
}

/// A summary passes when none of its checks is `false`; `null` checks do not count.
fn checks_pass(summary: &Value) -> bool {
    summary
        .get("checks")
        .and_then(Value::as_object)
        .is_none_or(|c| c.values().all(|v| v.as_bool() != Some(false)))
}

fn report(args: ReportArgs) -> Result<i32> {
    let dir = &args.dir;
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| CliError::io(dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    // simulate writes its summary one level down
    for sub in std::fs::read_dir(dir).map_err(|e| CliError::io(dir, e))?.flatten() {
        let candidate = sub.path().join("trace.json");
        if candidate.is_file() {
            paths.push(candidate);
        }
    }
    paths.sort();
    let mut sweeps = Vec::new();
    let mut simulations = Vec::new();
    for path in &paths {
        let Some(summary) = read_summary(path)? else { continue };
        let name = path.strip_prefix(dir).unwrap_or(path).to_string_lossy().into_owned();
        let pass = checks_pass(&summary);
        let pick = |key: &str| summary.get(key).cloned().unwrap_or(Value::Null);
        if summary["kind"] == "sweep" {
            sweeps.push(json!({
                "file": name,
                "params": pick("params"),
                "verdict": pick("verdict"),
                "exp_fit": pick("exp_fit"),
                "alg_fit": pick("alg_fit"),
                "beta": pick("beta"),
                "all_censored": pick("all_censored"),
                "checks": pick("checks"),
                "pass": pass,
            }));
        } else {
            simulations.push(json!({
                "file": name,
                "params": pick("params"),
                "stop_reason": pick("stop_reason"),
                "energy_identity_residual": pick("energy_identity_residual"),
                "worst_energy_rise": pick("worst_energy_rise"),
                "checks": pick("checks"),
                "pass": pass,
            }));
        }
    }
    if sweeps.is_empty() && simulations.is_empty() {
        return Err(CliError::input(dir, "no sweep or simulate summaries found"));
    }
    let all_pass = sweeps.iter().chain(&simulations).all(|s| s["pass"] == true);
    let report = json!({
        "sweeps": sweeps,
        "simulations": simulations,
        "all_pass": all_pass,
    });
    match &args.out {
        Some(path) => write_json(path, &report)?,
        None => print_json(&report),
    }
    Ok(EXIT_OK)
}
