//! Run configuration: a strict JSON object, defaults filled in, every field
//! validated by the library type that owns it.

use std::path::{Path, PathBuf};

use degenac::interfaces::ProbeSet;
use degenac::solver::RecordStride;
use degenac::sweep::Horizon;
use degenac::{make_jump_function, Degeneracy, ModelParams, PiecewiseConstant, SimConfig, ThetaOptions};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};

/// Grid cells per `eps` when `cells` is not given.
pub const CELLS_PER_EPS: f64 = 20.0;
pub const DEFAULT_DOMAIN: [f64; 2] = [-4.0, 4.0];
pub const DEFAULT_MAX_STEPS: usize = 10_000_000;
/// Default horizon factor `c` in `T_max = c * exp(1 / eps)`.
pub const DEFAULT_HORIZON_FACTOR: f64 = 10.0;

/// The JSON object as written by the user. After [`RunConfig::resolve`] every
/// optional field is filled, and the filled object is what gets hashed.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub m: f64,
    pub n: f64,
    pub epsilon: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degeneracy: Option<Degeneracy>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cells: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cells_per_eps: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jumps: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_value: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps_list: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_end: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_max: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub horizon_factor: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dt_safety: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub record_every: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub snapshot_every: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_steps: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound_tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub energy_tolerance: Option<f64>,
    /// The probe set `K` as closed intervals; a point is `[c, c]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probe: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amplitude: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
}

impl ConfigFile {
    /// Parses `source`, which is either inline JSON (starting with `{`) or a path.
    pub fn load(source: &str) -> Result<Self> {
        let text = if source.trim_start().starts_with('{') {
            source.to_string()
        } else {
            std::fs::read_to_string(source).map_err(|e| CliError::io(Path::new(source), e))?
        };
        serde_json::from_str(&text).map_err(|e| CliError::Config(e.to_string()))
    }
}

/// A validated configuration with every default in place.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub file: ConfigFile,
    pub params: ModelParams,
    pub domain: (f64, f64),
    pub cells: usize,
    pub cells_per_eps: f64,
    pub jumps: Option<PiecewiseConstant>,
    pub delta1: f64,
    pub eps_list: Vec<f64>,
    pub sim: SimConfig,
    pub theta: ThetaOptions,
    pub horizon: Horizon,
    pub output_dir: PathBuf,
}

fn invalid(field: &str, reason: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("invalid {field}: {reason}"))
}

fn positive(field: &str, v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(invalid(field, format!("must be positive and finite, got {v}")))
    }
}

impl RunConfig {
    /// Fills defaults and validates. Grid: `h = eps / 20` unless `cells` is given.
    pub fn resolve(mut file: ConfigFile) -> Result<Self> {
        let degeneracy = *file.degeneracy.get_or_insert(Degeneracy::DoubleDegenerate);
        let params = ModelParams::new(file.m, file.n, file.epsilon, degeneracy)?;
        let [a, b] = *file.domain.get_or_insert(DEFAULT_DOMAIN);
        if !(a < b && a.is_finite() && b.is_finite()) {
            return Err(invalid("domain", format!("need a < b, got [{a}, {b}]")));
        }
        let cells_per_eps = positive("cells_per_eps", *file.cells_per_eps.get_or_insert(CELLS_PER_EPS))?;
        let cells = *file
            .cells
            .get_or_insert(((b - a) * cells_per_eps / file.epsilon).round().max(1.0) as usize);
        if cells < 2 {
            return Err(invalid("cells", "need at least 2 cells"));
        }
        let first_value = *file.first_value.get_or_insert(-1.0);
        let jumps = match &file.jumps {
            Some(h) => Some(make_jump_function(a, b, h, first_value)?),
            None => None,
        };
        let delta1 = positive("delta1", *file.delta1.get_or_insert(0.1))?;
        let eps_list = file.eps_list.get_or_insert_with(Vec::new).clone();
        for &e in &eps_list {
            params.with_epsilon(e)?;
        }
        let probe = ProbeSet::new(
            file.probe
                .get_or_insert_with(|| vec![[0.0, 0.0]])
                .iter()
                .map(|p| (p[0], p[1]))
                .collect(),
        )?;
        let sim = SimConfig {
            t_end: *file.t_end.get_or_insert(1.0),
            dt_safety: *file.dt_safety.get_or_insert(0.5),
            record_every: RecordStride::Steps(*file.record_every.get_or_insert(10)),
            snapshot_every: *file.snapshot_every.get_or_insert(0),
            max_steps: *file.max_steps.get_or_insert(DEFAULT_MAX_STEPS),
            bound_tolerance: *file.bound_tolerance.get_or_insert(1e-8),
            energy_tolerance: *file.energy_tolerance.get_or_insert(1e-8),
            probe,
            ..SimConfig::default()
        };
        sim.validate()?;
        if let Some(amp) = file.amplitude {
            positive("amplitude", amp)?;
        }
        if file.truncation == Some(0) {
            return Err(invalid("truncation", "index j starts at 1"));
        }
        let theta = ThetaOptions {
            amplitude: file.amplitude,
            truncation: file.truncation,
        };
        let horizon = match file.t_max {
            Some(t) => Horizon::Fixed(positive("t_max", t)?),
            None => Horizon::ExpScale(positive(
                "horizon_factor",
                *file.horizon_factor.get_or_insert(DEFAULT_HORIZON_FACTOR),
            )?),
        };
        let output_dir = file.output_dir.get_or_insert_with(|| PathBuf::from(".")).clone();
        Ok(RunConfig {
            file,
            params,
            domain: (a, b),
            cells,
            cells_per_eps,
            jumps,
            delta1,
            eps_list,
            sim,
            theta,
            horizon,
            output_dir,
        })
    }

    /// Loads and resolves, letting `edit` apply command-line overrides first.
    pub fn load(source: &str, edit: impl FnOnce(&mut ConfigFile)) -> Result<Self> {
        let mut file = ConfigFile::load(source)?;
        edit(&mut file);
        Self::resolve(file)
    }

    /// First 16 hex digits of the SHA-256 of the resolved configuration.
    pub fn hash(&self) -> String {
        let canonical = serde_json::to_string(&self.file).expect("config serializes");
        let digest = Sha256::digest(canonical.as_bytes());
        format!("{digest:x}")[..16].to_string()
    }

    pub fn require_jumps(&self) -> Result<&PiecewiseConstant> {
        self.jumps
            .as_ref()
            .ok_or_else(|| CliError::Config("missing field `jumps` (set it in the config or pass --jumps)".into()))
    }

    /// Resolves `path` against the output directory unless it is absolute.
    pub fn output_path(&self, path: &Path) -> PathBuf {
        if path.is_absolute() {
            path.to_path_buf()
        } else {
            self.output_dir.join(path)
        }
    }
}
