//! TOML configuration schema and its translation into engine objects.

use std::path::PathBuf;

use num_complex::Complex64;
use serde::Deserialize;

use qwalk_core::{
    default_projections, point_state, CoinMatrix, Ensemble, Family, ShiftSet, WalkSpec,
};

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

/// Top-level configuration file.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    /// Must equal 1; reserved for future format changes.
    pub schema_version: u32,
    pub walk: WalkSection,
    pub initial: InitialSection,
    pub run: RunSection,
    #[serde(default)]
    pub output: OutputSection,
    #[serde(default)]
    pub sweep: Option<SweepSection>,
}

/// The walk: either a named coin family or an explicit coin with
/// shift vectors.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WalkSection {
    pub family: Option<String>,
    pub phi: Option<f64>,
    pub psi: Option<f64>,
    pub rho: Option<f64>,
    /// Explicit coin matrix, row-major, entries as [re, im].
    pub coin: Option<Vec<Vec<[f64; 2]>>>,
    /// One integer shift vector per coin component.
    pub shifts: Option<Vec<Vec<i64>>>,
    pub label: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialSection {
    /// Lattice site the walk starts from.
    pub position: Vec<i64>,
    /// Either the string "mixed" (uniform classical mixture over the
    /// basis coin states) or a list of [re, im] amplitudes.
    pub coin: CoinInit,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum CoinInit {
    Named(String),
    Amplitudes(Vec<[f64; 2]>),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSection {
    /// Momentum grid points per axis for the limit law.
    pub grid: usize,
    /// Step counts, strictly increasing and at least 1.
    pub steps: Vec<usize>,
    /// Projection directions; defaults to the coordinate axes (plus
    /// the diagonals in two dimensions).
    #[serde(default)]
    pub projections: Option<Vec<Vec<f64>>>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub dir: Option<String>,
    pub format: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    /// Command to repeat: simulate, limit, compare, or moments.
    pub command: String,
    /// Walk parameter to vary: phi, psi, or rho.
    pub param: String,
    /// Values the parameter takes; one output subdirectory each.
    pub values: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
    Both,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Result<OutputFormat, CliError> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            "both" => Ok(OutputFormat::Both),
            other => Err(CliError::Config(format!(
                "output format must be csv, json, or both, got `{other}`"
            ))),
        }
    }

    pub fn wants_csv(self) -> bool {
        self != OutputFormat::Json
    }

    pub fn wants_json(self) -> bool {
        self != OutputFormat::Csv
    }
}

/// Configuration resolved into engine objects, with command-line
/// overrides already applied.
pub struct Resolved {
    pub spec: WalkSpec,
    pub ensemble: Ensemble,
    pub mixed_start: bool,
    pub family: Option<Family>,
    pub schedule: Vec<usize>,
    pub law_grid_points: usize,
    pub projections: Vec<Vec<f64>>,
    pub out_dir: PathBuf,
    pub format: OutputFormat,
}

/// Command-line overrides applied on top of the file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub out: Option<PathBuf>,
    pub format: Option<String>,
    pub grid: Option<usize>,
}

pub fn parse_config(text: &str) -> Result<Config, CliError> {
    let config: Config =
        toml::from_str(text).map_err(|e| CliError::Config(format!("invalid TOML: {e}")))?;
    if config.schema_version != SCHEMA_VERSION {
        return Err(CliError::Config(format!(
            "unsupported schema_version {} (expected {SCHEMA_VERSION})",
            config.schema_version
        )));
    }
    Ok(config)
}

fn build_family(walk: &WalkSection) -> Result<Option<Family>, CliError> {
    match &walk.family {
        None => Ok(None),
        Some(name) => {
            if walk.coin.is_some() || walk.shifts.is_some() {
                return Err(CliError::Config(
                    "give either walk.family or walk.coin + walk.shifts, not both".into(),
                ));
            }
            let family = Family::from_name(name, walk.phi, walk.psi, walk.rho)?;
            Ok(Some(family))
        }
    }
}

fn build_spec(walk: &WalkSection) -> Result<(WalkSpec, Option<Family>), CliError> {
    let spec = match build_family(walk)? {
        Some(family) => {
            let spec = WalkSpec::from_family(&family)?;
            let spec = match &walk.label {
                Some(label) => spec.relabeled(label),
                None => spec,
            };
            return Ok((spec, Some(family)));
        }
        None => {
            let coin_rows = walk.coin.as_ref().ok_or_else(|| {
                CliError::Config("walk needs either a family or an explicit coin".into())
            })?;
            let shifts = walk.shifts.as_ref().ok_or_else(|| {
                CliError::Config("an explicit coin needs walk.shifts".into())
            })?;
            if shifts.is_empty() {
                return Err(CliError::Config("walk.shifts must not be empty".into()));
            }
            let rows: Vec<Vec<Complex64>> = coin_rows
                .iter()
                .map(|row| row.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
                .collect();
            let coin = CoinMatrix::new(&rows)?;
            let dim = shifts[0].len();
            let shifts = ShiftSet::new(dim, shifts.clone())?;
            let label = walk.label.as_deref().unwrap_or("custom");
            WalkSpec::new(coin, shifts, label)?
        }
    };
    Ok((spec, None))
}

fn build_ensemble(
    initial: &InitialSection,
    spec: &WalkSpec,
) -> Result<(Ensemble, bool), CliError> {
    match &initial.coin {
        CoinInit::Named(name) => {
            if name != "mixed" {
                return Err(CliError::Config(format!(
                    "initial.coin must be \"mixed\" or a list of [re, im] amplitudes, got `{name}`"
                )));
            }
            Ok((Ensemble::mixed_basis(spec, &initial.position)?, true))
        }
        CoinInit::Amplitudes(raw) => {
            let amps: Vec<Complex64> = raw
                .iter()
                .map(|&[re, im]| Complex64::new(re, im))
                .collect();
            let state = point_state(&initial.position, &amps, spec)?;
            Ok((Ensemble::pure(state), false))
        }
    }
}

fn validate_schedule(steps: &[usize]) -> Result<(), CliError> {
    if steps.is_empty() {
        return Err(CliError::Config("run.steps must not be empty".into()));
    }
    if steps[0] == 0 {
        return Err(CliError::Config("run.steps must start at 1 or above".into()));
    }
    if steps.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CliError::Config(
            "run.steps must be strictly increasing".into(),
        ));
    }
    Ok(())
}

pub fn resolve(config: &Config, overrides: &Overrides) -> Result<Resolved, CliError> {
    let (spec, family) = build_spec(&config.walk)?;
    let (ensemble, mixed_start) = build_ensemble(&config.initial, &spec)?;
    validate_schedule(&config.run.steps)?;

    let law_grid_points = overrides.grid.unwrap_or(config.run.grid);
    if law_grid_points < 2 {
        return Err(CliError::Config(format!(
            "momentum grid needs at least 2 points per axis, got {law_grid_points}"
        )));
    }

    let projections = match &config.run.projections {
        Some(p) => {
            if p.is_empty() {
                return Err(CliError::Config("run.projections must not be empty".into()));
            }
            for c in p {
                if c.len() != spec.lattice_dim() {
                    return Err(CliError::Config(format!(
                        "projection {:?} has {} components, lattice dimension is {}",
                        c,
                        c.len(),
                        spec.lattice_dim()
                    )));
                }
                if !c.iter().all(|v| v.is_finite()) || c.iter().all(|v| *v == 0.0) {
                    return Err(CliError::Config(format!(
                        "projection {c:?} must be finite and nonzero"
                    )));
                }
            }
            p.clone()
        }
        None => default_projections(spec.lattice_dim()),
    };

    let format_name = overrides
        .format
        .clone()
        .or_else(|| config.output.format.clone())
        .unwrap_or_else(|| "both".to_string());
    let format = OutputFormat::parse(&format_name)?;

    let out_dir = overrides
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(config.output.dir.as_deref().unwrap_or("out")));

    Ok(Resolved {
        spec,
        ensemble,
        mixed_start,
        family,
        schedule: config.run.steps.clone(),
        law_grid_points,
        projections,
        out_dir,
        format,
    })
}

/// Returns a copy of the configuration with the swept walk parameter
/// set to `value`.
pub fn with_swept_param(config: &Config, param: &str, value: f64) -> Result<Config, CliError> {
    let mut out = config.clone();
    out.sweep = None;
    match param {
        "phi" => out.walk.phi = Some(value),
        "psi" => out.walk.psi = Some(value),
        "rho" => out.walk.rho = Some(value),
        other => {
            return Err(CliError::Config(format!(
                "sweep.param must be phi, psi, or rho, got `{other}`"
            )))
        }
    }
    Ok(out)
}

// Families that share the balanced walk's mixed-start limit law: the
// balanced coin itself and its pure phase twists.
pub fn has_balanced_closed_form(family: &Option<Family>) -> bool {
    matches!(family, Some(Family::Hadamard) | Some(Family::Unbiased { .. }))
}
