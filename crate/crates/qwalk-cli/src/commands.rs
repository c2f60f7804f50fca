//! The five commands: simulate, limit, compare, moments, and sweep.

use std::path::Path;

use serde::Serialize;

use qwalk_core::export::{
    cdf_csv, distribution_csv, fmt_f64, limit_law_csv, moments_csv, report_csv, to_json,
    write_atomic, MomentRow, MomentTable,
};
use qwalk_core::{
    compare_with_law, cramer_wold_suite, ensemble_run_grid, evolve_ensemble,
    evolve_ensemble_spectral, hadamard_closed_form, limit_cdf, limit_moment, limit_law,
    scaled_moment, Distribution, LimitLaw, MomentumGrid,
};

use crate::config::{
    has_balanced_closed_form, with_swept_param, Config, Overrides, OutputFormat, Resolved,
};
use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Simulate,
    Limit,
    Compare,
    Moments,
    Sweep,
}

impl CommandKind {
    fn parse(name: &str) -> Result<CommandKind, CliError> {
        match name {
            "simulate" => Ok(CommandKind::Simulate),
            "limit" => Ok(CommandKind::Limit),
            "compare" => Ok(CommandKind::Compare),
            "moments" => Ok(CommandKind::Moments),
            other => Err(CliError::Config(format!(
                "sweep.command must be simulate, limit, compare, or moments, got `{other}`"
            ))),
        }
    }
}

pub fn run_command(
    kind: CommandKind,
    config: &Config,
    overrides: &Overrides,
) -> Result<(), CliError> {
    match kind {
        CommandKind::Sweep => sweep(config, overrides),
        _ => {
            let resolved = crate::config::resolve(config, overrides)?;
            match kind {
                CommandKind::Simulate => simulate(&resolved),
                CommandKind::Limit => limit(&resolved),
                CommandKind::Compare => compare(&resolved),
                CommandKind::Moments => moments(&resolved),
                CommandKind::Sweep => unreachable!(),
            }
        }
    }
}

fn emit(
    dir: &Path,
    stem: &str,
    format: OutputFormat,
    csv: Option<String>,
    json: Option<String>,
) -> Result<(), CliError> {
    if format.wants_csv() {
        if let Some(contents) = csv {
            let path = dir.join(format!("{stem}.csv"));
            write_atomic(&path, &contents)?;
            println!("wrote {}", path.display());
        }
    }
    if format.wants_json() {
        if let Some(contents) = json {
            let path = dir.join(format!("{stem}.json"));
            write_atomic(&path, &contents)?;
            println!("wrote {}", path.display());
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct DistributionRow<'a> {
    x: &'a [i64],
    probability: f64,
}

#[derive(Serialize)]
struct DistributionDoc<'a> {
    spec: &'a str,
    n: usize,
    dim: usize,
    rows: Vec<DistributionRow<'a>>,
}

fn distribution_doc<'a>(spec: &'a str, n: usize, dist: &'a Distribution) -> DistributionDoc<'a> {
    DistributionDoc {
        spec,
        n,
        dim: dist.dim(),
        rows: dist
            .iter()
            .map(|(x, probability)| DistributionRow { x, probability })
            .collect(),
    }
}

/// Exact position distributions at each requested step count.
fn simulate(r: &Resolved) -> Result<(), CliError> {
    for &n in &r.schedule {
        let dist = evolve_ensemble(&r.ensemble, &r.spec, n)?;
        let doc = distribution_doc(r.spec.label(), n, &dist);
        emit(
            &r.out_dir,
            &format!("distribution_n{n}"),
            r.format,
            Some(distribution_csv(&dist)),
            Some(to_json(&doc)),
        )?;
    }
    Ok(())
}

#[derive(Serialize)]
struct AtomDoc<'a> {
    k: &'a [f64],
    branch: usize,
    h: &'a [f64],
    weight: f64,
}

#[derive(Serialize)]
struct LawDoc<'a> {
    spec: &'a str,
    grid: usize,
    total_nodes: usize,
    dropped_nodes: usize,
    atoms: Vec<AtomDoc<'a>>,
}

#[derive(Serialize)]
struct CdfPoint {
    y: f64,
    #[serde(rename = "F")]
    f: f64,
}

#[derive(Serialize)]
struct CdfDoc<'a> {
    projection: &'a [f64],
    points: Vec<CdfPoint>,
}

#[derive(Serialize)]
struct MetaProjection<'a> {
    projection: &'a [f64],
    support: [f64; 2],
    moments: [f64; 4],
}

#[derive(Serialize)]
struct MetaDoc<'a> {
    spec: &'a str,
    grid: usize,
    total_nodes: usize,
    dropped_nodes: usize,
    total_weight: f64,
    projections: Vec<MetaProjection<'a>>,
}

fn compute_law(r: &Resolved) -> Result<LimitLaw, CliError> {
    let grid = MomentumGrid::new(r.spec.lattice_dim(), r.law_grid_points)?;
    Ok(limit_law(&r.spec, &r.ensemble, &grid)?)
}

/// The discretised weak-limit law: atoms, projected CDFs, and a
/// metadata file (always written) recording dropped degenerate nodes.
fn limit(r: &Resolved) -> Result<(), CliError> {
    let law = compute_law(r)?;
    let meta = law.meta();
    let law_doc = LawDoc {
        spec: r.spec.label(),
        grid: meta.grid_points,
        total_nodes: meta.total_nodes,
        dropped_nodes: meta.dropped_nodes,
        atoms: law
            .atoms()
            .iter()
            .map(|a| AtomDoc {
                k: &a.k,
                branch: a.branch + 1,
                h: &a.h,
                weight: a.weight,
            })
            .collect(),
    };
    emit(
        &r.out_dir,
        "limit_law",
        r.format,
        Some(limit_law_csv(&law)),
        Some(to_json(&law_doc)),
    )?;

    let mut meta_projections = Vec::with_capacity(r.projections.len());
    for (i, c) in r.projections.iter().enumerate() {
        let cdf = limit_cdf(&law, c);
        let doc = CdfDoc {
            projection: c,
            points: cdf
                .jump_points()
                .iter()
                .zip(cdf.cumulative())
                .map(|(&y, &f)| CdfPoint { y, f })
                .collect(),
        };
        emit(
            &r.out_dir,
            &format!("limit_cdf_p{i}"),
            r.format,
            Some(cdf_csv(&cdf)),
            Some(to_json(&doc)),
        )?;
        let (lo, hi) = law.support_interval(c);
        let mut moments = [0.0f64; 4];
        for (slot, order) in (1..=4u32).enumerate() {
            moments[slot] = limit_moment(&law, order, c);
        }
        meta_projections.push(MetaProjection {
            projection: c,
            support: [lo, hi],
            moments,
        });
    }

    let meta_doc = MetaDoc {
        spec: r.spec.label(),
        grid: meta.grid_points,
        total_nodes: meta.total_nodes,
        dropped_nodes: meta.dropped_nodes,
        total_weight: law.total_weight(),
        projections: meta_projections,
    };
    let path = r.out_dir.join("limit_meta.json");
    write_atomic(&path, &to_json(&meta_doc))?;
    println!("wrote {}", path.display());
    Ok(())
}

/// Convergence of the rescaled walk to the limit law, per projection.
fn compare(r: &Resolved) -> Result<(), CliError> {
    let reports = if r.projections.len() == 1 {
        let law = compute_law(r)?;
        let c = &r.projections[0];
        let closed_form = (has_balanced_closed_form(&r.family)
            && r.mixed_start
            && c.as_slice() == [1.0])
        .then(hadamard_closed_form);
        vec![compare_with_law(
            &r.spec,
            &r.ensemble,
            &r.schedule,
            &law,
            c,
            closed_form.as_ref(),
        )?]
    } else {
        let grid = MomentumGrid::new(r.spec.lattice_dim(), r.law_grid_points)?;
        cramer_wold_suite(
            &r.spec,
            &r.ensemble,
            &r.schedule,
            &grid,
            Some(&r.projections),
        )?
    };
    for (i, report) in reports.iter().enumerate() {
        emit(
            &r.out_dir,
            &format!("convergence_p{i}"),
            r.format,
            Some(report_csv(report)),
            Some(to_json(report)),
        )?;
    }
    Ok(())
}

/// Scaled moments of orders 1..=4 against the limit law's moments.
fn moments(r: &Resolved) -> Result<(), CliError> {
    let law = compute_law(r)?;
    let mut dists = Vec::with_capacity(r.schedule.len());
    for &n in &r.schedule {
        let grid = ensemble_run_grid(&r.spec, &r.ensemble, n)?;
        dists.push((n, evolve_ensemble_spectral(&r.ensemble, &r.spec, n, &grid)?));
    }
    for (i, c) in r.projections.iter().enumerate() {
        let mut rows = Vec::with_capacity(4 * dists.len());
        for order in 1..=4u32 {
            let limit = limit_moment(&law, order, c);
            for (n, dist) in &dists {
                let scaled = scaled_moment(dist, *n, order, c);
                rows.push(MomentRow {
                    order,
                    n: *n,
                    scaled,
                    limit,
                    error: (scaled - limit).abs(),
                });
            }
        }
        let table = MomentTable {
            spec: r.spec.label().to_string(),
            projection: c.clone(),
            rows,
        };
        emit(
            &r.out_dir,
            &format!("moments_p{i}"),
            r.format,
            Some(moments_csv(&table)),
            Some(to_json(&table)),
        )?;
    }
    Ok(())
}

/// Repeats one command over a list of walk-parameter values, writing
/// each run into its own subdirectory.
fn sweep(config: &Config, overrides: &Overrides) -> Result<(), CliError> {
    let section = config.sweep.as_ref().ok_or_else(|| {
        CliError::Config("the sweep command needs a [sweep] section".into())
    })?;
    let kind = CommandKind::parse(&section.command)?;
    if section.values.is_empty() {
        return Err(CliError::Config("sweep.values must not be empty".into()));
    }
    let base_dir = overrides
        .out
        .clone()
        .unwrap_or_else(|| config.output.dir.as_deref().unwrap_or("out").into());
    for &value in &section.values {
        let sub_config = with_swept_param(config, &section.param, value)?;
        let sub_dir = base_dir.join(format!("{}={}", section.param, fmt_f64(value)));
        let sub_overrides = Overrides {
            out: Some(sub_dir),
            ..overrides.clone()
        };
        run_command(kind, &sub_config, &sub_overrides)?;
    }
    Ok(())
}
