//! Convergence diagnostics: rescaled finite-time walks against their
//! weak-limit laws, in Kolmogorov distance and in moments.

use serde::Serialize;

use crate::cdf::{kolmogorov_distance, projected_cdf, sup_gap_continuous};
use crate::error::{Error, Result};
use crate::evolve::{evolve_ensemble_spectral, scaled_moment, spectral_grid_for};
use crate::grid::MomentumGrid;
use crate::spectral::{limit_cdf, limit_moment, limit_law, LimitLaw};
use crate::state::Ensemble;
use crate::walk::WalkSpec;

/// Closed-form limit law of the balanced two-state walk started from
/// the uniform mixture over basis coin states: an absolutely
/// continuous law on (-1/sqrt(2), 1/sqrt(2)) with density
/// 1 / (pi (1 - y^2) sqrt(1 - 2 y^2)).
#[derive(Clone, Copy, Debug, Default)]
pub struct HadamardMixedLaw;

impl HadamardMixedLaw {
    /// Endpoints of the (open) support interval.
    pub fn support(&self) -> (f64, f64) {
        (-std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2)
    }

    /// Density at `y`. The density diverges at the endpoints, so any
    /// point outside the open support is an error.
    pub fn density(&self, y: f64) -> Result<f64> {
        let (lo, hi) = self.support();
        if y <= lo || y >= hi {
            return Err(Error::EvalOutsideSupport { y, lo, hi });
        }
        let one_m_y2 = 1.0 - y * y;
        Ok(1.0 / (std::f64::consts::PI * one_m_y2 * (1.0 - 2.0 * y * y).sqrt()))
    }

    /// Distribution function, defined on all of R.
    pub fn cdf(&self, y: f64) -> f64 {
        let (lo, hi) = self.support();
        if y <= lo {
            0.0
        } else if y >= hi {
            1.0
        } else {
            1.0 - (y / (1.0 - y * y).sqrt()).acos() / std::f64::consts::PI
        }
    }
}

/// The closed-form mixed-start limit law of the balanced walk.
pub fn hadamard_closed_form() -> HadamardMixedLaw {
    HadamardMixedLaw
}

/// Support endpoints of the limit law for the one-parameter coin with
/// reflection weight `rho`: the interval [-sqrt(rho), sqrt(rho)].
pub fn biased_support(rho: f64) -> Result<(f64, f64)> {
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::ParamOutOfRange {
            name: "rho",
            value: rho,
            range: "(0, 1)",
        });
    }
    Ok((-rho.sqrt(), rho.sqrt()))
}

/// Distances and moment errors of the rescaled walk at one step count.
#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceRow {
    /// Step count.
    pub n: usize,
    /// Exact Kolmogorov distance between the rescaled projected walk
    /// distribution and the discretised limit law.
    pub kolmogorov: f64,
    /// Absolute error of the scaled moments of order 1..=4 against the
    /// moments of the discretised limit law.
    pub moment_err: [f64; 4],
    /// Kolmogorov distance against a continuous closed-form limit
    /// distribution, when one is known for the walk.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form_kolmogorov: Option<f64>,
}

/// Convergence table for one walk, one initial ensemble, and one
/// projection direction.
#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceReport {
    /// Label of the walk being diagnosed.
    pub spec: String,
    /// Momentum-grid points per axis used for the limit law.
    pub grid: usize,
    /// Projection direction the positions were reduced along.
    pub projection: Vec<f64>,
    /// One row per requested step count, ascending.
    pub rows: Vec<ConvergenceRow>,
}

fn validate_schedule(schedule: &[usize]) -> Result<()> {
    if schedule.is_empty() {
        return Err(Error::InvalidSchedule {
            context: "no step counts given".into(),
        });
    }
    if schedule[0] == 0 {
        return Err(Error::InvalidSchedule {
            context: "step counts must be at least 1".into(),
        });
    }
    if schedule.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidSchedule {
            context: "step counts must be strictly increasing".into(),
        });
    }
    Ok(())
}

/// Smallest momentum grid that can hold every ensemble member through
/// `n` steps of `spec`.
pub fn ensemble_run_grid(spec: &WalkSpec, ens: &Ensemble, n: usize) -> Result<MomentumGrid> {
    let mut points = 2usize;
    for (_, state) in ens.members() {
        let g = spectral_grid_for(spec, state.window(), n)?;
        points = points.max(g.points_per_axis());
    }
    MomentumGrid::new(spec.lattice_dim(), points)
}

/// Compares the rescaled walk against a precomputed limit law at each
/// step count in `schedule` (non-empty, strictly increasing, >= 1).
pub fn compare_with_law(
    spec: &WalkSpec,
    ens: &Ensemble,
    schedule: &[usize],
    law: &LimitLaw,
    c: &[f64],
    closed_form: Option<&HadamardMixedLaw>,
) -> Result<ConvergenceReport> {
    validate_schedule(schedule)?;
    if c.len() != spec.lattice_dim() {
        return Err(Error::DimMismatch {
            context: format!(
                "projection has {} components, lattice dimension is {}",
                c.len(),
                spec.lattice_dim()
            ),
        });
    }
    let limit_step = limit_cdf(law, c);
    let limit_moments: Vec<f64> = (1..=4).map(|r| limit_moment(law, r, c)).collect();

    let mut rows = Vec::with_capacity(schedule.len());
    for &n in schedule {
        let run_grid = ensemble_run_grid(spec, ens, n)?;
        let dist = evolve_ensemble_spectral(ens, spec, n, &run_grid)?;
        let scaled = projected_cdf(&dist, c, n.max(1) as f64);
        let mut moment_err = [0.0f64; 4];
        for r in 1..=4u32 {
            moment_err[(r - 1) as usize] =
                (scaled_moment(&dist, n, r, c) - limit_moments[(r - 1) as usize]).abs();
        }
        rows.push(ConvergenceRow {
            n,
            kolmogorov: kolmogorov_distance(&scaled, &limit_step),
            moment_err,
            closed_form_kolmogorov: closed_form
                .map(|cf| sup_gap_continuous(&scaled, |y| cf.cdf(y))),
        });
    }
    Ok(ConvergenceReport {
        spec: spec.label().to_string(),
        grid: law.meta().grid_points,
        projection: c.to_vec(),
        rows,
    })
}

/// Builds the limit law on `grid` and compares the rescaled walk
/// against it at each step count in `schedule`.
pub fn compare_to_limit(
    spec: &WalkSpec,
    ens: &Ensemble,
    schedule: &[usize],
    grid: &MomentumGrid,
    c: &[f64],
    closed_form: Option<&HadamardMixedLaw>,
) -> Result<ConvergenceReport> {
    validate_schedule(schedule)?;
    let law = limit_law(spec, ens, grid)?;
    compare_with_law(spec, ens, schedule, &law, c, closed_form)
}

/// Default projection directions: the coordinate axes, plus the two
/// unit diagonals in two dimensions.
pub fn default_projections(dim: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::with_capacity(dim + 2);
    for i in 0..dim {
        let mut e = vec![0.0; dim];
        e[i] = 1.0;
        out.push(e);
    }
    if dim == 2 {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        out.push(vec![s, s]);
        out.push(vec![s, -s]);
    }
    out
}

/// Convergence reports for a family of projection directions, sharing
/// one limit law and one evolution per step count. With
/// `projections = None` the directions default to
/// `default_projections`.
pub fn cramer_wold_suite(
    spec: &WalkSpec,
    ens: &Ensemble,
    schedule: &[usize],
    grid: &MomentumGrid,
    projections: Option<&[Vec<f64>]>,
) -> Result<Vec<ConvergenceReport>> {
    validate_schedule(schedule)?;
    let law = limit_law(spec, ens, grid)?;
    let defaults;
    let dirs: &[Vec<f64>] = match projections {
        Some(p) => p,
        None => {
            defaults = default_projections(spec.lattice_dim());
            &defaults
        }
    };
    for c in dirs {
        if c.len() != spec.lattice_dim() {
            return Err(Error::DimMismatch {
                context: format!(
                    "projection has {} components, lattice dimension is {}",
                    c.len(),
                    spec.lattice_dim()
                ),
            });
        }
    }
    let limit_steps: Vec<_> = dirs.iter().map(|c| limit_cdf(&law, c)).collect();
    let limit_moments: Vec<Vec<f64>> = dirs
        .iter()
        .map(|c| (1..=4).map(|r| limit_moment(&law, r, c)).collect())
        .collect();
    let mut reports: Vec<ConvergenceReport> = dirs
        .iter()
        .map(|c| ConvergenceReport {
            spec: spec.label().to_string(),
            grid: law.meta().grid_points,
            projection: c.clone(),
            rows: Vec::with_capacity(schedule.len()),
        })
        .collect();
    for &n in schedule {
        let run_grid = ensemble_run_grid(spec, ens, n)?;
        let dist = evolve_ensemble_spectral(ens, spec, n, &run_grid)?;
        for (idx, c) in dirs.iter().enumerate() {
            let scaled = projected_cdf(&dist, c, n.max(1) as f64);
            let mut moment_err = [0.0f64; 4];
            for r in 1..=4u32 {
                moment_err[(r - 1) as usize] =
                    (scaled_moment(&dist, n, r, c) - limit_moments[idx][(r - 1) as usize]).abs();
            }
            reports[idx].rows.push(ConvergenceRow {
                n,
                kolmogorov: kolmogorov_distance(&scaled, &limit_steps[idx]),
                moment_err,
                closed_form_kolmogorov: None,
            });
        }
    }
    Ok(reports)
}
