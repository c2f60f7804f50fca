//! Time evolution: coin, then conditional shift, repeated.
//!
//! `evolve` works directly in position space on a dense window that
//! grows by exactly the reachable set each step, so amplitudes outside
//! the light cone are never allocated, let alone nonzero. For long runs
//! `evolve_spectral` diagonal-multiplies in momentum space instead; on a
//! grid wide enough to contain the light cone the two agree to rounding.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fourier;
use crate::grid::MomentumGrid;
use crate::spectral::u_of_k;
use crate::state::{Distribution, Ensemble, PositionState, Window};
use crate::walk::WalkSpec;

/// Final state of a run together with its measurement distribution.
#[derive(Clone, Debug)]
pub struct EvolutionResult {
    pub n: usize,
    pub state: PositionState,
    pub distribution: Distribution,
}

fn check_compatible(state: &PositionState, spec: &WalkSpec) -> Result<()> {
    if state.coin_dim() != spec.coin_dim() {
        return Err(Error::DimMismatch {
            context: format!(
                "state has {} coin components, walk has {}",
                state.coin_dim(),
                spec.coin_dim()
            ),
        });
    }
    if state.dim() != spec.lattice_dim() {
        return Err(Error::DimMismatch {
            context: format!(
                "state lives on Z^{}, walk on Z^{}",
                state.dim(),
                spec.lattice_dim()
            ),
        });
    }
    Ok(())
}

/// One walk step: apply the coin at every site, then move component J
/// by its shift vector.
pub fn step(state: &PositionState, spec: &WalkSpec) -> Result<PositionState> {
    check_compatible(state, spec)?;
    let d = state.dim();
    let n = state.coin_dim();
    let shifts = spec.shifts();
    let min_shift: Vec<i64> = (0..d).map(|i| shifts.min_along(i)).collect();
    let max_shift: Vec<i64> = (0..d).map(|i| shifts.max_along(i)).collect();
    let out_window = state.window().grown_by(&min_shift, &max_shift);

    let in_window = state.window();
    let out_strides: Vec<usize> = {
        let mut s = vec![1usize; d];
        for i in (0..d.saturating_sub(1)).rev() {
            s[i] = s[i + 1] * out_window.extent(i + 1);
        }
        s
    };
    // Flat offset of component J's target relative to the source point's
    // position re-based into the grown window.
    let offsets: Vec<usize> = (0..n)
        .map(|j| {
            shifts
                .vector(j)
                .iter()
                .enumerate()
                .map(|(i, &e)| (e - min_shift[i]) as usize * out_strides[i])
                .sum()
        })
        .collect();

    let mut out = vec![Complex64::new(0.0, 0.0); out_window.num_points() * n];
    let coin = spec.coin().matrix();
    let mut coined = vec![Complex64::new(0.0, 0.0); n];
    // Odometer over in-window points, tracking the matching flat base
    // index in the out window.
    let mut coords = vec![0usize; d];
    let mut base = 0usize;
    for p in 0..in_window.num_points() {
        let site = state.site(p);
        for (row, out_amp) in coined.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for (col, amp) in site.iter().enumerate() {
                acc += coin.get(row, col) * amp;
            }
            *out_amp = acc;
        }
        for j in 0..n {
            out[(base + offsets[j]) * n + j] += coined[j];
        }
        // Advance the odometer.
        for axis in (0..d).rev() {
            coords[axis] += 1;
            base += out_strides[axis];
            if coords[axis] < in_window.extent(axis) {
                break;
            }
            base -= coords[axis] * out_strides[axis];
            coords[axis] = 0;
        }
    }
    Ok(PositionState::new_unchecked(out_window, n, out))
}

/// Runs `n` steps and measures.
pub fn evolve(state: &PositionState, spec: &WalkSpec, n: usize) -> Result<EvolutionResult> {
    check_compatible(state, spec)?;
    let mut current = state.clone();
    for _ in 0..n {
        current = step(&current, spec)?;
    }
    let distribution = Distribution::from_state(&current)?;
    Ok(EvolutionResult {
        n,
        state: current,
        distribution,
    })
}

/// Measurement distribution of a state.
pub fn distribution(state: &PositionState) -> Result<Distribution> {
    Distribution::from_state(state)
}

/// r-th moment of the projection c.X_n / n. At n = 0 positions are left
/// unscaled, so the result is the moment of the initial point mass.
pub fn scaled_moment(dist: &Distribution, n: usize, r: u32, c: &[f64]) -> f64 {
    assert_eq!(c.len(), dist.dim(), "projection dimension mismatch");
    let scale = n.max(1) as f64;
    let mut acc = 0.0;
    for (x, p) in dist.iter() {
        let proj: f64 = x.iter().zip(c).map(|(&xi, ci)| xi as f64 * ci).sum();
        acc += p * (proj / scale).powi(r as i32);
    }
    acc
}

/// Smallest power-of-two grid that strictly dominates the light cone of
/// an `n`-step run from `window`, per the aliasing bound
/// M > 2 n max|shift| + window width.
pub fn spectral_grid_for(spec: &WalkSpec, window: &Window, n: usize) -> Result<MomentumGrid> {
    let d = spec.lattice_dim();
    let max_abs = spec.shifts().max_abs() as usize;
    let mut bound = 2usize;
    for i in 0..d {
        bound = bound.max(2 * n * max_abs + window.extent(i));
    }
    let m = (bound + 1).next_power_of_two();
    MomentumGrid::new(d, m)
}

/// Momentum-space evolution: transform, apply U(k)^n node-wise, and
/// transform back onto the light-cone window.
pub fn evolve_spectral(
    state: &PositionState,
    spec: &WalkSpec,
    n: usize,
    grid: &MomentumGrid,
) -> Result<EvolutionResult> {
    check_compatible(state, spec)?;
    if grid.dim() != state.dim() {
        return Err(Error::DimMismatch {
            context: format!(
                "grid is {}-dimensional, state lives on Z^{}",
                grid.dim(),
                state.dim()
            ),
        });
    }
    let m = grid.points_per_axis();
    let max_abs = spec.shifts().max_abs() as usize;
    for i in 0..state.dim() {
        let need = 2 * n * max_abs + state.window().extent(i);
        if m <= need {
            return Err(Error::GridTooSmall {
                context: format!(
                    "axis {i}: {m} points <= 2*{n}*{max_abs} + width {}",
                    state.window().extent(i)
                ),
            });
        }
    }

    let mut field = fourier::forward(state, grid);
    let ncoin = spec.coin_dim();
    field
        .values
        .par_chunks_mut(ncoin)
        .enumerate()
        .for_each(|(node, chunk)| {
            let k = grid.node(node);
            let un = u_of_k(spec, &k).matrix().pow(n as u64);
            let moved = un.matvec(chunk);
            chunk.copy_from_slice(&moved);
        });

    let d = state.dim();
    let shifts = spec.shifts();
    let min_shift: Vec<i64> = (0..d).map(|i| shifts.min_along(i) * n as i64).collect();
    let max_shift: Vec<i64> = (0..d).map(|i| shifts.max_along(i) * n as i64).collect();
    let out_window = state.window().grown_by(&min_shift, &max_shift);
    let amps = fourier::inverse_on_window(&field, &out_window);
    let out = PositionState::new_unchecked(out_window, ncoin, amps);
    let drift = (out.norm_sq() - 1.0).abs();
    if drift > 1e-9 {
        return Err(Error::SolverFailure {
            context: format!("spectral path lost norm: drift {drift:.3e}"),
        });
    }
    let distribution = Distribution::from_state(&out)?;
    Ok(EvolutionResult {
        n,
        state: out,
        distribution,
    })
}

/// Distribution of a classical mixture after `n` direct steps.
pub fn evolve_ensemble(ens: &Ensemble, spec: &WalkSpec, n: usize) -> Result<Distribution> {
    let results: Vec<Distribution> = ens
        .members()
        .iter()
        .map(|(_, state)| evolve(state, spec, n).map(|r| r.distribution))
        .collect::<Result<_>>()?;
    let parts: Vec<(f64, &Distribution)> = ens
        .members()
        .iter()
        .zip(&results)
        .map(|((w, _), d)| (*w, d))
        .collect();
    Distribution::mix(&parts)
}

/// Distribution of a classical mixture after `n` spectral steps.
pub fn evolve_ensemble_spectral(
    ens: &Ensemble,
    spec: &WalkSpec,
    n: usize,
    grid: &MomentumGrid,
) -> Result<Distribution> {
    let results: Vec<Distribution> = ens
        .members()
        .iter()
        .map(|(_, state)| evolve_spectral(state, spec, n, grid).map(|r| r.distribution))
        .collect::<Result<_>>()?;
    let parts: Vec<(f64, &Distribution)> = ens
        .members()
        .iter()
        .zip(&results)
        .map(|((w, _), d)| (*w, d))
        .collect();
    Distribution::mix(&parts)
}
