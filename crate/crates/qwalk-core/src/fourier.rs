//! Exact transforms between position space and the momentum grid.
//!
//! Forward: Psi(k_m) = sum_x psi(x) e^{+i x.k_m}, one value per grid
//! node per coin component. Inverse: psi(x) = M^-d sum_m Psi(k_m)
//! e^{-i x.k_m}. Both are computed with per-axis FFTs; positions enter
//! through their residues mod M, so any integer window is handled and
//! the pair is an exact bijection whenever M covers the window width.
//! Naive O(M^d W) reference implementations back the FFT path in tests.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::grid::MomentumGrid;
use crate::state::{PositionState, Window};

/// Coin-valued function on a momentum grid, node-major storage:
/// `values[node * coin_dim + j]`.
#[derive(Clone, Debug)]
pub struct SpectralField {
    pub grid: MomentumGrid,
    pub coin_dim: usize,
    pub values: Vec<Complex64>,
}

impl SpectralField {
    pub fn site(&self, node: usize) -> &[Complex64] {
        &self.values[node * self.coin_dim..(node + 1) * self.coin_dim]
    }
}

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// Flat node index of the residue class of lattice point `x`.
fn node_of_position(x: &[i64], m: usize) -> usize {
    let mut idx = 0usize;
    for &xi in x {
        idx = idx * m + xi.rem_euclid(m as i64) as usize;
    }
    idx
}

/// Applies `fft` along every axis line of a node-major field.
fn transform_axes(
    values: &mut [Complex64],
    dim: usize,
    m: usize,
    coin_dim: usize,
    fft: &std::sync::Arc<dyn rustfft::Fft<f64>>,
) {
    let mut line = vec![zero(); m];
    for axis in 0..dim {
        let stride = m.pow((dim - 1 - axis) as u32);
        let outer = m.pow(axis as u32);
        for q in 0..outer {
            for r in 0..stride {
                let base = q * m * stride + r;
                for j in 0..coin_dim {
                    for t in 0..m {
                        line[t] = values[(base + t * stride) * coin_dim + j];
                    }
                    fft.process(&mut line);
                    for t in 0..m {
                        values[(base + t * stride) * coin_dim + j] = line[t];
                    }
                }
            }
        }
    }
}

/// FFT-based forward transform of a position state onto `grid`.
pub fn forward(state: &PositionState, grid: &MomentumGrid) -> SpectralField {
    assert_eq!(state.dim(), grid.dim(), "state and grid dimension differ");
    let m = grid.points_per_axis();
    let n = state.coin_dim();
    let mut values = vec![zero(); grid.num_nodes() * n];
    for p in 0..state.window().num_points() {
        let x = state.window().point_at(p);
        let node = node_of_position(&x, m);
        for j in 0..n {
            values[node * n + j] += state.site(p)[j];
        }
    }
    // e^{+i x k} along each axis is the unnormalised inverse DFT.
    let fft = FftPlanner::new().plan_fft_inverse(m);
    transform_axes(&mut values, grid.dim(), m, n, &fft);
    SpectralField {
        grid: grid.clone(),
        coin_dim: n,
        values,
    }
}

/// FFT-based inverse transform, evaluated on the lattice points of
/// `window`. Exact when the underlying state fits in M points per axis.
pub fn inverse_on_window(field: &SpectralField, window: &Window) -> Vec<Complex64> {
    assert_eq!(field.grid.dim(), window.dim());
    let m = field.grid.points_per_axis();
    let n = field.coin_dim;
    let mut values = field.values.clone();
    let fft = FftPlanner::new().plan_fft_forward(m);
    transform_axes(&mut values, field.grid.dim(), m, n, &fft);
    let scale = field.grid.weight();
    let mut out = vec![zero(); window.num_points() * n];
    for p in 0..window.num_points() {
        let x = window.point_at(p);
        let node = node_of_position(&x, m);
        for j in 0..n {
            out[p * n + j] = values[node * n + j] * scale;
        }
    }
    out
}

/// Definition-level forward transform; reference for the FFT path.
pub fn forward_naive(state: &PositionState, grid: &MomentumGrid) -> SpectralField {
    assert_eq!(state.dim(), grid.dim());
    let n = state.coin_dim();
    let mut values = vec![zero(); grid.num_nodes() * n];
    for node in 0..grid.num_nodes() {
        let k = grid.node(node);
        for p in 0..state.window().num_points() {
            let x = state.window().point_at(p);
            let angle: f64 = x.iter().zip(&k).map(|(&xi, ki)| xi as f64 * ki).sum();
            let phase = Complex64::from_polar(1.0, angle);
            for j in 0..n {
                values[node * n + j] += state.site(p)[j] * phase;
            }
        }
    }
    SpectralField {
        grid: grid.clone(),
        coin_dim: n,
        values,
    }
}

/// Definition-level inverse transform; reference for the FFT path.
pub fn inverse_naive(field: &SpectralField, window: &Window) -> Vec<Complex64> {
    let n = field.coin_dim;
    let grid = &field.grid;
    let mut out = vec![zero(); window.num_points() * n];
    for p in 0..window.num_points() {
        let x = window.point_at(p);
        for node in 0..grid.num_nodes() {
            let k = grid.node(node);
            let angle: f64 = x.iter().zip(&k).map(|(&xi, ki)| xi as f64 * ki).sum();
            let phase = Complex64::from_polar(1.0, -angle);
            for j in 0..n {
                out[p * n + j] += field.values[node * n + j] * phase;
            }
        }
    }
    for v in out.iter_mut() {
        *v *= grid.weight();
    }
    out
}
