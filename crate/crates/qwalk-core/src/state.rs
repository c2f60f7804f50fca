//! Position-space states on a dense lattice window, and the probability
//! distributions they induce.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::norm_sq;
use crate::tol;
use crate::walk::WalkSpec;

/// Axis-aligned box of lattice points, bounds inclusive. Points are
/// enumerated in row-major order, which is lexicographic order of the
/// coordinate tuples.
#[derive(Clone, Debug, PartialEq)]
pub struct Window {
    lo: Vec<i64>,
    hi: Vec<i64>,
}

impl Window {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Result<Self> {
        if lo.len() != hi.len() || lo.is_empty() {
            return Err(Error::DimMismatch {
                context: "window bounds must be non-empty and of equal length".to_string(),
            });
        }
        if lo.iter().zip(&hi).any(|(a, b)| a > b) {
            return Err(Error::DimMismatch {
                context: format!("window lower bound {lo:?} exceeds upper bound {hi:?}"),
            });
        }
        Ok(Window { lo, hi })
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[i64] {
        &self.lo
    }

    pub fn hi(&self) -> &[i64] {
        &self.hi
    }

    /// Points along `axis`.
    pub fn extent(&self, axis: usize) -> usize {
        (self.hi[axis] - self.lo[axis] + 1) as usize
    }

    pub fn num_points(&self) -> usize {
        (0..self.dim()).map(|i| self.extent(i)).product()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        x.len() == self.dim()
            && x.iter()
                .enumerate()
                .all(|(i, &xi)| self.lo[i] <= xi && xi <= self.hi[i])
    }

    /// Row-major flat index of `x`, if inside the window.
    pub fn index_of(&self, x: &[i64]) -> Option<usize> {
        if !self.contains(x) {
            return None;
        }
        let mut idx = 0usize;
        for i in 0..self.dim() {
            idx = idx * self.extent(i) + (x[i] - self.lo[i]) as usize;
        }
        Some(idx)
    }

    /// Coordinates of the point with row-major flat index `idx`.
    pub fn point_at(&self, mut idx: usize) -> Vec<i64> {
        let d = self.dim();
        let mut out = vec![0i64; d];
        for i in (0..d).rev() {
            let e = self.extent(i);
            out[i] = self.lo[i] + (idx % e) as i64;
            idx /= e;
        }
        out
    }

    /// Window grown by one application of the shift set: the lower bound
    /// moves by the most negative shift per axis, the upper by the most
    /// positive. This is exactly the bounding box of the reachable set.
    pub fn grown_by(&self, min_shift: &[i64], max_shift: &[i64]) -> Window {
        let lo = self
            .lo
            .iter()
            .zip(min_shift)
            .map(|(a, s)| a + s)
            .collect();
        let hi = self
            .hi
            .iter()
            .zip(max_shift)
            .map(|(a, s)| a + s)
            .collect();
        Window { lo, hi }
    }
}

/// Wave function with `coin_dim` complex amplitudes per window point.
/// Amplitudes are stored point-major: `amps[p * coin_dim + j]`.
#[derive(Clone, Debug)]
pub struct PositionState {
    window: Window,
    coin_dim: usize,
    amps: Vec<Complex64>,
}

impl PositionState {
    /// Validates the storage layout and unit norm.
    pub fn new(window: Window, coin_dim: usize, amps: Vec<Complex64>) -> Result<Self> {
        if coin_dim == 0 || amps.len() != window.num_points() * coin_dim {
            return Err(Error::DimMismatch {
                context: format!(
                    "state holds {} amplitudes for {} points x {} components",
                    amps.len(),
                    window.num_points(),
                    coin_dim
                ),
            });
        }
        let state = PositionState {
            window,
            coin_dim,
            amps,
        };
        state.check_norm()?;
        Ok(state)
    }

    pub(crate) fn new_unchecked(window: Window, coin_dim: usize, amps: Vec<Complex64>) -> Self {
        debug_assert_eq!(amps.len(), window.num_points() * coin_dim);
        PositionState {
            window,
            coin_dim,
            amps,
        }
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn dim(&self) -> usize {
        self.window.dim()
    }

    pub fn coin_dim(&self) -> usize {
        self.coin_dim
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// Coin vector at window point with flat index `p`.
    pub fn site(&self, p: usize) -> &[Complex64] {
        &self.amps[p * self.coin_dim..(p + 1) * self.coin_dim]
    }

    /// Amplitude of component `j` at lattice point `x`; zero outside the
    /// stored window.
    pub fn amplitude(&self, x: &[i64], j: usize) -> Complex64 {
        match self.window.index_of(x) {
            Some(p) => self.amps[p * self.coin_dim + j],
            None => Complex64::new(0.0, 0.0),
        }
    }

    pub fn norm_sq(&self) -> f64 {
        norm_sq(&self.amps)
    }

    pub fn check_norm(&self) -> Result<()> {
        let n = self.norm_sq();
        if (n - 1.0).abs() > tol::STATE_NORM {
            return Err(Error::NormError { norm_sq: n });
        }
        Ok(())
    }

    /// Max |amplitude difference| against another state, comparing over
    /// the union of both windows.
    pub fn max_abs_diff(&self, other: &PositionState) -> f64 {
        assert_eq!(self.dim(), other.dim());
        assert_eq!(self.coin_dim(), other.coin_dim());
        let mut worst = 0.0f64;
        for (state, reference) in [(self, other), (other, self)] {
            for p in 0..state.window.num_points() {
                let x = state.window.point_at(p);
                for j in 0..state.coin_dim {
                    let d = (state.amps[p * state.coin_dim + j] - reference.amplitude(&x, j))
                        .norm();
                    worst = worst.max(d);
                }
            }
        }
        worst
    }
}

/// State concentrated on a single lattice point with the given coin
/// amplitudes (must be unit norm).
pub fn point_state(position: &[i64], coin_amps: &[Complex64], spec: &WalkSpec) -> Result<PositionState> {
    if position.len() != spec.lattice_dim() {
        return Err(Error::DimMismatch {
            context: format!(
                "position has {} coordinates, walk lives on Z^{}",
                position.len(),
                spec.lattice_dim()
            ),
        });
    }
    if coin_amps.len() != spec.coin_dim() {
        return Err(Error::DimMismatch {
            context: format!(
                "{} coin amplitudes for a {}-component coin",
                coin_amps.len(),
                spec.coin_dim()
            ),
        });
    }
    let window = Window::new(position.to_vec(), position.to_vec())?;
    PositionState::new(window, coin_amps.len(), coin_amps.to_vec())
}

/// Classical mixture of position states. Weights are positive and sum
/// to 1; observable quantities (distributions, limit laws) average over
/// the members.
#[derive(Clone, Debug)]
pub struct Ensemble {
    members: Vec<(f64, PositionState)>,
}

impl Ensemble {
    pub fn new(members: Vec<(f64, PositionState)>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::DimMismatch {
                context: "ensemble must have at least one member".to_string(),
            });
        }
        if members.iter().any(|(w, _)| !(*w > 0.0)) {
            return Err(Error::DimMismatch {
                context: "ensemble weights must be positive".to_string(),
            });
        }
        let total: f64 = members.iter().map(|(w, _)| w).sum();
        if (total - 1.0).abs() > tol::STATE_NORM {
            return Err(Error::NormError { norm_sq: total });
        }
        Ok(Ensemble { members })
    }

    pub fn pure(state: PositionState) -> Self {
        Ensemble {
            members: vec![(1.0, state)],
        }
    }

    /// Uniform mixture over the coin basis states at one lattice point.
    pub fn mixed_basis(spec: &WalkSpec, position: &[i64]) -> Result<Self> {
        let n = spec.coin_dim();
        let w = 1.0 / n as f64;
        let mut members = Vec::with_capacity(n);
        for j in 0..n {
            let mut amps = vec![Complex64::new(0.0, 0.0); n];
            amps[j] = Complex64::new(1.0, 0.0);
            members.push((w, point_state(position, &amps, spec)?));
        }
        Ok(Ensemble { members })
    }

    pub fn members(&self) -> &[(f64, PositionState)] {
        &self.members
    }
}

/// Probability distribution on lattice points: strictly positive masses,
/// positions in lexicographic order.
#[derive(Clone, Debug, PartialEq)]
pub struct Distribution {
    dim: usize,
    positions: Vec<i64>,
    probs: Vec<f64>,
}

impl Distribution {
    /// Measures a state: p(x) = sum_j |psi_j(x)|^2, keeping only points
    /// with nonzero mass. Interference zeros and parity zeros are exact
    /// in the evolution, so the support stays tight.
    pub fn from_state(state: &PositionState) -> Result<Self> {
        let d = state.dim();
        let n = state.coin_dim();
        let mut positions = Vec::new();
        let mut probs = Vec::new();
        for p in 0..state.window().num_points() {
            let mass: f64 = state.site(p).iter().map(|a| a.norm_sqr()).sum();
            if mass > 0.0 {
                positions.extend_from_slice(&state.window().point_at(p));
                probs.push(mass);
            }
        }
        let _ = n;
        let dist = Distribution {
            dim: d,
            positions,
            probs,
        };
        dist.check_total()?;
        Ok(dist)
    }

    /// Weighted mixture of distributions over a common lattice.
    pub fn mix(parts: &[(f64, &Distribution)]) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::DimMismatch {
                context: "cannot mix an empty set of distributions".to_string(),
            });
        }
        let dim = parts[0].1.dim;
        if parts.iter().any(|(_, d)| d.dim != dim) {
            return Err(Error::DimMismatch {
                context: "mixed distributions live on different lattices".to_string(),
            });
        }
        // k-way merge of lexicographically sorted supports.
        let mut cursors = vec![0usize; parts.len()];
        let mut positions = Vec::new();
        let mut probs = Vec::new();
        loop {
            let mut best: Option<&[i64]> = None;
            for (c, (_, dist)) in cursors.iter().zip(parts) {
                if *c < dist.len() {
                    let x = dist.position(*c);
                    if best.map_or(true, |b| x < b) {
                        best = Some(x);
                    }
                }
            }
            let Some(x) = best else { break };
            let x = x.to_vec();
            let mut mass = 0.0;
            for (c, (w, dist)) in cursors.iter_mut().zip(parts) {
                if *c < dist.len() && dist.position(*c) == x.as_slice() {
                    mass += w * dist.probs[*c];
                    *c += 1;
                }
            }
            positions.extend_from_slice(&x);
            probs.push(mass);
        }
        let dist = Distribution {
            dim,
            positions,
            probs,
        };
        dist.check_total()?;
        Ok(dist)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn position(&self, i: usize) -> &[i64] {
        &self.positions[i * self.dim..(i + 1) * self.dim]
    }

    pub fn prob(&self, i: usize) -> f64 {
        self.probs[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[i64], f64)> {
        (0..self.len()).map(move |i| (self.position(i), self.probs[i]))
    }

    /// Mass at one point (zero off the support).
    pub fn mass_at(&self, x: &[i64]) -> f64 {
        self.iter()
            .find(|(p, _)| *p == x)
            .map(|(_, m)| m)
            .unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    fn check_total(&self) -> Result<()> {
        let t = self.total();
        if (t - 1.0).abs() > tol::DIST_SUM {
            return Err(Error::NormError { norm_sq: t });
        }
        Ok(())
    }
}
