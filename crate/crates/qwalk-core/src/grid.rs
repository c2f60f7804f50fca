//! Uniform momentum grids on the torus [0, 2pi)^d.

use crate::error::{Error, Result};

/// `points_per_axis` equally spaced momenta per axis, node m at
/// k_i = 2 pi m_i / M. Every node carries quadrature weight M^-d.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentumGrid {
    dim: usize,
    points_per_axis: usize,
}

impl MomentumGrid {
    pub fn new(dim: usize, points_per_axis: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidGrid {
                context: "dimension must be at least 1".to_string(),
            });
        }
        if points_per_axis < 2 {
            return Err(Error::InvalidGrid {
                context: format!("need at least 2 points per axis, got {points_per_axis}"),
            });
        }
        // Reject sizes whose node count does not fit in usize.
        let mut nodes = 1usize;
        for _ in 0..dim {
            nodes = nodes.checked_mul(points_per_axis).ok_or(Error::InvalidGrid {
                context: format!("{points_per_axis}^{dim} nodes overflows"),
            })?;
        }
        Ok(MomentumGrid {
            dim,
            points_per_axis,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points_per_axis(&self) -> usize {
        self.points_per_axis
    }

    pub fn num_nodes(&self) -> usize {
        self.points_per_axis.pow(self.dim as u32)
    }

    /// Quadrature weight of one node: 1 / M^d.
    pub fn weight(&self) -> f64 {
        1.0 / self.num_nodes() as f64
    }

    pub fn spacing(&self) -> f64 {
        std::f64::consts::TAU / self.points_per_axis as f64
    }

    /// Multi-index of the node with row-major flat index `idx`.
    pub fn decode(&self, mut idx: usize) -> Vec<usize> {
        let mut m = vec![0usize; self.dim];
        for i in (0..self.dim).rev() {
            m[i] = idx % self.points_per_axis;
            idx /= self.points_per_axis;
        }
        m
    }

    /// Momentum vector of the node with flat index `idx`.
    pub fn node(&self, idx: usize) -> Vec<f64> {
        self.decode(idx)
            .into_iter()
            .map(|m| std::f64::consts::TAU * m as f64 / self.points_per_axis as f64)
            .collect()
    }
}
