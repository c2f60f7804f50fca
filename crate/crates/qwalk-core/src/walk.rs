//! Walk specifications: a coin, one shift vector per coin component.

use crate::coin::{coin_family, CoinMatrix, Family};
use crate::error::{Error, Result};

/// One integer displacement per coin component.
#[derive(Clone, Debug, PartialEq)]
pub struct ShiftSet {
    dim: usize,
    vectors: Vec<Vec<i64>>,
}

impl ShiftSet {
    pub fn new(dim: usize, vectors: Vec<Vec<i64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimMismatch {
                context: "lattice dimension must be at least 1".to_string(),
            });
        }
        if vectors.is_empty() {
            return Err(Error::DimMismatch {
                context: "shift set must contain at least one vector".to_string(),
            });
        }
        if let Some(bad) = vectors.iter().find(|v| v.len() != dim) {
            return Err(Error::DimMismatch {
                context: format!(
                    "shift vector {bad:?} has length {}, expected {dim}",
                    bad.len()
                ),
            });
        }
        Ok(ShiftSet { dim, vectors })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vector(&self, j: usize) -> &[i64] {
        &self.vectors[j]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[i64]> {
        self.vectors.iter().map(|v| v.as_slice())
    }

    /// Smallest shift along `axis` over all components.
    pub fn min_along(&self, axis: usize) -> i64 {
        self.vectors.iter().map(|v| v[axis]).min().unwrap()
    }

    /// Largest shift along `axis` over all components.
    pub fn max_along(&self, axis: usize) -> i64 {
        self.vectors.iter().map(|v| v[axis]).max().unwrap()
    }

    /// max_J max_i |shift_{J,i}|.
    pub fn max_abs(&self) -> i64 {
        self.vectors
            .iter()
            .flat_map(|v| v.iter().map(|x| x.abs()))
            .max()
            .unwrap()
    }
}

/// Complete specification of a coined walk on Z^d.
#[derive(Clone, Debug, PartialEq)]
pub struct WalkSpec {
    coin: CoinMatrix,
    shifts: ShiftSet,
    label: String,
    trivial: bool,
}

impl WalkSpec {
    pub fn new(coin: CoinMatrix, shifts: ShiftSet, label: impl Into<String>) -> Result<Self> {
        if coin.dim() != shifts.len() {
            return Err(Error::DimMismatch {
                context: format!(
                    "coin has {} components but shift set has {}",
                    coin.dim(),
                    shifts.len()
                ),
            });
        }
        let trivial = coin.is_diagonal();
        Ok(WalkSpec {
            coin,
            shifts,
            label: label.into(),
            trivial,
        })
    }

    pub fn coin(&self) -> &CoinMatrix {
        &self.coin
    }

    pub fn shifts(&self) -> &ShiftSet {
        &self.shifts
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// The same walk under a different display label.
    pub fn relabeled(mut self, label: &str) -> WalkSpec {
        self.label = label.into();
        self
    }

    /// Number of coin components N.
    pub fn coin_dim(&self) -> usize {
        self.coin.dim()
    }

    /// Lattice dimension d.
    pub fn lattice_dim(&self) -> usize {
        self.shifts.dim()
    }

    /// True for diagonal coins: each component drifts ballistically and
    /// nothing interferes.
    pub fn is_trivial(&self) -> bool {
        self.trivial
    }

    /// The walk of `family` with its canonical shifts: (+1, -1) for the
    /// two-state families, the four unit steps (+e1, +e2, -e2, -e1) for
    /// the planar coin.
    pub fn from_family(family: &Family) -> Result<WalkSpec> {
        let coin = coin_family(family)?;
        let shifts = match family {
            Family::Hadamard | Family::Unbiased { .. } | Family::Biased { .. } => {
                ShiftSet::new(1, vec![vec![1], vec![-1]])?
            }
            Family::Hadamard2d => ShiftSet::new(
                2,
                vec![vec![1, 0], vec![0, 1], vec![0, -1], vec![-1, 0]],
            )?,
        };
        WalkSpec::new(coin, shifts, family.label())
    }
}

/// Product walk: Kronecker coin, concatenated shift vectors, summed
/// lattice dimensions. Component (j_a, j_b) of the product walk carries
/// shift (shift_a[j_a], shift_b[j_b]).
pub fn tensor_spec(a: &WalkSpec, b: &WalkSpec) -> Result<WalkSpec> {
    let coin = CoinMatrix::from_cmat(a.coin().matrix().kron(b.coin().matrix()))?;
    let dim = a.lattice_dim() + b.lattice_dim();
    let mut vectors = Vec::with_capacity(a.coin_dim() * b.coin_dim());
    for va in a.shifts().iter() {
        for vb in b.shifts().iter() {
            let mut v = Vec::with_capacity(dim);
            v.extend_from_slice(va);
            v.extend_from_slice(vb);
            vectors.push(v);
        }
    }
    let shifts = ShiftSet::new(dim, vectors)?;
    let label = format!("tensor({},{})", a.label(), b.label());
    WalkSpec::new(coin, shifts, label)
}
