//! Coin matrices and the built-in coin families.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::CMat;
use crate::tol;

/// Unitary coin acting on the internal (chirality) space.
///
/// Validated on construction: square, and unitary to within
/// [`tol::UNITARITY`]. One-dimensional coins (a bare phase) are accepted
/// so that tensoring with a trivial factor stays an identity operation;
/// the built-in families and the CLI only ever produce N >= 2.
#[derive(Clone, Debug, PartialEq)]
pub struct CoinMatrix {
    mat: CMat,
}

impl CoinMatrix {
    pub fn new(entries: &[Vec<Complex64>]) -> Result<Self> {
        Self::from_cmat(CMat::from_rows(entries)?)
    }

    pub(crate) fn from_cmat(mat: CMat) -> Result<Self> {
        let residual = mat.unitarity_residual();
        if residual > tol::UNITARITY {
            return Err(Error::NonUnitary { residual });
        }
        Ok(CoinMatrix { mat })
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn matrix(&self) -> &CMat {
        &self.mat
    }

    /// A diagonal coin never mixes chirality components: the walk is a
    /// deterministic drift per component.
    pub fn is_diagonal(&self) -> bool {
        self.mat.is_diagonal(tol::DIAGONAL_COIN)
    }
}

/// Validates arbitrary entries as a coin.
pub fn make_coin(entries: &[Vec<Complex64>]) -> Result<CoinMatrix> {
    CoinMatrix::new(entries)
}

/// Built-in coin families.
#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    /// Real balanced two-state coin.
    Hadamard,
    /// Two-parameter phase-dressed balanced coin; (0, 0) is Hadamard.
    Unbiased { phi: f64, psi: f64 },
    /// Real coin with reflection weight `rho` in (0, 1); 1/2 is Hadamard.
    Biased { rho: f64 },
    /// Four-state balanced coin on the plane (tensor square of Hadamard).
    Hadamard2d,
}

impl Family {
    /// Resolves a family by name, pulling the parameters it needs.
    pub fn from_name(
        name: &str,
        phi: Option<f64>,
        psi: Option<f64>,
        rho: Option<f64>,
    ) -> Result<Family> {
        match name {
            "hadamard" => Ok(Family::Hadamard),
            "unbiased" => {
                let phi = phi.ok_or(Error::MissingParam {
                    family: "unbiased",
                    name: "phi",
                })?;
                let psi = psi.ok_or(Error::MissingParam {
                    family: "unbiased",
                    name: "psi",
                })?;
                Ok(Family::Unbiased { phi, psi })
            }
            "biased" => {
                let rho = rho.ok_or(Error::MissingParam {
                    family: "biased",
                    name: "rho",
                })?;
                Ok(Family::Biased { rho })
            }
            "hadamard2d" => Ok(Family::Hadamard2d),
            other => Err(Error::UnknownFamily {
                name: other.to_string(),
            }),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Family::Hadamard => "hadamard".to_string(),
            Family::Unbiased { phi, psi } => format!("unbiased(phi={phi},psi={psi})"),
            Family::Biased { rho } => format!("biased(rho={rho})"),
            Family::Hadamard2d => "hadamard2d".to_string(),
        }
    }
}

/// Builds the coin matrix of a family.
pub fn coin_family(family: &Family) -> Result<CoinMatrix> {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    match family {
        Family::Hadamard => CoinMatrix::new(&[
            vec![c(s, 0.0), c(s, 0.0)],
            vec![c(s, 0.0), c(-s, 0.0)],
        ]),
        Family::Unbiased { phi, psi } => {
            let a = Complex64::from_polar(s, phi + psi);
            let b = Complex64::from_polar(s, -(phi - psi));
            let d = Complex64::from_polar(s, phi - psi);
            let e = -Complex64::from_polar(s, -(phi + psi));
            CoinMatrix::new(&[vec![a, b], vec![d, e]])
        }
        Family::Biased { rho } => {
            if !(*rho > 0.0 && *rho < 1.0) {
                return Err(Error::ParamOutOfRange {
                    name: "rho",
                    value: *rho,
                    range: "(0, 1)",
                });
            }
            let p = rho.sqrt();
            let q = (1.0 - rho).sqrt();
            CoinMatrix::new(&[
                vec![c(p, 0.0), c(q, 0.0)],
                vec![c(q, 0.0), c(-p, 0.0)],
            ])
        }
        Family::Hadamard2d => {
            let h = coin_family(&Family::Hadamard)?;
            CoinMatrix::from_cmat(h.matrix().kron(h.matrix()))
        }
    }
}
