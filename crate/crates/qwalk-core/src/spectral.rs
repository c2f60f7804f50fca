//! Momentum-space analysis: U(k), its eigensystem, group velocities,
//! and the limiting law of X_n / n.
//!
//! At each momentum k the walk acts by U(k) = D(k) A, where D(k) is the
//! diagonal of shift phases e^{i shift_J . k} and A is the coin. Writing
//! v_J(k) for the eigenvectors, the limit law of X_n / n is the image of
//! |<v_J(k), Psi0(k)>|^2 dk under the velocity map h(k, J), discretised
//! here on a uniform grid. The velocity along axis i is the expectation
//! of the i-th shift component under |v_J|^2, which is the eigenvalue
//! derivative -i lambda' / lambda evaluated without differentiating.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::cdf::StepCdf;
use crate::eigen;
use crate::error::{Error, Result};
use crate::fourier;
use crate::grid::MomentumGrid;
use crate::matrix::{dot, CMat};
use crate::state::Ensemble;
use crate::tol;
use crate::walk::{ShiftSet, WalkSpec};

/// The one-step operator restricted to momentum k.
#[derive(Clone, Debug)]
pub struct UkMatrix {
    k: Vec<f64>,
    mat: CMat,
}

impl UkMatrix {
    pub fn k(&self) -> &[f64] {
        &self.k
    }

    pub fn matrix(&self) -> &CMat {
        &self.mat
    }
}

/// Builds U(k): row J of the coin picks up the phase e^{i shift_J . k}.
pub fn u_of_k(spec: &WalkSpec, k: &[f64]) -> UkMatrix {
    assert_eq!(
        k.len(),
        spec.lattice_dim(),
        "momentum dimension does not match the lattice"
    );
    let n = spec.coin_dim();
    let mut mat = CMat::zeros(n);
    for j in 0..n {
        let angle: f64 = spec
            .shifts()
            .vector(j)
            .iter()
            .zip(k)
            .map(|(&e, ki)| e as f64 * ki)
            .sum();
        let phase = Complex64::from_polar(1.0, angle);
        for col in 0..n {
            mat.set(j, col, phase * spec.coin().matrix().get(j, col));
        }
    }
    UkMatrix { k: k.to_vec(), mat }
}

/// Eigenvalues (unit modulus, ordered by principal argument) and an
/// orthonormal eigenbasis of one U(k).
#[derive(Clone, Debug)]
pub struct Eigensystem {
    k: Vec<f64>,
    eigenvalues: Vec<Complex64>,
    eigenvectors: CMat,
    gap: f64,
}

impl Eigensystem {
    pub fn k(&self) -> &[f64] {
        &self.k
    }

    pub fn eigenvalues(&self) -> &[Complex64] {
        &self.eigenvalues
    }

    pub fn eigenvector(&self, branch: usize) -> Vec<Complex64> {
        self.eigenvectors.col(branch)
    }

    pub fn eigenvectors(&self) -> &CMat {
        &self.eigenvectors
    }

    /// Smallest pairwise eigenvalue distance at this node.
    pub fn gap(&self) -> f64 {
        self.gap
    }
}

/// Diagonalises U(k), enforcing the spectral contracts: unit-modulus
/// eigenvalues and, away from degeneracies, an orthonormal basis.
pub fn eigensystem(u: &UkMatrix) -> Result<Eigensystem> {
    let (vals, vecs) = eigen::unitary_eigen(&u.mat)?;
    for lam in &vals {
        if (lam.norm() - 1.0).abs() > tol::EIGENVALUE_MODULUS {
            return Err(Error::SolverFailure {
                context: format!("eigenvalue modulus {:.17} off the unit circle", lam.norm()),
            });
        }
    }
    let gap = eigen::min_gap(&vals);
    if gap > tol::DEGENERACY_GAP {
        let residual = vecs.unitarity_residual();
        if residual > tol::EIGENVECTOR_ORTHO {
            return Err(Error::SolverFailure {
                context: format!("eigenbasis orthonormality residual {residual:.3e}"),
            });
        }
    }
    Ok(Eigensystem {
        k: u.k.clone(),
        eigenvalues: vals,
        eigenvectors: vecs,
        gap,
    })
}

/// Group velocity of every branch: h_i(k, J) = sum_m shift_{m,i}
/// |v_{J,m}|^2. Manifestly real and confined to the shift hull, and
/// invariant under eigenvector phase changes.
pub fn velocity(es: &Eigensystem, shifts: &ShiftSet) -> Result<Vec<Vec<f64>>> {
    if es.gap < tol::DEGENERACY_GAP {
        return Err(Error::DegenerateBranch { gap: es.gap });
    }
    Ok(velocity_unchecked(es, shifts))
}

fn velocity_unchecked(es: &Eigensystem, shifts: &ShiftSet) -> Vec<Vec<f64>> {
    let n = es.eigenvalues.len();
    let d = shifts.dim();
    (0..n)
        .map(|branch| {
            let col = es.eigenvectors.col(branch);
            let mut h = vec![0.0f64; d];
            for (m, amp) in col.iter().enumerate() {
                let w = amp.norm_sqr();
                for i in 0..d {
                    h[i] += shifts.vector(m)[i] as f64 * w;
                }
            }
            h
        })
        .collect()
}

/// One atom of the discretised limit law.
#[derive(Clone, Debug)]
pub struct OmegaAtom {
    /// Flat grid-node index.
    pub node: usize,
    /// Momentum of the node.
    pub k: Vec<f64>,
    /// Branch index within the node's eigenvalue ordering.
    pub branch: usize,
    /// Velocity vector of the branch.
    pub h: Vec<f64>,
    /// Probability mass of the atom.
    pub weight: f64,
}

#[derive(Clone, Debug)]
pub struct LawMeta {
    pub label: String,
    pub grid_points: usize,
    pub total_nodes: usize,
    /// Nodes discarded because their eigenvalue gap fell below the
    /// degeneracy threshold; remaining weights are renormalised.
    pub dropped_nodes: usize,
}

/// Discretised limit law of X_n / n: one atom per (node, branch).
#[derive(Clone, Debug)]
pub struct LimitLaw {
    dim: usize,
    atoms: Vec<OmegaAtom>,
    meta: LawMeta,
}

impl LimitLaw {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn atoms(&self) -> &[OmegaAtom] {
        &self.atoms
    }

    pub fn meta(&self) -> &LawMeta {
        &self.meta
    }

    pub fn total_weight(&self) -> f64 {
        self.atoms.iter().map(|a| a.weight).sum()
    }

    /// Range of the projected velocities c.h over all atoms.
    pub fn support_interval(&self, c: &[f64]) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for atom in &self.atoms {
            let y: f64 = atom.h.iter().zip(c).map(|(h, ci)| h * ci).sum();
            lo = lo.min(y);
            hi = hi.max(y);
        }
        (lo, hi)
    }
}

/// Spectral measure of the walk started from `ens`, discretised on
/// `grid`: weight |<v_J(k), Psi0(k)>|^2 / M^d per atom, averaged over
/// ensemble members. Degenerate nodes are dropped and counted.
pub fn limit_law(spec: &WalkSpec, ens: &Ensemble, grid: &MomentumGrid) -> Result<LimitLaw> {
    if grid.dim() != spec.lattice_dim() {
        return Err(Error::DimMismatch {
            context: format!(
                "grid is {}-dimensional, walk lives on Z^{}",
                grid.dim(),
                spec.lattice_dim()
            ),
        });
    }
    let m = grid.points_per_axis();
    for (_, state) in ens.members() {
        if state.coin_dim() != spec.coin_dim() || state.dim() != spec.lattice_dim() {
            return Err(Error::DimMismatch {
                context: "ensemble member does not match the walk".to_string(),
            });
        }
        for i in 0..state.dim() {
            if state.window().extent(i) > m {
                return Err(Error::GridTooSmall {
                    context: format!(
                        "initial window extent {} on axis {i} exceeds {m} grid points",
                        state.window().extent(i)
                    ),
                });
            }
        }
    }

    let fields: Vec<fourier::SpectralField> = ens
        .members()
        .iter()
        .map(|(_, state)| fourier::forward(state, grid))
        .collect();
    let weights: Vec<f64> = ens.members().iter().map(|(w, _)| *w).collect();
    let node_weight = grid.weight();

    struct NodeOut {
        k: Vec<f64>,
        branches: Vec<(Vec<f64>, f64)>,
    }

    let nodes: Vec<Option<NodeOut>> = (0..grid.num_nodes())
        .into_par_iter()
        .map(|node| -> Result<Option<NodeOut>> {
            let k = grid.node(node);
            let es = eigensystem(&u_of_k(spec, &k))?;
            if es.gap() <= tol::DEGENERACY_GAP {
                return Ok(None);
            }
            let hs = velocity_unchecked(&es, spec.shifts());
            let n = spec.coin_dim();
            let mut branches = Vec::with_capacity(n);
            for branch in 0..n {
                let v = es.eigenvectors.col(branch);
                let mut mass = 0.0;
                for (w, field) in weights.iter().zip(&fields) {
                    mass += w * dot(&v, field.site(node)).norm_sqr();
                }
                branches.push((hs[branch].clone(), mass * node_weight));
            }
            Ok(Some(NodeOut { k, branches }))
        })
        .collect::<Result<_>>()?;

    let total_nodes = grid.num_nodes();
    let dropped_nodes = nodes.iter().filter(|n| n.is_none()).count();
    let mut atoms = Vec::new();
    for (node, out) in nodes.into_iter().enumerate() {
        let Some(out) = out else { continue };
        for (branch, (h, weight)) in out.branches.into_iter().enumerate() {
            atoms.push(OmegaAtom {
                node,
                k: out.k.clone(),
                branch,
                h,
                weight,
            });
        }
    }
    let total: f64 = atoms.iter().map(|a| a.weight).sum();
    if total < 1e-12 {
        return Err(Error::AllNodesDegenerate);
    }
    for atom in atoms.iter_mut() {
        atom.weight /= total;
    }
    let law = LimitLaw {
        dim: spec.lattice_dim(),
        atoms,
        meta: LawMeta {
            label: spec.label().to_string(),
            grid_points: m,
            total_nodes,
            dropped_nodes,
        },
    };
    let check = law.total_weight();
    if (check - 1.0).abs() > tol::WEIGHT_SUM {
        return Err(Error::SolverFailure {
            context: format!("limit-law weights sum to {check:.17}"),
        });
    }
    Ok(law)
}

/// Distribution function of the projected limit law c.Y.
pub fn limit_cdf(law: &LimitLaw, c: &[f64]) -> StepCdf {
    assert_eq!(c.len(), law.dim(), "projection dimension mismatch");
    StepCdf::from_weighted(
        law.atoms
            .iter()
            .map(|a| (a.h.iter().zip(c).map(|(h, ci)| h * ci).sum(), a.weight)),
    )
}

/// r-th moment of the projected limit law.
pub fn limit_moment(law: &LimitLaw, r: u32, c: &[f64]) -> f64 {
    assert_eq!(c.len(), law.dim(), "projection dimension mismatch");
    law.atoms
        .iter()
        .map(|a| {
            let y: f64 = a.h.iter().zip(c).map(|(h, ci)| h * ci).sum();
            a.weight * y.powi(r as i32)
        })
        .sum()
}
