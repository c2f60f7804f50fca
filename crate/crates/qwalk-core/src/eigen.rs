//! Eigendecomposition of small unitary matrices.
//!
//! Unitary matrices are normal, so U = H + iS with commuting Hermitian
//! parts H = (U + U^H)/2 and S = (U - U^H)/(2i). The solver diagonalises
//! H with a cyclic complex Jacobi sweep, then resolves clusters of close
//! H-eigenvalues by diagonalising S restricted to each cluster subspace.
//! Two eigenvalues of U collide in both H and S only when they genuinely
//! coincide, so the joint pass separates conjugate pairs that H alone
//! cannot. 2 x 2 matrices take a closed-form path.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{dot, norm_sq, CMat};

/// H-eigenvalue spread below which columns are treated as one cluster
/// and resolved by the S pass. Chosen well above Jacobi residuals and
/// well below gaps that matter downstream.
const CLUSTER_TOL: f64 = 1e-4;

/// Jacobi terminates when every off-diagonal magnitude drops below this.
const JACOBI_OFF_TOL: f64 = 1e-15;

const MAX_SWEEPS: usize = 60;

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// Cyclic Jacobi for a complex Hermitian matrix. Returns the (unsorted)
/// real eigenvalues and a unitary matrix of eigenvectors in columns.
pub fn hermitian_eigen(a: &CMat) -> Result<(Vec<f64>, CMat)> {
    let n = a.dim();
    let mut a = a.clone();
    let mut v = CMat::identity(n);
    let scale = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| a.get(i, j).norm())
        .fold(1.0f64, f64::max);
    let stop = JACOBI_OFF_TOL * scale;

    for sweep in 0..=MAX_SWEEPS {
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                worst = worst.max(a.get(i, j).norm());
            }
        }
        if worst <= stop {
            let vals = (0..n).map(|i| a.get(i, i).re).collect();
            return Ok((vals, v));
        }
        if sweep == MAX_SWEEPS {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                if apq.norm() <= stop {
                    continue;
                }
                // Phase rotation making the pivot real, then a real
                // Jacobi rotation annihilating it.
                let phase = apq / apq.norm();
                let app = a.get(p, p).re;
                let aqq = a.get(q, q).re;
                let tau = (aqq - app) / (2.0 * apq.norm());
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // G[p][p] = c, G[p][q] = s, G[q][p] = -s e^{-i phi},
                // G[q][q] = c e^{-i phi}; apply A <- G^H A G, V <- V G.
                let gpq = Complex64::new(s, 0.0);
                let gqp = -s * phase.conj();
                let gqq = c * phase.conj();
                let gpp = Complex64::new(c, 0.0);
                for j in 0..n {
                    let rp = a.get(p, j);
                    let rq = a.get(q, j);
                    a.set(p, j, gpp.conj() * rp + gqp.conj() * rq);
                    a.set(q, j, gpq.conj() * rp + gqq.conj() * rq);
                }
                for i in 0..n {
                    let cp = a.get(i, p);
                    let cq = a.get(i, q);
                    a.set(i, p, cp * gpp + cq * gqp);
                    a.set(i, q, cp * gpq + cq * gqq);
                }
                // The pivot is zero by construction; pin it and keep the
                // diagonal exactly real against rounding drift.
                a.set(p, q, zero());
                a.set(q, p, zero());
                a.set(p, p, Complex64::new(a.get(p, p).re, 0.0));
                a.set(q, q, Complex64::new(a.get(q, q).re, 0.0));
                for i in 0..n {
                    let vp = v.get(i, p);
                    let vq = v.get(i, q);
                    v.set(i, p, vp * gpp + vq * gqp);
                    v.set(i, q, vp * gpq + vq * gqq);
                }
            }
        }
    }
    Err(Error::SolverFailure {
        context: format!("Jacobi did not converge in {MAX_SWEEPS} sweeps (n={n})"),
    })
}

/// Multiplies each eigenvector by a unit phase making its largest
/// component real and positive; pins the basis deterministically.
fn canonicalise_phase(col: &mut [Complex64]) {
    let mut best = 0usize;
    for (i, x) in col.iter().enumerate() {
        if x.norm_sqr() > col[best].norm_sqr() {
            best = i;
        }
    }
    let a = col[best];
    if a.norm() == 0.0 {
        return;
    }
    let phase = a.conj() / a.norm();
    for x in col.iter_mut() {
        *x *= phase;
    }
}

fn principal_arg(z: Complex64) -> f64 {
    let a = z.arg();
    if a < 0.0 {
        a + std::f64::consts::TAU
    } else {
        a
    }
}

fn lex_less(a: &[Complex64], b: &[Complex64]) -> bool {
    for (x, y) in a.iter().zip(b) {
        match x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)) {
            std::cmp::Ordering::Less => return true,
            std::cmp::Ordering::Greater => return false,
            std::cmp::Ordering::Equal => {}
        }
    }
    false
}

/// Orders eigenpairs by principal argument of the eigenvalue in
/// [0, 2 pi); exact ties fall back to lexicographic comparison of the
/// phase-fixed eigenvectors.
fn sort_pairs(vals: &mut [Complex64], vecs: &mut Vec<Vec<Complex64>>) {
    let n = vals.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        principal_arg(vals[i])
            .total_cmp(&principal_arg(vals[j]))
            .then_with(|| {
                if lex_less(&vecs[i], &vecs[j]) {
                    std::cmp::Ordering::Less
                } else if lex_less(&vecs[j], &vecs[i]) {
                    std::cmp::Ordering::Greater
                } else {
                    std::cmp::Ordering::Equal
                }
            })
    });
    let sorted_vals: Vec<Complex64> = order.iter().map(|&i| vals[i]).collect();
    let sorted_vecs: Vec<Vec<Complex64>> = order.iter().map(|&i| vecs[i].clone()).collect();
    vals.copy_from_slice(&sorted_vals);
    *vecs = sorted_vecs;
}

fn pack_columns(vecs: &[Vec<Complex64>]) -> CMat {
    let n = vecs.len();
    let mut m = CMat::zeros(n);
    for (j, col) in vecs.iter().enumerate() {
        for i in 0..n {
            m.set(i, j, col[i]);
        }
    }
    m
}

/// Closed-form eigendecomposition of a 2 x 2 unitary. The second
/// eigenvector is the exact orthogonal complement of the first, which
/// for a normal matrix spans the remaining eigenspace.
fn unitary_eigen_2x2(u: &CMat) -> (Vec<Complex64>, Vec<Vec<Complex64>>) {
    let (a, b) = (u.get(0, 0), u.get(0, 1));
    let (c, d) = (u.get(1, 0), u.get(1, 1));
    let half_tr = (a + d) / 2.0;
    let det = a * d - b * c;
    let s = (half_tr * half_tr - det).sqrt();
    let lam1 = half_tr + s;
    let lam2 = if lam1.norm() > 1e-3 {
        det / lam1
    } else {
        half_tr - s
    };

    // Candidate kernel vectors of (U - lambda I); take the best
    // conditioned one over both eigenvalues.
    let candidates = |lam: Complex64| -> (Vec<Complex64>, f64) {
        let v1 = vec![b, lam - a];
        let v2 = vec![lam - d, c];
        let (n1, n2) = (norm_sq(&v1), norm_sq(&v2));
        if n1 >= n2 {
            (v1, n1)
        } else {
            (v2, n2)
        }
    };
    let (cand1, n1) = candidates(lam1);
    let (cand2, n2) = candidates(lam2);
    let (mut primary, primary_is_first) = if n1 >= n2 {
        (cand1, true)
    } else {
        (cand2, false)
    };
    let np = norm_sq(&primary);
    if np < 1e-28 {
        // Scalar matrix: any orthonormal basis is an eigenbasis.
        return (
            vec![lam1, lam2],
            vec![
                vec![Complex64::new(1.0, 0.0), zero()],
                vec![zero(), Complex64::new(1.0, 0.0)],
            ],
        );
    }
    let inv = 1.0 / np.sqrt();
    for x in primary.iter_mut() {
        *x *= inv;
    }
    let complement = vec![-primary[1].conj(), primary[0].conj()];
    if primary_is_first {
        (vec![lam1, lam2], vec![primary, complement])
    } else {
        (vec![lam2, lam1], vec![primary, complement])
    }
}

/// Eigenvalues and orthonormal eigenvectors of a unitary matrix, ordered
/// by principal argument. Eigenvalues come from Rayleigh quotients, so
/// they sit on the unit circle to solver accuracy.
pub fn unitary_eigen(u: &CMat) -> Result<(Vec<Complex64>, CMat)> {
    let n = u.dim();
    let (mut vals, mut vecs) = match n {
        1 => (
            vec![u.get(0, 0)],
            vec![vec![Complex64::new(1.0, 0.0)]],
        ),
        2 => unitary_eigen_2x2(u),
        _ => {
            let uh = u.adjoint();
            let mut h = CMat::zeros(n);
            let mut s = CMat::zeros(n);
            for i in 0..n {
                for j in 0..n {
                    let sum = u.get(i, j) + uh.get(i, j);
                    let diff = u.get(i, j) - uh.get(i, j);
                    h.set(i, j, sum / 2.0);
                    // (U - U^H) / (2i) = -i/2 (U - U^H)
                    s.set(i, j, Complex64::new(0.0, -0.5) * diff);
                }
            }
            let (hvals, hvecs) = hermitian_eigen(&h)?;
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&i, &j| hvals[i].total_cmp(&hvals[j]));
            let hvals: Vec<f64> = order.iter().map(|&i| hvals[i]).collect();
            let mut cols: Vec<Vec<Complex64>> = order.iter().map(|&i| hvecs.col(i)).collect();

            // Resolve clusters of near-equal H-eigenvalues with S.
            let mut start = 0usize;
            while start < n {
                let mut end = start + 1;
                while end < n && hvals[end] - hvals[end - 1] < CLUSTER_TOL {
                    end += 1;
                }
                let m = end - start;
                if m > 1 {
                    let mut sc = CMat::zeros(m);
                    for (bi, i) in (start..end).enumerate() {
                        for (bj, j) in (start..end).enumerate() {
                            let sv = s.matvec(&cols[j]);
                            sc.set(bi, bj, dot(&cols[i], &sv));
                        }
                    }
                    // Hermitise against rounding before the second pass.
                    for bi in 0..m {
                        for bj in (bi + 1)..m {
                            let avg = (sc.get(bi, bj) + sc.get(bj, bi).conj()) / 2.0;
                            sc.set(bi, bj, avg);
                            sc.set(bj, bi, avg.conj());
                        }
                        let dre = sc.get(bi, bi).re;
                        sc.set(bi, bi, Complex64::new(dre, 0.0));
                    }
                    let (_, w) = hermitian_eigen(&sc)?;
                    let old: Vec<Vec<Complex64>> = cols[start..end].to_vec();
                    for bj in 0..m {
                        let mut fresh = vec![zero(); n];
                        for bi in 0..m {
                            let coef = w.get(bi, bj);
                            for r in 0..n {
                                fresh[r] += old[bi][r] * coef;
                            }
                        }
                        cols[start + bj] = fresh;
                    }
                }
                start = end;
            }

            let vals = cols
                .iter()
                .map(|col| dot(col, &u.matvec(col)))
                .collect::<Vec<_>>();
            (vals, cols)
        }
    };

    for col in vecs.iter_mut() {
        let inv = 1.0 / norm_sq(col).sqrt();
        for x in col.iter_mut() {
            *x *= inv;
        }
        canonicalise_phase(col);
    }
    sort_pairs(&mut vals, &mut vecs);

    // Residual check: each pair must satisfy U v = lambda v. Genuinely
    // degenerate eigenspaces pass because any basis of the eigenspace
    // is an eigenbasis; a large residual means the solver broke down.
    for (lam, col) in vals.iter().zip(&vecs) {
        let uv = u.matvec(col);
        let res: f64 = uv
            .iter()
            .zip(col)
            .map(|(a, b)| (a - lam * b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        if res > 1e-6 {
            return Err(Error::SolverFailure {
                context: format!("eigenpair residual {res:.3e} for n={n}"),
            });
        }
    }

    Ok((vals, pack_columns(&vecs)))
}

/// Smallest pairwise eigenvalue distance; infinite for 1 x 1 matrices.
pub fn min_gap(vals: &[Complex64]) -> f64 {
    let n = vals.len();
    if n < 2 {
        return f64::INFINITY;
    }
    let mut gap = f64::INFINITY;
    for i in 0..n {
        for j in (i + 1)..n {
            gap = gap.min((vals[i] - vals[j]).norm());
        }
    }
    gap
}
