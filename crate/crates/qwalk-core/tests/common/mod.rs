//! Shared oracles for the integration suites. Everything here is
//! deliberately independent of the library's evolution and spectral
//! code paths: distributions come from explicit path enumeration,
//! integrals from tanh-sinh quadrature, and derivatives from finite
//! differences.

#![allow(dead_code)]

use std::collections::HashMap;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qwalk_core::{eigensystem, u_of_k, WalkSpec};

pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Position distribution after `n` steps by enumerating all N^n coin
/// index sequences. A step sends amplitude `a` at (x, j) to
/// (x + shift[l], l) with factor coin[l][j]; a path's amplitude is the
/// product of its factors, and paths are summed before squaring.
pub fn enumerate_paths(
    coin: &[Vec<Complex64>],
    shifts: &[Vec<i64>],
    x0: &[i64],
    coin0: &[Complex64],
    n: usize,
) -> HashMap<Vec<i64>, f64> {
    let nc = coin.len();
    let dim = x0.len();
    let mut amps: HashMap<(Vec<i64>, usize), Complex64> = HashMap::new();
    // Digits of the path: the coin component chosen at each step.
    let mut digits = vec![0usize; n];
    loop {
        for (j0, &a0) in coin0.iter().enumerate() {
            if a0 == c64(0.0, 0.0) {
                continue;
            }
            let mut amp = a0;
            let mut prev = j0;
            let mut x = x0.to_vec();
            for &jt in &digits {
                amp *= coin[jt][prev];
                prev = jt;
                for i in 0..dim {
                    x[i] += shifts[jt][i];
                }
            }
            *amps.entry((x, prev)).or_insert(c64(0.0, 0.0)) += amp;
        }
        // Advance the odometer over [0, nc)^n.
        let mut pos = 0;
        loop {
            if pos == n {
                let mut probs: HashMap<Vec<i64>, f64> = HashMap::new();
                for ((x, _), a) in amps {
                    *probs.entry(x).or_insert(0.0) += a.norm_sqr();
                }
                probs.retain(|_, p| *p > 0.0);
                return probs;
            }
            digits[pos] += 1;
            if digits[pos] < nc {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

/// Tanh-sinh quadrature of `f` over (a, b). Double-exponential decay
/// of the weights makes integrable endpoint singularities harmless;
/// the integrand is never evaluated at the endpoints themselves.
pub fn tanh_sinh(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let mid = 0.5 * (a + b);
    let rad = 0.5 * (b - a);
    let h = 1.0 / 128.0;
    let half_pi = std::f64::consts::FRAC_PI_2;
    let mut acc = 0.0f64;
    for sign in [1.0f64, -1.0] {
        let mut j = if sign > 0.0 { 0i64 } else { -1 };
        let mut tiny_run = 0;
        loop {
            let u = h * j as f64;
            if u.abs() > 6.0 {
                break;
            }
            let s = half_pi * u.sinh();
            let t = s.tanh();
            let w = h * half_pi * u.cosh() / (s.cosh() * s.cosh());
            let y = mid + rad * t;
            let term = if y > a && y < b { w * f(y) } else { 0.0 };
            acc += rad * term;
            if (rad * term).abs() < 1e-20 * (1.0 + acc.abs()) {
                tiny_run += 1;
                if tiny_run >= 4 {
                    break;
                }
            } else {
                tiny_run = 0;
            }
            j += sign as i64;
        }
    }
    acc
}

/// Haar-ish random unitary: complex Gaussian matrix orthonormalised by
/// modified Gram-Schmidt. Deterministic given the RNG state.
pub fn random_unitary(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<Complex64>> {
    let gauss = |rng: &mut ChaCha8Rng| {
        let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
        let u2: f64 = rng.gen();
        let r = (-2.0 * u1.ln()).sqrt();
        c64(
            r * (2.0 * std::f64::consts::PI * u2).cos(),
            r * (2.0 * std::f64::consts::PI * u2).sin(),
        ) * std::f64::consts::FRAC_1_SQRT_2
    };
    let mut cols: Vec<Vec<Complex64>> = (0..n)
        .map(|_| (0..n).map(|_| gauss(rng)).collect())
        .collect();
    for i in 0..n {
        for prev in 0..i {
            let proj: Complex64 = cols[prev]
                .iter()
                .zip(&cols[i])
                .map(|(p, v)| p.conj() * v)
                .sum();
            for r in 0..n {
                let correction = proj * cols[prev][r];
                cols[i][r] -= correction;
            }
        }
        let norm: f64 = cols[i].iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        for v in &mut cols[i] {
            *v /= norm;
        }
    }
    // Transpose columns into rows.
    (0..n)
        .map(|r| (0..n).map(|c| cols[c][r]).collect())
        .collect()
}

/// Random seeded rng for reproducible sampling in tests.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Eigenvalues of the walk's momentum matrix at `k`, matched to the
/// branch order of a reference eigensystem by nearest distance.
fn matched_eigenvalues(spec: &WalkSpec, k: &[f64], reference: &[Complex64]) -> Vec<Complex64> {
    let es = eigensystem(&u_of_k(spec, k)).expect("eigensystem at offset point");
    let mut pool: Vec<Complex64> = es.eigenvalues().to_vec();
    reference
        .iter()
        .map(|lr| {
            let (best, _) = pool
                .iter()
                .enumerate()
                .map(|(i, l)| (i, (l - lr).norm()))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .expect("non-empty pool");
            pool.swap_remove(best)
        })
        .collect()
}

/// Group velocities along one axis from branch-tracked eigenvalues and
/// a five-point central difference: v = Re(-i lambda' / lambda).
/// Reliable away from degeneracies (gap well above the step).
pub fn fd_velocities(spec: &WalkSpec, k: &[f64], axis: usize, delta: f64) -> Vec<f64> {
    let center = eigensystem(&u_of_k(spec, k)).expect("eigensystem at center");
    let reference = center.eigenvalues().to_vec();
    let at = |steps: i64| {
        let mut kk = k.to_vec();
        kk[axis] += steps as f64 * delta;
        matched_eigenvalues(spec, &kk, &reference)
    };
    let (m2, m1, p1, p2) = (at(-2), at(-1), at(1), at(2));
    (0..reference.len())
        .map(|j| {
            let deriv = (m2[j] - 8.0 * m1[j] + 8.0 * p1[j] - p2[j]) / (12.0 * delta);
            (-Complex64::i() * deriv / reference[j]).re
        })
        .collect()
}

/// Largest difference between the sorted samples of two equal-length
/// lists: the infinity-Wasserstein distance of two uniform empirical
/// laws on equally many atoms.
pub fn max_sorted_gap(mut a: Vec<f64>, mut b: Vec<f64>) -> f64 {
    assert_eq!(a.len(), b.len(), "quantile comparison needs equal counts");
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    a.iter()
        .zip(&b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}
