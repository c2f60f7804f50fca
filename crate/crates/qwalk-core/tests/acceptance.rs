//! Acceptance gate: one test per criterion, each printing a PASS line
//! (visible with `--nocapture`) once its pinned tolerance holds.
//!
//! Criteria:
//!  1. two- and three-step balanced-walk distributions are exact;
//!  2. direct and momentum-space evolution agree amplitude-wise on
//!     random walks in one and two dimensions;
//!  3. eigenvalue branches and group velocities of the two-state
//!     families match their closed forms, and the velocities match
//!     finite differences of the branches;
//!  4. weak-limit support endpoints match the closed forms;
//!  5. the discretised mixed-start limit CDF matches the closed-form
//!     CDF, whose density integrates to one under an independent
//!     quadrature;
//!  6. the scaled variance converges to the closed-form limit at the
//!     expected rate;
//!  7. Kolmogorov distance to the limit law shrinks with n for three
//!     families;
//!  8. coin phases that only translate the momentum spectrum leave the
//!     mixed-start limit law unchanged;
//!  9. the four-state planar walk factorises, its velocities match the
//!     closed form, and its projections converge (Cramer-Wold);
//! 10. structural invariants: norm conservation over long runs, exact
//!     light cone, support parity, global-phase invariance. (Byte
//!     determinism of the command-line tool is checked in that crate's
//!     acceptance test.)

mod common;

use common::{c64, enumerate_paths, fd_velocities, max_sorted_gap, random_unitary, seeded_rng, tanh_sinh};
use num_complex::Complex64;
use rand::Rng;

use qwalk_core::{
    cramer_wold_suite, eigensystem, evolve, evolve_ensemble_spectral, evolve_spectral,
    hadamard_closed_form, kolmogorov_distance, limit_cdf, limit_law, point_state,
    projected_cdf, scaled_moment, spectral_grid_for, sup_gap_continuous, u_of_k, velocity,
    CoinMatrix, Ensemble, Family, MomentumGrid, ShiftSet, WalkSpec,
};

const SQRT_HALF: f64 = std::f64::consts::FRAC_1_SQRT_2;

fn family_spec(f: &Family) -> WalkSpec {
    WalkSpec::from_family(f).unwrap()
}

fn mixed_at_origin(spec: &WalkSpec) -> Ensemble {
    let origin = vec![0i64; spec.lattice_dim()];
    Ensemble::mixed_basis(spec, &origin).unwrap()
}

/// Eigenvalue branch s = +-1 of the two-state line families with
/// reflection weight `rho`, evaluated at momentum argument `arg`.
fn line_lambda(rho: f64, arg: f64, s: f64) -> Complex64 {
    let sn = arg.sin();
    c64(s * (1.0 - rho * sn * sn).sqrt(), rho.sqrt() * sn)
}

/// Group velocity of the same branch.
fn line_velocity(rho: f64, arg: f64, s: f64) -> f64 {
    let sn = arg.sin();
    s * arg.cos() / (1.0 / rho - sn * sn).sqrt()
}

/// Auto-sized momentum grid for an n-step run of the given ensemble.
fn run_grid(spec: &WalkSpec, ens: &Ensemble, n: usize) -> MomentumGrid {
    let mut points = 2usize;
    for (_, state) in ens.members() {
        points = points.max(
            spectral_grid_for(spec, state.window(), n)
                .unwrap()
                .points_per_axis(),
        );
    }
    MomentumGrid::new(spec.lattice_dim(), points).unwrap()
}

#[test]
fn criterion_01_small_step_distributions_are_exact() {
    let spec = family_spec(&Family::Hadamard);
    let coin: Vec<Vec<Complex64>> = (0..2)
        .map(|r| (0..2).map(|c| spec.coin().matrix().get(r, c)).collect())
        .collect();
    let shifts = vec![vec![1i64], vec![-1]];
    let start = [c64(1.0, 0.0), c64(0.0, 0.0)];
    let state = point_state(&[0], &start, &spec).unwrap();

    let mut worst = 0.0f64;
    for (n, frozen) in [
        (2usize, vec![(-2i64, 0.25), (0, 0.5), (2, 0.25)]),
        (3, vec![(-3, 0.125), (-1, 0.125), (1, 0.625), (3, 0.125)]),
    ] {
        let dist = evolve(&state, &spec, n).unwrap().distribution;
        let oracle = enumerate_paths(&coin, &shifts, &[0], &start, n);
        assert_eq!(dist.len(), frozen.len());
        for (x, p) in &frozen {
            let lib = dist.mass_at(&[*x]);
            let by_paths = oracle.get(&vec![*x]).copied().unwrap_or(0.0);
            worst = worst.max((lib - p).abs()).max((lib - by_paths).abs());
            assert!(
                (lib - p).abs() <= 1e-12 && (lib - by_paths).abs() <= 1e-12,
                "n={n}, x={x}: library {lib}, frozen {p}, paths {by_paths}"
            );
        }
    }
    println!("criterion 1 (exact small-step distributions): PASS (max deviation {worst:.3e})");
}

#[test]
fn criterion_02_direct_and_spectral_evolution_agree() {
    let mut rng = seeded_rng(42_02);
    let mut worst = 0.0f64;
    for case in 0..20 {
        let dim = 1 + case % 2;
        let n_coin = 2 + case % 3;
        let steps = rng.gen_range(1..=20);
        let coin = random_unitary(&mut rng, n_coin);
        let shifts: Vec<Vec<i64>> = (0..n_coin)
            .map(|_| (0..dim).map(|_| rng.gen_range(-2i64..=2)).collect())
            .collect();
        let spec = WalkSpec::new(
            CoinMatrix::new(&coin).unwrap(),
            ShiftSet::new(dim, shifts).unwrap(),
            &format!("acceptance-2-{case}"),
        )
        .unwrap();
        let x0: Vec<i64> = (0..dim).map(|_| rng.gen_range(-3i64..=3)).collect();
        let mut amps: Vec<Complex64> = (0..n_coin)
            .map(|_| c64(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in &mut amps {
            *a /= norm;
        }
        let state = point_state(&x0, &amps, &spec).unwrap();
        let direct = evolve(&state, &spec, steps).unwrap();
        let grid = spectral_grid_for(&spec, state.window(), steps).unwrap();
        let spectral = evolve_spectral(&state, &spec, steps, &grid).unwrap();
        let diff = direct.state.max_abs_diff(&spectral.state);
        worst = worst.max(diff);
        assert!(
            diff <= 1e-10,
            "case {case} (dim {dim}, coin {n_coin}, n {steps}): amplitude difference {diff:.3e}"
        );
    }
    println!("criterion 2 (direct vs momentum-space evolution, 20 random walks): PASS (max amplitude difference {worst:.3e})");
}

#[test]
fn criterion_03_closed_form_spectra_and_velocities() {
    // (family, reflection weight rho, momentum offset of the branch
    // argument). Phases (phi, psi) only translate the argument by
    // phi + psi.
    let cases = [
        (Family::Hadamard, 0.5, 0.0),
        (Family::Unbiased { phi: 0.3, psi: 0.7 }, 0.5, 1.0),
        (Family::Biased { rho: 0.25 }, 0.25, 0.0),
    ];
    let grid = MomentumGrid::new(1, 1024).unwrap();
    let mut worst_lambda = 0.0f64;
    let mut worst_velocity = 0.0f64;
    let mut worst_fd = 0.0f64;
    for (family, rho, offset) in &cases {
        let spec = family_spec(family);
        for m in 0..grid.num_nodes() {
            let k = grid.node(m);
            let es = eigensystem(&u_of_k(&spec, &k)).unwrap();
            let vels = velocity(&es, spec.shifts()).unwrap();
            let arg = k[0] + offset;
            let mut used = [false; 2];
            for (j, lambda) in es.eigenvalues().iter().enumerate() {
                // Match the library branch to the closed-form branch.
                let (slot, s) = if (lambda - line_lambda(*rho, arg, 1.0)).norm()
                    <= (lambda - line_lambda(*rho, arg, -1.0)).norm()
                {
                    (0, 1.0)
                } else {
                    (1, -1.0)
                };
                assert!(!used[slot], "branch matching collapsed at k={}", k[0]);
                used[slot] = true;
                let dl = (lambda - line_lambda(*rho, arg, s)).norm();
                let dv = (vels[j][0] - line_velocity(*rho, arg, s)).abs();
                worst_lambda = worst_lambda.max(dl);
                worst_velocity = worst_velocity.max(dv);
                assert!(
                    dl <= 1e-10,
                    "{}: eigenvalue off by {dl:.3e} at k={}",
                    spec.label(),
                    k[0]
                );
                assert!(
                    dv <= 1e-10,
                    "{}: velocity off by {dv:.3e} at k={}",
                    spec.label(),
                    k[0]
                );
            }
            // Velocities from a five-point finite difference of the
            // branches, wherever the gap is comfortably open (it
            // always is for these families).
            if es.gap() > 0.1 {
                let fd = fd_velocities(&spec, &k, 0, 1e-3);
                for (j, v) in vels.iter().enumerate() {
                    let d = (v[0] - fd[j]).abs();
                    worst_fd = worst_fd.max(d);
                    assert!(
                        d <= 1e-6,
                        "{}: velocity vs finite difference off by {d:.3e} at k={}",
                        spec.label(),
                        k[0]
                    );
                }
            }
        }
    }
    println!(
        "criterion 3 (closed-form spectra at 1024 nodes, three families): PASS (max eigenvalue error {worst_lambda:.3e}, velocity error {worst_velocity:.3e}, fd cross-check {worst_fd:.3e})"
    );
}

#[test]
fn criterion_04_limit_support_endpoints() {
    let grid = MomentumGrid::new(1, 2048).unwrap();

    let spec = family_spec(&Family::Hadamard);
    let law = limit_law(&spec, &mixed_at_origin(&spec), &grid).unwrap();
    let (lo, hi) = law.support_interval(&[1.0]);
    assert!(
        (hi - SQRT_HALF).abs() <= 1e-6 && (lo + SQRT_HALF).abs() <= 1e-6,
        "balanced support [{lo}, {hi}]"
    );

    let mut worst = (hi - SQRT_HALF).abs().max((lo + SQRT_HALF).abs());
    for rho in [0.1, 0.25, 0.5, 0.9] {
        let spec = family_spec(&Family::Biased { rho });
        let law = limit_law(&spec, &mixed_at_origin(&spec), &grid).unwrap();
        let (lo, hi) = law.support_interval(&[1.0]);
        let (clo, chi) = qwalk_core::biased_support(rho).unwrap();
        worst = worst.max((hi - chi).abs()).max((lo - clo).abs());
        assert!(
            (hi - chi).abs() <= 1e-4 && (lo - clo).abs() <= 1e-4,
            "rho={rho}: support [{lo}, {hi}], closed form [{clo}, {chi}]"
        );
    }
    println!("criterion 4 (limit support endpoints): PASS (max endpoint error {worst:.3e})");
}

#[test]
fn criterion_05_mixed_limit_cdf_matches_closed_form() {
    let cf = hadamard_closed_form();
    // Independent check of the closed form itself: the density
    // integrates to one under tanh-sinh quadrature.
    let (lo, hi) = cf.support();
    let total = tanh_sinh(|y| cf.density(y).unwrap(), lo, hi);
    assert!(
        (total - 1.0).abs() <= 1e-6,
        "closed-form density integrates to {total}"
    );

    let spec = family_spec(&Family::Hadamard);
    let grid = MomentumGrid::new(1, 2048).unwrap();
    let law = limit_law(&spec, &mixed_at_origin(&spec), &grid).unwrap();
    let cdf = limit_cdf(&law, &[1.0]);
    let gap = sup_gap_continuous(&cdf, |y| cf.cdf(y));
    assert!(gap <= 2e-3, "discretised CDF off by {gap:.3e}");
    println!(
        "criterion 5 (mixed limit CDF vs closed form): PASS (sup gap {gap:.3e}, density integral error {:.3e})",
        (total - 1.0).abs()
    );
}

#[test]
fn criterion_06_scaled_variance_convergence() {
    let exact = 1.0 - SQRT_HALF;
    // Quadrature oracle for the limit variance, independent of both
    // the discretised law and the walk.
    let cf = hadamard_closed_form();
    let (lo, hi) = cf.support();
    let quad = tanh_sinh(|y| y * y * cf.density(y).unwrap(), lo, hi);
    assert!(
        (quad - exact).abs() <= 1e-8,
        "quadrature variance {quad} vs closed form {exact}"
    );

    let spec = family_spec(&Family::Hadamard);
    let ens = mixed_at_origin(&spec);
    let mut rate = 0.0f64;
    let mut err_at_1000 = f64::NAN;
    for n in [100usize, 200, 500, 1000] {
        let grid = run_grid(&spec, &ens, n);
        let dist = evolve_ensemble_spectral(&ens, &spec, n, &grid).unwrap();
        let err = (scaled_moment(&dist, n, 2, &[1.0]) - exact).abs();
        if n == 1000 {
            err_at_1000 = err;
        }
        println!("    n={n}: variance error {err:.6e}, n*err {:.6}", n as f64 * err);
        rate = rate.max(n as f64 * err);
    }
    assert!(err_at_1000 <= 0.01, "variance error at n=1000: {err_at_1000}");
    // The error in fact decays faster than 1/n (the measured maximum
    // of n * err over this schedule is 0.0049, attained at n=100);
    // the bound is pinned at four times that.
    assert!(rate <= 0.02, "n * err reached {rate}");
    println!(
        "criterion 6 (scaled variance converges at rate 1/n): PASS (error at n=1000 is {err_at_1000:.3e}, max n*err {rate:.3})"
    );
}

#[test]
fn criterion_07_kolmogorov_distance_decays() {
    let families = [
        Family::Hadamard,
        Family::Unbiased { phi: 0.3, psi: 0.7 },
        Family::Biased { rho: 0.25 },
    ];
    let grid = MomentumGrid::new(1, 2048).unwrap();
    let mut worst = 0.0f64;
    for family in &families {
        let spec = family_spec(family);
        let ens = mixed_at_origin(&spec);
        let law = limit_law(&spec, &ens, &grid).unwrap();
        let limit = limit_cdf(&law, &[1.0]);
        let ks = |n: usize| {
            let dist = evolve_ensemble_spectral(&ens, &spec, n, &run_grid(&spec, &ens, n)).unwrap();
            kolmogorov_distance(&projected_cdf(&dist, &[1.0], n as f64), &limit)
        };
        let (early, late) = (ks(100), ks(1000));
        println!("    {}: K(100)={early:.4}, K(1000)={late:.4}", spec.label());
        worst = worst.max(late);
        assert!(late <= 0.06, "{}: K(1000) = {late}", spec.label());
        assert!(
            late < early,
            "{}: no decay, K(100)={early}, K(1000)={late}",
            spec.label()
        );
    }
    println!("criterion 7 (Kolmogorov distance decays, three families): PASS (max K(1000) {worst:.4})");
}

#[test]
fn criterion_08_phase_twisted_coin_preserves_the_limit() {
    let m = 1024usize;
    let grid = MomentumGrid::new(1, m).unwrap();
    let spacing = 2.0 * std::f64::consts::PI / m as f64;

    let base = family_spec(&Family::Hadamard);
    let base_law = limit_law(&base, &mixed_at_origin(&base), &grid).unwrap();

    // Phases whose sum is a whole number of grid spacings translate
    // the momentum argument by a lattice vector of the grid, so the
    // discretised law is the same multiset of atoms.
    let twisted = family_spec(&Family::Unbiased {
        phi: 10.0 * spacing,
        psi: 14.0 * spacing,
    });
    let twisted_law = limit_law(&twisted, &mixed_at_origin(&twisted), &grid).unwrap();
    assert_eq!(base_law.atoms().len(), twisted_law.atoms().len());
    let uniform = 1.0 / (2.0 * m as f64);
    for atom in base_law.atoms().iter().chain(twisted_law.atoms()) {
        assert!((atom.weight - uniform).abs() <= 1e-12, "non-uniform weight");
    }
    let gap = max_sorted_gap(
        base_law.atoms().iter().map(|a| a.h[0]).collect(),
        twisted_law.atoms().iter().map(|a| a.h[0]).collect(),
    );
    assert!(gap <= 1e-6, "quantile gap {gap:.3e}");

    // For arbitrary phases the atom sets interleave, but every moment
    // of the law must still agree to spectral accuracy.
    let skew = family_spec(&Family::Unbiased { phi: 0.37, psi: 1.13 });
    let skew_law = limit_law(&skew, &mixed_at_origin(&skew), &grid).unwrap();
    let mut worst_moment = 0.0f64;
    for r in 1..=4u32 {
        let d = (qwalk_core::limit_moment(&skew_law, r, &[1.0])
            - qwalk_core::limit_moment(&base_law, r, &[1.0]))
        .abs();
        worst_moment = worst_moment.max(d);
        assert!(d <= 1e-10, "moment {r} differs by {d:.3e}");
    }
    println!(
        "criterion 8 (phase-twisted coin preserves the limit): PASS (quantile gap {gap:.3e}, max moment difference {worst_moment:.3e})"
    );
}

#[test]
fn criterion_09_planar_walk() {
    let spec = family_spec(&Family::Hadamard2d);

    // (a) Every eigenvalue of the planar one-step matrix is a product
    // of line-walk branches at the rotated momenta (k1 +- k2)/2.
    let grid = MomentumGrid::new(2, 64).unwrap();
    let mut worst_factor = 0.0f64;
    let mut worst_velocity = 0.0f64;
    let mut velocity_nodes = 0usize;
    let g = |arg: f64| line_velocity(0.5, arg, 1.0);
    for idx in 0..grid.num_nodes() {
        let k = grid.node(idx);
        let (kp, km) = (0.5 * (k[0] + k[1]), 0.5 * (k[0] - k[1]));
        let es = eigensystem(&u_of_k(&spec, &k)).unwrap();
        let mut products: Vec<Complex64> = [1.0f64, -1.0]
            .iter()
            .flat_map(|&s| {
                [1.0f64, -1.0]
                    .iter()
                    .map(move |&t| line_lambda(0.5, kp, s) * line_lambda(0.5, km, t))
                    .collect::<Vec<_>>()
            })
            .collect();
        for lambda in es.eigenvalues() {
            let (best, d) = products
                .iter()
                .enumerate()
                .map(|(i, p)| (i, (lambda - p).norm()))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .unwrap();
            worst_factor = worst_factor.max(d);
            assert!(d <= 1e-10, "factorisation off by {d:.3e} at k={k:?}");
            products.swap_remove(best);
        }

        // (b) Velocity vectors against the closed form, away from
        // degeneracies.
        if es.gap() >= 0.1 {
            velocity_nodes += 1;
            let vels = velocity(&es, spec.shifts()).unwrap();
            let mut closed: Vec<[f64; 2]> = [1.0f64, -1.0]
                .iter()
                .flat_map(|&s| {
                    [1.0f64, -1.0]
                        .iter()
                        .map(move |&t| {
                            [
                                0.5 * (s * g(kp) + t * g(km)),
                                0.5 * (s * g(kp) - t * g(km)),
                            ]
                        })
                        .collect::<Vec<_>>()
                })
                .collect();
            for v in &vels {
                let (best, d) = closed
                    .iter()
                    .enumerate()
                    .map(|(i, c)| {
                        (i, (v[0] - c[0]).abs().max((v[1] - c[1]).abs()))
                    })
                    .min_by(|a, b| a.1.total_cmp(&b.1))
                    .unwrap();
                worst_velocity = worst_velocity.max(d);
                assert!(d <= 1e-8, "velocity off by {d:.3e} at k={k:?}");
                closed.swap_remove(best);
            }
        }
    }
    assert!(velocity_nodes > grid.num_nodes() / 2, "gap filter kept too few nodes");

    // (c) Cramer-Wold: projections on the axes and both diagonals all
    // converge to the projected limit law.
    let ens = mixed_at_origin(&spec);
    let law_grid = MomentumGrid::new(2, 256).unwrap();
    let reports = cramer_wold_suite(&spec, &ens, &[100, 500], &law_grid, None).unwrap();
    assert_eq!(reports.len(), 4);
    let mut worst_ks = 0.0f64;
    for report in &reports {
        let (early, late) = (report.rows[0].kolmogorov, report.rows[1].kolmogorov);
        println!(
            "    projection {:?}: K(100)={early:.4}, K(500)={late:.4}",
            report.projection
        );
        worst_ks = worst_ks.max(late);
        assert!(late <= 0.08, "projection {:?}: K(500)={late}", report.projection);
        assert!(
            late < early,
            "projection {:?}: no decay (K(100)={early}, K(500)={late})",
            report.projection
        );
    }
    println!(
        "criterion 9 (planar walk: factorisation {worst_factor:.3e}, velocities {worst_velocity:.3e} on {velocity_nodes} nodes, max projected K(500) {worst_ks:.4}): PASS"
    );
}

#[test]
fn criterion_10a_norm_conserved_over_ten_thousand_steps() {
    let spec = family_spec(&Family::Hadamard);
    let state = point_state(
        &[0],
        &[c64(SQRT_HALF, 0.0), c64(0.0, SQRT_HALF)],
        &spec,
    )
    .unwrap();
    let result = evolve(&state, &spec, 10_000).unwrap();
    let drift = (result.state.norm_sq() - 1.0).abs();
    let mass_drift = (result.distribution.total() - 1.0).abs();
    assert!(drift <= 1e-10, "norm drift {drift:.3e}");
    assert!(mass_drift <= 1e-10, "mass drift {mass_drift:.3e}");
    println!("criterion 10a (norm conserved through 10000 steps): PASS (norm drift {drift:.3e})");
}

#[test]
fn criterion_10b_support_obeys_the_light_cone() {
    // Asymmetric shifts: the cone is [-n, 2n] exactly.
    let spec = WalkSpec::new(
        qwalk_core::coin_family(&Family::Hadamard).unwrap(),
        ShiftSet::new(1, vec![vec![2], vec![-1]]).unwrap(),
        "stretched",
    )
    .unwrap();
    let n = 40;
    let state = point_state(&[0], &[c64(0.6, 0.0), c64(0.0, 0.8)], &spec).unwrap();
    let result = evolve(&state, &spec, n).unwrap();
    assert_eq!(result.state.window().lo(), &[-(n as i64)]);
    assert_eq!(result.state.window().hi(), &[2 * n as i64]);
    for (x, _) in result.distribution.iter() {
        assert!(x[0] >= -(n as i64) && x[0] <= 2 * n as i64);
    }

    let spec2 = family_spec(&Family::Hadamard2d);
    let state2 = point_state(
        &[3, -1],
        &[c64(0.5, 0.0), c64(0.5, 0.0), c64(0.5, 0.0), c64(0.5, 0.0)],
        &spec2,
    )
    .unwrap();
    let n2 = 15;
    let result2 = evolve(&state2, &spec2, n2).unwrap();
    assert_eq!(result2.state.window().lo(), &[3 - n2 as i64, -1 - n2 as i64]);
    assert_eq!(result2.state.window().hi(), &[3 + n2 as i64, -1 + n2 as i64]);
    for (x, _) in result2.distribution.iter() {
        assert!((x[0] - 3).abs() <= n2 as i64 && (x[1] + 1).abs() <= n2 as i64);
    }
    println!("criterion 10b (exact light cone): PASS");
}

#[test]
fn criterion_10c_support_parity() {
    let spec = family_spec(&Family::Hadamard);
    let state = point_state(&[0], &[c64(0.0, 1.0), c64(0.0, 0.0)], &spec).unwrap();
    for n in [4usize, 11] {
        let dist = evolve(&state, &spec, n).unwrap().distribution;
        for (x, p) in dist.iter() {
            assert!(
                (x[0] - n as i64) % 2 == 0,
                "mass {p} at {x:?} violates parity after {n} steps"
            );
        }
    }
    println!("criterion 10c (support parity): PASS");
}

#[test]
fn criterion_10d_global_phase_invariance() {
    let spec = family_spec(&Family::Hadamard);
    let amps = [c64(0.6, 0.0), c64(0.0, 0.8)];
    let theta = 0.7368;
    let phase = Complex64::from_polar(1.0, theta);
    let rotated = [amps[0] * phase, amps[1] * phase];
    let base = evolve(&point_state(&[0], &amps, &spec).unwrap(), &spec, 30)
        .unwrap()
        .distribution;
    let twisted = evolve(&point_state(&[0], &rotated, &spec).unwrap(), &spec, 30)
        .unwrap()
        .distribution;
    assert_eq!(base.len(), twisted.len());
    let mut worst = 0.0f64;
    for (x, p) in base.iter() {
        worst = worst.max((p - twisted.mass_at(x)).abs());
    }
    assert!(worst <= 1e-12, "distributions differ by {worst:.3e}");
    println!("criterion 10d (global phase invariance): PASS (max difference {worst:.3e})");
}
