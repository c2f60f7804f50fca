//! Step distribution functions and exact Kolmogorov distances.

use crate::state::Distribution;

/// Right-continuous step CDF of a finitely supported law. Jump points
/// are strictly increasing; `cum[i]` is the value just after `xs[i]`.
#[derive(Clone, Debug)]
pub struct StepCdf {
    xs: Vec<f64>,
    cum: Vec<f64>,
}

impl StepCdf {
    /// Builds from weighted samples, merging exactly equal values.
    pub fn from_weighted(pairs: impl IntoIterator<Item = (f64, f64)>) -> StepCdf {
        let mut pairs: Vec<(f64, f64)> = pairs.into_iter().collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut xs: Vec<f64> = Vec::with_capacity(pairs.len());
        let mut cum: Vec<f64> = Vec::with_capacity(pairs.len());
        let mut running = 0.0f64;
        for (x, w) in pairs {
            running += w;
            if xs.last() == Some(&x) {
                *cum.last_mut().unwrap() = running;
            } else {
                xs.push(x);
                cum.push(running);
            }
        }
        StepCdf { xs, cum }
    }

    pub fn jump_points(&self) -> &[f64] {
        &self.xs
    }

    /// Cumulative value just after each jump point, parallel to
    /// `jump_points`.
    pub fn cumulative(&self) -> &[f64] {
        &self.cum
    }

    /// F(y): total mass at or below y.
    pub fn eval(&self, y: f64) -> f64 {
        let idx = self.xs.partition_point(|&x| x <= y);
        if idx == 0 {
            0.0
        } else {
            self.cum[idx - 1]
        }
    }

    /// F(y-): total mass strictly below y.
    pub fn eval_left(&self, y: f64) -> f64 {
        let idx = self.xs.partition_point(|&x| x < y);
        if idx == 0 {
            0.0
        } else {
            self.cum[idx - 1]
        }
    }

    pub fn total(&self) -> f64 {
        self.cum.last().copied().unwrap_or(0.0)
    }
}

/// Exact sup |F - G| for two step CDFs, by sweeping the merged jump
/// points; between jumps both functions are constant, so the sweep
/// attains the supremum.
pub fn kolmogorov_distance(f: &StepCdf, g: &StepCdf) -> f64 {
    let (mut i, mut j) = (0usize, 0usize);
    let (mut fi, mut gj) = (0.0f64, 0.0f64);
    let mut worst = 0.0f64;
    while i < f.xs.len() || j < g.xs.len() {
        let xf = f.xs.get(i).copied().unwrap_or(f64::INFINITY);
        let xg = g.xs.get(j).copied().unwrap_or(f64::INFINITY);
        let x = xf.min(xg);
        while i < f.xs.len() && f.xs[i] == x {
            fi = f.cum[i];
            i += 1;
        }
        while j < g.xs.len() && g.xs[j] == x {
            gj = g.cum[j];
            j += 1;
        }
        worst = worst.max((fi - gj).abs());
    }
    worst
}

/// Exact sup |F - G| of a step CDF against a continuous CDF `g`.
/// The supremum of the difference against a continuous monotone
/// function is attained at a jump, approaching from either side.
pub fn sup_gap_continuous(f: &StepCdf, g: impl Fn(f64) -> f64) -> f64 {
    let mut worst = 0.0f64;
    let mut before = 0.0f64;
    for (x, after) in f.xs.iter().zip(&f.cum) {
        let gy = g(*x);
        worst = worst.max((gy - before).abs()).max((gy - after).abs());
        before = *after;
    }
    worst
}

/// Step CDF of the projection c.X / scale of a lattice distribution.
/// Equal projected values collapse to a single jump; for integer-equal
/// projections the floating projection values coincide bitwise.
pub fn projected_cdf(dist: &Distribution, c: &[f64], scale: f64) -> StepCdf {
    assert_eq!(c.len(), dist.dim(), "projection dimension mismatch");
    StepCdf::from_weighted(dist.iter().map(|(x, p)| {
        let y: f64 = x.iter().zip(c).map(|(&xi, ci)| xi as f64 * ci).sum();
        (y / scale, p)
    }))
}
