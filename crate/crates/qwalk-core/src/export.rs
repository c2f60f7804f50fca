//! Deterministic text serialisation of results: CSV and JSON builders
//! plus atomic file writes.

use std::fs;
use std::io::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::cdf::StepCdf;
use crate::convergence::ConvergenceReport;
use crate::spectral::LimitLaw;
use crate::state::Distribution;

/// Shortest decimal representation that parses back to the same f64,
/// with negative zero normalised to `0`.
pub fn fmt_f64(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v}")
}

/// Writes `contents` to `path` through a sibling temporary file and an
/// atomic rename, creating parent directories as needed. Readers never
/// observe a half-written file.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = std::path::PathBuf::from(tmp);
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)
}

/// Pretty JSON for any serialisable value, with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("value serialises to JSON");
    s.push('\n');
    s
}

/// CSV of a position distribution: `x_1,..,x_d,probability`, one row
/// per support point in lexicographic position order.
pub fn distribution_csv(dist: &Distribution) -> String {
    let d = dist.dim();
    let mut out = String::new();
    for i in 1..=d {
        out.push_str(&format!("x_{i},"));
    }
    out.push_str("probability\n");
    for (x, p) in dist.iter() {
        for xi in x {
            out.push_str(&format!("{xi},"));
        }
        out.push_str(&fmt_f64(p));
        out.push('\n');
    }
    out
}

/// CSV of a limit law's atoms: momentum node, 1-based branch index,
/// velocity components, and weight, in node-major branch-inner order.
pub fn limit_law_csv(law: &LimitLaw) -> String {
    let d = law.dim();
    let mut out = String::new();
    for i in 1..=d {
        out.push_str(&format!("k_{i},"));
    }
    out.push_str("branch,");
    for i in 1..=d {
        out.push_str(&format!("h_{i},"));
    }
    out.push_str("weight\n");
    for atom in law.atoms() {
        for ki in &atom.k {
            out.push_str(&fmt_f64(*ki));
            out.push(',');
        }
        out.push_str(&format!("{},", atom.branch + 1));
        for hi in &atom.h {
            out.push_str(&fmt_f64(*hi));
            out.push(',');
        }
        out.push_str(&fmt_f64(atom.weight));
        out.push('\n');
    }
    out
}

/// CSV of a step CDF: `y,F`, one row per jump point, where `F` is the
/// value just after the jump.
pub fn cdf_csv(cdf: &StepCdf) -> String {
    let mut out = String::from("y,F\n");
    for (x, c) in cdf.jump_points().iter().zip(cdf.cumulative()) {
        out.push_str(&fmt_f64(*x));
        out.push(',');
        out.push_str(&fmt_f64(*c));
        out.push('\n');
    }
    out
}

/// CSV of a convergence report. The closed-form column appears only
/// when at least one row carries it.
pub fn report_csv(report: &ConvergenceReport) -> String {
    let with_cf = report
        .rows
        .iter()
        .any(|r| r.closed_form_kolmogorov.is_some());
    let mut out = String::from("n,kolmogorov,moment_err_1,moment_err_2,moment_err_3,moment_err_4");
    if with_cf {
        out.push_str(",closed_form_kolmogorov");
    }
    out.push('\n');
    for row in &report.rows {
        out.push_str(&format!("{},", row.n));
        out.push_str(&fmt_f64(row.kolmogorov));
        for err in row.moment_err {
            out.push(',');
            out.push_str(&fmt_f64(err));
        }
        if with_cf {
            out.push(',');
            if let Some(cf) = row.closed_form_kolmogorov {
                out.push_str(&fmt_f64(cf));
            }
        }
        out.push('\n');
    }
    out
}

/// One row of a scaled-moment table.
#[derive(Clone, Debug, Serialize)]
pub struct MomentRow {
    /// Moment order r.
    pub order: u32,
    /// Step count.
    pub n: usize,
    /// Scaled moment E[(c.X/n)^r] of the finite-time walk.
    pub scaled: f64,
    /// Corresponding moment of the discretised limit law.
    pub limit: f64,
    /// Absolute difference of the two.
    pub error: f64,
}

/// Scaled-moment table for one walk and one projection direction.
#[derive(Clone, Debug, Serialize)]
pub struct MomentTable {
    /// Label of the walk.
    pub spec: String,
    /// Projection direction.
    pub projection: Vec<f64>,
    /// Rows ordered by (order, n).
    pub rows: Vec<MomentRow>,
}

/// CSV of a scaled-moment table: `order,n,scaled,limit,error`.
pub fn moments_csv(table: &MomentTable) -> String {
    let mut out = String::from("order,n,scaled,limit,error\n");
    for row in &table.rows {
        out.push_str(&format!("{},{},", row.order, row.n));
        out.push_str(&fmt_f64(row.scaled));
        out.push(',');
        out.push_str(&fmt_f64(row.limit));
        out.push(',');
        out.push_str(&fmt_f64(row.error));
        out.push('\n');
    }
    out
}
