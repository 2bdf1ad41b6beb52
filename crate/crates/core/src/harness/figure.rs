//! Pointwise-error tables and figure-data reproduction.

use std::path::{Path, PathBuf};

use crate::bestapprox::remez_best;
use crate::harness::catalog::{catalog, resolve_function, FigureTag};
use crate::harness::emit::{emit, EmitFormat};
use crate::harness::sweep::sweep;
use crate::projections::{assessment_grid, eval_series, legendre_coeffs};
use crate::{Error, Result};

/// Per-grid-point errors of the Legendre projection and the best
/// approximation at one degree, for pointwise-error plots.
#[derive(Debug, Clone, serde::Serialize)]
pub struct PointwiseTable {
    pub function_label: String,
    pub degree: usize,
    pub x: Vec<f64>,
    #[serde(rename = "err_P")]
    pub err_p: Vec<f64>,
    #[serde(rename = "err_B")]
    pub err_b: Vec<f64>,
    /// Location of the largest projection error.
    pub argmax_err_p: f64,
}

/// Builds the pointwise-error table of the degree-n Legendre projection
/// and minimax approximation for a catalog label or expression.
pub fn pointwise_figure(label: &str, n: usize) -> Result<PointwiseTable> {
    if n > crate::bestapprox::MAX_REMEZ_DEGREE {
        return Err(Error::domain(format!(
            "pointwise_figure degree capped at {}, got {n}",
            crate::bestapprox::MAX_REMEZ_DEGREE
        )));
    }
    let f = resolve_function(label)?;
    let grid = assessment_grid(f.breakpoints());
    let leg = legendre_coeffs(&f, n)?;
    let best = remez_best(&f, n)?;
    let mut err_p = Vec::with_capacity(grid.len());
    let mut err_b = Vec::with_capacity(grid.len());
    let mut argmax = grid[0];
    let mut max_p = -1.0_f64;
    for &x in &grid {
        let fx = f.eval(x);
        let ep = (fx - eval_series(&leg, x)?).abs();
        let eb = (fx - eval_series(&best.poly, x)?).abs();
        if ep > max_p {
            max_p = ep;
            argmax = x;
        }
        err_p.push(ep);
        err_b.push(eb);
    }
    Ok(PointwiseTable {
        function_label: f.label().to_string(),
        degree: n,
        x: grid,
        err_p,
        err_b,
        argmax_err_p: argmax,
    })
}

fn sanitize(label: &str) -> String {
    label
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect()
}

/// Reproduces the data behind one comparison figure into `out_dir`:
/// a CSV and an SVG per function (figures 1, 2, 4, 5 are degree sweeps;
/// figure 3 is the pointwise-error exhibit at degrees 50 and 100).
/// Returns the written paths.
pub fn reproduce_figure(id: u8, out_dir: &Path) -> Result<Vec<PathBuf>> {
    let (tag, n_range) = match id {
        1 => (FigureTag::Fig1, (1_usize, 30_usize)),
        2 => (FigureTag::Fig2, (1, 100)),
        3 => (FigureTag::Fig3, (0, 0)),
        4 => (FigureTag::Fig4, (2, 100)),
        5 => (FigureTag::Fig5, (2, 100)),
        other => {
            return Err(Error::domain(format!(
                "figure id must be 1..=5, got {other}"
            )))
        }
    };
    std::fs::create_dir_all(out_dir).map_err(|source| Error::Io {
        path: out_dir.display().to_string(),
        source,
    })?;
    let mut written = Vec::new();
    if tag == FigureTag::Fig3 {
        for n in [50_usize, 100] {
            let table = pointwise_figure("(x-1/2)_+", n)?;
            for format in [EmitFormat::Csv, EmitFormat::Svg] {
                let path = out_dir.join(format!(
                    "fig3_pointwise_n{n}.{}",
                    format.extension()
                ));
                emit(&table, format, &path)?;
                written.push(path);
            }
        }
        return Ok(written);
    }
    for entry in catalog().into_iter().filter(|e| e.figure == tag) {
        let report = sweep(&entry, n_range.0, n_range.1, 1)?;
        let stem = format!("fig{id}_{}", sanitize(entry.spec.label()));
        for format in [EmitFormat::Csv, EmitFormat::Svg] {
            let path = out_dir.join(format!("{stem}.{}", format.extension()));
            emit(&report, format, &path)?;
            written.push(path);
        }
    }
    Ok(written)
}
