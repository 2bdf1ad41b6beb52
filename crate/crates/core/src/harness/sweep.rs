//! Degree sweeps comparing the two projections against the minimax
//! approximation, with error ratios and fitted convergence rates.

use rayon::prelude::*;

use crate::bestapprox::remez_best;
use crate::harness::catalog::FunctionCatalogEntry;
use crate::projections::{
    assessment_grid, chebyshev_coeffs, legendre_coeffs, max_error_on, Smoothness,
};
use crate::{Error, Result};

/// Least-squares log-log rate fit.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SlopeFit {
    pub slope: f64,
    /// RMS deviation of log(error) from the fitted line.
    pub residual: f64,
}

/// Per-degree comparison of the Legendre projection, the Chebyshev
/// projection, and the best approximation for one target function.
///
/// `ratio_p` and `ratio_t` are the best-approximation error over the
/// corresponding projection error, so values at or below one mean the
/// best approximation wins; `scaled_ratio_p` is n^{1/2}·ratio_p, the
/// quantity that settles to a constant for analytic targets.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct RateReport {
    pub function_label: String,
    pub degrees: Vec<usize>,
    #[serde(rename = "err_P")]
    pub err_p: Vec<f64>,
    #[serde(rename = "err_T")]
    pub err_t: Vec<f64>,
    #[serde(rename = "err_B")]
    pub err_b: Vec<f64>,
    #[serde(rename = "ratio_P")]
    pub ratio_p: Vec<f64>,
    #[serde(rename = "ratio_T")]
    pub ratio_t: Vec<f64>,
    #[serde(rename = "scaled_ratio_P")]
    pub scaled_ratio_p: Vec<f64>,
    #[serde(rename = "slope_P")]
    pub slope_p: Option<SlopeFit>,
    #[serde(rename = "slope_T")]
    pub slope_t: Option<SlopeFit>,
    #[serde(rename = "slope_B")]
    pub slope_b: Option<SlopeFit>,
    /// Degrees at which the Remez exchange failed to converge; these are
    /// excluded from the data vectors.
    pub remez_failed_degrees: Vec<usize>,
    /// Whether plots of this report should use log-log axes (algebraic
    /// rates) rather than a log error axis alone (geometric rates).
    pub log_log_axes: bool,
}

/// Largest sweep degree.
pub const MAX_SWEEP_DEGREE: usize = 200;

/// Largest sweep degree for targets that are not analytic: the discrete
/// exchange cost grows with degree and the comparison range of interest
/// ends at 100.
pub const MAX_NONSMOOTH_SWEEP_DEGREE: usize = 100;

/// Runs a degree sweep for one catalog entry. Projection coefficients
/// are computed once at the top degree and truncated per n; the minimax
/// polynomial is recomputed per degree (in parallel). A Remez failure at
/// one degree flags that degree and the sweep proceeds.
pub fn sweep(
    entry: &FunctionCatalogEntry,
    n_min: usize,
    n_max: usize,
    stride: usize,
) -> Result<RateReport> {
    if n_min >= n_max || n_max > MAX_SWEEP_DEGREE {
        return Err(Error::domain(format!(
            "sweep requires 0 <= n_min < n_max <= {MAX_SWEEP_DEGREE}, got [{n_min}, {n_max}]"
        )));
    }
    if !matches!(entry.spec.smoothness(), Smoothness::Analytic { .. })
        && n_max > MAX_NONSMOOTH_SWEEP_DEGREE
    {
        return Err(Error::domain(format!(
            "sweeps of non-analytic targets are capped at degree {MAX_NONSMOOTH_SWEEP_DEGREE}, \
             got {n_max} for '{}'",
            entry.spec.label()
        )));
    }
    let stride = stride.max(1);
    let f = &entry.spec;
    let grid = assessment_grid(f.breakpoints());
    let leg = legendre_coeffs(f, n_max)?;
    let cheb = chebyshev_coeffs(f, n_max)?;

    type ErrorRow = (usize, Result<(f64, f64, f64)>);
    let degrees: Vec<usize> = (n_min..=n_max).step_by(stride).collect();
    let rows: Vec<ErrorRow> = degrees
        .par_iter()
        .map(|&n| {
            let row = (|| {
                let err_p = max_error_on(f, &leg.truncated(n), &grid)?;
                let err_t = max_error_on(f, &cheb.truncated(n), &grid)?;
                let err_b = remez_best(f, n)?.levelled_error;
                Ok((err_p, err_t, err_b))
            })();
            (n, row)
        })
        .collect();

    let mut report = RateReport {
        function_label: f.label().to_string(),
        degrees: Vec::new(),
        err_p: Vec::new(),
        err_t: Vec::new(),
        err_b: Vec::new(),
        ratio_p: Vec::new(),
        ratio_t: Vec::new(),
        scaled_ratio_p: Vec::new(),
        slope_p: None,
        slope_t: None,
        slope_b: None,
        remez_failed_degrees: Vec::new(),
        log_log_axes: !matches!(f.smoothness(), Smoothness::Analytic { .. }),
    };
    for (n, row) in rows {
        match row {
            Ok((err_p, err_t, err_b)) => {
                report.degrees.push(n);
                report.err_p.push(err_p);
                report.err_t.push(err_t);
                report.err_b.push(err_b);
                report.ratio_p.push(err_b / err_p);
                report.ratio_t.push(err_b / err_t);
                report.scaled_ratio_p.push((n as f64).sqrt() * err_b / err_p);
            }
            Err(Error::RemezStalled { .. }) => report.remez_failed_degrees.push(n),
            Err(other) => return Err(other),
        }
    }

    // Rates over the top half of the degree window.
    let window = (n_min + (n_max - n_min) / 2, n_max);
    report.slope_p = rate_fit(&report.degrees, &report.err_p, window).ok();
    report.slope_t = rate_fit(&report.degrees, &report.err_t, window).ok();
    report.slope_b = rate_fit(&report.degrees, &report.err_b, window).ok();
    Ok(report)
}

/// Least-squares slope of log(error) against log(n) over the degrees in
/// `window` (inclusive), plus the RMS residual of the fit. Requires at
/// least 5 in-window points and positive errors.
pub fn rate_fit(
    degrees: &[usize],
    errors: &[f64],
    window: (usize, usize),
) -> Result<SlopeFit> {
    if degrees.len() != errors.len() {
        return Err(Error::domain(
            "rate_fit requires matching degree/error lengths",
        ));
    }
    let mut pts: Vec<(f64, f64)> = Vec::new();
    for (&n, &e) in degrees.iter().zip(errors) {
        if n < window.0 || n > window.1 || n == 0 {
            continue;
        }
        if e <= 0.0 {
            return Err(Error::domain(format!(
                "rate_fit requires positive errors, got {e} at n = {n}"
            )));
        }
        pts.push(((n as f64).ln(), e.ln()));
    }
    if pts.len() < 5 {
        return Err(Error::domain(format!(
            "rate_fit needs at least 5 points in the window, got {}",
            pts.len()
        )));
    }
    let count = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    let intercept = (sy - slope * sx) / count;
    let ss: f64 = pts
        .iter()
        .map(|&(x, y)| (y - slope * x - intercept).powi(2))
        .sum();
    Ok(SlopeFit {
        slope,
        residual: (ss / count).sqrt(),
    })
}
