//! Computable error and coefficient bounds for Chebyshev and Legendre
//! projections, and the Lebesgue constant of the Legendre projection.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::polybasis::jacobi_eval;
use crate::projections::{FunctionSpec, SeriesCoeffs};
use crate::quadrature::cached_rule;
use crate::specfun::BernsteinEllipse;
use crate::{Error, Result};

/// A bound value with the parameters that produced it and, optionally,
/// the measured quantity it is asserted to dominate.
#[derive(Debug, Clone, serde::Serialize)]
pub struct BoundReport {
    pub name: String,
    pub value: f64,
    pub params: BTreeMap<String, f64>,
    pub satisfied_by: Option<Satisfaction>,
}

/// A measured error paired with its margin under the bound.
#[derive(Debug, Clone, serde::Serialize)]
pub struct Satisfaction {
    pub measured: f64,
    /// value − measured; nonnegative (up to grid tolerance) when the
    /// bound holds.
    pub margin: f64,
}

impl BoundReport {
    pub fn new(name: impl Into<String>, value: f64) -> Self {
        BoundReport {
            name: name.into(),
            value,
            params: BTreeMap::new(),
            satisfied_by: None,
        }
    }

    pub fn with_param(mut self, symbol: &str, value: f64) -> Self {
        self.params.insert(symbol.to_string(), value);
        self
    }

    pub fn with_measurement(mut self, measured: f64) -> Self {
        self.satisfied_by = Some(Satisfaction {
            measured,
            margin: self.value - measured,
        });
        self
    }

    /// Whether the recorded measurement sits under the bound, allowing
    /// the given grid tolerance.
    pub fn satisfied(&self, grid_tol: f64) -> Option<bool> {
        self.satisfied_by.as_ref().map(|s| s.margin >= -grid_tol)
    }
}

/// Chebyshev projection bound 2M/(ρⁿ(ρ−1)) for functions analytic and
/// bounded by M inside the Bernstein ellipse with parameter ρ.
pub fn cheb_analytic_bound(m_bound: f64, rho: f64, n: usize) -> Result<f64> {
    if !rho.is_finite() || rho <= 1.0 {
        return Err(Error::domain(format!(
            "cheb_analytic_bound requires rho > 1, got {rho}"
        )));
    }
    Ok(2.0 * m_bound / (rho.powi(n as i32) * (rho - 1.0)))
}

/// Chebyshev projection bound 2V/(πm(n−m)^m) for functions whose m-th
/// derivative has bounded variation V.
pub fn cheb_bv_bound(variation: f64, m: usize, n: usize) -> Result<f64> {
    if n < m + 1 {
        return Err(Error::domain(format!(
            "cheb_bv_bound requires n >= m+1, got n = {n}, m = {m}"
        )));
    }
    let mf = m as f64;
    Ok(2.0 * variation / (std::f64::consts::PI * mf * ((n - m) as f64).powi(m as i32)))
}

/// The k-independent factor D(ρ) = 2 L(ℰ_ρ) M / (π √(ρ²−1)).
fn coeff_bound_factor(e: &BernsteinEllipse, m_bound: f64) -> Result<f64> {
    if !e.rho.is_finite() || e.rho <= 1.0 {
        return Err(Error::domain(format!(
            "Legendre bounds require rho > 1, got {}",
            e.rho
        )));
    }
    Ok(2.0 * e.circumference() * m_bound
        / (std::f64::consts::PI * (e.rho * e.rho - 1.0).sqrt()))
}

/// Legendre coefficient bound: D(ρ)/2 for k = 0 and D(ρ)·k^{1/2}·ρ^{-k}
/// for k ≥ 1.
pub fn leg_coeff_bound(e: &BernsteinEllipse, m_bound: f64, k: usize) -> Result<f64> {
    let d = coeff_bound_factor(e, m_bound)?;
    if k == 0 {
        Ok(0.5 * d)
    } else {
        Ok(d * (k as f64).sqrt() * e.rho.powi(-(k as i32)))
    }
}

/// Legendre projection bound
/// (D(ρ)/ρⁿ)·[(n+1)^{1/2}/(ρ−1) + (n+1)^{-1/2}/(ρ−1)²].
pub fn leg_projection_bound(e: &BernsteinEllipse, m_bound: f64, n: usize) -> Result<f64> {
    let d = coeff_bound_factor(e, m_bound)?;
    let nf = n as f64;
    let rho = e.rho;
    Ok(d / rho.powi(n as i32)
        * ((nf + 1.0).sqrt() / (rho - 1.0) + (nf + 1.0).powf(-0.5) / (rho - 1.0).powi(2)))
}

/// max |f| over the ellipse boundary, sampled at 4096 parameter angles.
/// Requires the function's analytic continuation.
pub fn max_abs_on_ellipse(f: &FunctionSpec, rho: f64) -> Result<f64> {
    let e = BernsteinEllipse::new(rho)?;
    let mut max = 0.0_f64;
    for i in 0..4096 {
        let theta = 2.0 * std::f64::consts::PI * i as f64 / 4096.0;
        let (x, y) = e.boundary_point(theta);
        let v = f
            .complex_eval(Complex64::new(x, y))
            .ok_or_else(|| {
                Error::domain(format!(
                    "function '{}' has no analytic continuation attached",
                    f.label()
                ))
            })?
            .norm();
        if v > max {
            max = v;
        }
    }
    Ok(max)
}

/// Degree cap for the Lebesgue constant computation.
pub const MAX_LEBESGUE_DEGREE: usize = 500;

/// Lebesgue constant Λₙ = ((n+1)/2)·∫|P_n^{(1,0)}| of the Legendre
/// projection, integrating between the isolated real roots of the Jacobi
/// polynomial so each piece is single-signed.
///
/// Grows like 2^{3/2}/√π · n^{1/2} + O(1).
pub fn lebesgue_constant(n: usize) -> Result<f64> {
    if n > MAX_LEBESGUE_DEGREE {
        return Err(Error::domain(format!(
            "lebesgue_constant capped at degree {MAX_LEBESGUE_DEGREE}, got {n}"
        )));
    }
    if n == 0 {
        return Ok(1.0);
    }
    let roots = jacobi10_roots(n)?;
    let mut bounds = Vec::with_capacity(n + 2);
    bounds.push(-1.0);
    bounds.extend_from_slice(&roots);
    bounds.push(1.0);
    let rule = cached_rule(32)?;
    let mut total = 0.0_f64;
    for pair in bounds.windows(2) {
        let piece = rule.integrate(pair[0], pair[1], |x| {
            jacobi_eval(1.0, 0.0, n, x).expect("Jacobi(1,0) recurrence is regular")
        });
        total += piece.abs();
    }
    Ok(0.5 * (n as f64 + 1.0) * total)
}

/// The n real roots of P_n^{(1,0)} in (-1, 1), isolated by a dense scan
/// in the Chebyshev angle and refined by bisection.
fn jacobi10_roots(n: usize) -> Result<Vec<f64>> {
    let eval = |x: f64| jacobi_eval(1.0, 0.0, n, x).expect("Jacobi(1,0) recurrence is regular");
    let scan = (16 * n).max(64);
    let mut roots = Vec::with_capacity(n);
    let mut x_prev = -1.0;
    let mut f_prev = eval(x_prev);
    for i in 1..=scan {
        // Angle-uniform scan: root spacing of Jacobi polynomials is
        // near-uniform in θ, so 16 points per root cannot skip a sign
        // change.
        let theta = std::f64::consts::PI * (1.0 - i as f64 / scan as f64);
        let x = if i == scan { 1.0 } else { theta.cos() };
        let fx = eval(x);
        if f_prev == 0.0 {
            roots.push(x_prev);
        } else if f_prev * fx < 0.0 {
            let (mut lo, mut hi) = (x_prev, x);
            let mut flo = f_prev;
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                let fm = eval(mid);
                if fm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if flo * fm < 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
        x_prev = x;
        f_prev = fx;
    }
    if roots.len() != n {
        return Err(Error::RootIsolation(format!(
            "expected {n} roots of the degree-{n} Jacobi(1,0) polynomial, isolated {}",
            roots.len()
        )));
    }
    Ok(roots)
}

/// Tail sum Σ_{k=n+1} |aₖ| over the available coefficients: an upper
/// bound on the projection error modulo the uncomputed tail, since
/// |Pₖ(x)| ≤ 1.
pub fn tail_sum_bound(coeffs: &SeriesCoeffs, n: usize) -> Result<f64> {
    if coeffs.coeffs.len() <= n + 1 {
        return Err(Error::domain(format!(
            "tail_sum_bound needs more than {} coefficients, got {}",
            n + 1,
            coeffs.coeffs.len()
        )));
    }
    Ok(coeffs.coeffs[n + 1..].iter().map(|c| c.abs()).sum())
}

/// Classical comparison bound (1 + Λₙ)·best_err on the projection error
/// in terms of the best-approximation error.
pub fn projection_vs_best_bound(best_err: f64, n: usize) -> Result<f64> {
    if best_err < 0.0 {
        return Err(Error::domain("best_err must be nonnegative".to_string()));
    }
    Ok((1.0 + lebesgue_constant(n)?) * best_err)
}

/// The classical logarithmic factor (4/π²)·log n + 4 by which the
/// Chebyshev projection error can exceed the best-approximation error.
/// Exposed as a formula only.
pub fn cheb_projection_log_factor(n: usize) -> f64 {
    4.0 / (std::f64::consts::PI * std::f64::consts::PI) * (n as f64).ln() + 4.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bestapprox::remez_best;
    use crate::closedforms::reciprocal_coeff;
    use crate::polybasis::BasisKind;
    use crate::projections::{
        chebyshev_coeffs, legendre_coeffs, max_error, Smoothness,
    };
    use std::f64::consts::PI;

    fn reciprocal_pole() -> FunctionSpec {
        FunctionSpec::new(
            "1/(x-2)",
            Smoothness::Analytic {
                rho_est: 2.0 + 3.0_f64.sqrt(),
            },
            vec![],
            |x: f64| 1.0 / (x - 2.0),
        )
        .unwrap()
        .with_complex(|z| 1.0 / (z - Complex64::new(2.0, 0.0)))
    }

    #[test]
    fn cheb_analytic_bound_values() {
        assert!((cheb_analytic_bound(1.0, 2.0, 3).unwrap() - 0.25).abs() < 1e-15);
        assert!((cheb_analytic_bound(3.0, 2.5, 0).unwrap() - 4.0).abs() < 1e-15);
        assert!(cheb_analytic_bound(1.0, 1.0, 3).is_err());
    }

    #[test]
    fn cheb_analytic_bound_dominates_measured_error() {
        let f = reciprocal_pole();
        let rho = 3.7;
        let m = max_abs_on_ellipse(&f, rho).unwrap();
        let coeffs = chebyshev_coeffs(&f, 30).unwrap();
        for n in (0..=24).step_by(4) {
            let measured = max_error(&f, &coeffs.truncated(n)).unwrap();
            let bound = cheb_analytic_bound(m, rho, n).unwrap();
            assert!(
                measured <= bound,
                "n = {n}: measured {measured} vs bound {bound}"
            );
        }
    }

    #[test]
    fn cheb_bv_bound_values() {
        assert!((cheb_bv_bound(1.0, 1, 3).unwrap() - 1.0 / PI).abs() < 1e-15);
        assert!((cheb_bv_bound(PI, 1, 2).unwrap() - 2.0).abs() < 1e-15);
        assert!(cheb_bv_bound(1.0, 2, 2).is_err());
    }

    #[test]
    fn cheb_bv_bound_dominates_sin_kink_error() {
        let breaks = vec![-PI / 5.0, 0.0, PI / 5.0];
        let f = FunctionSpec::new(
            "|sin(5x)|",
            Smoothness::PiecewiseAnalytic,
            breaks,
            |x: f64| (5.0 * x).sin().abs(),
        )
        .unwrap();
        // Numeric total-variation oracle for f' = 5cos(5x)·sgn(sin 5x).
        let fp = |x: f64| 5.0 * (5.0 * x).cos() * (5.0 * x).sin().signum();
        let mut variation = 0.0_f64;
        let steps = 200_000;
        let mut prev = fp(-1.0 + 1e-12);
        for i in 1..=steps {
            let x = -1.0 + 2.0 * i as f64 / steps as f64;
            let cur = fp(x - 1e-12);
            variation += (cur - prev).abs();
            prev = cur;
        }
        let coeffs = chebyshev_coeffs(&f, 100).unwrap();
        for n in [2_usize, 5, 10, 25, 50, 100] {
            let measured = max_error(&f, &coeffs.truncated(n)).unwrap();
            let bound = cheb_bv_bound(variation, 1, n).unwrap();
            assert!(
                measured <= bound,
                "n = {n}: measured {measured} vs bound {bound} (V = {variation})"
            );
        }
    }

    #[test]
    fn leg_coeff_bound_values_and_domination() {
        let e = BernsteinEllipse::new(2.0).unwrap();
        let d = 2.0 * e.circumference() / (PI * 3.0_f64.sqrt());
        assert!((leg_coeff_bound(&e, 1.0, 0).unwrap() - 0.5 * d).abs() < 1e-13);
        assert!((leg_coeff_bound(&e, 1.0, 4).unwrap() - d * 2.0 / 16.0).abs() < 1e-13);
        assert!(leg_coeff_bound(&BernsteinEllipse::new(1.0).unwrap(), 1.0, 1).is_err());

        // |aₖ| of (x-2)^{-1} under the bound at ρ = 3.7.
        let f = reciprocal_pole();
        let rho = 3.7;
        let m = max_abs_on_ellipse(&f, rho).unwrap();
        let e = BernsteinEllipse::new(rho).unwrap();
        for k in 0..=60 {
            let bound = leg_coeff_bound(&e, m, k).unwrap();
            let actual = reciprocal_coeff(k).abs();
            assert!(actual <= bound, "k = {k}: {actual} vs {bound}");
        }
    }

    #[test]
    fn leg_projection_bound_values() {
        let e = BernsteinEllipse::new(2.0).unwrap();
        let d = 2.0 * e.circumference() / (PI * 3.0_f64.sqrt());
        let got = leg_projection_bound(&e, 1.0, 0).unwrap();
        assert!((got - 2.0 * d).abs() < 1e-12, "{got} vs {}", 2.0 * d);
    }

    #[test]
    fn lebesgue_constant_basics() {
        assert!((lebesgue_constant(0).unwrap() - 1.0).abs() < 1e-12);
        // Monotone increasing in n.
        let mut prev = 1.0;
        for n in 1..=100 {
            let cur = lebesgue_constant(n).unwrap();
            assert!(cur > prev, "n = {n}: {cur} vs {prev}");
            prev = cur;
        }
        assert!(lebesgue_constant(501).is_err());
    }

    #[test]
    fn lebesgue_constant_asymptotics() {
        let expected = 2.0_f64.powf(1.5) / PI.sqrt();
        let got = lebesgue_constant(200).unwrap() / 200.0_f64.sqrt();
        assert!((got - expected).abs() < 0.15, "{got} vs {expected}");
    }

    #[test]
    fn tail_sum_bound_values() {
        let p3 = SeriesCoeffs::new(BasisKind::Legendre, vec![0.0, 0.0, 0.0, 1.0]);
        assert!((tail_sum_bound(&p3, 1).unwrap() - 1.0).abs() < 1e-15);
        let padded = SeriesCoeffs::new(BasisKind::Legendre, vec![2.0, 1.0, 0.0, 0.0]);
        assert_eq!(tail_sum_bound(&padded, 1).unwrap(), 0.0);
        assert!(tail_sum_bound(&p3, 3).is_err());
    }

    #[test]
    fn tail_sum_dominates_measured_endpoint_error() {
        use crate::projections::EndpointSide;
        let f = FunctionSpec::new(
            "(1+x)^(5/2)",
            Smoothness::FractionalEndpoint {
                alpha: 2.5,
                side: EndpointSide::Plus,
            },
            vec![],
            |x: f64| (1.0 + x).powf(2.5),
        )
        .unwrap();
        let all = legendre_coeffs(&f, 600).unwrap();
        for &n in &[5_usize, 15, 40] {
            let measured = max_error(&f, &all.truncated(n)).unwrap();
            let tail = tail_sum_bound(&all, n).unwrap();
            assert!(measured <= tail + 1e-6, "n = {n}");
        }
    }

    #[test]
    fn projection_vs_best_bound_values() {
        assert_eq!(projection_vs_best_bound(0.0, 7).unwrap(), 0.0);
        assert!((projection_vs_best_bound(0.5, 0).unwrap() - 1.0).abs() < 1e-12);
        assert!(projection_vs_best_bound(-1.0, 0).is_err());

        let f = FunctionSpec::new(
            "ln(1.2+x)",
            Smoothness::Analytic { rho_est: 1.86 },
            vec![],
            |x: f64| (1.2 + x).ln(),
        )
        .unwrap();
        let n = 20;
        let measured = max_error(&f, &legendre_coeffs(&f, n).unwrap()).unwrap();
        let best = remez_best(&f, n).unwrap().levelled_error;
        let bound = projection_vs_best_bound(best, n).unwrap();
        assert!(measured <= bound, "{measured} vs {bound}");
    }

    #[test]
    fn bounds_monotone_in_size_parameter() {
        for n in [0_usize, 3, 10] {
            let lo = cheb_analytic_bound(1.0, 2.0, n).unwrap();
            let hi = cheb_analytic_bound(2.5, 2.0, n).unwrap();
            assert!(lo >= 0.0 && hi >= lo);
        }
        let lo = cheb_bv_bound(1.0, 1, 5).unwrap();
        let hi = cheb_bv_bound(4.0, 1, 5).unwrap();
        assert!(lo >= 0.0 && hi >= lo);
        let e = BernsteinEllipse::new(1.7).unwrap();
        for k in 0..6 {
            let lo = leg_coeff_bound(&e, 1.0, k).unwrap();
            let hi = leg_coeff_bound(&e, 3.0, k).unwrap();
            assert!(lo >= 0.0 && hi >= lo);
        }
    }

    #[test]
    fn cheb_log_factor_dominates_measured_ratio() {
        let f = FunctionSpec::new(
            "ln(1.2+x)",
            Smoothness::Analytic { rho_est: 1.86 },
            vec![],
            |x: f64| (1.2 + x).ln(),
        )
        .unwrap();
        for &n in &[5_usize, 12, 20] {
            let t_err = max_error(&f, &chebyshev_coeffs(&f, n).unwrap()).unwrap();
            let best = remez_best(&f, n).unwrap().levelled_error;
            assert!(t_err <= cheb_projection_log_factor(n) * best, "n = {n}");
        }
    }

    #[test]
    fn bound_report_records_margin() {
        let report = BoundReport::new("analytic", 0.25)
            .with_param("rho", 2.0)
            .with_param("M", 1.0)
            .with_measurement(0.2);
        assert_eq!(report.satisfied(1e-10), Some(true));
        let failing = BoundReport::new("analytic", 0.1).with_measurement(0.2);
        assert_eq!(failing.satisfied(1e-10), Some(false));
        assert_eq!(BoundReport::new("x", 1.0).satisfied(1e-10), None);
    }
}
