//! Special-function primitives: log-gamma, gamma ratios, the Gauss
//! hypergeometric series, the complete elliptic integral of the second
//! kind, and Bernstein-ellipse geometry.
//!
//! Everything here is pure and reentrant. Real arguments only; no
//! analytic continuation is attempted.

use std::f64::consts::PI;

use crate::{Error, Result};

// Lanczos approximation, g = 7, n = 9 (Godfrey/Boost/CPython coefficients).
const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)] // canonical published digits
const LANCZOS_COEFFS: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

/// Natural log of the gamma function for `x > 0`.
///
/// Relative error is below 1e-13 on [0.5, 1e4].
pub fn log_gamma(x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::domain(format!("log_gamma requires x > 0, got {x}")));
    }
    if x < 0.5 {
        // Shift into the Lanczos range: ln Γ(x) = ln Γ(x+1) - ln x.
        return Ok(lanczos_log_gamma(x + 1.0) - x.ln());
    }
    Ok(lanczos_log_gamma(x))
}

fn lanczos_log_gamma(x: f64) -> f64 {
    let z = x - 1.0;
    let mut sum = LANCZOS_COEFFS[0];
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        sum += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + sum.ln()
}

/// The ratio Γ(a)/Γ(b) for positive `a`, `b`, evaluated in log space to
/// avoid overflow of the individual gamma values.
pub fn gamma_ratio(a: f64, b: f64) -> Result<f64> {
    if !a.is_finite() || !b.is_finite() || a <= 0.0 || b <= 0.0 {
        return Err(Error::domain(format!(
            "gamma_ratio requires positive arguments, got ({a}, {b})"
        )));
    }
    Ok((log_gamma(a)? - log_gamma(b)?).exp())
}

/// The normalized gamma-ratio sequence
/// ψ(k) = Γ(k+1)Γ(1/2)/Γ(k+1/2) · k^{-1/2}.
///
/// Strictly decreasing in `k`, starting from ψ(1) = 2 and tending to √π.
pub fn psi_seq(k: u32) -> Result<f64> {
    if k < 1 {
        return Err(Error::domain(format!("psi_seq requires k >= 1, got {k}")));
    }
    let k = f64::from(k);
    Ok(PI.sqrt() * gamma_ratio(k + 1.0, k + 0.5)? / k.sqrt())
}

/// Hard cap on the hypergeometric series length.
const GAUSS_2F1_MAX_TERMS: usize = 10_000;

/// Gauss hypergeometric function ₂F₁(a, b; c; z) by direct series
/// summation for `|z| < 1`.
///
/// The sum terminates once a term falls below 1e-16 of the partial sum.
/// Relative error is below 1e-12 for z ≤ 0.9.
pub fn gauss_2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if z.abs() >= 1.0 {
        return Err(Error::domain(format!(
            "gauss_2f1 series requires |z| < 1, got {z}"
        )));
    }
    if c <= 0.0 && c == c.round() {
        return Err(Error::domain(format!(
            "gauss_2f1 undefined for non-positive integer c = {c}"
        )));
    }
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    for j in 0..GAUSS_2F1_MAX_TERMS {
        let jf = j as f64;
        term *= (a + jf) * (b + jf) / ((c + jf) * (jf + 1.0)) * z;
        sum += term;
        if term == 0.0 || term.abs() < 1e-16 * sum.abs() {
            return Ok(sum);
        }
    }
    Err(Error::Convergence(format!(
        "gauss_2f1({a}, {b}; {c}; {z}) did not converge within {GAUSS_2F1_MAX_TERMS} terms"
    )))
}

/// Complete elliptic integral of the second kind in the modulus
/// convention: E(m) = ∫₀^{π/2} √(1 − m² sin²θ) dθ for m ∈ [0, 1].
///
/// Computed by the arithmetic-geometric mean, so E(0) = π/2 and E(1) = 1
/// are exact. This convention is the one for which the ellipse
/// circumference below satisfies L = 4E(ε)/ε.
pub fn elliptic_e(m: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&m) {
        return Err(Error::domain(format!(
            "elliptic_e requires modulus in [0, 1], got {m}"
        )));
    }
    if m == 1.0 {
        return Ok(1.0);
    }
    let mut a = 1.0_f64;
    let mut b = (1.0 - m * m).sqrt();
    let mut c = m;
    let mut c_sum = 0.5 * c * c; // Σ 2^{j-1} c_j², j = 0 term
    let mut pow2 = 0.5;
    for _ in 0..64 {
        if c.abs() < 1e-17 * a {
            break;
        }
        let an = 0.5 * (a + b);
        let bn = (a * b).sqrt();
        c = 0.5 * (a - b);
        a = an;
        b = bn;
        pow2 *= 2.0;
        c_sum += pow2 * c * c;
    }
    let big_k = PI / (2.0 * a);
    Ok(big_k * (1.0 - c_sum))
}

/// Ellipse with foci at ±1 whose semi-axis lengths sum to the parameter
/// `rho ≥ 1`. The degenerate case ρ = 1 is the interval [-1, 1] itself.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BernsteinEllipse {
    pub rho: f64,
    pub semi_major: f64,
    pub semi_minor: f64,
}

impl BernsteinEllipse {
    /// Builds the ellipse for a given axis-sum parameter.
    pub fn new(rho: f64) -> Result<Self> {
        if !rho.is_finite() || rho < 1.0 {
            return Err(Error::domain(format!(
                "Bernstein ellipse requires rho >= 1, got {rho}"
            )));
        }
        Ok(BernsteinEllipse {
            rho,
            semi_major: 0.5 * (rho + 1.0 / rho),
            semi_minor: 0.5 * (rho - 1.0 / rho),
        })
    }

    /// Boundary point (x, y) at parameter angle θ.
    pub fn boundary_point(&self, theta: f64) -> (f64, f64) {
        (
            self.semi_major * theta.cos(),
            self.semi_minor * theta.sin(),
        )
    }

    /// Circumference L = 4E(ε)/ε with eccentricity ε = 2/(ρ + ρ⁻¹).
    ///
    /// At ρ = 1 this is 4: the degenerate interval traversed twice.
    pub fn circumference(&self) -> f64 {
        let eps = 1.0 / self.semi_major;
        4.0 * elliptic_e(eps).expect("eccentricity is in [0, 1] by construction") / eps
    }

    /// Upper bound 2(ρ + 1/ρ) + 2(π/2 − 1)(ρ − 1/ρ) on the circumference,
    /// an equality at ρ = 1 and asymptotically as ρ → ∞.
    pub fn circumference_upper_bound(&self) -> f64 {
        2.0 * (self.rho + 1.0 / self.rho) + 2.0 * (PI / 2.0 - 1.0) * (self.rho - 1.0 / self.rho)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::gauss_legendre_rule;

    #[test]
    fn log_gamma_pinned_values() {
        assert!(log_gamma(1.0).unwrap().abs() < 1e-14);
        let ln_sqrt_pi = 0.5 * PI.ln();
        assert!((log_gamma(0.5).unwrap() - ln_sqrt_pi).abs() < 1e-14);
        // Γ(11) = 10!
        let ln_10_fact = (3628800.0_f64).ln();
        assert!((log_gamma(11.0).unwrap() - ln_10_fact).abs() < 1e-13 * ln_10_fact);
    }

    #[test]
    fn log_gamma_matches_factorial_ladder() {
        // Independent oracle: ln Γ(n+1) = Σ_{k=1..n} ln k.
        let mut acc = 0.0_f64;
        for n in 1..=170_u32 {
            acc += f64::from(n).ln();
            let got = log_gamma(f64::from(n) + 1.0).unwrap();
            assert!(
                (got - acc).abs() <= 1e-13 * acc.abs(),
                "n = {n}: {got} vs {acc}"
            );
        }
    }

    #[test]
    fn log_gamma_half_integers() {
        // Γ(k + 1/2) = (2k)! √π / (4^k k!), assembled from log factorials.
        let ln_fact = |n: u32| -> f64 { (1..=n).map(|k| f64::from(k).ln()).sum() };
        for k in [1_u32, 5, 10, 40] {
            let expected =
                ln_fact(2 * k) - f64::from(k) * 4.0_f64.ln() - ln_fact(k) + 0.5 * PI.ln();
            let got = log_gamma(f64::from(k) + 0.5).unwrap();
            assert!(
                (got - expected).abs() <= 1e-13 * expected.abs().max(1.0),
                "k = {k}"
            );
        }
    }

    #[test]
    fn log_gamma_rejects_nonpositive() {
        assert!(log_gamma(0.0).is_err());
        assert!(log_gamma(-3.2).is_err());
    }

    #[test]
    fn gamma_ratio_values() {
        // Γ(2)/Γ(3/2) = 2/√π since Γ(3/2) = √π/2.
        let expected = 2.0 / PI.sqrt();
        assert!((gamma_ratio(2.0, 1.5).unwrap() - expected).abs() < 1e-13);
        assert!((gamma_ratio(5.0, 5.0).unwrap() - 1.0).abs() < 1e-14);
        // √π · Γ(k+1)/Γ(k+1/2) at k = 1 equals 2.
        let v = PI.sqrt() * gamma_ratio(2.0, 1.5).unwrap();
        assert!((v - 2.0).abs() < 1e-13);
        assert!(gamma_ratio(-1.0, 2.0).is_err());
    }

    #[test]
    fn psi_seq_pinned_and_monotone() {
        assert!((psi_seq(1).unwrap() - 2.0).abs() < 1e-13);
        // ψ(2) = (2√π / Γ(5/2)) 2^{-1/2} with Γ(5/2) = 3√π/4, i.e. 8/(3√2).
        let expected = 8.0 / (3.0 * 2.0_f64.sqrt());
        assert!((psi_seq(2).unwrap() - expected).abs() < 1e-13);
        // Stirling limit √π, approached to 1e-3 well before k = 1e6.
        assert!((psi_seq(1_000_000).unwrap() - PI.sqrt()).abs() < 1e-3);
        let mut prev = psi_seq(1).unwrap();
        for k in 2..=500 {
            let cur = psi_seq(k).unwrap();
            assert!(cur < prev, "psi not strictly decreasing at k = {k}");
            prev = cur;
        }
        assert!(prev >= PI.sqrt());
        assert!(psi_seq(0).is_err());
    }

    #[test]
    fn gauss_2f1_pinned_values() {
        // ₂F₁(1/2, 1; 1; z) = (1-z)^{-1/2}.
        let expected = (1.0 - 0.25_f64).powf(-0.5);
        assert!((gauss_2f1(0.5, 1.0, 1.0, 0.25).unwrap() - expected).abs() < 1e-13);
        assert_eq!(gauss_2f1(3.7, 0.4, 0.4, 0.0).unwrap(), 1.0);
        // ₂F₁(1, 1/2; 3/2; z²) = atanh(z)/z.
        let z = 2.0 - 3.0_f64.sqrt();
        let expected = z.atanh() / z;
        let got = gauss_2f1(1.0, 0.5, 1.5, z * z).unwrap();
        assert!((got - expected).abs() < 1e-13 * expected, "{got} vs {expected}");
    }

    #[test]
    fn gauss_2f1_binomial_identity() {
        // ₂F₁(a, b; b; z) = (1-z)^{-a}.
        for &a in &[0.5, 1.0, 2.0] {
            for i in 1..=9 {
                let z = 0.1 * f64::from(i);
                let expected = (1.0 - z).powf(-a);
                let got = gauss_2f1(a, 0.75, 0.75, z).unwrap();
                assert!(
                    (got - expected).abs() <= 1e-12 * expected,
                    "a = {a}, z = {z}: {got} vs {expected}"
                );
            }
        }
    }

    #[test]
    fn gauss_2f1_domain_errors() {
        assert!(gauss_2f1(1.0, 1.0, 1.0, 1.0).is_err());
        assert!(gauss_2f1(1.0, 1.0, -2.0, 0.5).is_err());
    }

    #[test]
    fn elliptic_e_endpoints_and_quadrature_oracle() {
        assert!((elliptic_e(0.0).unwrap() - PI / 2.0).abs() < 1e-14);
        assert_eq!(elliptic_e(1.0).unwrap(), 1.0);
        assert!(elliptic_e(-0.1).is_err());
        assert!(elliptic_e(1.1).is_err());
        // Oracle: Gauss quadrature of the defining integral.
        let rule = gauss_legendre_rule(64).unwrap();
        for &m in &[0.1, 0.5, 0.8, 0.95, 0.999] {
            let oracle = rule.integrate(0.0, PI / 2.0, |theta| {
                (1.0 - (m * theta.sin()).powi(2)).sqrt()
            });
            let got = elliptic_e(m).unwrap();
            assert!(
                (got - oracle).abs() <= 1e-12 * oracle,
                "m = {m}: {got} vs {oracle}"
            );
        }
    }

    #[test]
    fn ellipse_geometry_invariants() {
        for &rho in &[1.0, 1.1, 2.0, 5.0, 100.0] {
            let e = BernsteinEllipse::new(rho).unwrap();
            let focal = e.semi_major * e.semi_major - e.semi_minor * e.semi_minor;
            assert!((focal - 1.0).abs() < 1e-14 * e.semi_major.max(1.0).powi(2));
            assert_eq!(e.semi_major + e.semi_minor, rho);
        }
        assert!(BernsteinEllipse::new(0.9).is_err());
    }

    #[test]
    fn circumference_matches_arc_length_oracle() {
        // Oracle: numerical arc length 4∫₀^{π/2} √(a² sin²θ + b² cos²θ) dθ.
        let rule = gauss_legendre_rule(128).unwrap();
        for &rho in &[1.5, 2.0, 5.0] {
            let e = BernsteinEllipse::new(rho).unwrap();
            let (a, b) = (e.semi_major, e.semi_minor);
            let oracle = 4.0
                * rule.integrate(0.0, PI / 2.0, |t| {
                    ((a * t.sin()).powi(2) + (b * t.cos()).powi(2)).sqrt()
                });
            let got = e.circumference();
            assert!(
                (got - oracle).abs() <= 1e-11 * oracle,
                "rho = {rho}: {got} vs {oracle}"
            );
        }
        // Degenerate interval traversed twice.
        let flat = BernsteinEllipse::new(1.0).unwrap();
        assert!((flat.circumference() - 4.0).abs() < 1e-13);
    }

    #[test]
    fn circumference_respects_upper_bound() {
        for &rho in &[1.0, 1.1, 2.0, 5.0, 100.0] {
            let e = BernsteinEllipse::new(rho).unwrap();
            let l = e.circumference();
            let bound = e.circumference_upper_bound();
            assert!(l <= bound + 1e-12 * bound, "rho = {rho}: {l} > {bound}");
            if rho == 1.0 {
                assert!((l - bound).abs() < 1e-10);
            }
        }
        // Asymptotic equality: L(ρ) approaches πρ within 0.5% by ρ = 100.
        let big = BernsteinEllipse::new(100.0).unwrap();
        assert!((big.circumference() - PI * 100.0).abs() < 0.005 * PI * 100.0);
    }
}
