//! Explicit and asymptotic Legendre coefficient formulas for model
//! functions with known singularity structure. These serve as independent
//! oracles against the quadrature pipeline and as inputs to rate studies.
//!
//! Gamma-ratio products are assembled in log space with explicit sign
//! tracking: Γ(α+1−k) alternates sign past its poles and overflows long
//! before the coefficients themselves become uninteresting.

use std::f64::consts::PI;

use crate::polybasis::jacobi_eval;
use crate::projections::EndpointSide;
use crate::specfun::{gauss_2f1, log_gamma};
use crate::{Error, Result};

/// Which closed-form family a coefficient value belongs to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CoeffFamily {
    /// Sharp bound on the |x| coefficients, O(k^{-3/2}).
    AbsBound,
    /// f(x) = (x-2)^{-1}, simple pole at x = 2.
    ReciprocalPole,
    /// f(x) = |x - x0|^alpha, interior fractional singularity.
    InteriorFractional { alpha: f64, x0: f64 },
    /// f(x) = (1 ± x)^alpha, endpoint fractional singularity.
    EndpointFractional { alpha: f64, side: EndpointSide },
}

impl CoeffFamily {
    /// The power-law exponent s in the coefficient asymptotics O(k^s)
    /// (for the reciprocal pole, the power-law factor riding on the
    /// geometric envelope k^{1/2}·(2+√3)^{-k}).
    pub fn asymptotic_order(&self) -> f64 {
        match self {
            CoeffFamily::AbsBound => -1.5,
            CoeffFamily::ReciprocalPole => 0.5,
            CoeffFamily::InteriorFractional { alpha, .. } => -alpha - 0.5,
            CoeffFamily::EndpointFractional { alpha, .. } => -2.0 * alpha - 1.0,
        }
    }
}

/// A coefficient value tagged with its family and decay exponent.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffFormulaResult {
    pub k: usize,
    pub value: f64,
    pub family: CoeffFamily,
    pub asymptotic_order: f64,
}

/// Evaluates the family's formula at index k.
pub fn evaluate(family: CoeffFamily, k: usize) -> Result<CoeffFormulaResult> {
    let value = match family {
        CoeffFamily::AbsBound => abs_coeff_bound(k)?,
        CoeffFamily::ReciprocalPole => reciprocal_coeff(k),
        CoeffFamily::InteriorFractional { alpha, x0 } => {
            interior_fractional_coeff(alpha, x0, k)?
        }
        CoeffFamily::EndpointFractional { alpha, side } => {
            endpoint_fractional_coeff(alpha, side, k)?
        }
    };
    Ok(CoeffFormulaResult {
        k,
        value,
        family,
        asymptotic_order: family.asymptotic_order(),
    })
}

/// Sharp bound |aₖ| ≤ 4/√(π(2k-3)) · (k - 1/2)^{-1} on the Legendre
/// coefficients of |x|, for even k ≥ 2 (odd coefficients vanish by
/// parity).
pub fn abs_coeff_bound(k: usize) -> Result<f64> {
    if k < 2 || !k.is_multiple_of(2) {
        return Err(Error::domain(format!(
            "abs_coeff_bound is defined for even k >= 2, got {k}"
        )));
    }
    let kf = k as f64;
    Ok(4.0 / (PI * (2.0 * kf - 3.0)).sqrt() / (kf - 0.5))
}

/// Legendre coefficient aₖ of f(x) = (x-2)^{-1}:
/// aₖ = [Γ(k+1)Γ(1/2)/Γ(k+1/2)] ₂F₁(k+1, 1/2; k+3/2; (2+√3)^{-2})
///      · (-2)/(2+√3)^{k+1}.
///
/// All aₖ are negative and |aₖ| is strictly decreasing.
pub fn reciprocal_coeff(k: usize) -> f64 {
    let kf = k as f64;
    let z = 2.0 - 3.0_f64.sqrt(); // = 1/(2+√3)
    let hyp = gauss_2f1(kf + 1.0, 0.5, kf + 1.5, z * z)
        .expect("argument (2+√3)^{-2} is far inside the unit disc");
    let log_mag = log_gamma(kf + 1.0).unwrap() - log_gamma(kf + 0.5).unwrap()
        + 0.5 * PI.ln()
        + hyp.ln()
        + 2.0_f64.ln()
        + (kf + 1.0) * z.ln();
    -log_mag.exp()
}

/// Legendre coefficient aₖ of f(x) = |x - x0|^alpha for noninteger
/// alpha > 0 and |x0| < 1:
/// aₖ = (k+1/2) Γ(α+1)Γ(k+1)/Γ(k+α+2)
///      · [(1-x0)^{α+1} C_k(x0) + (-1)^k (1+x0)^{α+1} C_k(-x0)],
/// where C_k is the Jacobi polynomial with parameters (α+1, -α-1).
pub fn interior_fractional_coeff(alpha: f64, x0: f64, k: usize) -> Result<f64> {
    if alpha <= 0.0 || alpha == alpha.round() {
        return Err(Error::domain(format!(
            "interior_fractional_coeff requires noninteger alpha > 0, got {alpha}"
        )));
    }
    if !(-1.0 < x0 && x0 < 1.0) {
        return Err(Error::domain(format!(
            "interior_fractional_coeff requires |x0| < 1, got {x0}"
        )));
    }
    let kf = k as f64;
    let log_ratio =
        log_gamma(alpha + 1.0)? + log_gamma(kf + 1.0)? - log_gamma(kf + alpha + 2.0)?;
    let parity = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let bracket = (1.0 - x0).powf(alpha + 1.0) * jacobi_eval(alpha + 1.0, -alpha - 1.0, k, x0)?
        + parity
            * (1.0 + x0).powf(alpha + 1.0)
            * jacobi_eval(alpha + 1.0, -alpha - 1.0, k, -x0)?;
    Ok((kf + 0.5) * log_ratio.exp() * bracket)
}

/// Legendre coefficient aₖ of f(x) = (1 ± x)^alpha for noninteger
/// alpha > 0 (`Plus` is (1+x)^alpha, `Minus` is (1-x)^alpha):
/// aₖ = (±1)^k 2^α Γ(α+1)² (2k+1) / [Γ(α+1-k) Γ(α+2+k)].
///
/// Past the gamma poles (k > α+1) the reflection form is used:
/// aₖ = -(∓1)^k 2^α sin(απ) Γ(α+1)² (2k+1) Γ(k-α) / [π Γ(k+α+2)],
/// giving a constant-sign tail for (1-x)^α and an alternating tail for
/// (1+x)^α.
pub fn endpoint_fractional_coeff(alpha: f64, side: EndpointSide, k: usize) -> Result<f64> {
    if alpha <= 0.0 || alpha == alpha.round() {
        return Err(Error::domain(format!(
            "endpoint_fractional_coeff requires noninteger alpha > 0, got {alpha}"
        )));
    }
    let kf = k as f64;
    let side_parity = match side {
        EndpointSide::Plus => 1.0,
        EndpointSide::Minus => {
            if k.is_multiple_of(2) {
                1.0
            } else {
                -1.0
            }
        }
    };
    let common = alpha * 2.0_f64.ln() + 2.0 * log_gamma(alpha + 1.0)? + (2.0 * kf + 1.0).ln();
    if alpha + 1.0 - kf > 0.0 {
        let log_mag = common - log_gamma(alpha + 1.0 - kf)? - log_gamma(alpha + 2.0 + kf)?;
        Ok(side_parity * log_mag.exp())
    } else {
        let log_mag = common + log_gamma(kf - alpha)? - PI.ln() - log_gamma(kf + alpha + 2.0)?
            + (alpha * PI).sin().abs().ln();
        let sin_sign = (alpha * PI).sin().signum();
        // -(∓1)^k: alternating for the (1+x)^α tail, constant sign for
        // the (1-x)^α tail.
        let tail_parity = match side {
            EndpointSide::Plus => {
                if k.is_multiple_of(2) {
                    -1.0
                } else {
                    1.0
                }
            }
            EndpointSide::Minus => -1.0,
        };
        Ok(tail_parity * sin_sign * log_mag.exp())
    }
}

/// The k → ∞ limit √π Γ(α+1)/Γ(α+1/2) of the Legendre-to-Chebyshev
/// coefficient ratio aₖ/cₖ for f = (1 ± x)^α; greater than one for
/// every α > 0 and strictly increasing in α.
pub fn leg_cheb_coeff_ratio(alpha: f64) -> Result<f64> {
    if alpha <= 0.0 {
        return Err(Error::domain(format!(
            "leg_cheb_coeff_ratio requires alpha > 0, got {alpha}"
        )));
    }
    Ok((0.5 * PI.ln() + log_gamma(alpha + 1.0)? - log_gamma(alpha + 0.5)?).exp())
}
