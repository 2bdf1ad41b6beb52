//! Gauss–Legendre rules, singularity-aware composite integration, and the
//! Chebyshev coefficient transform.
//!
//! Rules are immutable and cached by order, so repeated construction in
//! stabilization loops is cheap. Gauss nodes are strictly interior, which
//! the composite integrators rely on: an integrand is never evaluated at a
//! subdivision point, so breakpoints may be genuine singularities.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, Mutex};

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use crate::polybasis::legendre_pair;
use crate::{Error, Result};

/// Compensated (Kahan) accumulator. The coefficient pipelines sum tens of
/// thousands of terms whose total is many orders below the term scale;
/// plain summation would cost several digits there.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    pub fn add(&mut self, value: f64) {
        let y = value - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

/// A Gauss–Legendre rule on [-1, 1]: nodes are the roots of the Legendre
/// polynomial of the given order, weights are positive, and polynomials of
/// degree ≤ 2·order − 1 are integrated exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadRule {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// ∫_a^b f, mapping the reference nodes onto (a, b). All evaluation
    /// points are interior.
    pub fn integrate(&self, a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let mut acc = KahanSum::default();
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc.add(w * f(mid + half * x));
        }
        half * acc.value()
    }
}

/// Largest supported rule order.
pub const MAX_RULE_ORDER: usize = 4096;

static RULE_CACHE: LazyLock<Mutex<HashMap<usize, Arc<QuadRule>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// Cached rule lookup for internal hot paths.
pub(crate) fn cached_rule(order: usize) -> Result<Arc<QuadRule>> {
    if !(1..=MAX_RULE_ORDER).contains(&order) {
        return Err(Error::domain(format!(
            "Gauss-Legendre order must be in [1, {MAX_RULE_ORDER}], got {order}"
        )));
    }
    let mut cache = RULE_CACHE.lock().unwrap();
    if let Some(rule) = cache.get(&order) {
        return Ok(Arc::clone(rule));
    }
    let rule = Arc::new(build_rule(order));
    cache.insert(order, Arc::clone(&rule));
    Ok(rule)
}

/// Gauss–Legendre rule of the given order (node count), 1 ≤ order ≤ 4096.
pub fn gauss_legendre_rule(order: usize) -> Result<QuadRule> {
    Ok((*cached_rule(order)?).clone())
}

/// Newton iteration on Pₙ from the classical cosine initial guesses;
/// nodes converged to 1e-15.
fn build_rule(order: usize) -> QuadRule {
    let n = order;
    let nf = n as f64;
    let mut nodes = vec![0.0_f64; n];
    let mut weights = vec![0.0_f64; n];
    let half = n / 2;
    for i in 0..half {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        // x starts near the i-th root from the negative side.
        let mut x_prev;
        for _ in 0..100 {
            let (p, p_lo) = legendre_pair(n, x);
            let dp = nf * (x * p - p_lo) / (x * x - 1.0);
            x_prev = x;
            x -= p / dp;
            if (x - x_prev).abs() <= 1e-15 {
                break;
            }
        }
        // One polishing step.
        let (p, p_lo) = legendre_pair(n, x);
        let dp = nf * (x * p - p_lo) / (x * x - 1.0);
        x -= p / dp;

        let (_, p_lo) = legendre_pair(n, x);
        let dp = nf * (x * legendre_pair(n, x).0 - p_lo) / (x * x - 1.0);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x.abs();
        nodes[n - 1 - i] = x.abs();
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if !n.is_multiple_of(2) {
        let (_, p_lo) = legendre_pair(n, 0.0);
        let dp = -nf * p_lo; // P'ₙ(0) = n(0·Pₙ − P_{n−1})/(0 − 1)
        nodes[half] = 0.0;
        weights[half] = 2.0 / (dp * dp);
    }
    QuadRule { nodes, weights }
}

fn validate_breakpoints(breakpoints: &[f64]) -> Result<()> {
    for pair in breakpoints.windows(2) {
        if pair[0] >= pair[1] {
            return Err(Error::domain(
                "breakpoints must be strictly increasing".to_string(),
            ));
        }
    }
    if breakpoints
        .iter()
        .any(|&b| !(-1.0 < b && b < 1.0))
    {
        return Err(Error::domain(
            "breakpoints must lie strictly inside (-1, 1)".to_string(),
        ));
    }
    Ok(())
}

fn piece_boundaries(breakpoints: &[f64]) -> Vec<f64> {
    let mut bounds = Vec::with_capacity(breakpoints.len() + 2);
    bounds.push(-1.0);
    bounds.extend_from_slice(breakpoints);
    bounds.push(1.0);
    bounds
}

/// ∫_{-1}^{1} f, split at the given interior breakpoints, one mapped
/// Gauss rule per subinterval. The integrand is never evaluated at a
/// breakpoint or endpoint.
pub fn integrate_composite(
    f: impl Fn(f64) -> f64,
    breakpoints: &[f64],
    order: usize,
) -> Result<f64> {
    validate_breakpoints(breakpoints)?;
    let rule = cached_rule(order)?;
    let bounds = piece_boundaries(breakpoints);
    let mut acc = KahanSum::default();
    for pair in bounds.windows(2) {
        acc.add(rule.integrate(pair[0], pair[1], &f));
    }
    Ok(acc.value())
}

/// Default geometric-grading depth: with factor 1/2 per level, the piece
/// adjacent to a singular boundary has length 2^{-48) of its subinterval
/// and contributes below 1e-13 for any bounded integrand.
pub const DEFAULT_GRADING_DEPTH: usize = 48;

/// Splits [a, b] into geometrically graded pieces clustering toward both
/// ends (factor 1/2 per level).
fn graded_subdivision(a: f64, b: f64, depth: usize) -> Vec<(f64, f64)> {
    let mid = 0.5 * (a + b);
    let mut cuts = Vec::with_capacity(2 * depth + 3);
    cuts.push(a);
    for j in (1..=depth).rev() {
        cuts.push(a + (mid - a) * 0.5_f64.powi(j as i32));
    }
    cuts.push(mid);
    for j in 1..=depth {
        cuts.push(b - (b - a) * 0.5 * 0.5_f64.powi(j as i32));
    }
    cuts.push(b);
    cuts.dedup_by(|x, y| x == y);
    cuts.windows(2).map(|p| (p[0], p[1])).collect()
}

/// Graded pieces of [a, b] at the default depth, for coefficient
/// pipelines that integrate piece by piece.
pub(crate) fn graded_pieces(a: f64, b: f64) -> Vec<(f64, f64)> {
    graded_subdivision(a, b, DEFAULT_GRADING_DEPTH)
}

/// ∫_{-1}^{1} f with geometric grading toward every subinterval boundary
/// (the endpoints ±1 and each breakpoint), for integrands with algebraic
/// singularities of fractional order at those points.
pub fn integrate_graded(
    f: impl Fn(f64) -> f64,
    breakpoints: &[f64],
    order: usize,
    depth: usize,
) -> Result<f64> {
    validate_breakpoints(breakpoints)?;
    let rule = cached_rule(order)?;
    let bounds = piece_boundaries(breakpoints);
    let mut acc = KahanSum::default();
    for pair in bounds.windows(2) {
        for (lo, hi) in graded_subdivision(pair[0], pair[1], depth) {
            acc.add(rule.integrate(lo, hi, &f));
        }
    }
    Ok(acc.value())
}

/// The n+1 Chebyshev–Lobatto points cos(jπ/n), j = 0..n, descending from
/// +1 to -1, generated in a form that is exactly symmetric and hits 0
/// exactly for even n.
pub fn chebyshev_lobatto_points(n: usize) -> Vec<f64> {
    if n == 0 {
        return vec![1.0];
    }
    let nf = n as f64;
    (0..=n)
        .map(|j| {
            let k = nf - 2.0 * j as f64;
            (std::f64::consts::PI * k / (2.0 * nf)).sin()
        })
        .collect()
}

/// Interpolatory Chebyshev coefficients from samples of f at the n+1
/// Chebyshev–Lobatto points cos(jπ/n), j = 0..n (so `samples[0] = f(1)`).
///
/// The returned vector uses the halved-first-term storage convention: the
/// series Σ_k out[k]·T_k(x) evaluates the interpolant directly, and for a
/// polynomial of degree ≤ n the entries equal its Chebyshev projection
/// coefficients exactly. Implemented with an FFT of the even extension
/// (DCT-I); the contract is the values, not the complexity.
pub fn chebyshev_transform(samples: &[f64], n: usize) -> Result<Vec<f64>> {
    if samples.len() != n + 1 {
        return Err(Error::domain(format!(
            "chebyshev_transform expects {} samples for degree {n}, got {}",
            n + 1,
            samples.len()
        )));
    }
    if n == 0 {
        return Ok(vec![samples[0]]);
    }
    let mut buf: Vec<Complex64> = Vec::with_capacity(2 * n);
    buf.extend(samples.iter().map(|&s| Complex64::new(s, 0.0)));
    for j in (1..n).rev() {
        buf.push(Complex64::new(samples[j], 0.0));
    }
    let mut planner = FftPlanner::<f64>::new();
    let fft = planner.plan_fft_forward(2 * n);
    fft.process(&mut buf);
    let scale = 1.0 / n as f64;
    let mut coeffs: Vec<f64> = (0..=n).map(|k| buf[k].re * scale).collect();
    coeffs[0] *= 0.5;
    coeffs[n] *= 0.5;
    Ok(coeffs)
}
