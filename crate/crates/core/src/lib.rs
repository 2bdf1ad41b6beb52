//! Polynomial approximation toolkit for real functions on [-1, 1].
//!
//! The crate computes Legendre and Chebyshev projections, minimax (Remez)
//! best approximations, and the explicit error bounds and closed-form
//! coefficient formulas that govern their convergence rates. A small
//! experiment harness sweeps degrees, measures maximum errors on a shared
//! assessment grid, and fits convergence rates, so the three approximation
//! methods can be compared quantitatively.
//!
//! Module layout:
//!
//! * [`specfun`] — gamma, hypergeometric, and elliptic primitives plus
//!   Bernstein-ellipse geometry.
//! * [`polybasis`] — Legendre, Chebyshev, and Jacobi evaluation, the
//!   Bernstein envelope, and the Legendre Dirichlet kernel.
//! * [`quadrature`] — Gauss–Legendre rules, singularity-aware composite
//!   integration, and the Chebyshev coefficient transform.
//! * [`projections`] — projection coefficients, stable series evaluation,
//!   and max-error measurement on assessment grids.
//! * [`bestapprox`] — discrete Remez exchange with equioscillation
//!   certificates.
//! * [`closedforms`] — explicit Legendre coefficient formulas for model
//!   functions, used as independent oracles.
//! * [`bounds`] — computable error/coefficient bounds and the Lebesgue
//!   constant of the Legendre projection.
//! * [`peano`] — Peano-kernel representation of the projection error.
//! * [`harness`] — test-function catalog, degree sweeps, rate fits, and
//!   CSV/JSON/SVG emission.

pub mod bestapprox;
pub mod bounds;
pub mod closedforms;
pub mod harness;
pub mod peano;
pub mod polybasis;
pub mod projections;
pub mod quadrature;
pub mod specfun;

mod error;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
