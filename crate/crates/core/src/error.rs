use crate::bestapprox::RemezResult;

/// Errors produced by the approximation pipelines.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument is outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series or iteration failed to converge within its budget.
    #[error("convergence failure: {0}")]
    Convergence(String),

    /// The Remez exchange stalled; the last iterate is attached for
    /// diagnostics.
    #[error("remez exchange did not converge after {iterations} iterations (flatness {flatness:.3e})")]
    RemezStalled {
        iterations: usize,
        flatness: f64,
        last: Box<RemezResult>,
    },

    /// Root isolation for a polynomial failed.
    #[error("root isolation failed: {0}")]
    RootIsolation(String),

    /// File output failed.
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
