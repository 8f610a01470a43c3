use thiserror::Error;

/// Errors shared across the solver modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument is outside the documented domain of the operation.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Power iteration did not reach the requested tolerance.
    #[error("power iteration did not converge within {max_iter} iterations (last delta {last_delta:.3e})")]
    NonConvergence { max_iter: usize, last_delta: f64 },

    /// The truncated domain [-L, L] leaks more Gaussian mass than the
    /// tolerance allows.
    #[error("domain [-{domain:.2}, {domain:.2}] too small: tail mass {tail:.3e} exceeds {allowed:.3e}")]
    DomainTooSmall { domain: f64, tail: f64, allowed: f64 },

    /// The fixed-point bracket [1/2, 1] does not contain a sign change,
    /// which signals a broken κ computation.
    #[error("no root in [{lo}, {hi}]: F({lo}) = {f_lo:.3e}, F({hi}) = {f_hi:.3e}")]
    NoRootInBracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    /// A Monte Carlo slope fit saw an empty survival count.
    #[error("degenerate fit: p_hat = 0 at N = {n} ({trials} trials); increase trials or shrink the N range")]
    DegenerateFit { n: u32, trials: u64 },
}
