//! Persistence exponent of the Gaussian MA(1) process.
//!
//! For i.i.d. standard normal innovations `ξ` and `X_n = ρ ξ_{n-1} + ξ_n`, the
//! probability that the process stays non-negative decays like
//! `P(X_0 ≥ 0, …, X_N ≥ 0) = λ_ρ^{N + o(N)}`. This crate computes the decay
//! rate `λ_ρ` four independent ways and checks them against each other:
//!
//! * [`coeffs`]: the exact power series `λ_ρ = Σ K_n ρ^n`, with every `K_n`
//!   an exact element of the ring ℚ[s], s = (2π)^{-1/2};
//! * [`spectral`]: collocation plus power iteration on the integral operator
//!   `(T f)(x) = ∫_{-ρx-b}^∞ f(y) φ(y) dy`;
//! * [`kappa`]: the scalar fixed point `λ = Σ_k κ_k λ^{-k}` built from
//!   nested one-dimensional quadratures, plus a Lagrange–Bürmann inversion
//!   and the explicit radius-of-convergence condition;
//! * [`mc`]: seeded Monte Carlo estimates of the finite-`N` probabilities
//!   and a slope fit for the exponent.
//!
//! [`slepian`] maps the discrete-time Slepian-process persistence problem to
//! an MA(1) instance with correlation `ρ̂ ≈ 0.3186` and a shifted barrier.
//!
//! Every major capability has a runnable example under `examples/`:
//!
//! ```text
//! cargo run --release -p ma1-persistence --example coefficient_table
//! cargo run --release -p ma1-persistence --example spectral_solve
//! cargo run --release -p ma1-persistence --example fixed_point
//! cargo run --release -p ma1-persistence --example series_vs_spectral
//! cargo run --release -p ma1-persistence --example monte_carlo
//! cargo run --release -p ma1-persistence --example slepian_reduction
//! cargo run --release -p ma1-persistence --example radius_of_convergence
//! ```
//!
//! The same functionality is scriptable through the thin `ma1-persistence`
//! binary (`coeffs`, `exponent`, `simulate`, `slepian`, `radius`, `validate`
//! subcommands); see [`cli`].

pub mod algebra;
pub mod chebyshev;
pub mod cli;
pub mod coeffs;
pub mod kappa;
pub mod mc;
pub mod quad;
pub mod rootfind;
pub mod slepian;
pub mod special;
pub mod spectral;

mod error;

pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
