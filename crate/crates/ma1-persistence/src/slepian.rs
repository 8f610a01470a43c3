//! Reduction of the Slepian process to the two-parameter family
//!
//! The stationary Gaussian process S_t = B_{t+1} - B_t has triangular
//! covariance (1-|t|)_+, and its one-interval barrier probability F_1 has a
//! closed form. Sampling S at integer times gives a Gaussian sequence whose
//! lag-one correlation matches an MA(1) process with weight ρ̂, so the
//! long-horizon decay of P(S_t ≤ a on [0, N]) is governed by the exponent
//! at (ρ̂, b) with b determined by the barrier a. This module evaluates the
//! closed forms and solves for the reduced parameters.

use crate::quad::adaptive_quad;
use crate::rootfind::newton_bisect;
use crate::special::{norm_cdf, norm_cdf_inv, phi};
use crate::{Error, Result};
use serde::Serialize;
use std::f64::consts::PI;

/// Parameters of the reduced problem for barrier `a`.
///
/// `s`, `rho_hat` and `f2_ahat` depend only on the process; `f1_a` and `b`
/// move with the barrier. `b = 0` exactly when `a` is the median `a_hat`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SlepianParams {
    /// Barrier level for the Slepian process.
    pub a: f64,
    /// Median of the one-interval supremum: F_1(a_hat) = 1/2.
    pub a_hat: f64,
    /// One-interval probability F_1(a).
    pub f1_a: f64,
    /// Two-interval probability F_2 evaluated at a_hat.
    pub f2_ahat: f64,
    /// Lag-one correlation of the sampled sequence, -cos(2π F_2(a_hat)).
    pub s: f64,
    /// Moving-average weight with s = rho_hat/(1+rho_hat²), the root in (-1,1).
    pub rho_hat: f64,
    /// Threshold of the reduced problem, Φ⁻¹(F_1(a))·√(1+rho_hat²).
    pub b: f64,
}

/// One-interval barrier probability P(S_t ≤ a for t ∈ [0,1]):
/// Φ(a)² − φ(a)(aΦ(a) + φ(a)), clamped to [0, 1].
pub fn slepian_f1(a: f64) -> f64 {
    let (cdf, pdf) = (norm_cdf(a), phi(a));
    (cdf * cdf - pdf * (a * cdf + pdf)).clamp(0.0, 1.0)
}

/// Derivative of [`slepian_f1`]: φ(a)·((1+a²)Φ(a) + aφ(a)).
pub fn slepian_f1_prime(a: f64) -> f64 {
    let (cdf, pdf) = (norm_cdf(a), phi(a));
    pdf * ((1.0 + a * a) * cdf + a * pdf)
}

/// Median barrier: the root of F_1(a) = 1/2 on [0, 5].
pub fn solve_a_hat(tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tol = {tol} must be positive")));
    }
    let f = |a: f64| slepian_f1(a) - 0.5;
    newton_bisect(f, slepian_f1_prime, 0.0, 5.0, tol, 200).ok_or(Error::NoRootInBracket {
        lo: 0.0,
        hi: 5.0,
        f_lo: f(0.0),
        f_hi: f(5.0),
    })
}

/// Two-interval probability at the median barrier:
///
/// ```text
/// F_2(â) = Φ(â) − Φ³(â)
///        − (1/√2)∫_0^∞ Φ(â−y) φ(√2 y) (Φ(√2 y) − 1/2) dy
///        + (φ²(â)/2)(Φ(â)(â²+1) + â φ(â))
///        + ∫_0^∞ Φ²(â−y) φ(y+â) dy,
/// ```
///
/// with both integrals truncated at y = â + 10, far past where their
/// Gaussian factors underflow the tolerance.
pub fn slepian_f2_ahat(a_hat: f64, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tol = {tol} must be positive")));
    }
    let cut = a_hat + 10.0;
    let sqrt2 = std::f64::consts::SQRT_2;
    let i1 = adaptive_quad(
        |y| norm_cdf(a_hat - y) * phi(sqrt2 * y) * (norm_cdf(sqrt2 * y) - 0.5),
        0.0,
        cut,
        tol / 2.0,
    );
    let i2 = adaptive_quad(
        |y| {
            let c = norm_cdf(a_hat - y);
            c * c * phi(y + a_hat)
        },
        0.0,
        cut,
        tol / 2.0,
    );
    if i1.err_estimate + i2.err_estimate > tol {
        return Err(Error::NonConvergence {
            max_iter: 0,
            last_delta: i1.err_estimate + i2.err_estimate,
        });
    }
    let (cdf, pdf) = (norm_cdf(a_hat), phi(a_hat));
    Ok(cdf - cdf * cdf * cdf - i1.value / sqrt2
        + 0.5 * pdf * pdf * (cdf * (a_hat * a_hat + 1.0) + a_hat * pdf)
        + i2.value)
}

/// Reduced parameters for barrier `a`: solves for the median, evaluates
/// F_2 there, and maps the lag-one correlation to the MA(1) weight.
pub fn slepian_params(a: f64, tol: f64) -> Result<SlepianParams> {
    if !a.is_finite() {
        return Err(Error::InvalidArgument(format!("barrier a = {a} must be finite")));
    }
    let a_hat = solve_a_hat(tol)?;
    let f2_ahat = slepian_f2_ahat(a_hat, tol)?;
    let s = -(2.0 * PI * f2_ahat).cos();
    // smaller root of s·ρ² − ρ + s = 0, the one inside (-1, 1)
    let rho_hat = (1.0 - (1.0 - 4.0 * s * s).sqrt()) / (2.0 * s);
    let f1_a = slepian_f1(a);
    let b = norm_cdf_inv(f1_a) * (1.0 + rho_hat * rho_hat).sqrt();
    Ok(SlepianParams { a, a_hat, f1_a, f2_ahat, s, rho_hat, b })
}
