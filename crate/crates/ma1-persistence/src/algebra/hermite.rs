//! Probabilists' Hermite polynomials `h_n` with exact integer coefficients.
//!
//! Recurrence: `h_0 = 1`, `h_1 = x`, `h_{n+1} = x·h_n - n·h_{n-1}`.
//! These are orthogonal for the standard Gaussian weight with
//! `∫ h_m h_n φ = n! δ_{mn}`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

/// One Hermite polynomial, stored densely: `coeffs[k]` multiplies `x^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermitePoly {
    n: usize,
    coeffs: Vec<BigInt>,
}

impl HermitePoly {
    /// Build `h_n` by the three-term recurrence.
    pub fn new(n: usize) -> Self {
        let mut prev = vec![BigInt::one()]; // h_0
        if n == 0 {
            return HermitePoly { n, coeffs: prev };
        }
        let mut cur = vec![BigInt::zero(), BigInt::one()]; // h_1 = x
        for m in 1..n {
            // next = x·cur - m·prev
            let mut next = vec![BigInt::zero(); m + 2];
            for (k, c) in cur.iter().enumerate() {
                next[k + 1] += c;
            }
            let m_big = BigInt::from(m);
            for (k, c) in prev.iter().enumerate() {
                next[k] -= &m_big * c;
            }
            prev = cur;
            cur = next;
        }
        HermitePoly { n, coeffs: cur }
    }

    /// Degree (equal to the index `n`).
    pub fn degree(&self) -> usize {
        self.n
    }

    /// Exact coefficients, index = power of `x`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Evaluate at a float (Horner on f64-converted coefficients; fine for
    /// the small degrees used here).
    pub fn eval(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }
}

impl fmt::Display for HermitePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if k == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Values of the orthonormal Hermite functions `ĥ_k = h_k/√(k!)` for
/// `k = 0..=n_max` at `x`, by the normalized recurrence
/// `ĥ_{k+1} = (x·ĥ_k - √k·ĥ_{k-1})/√(k+1)`.
///
/// Stable for moderately large `n_max` where raw `h_k(x)` would overflow.
pub fn hermite_normalized_values(n_max: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(1.0);
    if n_max == 0 {
        return out;
    }
    out.push(x);
    for k in 1..n_max {
        let next = (x * out[k] - (k as f64).sqrt() * out[k - 1]) / ((k + 1) as f64).sqrt();
        out.push(next);
    }
    out
}
