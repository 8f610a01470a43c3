//! Polynomials in `x` whose coefficients live in ℚ[s].
//!
//! These carry the exact series coefficients `g_m(x)` of the eigenfunction
//! expansion; degrees stay small (deg `g_m` ≤ m) so dense storage is right.

use super::pi::PiElement;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Sub};

/// Dense polynomial over ℚ[s]: `coeffs[k]` multiplies `x^k`.
/// Canonical form never ends in a zero coefficient (zero poly is empty).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GPoly {
    coeffs: Vec<PiElement>,
}

impl GPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        GPoly { coeffs: Vec::new() }
    }

    /// Constant polynomial `1`.
    pub fn one() -> Self {
        GPoly { coeffs: vec![PiElement::one()] }
    }

    /// Build from coefficients (low degree first); trailing zeros trimmed.
    pub fn from_coeffs(coeffs: Vec<PiElement>) -> Self {
        let mut p = GPoly { coeffs };
        p.trim();
        p
    }

    /// Single term `c·x^k`.
    pub fn monomial(k: usize, c: PiElement) -> Self {
        if c.is_zero() {
            return GPoly::zero();
        }
        let mut coeffs = vec![PiElement::zero(); k + 1];
        coeffs[k] = c;
        GPoly { coeffs }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(PiElement::is_zero) {
            self.coeffs.pop();
        }
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> PiElement {
        self.coeffs.get(k).cloned().unwrap_or_else(PiElement::zero)
    }

    /// Coefficients, low degree first.
    pub fn coeffs(&self) -> &[PiElement] {
        &self.coeffs
    }

    /// Multiply every coefficient by a ring element.
    pub fn scale(&self, c: &PiElement) -> Self {
        if c.is_zero() {
            return GPoly::zero();
        }
        GPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply every coefficient by an exact rational.
    pub fn scale_rational(&self, q: &BigRational) -> Self {
        GPoly::from_coeffs(self.coeffs.iter().map(|a| a.scale(q)).collect())
    }

    /// Evaluate at a float `x` (coefficients via interval-checked eval).
    pub fn eval(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64();
        }
        acc
    }
}

impl Add for &GPoly {
    type Output = GPoly;
    fn add(self, rhs: &GPoly) -> GPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(&self.coeff(k) + &rhs.coeff(k));
        }
        GPoly::from_coeffs(coeffs)
    }
}

impl Sub for &GPoly {
    type Output = GPoly;
    fn sub(self, rhs: &GPoly) -> GPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(&self.coeff(k) - &rhs.coeff(k));
        }
        GPoly::from_coeffs(coeffs)
    }
}

impl fmt::Display for GPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})·x")?,
                _ => write!(f, "({c})·x^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn trim_keeps_canonical_form() {
        let p = GPoly::from_coeffs(vec![
            PiElement::one(),
            PiElement::zero(),
            PiElement::zero(),
        ]);
        assert_eq!(p.degree(), Some(0));
        let z = GPoly::from_coeffs(vec![PiElement::zero(); 4]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
    }

    #[test]
    fn add_sub_round_trip() {
        let a = GPoly::from_coeffs(vec![PiElement::from_ratio(1, 2), PiElement::s_power(1)]);
        let b = GPoly::monomial(3, PiElement::term(2, q(-8, 1)));
        let sum = &a + &b;
        assert_eq!(sum.degree(), Some(3));
        assert_eq!(&sum - &b, a);
        // cancellation trims the degree
        let diff = &sum - &sum;
        assert!(diff.is_zero());
    }

    #[test]
    fn eval_honors_coefficients() {
        // p(x) = 1/2 + 2s·x: at x = 1 this is 1/2 + 2/√(2π)
        let p = GPoly::from_coeffs(vec![
            PiElement::from_ratio(1, 2),
            PiElement::term(1, q(2, 1)),
        ]);
        let s = 1.0 / (2.0 * std::f64::consts::PI).sqrt();
        assert!((p.eval(1.0) - (0.5 + 2.0 * s)).abs() < 1e-15);
        assert!((p.eval(-2.0) - (0.5 - 4.0 * s)).abs() < 1e-15);
    }

    #[test]
    fn scale_by_ring_element() {
        let p = GPoly::from_coeffs(vec![PiElement::one(), PiElement::s_power(1)]);
        let scaled = p.scale(&PiElement::s_power(1));
        assert_eq!(scaled.coeff(0), PiElement::s_power(1));
        assert_eq!(scaled.coeff(1), PiElement::s_power(2));
        assert!(p.scale(&PiElement::zero()).is_zero());
    }

    #[test]
    fn serde_round_trip() {
        let p = GPoly::from_coeffs(vec![PiElement::from_ratio(1, 2), PiElement::s_power(1)]);
        let j = serde_json::to_string(&p).unwrap();
        let back: GPoly = serde_json::from_str(&j).unwrap();
        assert_eq!(back, p);
    }
}
