//! Gaussian half-moments, density derivatives at zero, monomial norms in
//! the q-weighted Hermite space, and the Mehler kernel.

use super::pi::PiElement;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `n!` as a big integer.
pub(crate) fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}

/// Double factorial `k!!` with the convention `(-1)!! = 1` (and `0!! = 1`).
pub(crate) fn double_factorial(k: i64) -> BigInt {
    assert!(k >= -1, "double factorial needs k >= -1");
    let mut acc = BigInt::one();
    let mut m = k;
    while m > 1 {
        acc *= BigInt::from(m);
        m -= 2;
    }
    acc
}

/// Half-line moment `M_i = ∫_0^∞ y^i φ(y) dy`, exactly:
/// `(i-1)!!/2` for even `i`, `(i-1)!!·s` for odd `i`.
pub fn half_moment(i: u32) -> PiElement {
    let dfact = double_factorial(i as i64 - 1);
    if i % 2 == 0 {
        PiElement::term(0, BigRational::new(dfact, BigInt::from(2)))
    } else {
        PiElement::term(1, BigRational::from_integer(dfact))
    }
}

/// `φ^{(i)}(0)`: zero for odd `i`, `(-1)^{i/2}(i-1)!!·s` for even `i`.
pub fn phi_derivative_at_zero(i: u32) -> PiElement {
    if i % 2 == 1 {
        return PiElement::zero();
    }
    let mut c = BigRational::from_integer(double_factorial(i as i64 - 1));
    if (i / 2) % 2 == 1 {
        c = -c;
    }
    PiElement::term(1, c)
}

/// Exact squared norm of the monomial `x^n` in the Hermite space with
/// weight parameter `q`:
/// `‖x^n‖² = n! Σ_{j=0}^{⌊n/2⌋} n! q^{-(n-2j)} / (2^{2j} j!² (n-2j)!)`.
pub fn monomial_hq_normsq(n: u32, q: &BigRational) -> BigRational {
    assert!(
        q.is_positive() && *q < BigRational::one(),
        "weight parameter must lie in (0,1)"
    );
    let n = n as u64;
    let n_fact = factorial(n);
    let q_inv = q.recip();
    let mut sum = BigRational::zero();
    for j in 0..=(n / 2) {
        let m = n - 2 * j; // power of q^{-1}
        let j_fact = factorial(j);
        let denom = (BigInt::one() << (2 * j as usize)) * (&j_fact * &j_fact) * factorial(m);
        let mut term = BigRational::new(n_fact.clone(), denom);
        for _ in 0..m {
            term *= &q_inv;
        }
        sum += term;
    }
    BigRational::from_integer(n_fact) * sum
}

/// Mehler kernel `(1-q²)^{-1/2} exp(-(q²x² + q²y² - 2qxy)/(2(1-q²)))`,
/// the closed form of `Σ_n q^n ĥ_n(x) ĥ_n(y)`.
pub fn mehler_kernel(q: f64, x: f64, y: f64) -> f64 {
    assert!(q > 0.0 && q < 1.0, "weight parameter must lie in (0,1)");
    let one_m_q2 = 1.0 - q * q;
    let num = q * q * (x * x + y * y) - 2.0 * q * x * y;
    (-num / (2.0 * one_m_q2)).exp() / one_m_q2.sqrt()
}
