//! Exact series engine: the eigenfunction polynomials `g_m` and exponent
//! coefficients `K_n` of the expansion `λ_ρ = Σ_n K_n ρ^n`, computed by the
//! operator recursion
//!
//! ```text
//! g_0 = 1,  K_0 = 1/2,
//! g_m = (1/K_0) (Σ_{j=1}^{m} T^{(j)} g_{m-j} - Σ_{j=1}^{m-1} K_j g_{m-j}),
//! K_n = T^{(0)} g_n,
//! ```
//!
//! where `T^{(0)} p = Σ_i p_i M_i` integrates against the half-line moments
//! and `T^{(j)} p` is the rank-one piece proportional to `x^j`. Everything
//! here is exact rational arithmetic in ℚ[s]; floats appear only at the
//! final series evaluation.

use crate::algebra::{factorial, half_moment, phi_derivative_at_zero, GPoly, PiElement};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

/// Radius within which the series representation is certified to converge.
pub const SERIES_CERTIFIED_RADIUS: f64 = 0.332;

/// `T^{(0)} p = ∫_0^∞ p(y) φ(y) dy`, exactly, via the half-line moments.
pub fn apply_t0(p: &GPoly) -> PiElement {
    let mut acc = PiElement::zero();
    for (i, c) in p.coeffs().iter().enumerate() {
        acc = &acc + &(c * &half_moment(i as u32));
    }
    acc
}

/// `T^{(j)} p` for `j ≥ 1`: the monomial `c_j x^j` with
/// `c_j = (-1)^{j+1} (1/j!) Σ_{k=0}^{min(j-1, deg p)} C(j-1,k) k! p_k φ^{(j-1-k)}(0)`.
///
/// Panics if `j = 0`; the constant piece is `apply_t0`.
pub fn apply_tj(j: u32, p: &GPoly) -> GPoly {
    assert!(j >= 1, "T^(0) is apply_t0; apply_tj needs j >= 1");
    let Some(deg) = p.degree() else {
        return GPoly::zero();
    };
    let k_max = (j as usize - 1).min(deg);
    let mut sum = PiElement::zero();
    let mut binom = BigRational::one(); // C(j-1, k), updated incrementally
    let mut k_fact = BigRational::one(); // k!
    for k in 0..=k_max {
        if k > 0 {
            let kk = BigRational::from_integer(BigInt::from(k));
            binom *= BigRational::from_integer(BigInt::from(j as i64 - k as i64))
                / BigRational::from_integer(BigInt::from(k as i64));
            k_fact *= kk;
        }
        let weight = &binom * &k_fact;
        let contrib = &p.coeff(k).scale(&weight) * &phi_derivative_at_zero(j - 1 - k as u32);
        sum = &sum + &contrib;
    }
    let mut scale = BigRational::new(BigInt::one(), factorial(j as u64));
    if j % 2 == 0 {
        scale = -scale;
    }
    GPoly::monomial(j as usize, sum.scale(&scale))
}

/// Exact table of `K_0..K_max` and `g_0..g_max` plus cached float values.
#[derive(Debug, Clone, Serialize)]
pub struct CoeffTable {
    k: Vec<PiElement>,
    g: Vec<GPoly>,
    #[serde(skip)]
    k_floats: Vec<f64>,
}

impl CoeffTable {
    /// Run the recursion up to `max_order` (inclusive).
    pub fn new(max_order: usize) -> Self {
        compute_table(max_order)
    }

    /// Highest computed order.
    pub fn max_order(&self) -> usize {
        self.k.len() - 1
    }

    /// Exact `K_n`.
    pub fn k(&self, n: usize) -> &PiElement {
        &self.k[n]
    }

    /// All exact `K_n`, index = order.
    pub fn k_all(&self) -> &[PiElement] {
        &self.k
    }

    /// Exact `g_m`.
    pub fn g(&self, m: usize) -> &GPoly {
        &self.g[m]
    }

    /// All exact `g_m`, index = order.
    pub fn g_all(&self) -> &[GPoly] {
        &self.g
    }

    /// `K_n` rounded to f64 (interval-checked evaluation, cached).
    pub fn k_float(&self, n: usize) -> f64 {
        self.k_floats[n]
    }

    /// Truncated series `Σ_{n ≤ order} K_n ρ^n` with a heuristic tail
    /// estimate `|t_order| / (1 - r)`, `r` the last observed term ratio
    /// clamped to [0, 0.9].
    ///
    /// Outside the certified disc `|ρ| < 0.332` a warning goes to stderr;
    /// the value is still returned.
    pub fn eval_lambda(&self, rho: f64, order: usize) -> (f64, f64) {
        assert!(order <= self.max_order(), "table holds only {} orders", self.max_order());
        if rho.abs() >= SERIES_CERTIFIED_RADIUS {
            eprintln!(
                "warning: |rho| = {} is outside the certified convergence radius {}; \
                 series value is a formal truncation",
                rho.abs(),
                SERIES_CERTIFIED_RADIUS
            );
        }
        let mut value = 0.0;
        let mut rho_pow = 1.0;
        let mut terms = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let t = self.k_floats[n] * rho_pow;
            value += t;
            terms.push(t);
            rho_pow *= rho;
        }
        let last = terms[order].abs();
        let tail = if last == 0.0 || rho == 0.0 {
            // At ρ = 0 every later term vanishes identically.
            0.0
        } else {
            let prev = if order >= 1 { terms[order - 1].abs() } else { 0.0 };
            let r = if prev > 0.0 { (last / prev).clamp(0.0, 0.9) } else { 0.9 };
            last / (1.0 - r)
        };
        (value, tail)
    }
}

/// Run the `g`/`K` recursion up to `max_order` (inclusive).
pub fn compute_table(max_order: usize) -> CoeffTable {
    let mut g: Vec<GPoly> = vec![GPoly::one()];
    let mut k: Vec<PiElement> = vec![PiElement::from_ratio(1, 2)];
    let two = BigRational::from_integer(BigInt::from(2));
    for m in 1..=max_order {
        let mut acc = GPoly::zero();
        for j in 1..=m {
            acc = &acc + &apply_tj(j as u32, &g[m - j]);
        }
        for j in 1..m {
            acc = &acc - &g[m - j].scale(&k[j]);
        }
        let g_m = acc.scale_rational(&two); // 1/K_0 = 2
        k.push(apply_t0(&g_m));
        g.push(g_m);
    }
    let k_floats = k.iter().map(PiElement::to_f64).collect();
    CoeffTable { k, g, k_floats }
}

/// One-shot series evaluation: builds the table, then sums. See
/// [`CoeffTable::eval_lambda`] for the tail-estimate convention.
pub fn eval_lambda_series(rho: f64, max_order: usize) -> (f64, f64) {
    CoeffTable::new(max_order).eval_lambda(rho, max_order)
}
