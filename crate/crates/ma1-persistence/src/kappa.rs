//! The scalar route to the persistence exponent: nested-quadrature values
//! of κ_k(ρ), the fixed-point equation λ = Σ_k κ_k λ^{-k}, the
//! Lagrange–Bürmann re-expansion, and the numeric radius-of-convergence
//! condition.
//!
//! `kappa` returns the non-negative chain probability
//! ℙ(0 ≤ ξ_0 ≤ ρξ_1 ≤ … ≤ ρ^k ξ_k). As iterated integrals these
//! probabilities enter the eigenvalue equation with an orientation sign
//! (-1)^⌊k/2⌋ (two of every four inner limits are descending);
//! `kappa_oriented` restores it, and the fixed-point and Bürmann solvers
//! consume the oriented values. Solving with unsigned values shifts λ by
//! ~1e-3 near ρ = 0.3, far outside the cross-method tolerances.

use crate::chebyshev::{lobatto_nodes, Barycentric};
use crate::quad::adaptive_quad;
use crate::rootfind::newton_bisect;
use crate::{Error, Result};
use serde::Serialize;

/// Tail bound for κ_k: `ρ^{k(k+1)/2} / (2^{k+1} π^{k/2} Γ(k/2+1))`.
pub fn kappa_bound(k: u32, rho: f64) -> f64 {
    let kk = k as f64;
    let exp = kk * (kk + 1.0) / 2.0;
    rho.powf(exp)
        / (2f64.powi(k as i32 + 1)
            * std::f64::consts::PI.powf(kk / 2.0)
            * libm::tgamma(kk / 2.0 + 1.0))
}

fn check_kappa_args(rho: f64, tol: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&rho) {
        return Err(Error::InvalidArgument(format!("rho = {rho} outside [0, 1]")));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tol = {tol} must be positive")));
    }
    Ok(())
}

/// Smallest U with `e^{-U²/2} U^k / k! < tol/10`, the outer truncation of
/// the chain integral.
fn outer_cutoff(k: u32, tol: f64) -> f64 {
    let log_k_fact: f64 = (1..=k as u64).map(|i| (i as f64).ln()).sum();
    let mut u = 1.0f64;
    while u < 42.0 {
        let log_rem = -u * u / 2.0 + k as f64 * u.ln() - log_k_fact;
        if log_rem < (tol / 10.0).ln() {
            return u;
        }
        u += 0.25;
    }
    42.0
}

const TAB_NODES: usize = 48;

/// Chain probability `κ_k(ρ) = ℙ(0 ≤ ξ_0 ≤ ρξ_1 ≤ … ≤ ρ^k ξ_k)` with an
/// error report, by nested one-dimensional quadrature: each level is
/// tabulated on a Chebyshev grid over [0, U] and interpolated into the
/// next level's integrand. Levels share the budget `tol/(k+1)`.
pub fn kappa(k: u32, rho: f64, tol: f64) -> Result<(f64, f64)> {
    check_kappa_args(rho, tol)?;
    if k == 0 {
        return Ok((0.5, 0.0));
    }
    if rho == 0.0 {
        return Ok((0.0, 0.0));
    }
    let u_max = outer_cutoff(k, tol);
    let budget = tol / (k as f64 + 1.0);
    let nodes = lobatto_nodes(TAB_NODES + 1, 0.0, u_max);

    // Innermost level: I_k(t) = ∫_0^t exp(-(ρ^k u)²/2) du.
    let mut level_errs = Vec::with_capacity(k as usize);
    let sigma_k = rho.powi(k as i32);
    let (values, err) = tabulate(&nodes, budget, |u| (-0.5 * (sigma_k * u).powi(2)).exp());
    level_errs.push(err);
    let mut inner = Barycentric::on_lobatto(0.0, u_max, values);

    // Levels k-1 .. 1: I_j(t) = ∫_0^t exp(-(ρ^j u)²/2) I_{j+1}(u) du.
    for j in (1..k).rev() {
        let sigma = rho.powi(j as i32);
        let (values, err) = tabulate(&nodes, budget, |u| {
            (-0.5 * (sigma * u).powi(2)).exp() * inner.eval(u)
        });
        level_errs.push(err);
        inner = Barycentric::on_lobatto(0.0, u_max, values);
    }

    // Outer integral against the standard Gaussian factor.
    let outer = adaptive_quad(|u| (-0.5 * u * u).exp() * inner.eval(u), 0.0, u_max, budget);

    let prefactor = rho.powf(k as f64 * (k as f64 + 1.0) / 2.0)
        * (2.0 * std::f64::consts::PI).powf(-(k as f64 + 1.0) / 2.0);
    // Error propagation: level j's error is amplified by at most U per
    // enclosing level, and the Gaussian outer integral contributes √(π/2).
    let mut inner_err = 0.0;
    for (depth, e) in level_errs.iter().rev().enumerate() {
        // depth 0 is level 1 (outermost tabulated level)
        inner_err += e * u_max.powi(depth as i32);
    }
    let err = prefactor
        * (outer.err_estimate
            + (std::f64::consts::PI / 2.0).sqrt() * inner_err
            + tol / 10.0);
    Ok((prefactor * outer.value, err))
}

/// Incremental tabulation of `t ↦ ∫_0^t f(u) du` at ascending nodes;
/// returns the node values and the summed quadrature error estimate.
fn tabulate<F: FnMut(f64) -> f64>(nodes: &[f64], budget: f64, mut f: F) -> (Vec<f64>, f64) {
    let per_segment = budget / nodes.len() as f64;
    let mut values = Vec::with_capacity(nodes.len());
    values.push(0.0);
    let mut err = 0.0;
    for w in nodes.windows(2) {
        let piece = adaptive_quad(&mut f, w[0], w[1], per_segment);
        values.push(values.last().unwrap() + piece.value);
        err += piece.err_estimate;
    }
    (values, err)
}

/// κ_k with the orientation sign `(-1)^⌊k/2⌋` of the iterated integral
/// restored; the eigenvalue equation `λ = Σ_k κ_k λ^{-k}` holds for these.
pub fn kappa_oriented(k: u32, rho: f64, tol: f64) -> Result<(f64, f64)> {
    let (value, err) = kappa(k, rho, tol)?;
    if (k / 2) % 2 == 1 {
        Ok((-value, err))
    } else {
        Ok((value, err))
    }
}

/// Tabulated κ values at one ρ.
#[derive(Debug, Clone, Serialize)]
pub struct KappaTable {
    /// Correlation parameter (non-negative branch).
    pub rho: f64,
    /// Rows (k, value, err_estimate); `value` is the non-negative chain
    /// probability.
    pub entries: Vec<(u32, f64, f64)>,
    /// Largest k tabulated.
    pub k_max: u32,
}

impl KappaTable {
    /// Evaluate κ_0..κ_{k_max} at the given quadrature tolerance.
    pub fn build(rho: f64, k_max: u32, tol: f64) -> Result<Self> {
        let mut entries = Vec::with_capacity(k_max as usize + 1);
        for k in 0..=k_max {
            let (value, err) = kappa(k, rho, tol)?;
            entries.push((k, value, err));
        }
        Ok(KappaTable { rho, entries, k_max })
    }
}

/// Smallest truncation K with `Σ_{k>K} bound_k 2^k < tol/10` (the series
/// tail against the worst case λ = 1/2). Terminates for every ρ ≤ 1
/// because the bound decays super-geometrically.
pub fn truncation_order(rho: f64, tol: f64) -> u32 {
    let tail_from = |k0: u32| -> f64 {
        let mut sum = 0.0;
        for k in k0..k0 + 400 {
            let t = kappa_bound(k, rho) * 2f64.powi(k as i32);
            sum += t;
            if t < f64::MIN_POSITIVE {
                break;
            }
        }
        sum
    };
    let mut k = 1u32;
    while tail_from(k + 1) >= tol / 10.0 {
        k += 1;
        assert!(k < 500, "truncation search runaway");
    }
    k
}

/// Solve the scalar eigenvalue equation `λ = Σ_{k≤K} κ_k λ^{-k}` for the
/// largest root in [1/2, 1]; returns (λ, K).
pub fn lambda_fixed_point(rho: f64, tol: f64) -> Result<(f64, u32)> {
    check_kappa_args(rho, tol)?;
    if rho == 0.0 {
        return Ok((0.5, 0));
    }
    let k_used = truncation_order(rho, tol);
    // λ^{-k} ≤ 2^k on the bracket, so scale each κ's quadrature budget down
    // by 2^k to keep the summed perturbation of F below tol/10.
    let mut coeff = Vec::with_capacity(k_used as usize + 1);
    for k in 0..=k_used {
        let k_tol = tol / (10.0 * (k_used as f64 + 1.0) * 2f64.powi(k as i32));
        let (v, _) = kappa_oriented(k, rho, k_tol.max(1e-15))?;
        coeff.push(v);
    }
    let f = |lambda: f64| -> f64 {
        let mut acc = 0.0;
        for (k, c) in coeff.iter().enumerate() {
            acc += c * lambda.powi(-(k as i32));
        }
        acc - lambda
    };
    let df = |lambda: f64| -> f64 {
        let mut acc = -1.0;
        for (k, c) in coeff.iter().enumerate().skip(1) {
            acc -= k as f64 * c * lambda.powi(-(k as i32) - 1);
        }
        acc
    };
    let (lo, hi) = (0.5, 1.0);
    match newton_bisect(f, df, lo, hi, tol / 10.0, 200) {
        Some(root) => Ok((root, k_used)),
        None => Err(Error::NoRootInBracket { lo, hi, f_lo: f(lo), f_hi: f(hi) }),
    }
}

/// Lagrange–Bürmann evaluation of λ with its settling diagnostic.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BuermannEval {
    /// Partial-sum value of λ.
    pub lambda: f64,
    /// Magnitude of the last included order-n term.
    pub last_term: f64,
    /// True when the partial sums settled within 1e-4.
    pub settled: bool,
}

/// Re-expansion of the fixed point by the Lagrange–Bürmann formula:
///
/// ```text
/// λ = 1/2 + Σ_{n=1}^{n_max} ((-1)^{n-1} 2^{n-1} / n!)
///           Σ_{k_1..k_n ∈ [1, k_max]} (Π_j 2^{k_j} κ_{k_j})
///           · Γ(K+n-1)/Γ(K),   K = k_1 + … + k_n,
/// ```
///
/// with the multiple sum enumerated through coefficients of powers of the
/// polynomial `P(z) = Σ_k 2^k κ_k z^k` (oriented κ values).
pub fn lagrange_buermann_lambda(rho: f64, n_max: u32, k_max: u32) -> Result<BuermannEval> {
    if !(rho > 0.0 && rho <= 0.33) {
        return Err(Error::InvalidArgument(format!(
            "rho = {rho} outside the diagnostic range (0, 0.33]"
        )));
    }
    if n_max == 0 || n_max > 12 || k_max == 0 || k_max > 12 {
        return Err(Error::InvalidArgument(format!(
            "n_max = {n_max}, k_max = {k_max} outside the diagnostic scale 1..=12"
        )));
    }
    // p[k] = 2^k κ_k (oriented), k = 1..k_max; p[0] = 0.
    let mut p = vec![0.0; k_max as usize + 1];
    for (k, pk) in p.iter_mut().enumerate().skip(1) {
        let (v, _) = kappa_oriented(k as u32, rho, 1e-13)?;
        *pk = 2f64.powi(k as i32) * v;
    }
    let mut lambda = 0.5;
    let mut last_term = 0.0;
    // power[K] = [z^K] P(z)^n, updated by convolution per order.
    let mut power = vec![0.0; 1];
    power[0] = 1.0;
    let mut n_fact = 1.0;
    for n in 1..=n_max {
        n_fact *= n as f64;
        let mut next = vec![0.0; power.len() + k_max as usize];
        for (i, a) in power.iter().enumerate() {
            if *a == 0.0 {
                continue;
            }
            for (k, b) in p.iter().enumerate().skip(1) {
                next[i + k] += a * b;
            }
        }
        power = next;
        let mut inner = 0.0;
        for (total, c) in power.iter().enumerate().skip(n as usize) {
            // Γ(K+n-1)/Γ(K) = Π_{i=0}^{n-2} (K+i)
            let mut ratio = 1.0;
            for i in 0..n.saturating_sub(1) {
                ratio *= (total as u32 + i) as f64;
            }
            inner += c * ratio;
        }
        let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
        let term = sign * 2f64.powi(n as i32 - 1) / n_fact * inner;
        lambda += term;
        last_term = term.abs();
    }
    Ok(BuermannEval { lambda, last_term, settled: last_term <= 1e-4 })
}

/// Left-hand side of the numeric convergence-radius condition; the series
/// radius exceeds ρ when the returned value is below 1/4.
pub fn radius_condition(rho: f64, k_max: u32) -> Result<f64> {
    let limit = std::f64::consts::FRAC_1_SQRT_2;
    if !(rho > 0.0 && rho < limit) {
        return Err(Error::InvalidArgument(format!(
            "rho = {rho} outside (0, 1/sqrt(2)); the variance ratio must stay positive"
        )));
    }
    let pi = std::f64::consts::PI;
    let mut lhs = ((1.0 + rho) / (1.0 - rho)).ln() / pi;
    let ratio = (1.0 - rho * rho) / (1.0 - 2.0 * rho * rho);
    for k in 2..=k_max {
        let kf = k as f64;
        let fact: f64 = (1..=k as u64).map(|i| i as f64).product();
        lhs += rho.powf(kf * (kf + 1.0) / 2.0)
            * 4f64.powi(k as i32)
            * pi.powf(-(kf + 1.0) / 2.0)
            * libm::tgamma((kf + 1.0) / 2.0)
            * ratio.powf((kf + 1.0) / 2.0)
            / (2.0 * fact);
    }
    Ok(lhs)
}

/// Largest ρ the condition certifies: the crossing of
/// [`radius_condition`] through 1/4, located by bisection to `tol`.
pub fn radius_threshold(k_max: u32, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tol = {tol} must be positive")));
    }
    let (lo, hi) = (0.05, 0.7);
    let f = |rho: f64| radius_condition(rho, k_max).expect("bracket stays in domain") - 0.25;
    crate::rootfind::bisect(f, lo, hi, tol, 200).ok_or(Error::NoRootInBracket {
        lo,
        hi,
        f_lo: f(lo),
        f_hi: f(hi),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::compute_table;
    use crate::spectral::{leading_eigen, GridSpec};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, StandardNormal};

    #[test]
    fn kappa_zero_is_exactly_half() {
        for rho in [0.0, 0.3, 1.0] {
            assert_eq!(kappa(0, rho, 1e-10).unwrap(), (0.5, 0.0));
        }
    }

    #[test]
    fn kappa_at_rho_zero_vanishes() {
        for k in 1..=6 {
            assert_eq!(kappa(k, 0.0, 1e-10).unwrap(), (0.0, 0.0));
        }
    }

    /// Closed form κ_1 = arctan(ρ)/(2π), checked across the ρ range.
    #[test]
    fn kappa_one_matches_arctangent() {
        for i in 1..=9 {
            let rho = i as f64 / 10.0;
            let (v, err) = kappa(1, rho, 1e-12).unwrap();
            let want = rho.atan() / (2.0 * std::f64::consts::PI);
            assert!((v - want).abs() <= 1e-10, "rho={rho}: {v} vs {want}");
            assert!(err >= 0.0 && err.is_finite());
        }
    }

    /// Envelope 0 ≤ κ_k ≤ ρ^{k(k+1)/2}/(2^{k+1} π^{k/2} Γ(k/2+1)).
    #[test]
    fn kappa_stays_inside_its_envelope() {
        for k in 0..=10u32 {
            for i in 1..=9 {
                let rho = i as f64 / 10.0;
                let (v, _) = kappa(k, rho, 1e-9).unwrap();
                let bound = kappa_bound(k, rho);
                assert!(v >= 0.0, "k={k} rho={rho}: {v}");
                assert!(v <= bound * (1.0 + 1e-9) + 1e-15, "k={k} rho={rho}: {v} > {bound}");
            }
        }
    }

    /// Frozen nested-quadrature references at ρ = 0.3 (independently
    /// computed with 50-digit arithmetic).
    #[test]
    fn kappa_frozen_values_at_03() {
        let want = [
            (1, 4.638678953887036e-2),
            (2, 1.004946363793562e-3),
            (3, 5.523647568958163e-6),
            (4, 8.032769656592235e-9),
            (5, 3.169646971589426e-12),
        ];
        for (k, w) in want {
            let (v, _) = kappa(k, 0.3, 1e-13).unwrap();
            assert!((v - w).abs() <= 1e-11 * w.max(1e-10), "k={k}: {v} vs {w}");
        }
    }

    /// Monte Carlo oracle: the chain probability sampled directly.
    #[test]
    fn kappa_consistent_with_direct_simulation() {
        let cases = [(1u32, 0.5f64), (2, 0.6), (3, 0.7), (4, 0.8)];
        let trials = 10_000_000u64;
        for (k, rho) in cases {
            let mut rng = ChaCha8Rng::seed_from_u64(913 + k as u64);
            let mut hits = 0u64;
            let mut xi = vec![0.0f64; k as usize + 1];
            for _ in 0..trials {
                for x in xi.iter_mut() {
                    *x = StandardNormal.sample(&mut rng);
                }
                let mut prev = 0.0;
                let mut scale = 1.0;
                let mut ok = true;
                for &x in &xi {
                    let cur = scale * x;
                    if cur < prev {
                        ok = false;
                        break;
                    }
                    prev = cur;
                    scale *= rho;
                }
                if ok {
                    hits += 1;
                }
            }
            let p_hat = hits as f64 / trials as f64;
            let se = (p_hat * (1.0 - p_hat) / trials as f64).sqrt();
            let (v, _) = kappa(k, rho, 1e-11).unwrap();
            assert!(
                (v - p_hat).abs() <= 3.0 * se,
                "k={k} rho={rho}: kappa {v} vs mc {p_hat} (se {se})"
            );
        }
    }

    #[test]
    fn kappa_rejects_bad_arguments() {
        assert!(kappa(1, -0.1, 1e-8).is_err());
        assert!(kappa(1, 1.1, 1e-8).is_err());
        assert!(kappa(1, 0.5, 0.0).is_err());
    }

    #[test]
    fn table_holds_bounds_and_exact_head() {
        let t = KappaTable::build(0.3, 5, 1e-10).unwrap();
        assert_eq!(t.entries[0], (0, 0.5, 0.0));
        assert_eq!(t.k_max, 5);
        for &(k, v, err) in &t.entries {
            assert!(v >= 0.0 && v <= kappa_bound(k, 0.3) + 1e-15);
            assert!(err >= 0.0);
        }
    }

    #[test]
    fn truncation_selection_terminates() {
        for rho in [0.1, 0.5, 0.9, 1.0] {
            let k = truncation_order(rho, 1e-12);
            assert!(k < 120, "rho={rho}: K={k}");
        }
        // and grows with rho
        assert!(truncation_order(0.9, 1e-10) >= truncation_order(0.1, 1e-10));
    }

    #[test]
    fn fixed_point_at_zero() {
        assert_eq!(lambda_fixed_point(0.0, 1e-10).unwrap(), (0.5, 0));
    }

    /// Cross-oracle against the exact series at ρ = 0.2.
    #[test]
    fn fixed_point_matches_series() {
        let table = compute_table(12);
        let (series, _) = table.eval_lambda(0.2, 12);
        let (fp, k_used) = lambda_fixed_point(0.2, 1e-10).unwrap();
        assert!((fp - series).abs() < 1e-6, "{fp} vs {series}");
        assert!(k_used >= 2);
    }

    /// Cross-oracle against the spectral solver at ρ = 0.33.
    #[test]
    fn fixed_point_matches_spectral_at_033() {
        let spec = leading_eigen(0.33, 0.0, 1e-9, GridSpec::default()).unwrap();
        let (fp, _) = lambda_fixed_point(0.33, 1e-10).unwrap();
        assert!((fp - spec.lambda).abs() < 1e-6, "{fp} vs {}", spec.lambda);
    }

    /// Series agreement across the invariant grid.
    #[test]
    fn fixed_point_series_agreement_grid() {
        let table = compute_table(12);
        for rho in [0.05, 0.1, 0.2, 0.3] {
            let (series, _) = table.eval_lambda(rho, 12);
            let (fp, _) = lambda_fixed_point(rho, 1e-9).unwrap();
            assert!((fp - series).abs() < 1e-5, "rho={rho}: {fp} vs {series}");
        }
    }

    #[test]
    fn fixed_point_beyond_series_radius_stays_in_range() {
        let (fp, _) = lambda_fixed_point(0.9, 1e-8).unwrap();
        assert!(fp > 0.5 && fp < 1.0, "{fp}");
    }

    /// Bürmann vs fixed point at the reference diagnostic settings.
    #[test]
    fn buermann_matches_fixed_point() {
        let (fp1, _) = lambda_fixed_point(0.1, 1e-11).unwrap();
        let b1 = lagrange_buermann_lambda(0.1, 8, 8).unwrap();
        assert!((b1.lambda - fp1).abs() < 1e-5, "{} vs {fp1}", b1.lambda);
        assert!(b1.settled);

        let (fp2, _) = lambda_fixed_point(0.2, 1e-11).unwrap();
        let b2 = lagrange_buermann_lambda(0.2, 10, 8).unwrap();
        assert!((b2.lambda - fp2).abs() < 1e-4, "{} vs {fp2}", b2.lambda);
    }

    /// Slope of λ at ρ = 0 is K_1 = 1/π. At ρ = 0.001 the curvature term
    /// K_2·ρ shifts the secant by only 2e-4, inside the 1e-3 window; at
    /// ρ = 0.01 the secant equals K_1 + K_2·ρ to high accuracy instead.
    #[test]
    fn buermann_slope_at_zero_recovers_k1() {
        let pi = std::f64::consts::PI;
        let b = lagrange_buermann_lambda(0.001, 8, 8).unwrap();
        let secant = (b.lambda - 0.5) / 0.001;
        assert!((secant - 1.0 / pi).abs() < 1e-3, "secant {secant}");

        let b = lagrange_buermann_lambda(0.01, 8, 8).unwrap();
        let secant = (b.lambda - 0.5) / 0.01;
        let second_order = 1.0 / pi - 0.01 * 2.0 / (pi * pi);
        assert!((secant - second_order).abs() < 1e-4, "secant {secant} vs {second_order}");
    }

    #[test]
    fn buermann_rejects_out_of_scale_arguments() {
        assert!(lagrange_buermann_lambda(0.5, 8, 8).is_err());
        assert!(lagrange_buermann_lambda(0.0, 8, 8).is_err());
        assert!(lagrange_buermann_lambda(0.1, 13, 8).is_err());
        assert!(lagrange_buermann_lambda(0.1, 8, 0).is_err());
    }

    /// Radius condition: satisfied at ρ = 0.332 (value < 1/4), tiny at
    /// ρ = 0.01, threshold above 0.332.
    #[test]
    fn radius_condition_values() {
        let v = radius_condition(0.332, 40).unwrap();
        assert!(v < 0.25, "{v}");
        assert!((v - 0.24904157).abs() < 1e-6, "{v}");

        let small = radius_condition(0.01, 40).unwrap();
        let approx = 0.02 / std::f64::consts::PI;
        assert!((small - approx).abs() < 1e-4, "{small} vs {approx}");

        assert!(radius_condition(0.75, 40).is_err());
        assert!(radius_condition(std::f64::consts::FRAC_1_SQRT_2, 40).is_err());
    }

    #[test]
    fn radius_threshold_exceeds_0332() {
        let root = radius_threshold(40, 1e-9).unwrap();
        assert!(root >= 0.332, "threshold {root}");
        assert!(root < 0.34, "threshold {root}");
        assert!(radius_condition(root - 1e-6, 40).unwrap() < 0.25);
        assert!(radius_condition(root + 1e-6, 40).unwrap() > 0.25);
    }

    /// κ error reports are honest: the frozen references sit inside them.
    #[test]
    fn kappa_error_report_covers_truth() {
        let want = [
            (1, 4.638678953887036e-2),
            (2, 1.004946363793562e-3),
            (3, 5.523647568958163e-6),
        ];
        for (k, w) in want {
            let (v, err) = kappa(k, 0.3, 1e-8).unwrap();
            assert!((v - w).abs() <= err + 1e-14, "k={k}: |{v} - {w}| > {err}");
        }
    }
}
