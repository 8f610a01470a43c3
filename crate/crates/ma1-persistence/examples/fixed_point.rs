//! Scalar fixed point lambda = sum_k kappa_k lambda^(-k) built from the
//! orthant probabilities kappa_k.

use ma1_persistence::kappa::{kappa, kappa_oriented, lambda_fixed_point};

fn main() {
    let rho = 0.3;
    let tol = 1e-10;

    println!("orthant probabilities at rho = {rho}:");
    for k in 1..=5 {
        let (value, err) = kappa(k, rho, tol).expect("quadrature converges");
        let (oriented, _) = kappa_oriented(k, rho, tol).expect("quadrature converges");
        println!("  kappa_{k} = {value:.15e}  (signed {oriented:+.6e}, err <= {err:.1e})");
    }

    println!("\nlargest root of lambda = sum kappa_k lambda^(-k) in [1/2, 1]:");
    println!("rho     lambda              truncation");
    for rho in [0.05, 0.1, 0.2, 0.3, 0.5, 0.8] {
        let (lambda, k_used) = lambda_fixed_point(rho, tol).expect("root found");
        println!("{rho:.2}   {lambda:.15}   {k_used}");
    }
}
