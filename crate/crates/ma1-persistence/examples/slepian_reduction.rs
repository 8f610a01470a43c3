//! Reduction of the Slepian-process persistence problem to the MA(1)
//! family: the increment process S_t = B_(t+1) - B_t sampled at unit
//! steps is an MA(1) sequence, and the median barrier lands on b = 0.

use ma1_persistence::coeffs::eval_lambda_series;
use ma1_persistence::slepian::{slepian_f1, slepian_params, solve_a_hat};
use ma1_persistence::spectral::{leading_eigen, GridSpec};

fn main() {
    // F_1(a) is the one-step survival probability of the Slepian process
    println!("one-step survival F_1(a):");
    for a in [0.0, 0.5, 1.0, 1.5, 2.0] {
        println!("  F_1({a:.1}) = {:.12}", slepian_f1(a));
    }

    let a_hat = solve_a_hat(1e-12).expect("median barrier exists");
    println!("\nmedian barrier a_hat = {a_hat:.15} (F_1 = 1/2 there)");

    let p = slepian_params(a_hat, 1e-12).expect("reduction closes");
    println!("two-step value  F_2(a_hat) = {:.15}", p.f2_ahat);
    println!("lag-1 correlation  s = -cos(2 pi F_2) = {:.15}", p.s);
    println!("MA(1) weight  rho_hat = {:.15}", p.rho_hat);
    println!("shifted barrier  b = {:.2e}", p.b);

    // at the median barrier the reduced problem has b = 0, so the
    // persistence exponent comes straight from the rho_hat family
    let (series, _) = eval_lambda_series(p.rho_hat, 12);
    let spectral = leading_eigen(p.rho_hat, 0.0, 1e-10, GridSpec::default())
        .expect("solver converges")
        .lambda;
    println!("\npersistence exponent at rho_hat:");
    println!("  series   = {series:.12}");
    println!("  spectral = {spectral:.12}");
}
