//! Numeric sufficient condition for the convergence radius of the
//! exponent series: where the majorant stays below 1/4 the series for
//! lambda converges geometrically.

use ma1_persistence::kappa::{radius_condition, radius_threshold};

fn main() {
    let k_max = 40;

    println!("majorant value against the 1/4 bound:");
    println!("rho      condition        certified");
    for rho in [0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.32, 0.332, 0.34, 0.35] {
        let v = radius_condition(rho, k_max).expect("series evaluates");
        println!("{rho:.3}   {v:.12}   {}", v < 0.25);
    }

    let threshold = radius_threshold(k_max, 1e-10).expect("crossing bracketed");
    println!("\nthe condition crosses 1/4 at rho = {threshold:.10}");
    println!("so every |rho| <= 0.332 is safely inside the certified disc");
}
