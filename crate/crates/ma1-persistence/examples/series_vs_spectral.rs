//! Agreement between the truncated power series and the spectral solve
//! across the certified disc.

use ma1_persistence::coeffs::compute_table;
use ma1_persistence::spectral::{leading_eigen, GridSpec};

fn main() {
    let table = compute_table(12);
    let grid = GridSpec::default();

    println!("rho      series (order 12)     spectral              |diff|      tail bound");
    for rho in [-0.3, -0.2, -0.1, -0.05, 0.0, 0.05, 0.1, 0.2, 0.3, 0.33] {
        let (series, tail) = table.eval_lambda(rho, 12);
        let spectral = leading_eigen(rho, 0.0, 1e-10, grid).expect("solver converges").lambda;
        println!(
            "{rho:+.2}   {series:.15}   {spectral:.15}   {:8.1e}   {tail:8.1e}",
            (series - spectral).abs()
        );
    }

    println!("\nthe difference tracks the tail bound, so order 12 is enough for");
    println!("five decimals everywhere inside |rho| < 0.332");
}
