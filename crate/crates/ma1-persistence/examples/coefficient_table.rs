//! Exact series coefficients K_0..K_8 and the patterns they satisfy.

use ma1_persistence::coeffs::compute_table;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

fn binomial(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn main() {
    let table = compute_table(8);

    println!("exact coefficients, s = (2 pi)^(-1/2):");
    for n in 0..=8 {
        println!("  K_{n} = {}  ({:.16e})", table.k(n).to_latex(), table.k_float(n));
    }

    // top term of K_n is tau_n = (-1)^(n-1) 2^(n-1) C(2n-2, n-1) pi^(-n) / n;
    // pi^(-n) = 2^n s^(2n), so the s^(2n) coefficient carries an extra 2^n
    println!("\nhighest 1/pi power of K_n against the closed form:");
    for n in 1..=8u32 {
        let sign = if n % 2 == 1 { 1 } else { -1 };
        let tau = BigRational::new(
            BigInt::from(sign) * binomial(2 * n as u64 - 2, n as u64 - 1)
                * (BigInt::one() << (2 * n as usize - 1)),
            BigInt::from(n),
        );
        let got = table.k(n as usize).coeff(2 * n);
        println!(
            "  n = {n}: s^{} coefficient {} {}",
            2 * n,
            got,
            if got == tau { "matches" } else { "DIFFERS" }
        );
    }

    let diff = table.k(5) - table.k(5);
    println!("\nring arithmetic stays exact, e.g. K_5 - K_5 is zero: {}", diff.is_zero());
}
