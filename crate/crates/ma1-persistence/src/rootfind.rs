//! Safeguarded scalar root finding: Newton steps inside a maintained
//! bracket, falling back to bisection whenever Newton leaves the bracket or
//! stalls.

/// Find a root of `f` in `[lo, hi]` given `df = f'`.
///
/// Requires a sign change over the bracket. Converges when the bracket or
/// the Newton step is below `tol`. Returns `None` if the bracket is invalid.
pub fn newton_bisect<F, D>(mut f: F, mut df: D, lo: f64, hi: f64, tol: f64, max_iter: usize) -> Option<f64>
where
    F: FnMut(f64) -> f64,
    D: FnMut(f64) -> f64,
{
    assert!(tol > 0.0);
    let (mut a, mut b) = (lo, hi);
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Some(a);
    }
    if fb == 0.0 {
        return Some(b);
    }
    if fa * fb > 0.0 {
        return None;
    }
    let mut x = 0.5 * (a + b);
    for _ in 0..max_iter {
        let fx = f(x);
        if fx == 0.0 {
            return Some(x);
        }
        // Shrink the bracket around the sign change.
        if fa * fx < 0.0 {
            b = x;
        } else {
            a = x;
            fa = fx;
        }
        if b - a < tol {
            return Some(0.5 * (a + b));
        }
        let d = df(x);
        let newton = if d != 0.0 { x - fx / d } else { f64::NAN };
        x = if newton.is_finite() && newton > a && newton < b {
            newton
        } else {
            0.5 * (a + b)
        };
    }
    Some(x)
}

/// Plain bisection to absolute `tol` on the abscissa. `None` without a sign
/// change.
pub fn bisect<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, tol: f64, max_iter: usize) -> Option<f64> {
    let (mut a, mut b) = (lo, hi);
    let fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Some(a);
    }
    if fb == 0.0 {
        return Some(b);
    }
    if fa * fb > 0.0 {
        return None;
    }
    let mut sa = fa.signum();
    for _ in 0..max_iter {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 {
            return Some(m);
        }
        if fm.signum() == sa {
            a = m;
            sa = fm.signum();
        } else {
            b = m;
        }
        if b - a < tol {
            break;
        }
    }
    Some(0.5 * (a + b))
}
