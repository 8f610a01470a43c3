//! Chebyshev–Lobatto grids and barycentric Lagrange interpolation.

/// Chebyshev–Lobatto points on `[a, b]`, ascending, endpoints included.
///
/// `n` is the number of points and must be at least 2.
pub fn lobatto_nodes(n: usize, a: f64, b: f64) -> Vec<f64> {
    assert!(n >= 2, "need at least two nodes");
    assert!(a < b, "empty interval");
    let m = (n - 1) as f64;
    (0..n)
        .map(|j| {
            // cos runs 1 -> -1; flip so nodes ascend.
            let t = (std::f64::consts::PI * (m - j as f64) / m).cos();
            0.5 * (a + b) + 0.5 * (b - a) * t
        })
        .collect()
}

/// Barycentric weights for the Lobatto grid of size `n`: `(-1)^j`, halved at
/// the two endpoints. Valid for the output of [`lobatto_nodes`].
pub fn lobatto_weights(n: usize) -> Vec<f64> {
    assert!(n >= 2);
    (0..n)
        .map(|j| {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            if j == 0 || j == n - 1 {
                0.5 * sign
            } else {
                sign
            }
        })
        .collect()
}

/// A barycentric interpolant through fixed nodes.
#[derive(Debug, Clone)]
pub struct Barycentric {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    values: Vec<f64>,
}

impl Barycentric {
    /// Interpolant through `(nodes[j], values[j])` with precomputed
    /// barycentric `weights`.
    pub fn new(nodes: Vec<f64>, weights: Vec<f64>, values: Vec<f64>) -> Self {
        assert_eq!(nodes.len(), weights.len());
        assert_eq!(nodes.len(), values.len());
        assert!(nodes.len() >= 2);
        Barycentric { nodes, weights, values }
    }

    /// Interpolant on the Chebyshev–Lobatto grid over `[a, b]` through
    /// `values` (one per node of [`lobatto_nodes`]).
    pub fn on_lobatto(a: f64, b: f64, values: Vec<f64>) -> Self {
        let n = values.len();
        Barycentric::new(lobatto_nodes(n, a, b), lobatto_weights(n), values)
    }

    /// Grid the interpolant runs through.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Stored node values.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Evaluate at `x` (second barycentric formula).
    pub fn eval(&self, x: f64) -> f64 {
        let mut num = 0.0;
        let mut den = 0.0;
        for j in 0..self.nodes.len() {
            let d = x - self.nodes[j];
            if d == 0.0 {
                return self.values[j];
            }
            let t = self.weights[j] / d;
            num += t * self.values[j];
            den += t;
        }
        num / den
    }

    /// Values of all Lagrange basis functions at `x`, in node order.
    ///
    /// `eval(x)` equals the dot product of this vector with the node values.
    pub fn basis_at(&self, x: f64, out: &mut [f64]) {
        assert_eq!(out.len(), self.nodes.len());
        let mut den = 0.0;
        let mut hit = None;
        for j in 0..self.nodes.len() {
            let d = x - self.nodes[j];
            if d == 0.0 {
                hit = Some(j);
                break;
            }
            out[j] = self.weights[j] / d;
            den += out[j];
        }
        if let Some(j) = hit {
            out.fill(0.0);
            out[j] = 1.0;
            return;
        }
        for v in out.iter_mut() {
            *v /= den;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nodes_ascend_and_hit_endpoints() {
        let x = lobatto_nodes(9, -2.0, 3.0);
        assert_eq!(x.len(), 9);
        assert!((x[0] + 2.0).abs() < 1e-15);
        assert!((x[8] - 3.0).abs() < 1e-15);
        for w in x.windows(2) {
            assert!(w[0] < w[1]);
        }
    }

    #[test]
    fn interpolates_polynomials_exactly() {
        // Degree-5 polynomial on 8 nodes: interpolation must be exact.
        let f = |x: f64| 2.0 - x + 3.0 * x.powi(3) - 0.25 * x.powi(5);
        let nodes = lobatto_nodes(8, -1.5, 2.0);
        let vals: Vec<f64> = nodes.iter().map(|&x| f(x)).collect();
        let interp = Barycentric::on_lobatto(-1.5, 2.0, vals);
        for i in 0..=50 {
            let x = -1.5 + 3.5 * i as f64 / 50.0;
            assert!(
                (interp.eval(x) - f(x)).abs() < 1e-12,
                "x={x}: {} vs {}",
                interp.eval(x),
                f(x)
            );
        }
    }

    #[test]
    fn reproduces_node_values_exactly() {
        let nodes = lobatto_nodes(12, 0.0, 10.0);
        let vals: Vec<f64> = nodes.iter().map(|&x| (x * 0.7).sin()).collect();
        let interp = Barycentric::on_lobatto(0.0, 10.0, vals.clone());
        for (x, v) in nodes.iter().zip(&vals) {
            assert_eq!(interp.eval(*x), *v);
        }
    }

    #[test]
    fn smooth_function_converges_spectrally() {
        // exp on [-1, 1]: 20 Lobatto points give ~1e-15.
        let nodes = lobatto_nodes(20, -1.0, 1.0);
        let vals: Vec<f64> = nodes.iter().map(|&x| x.exp()).collect();
        let interp = Barycentric::on_lobatto(-1.0, 1.0, vals);
        for i in 0..=100 {
            let x = -1.0 + 2.0 * i as f64 / 100.0;
            assert!((interp.eval(x) - x.exp()).abs() < 1e-13);
        }
    }

    #[test]
    fn basis_row_matches_eval() {
        let nodes = lobatto_nodes(10, 0.0, 4.0);
        let vals: Vec<f64> = nodes.iter().map(|&x| (x + 1.0).ln()).collect();
        let interp = Barycentric::on_lobatto(0.0, 4.0, vals.clone());
        let mut row = vec![0.0; 10];
        for &x in &[0.0, 0.37, 1.9, 2.5, 3.99, nodes[3]] {
            interp.basis_at(x, &mut row);
            let dot: f64 = row.iter().zip(&vals).map(|(a, b)| a * b).sum();
            assert!((dot - interp.eval(x)).abs() < 1e-13);
            let total: f64 = row.iter().sum();
            assert!((total - 1.0).abs() < 1e-12, "partition of unity at {x}");
        }
    }
}
