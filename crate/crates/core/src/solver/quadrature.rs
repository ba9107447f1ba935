//! Gauss-Legendre rules on the reference cell `[-1/2, 1/2]`.

use std::f64::consts::PI;

/// Nodes of the 4-point rule on `[-1/2, 1/2]`.
pub const GAUSS4_NODES: [f64; 4] = [
    -0.430_568_155_797_026_3,
    -0.169_990_521_792_428_15,
    0.169_990_521_792_428_15,
    0.430_568_155_797_026_3,
];
/// Weights of the 4-point rule on `[-1/2, 1/2]`; they sum to 1.
pub const GAUSS4_WEIGHTS: [f64; 4] = [
    0.173_927_422_568_726_93,
    0.326_072_577_431_273_07,
    0.326_072_577_431_273_07,
    0.173_927_422_568_726_93,
];

/// An `n`-point Gauss-Legendre rule mapped to `[-1/2, 1/2]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    /// Nodes by Newton iteration on `P_n`, started from the Chebyshev guess.
    pub fn new(n: usize) -> Self {
        assert!(n > 0, "quadrature needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -0.5 * x;
            nodes[n - 1 - i] = 0.5 * x;
            weights[i] = 0.5 * w;
            weights[n - 1 - i] = 0.5 * w;
        }
        Self { nodes, weights }
    }

    /// Average of `f` over `[a, b]`.
    pub fn average(&self, f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        let c = 0.5 * (a + b);
        let h = b - a;
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(c + h * x))
            .sum()
    }
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Average of `f` over `[a, b]` with `pieces` equal sub-intervals, each
/// integrated by `rule`.
pub fn composite_average(
    rule: &GaussRule,
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    pieces: usize,
) -> f64 {
    let h = (b - a) / pieces as f64;
    (0..pieces)
        .map(|k| rule.average(&f, a + k as f64 * h, a + (k + 1) as f64 * h))
        .sum::<f64>()
        / pieces as f64
}
