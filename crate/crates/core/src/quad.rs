//! Gauss–Legendre rules, composite integration and Legendre polynomials.

use std::sync::OnceLock;

use gauss_quad::GaussLegendre;

/// Nodes and weights of the 16-point rule on [−1, 1].
pub fn gl16() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| gl_rule(16))
}

pub fn gl_rule(deg: usize) -> Vec<(f64, f64)> {
    let mut r = GaussLegendre::new(deg).expect("degree >= 2").into_node_weight_pairs();
    r.sort_by(|a, b| a.0.total_cmp(&b.0));
    r
}

/// Pairwise sum for a summation order independent of thread count.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 32 {
        return xs.iter().sum();
    }
    let (a, b) = xs.split_at(xs.len() / 2);
    pairwise_sum(a) + pairwise_sum(b)
}

/// Composite 16-point Gauss–Legendre over `cells` equal cells of [a, b].
/// `f` receives every node; the values returned are weighted and summed per
/// component.
pub fn composite<const K: usize>(a: f64, b: f64, cells: usize, f: impl Fn(f64) -> [f64; K]) -> [f64; K] {
    let h = (b - a) / cells as f64;
    let mut parts = vec![[0.0; K]; cells];
    for (c, out) in parts.iter_mut().enumerate() {
        let mid = a + (c as f64 + 0.5) * h;
        for &(x, w) in gl16() {
            let v = f(mid + 0.5 * h * x);
            for k in 0..K {
                out[k] += 0.5 * h * w * v[k];
            }
        }
    }
    std::array::from_fn(|k| pairwise_sum(&parts.iter().map(|p| p[k]).collect::<Vec<_>>()))
}

/// Legendre polynomial P_ν(x) by the three-term recurrence.
pub fn legendre(nu: u32, x: f64) -> f64 {
    let (mut p0, mut p1) = (1.0, x);
    if nu == 0 {
        return p0;
    }
    for k in 1..nu {
        let k = k as f64;
        let p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
    }
    p1
}
