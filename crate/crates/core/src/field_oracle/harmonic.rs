//! Solid harmonics r^ν Y(σ) as Cartesian polynomials, with exact partial derivatives.

use std::collections::BTreeMap;

/// Sparse polynomial in (x, y, z) with `f64` coefficients.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CartPoly {
    terms: BTreeMap<[u32; 3], f64>,
}

impl CartPoly {
    pub fn one() -> Self {
        Self::monomial([0, 0, 0], 1.0)
    }

    pub fn monomial(e: [u32; 3], c: f64) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0.0 {
            terms.insert(e, c);
        }
        Self { terms }
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    fn add_scaled(&mut self, other: &CartPoly, s: f64) {
        for (e, c) in &other.terms {
            let v = self.terms.entry(*e).or_insert(0.0);
            *v += s * c;
            if *v == 0.0 {
                self.terms.remove(e);
            }
        }
    }

    fn times_monomial(&self, e: [u32; 3], c: f64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(f, v)| ([f[0] + e[0], f[1] + e[1], f[2] + e[2]], v * c))
            .collect();
        Self { terms }
    }

    pub fn derivative(&self, axis: usize) -> Self {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[axis] > 0 {
                let mut f = *e;
                f[axis] -= 1;
                terms.insert(f, c * e[axis] as f64);
            }
        }
        Self { terms }
    }

    pub fn eval(&self, x: &[f64; 3]) -> f64 {
        self.terms.iter().map(|(e, c)| c * x[0].powi(e[0] as i32) * x[1].powi(e[1] as i32) * x[2].powi(e[2] as i32)).sum()
    }

    /// Sum of second derivatives over the first `dim` axes.
    pub fn laplacian(&self, dim: usize) -> Self {
        let mut out = CartPoly::default();
        for a in 0..dim {
            out.add_scaled(&self.derivative(a).derivative(a), 1.0);
        }
        out
    }
}

/// r^ν cos(νθ) = Re (x + iy)^ν.
pub fn circular(nu: u32) -> CartPoly {
    let mut out = CartPoly::default();
    let mut binom = 1.0;
    for k in 0..=nu {
        // Re iᵏ: 1, 0, −1, 0, …
        let re = match k % 4 {
            0 => 1.0,
            2 => -1.0,
            _ => 0.0,
        };
        if re != 0.0 {
            out.add_scaled(&CartPoly::monomial([nu - k, k, 0], binom), re);
        }
        binom = binom * (nu - k) as f64 / (k + 1) as f64;
    }
    out
}

/// r^ν P_ν(z/r) via (ν+1) S_{ν+1} = (2ν+1) z S_ν − ν r² S_{ν−1}.
pub fn zonal(nu: u32) -> CartPoly {
    let mut prev = CartPoly::one();
    if nu == 0 {
        return prev;
    }
    let mut cur = CartPoly::monomial([0, 0, 1], 1.0);
    for k in 1..nu {
        let k = k as f64;
        let mut next = cur.times_monomial([0, 0, 1], (2.0 * k + 1.0) / (k + 1.0));
        for e in [[2, 0, 0], [0, 2, 0], [0, 0, 2]] {
            next.add_scaled(&prev.times_monomial(e, 1.0), -k / (k + 1.0));
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// Value, gradient, Hessian and third-derivative tensor of a polynomial.
#[derive(Clone, Debug)]
pub struct Jet {
    pub v: CartPoly,
    pub d1: Vec<CartPoly>,
    pub d2: Vec<Vec<CartPoly>>,
    pub d3: Vec<Vec<Vec<CartPoly>>>,
}

impl Jet {
    pub fn new(v: CartPoly, dim: usize) -> Self {
        let d1: Vec<CartPoly> = (0..dim).map(|i| v.derivative(i)).collect();
        let d2: Vec<Vec<CartPoly>> = d1.iter().map(|p| (0..dim).map(|j| p.derivative(j)).collect()).collect();
        let d3 = d2.iter().map(|row| row.iter().map(|p| (0..dim).map(|k| p.derivative(k)).collect()).collect()).collect();
        Self { v, d1, d2, d3 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solid_harmonics_are_harmonic() {
        for nu in 0..7 {
            assert_eq!(circular(nu).laplacian(2), CartPoly::default());
            let z = zonal(nu);
            assert!(z.laplacian(3).terms.values().all(|c| c.abs() < 1e-12), "ν = {nu}");
            assert_eq!(z.degree(), nu);
        }
    }

    #[test]
    fn harmonics_restrict_to_angular_functions() {
        let th: f64 = 0.7;
        let x = [th.cos(), th.sin(), 0.0];
        assert!((circular(3).eval(&x) - (3.0 * th).cos()).abs() < 1e-14);
        let x = [th.sin(), 0.0, th.cos()];
        assert!((zonal(2).eval(&x) - 0.5 * (3.0 * th.cos().powi(2) - 1.0)).abs() < 1e-14);
    }
}
