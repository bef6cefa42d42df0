//! Curl-free test fields u = ∇φ in Cartesian coordinates with closed-form
//! derivatives up to third order of φ.
//!
//! φ = g(r)·S(x) with S a solid harmonic of degree ν and
//! g(r) = r^{λ+1−ν} h(log r), so that φ = r^{λ+1} h(t) Y(σ). In the radial
//! case only g′ is specified: r g′(r) = r^{λ+1} h(t), i.e. u = x r^{λ−1} h(t).
//! Radial derivatives use G₁ = g′/r, G_{m+1} = G_m′/r, so that
//! ∂ᵢg = G₁xᵢ, ∂ᵢ∂ⱼg = G₁δᵢⱼ + G₂xᵢxⱼ and
//! ∂ᵢ∂ⱼ∂ₖg = G₂(δᵢⱼxₖ + δᵢₖxⱼ + δⱼₖxᵢ) + G₃xᵢxⱼxₖ.

use super::harmonic::{circular, zonal, Jet};
use super::OracleError;
use crate::constants::Params;
use crate::exact::to_f64;
use crate::spectral::Profile;

#[derive(Clone, Debug)]
pub struct AnalyticField {
    pub params: Params,
    pub dim: usize,
    pub nu: u32,
    pub profile: Profile,
    pub lambda: f64,
    pub gamma: f64,
    /// Solid harmonic jet; `None` for the radial construction.
    jet: Option<Jet>,
}

/// Everything the integrals need at one point.
#[derive(Clone, Debug, Default)]
pub struct FieldPoint {
    /// φ(x); unavailable for the radial construction (only ∇φ is prescribed).
    pub phi: Option<f64>,
    pub u: Vec<f64>,
    /// `jac[i][j]` = ∂ⱼuᵢ.
    pub jac: Vec<Vec<f64>>,
    /// Δu = ∇(Δφ).
    pub lap_u: Vec<f64>,
    /// ∇w with w = r^λ (x·∇)(r^{−λ}u) = (x·∇)u − λu.
    pub grad_w: Vec<Vec<f64>>,
}

pub fn analytic_field(p: &Params, nu: u32, pf: &Profile, dim: u32) -> Result<AnalyticField, OracleError> {
    if dim != 2 && dim != 3 {
        return Err(OracleError::UnsupportedDimension(dim));
    }
    if p.n != dim {
        return Err(OracleError::InvalidInput(format!("field dimension {dim} differs from N = {}", p.n)));
    }
    let d = dim as usize;
    let jet = match (nu, dim) {
        (0, _) => None,
        (_, 2) => Some(Jet::new(circular(nu), d)),
        _ => Some(Jet::new(zonal(nu), d)),
    };
    Ok(AnalyticField {
        params: p.clone(),
        dim: d,
        nu,
        profile: pf.clone(),
        lambda: to_f64(&p.lambda()),
        gamma: to_f64(&p.gamma),
        jet,
    })
}

impl AnalyticField {
    /// t-derivatives D₀…D₃ of g (D₀ = 0 in the radial case, where it is never used).
    fn radial_jet(&self, t: f64) -> [f64; 4] {
        let h = self.profile.derivatives(t);
        if self.jet.is_none() {
            let b = self.lambda + 1.0;
            let e = (b * t).exp();
            return [0.0, e * h[0], e * (b * h[0] + h[1]), e * (b * b * h[0] + 2.0 * b * h[1] + h[2])];
        }
        let b = self.lambda + 1.0 - self.nu as f64;
        let e = (b * t).exp();
        [
            e * h[0],
            e * (b * h[0] + h[1]),
            e * (b * b * h[0] + 2.0 * b * h[1] + h[2]),
            e * (b.powi(3) * h[0] + 3.0 * b * b * h[1] + 3.0 * b * h[2] + h[3]),
        ]
    }

    pub fn eval(&self, x: &[f64]) -> FieldPoint {
        let d = self.dim;
        let mut x3 = [0.0; 3];
        x3[..d].copy_from_slice(&x[..d]);
        let r2: f64 = x3.iter().map(|v| v * v).sum();
        let r = r2.sqrt();
        let t = r.ln();
        let dd = self.radial_jet(t);
        let g1 = dd[1] / r2;
        let g2 = (dd[2] - 2.0 * dd[1]) / (r2 * r2);
        let g3 = (dd[3] - 6.0 * dd[2] + 8.0 * dd[1]) / (r2 * r2 * r2);
        let g0 = dd[0];
        let delta = |i: usize, j: usize| if i == j { 1.0 } else { 0.0 };
        let gi: Vec<f64> = (0..d).map(|i| g1 * x3[i]).collect();
        let gij: Vec<Vec<f64>> = (0..d).map(|i| (0..d).map(|j| g1 * delta(i, j) + g2 * x3[i] * x3[j]).collect()).collect();
        let gijk = |i: usize, j: usize, k: usize| {
            g2 * (delta(i, j) * x3[k] + delta(i, k) * x3[j] + delta(j, k) * x3[i]) + g3 * x3[i] * x3[j] * x3[k]
        };
        let (pv, p1, p2, p3) = match &self.jet {
            None => (1.0, vec![0.0; d], vec![vec![0.0; d]; d], vec![vec![vec![0.0; d]; d]; d]),
            Some(j) => (
                j.v.eval(&x3),
                j.d1.iter().map(|q| q.eval(&x3)).collect(),
                j.d2.iter().map(|row| row.iter().map(|q| q.eval(&x3)).collect()).collect(),
                j.d3.iter().map(|m| m.iter().map(|row| row.iter().map(|q| q.eval(&x3)).collect()).collect()).collect(),
            ),
        };
        let u: Vec<f64> = (0..d).map(|i| gi[i] * pv + g0 * p1[i]).collect();
        let jac: Vec<Vec<f64>> = (0..d)
            .map(|i| (0..d).map(|j| gij[i][j] * pv + gi[i] * p1[j] + gi[j] * p1[i] + g0 * p2[i][j]).collect())
            .collect();
        let third = |i: usize, j: usize, k: usize| {
            gijk(i, j, k) * pv
                + gij[i][j] * p1[k]
                + gij[i][k] * p1[j]
                + gij[j][k] * p1[i]
                + gi[i] * p2[j][k]
                + gi[j] * p2[i][k]
                + gi[k] * p2[i][j]
                + g0 * p3[i][j][k]
        };
        let lap_u = (0..d).map(|i| (0..d).map(|k| third(i, k, k)).sum()).collect();
        let grad_w = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| (1.0 - self.lambda) * jac[i][j] + (0..d).map(|k| x3[k] * third(i, j, k)).sum::<f64>())
                    .collect()
            })
            .collect();
        let phi = self.jet.as_ref().map(|_| g0 * pv);
        FieldPoint { phi, u, jac, lap_u, grad_w }
    }

    /// Largest |∂ⱼuᵢ − ∂ᵢuⱼ| at the given points.
    pub fn curl_residual(&self, points: &[Vec<f64>]) -> f64 {
        points
            .iter()
            .map(|x| {
                let jac = self.eval(x).jac;
                (0..self.dim)
                    .flat_map(|i| (0..i).map(move |j| (i, j)))
                    .map(|(i, j)| (jac[i][j] - jac[j][i]).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max)
    }
}
