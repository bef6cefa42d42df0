//! Full-dimensional check of the spectral reduction for N = 2 and N = 3.
//!
//! Fields are built in Cartesian coordinates with analytic derivatives and the
//! weighted integrals are computed by tensor-product quadrature in (t, angle):
//! Gauss–Legendre in t, trapezoid in θ for N = 2, Gauss–Legendre in cos θ for
//! axisymmetric fields in N = 3.

pub mod field;
pub mod harmonic;

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

pub use field::{analytic_field, AnalyticField, FieldPoint};

use crate::constants::Params;
use crate::quad::{gl16, gl_rule, legendre, pairwise_sum};
use crate::spectral::{Mode, Profile, SpectralConfig, SpectralError, SpectralField};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("the field oracle supports N = 2 and N = 3, not {0}")]
    UnsupportedDimension(u32),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("not_converged: resolution doubling changed {what} by {change:e}")]
    NotConverged { what: &'static str, change: f64 },
    #[error("harmonic normalization for N = {dim}, nu = {nu}: quadrature {quadrature} vs closed form {closed}")]
    Normalization { dim: u32, nu: u32, quadrature: f64, closed: f64 },
    #[error("mismatch between full-dimensional and spectral values")]
    Mismatch(Box<CrosscheckReport>),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleConfig {
    /// Gauss–Legendre cells per unit length in t (before doubling).
    pub cells_per_unit: usize,
    /// Largest accepted relative change under resolution doubling.
    pub converged_tol: f64,
    /// Crosscheck tolerance for N = 2.
    pub tol_n2: f64,
    /// Crosscheck tolerance for N = 3.
    pub tol_n3: f64,
    /// Crosscheck tolerance of the remainder integral.
    pub tol_rem: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { cells_per_unit: 24, converged_tol: 1e-7, tol_n2: 1e-6, tol_n3: 1e-5, tol_rem: 1e-5 }
    }
}

/// Closed-form ∫_{S^{N−1}} Y² dσ for Y = cos νθ (N = 2) or P_ν(cos θ) (N = 3).
pub fn harmonic_norm_closed(dim: u32, nu: u32) -> f64 {
    match (dim, nu) {
        (2, 0) => 2.0 * PI,
        (2, _) => PI,
        _ => 4.0 * PI / (2 * nu + 1) as f64,
    }
}

/// ∫ Y² dσ by quadrature, checked against the closed form.
pub fn harmonic_norm_sq(dim: u32, nu: u32) -> Result<f64, OracleError> {
    let q = match dim {
        2 => {
            let m = 4 * nu as usize + 8;
            (0..m).map(|j| (nu as f64 * 2.0 * PI * j as f64 / m as f64).cos().powi(2)).sum::<f64>() * 2.0 * PI / m as f64
        }
        3 => 2.0 * PI * gl_rule(nu as usize + 4).iter().map(|(x, w)| w * legendre(nu, *x).powi(2)).sum::<f64>(),
        _ => return Err(OracleError::UnsupportedDimension(dim)),
    };
    let closed = harmonic_norm_closed(dim, nu);
    if (q - closed).abs() > 1e-12 * closed {
        return Err(OracleError::Normalization { dim, nu, quadrature: q, closed });
    }
    Ok(q)
}

/// −Δ_σY/Y by central differences in θ, sampled away from the zeros of Y;
/// returns the largest deviation from α_ν = ν(ν + N − 2).
pub fn laplace_beltrami_residual(dim: u32, nu: u32, points: usize) -> f64 {
    let h = 1e-4;
    let alpha = (nu * (nu + dim - 2)) as f64;
    let y = |th: f64| if dim == 2 { (nu as f64 * th).cos() } else { legendre(nu, th.cos()) };
    let mut worst = 0.0f64;
    for i in 0..points {
        let th = 0.05 + (PI - 0.1) * (i as f64 + 0.5) / points as f64;
        let v = y(th);
        if v.abs() < 0.1 {
            continue;
        }
        let lap = if dim == 2 {
            (y(th + h) - 2.0 * v + y(th - h)) / (h * h)
        } else {
            // (1/sin θ) ∂θ(sin θ ∂θY)
            let flux = |s: f64| s.sin() * (y(s + h / 2.0) - y(s - h / 2.0)) / h;
            (flux(th + h / 2.0) - flux(th - h / 2.0)) / (h * th.sin())
        };
        worst = worst.max((-lap / v - alpha).abs());
    }
    worst
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightedIntegrals {
    /// ∫|Δu|² r^{2γ} dx.
    pub i_lap: f64,
    /// ∫|∇u|² r^{2γ−2} dx.
    pub i_grad: f64,
    /// ∫|u|² r^{2γ−4} dx.
    pub i_u: f64,
    /// ∫|∇(r^λ (x·∇)(r^{−λ}u))|² r^{2γ−2} dx.
    pub i_rem: f64,
    /// Largest relative change of the four integrals under doubling.
    pub doubling_change: f64,
    pub t_nodes: usize,
    pub angular_nodes: usize,
}

fn sq_sum(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum()
}

fn sq_sum2(m: &[Vec<f64>]) -> f64 {
    m.iter().map(|r| sq_sum(r)).sum()
}

/// Integrals at one resolution: `cells` t-cells and `ang` angular nodes.
fn integrate(b: &AnalyticField, cells: usize, ang: usize) -> [f64; 4] {
    let n = b.profile.n as f64;
    let (t0, t1) = (-n, n);
    let width = (t1 - t0) / cells as f64;
    let angular: Vec<(f64, f64)> = if b.dim == 2 {
        (0..ang).map(|j| (2.0 * PI * j as f64 / ang as f64, 2.0 * PI / ang as f64)).collect()
    } else {
        // (cos θ node, weight) with the azimuthal 2π folded in.
        gl_rule(ang).into_iter().map(|(x, w)| (x, 2.0 * PI * w)).collect()
    };
    let g = b.gamma;
    let per_cell: Vec<[f64; 4]> = (0..cells)
        .into_par_iter()
        .map(|c| {
            let mid = t0 + (c as f64 + 0.5) * width;
            let mut acc = [0.0; 4];
            for &(s, wt) in gl16() {
                let t = mid + 0.5 * width * s;
                let r = t.exp();
                let jac = r.powi(b.dim as i32) * 0.5 * width * wt;
                let mut inner = [0.0; 4];
                for &(a, wa) in &angular {
                    let x = if b.dim == 2 {
                        vec![r * a.cos(), r * a.sin()]
                    } else {
                        let sin = (1.0 - a * a).max(0.0).sqrt();
                        vec![r * sin, 0.0, r * a]
                    };
                    let fp = b.eval(&x);
                    inner[0] += wa * sq_sum(&fp.lap_u);
                    inner[1] += wa * sq_sum2(&fp.jac);
                    inner[2] += wa * sq_sum(&fp.u);
                    inner[3] += wa * sq_sum2(&fp.grad_w);
                }
                acc[0] += jac * inner[0] * r.powf(2.0 * g);
                acc[1] += jac * inner[1] * r.powf(2.0 * g - 2.0);
                acc[2] += jac * inner[2] * r.powf(2.0 * g - 4.0);
                acc[3] += jac * inner[3] * r.powf(2.0 * g - 2.0);
            }
            acc
        })
        .collect();
    std::array::from_fn(|k| pairwise_sum(&per_cell.iter().map(|v| v[k]).collect::<Vec<_>>()))
}

pub fn weighted_integrals(b: &AnalyticField, cfg: &OracleConfig) -> Result<WeightedIntegrals, OracleError> {
    let cells = (2 * b.profile.n as usize * cfg.cells_per_unit).max(1);
    let ang = if b.dim == 2 { 4 * b.nu as usize + 16 } else { b.nu as usize + 12 };
    let coarse = integrate(b, cells, ang);
    let fine = integrate(b, 2 * cells, 2 * ang);
    let names = ["I_lap", "I_grad", "I_u", "I_rem"];
    let mut worst = (0.0f64, names[0]);
    for k in 0..4 {
        let ch = if fine[k] == 0.0 { coarse[k].abs() } else { (fine[k] - coarse[k]).abs() / fine[k].abs() };
        if ch > worst.0 {
            worst = (ch, names[k]);
        }
    }
    if worst.0 > cfg.converged_tol {
        return Err(OracleError::NotConverged { what: worst.1, change: worst.0 });
    }
    Ok(WeightedIntegrals {
        i_lap: fine[0],
        i_grad: fine[1],
        i_u: fine[2],
        i_rem: fine[3],
        doubling_change: worst.0,
        t_nodes: 2 * cells * 16,
        angular_nodes: 2 * ang,
    })
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CrosscheckReport {
    #[serde(rename = "N")]
    pub n_dim: u32,
    pub gamma: f64,
    pub nu: u32,
    pub n: u32,
    pub norm_y: f64,
    pub i_lap: f64,
    pub i_grad: f64,
    pub i_rem: f64,
    pub i_u: f64,
    pub spectral_lap: f64,
    pub spectral_grad: f64,
    pub spectral_rem: f64,
    pub rel_lap: f64,
    pub rel_grad: f64,
    pub rel_rem: f64,
    pub tol: f64,
    pub tol_rem: f64,
    pub doubling_change: f64,
    pub pass: bool,
}

/// Full-dimensional integrals against ‖Y‖²·(Q-form, P-form, remainder form).
pub fn crosscheck(
    p: &Params,
    nu: u32,
    pf: &Profile,
    cfg: &OracleConfig,
    spectral_cfg: &SpectralConfig,
) -> Result<CrosscheckReport, OracleError> {
    let b = analytic_field(p, nu, pf, p.n)?;
    let w = weighted_integrals(&b, cfg)?;
    let norm_y = harmonic_norm_sq(p.n, nu)?;
    let sf = SpectralField::new(p.clone(), Mode::from_nu(nu), pf.clone());
    let (q, pp) = sf.forms(spectral_cfg)?;
    let rem = sf.remainder_form(spectral_cfg)?;
    let (sl, sg, sr) = (norm_y * q.value(), norm_y * pp.value(), norm_y * rem.value());
    let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(f64::MIN_POSITIVE);
    let tol = if p.n == 2 { cfg.tol_n2 } else { cfg.tol_n3 };
    let (rel_lap, rel_grad, rel_rem) = (rel(w.i_lap, sl), rel(w.i_grad, sg), rel(w.i_rem, sr));
    let report = CrosscheckReport {
        n_dim: p.n,
        gamma: b.gamma,
        nu,
        n: pf.n,
        norm_y,
        i_lap: w.i_lap,
        i_grad: w.i_grad,
        i_rem: w.i_rem,
        i_u: w.i_u,
        spectral_lap: sl,
        spectral_grad: sg,
        spectral_rem: sr,
        rel_lap,
        rel_grad,
        rel_rem,
        tol,
        tol_rem: cfg.tol_rem,
        doubling_change: w.doubling_change,
        pass: rel_lap <= tol && rel_grad <= tol && rel_rem <= cfg.tol_rem,
    };
    if report.pass {
        Ok(report)
    } else {
        Err(OracleError::Mismatch(Box::new(report)))
    }
}
