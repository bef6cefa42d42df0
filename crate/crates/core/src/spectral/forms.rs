//! Reduced quadratic forms ∫ h·poly(−∂ₜ², a) h dt = Σ c_k ∫ (h⁽ᵏ⁾)² dt.
//!
//! The moments ∫(h⁽ᵏ⁾)² are computed twice: by composite Gauss–Legendre on
//! the analytic derivatives, and by Parseval from the FFT of the sampled
//! profile (∫ τ²ᵏ |ĥ|² dτ).

use std::collections::BTreeMap;

use num_traits::Zero;
use rustfft::{num_complex::Complex, FftPlanner};
use serde::Serialize;

use super::profile::{base_derivatives, Profile};
use super::{SpectralConfig, SpectralError};
use crate::constants::Params;
use crate::exact::to_f64;
use crate::poly::{MultiPoly, Rational, Var};
use crate::quad::composite;

/// Highest derivative order entering a form (τ-degree ≤ 3).
pub const MAX_ORDER: usize = 3;

#[derive(Clone, Debug, Serialize)]
pub struct Moments {
    pub gl_cells: usize,
    pub gl: [f64; MAX_ORDER + 1],
    pub gl_refined: [f64; MAX_ORDER + 1],
    pub fft: [f64; MAX_ORDER + 1],
}

fn gl_moments(pf: &Profile, cells: usize) -> [f64; MAX_ORDER + 1] {
    let base: [f64; MAX_ORDER + 1] = composite(-1.0, 1.0, cells, |x| {
        let d = base_derivatives(pf.kind, x);
        std::array::from_fn(|k| d[k] * d[k])
    });
    // ∫ (dᵏ/dtᵏ h(t/n))² dt = n^{1−2k} ∫ (h⁽ᵏ⁾)² dx.
    let n = pf.n as f64;
    std::array::from_fn(|k| pf.amp * pf.amp * n.powi(1 - 2 * k as i32) * base[k])
}

fn fft_moments(pf: &Profile) -> [f64; MAX_ORDER + 1] {
    let m = pf.samples[0].len() - 1;
    let len = (2 * m).next_power_of_two();
    let mut buf: Vec<Complex<f64>> = pf.samples[0][..m].iter().map(|&v| Complex::new(v, 0.0)).collect();
    buf.resize(len, Complex::zero());
    FftPlanner::new().plan_fft_forward(len).process(&mut buf);
    let dt = pf.dt();
    let period = len as f64 * dt;
    let mut terms: [Vec<f64>; MAX_ORDER + 1] = Default::default();
    for (j, c) in buf.iter().enumerate() {
        let js = if j <= len / 2 { j as f64 } else { j as f64 - len as f64 };
        let tau = 2.0 * std::f64::consts::PI * js / period;
        let w = c.norm_sqr() * dt / len as f64;
        for (k, t) in terms.iter_mut().enumerate() {
            t.push(w * tau.powi(2 * k as i32));
        }
    }
    std::array::from_fn(|k| crate::quad::pairwise_sum(&terms[k]))
}

impl Moments {
    pub fn compute(pf: &Profile, cfg: &SpectralConfig) -> Self {
        Self { gl_cells: cfg.gl_cells, gl: gl_moments(pf, cfg.gl_cells), gl_refined: gl_moments(pf, 2 * cfg.gl_cells), fft: fft_moments(pf) }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FormValue {
    pub gl: f64,
    pub fft: f64,
    /// Gauss–Legendre with doubled cells.
    pub gl_refined: f64,
    /// |gl − fft| relative to Σ|c_k|·m_k.
    pub rel_diff: f64,
}

impl FormValue {
    pub fn value(&self) -> f64 {
        self.gl
    }
}

/// τ-coefficients of `poly` after substituting a, λ and N.
pub fn tau_coefficients(poly: &MultiPoly, a_value: &Rational, p: &Params) -> Result<Vec<Rational>, SpectralError> {
    let mut point = BTreeMap::new();
    point.insert(Var::A, a_value.clone());
    point.insert(Var::Lambda, p.lambda());
    point.insert(Var::N, p.nq());
    let cs = poly.coeffs_in(Var::Tau);
    if cs.iter().any(|c| [Var::M, Var::Mu, Var::Ell, Var::S].iter().any(|v| c.contains(*v))) {
        return Err(SpectralError::InvalidInput("form polynomial may only involve tau, a, lambda, N".into()));
    }
    if cs.len() > MAX_ORDER + 1 {
        return Err(SpectralError::DegreeTooHigh { degree: cs.len() - 1 });
    }
    Ok(cs.iter().map(|c| c.eval(&point)).collect())
}

/// Σ c_k m_k for both backends; errors when they disagree beyond `cfg.form_rel_tol`.
pub fn form_from_coefficients(pf: &Profile, cs: &[f64], cfg: &SpectralConfig) -> Result<FormValue, SpectralError> {
    if cs.len() > MAX_ORDER + 1 {
        return Err(SpectralError::DegreeTooHigh { degree: cs.len() - 1 });
    }
    let m = pf.moments(cfg);
    let dot = |ms: &[f64]| cs.iter().zip(ms).map(|(c, x)| c * x).sum::<f64>();
    let scale: f64 = cs.iter().zip(&m.gl).map(|(c, x)| c.abs() * x).sum();
    let (gl, fft, gl_refined) = (dot(&m.gl), dot(&m.fft), dot(&m.gl_refined));
    let rel_diff = if scale > 0.0 { (gl - fft).abs() / scale } else { 0.0 };
    if rel_diff > cfg.form_rel_tol || !rel_diff.is_finite() {
        return Err(SpectralError::BackendDisagreement { gl, fft, rel_diff });
    }
    Ok(FormValue { gl, fft, gl_refined, rel_diff })
}

/// ∫ h·poly(−∂ₜ², a) h dt with a, λ, N substituted from `a_value` and `p`.
pub fn quadratic_form(
    pf: &Profile,
    poly: &MultiPoly,
    a_value: &Rational,
    p: &Params,
    cfg: &SpectralConfig,
) -> Result<FormValue, SpectralError> {
    let cs: Vec<f64> = tau_coefficients(poly, a_value, p)?.iter().map(to_f64).collect();
    form_from_coefficients(pf, &cs, cfg)
}
