//! Splitting a potential φ(t, σ) into its spherical mean channel
//! f = r^{−λ}∂φ̄ and the mode profiles of r^{−λ}(φ − φ̄).
//!
//! For N = 2 the angle is θ on the circle (cos νθ / sin νθ modes); for N = 3
//! the potential is axisymmetric and θ is the polar angle (Legendre modes).

use serde::Serialize;

use super::{SpectralConfig, SpectralError};
use crate::constants::Params;
use crate::exact::to_f64;
use crate::quad::{gl_rule, legendre};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeBasis {
    Cos,
    Sin,
    Legendre,
}

#[derive(Clone, Debug, Serialize)]
pub struct ModeProfile {
    pub nu: u32,
    pub basis: ModeBasis,
    /// Coefficient of the unnormalized basis function (cos νθ, sin νθ or P_ν(cos θ)).
    pub values: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Decomposition {
    pub t: Vec<f64>,
    pub f: Vec<f64>,
    pub modes: Vec<ModeProfile>,
    /// Largest change of any angular coefficient under halving the nodes, relative to the largest coefficient.
    pub mean_change: f64,
}

/// Angular coefficients [mean, (mode coefficients…)] at one t with `nodes` nodes.
fn angular(dim: u32, phi: &dyn Fn(f64) -> f64, nodes: usize, nu_max: u32) -> Vec<f64> {
    let mut out = Vec::new();
    if dim == 2 {
        let th: Vec<f64> = (0..nodes).map(|j| 2.0 * std::f64::consts::PI * j as f64 / nodes as f64).collect();
        let vals: Vec<f64> = th.iter().map(|&t| phi(t)).collect();
        let m = nodes as f64;
        out.push(vals.iter().sum::<f64>() / m);
        for nu in 1..=nu_max {
            let k = nu as f64;
            out.push(2.0 / m * th.iter().zip(&vals).map(|(t, v)| v * (k * t).cos()).sum::<f64>());
            out.push(2.0 / m * th.iter().zip(&vals).map(|(t, v)| v * (k * t).sin()).sum::<f64>());
        }
    } else {
        let rule = gl_rule(nodes);
        let vals: Vec<(f64, f64, f64)> = rule.iter().map(|&(x, w)| (x, w, phi(x.acos()))).collect();
        for nu in 0..=nu_max {
            let s: f64 = vals.iter().map(|(x, w, v)| w * v * legendre(nu, *x)).sum();
            out.push((2 * nu + 1) as f64 / 2.0 * s);
        }
    }
    out
}

/// Eighth-order central first derivative on a uniform grid; values beyond the
/// ends are held constant.
fn derivative(ys: &[f64], dt: f64) -> Vec<f64> {
    const C: [f64; 4] = [4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0];
    let at = |i: isize| ys[i.clamp(0, ys.len() as isize - 1) as usize];
    (0..ys.len() as isize)
        .map(|i| C.iter().enumerate().map(|(k, c)| c * (at(i + k as isize + 1) - at(i - k as isize - 1))).sum::<f64>() / dt)
        .collect()
}

/// `potential(t, θ)` sampled on the uniform grid `t_grid`; modes up to `nu_max`.
pub fn decompose_potential(
    potential: &dyn Fn(f64, f64) -> f64,
    p: &Params,
    t_grid: &[f64],
    nu_max: u32,
    cfg: &SpectralConfig,
) -> Result<Decomposition, SpectralError> {
    let dim = p.n;
    if dim != 2 && dim != 3 {
        return Err(SpectralError::InvalidInput(format!("decomposition supports N = 2, 3, not {dim}")));
    }
    if t_grid.len() < 9 {
        return Err(SpectralError::InvalidInput("t grid needs at least 9 points".into()));
    }
    let dt = t_grid[1] - t_grid[0];
    if dt.is_nan() || dt <= 0.0 || t_grid.windows(2).any(|w| ((w[1] - w[0]) - dt).abs() > 1e-9 * dt.max(1.0)) {
        return Err(SpectralError::InvalidInput("t grid must be uniform and increasing".into()));
    }
    let nodes = cfg.angular_nodes.max(4 * nu_max as usize + 8);
    let fine: Vec<Vec<f64>> = t_grid.iter().map(|&t| angular(dim, &|th| potential(t, th), nodes, nu_max)).collect();
    let coarse: Vec<Vec<f64>> =
        t_grid.iter().map(|&t| angular(dim, &|th| potential(t, th), nodes / 2, nu_max)).collect();
    let scale = fine.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    let diff = fine.iter().flatten().zip(coarse.iter().flatten()).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    let mean_change = if scale > 0.0 { diff / scale } else { 0.0 };
    if mean_change > cfg.mean_tol {
        return Err(SpectralError::MeanNotConverged { change: mean_change });
    }
    let lambda = to_f64(&p.lambda());
    let weight: Vec<f64> = t_grid.iter().map(|t| (-lambda * t).exp()).collect();
    let mean: Vec<f64> = fine.iter().map(|c| c[0]).collect();
    let f = derivative(&mean, dt).iter().zip(&weight).map(|(d, w)| d * w).collect();
    let column = |j: usize| fine.iter().zip(&weight).map(|(c, w)| c[j] * w).collect::<Vec<f64>>();
    let mut modes = Vec::new();
    for nu in 1..=nu_max {
        if dim == 2 {
            let j = 2 * nu as usize - 1;
            modes.push(ModeProfile { nu, basis: ModeBasis::Cos, values: column(j) });
            modes.push(ModeProfile { nu, basis: ModeBasis::Sin, values: column(j + 1) });
        } else {
            modes.push(ModeProfile { nu, basis: ModeBasis::Legendre, values: column(nu as usize) });
        }
    }
    Ok(Decomposition { t: t_grid.to_vec(), f, modes, mean_change })
}
