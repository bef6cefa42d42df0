//! Compactly supported profiles h and their dilations h(t/n).

use std::f64::consts::PI;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::SpectralError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileKind {
    /// exp(−1/(1 − x²)) on (−1, 1).
    Bump,
    /// cos⁸(πx/2) on [−1, 1].
    RaisedCosine,
}

impl ProfileKind {
    pub fn name(self) -> &'static str {
        match self {
            ProfileKind::Bump => "bump",
            ProfileKind::RaisedCosine => "raised_cosine",
        }
    }
}

impl std::str::FromStr for ProfileKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "bump" => Ok(ProfileKind::Bump),
            "raised_cosine" | "cosine" => Ok(ProfileKind::RaisedCosine),
            _ => Err(format!("unknown profile kind `{s}`")),
        }
    }
}

pub const MIN_POINTS_PER_UNIT: u32 = 16;

/// Default grid density: about 4096 samples over the support, never below 16 per unit.
pub fn default_points_per_unit(n: u32) -> u32 {
    (2048 / n.max(1)).max(MIN_POINTS_PER_UNIT)
}

/// h, h′, …, h⁗ of the undilated profile at x.
pub fn base_derivatives(kind: ProfileKind, x: f64) -> [f64; 5] {
    if x.abs() >= 1.0 {
        return [0.0; 5];
    }
    match kind {
        ProfileKind::Bump => {
            // g = −1/(1 − x²) = −½(1/(1 − x) + 1/(1 + x)); h = exp(g).
            let (u, v) = (1.0 - x, 1.0 + x);
            let mut g = [0.0; 5];
            let mut fact = 1.0;
            for (k, gk) in g.iter_mut().enumerate() {
                if k > 0 {
                    fact *= k as f64;
                }
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                *gk = -0.5 * fact * (u.powi(-(k as i32 + 1)) + sign * v.powi(-(k as i32 + 1)));
            }
            let h = g[0].exp();
            let (g1, g2, g3, g4) = (g[1], g[2], g[3], g[4]);
            [
                h,
                g1 * h,
                (g2 + g1 * g1) * h,
                (g3 + 3.0 * g1 * g2 + g1.powi(3)) * h,
                (g4 + 4.0 * g1 * g3 + 3.0 * g2 * g2 + 6.0 * g1 * g1 * g2 + g1.powi(4)) * h,
            ]
        }
        ProfileKind::RaisedCosine => {
            // cos⁸θ = (35 + 56 cos 2θ + 28 cos 4θ + 8 cos 6θ + cos 8θ)/128 with θ = πx/2.
            const C: [f64; 5] = [35.0, 56.0, 28.0, 8.0, 1.0];
            std::array::from_fn(|d| {
                let mut s = if d == 0 { C[0] } else { 0.0 };
                for (j, c) in C.iter().enumerate().skip(1) {
                    let w = j as f64 * PI;
                    s += c * w.powi(d as i32) * (w * x + d as f64 * PI / 2.0).cos();
                }
                s / 128.0
            })
        }
    }
}

/// Dilated, scaled profile amp·h(t/n) sampled on a uniform grid of [−n, n].
#[derive(Clone, Debug)]
pub struct Profile {
    pub kind: ProfileKind,
    pub n: u32,
    pub points_per_unit: u32,
    pub amp: f64,
    pub grid: Vec<f64>,
    /// `samples[k][i]` is the k-th t-derivative at `grid[i]`.
    pub samples: [Vec<f64>; 5],
    moments: OnceLock<super::forms::Moments>,
}

pub fn make_profile(kind: ProfileKind, n: u32, points_per_unit: u32) -> Result<Profile, SpectralError> {
    Profile::new(kind, n, points_per_unit, 1.0)
}

impl Profile {
    pub fn new(kind: ProfileKind, n: u32, points_per_unit: u32, amp: f64) -> Result<Self, SpectralError> {
        if n == 0 {
            return Err(SpectralError::InvalidInput("dilation n must be at least 1".into()));
        }
        if points_per_unit < MIN_POINTS_PER_UNIT {
            return Err(SpectralError::InsufficientResolution { points_per_unit });
        }
        if !amp.is_finite() {
            return Err(SpectralError::InvalidInput("profile amplitude must be finite".into()));
        }
        let m = 2 * n as usize * points_per_unit as usize;
        let dt = 1.0 / points_per_unit as f64;
        let grid: Vec<f64> = (0..=m).map(|i| -(n as f64) + i as f64 * dt).collect();
        let mut samples: [Vec<f64>; 5] = Default::default();
        let mut pf = Self { kind, n, points_per_unit, amp, grid, samples: Default::default(), moments: OnceLock::new() };
        for &t in &pf.grid {
            let d = pf.derivatives(t);
            for k in 0..5 {
                samples[k].push(d[k]);
            }
        }
        pf.samples = samples;
        Ok(pf)
    }

    /// Default-resolution profile with unit amplitude.
    pub fn standard(kind: ProfileKind, n: u32) -> Result<Self, SpectralError> {
        make_profile(kind, n, default_points_per_unit(n))
    }

    pub fn dt(&self) -> f64 {
        1.0 / self.points_per_unit as f64
    }

    /// Same profile multiplied by `c`.
    pub fn scaled(&self, c: f64) -> Result<Self, SpectralError> {
        Self::new(self.kind, self.n, self.points_per_unit, self.amp * c)
    }

    /// amp·dᵏ/dtᵏ h(t/n) for k = 0..=4.
    pub fn derivatives(&self, t: f64) -> [f64; 5] {
        let n = self.n as f64;
        let b = base_derivatives(self.kind, t / n);
        std::array::from_fn(|k| self.amp * b[k] / n.powi(k as i32))
    }

    /// Closed-form ∫h² dt where one is known (raised cosine).
    pub fn analytic_norm_sq(&self) -> Option<f64> {
        match self.kind {
            // ∫_{−1}^{1} cos¹⁶(πx/2) dx = 2·C(16, 8)/4⁸.
            ProfileKind::RaisedCosine => Some(self.amp * self.amp * self.n as f64 * 2.0 * 12870.0 / 65536.0),
            ProfileKind::Bump => None,
        }
    }

    /// Moments ∫(h⁽ᵏ⁾)² dt, cached for the default cell count.
    pub fn moments(&self, cfg: &super::SpectralConfig) -> std::borrow::Cow<'_, super::forms::Moments> {
        let cached = self.moments.get_or_init(|| super::forms::Moments::compute(self, cfg));
        if cached.gl_cells == cfg.gl_cells {
            std::borrow::Cow::Borrowed(cached)
        } else {
            std::borrow::Cow::Owned(super::forms::Moments::compute(self, cfg))
        }
    }
}
