//! R-H quotients of test fields, minimizing sequences, the (τ, ν) scan and the
//! remainder inequality.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::forms::{form_from_coefficients, tau_coefficients, FormValue};
use super::profile::{Profile, ProfileKind};
use super::{SpectralConfig, SpectralError};
use crate::certificates::{c0_for, family};
use crate::constants::{alpha_nu, c_min, rellich_hardy_c, Params};
use crate::exact::to_f64;
use crate::poly::{p as poly, rat, MultiPoly, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// u = x|x|^{λ−1} h(t): only the spherical mean channel f.
    Radial,
    /// u = ∇(|x|^{λ+1} h(t) Y) with −Δ_σ Y = α_ν Y, ν ≥ 1.
    Spherical(u32),
}

impl Mode {
    pub fn from_nu(nu: u32) -> Self {
        if nu == 0 {
            Mode::Radial
        } else {
            Mode::Spherical(nu)
        }
    }

    pub fn nu(self) -> u32 {
        match self {
            Mode::Radial => 0,
            Mode::Spherical(nu) => nu,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SpectralField {
    pub params: Params,
    pub mode: Mode,
    pub profile: Profile,
}

impl SpectralField {
    pub fn new(params: Params, mode: Mode, profile: Profile) -> Self {
        Self { params, mode, profile }
    }

    pub fn nu(&self) -> u32 {
        self.mode.nu()
    }

    /// λ = 0 with ν = 1, where P1(0, α₁) = 0.
    pub fn is_degenerate(&self) -> bool {
        self.nu() == 1 && self.params.lambda().is_zero()
    }

    /// (Q, P) symbols of the field's channel.
    pub fn symbols(&self) -> (&'static MultiPoly, &'static MultiPoly) {
        let f = family();
        match self.mode {
            Mode::Radial => (&f.q0, &f.p0),
            Mode::Spherical(_) => (&f.q1, &f.p1),
        }
    }

    fn coefficients(&self, q: &MultiPoly) -> Result<Vec<f64>, SpectralError> {
        let a = alpha_nu(self.nu(), self.params.n);
        Ok(tau_coefficients(q, &a, &self.params)?.iter().map(to_f64).collect())
    }

    /// Q-form and P-form of the field.
    pub fn forms(&self, cfg: &SpectralConfig) -> Result<(FormValue, FormValue), SpectralError> {
        let (q, p) = self.symbols();
        let qf = form_from_coefficients(&self.profile, &self.coefficients(q)?, cfg)?;
        let pf = form_from_coefficients(&self.profile, &self.coefficients(p)?, cfg)?;
        Ok((qf, pf))
    }

    /// The P-form applied to h′: ∫ τ·P(τ)|ĥ|².
    pub fn remainder_form(&self, cfg: &SpectralConfig) -> Result<FormValue, SpectralError> {
        let (_, p) = self.symbols();
        let shifted = &poly("tau") * p;
        form_from_coefficients(&self.profile, &self.coefficients(&shifted)?, cfg)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct QuotientReport {
    #[serde(rename = "N")]
    pub n_dim: u32,
    pub gamma: f64,
    pub nu: u32,
    pub n: u32,
    pub profile: &'static str,
    pub numerator: f64,
    pub denominator: f64,
    pub quotient: f64,
    /// C_{N,γ,ν} of the field's mode.
    pub target: f64,
    pub gap: f64,
    pub backend_rel_diff: f64,
}

pub fn rh_quotient(field: &SpectralField, cfg: &SpectralConfig) -> Result<QuotientReport, SpectralError> {
    if field.is_degenerate() {
        return Err(SpectralError::DegenerateMode);
    }
    let (num, den) = field.forms(cfg)?;
    if den.value() <= 0.0 {
        return Err(SpectralError::InvalidInput("zero field has no quotient".into()));
    }
    let target = to_f64(&rellich_hardy_c(&field.params, field.nu()));
    let quotient = num.value() / den.value();
    Ok(QuotientReport {
        n_dim: field.params.n,
        gamma: field.params.to_f64().gamma,
        nu: field.nu(),
        n: field.profile.n,
        profile: field.profile.kind.name(),
        numerator: num.value(),
        denominator: den.value(),
        quotient,
        target,
        gap: quotient - target,
        backend_rel_diff: num.rel_diff.max(den.rel_diff),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SequenceReport {
    #[serde(rename = "N")]
    pub n_dim: u32,
    pub gamma: f64,
    pub nu: u32,
    pub target: f64,
    pub reports: Vec<QuotientReport>,
    /// gap(n_i)/gap(n_{i+1}) for consecutive entries.
    pub gap_ratios: Vec<f64>,
    /// Least-squares slope of −log gap against log n.
    pub fitted_exponent: Option<f64>,
}

pub fn minimizing_sequence(
    p: &Params,
    nu_star: u32,
    ns: &[u32],
    kind: ProfileKind,
    cfg: &SpectralConfig,
) -> Result<SequenceReport, SpectralError> {
    let reports = ns
        .iter()
        .map(|&n| {
            let field = SpectralField::new(p.clone(), Mode::from_nu(nu_star), Profile::standard(kind, n)?);
            rh_quotient(&field, cfg)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let gap_ratios = reports.windows(2).map(|w| w[0].gap / w[1].gap).collect();
    let pts: Vec<(f64, f64)> = reports
        .iter()
        .filter(|r| r.gap > 0.0)
        .map(|r| ((r.n as f64).ln(), -r.gap.ln()))
        .collect();
    let fitted_exponent = (pts.len() >= 2).then(|| {
        let k = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        sxy / sxx
    });
    Ok(SequenceReport {
        n_dim: p.n,
        gamma: p.to_f64().gamma,
        nu: nu_star,
        target: to_f64(&rellich_hardy_c(p, nu_star)),
        reports,
        gap_ratios,
        fitted_exponent,
    })
}

/// τ ∈ {0} ∪ logspace(lo, hi, points).
#[derive(Clone, Copy, Debug, Serialize)]
pub struct TauGrid {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
}

impl Default for TauGrid {
    fn default() -> Self {
        Self { lo: 1e-4, hi: 1e4, points: 400 }
    }
}

impl TauGrid {
    pub fn values(&self) -> Vec<f64> {
        let (a, b) = (self.lo.log10(), self.hi.log10());
        let steps = self.points.saturating_sub(1).max(1) as f64;
        std::iter::once(0.0).chain((0..self.points).map(|i| 10f64.powf(a + (b - a) * i as f64 / steps))).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BruteMinReport {
    #[serde(rename = "N")]
    pub n_dim: u32,
    pub gamma: f64,
    pub nu_max: u32,
    pub grid: TauGrid,
    pub min_value: f64,
    pub argmin_tau: f64,
    pub argmin_nu: u32,
    pub c_min: f64,
    pub c_min_argmin: u32,
    pub rel_err: f64,
    pub matches_c_min: bool,
    /// τ = 0 was skipped for ν = 1 because λ = 0 makes Q1/P1 a 0/0 there.
    pub skipped_degenerate_zero: bool,
}

fn horner(cs: &[f64], x: f64) -> f64 {
    cs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

/// Scans Q/P over τ ∈ `grid` and ν ≤ `nu_max`; the minimum must sit at τ = 0
/// and equal C_min to `cfg.min_rel_tol`.
pub fn brute_min_tau_nu(
    p: &Params,
    grid: &TauGrid,
    nu_max: u32,
    cfg: &SpectralConfig,
) -> Result<BruteMinReport, SpectralError> {
    let f = family();
    let taus = grid.values();
    let lambda_zero = p.lambda().is_zero();
    let mut best = (f64::INFINITY, 0.0, 0u32);
    for nu in 0..=nu_max {
        let (q, pp) = if nu == 0 { (&f.q0, &f.p0) } else { (&f.q1, &f.p1) };
        let a = alpha_nu(nu, p.n);
        let qc: Vec<f64> = tau_coefficients(q, &a, p)?.iter().map(to_f64).collect();
        let pc: Vec<f64> = tau_coefficients(pp, &a, p)?.iter().map(to_f64).collect();
        for &tau in &taus {
            if tau == 0.0 && nu == 1 && lambda_zero {
                continue;
            }
            let v = horner(&qc, tau) / horner(&pc, tau);
            if v < best.0 {
                best = (v, tau, nu);
            }
        }
    }
    let cm = c_min(p)?;
    let c = cm.value.approx();
    let rel_err = (best.0 - c).abs() / c.abs().max(f64::MIN_POSITIVE);
    if best.1 != 0.0 {
        return Err(SpectralError::ArgminNotAtZero { tau: best.1, nu: best.2 });
    }
    Ok(BruteMinReport {
        n_dim: p.n,
        gamma: p.to_f64().gamma,
        nu_max,
        grid: *grid,
        min_value: best.0,
        argmin_tau: best.1,
        argmin_nu: best.2,
        c_min: c,
        c_min_argmin: cm.argmin,
        rel_err,
        matches_c_min: rel_err <= cfg.min_rel_tol || (c == 0.0 && best.0.abs() <= cfg.min_rel_tol),
        skipped_degenerate_zero: lambda_zero && nu_max >= 1,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RemainderReport {
    pub regime: Option<&'static str>,
    #[serde(rename = "N")]
    pub n_dim: u32,
    pub gamma: f64,
    pub nu: u32,
    pub n: u32,
    pub profile: &'static str,
    pub q_form: f64,
    pub p_form: f64,
    pub c_min: f64,
    /// Q-form − C_min·P-form.
    pub gap: f64,
    /// P-form applied to h′.
    pub remainder: f64,
    pub c0: f64,
    /// min{1, c₀}.
    pub factor: f64,
    pub scale: f64,
    /// gap − factor·remainder.
    pub slack: f64,
    pub pass: bool,
}

pub fn remainder_check(field: &SpectralField, cfg: &SpectralConfig) -> Result<RemainderReport, SpectralError> {
    let (qf, pf) = field.forms(cfg)?;
    let rem = field.remainder_form(cfg)?;
    let cm = c_min(&field.params)?.value.approx();
    let c0 = to_f64(&c0_for(&field.params));
    let factor = c0.min(1.0);
    let gap = qf.value() - cm * pf.value();
    let scale = qf.value().abs().max(cm.abs() * pf.value().abs());
    let slack = gap - factor * rem.value();
    Ok(RemainderReport {
        regime: None,
        n_dim: field.params.n,
        gamma: field.params.to_f64().gamma,
        nu: field.nu(),
        n: field.profile.n,
        profile: field.profile.kind.name(),
        q_form: qf.value(),
        p_form: pf.value(),
        c_min: cm,
        gap,
        remainder: rem.value(),
        c0,
        factor,
        scale,
        slack,
        pass: slack >= -cfg.remainder_tol * scale,
    })
}

struct RandomRegime {
    name: &'static str,
    n: (u32, u32),
    /// γ = k/8 with k in this range.
    eighths: (i64, i64),
}

const REMAINDER_REGIMES: [RandomRegime; 3] = [
    RandomRegime { name: "gamma_le_1", n: (2, 6), eighths: (-32, 8) },
    RandomRegime { name: "gamma_gt_1_n_ge_3", n: (3, 6), eighths: (9, 40) },
    RandomRegime { name: "gamma_gt_1_n_eq_2", n: (2, 2), eighths: (9, 40) },
];

/// A seeded random field: N and γ from `regime`, ν ≤ 6, n ≤ 20, random profile kind.
fn random_field(rng: &mut ChaCha8Rng, r: &RandomRegime) -> Result<SpectralField, SpectralError> {
    let n_dim = rng.gen_range(r.n.0..=r.n.1);
    let gamma: Rational = rat(rng.gen_range(r.eighths.0..=r.eighths.1), 8);
    let nu = rng.gen_range(0..=6u32);
    let n = rng.gen_range(1..=20u32);
    let kind = if rng.gen_bool(0.5) { ProfileKind::Bump } else { ProfileKind::RaisedCosine };
    let params = Params::new(n_dim, gamma)?;
    Ok(SpectralField::new(params, Mode::from_nu(nu), Profile::standard(kind, n)?))
}

/// `per_regime` seeded random fields in each of the three regimes of c₀.
pub fn remainder_suite(seed: u64, per_regime: usize, cfg: &SpectralConfig) -> Result<Vec<RemainderReport>, SpectralError> {
    let mut out = Vec::new();
    for (i, r) in REMAINDER_REGIMES.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
        for _ in 0..per_regime {
            let field = random_field(&mut rng, r)?;
            let mut rep = remainder_check(&field, cfg)?;
            rep.regime = Some(r.name);
            out.push(rep);
        }
    }
    Ok(out)
}
