//! Floating-point guard for the difference-quotient lower bound
//! (Q/P(τ) − Q/P(0))/τ ≥ c₀.

use std::sync::OnceLock;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::family;
use crate::constants::{float, Params};
use crate::poly::{int, rat, MultiPoly, Rational, Var};

/// Remainder constant c₀: 1 for γ ≤ 1, otherwise 1/2 (N ≥ 3) or 1/3 (N = 2).
pub fn c0_for(p: &Params) -> Rational {
    if p.gamma <= int(1) {
        int(1)
    } else if p.n >= 3 {
        rat(1, 2)
    } else {
        rat(1, 3)
    }
}

fn c0_f64(n: u32, gamma: f64) -> f64 {
    if gamma <= 1.0 {
        1.0
    } else if n >= 3 {
        0.5
    } else {
        1.0 / 3.0
    }
}

/// τ-coefficients of (Q0, P0) and (Q1, P1) as polynomials in (a, λ, N).
struct TauCoeffs {
    q0: Vec<MultiPoly>,
    p0: Vec<MultiPoly>,
    q1: Vec<MultiPoly>,
    p1: Vec<MultiPoly>,
}

fn tau_coeffs() -> &'static TauCoeffs {
    static C: OnceLock<TauCoeffs> = OnceLock::new();
    C.get_or_init(|| {
        let f = family();
        TauCoeffs {
            q0: f.q0.coeffs_in(Var::Tau),
            p0: f.p0.coeffs_in(Var::Tau),
            q1: f.q1.coeffs_in(Var::Tau),
            p1: f.p1.coeffs_in(Var::Tau),
        }
    })
}

/// (Q(τ)/P(τ) − Q(0)/P(0))/τ for mode ν (radial symbols at ν = 0), computed as
/// Σ_{k≥1} (q_k p_0 − q_0 p_k) τ^{k−1} / (P(τ) P(0)) so that no 1/τ cancellation occurs.
pub fn difference_quotient_f64(n: u32, gamma: f64, nu: u32, tau: f64) -> f64 {
    let pf = float::ParamsF64 { n, gamma };
    let a = float::alpha(nu as f64, n);
    let pt = [(Var::A, a), (Var::Lambda, pf.lambda()), (Var::N, n as f64)];
    let c = tau_coeffs();
    let (qs, ps) = if nu == 0 { (&c.q0, &c.p0) } else { (&c.q1, &c.p1) };
    let q: Vec<f64> = qs.iter().map(|x| x.eval_f64(&pt)).collect();
    let pc: Vec<f64> = ps.iter().map(|x| x.eval_f64(&pt)).collect();
    let at = |cs: &[f64], t: f64| cs.iter().rev().fold(0.0, |acc, c| acc * t + c);
    let k_max = q.len().max(pc.len());
    let coef = |cs: &[f64], k: usize| cs.get(k).copied().unwrap_or(0.0);
    let m: Vec<f64> = (1..k_max).map(|k| coef(&q, k) * pc[0] - q[0] * coef(&pc, k)).collect();
    at(&m, tau) / (at(&pc, tau) * pc[0])
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaPoint {
    #[serde(rename = "N")]
    pub n: u32,
    pub gamma: f64,
    pub nu: u32,
    pub tau: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaGuardReport {
    pub regime: &'static str,
    pub samples: usize,
    pub c0: f64,
    pub min_quotient: f64,
    pub argmin: LemmaPoint,
    pub pass: bool,
}

pub const LEMMA_TOL: f64 = 1e-12;

struct SampleRegime {
    name: &'static str,
    n: (u32, u32),
    gamma: (f64, f64),
}

const REGIMES: [SampleRegime; 3] = [
    SampleRegime { name: "gamma_le_1", n: (2, 12), gamma: (-6.0, 1.0) },
    SampleRegime { name: "gamma_gt_1_n_ge_3", n: (3, 12), gamma: (1.0, 7.0) },
    SampleRegime { name: "gamma_gt_1_n_eq_2", n: (2, 2), gamma: (1.0, 7.0) },
];

/// `samples` random admissible points (N, γ, ν ≤ 10, τ ∈ [1e−4, 1e4]) per regime.
pub fn lemma_guard(seed: u64, samples: usize) -> Vec<LemmaGuardReport> {
    REGIMES
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
            let mut worst: Option<(f64, LemmaPoint)> = None;
            let mut margin_ok = true;
            let c0 = c0_f64(r.n.1, r.gamma.1);
            let mut taken = 0;
            while taken < samples {
                let n = rng.gen_range(r.n.0..=r.n.1);
                let mut gamma = rng.gen_range(r.gamma.0..r.gamma.1);
                if r.gamma.0 >= 1.0 && gamma <= 1.0 {
                    gamma = f64::from_bits(1.0f64.to_bits() + 1);
                }
                let nu = rng.gen_range(0..=10u32);
                let lambda = 2.0 - n as f64 / 2.0 - gamma;
                if nu == 1 && lambda.abs() < 1e-9 {
                    continue;
                }
                let tau = 10f64.powf(rng.gen_range(-4.0..4.0));
                taken += 1;
                let d = difference_quotient_f64(n, gamma, nu, tau);
                margin_ok &= d >= c0 - LEMMA_TOL;
                if worst.as_ref().is_none_or(|(w, _)| d < *w) {
                    worst = Some((d, LemmaPoint { n, gamma, nu, tau }));
                }
            }
            let (min_quotient, argmin) = worst.expect("at least one sample");
            LemmaGuardReport { regime: r.name, samples, c0, min_quotient, argmin, pass: margin_ok }
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct InfimumReport {
    #[serde(rename = "N")]
    pub n: u32,
    pub gamma: f64,
    pub infimum: f64,
    pub at: LemmaPoint,
    pub pass: bool,
}

/// For γ ≤ 1 the infimum of the difference quotient over ν ≤ 8 and a dense
/// log-grid τ ∈ [1e−4, 1e8] should sit in [1 − 1e−12, 1 + 1e−2].
pub fn le1_infimum_near_one(cases: &[(u32, Rational)]) -> Vec<InfimumReport> {
    let taus: Vec<f64> = (0..=1200).map(|i| 10f64.powf(-4.0 + 12.0 * i as f64 / 1200.0)).collect();
    cases
        .iter()
        .map(|(n, g)| {
            let prm = Params::new(*n, g.clone()).expect("N >= 2");
            let gamma = prm.to_f64().gamma;
            let lambda_zero = prm.lambda().is_zero();
            let mut best = (f64::INFINITY, LemmaPoint { n: *n, gamma, nu: 0, tau: 0.0 });
            for nu in 0..=8u32 {
                if nu == 1 && lambda_zero {
                    continue;
                }
                for &tau in &taus {
                    let d = difference_quotient_f64(*n, gamma, nu, tau);
                    if d < best.0 {
                        best = (d, LemmaPoint { n: *n, gamma, nu, tau });
                    }
                }
            }
            let pass = best.0 >= 1.0 - LEMMA_TOL && best.0 <= 1.0 + 1e-2 && c0_for(&prm) == int(1);
            InfimumReport { n: *n, gamma, infimum: best.0, at: best.1, pass }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c0_table() {
        assert_eq!(c0_for(&Params::new(3, int(0)).unwrap()), int(1));
        assert_eq!(c0_for(&Params::new(3, int(2)).unwrap()), rat(1, 2));
        assert_eq!(c0_for(&Params::new(2, int(2)).unwrap()), rat(1, 3));
    }

    #[test]
    fn radial_quotient_closed_form() {
        // (Q0/P0(τ) − Q0/P0(0))/τ = 1 + (N−1)μ²/(P0(τ)P0(0)).
        let (n, gamma, tau) = (4u32, -0.5f64, 3.0f64);
        let l = 2.0 - n as f64 / 2.0 - gamma;
        let p0 = |t: f64| l * l + n as f64 - 1.0 + t;
        let mu = 2.0 * l + n as f64 - 2.0;
        let expect = 1.0 + (n as f64 - 1.0) * mu * mu / (p0(tau) * p0(0.0));
        assert!((difference_quotient_f64(n, gamma, 0, tau) - expect).abs() < 1e-12);
    }

    #[test]
    fn guard_small_run() {
        for r in lemma_guard(7, 500) {
            assert!(r.pass, "{r:?}");
        }
    }
}
