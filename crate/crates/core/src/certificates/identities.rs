//! Rational-function identities between the closed-form constants A_{N,γ,ν},
//! C_{N,γ,ν} and the P/Q symbols, checked exactly in (λ, N, s) with s = ν.
//!
//! Two sign facts that the identities only imply on a parameter set are
//! sampled exactly at seeded random rational points.

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::checker::{CertReport, Regime};
use super::corpus::Group;
use super::family;
use crate::constants::{rellich_hardy_a, rellich_hardy_c, Params};
use crate::poly::{p, rat, MultiPoly, RatFunc, Var};

/// Parse with `gamma` standing for 2 − N/2 − λ.
fn pg(src: &str) -> MultiPoly {
    p(&src.replace("gamma", "(2 - N/2 - lambda)"))
}

fn alpha(x: &MultiPoly) -> MultiPoly {
    x * &(x + &p("N - 2"))
}

fn nu() -> MultiPoly {
    MultiPoly::var(Var::S)
}

fn shifted(k: i64) -> MultiPoly {
    &nu() + &MultiPoly::int(k)
}

fn rf(num: MultiPoly, den: MultiPoly) -> RatFunc {
    RatFunc::new(num, den)
}

/// A_ν = (α_ν − α_λ)² / (α_ν + λ²).
fn a_lambda(x: &MultiPoly) -> RatFunc {
    let d = &alpha(x) - &alpha(&p("lambda"));
    rf(&d * &d, &alpha(x) + &p("lambda^2"))
}

fn a0() -> MultiPoly {
    p("(lambda + N - 2)^2")
}

/// P1(0, a) and Q1(0, a).
fn p1_0(a: &MultiPoly) -> MultiPoly {
    family().p1.substitute_many(&[(Var::Tau, MultiPoly::zero()), (Var::A, a.clone())])
}

fn q1_0(a: &MultiPoly) -> MultiPoly {
    family().q1.substitute_many(&[(Var::Tau, MultiPoly::zero()), (Var::A, a.clone())])
}

/// C_ν = (α_ν + (λ−1)²)(α_{λ+1} − α_ν)² / P1(0, α_ν).
fn c_lambda(x: &MultiPoly) -> RatFunc {
    let a = alpha(x);
    let d = &alpha(&p("lambda + 1")) - &a;
    rf(&(&a + &p("(lambda - 1)^2")) * &(&d * &d), p1_0(&a))
}

fn w(a: &MultiPoly) -> MultiPoly {
    family().w.substitute(Var::A, a)
}

fn report(name: &str, ok: bool, failing: Option<String>) -> CertReport {
    CertReport {
        name: name.to_string(),
        group: Group::General,
        regime: Regime::General,
        n: None,
        identity_ok: ok,
        signs_ok: true,
        failing,
    }
}

fn identity(name: &str, lhs: RatFunc, rhs: RatFunc) -> CertReport {
    let ok = lhs.identical(&rhs);
    let failing = (!ok).then(|| {
        let d = &(&lhs.num * &rhs.den) - &(&rhs.num * &lhs.den);
        let mut s = format!("cross-multiplied difference = {d}");
        s.truncate(400);
        s
    });
    report(name, ok, failing)
}

pub fn a_forms_agree() -> CertReport {
    let x = nu();
    let gamma_form = rf(
        pg("((gamma - 1)^2 - (s + N/2 - 1)^2)^2"),
        &pg("(gamma + N/2 - 2)^2") + &alpha(&x),
    );
    identity("a_gamma_and_lambda_forms", gamma_form, a_lambda(&x))
}

pub fn a0_forms_agree() -> CertReport {
    identity("a0_gamma_and_lambda_forms", pg("(gamma - N/2)^2").into(), a0().into())
}

/// (A1 − A0)/(N − 1) = −(3λ² + 4(N−2)λ + N² − 5N + 5)/(λ² + N − 1).
pub fn a1_minus_a0() -> CertReport {
    let lhs = (a_lambda(&MultiPoly::one()) - a0().into()) / p("N - 1").into();
    let rhs = rf(p("-(3*lambda^2 + 4*(N - 2)*lambda + N^2 - 5*N + 5)"), p("lambda^2 + N - 1"));
    identity("a1_minus_a0", lhs, rhs)
}

/// (A_{ν+1} − A_ν)/(2ν + N − 1) in terms of α_ν α_{ν+1} and A1 − A0.
pub fn a_increment() -> CertReport {
    let (x, x1) = (nu(), shifted(1));
    let (al, al1) = (alpha(&x), alpha(&x1));
    let lhs = (a_lambda(&x1) - a_lambda(&x)) / p("2*s + N - 1").into();
    let a1a0 = a_lambda(&MultiPoly::one()) - a0().into();
    let inner = RatFunc::poly(&al * &al1)
        + RatFunc::poly(p("lambda^2"))
            * (RatFunc::poly(p("2*s*(s + N - 1)")) + rf(p("N - 1 + lambda^2"), p("N - 1")) * a1a0);
    let rhs = inner / RatFunc::poly(&(&al + &p("lambda^2")) * &(&al1 + &p("lambda^2")));
    identity("a_increment", lhs, rhs)
}

/// The ν ≥ 2 closed form for C in γ equals Q1(0, α_ν)/P1(0, α_ν) and the λ-form.
pub fn c_forms_agree() -> Vec<CertReport> {
    let x = nu();
    let a = alpha(&x);
    let gamma_form = rf(
        &pg("((gamma - 2)^2 - (s + N/2 - 1)^2)^2") * &(&pg("(gamma + N/2 - 1)^2") + &a),
        &pg("((gamma - 2)^2 - (s + N/2 - 1)^2)^2")
            + &(&pg("2*(gamma - 1)") * &(&(&pg("2*gamma + N - 5") * &a) + &pg("(N - 1)*(gamma + N/2 - 3)^2"))),
    );
    let qp = rf(q1_0(&a), p1_0(&a));
    vec![
        identity("c_gamma_form_is_q1_over_p1", gamma_form, qp.clone()),
        identity("c_lambda_form_is_q1_over_p1", c_lambda(&x), qp),
    ]
}

/// The separate ν = 0 and ν = 1 closed forms.
pub fn c_low_modes() -> Vec<CertReport> {
    let fam = family();
    let one = MultiPoly::one();
    let a1 = alpha(&one);
    let c1 = rf(
        &pg("(gamma - N/2 - 2)^2") * &pg("(gamma + N/2 - 1)^2 + N - 1"),
        pg("(gamma + N/2 - 3)^2 + 3*(N - 1)"),
    );
    let c0 = rf(pg("((gamma - 1)^2 - N^2/4)^2"), pg("(gamma + N/2 - 2)^2 + N - 1"));
    let tau0 = |q: &MultiPoly| q.substitute(Var::Tau, &MultiPoly::zero());
    vec![
        identity("c1_closed_form", c1, rf(q1_0(&a1), p1_0(&a1))),
        identity("c0_closed_form", c0.clone(), rf(tau0(&fam.q0), tau0(&fam.p0))),
        identity("c0_equals_a1", c0, a_lambda(&one)),
    ]
}

/// C_ν − A_{ν∓1} through W(α_ν).
pub fn c_minus_neighbours() -> Vec<CertReport> {
    let x = nu();
    let a = alpha(&x);
    let c = c_lambda(&x);
    let below = rf(
        &p("-2*(s - lambda - 1)^2*(s + N - 2)") * &w(&a),
        &(&alpha(&shifted(-1)) + &p("lambda^2")) * &p1_0(&a),
    );
    let above = rf(
        &p("2*s*(1 - s - N - lambda)^2") * &w(&a),
        &(&alpha(&shifted(1)) + &p("lambda^2")) * &p1_0(&a),
    );
    vec![
        identity("c_minus_a_below", c.clone() - a_lambda(&shifted(-1)), below),
        identity("c_minus_a_above", c - a_lambda(&shifted(1)), above),
    ]
}

/// C1 − C0 in terms of A1 − A0 and a positive remainder.
pub fn c1_minus_c0() -> CertReport {
    let one = MultiPoly::one();
    let c0 = a_lambda(&one);
    let lhs = c_lambda(&one) - c0;
    let a1a0 = a_lambda(&one) - a0().into();
    let rest = rf(p("(N^2 - 1)/5*((5*lambda + 2*N - 4)^2 + N^2 + N - 1)"), p("lambda^2 + N - 1"));
    let rhs = (RatFunc::poly(p("(lambda - 1)^2")) * a1a0 + rest) / RatFunc::poly(p("(lambda + 1)^2 + 3*(N - 1)"));
    identity("c1_minus_c0", lhs, rhs)
}

/// At λ = 0: C_ν = (α_ν + 1)(1 − (N − 2)/(α_ν − 1)).
pub fn c_at_lambda_zero() -> CertReport {
    let a = alpha(&nu());
    let lhs = c_lambda(&nu()).substitute_many(&[(Var::Lambda, MultiPoly::zero())]);
    let rhs = rf(&(&a + &MultiPoly::one()) * &(&a - &p("N - 1")), &a - &MultiPoly::one());
    identity("c_at_lambda_zero", lhs, rhs)
}

/// −12(3λ² + 4(N−2)λ + N² − 5N + 5) = 4(N² − N + 1) − (6γ − N − 4)².
pub fn improvement_region_polynomial() -> CertReport {
    let lhs = p("-12*(3*lambda^2 + 4*(N - 2)*lambda + N^2 - 5*N + 5)");
    let rhs = pg("4*(N^2 - N + 1) - (6*gamma - N - 4)^2");
    identity("improvement_region_polynomial", lhs.into(), rhs.into())
}

fn random_params(rng: &mut ChaCha8Rng) -> Params {
    let n = rng.gen_range(2..=10u32);
    let g = rat(rng.gen_range(-48..=48), rng.gen_range(1..=8));
    Params::new(n, g).expect("N >= 2")
}

const SAMPLES: usize = 200;

/// C1 > C0 at sampled parameters with A1 ≥ A0.
pub fn c1_exceeds_c0_sampled(seed: u64) -> CertReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tested = 0;
    let mut failing = None;
    while tested < SAMPLES {
        let prm = random_params(&mut rng);
        if rellich_hardy_a(&prm, 1) < rellich_hardy_a(&prm, 0) {
            continue;
        }
        tested += 1;
        if rellich_hardy_c(&prm, 1) <= rellich_hardy_c(&prm, 0) {
            failing = Some(format!("N = {}, gamma = {}", prm.n, prm.gamma));
            break;
        }
    }
    CertReport { signs_ok: failing.is_none(), ..report("c1_exceeds_c0_sampled", true, failing) }
}

/// (C_ν − A_{ν−1})(C_ν − A_{ν+1}) ≤ 0 at sampled (N, γ, ν), λ ≠ 0.
pub fn c_between_neighbours_sampled(seed: u64) -> CertReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tested = 0;
    let mut failing = None;
    while tested < SAMPLES {
        let prm = random_params(&mut rng);
        if prm.lambda().is_zero() {
            continue;
        }
        let k = rng.gen_range(1..=8u32);
        tested += 1;
        let c = rellich_hardy_c(&prm, k);
        let prod = (&c - rellich_hardy_a(&prm, k - 1)) * (&c - rellich_hardy_a(&prm, k + 1));
        if prod.is_positive() {
            failing = Some(format!("N = {}, gamma = {}, nu = {k}", prm.n, prm.gamma));
            break;
        }
    }
    CertReport { signs_ok: failing.is_none(), ..report("c_between_neighbours_sampled", true, failing) }
}

pub const SAMPLE_SEED: u64 = 0x5eed_c0de;

/// Every identity and sampled sign check above.
pub fn verify_constant_identities() -> Vec<CertReport> {
    let mut out = vec![a_forms_agree(), a0_forms_agree(), a1_minus_a0(), a_increment()];
    out.extend(c_forms_agree());
    out.extend(c_low_modes());
    out.extend(c_minus_neighbours());
    out.extend([
        c1_minus_c0(),
        c_at_lambda_zero(),
        improvement_region_polynomial(),
        c1_exceeds_c0_sampled(SAMPLE_SEED),
        c_between_neighbours_sampled(SAMPLE_SEED + 1),
    ]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    #[test]
    fn all_identities_hold() {
        for r in verify_constant_identities() {
            assert!(r.pass(), "{r:?}");
        }
    }

    #[test]
    fn c_minus_a_below_at_sample_point() {
        // N = 3, γ = 0, ν = 2: λ = 1/2.
        let prm = Params::new(3, int(0)).unwrap();
        let lhs = rellich_hardy_c(&prm, 2) - rellich_hardy_a(&prm, 1);
        let at = |q: &MultiPoly| {
            q.substitute_many(&[(Var::Lambda, MultiPoly::rat(1, 2)), (Var::N, MultiPoly::int(3)), (Var::S, MultiPoly::int(2))])
                .as_constant()
                .unwrap()
        };
        let a = alpha(&nu());
        let num = &p("-2*(s - lambda - 1)^2*(s + N - 2)") * &w(&a);
        let den = &(&alpha(&shifted(-1)) + &p("lambda^2")) * &p1_0(&a);
        assert_eq!(lhs, at(&num) / at(&den));
    }

    #[test]
    fn wrong_identity_is_reported() {
        let r = identity("bad", p("lambda").into(), p("lambda + 1").into());
        assert!(!r.pass());
        assert!(r.failing.unwrap().contains("difference"));
    }
}
