//! Automatic checks for claims argued as "every coefficient is nonnegative".
//!
//! These recompute the coefficient lists directly from the families and do not
//! read the certificate corpus, so each claim is checked along two routes.

use num_traits::Signed;

use super::checker::{CertReport, Regime};
use super::corpus::Group;
use super::family;
use crate::poly::{nonneg_on_interval, p, rat, IntervalQ, MultiPoly, Var};

fn report(name: &str, group: Group, regime: Regime, identity_ok: bool, failing: Option<String>) -> CertReport {
    CertReport {
        name: name.to_string(),
        group,
        regime,
        n: None,
        identity_ok,
        signs_ok: failing.is_none(),
        failing,
    }
}

/// Re-sum Taylor coefficients `cs` about `v = center` and compare with `q`.
fn resums(q: &MultiPoly, cs: &[MultiPoly], v: Var, center: &MultiPoly) -> bool {
    let x = &MultiPoly::var(v) - center;
    let mut acc = MultiPoly::zero();
    let mut pw = MultiPoly::one();
    for c in cs {
        acc += &(c * &pw);
        pw = &pw * &x;
    }
    &acc == q
}

/// Coefficients of 𝒢₁(1 − Ns/2) in powers of N − 2, each checked on s ∈ [0, 1].
pub fn sg1_case1_coeffs() -> Vec<MultiPoly> {
    let q = family().script_g1.substitute(Var::Lambda, &p("1 - N*s/2"));
    q.taylor_coeffs(Var::N, &MultiPoly::int(2)).expect("center is constant")
}

pub fn sg1_case1() -> CertReport {
    let q = family().script_g1.substitute(Var::Lambda, &p("1 - N*s/2"));
    let cs = sg1_case1_coeffs();
    let ok = resums(&q, &cs, Var::N, &MultiPoly::int(2));
    let unit = IntervalQ::closed(rat(0, 1), rat(1, 1));
    let failing = cs.iter().enumerate().find_map(|(k, c)| match nonneg_on_interval(c, &unit) {
        Ok(v) if v.is_nonneg() => None,
        Ok(v) => Some(format!("coefficient of (N-2)^{k} = {c}: {v:?}")),
        Err(e) => Some(format!("coefficient of (N-2)^{k} = {c}: {e}")),
    });
    report("auto_sg1_case1_coefficients", Group::Le1, Regime::Le1Case1, ok, failing)
}

/// Lower bound for G0(2N + s)/(N + 1 + s) in powers of λ − 1, coefficients as
/// polynomials in (N − 2, s).
pub fn g0_case2_coeffs() -> Vec<MultiPoly> {
    case2_lower().taylor_coeffs(Var::Lambda, &MultiPoly::int(1)).expect("center is constant")
}

/// (N + 1 + s)(2λ + N − 2)((λ + 1)² + λ²) plus 𝒢₁ without its N²(2λ + N) part.
fn case2_lower() -> MultiPoly {
    &(&p("(N + 1 + s)*(2*lambda + N - 2)*((lambda + 1)^2 + lambda^2)") + &family().script_g1)
        - &p("N^2*(2*lambda + N)")
}

pub fn g0_case2() -> CertReport {
    let fam = family();
    let lower = case2_lower();
    let cs = g0_case2_coeffs();
    let ok = resums(&lower, &cs, Var::Lambda, &MultiPoly::int(1));
    // G0(α₁ + t) − t·lower, t = N + 1 + s, must be manifestly nonnegative for λ ≥ 1.
    let t = p("N + 1 + s");
    let g0_shift = fam.g0.substitute(Var::A, &(&p("N - 1") + &t));
    let rest = &g0_shift - &(&t * &lower);
    let rest_m = rest.substitute_many(&[(Var::N, p("m + 2")), (Var::Lambda, p("ell + 1"))]);
    let mut failing = cs.iter().enumerate().find_map(|(k, c)| {
        let cm = c.substitute(Var::N, &p("m + 2"));
        (!cm.all_coeffs_nonneg()).then(|| format!("coefficient of (lambda-1)^{k} = {c} has a negative part in (N-2, s)"))
    });
    if failing.is_none() && !rest_m.all_coeffs_nonneg() {
        failing = Some("G0(2N + s) - (N + 1 + s) * lower bound is not coefficientwise nonnegative".into());
    }
    report("auto_g0_case2_coefficients", Group::Le1, Regime::Le1Case2, ok, failing)
}

/// E01(1 − N/2 − s) as a polynomial in s with coefficients in N.
fn e01_param() -> MultiPoly {
    family().e01.substitute(Var::Lambda, &p("1 - N/2 - s"))
}

pub fn e01_param_nge4() -> CertReport {
    let q = e01_param().substitute(Var::N, &p("m + 4"));
    let failing = q.coeffs_in(Var::S).iter().enumerate().find_map(|(k, c)| {
        (!c.all_coeffs_nonneg()).then(|| format!("coefficient of s^{k} = {c} has a negative part in N - 4"))
    });
    report("auto_e01_param_nge4_coefficients", Group::Gt1, Regime::Gt1Nge4, true, failing)
}

pub fn e01_param_n3() -> CertReport {
    let q = e01_param().substitute(Var::N, &MultiPoly::int(3));
    let cs = q.coeffs_in(Var::S);
    // Cubic and higher coefficients are positive constants; the quadratic tail
    // is positive by its discriminant.
    let mut failing = cs
        .iter()
        .enumerate()
        .skip(3)
        .find_map(|(k, c)| c.as_constant().filter(|x| !x.is_negative()).is_none().then(|| format!("coefficient of s^{k} = {c}")));
    let tail: Vec<_> = cs.iter().take(3).map(|c| c.as_constant().expect("N fixed")).collect();
    let disc = &tail[1] * &tail[1] - rat(4, 1) * &tail[2] * &tail[0];
    if failing.is_none() && !(disc.is_negative() && tail[2].is_positive()) {
        failing = Some(format!("quadratic tail discriminant {disc} is not negative"));
    }
    report("auto_e01_param_n3_discriminant", Group::Gt1, Regime::Gt1Nge3, true, failing)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case1_top_coefficient() {
        let cs = sg1_case1_coeffs();
        assert_eq!(cs.len(), 6);
        assert_eq!(cs[5], p("1/16*(1 - s)*s^4"));
    }

    #[test]
    fn case2_cubic_coefficient() {
        assert_eq!(g0_case2_coeffs()[3], p("4*(s + 2*N - 4)"));
    }

    #[test]
    fn n3_tail_discriminant() {
        let d = rat(225, 1) - rat(4, 1) * rat(601, 8) * rat(125, 32);
        assert!(d.is_negative());
        assert!(e01_param_n3().pass());
    }

    #[test]
    fn auto_checks_pass() {
        for r in [sg1_case1(), g0_case2(), e01_param_nge4()] {
            assert!(r.pass(), "{r:?}");
        }
    }
}
