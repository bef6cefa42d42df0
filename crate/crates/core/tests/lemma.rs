use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use proptest::prelude::*;
use rellich_core::certificates::lemma::{le1_infimum_near_one, LEMMA_TOL};
use rellich_core::certificates::{c0_for, difference_quotient_f64, family, lemma_guard};
use rellich_core::constants::{alpha_nu, Params};
use rellich_core::poly::{int, rat, MultiPoly, Rational, Var};

fn pr(n: u32, g: Rational) -> Params {
    Params::new(n, g).unwrap()
}

/// (Q/P(τ) − Q/P(0))/τ in exact arithmetic at rational τ > 0.
fn quotient_exact(p: &Params, nu: u32, tau: &Rational) -> Rational {
    let fam = family();
    let (q, d): (&MultiPoly, &MultiPoly) = if nu == 0 { (&fam.q0, &fam.p0) } else { (&fam.q1, &fam.p1) };
    let at = |poly: &MultiPoly, t: Rational| {
        let m: BTreeMap<Var, Rational> =
            [(Var::Tau, t), (Var::A, alpha_nu(nu, p.n)), (Var::Lambda, p.lambda()), (Var::N, int(p.n as i64))]
                .into_iter()
                .collect();
        poly.eval(&m)
    };
    let r = |t: Rational| at(q, t.clone()) / at(d, t);
    (r(tau.clone()) - r(int(0))) / tau
}

#[test]
fn remainder_constants() {
    assert_eq!(c0_for(&pr(3, int(0))), int(1));
    assert_eq!(c0_for(&pr(3, int(2))), rat(1, 2));
    assert_eq!(c0_for(&pr(2, int(2))), rat(1, 3));
    assert_eq!(c0_for(&pr(2, int(1))), int(1));
    assert_eq!(c0_for(&pr(7, rat(9, 8))), rat(1, 2));
}

#[test]
fn float_quotient_matches_exact() {
    for (n, g, nu) in [(3, int(0), 0), (3, int(0), 2), (2, rat(5, 2), 1), (5, int(3), 4), (4, rat(-3, 2), 3)] {
        let p = pr(n, g.clone());
        for tau in [rat(1, 10_000), rat(1, 3), int(7), int(5000)] {
            let exact = quotient_exact(&p, nu, &tau).to_f64().unwrap();
            let got = difference_quotient_f64(n, g.to_f64().unwrap(), nu, tau.to_f64().unwrap());
            assert!((got - exact).abs() <= 1e-12 * exact.abs().max(1.0), "({n}, {g}, {nu}, {tau}): {got} vs {exact}");
        }
    }
}

#[test]
fn small_tau_has_no_cancellation() {
    // Exact value at τ = 1e−8 against the float evaluation at the same τ.
    let p = pr(3, rat(1, 2));
    let tau = rat(1, 100_000_000);
    let exact = quotient_exact(&p, 2, &tau).to_f64().unwrap();
    let got = difference_quotient_f64(3, 0.5, 2, 1e-8);
    assert!((got - exact).abs() <= 1e-12 * exact.abs());
}

#[test]
fn guard_is_seeded_and_passes() {
    let a = lemma_guard(5, 500);
    let b = lemma_guard(5, 500);
    assert_eq!(a.len(), 3);
    for (x, y) in a.iter().zip(&b) {
        assert!(x.pass, "{x:?}");
        assert_eq!((x.min_quotient, x.argmin.tau), (y.min_quotient, y.argmin.tau));
        assert!(x.min_quotient >= x.c0 - LEMMA_TOL);
    }
    let c0s: Vec<f64> = a.iter().map(|r| r.c0).collect();
    assert_eq!(c0s, vec![1.0, 0.5, 1.0 / 3.0]);
}

#[test]
fn le1_infimum_approaches_one() {
    let reps = le1_infimum_near_one(&[(3, int(0)), (2, rat(1, 2)), (8, int(-4))]);
    for r in &reps {
        assert!(r.pass, "{r:?}");
        assert!(r.infimum >= 1.0 - 1e-12 && r.infimum <= 1.01);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn quotient_bounded_below_by_c0(n in 2u32..=12, k in -48i64..=56, nu in 0u32..=10, e in -4.0f64..4.0) {
        let g = rat(k, 8);
        let p = pr(n, g.clone());
        prop_assume!(!(nu == 1 && p.lambda() == int(0)));
        let c0 = c0_for(&p).to_f64().unwrap();
        let d = difference_quotient_f64(n, g.to_f64().unwrap(), nu, 10f64.powf(e));
        prop_assert!(d >= c0 - LEMMA_TOL, "{d} < {c0}");
    }
}
