use std::collections::BTreeMap;

use num_traits::Signed;
use proptest::prelude::*;
use rellich_core::poly::{
    int, nonneg_on_interval, p, rat, IntervalQ, MultiPoly, NonnegVerdict, NonnegWitness, Rational, Var, NVARS,
};

#[test]
fn arithmetic_examples() {
    assert_eq!(&p("tau + 1") * &p("tau - 1"), p("tau^2 - 1"));
    let q = p("3*a*lambda - 1/2");
    assert_eq!(&q + &MultiPoly::zero(), q);
    assert_eq!(&p("a + lambda^2") * &p("a - lambda^2"), p("a^2 - lambda^4"));
}

#[test]
fn substitution_examples() {
    let l = p("lambda^2").substitute(Var::Lambda, &p("1 - N*s/2"));
    assert_eq!(l, p("1 - N*s + N^2*s^2/4"));
    let q = p("tau^3*a + lambda");
    assert_eq!(q.substitute(Var::Tau, &p("tau")), q);
    assert_eq!(p("a").substitute(Var::A, &p("N - 1 + s")), p("N - 1 + s"));
}

#[test]
fn taylor_examples() {
    let cs = p("tau^2 + 2*tau + 1").taylor_coeffs(Var::Tau, &MultiPoly::int(-1)).unwrap();
    assert_eq!(cs, vec![MultiPoly::zero(), MultiPoly::zero(), MultiPoly::one()]);
    let c = p("7/3*lambda");
    assert_eq!(c.taylor_coeffs(Var::Tau, &MultiPoly::int(5)).unwrap(), vec![c.clone()]);
}

#[test]
fn nonneg_examples() {
    let unit = IntervalQ::closed(int(0), int(1));
    let v = nonneg_on_interval(&p("1 - 3*s + 3*s^2"), &unit).unwrap();
    assert!(v.is_nonneg());
    // Minimum of 1 − 3s + 3s² by vertex s = 1/2.
    let vertex = rat(1, 2);
    let min = int(1) - int(3) * &vertex + int(3) * &vertex * &vertex;
    assert_eq!(min, rat(1, 4));

    let tail = p("601/8*s^2 - 15*s + 125/32");
    assert!(nonneg_on_interval(&tail, &IntervalQ::at_least(int(0))).unwrap().is_nonneg());
    let disc = int(225) - int(4) * rat(601, 8) * rat(125, 32);
    assert!(disc.is_negative());

    match nonneg_on_interval(&p("-s"), &unit).unwrap() {
        NonnegVerdict::Negative { at, value } => {
            assert!(value.is_negative());
            assert!(unit.contains(&at));
        }
        v => panic!("expected a negative witness, got {v:?}"),
    }
}

#[test]
fn bernstein_witness_on_unit_interval() {
    let v = nonneg_on_interval(&p("(1 - s)*s^4 + 1/100"), &IntervalQ::closed(int(0), int(1))).unwrap();
    assert!(matches!(v, NonnegVerdict::Nonneg { witness: NonnegWitness::Bernstein { .. } }));
}

#[test]
fn unknown_variable_rejected() {
    assert!("x + 1".parse::<MultiPoly>().is_err());
    assert!("tau +".parse::<MultiPoly>().is_err());
}

#[test]
fn display_parses_back() {
    let q = p("-3/7*tau^2*a + lambda*N^3 - 5 + 1/2*s*mu*ell*m");
    assert_eq!(q.to_string().parse::<MultiPoly>().unwrap(), q);
}

fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=7).prop_map(|(a, b)| rat(a, b))
}

const VARS3: [Var; 3] = [Var::Tau, Var::A, Var::Lambda];

/// Up to 8 terms in (τ, a, λ) with total degree ≤ 6.
fn poly3() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(((0u32..=2, 0u32..=2, 0u32..=2), rational()), 0..8).prop_map(|ts| {
        MultiPoly::from_terms(ts.into_iter().map(|((i, j, k), c)| {
            let mut e = [0u32; NVARS];
            e[Var::Tau.index()] = i;
            e[Var::A.index()] = j;
            e[Var::Lambda.index()] = k;
            (e, c)
        }))
    })
}

fn point() -> impl Strategy<Value = BTreeMap<Var, Rational>> {
    prop::collection::vec(rational(), 3).prop_map(|xs| VARS3.iter().copied().zip(xs).collect())
}

fn univariate(max_deg: usize) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(rational(), 4..=max_deg + 1).prop_map(|cs| {
        MultiPoly::from_terms(cs.into_iter().enumerate().map(|(k, c)| {
            let mut e = [0u32; NVARS];
            e[Var::S.index()] = k as u32;
            (e, c)
        }))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn add_then_subtract(a in poly3(), b in poly3()) {
        prop_assert_eq!(&(&a + &b) - &b, a);
    }

    #[test]
    fn product_evaluates_to_product(a in poly3(), b in poly3(), pts in prop::collection::vec(point(), 50)) {
        let ab = &a * &b;
        for pt in &pts {
            prop_assert_eq!(ab.eval(pt), a.eval(pt) * b.eval(pt));
        }
    }

    #[test]
    fn taylor_reexpansion(a in poly3(), c in rational()) {
        let cs = a.taylor_coeffs(Var::Tau, &MultiPoly::constant(c.clone())).unwrap();
        let shift = &p("tau") - &MultiPoly::constant(c);
        let mut acc = MultiPoly::zero();
        let mut pw = MultiPoly::one();
        for k in &cs {
            prop_assert!(!k.contains(Var::Tau));
            acc += &(k * &pw);
            pw = &pw * &shift;
        }
        prop_assert_eq!(acc, a);
    }

    #[test]
    fn display_roundtrip(a in poly3()) {
        prop_assert_eq!(a.to_string().parse::<MultiPoly>().unwrap(), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// Exact verdict agrees with 1000-point rational sampling on [0, 1].
    #[test]
    fn nonneg_agrees_with_sampling(q in univariate(4)) {
        let unit = IntervalQ::closed(int(0), int(1));
        let verdict = nonneg_on_interval(&q, &unit).unwrap();
        let sample_neg = (0..=1000).map(|i| rat(i, 1000)).any(|x| {
            let mut m = BTreeMap::new();
            m.insert(Var::S, x);
            q.eval(&m).is_negative()
        });
        match verdict {
            NonnegVerdict::Nonneg { .. } => prop_assert!(!sample_neg),
            NonnegVerdict::Negative { at, value } => {
                prop_assert!(unit.contains(&at));
                let mut m = BTreeMap::new();
                m.insert(Var::S, at);
                prop_assert_eq!(q.eval(&m), value.clone());
                prop_assert!(value.is_negative());
            }
            NonnegVerdict::Inconclusive { reason } => prop_assert!(false, "inconclusive: {}", reason),
        }
    }

    /// Squares plus a nonnegative constant are always certified.
    #[test]
    fn squares_are_nonneg(q in univariate(3), c in 0i64..5) {
        let sq = &(&q * &q) + &MultiPoly::int(c);
        prop_assert!(nonneg_on_interval(&sq, &IntervalQ::closed(int(-2), int(3))).unwrap().is_nonneg());
        prop_assert!(nonneg_on_interval(&sq, &IntervalQ::at_least(int(0))).unwrap().is_nonneg());
    }
}

#[test]
fn chained_substitution_suffix() {
    assert_eq!(p("(lambda*N)[lambda := N + s][N := 2]"), p("2*s + 4"));
}
