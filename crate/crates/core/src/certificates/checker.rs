//! Verification of identity and nonnegativity certificates.

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::corpus::{CertBody, Certificate, Factor, Group, Term};
use crate::poly::{nonneg_on_interval, rat, IntervalQ, MultiPoly, Rational, Var};

/// Parameter regime of a certificate: the linear forms assumed nonnegative and
/// the ranges of the shift variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// N ≥ 2, a ≥ N − 1, τ ≥ 0, s ≥ 0.
    General,
    /// General plus 2λ + N − 2 ≥ 0 (γ ≤ 1).
    Le1,
    /// General with s ∈ [0, 1] (λ = 1 − Ns/2 parameterization).
    Le1Case1,
    /// Le1 plus λ ≥ 1.
    Le1Case2,
    /// General plus N ≥ 3 and 2 − N − 2λ ≥ 0 (γ > 1).
    Gt1Nge3,
    /// Gt1Nge3 plus N ≥ 4.
    Gt1Nge4,
    /// General plus N ≥ 6.
    Nge6,
    /// General at N = 2 plus −λ ≥ 0.
    N2,
}

impl Regime {
    pub fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "general" => Regime::General,
            "le1" => Regime::Le1,
            "le1_case1" => Regime::Le1Case1,
            "le1_case2" => Regime::Le1Case2,
            "gt1_nge3" => Regime::Gt1Nge3,
            "gt1_nge4" => Regime::Gt1Nge4,
            "nge6" => Regime::Nge6,
            "n2" => Regime::N2,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Regime::General => "general",
            Regime::Le1 => "le1",
            Regime::Le1Case1 => "le1_case1",
            Regime::Le1Case2 => "le1_case2",
            Regime::Gt1Nge3 => "gt1_nge3",
            Regime::Gt1Nge4 => "gt1_nge4",
            Regime::Nge6 => "nge6",
            Regime::N2 => "n2",
        }
    }

    /// Polynomials assumed nonnegative.
    pub fn axioms(self) -> Vec<MultiPoly> {
        let p = crate::poly::p;
        let mut out = vec![p("N - 2"), p("a - N + 1")];
        match self {
            Regime::General | Regime::Le1Case1 => {}
            Regime::Le1 => out.push(p("2*lambda + N - 2")),
            Regime::Le1Case2 => out.extend([p("2*lambda + N - 2"), p("lambda - 1")]),
            Regime::Gt1Nge3 => out.extend([p("N - 3"), p("2 - N - 2*lambda")]),
            Regime::Gt1Nge4 => out.extend([p("N - 3"), p("N - 4"), p("2 - N - 2*lambda")]),
            Regime::Nge6 => out.push(p("N - 6")),
            Regime::N2 => out.push(p("-lambda")),
        }
        out
    }

    pub fn ranges(self) -> Vec<(Var, IntervalQ)> {
        let zero = Rational::zero();
        let s = match self {
            Regime::Le1Case1 => IntervalQ::closed(zero.clone(), rat(1, 1)),
            _ => IntervalQ::at_least(zero.clone()),
        };
        vec![(Var::Tau, IntervalQ::at_least(zero)), (Var::S, s)]
    }

    pub fn fixed_n(self) -> Option<u32> {
        (self == Regime::N2).then_some(2)
    }

    /// Whether integer dimension `n` satisfies every N-only axiom.
    pub fn admits(self, n: u32) -> bool {
        if let Some(f) = self.fixed_n() {
            return n == f;
        }
        let nn = MultiPoly::int(n as i64);
        self.axioms().iter().all(|ax| {
            let v = ax.substitute(Var::N, &nn);
            v.as_constant().is_none_or(|c| !c.is_negative())
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CertReport {
    pub name: String,
    pub group: Group,
    pub regime: Regime,
    /// `None` for the symbolic check, `Some(n)` for the check at N = n.
    pub n: Option<u32>,
    pub identity_ok: bool,
    pub signs_ok: bool,
    pub failing: Option<String>,
}

impl CertReport {
    pub fn pass(&self) -> bool {
        self.identity_ok && self.signs_ok
    }
}

const MAX_DETAIL: usize = 400;

fn clip(s: String) -> String {
    if s.len() <= MAX_DETAIL {
        s
    } else {
        let cut = (0..=MAX_DETAIL).rev().find(|&i| s.is_char_boundary(i)).unwrap_or(0);
        format!("{} ...", &s[..cut])
    }
}

fn difference_detail(what: &str, d: &MultiPoly) -> String {
    clip(format!("{what}: difference = {d}"))
}

/// Variables known to be nonnegative in this certificate.
struct Signs {
    ranges: Vec<(Var, IntervalQ)>,
    aliases: Vec<Var>,
}

impl Signs {
    fn range(&self, v: Var) -> IntervalQ {
        if self.aliases.contains(&v) {
            return IntervalQ::at_least(Rational::zero());
        }
        self.ranges.iter().find(|(w, _)| *w == v).map(|(_, r)| r.clone()).unwrap_or_else(IntervalQ::real_line)
    }

    fn nonneg_var(&self, v: Var) -> bool {
        self.range(v).lo.as_ref().is_some_and(|lo| !lo.is_negative())
    }
}

fn check_factor(f: &Factor, signs: &Signs) -> Result<(), String> {
    match f {
        Factor::Square(_) => Ok(()),
        Factor::Domain(q) => {
            if !q.all_coeffs_nonneg() {
                return Err(format!("dom factor `{q}` has a negative coefficient"));
            }
            match q.variables().into_iter().find(|v| !signs.nonneg_var(*v)) {
                Some(v) => Err(format!("dom factor `{q}` uses `{v}`, which is not known to be nonnegative")),
                None => Ok(()),
            }
        }
        Factor::Univariate(q) => {
            let (var, _) = q.to_univariate().map_err(|e| format!("uni factor `{q}`: {e}"))?;
            let interval = var.map(|v| signs.range(v)).unwrap_or_else(IntervalQ::real_line);
            match nonneg_on_interval(q, &interval) {
                Ok(v) if v.is_nonneg() => Ok(()),
                Ok(v) => Err(format!("uni factor `{q}` not nonnegative: {v:?}")),
                Err(e) => Err(format!("uni factor `{q}`: {e}")),
            }
        }
    }
}

/// Whether the term is bounded below by a positive constant.
fn positive_floor(t: &Term) -> bool {
    t.coeff.is_positive()
        && t.factors.iter().all(|f| match f {
            Factor::Domain(q) => {
                let zero = [0u32; crate::poly::NVARS];
                q.terms().any(|(m, c)| *m == zero && c.is_positive())
            }
            _ => false,
        })
}

/// Alias definitions must be a positive multiple of a regime axiom, or a
/// nonnegative constant.
fn check_alias(v: Var, e: &MultiPoly, axioms: &[MultiPoly]) -> Result<(), String> {
    if let Some(c) = e.as_constant() {
        return if c.is_negative() { Err(format!("alias {v} = {c} is negative")) } else { Ok(()) };
    }
    for ax in axioms.iter().filter(|a| a.as_constant().is_none()) {
        let (m, c_ax) = ax.terms().next().expect("nonconstant axiom");
        let Some(c_e) = e.terms().find(|(me, _)| *me == m).map(|(_, c)| c.clone()) else { continue };
        let ratio = c_e / c_ax;
        if ratio.is_positive() && &ax.scale(&ratio) == e {
            return Ok(());
        }
    }
    Err(format!("alias {v} = {e} is not a positive multiple of a regime axiom"))
}

pub fn check(cert: &Certificate, n: Option<u32>) -> CertReport {
    let regime = cert.regime;
    let fixed = n.or(regime.fixed_n());
    let cert = match fixed {
        Some(k) => {
            let nn = MultiPoly::int(k as i64);
            cert.map_polys(|q| q.substitute(Var::N, &nn))
        }
        None => cert.clone(),
    };
    let axioms: Vec<MultiPoly> = match fixed {
        Some(k) => regime.axioms().iter().map(|a| a.substitute(Var::N, &MultiPoly::int(k as i64))).collect(),
        None => regime.axioms(),
    };
    let mut report = CertReport {
        name: cert.name.clone(),
        group: cert.group,
        regime,
        n,
        identity_ok: true,
        signs_ok: true,
        failing: None,
    };
    let fail = |r: &mut CertReport, id: bool, msg: String| {
        if id {
            r.identity_ok = false;
        } else {
            r.signs_ok = false;
        }
        if r.failing.is_none() {
            r.failing = Some(msg);
        }
    };

    let reference = match &cert.body {
        CertBody::Identity { lhs, rhs } => {
            let d = lhs - rhs;
            if !d.is_zero() {
                fail(&mut report, true, difference_detail("lhs - rhs", &d));
            }
            lhs.clone()
        }
        CertBody::Nonneg { target, lets, terms, strict } => {
            let aliases: Vec<Var> = lets.iter().map(|(v, _)| *v).collect();
            for v in &aliases {
                if target.contains(*v) {
                    fail(&mut report, true, format!("alias {v} occurs in the target"));
                }
            }
            for (v, e) in lets {
                if let Err(msg) = check_alias(*v, e, &axioms) {
                    fail(&mut report, false, msg);
                }
            }
            let signs = Signs { ranges: regime.ranges(), aliases };
            let mut sum = MultiPoly::zero();
            for (i, t) in terms.iter().enumerate() {
                if t.coeff.is_negative() {
                    fail(&mut report, false, format!("term {}: negative coefficient {}", i + 1, t.coeff));
                }
                for (j, f) in t.factors.iter().enumerate() {
                    if let Err(msg) = check_factor(f, &signs) {
                        fail(&mut report, false, format!("term {} factor {}: {msg}", i + 1, j + 1));
                    }
                }
                sum += &t.value();
            }
            let sum = sum.substitute_many(lets);
            let d = &sum - target;
            if !d.is_zero() {
                fail(&mut report, true, difference_detail("sum of terms - target", &d));
            }
            if *strict && !terms.iter().any(positive_floor) {
                fail(&mut report, false, "strict claim without a term bounded below by a positive constant".into());
            }
            target.clone()
        }
    };
    for (i, e) in cert.expands.iter().enumerate() {
        let d = e - &reference;
        if !d.is_zero() {
            fail(&mut report, true, difference_detail(&format!("expand line {}", i + 1), &d));
        }
    }
    report
}

/// Symbolic check plus one check for each admitted N in `n_range`.
pub fn check_all_n(cert: &Certificate, n_range: std::ops::RangeInclusive<u32>) -> Vec<CertReport> {
    let mut out = vec![check(cert, None)];
    out.extend(n_range.filter(|&n| cert.regime.admits(n)).map(|n| check(cert, Some(n))));
    out
}
