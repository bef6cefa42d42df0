//! Exact verification of the polynomial identities and nonnegativity
//! certificates behind the sharp constants.
//!
//! Certificates are data files (see [`corpus`]) checked by a small exact
//! checker (see [`checker`]). Claims stated only as "all coefficients are
//! nonnegative" get an independent automatic check in [`auto`]; the
//! rational-function identities relating the closed-form constants live in
//! [`identities`].

pub mod auto;
pub mod checker;
pub mod corpus;
pub mod families;
pub mod identities;
pub mod lemma;

use std::ops::RangeInclusive;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

pub use checker::{check, check_all_n, CertReport, Regime};
pub use corpus::{embedded_corpus, load_dir, parse_certificate, CertBody, Certificate, CorpusError, Group};
pub use families::{InstantiatedFamily, PolyFamily};
pub use lemma::{c0_for, difference_quotient_f64, lemma_guard, LemmaGuardReport};

use crate::constants::Params;
use crate::poly::{MultiPoly, Var};

pub fn family() -> &'static PolyFamily {
    static FAM: OnceLock<PolyFamily> = OnceLock::new();
    FAM.get_or_init(PolyFamily::build)
}

pub fn corpus() -> &'static [Certificate] {
    static CORPUS: OnceLock<Vec<Certificate>> = OnceLock::new();
    CORPUS.get_or_init(|| embedded_corpus(family()).expect("embedded certificate corpus parses"))
}

/// The P/Q family, symbolic in (λ, N) or with the parameters substituted.
pub fn build_pq(params: Option<&Params>) -> Vec<(&'static str, MultiPoly)> {
    let fam = family();
    PolyFamily::KEYS
        .iter()
        .map(|k| {
            let q = fam.get(k).expect("known key");
            let q = match params {
                Some(p) => q.substitute_many(&[
                    (Var::Lambda, MultiPoly::constant(p.lambda())),
                    (Var::N, MultiPoly::int(p.n as i64)),
                ]),
                None => q,
            };
            (*k, q)
        })
        .collect()
}

pub const DEFAULT_N_RANGE: RangeInclusive<u32> = 2..=12;

fn run(certs: Vec<&Certificate>, n_range: RangeInclusive<u32>) -> Vec<CertReport> {
    let jobs: Vec<(&Certificate, Option<u32>)> = certs
        .iter()
        .flat_map(|c| {
            std::iter::once((*c, None))
                .chain(n_range.clone().filter(|&n| c.regime.admits(n)).map(move |n| (*c, Some(n))))
        })
        .collect();
    jobs.par_iter().map(|(c, n)| check(c, *n)).collect()
}

fn by_name(names: &[&str]) -> Vec<&'static Certificate> {
    names
        .iter()
        .map(|n| corpus().iter().find(|c| c.name == *n).unwrap_or_else(|| panic!("certificate {n} missing")))
        .collect()
}

fn single(name: &str) -> CertReport {
    check(by_name(&[name])[0], None)
}

pub fn verify_qp1_identity() -> CertReport {
    single("qp1_identity")
}

/// The radial identity and its sign.
pub fn verify_q0p0() -> Vec<CertReport> {
    by_name(&["q0p0_identity", "q0p0_nonneg"]).into_iter().map(|c| check(c, None)).collect()
}

/// P1(0, α₁), P1(0, α₂) and ∂P1/∂τ.
pub fn verify_p1_positivity() -> Vec<CertReport> {
    by_name(&[
        "p1_at_alpha1",
        "p1_at_alpha2",
        "p1_at_alpha2_positive",
        "p1_vertex_below_alpha2",
        "p1_dtau_positive",
    ])
    .into_iter()
    .map(|c| check(c, None))
    .collect()
}

fn group_suite(g: Group, n_range: RangeInclusive<u32>) -> Vec<CertReport> {
    run(corpus().iter().filter(|c| c.group == g).collect(), n_range)
}

pub fn certify_general(n_range: RangeInclusive<u32>) -> Vec<CertReport> {
    group_suite(Group::General, n_range)
}

/// γ ≤ 1: Taylor identities of G1, G0 and the two cases for 𝒢₁ / G0(α₂ + s).
pub fn certify_regime_le1(n_range: RangeInclusive<u32>) -> Vec<CertReport> {
    let mut out = group_suite(Group::Le1, n_range);
    out.push(auto::sg1_case1());
    out.push(auto::g0_case2());
    out
}

/// γ > 1, N ≥ 3: E1, E0 expansions, their coefficient certificates and E01.
pub fn certify_regime_gt1_nge3(n_range: RangeInclusive<u32>) -> Vec<CertReport> {
    let mut out = group_suite(Group::Gt1, n_range);
    out.push(auto::e01_param_nge4());
    out.push(auto::e01_param_n3());
    out
}

/// γ > 1, N = 2: F1 and F0.
pub fn certify_regime_n2() -> Vec<CertReport> {
    group_suite(Group::N2, 2..=2)
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

pub fn summarize(reports: &[CertReport]) -> Summary {
    let passed = reports.iter().filter(|r| r.pass()).count();
    Summary { total: reports.len(), passed, failed: reports.len() - passed }
}

/// Every certificate, automatic check and rational-function identity.
pub fn certify_all(n_range: RangeInclusive<u32>) -> Vec<CertReport> {
    let mut out = certify_general(n_range.clone());
    out.extend(certify_regime_le1(n_range.clone()));
    out.extend(certify_regime_gt1_nge3(n_range.clone()));
    if n_range.contains(&2) {
        out.extend(certify_regime_n2());
    }
    out.extend(identities::verify_constant_identities());
    out
}
