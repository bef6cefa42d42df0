//! Certificate file format.
//!
//! One certificate per file, `key: value` lines, `#` comments. A line starting
//! with whitespace continues the previous value.
//!
//! ```text
//! name:   p1_dtau_positive
//! group:  general
//! regime: general
//! claim:  dP1/dtau > 0 for tau >= 0, a >= N - 1
//! target: @dP1dtau
//! let:    ell = a - N + 1
//! term:   2 | dom: tau
//! term:   sq: lambda + 1
//! strict: yes
//! ```
//!
//! Identity certificates use `lhs:`/`rhs:` instead of `target:`/`term:`.
//! `expand:` lines are further displayed forms that must equal the target
//! (or the left side). Polynomials may reference families as `@KEY` and use
//! `[v := expr]` substitution suffixes.

use std::path::Path;

use serde::Serialize;
use thiserror::Error;

use super::checker::Regime;
use super::families::PolyFamily;
use crate::exact::parse_rational;
use crate::poly::{parse_with, MultiPoly, PolyError, Rational};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("{file}:{line}: {msg}")]
    Syntax { file: String, line: usize, msg: String },
    #[error("{file}: {source}")]
    Poly { file: String, source: PolyError },
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Group {
    General,
    Le1,
    Gt1,
    N2,
}

impl Group {
    pub fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "general" => Group::General,
            "le1" => Group::Le1,
            "gt1" => Group::Gt1,
            "n2" => Group::N2,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug)]
pub enum Factor {
    Square(MultiPoly),
    Domain(MultiPoly),
    Univariate(MultiPoly),
}

impl Factor {
    pub fn value(&self) -> MultiPoly {
        match self {
            Factor::Square(q) => q * q,
            Factor::Domain(q) | Factor::Univariate(q) => q.clone(),
        }
    }

    fn map(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> Self {
        match self {
            Factor::Square(q) => Factor::Square(f(q)),
            Factor::Domain(q) => Factor::Domain(f(q)),
            Factor::Univariate(q) => Factor::Univariate(f(q)),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Term {
    pub coeff: Rational,
    pub factors: Vec<Factor>,
}

impl Term {
    pub fn value(&self) -> MultiPoly {
        self.factors
            .iter()
            .fold(MultiPoly::constant(self.coeff.clone()), |acc, f| &acc * &f.value())
    }
}

#[derive(Clone, Debug)]
pub enum CertBody {
    Identity { lhs: MultiPoly, rhs: MultiPoly },
    Nonneg { target: MultiPoly, lets: Vec<(crate::poly::Var, MultiPoly)>, terms: Vec<Term>, strict: bool },
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub name: String,
    pub group: Group,
    pub regime: Regime,
    pub claim: String,
    pub body: CertBody,
    pub expands: Vec<MultiPoly>,
}

impl Certificate {
    /// Apply `f` to every polynomial in the certificate.
    pub fn map_polys(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> Self {
        let body = match &self.body {
            CertBody::Identity { lhs, rhs } => CertBody::Identity { lhs: f(lhs), rhs: f(rhs) },
            CertBody::Nonneg { target, lets, terms, strict } => CertBody::Nonneg {
                target: f(target),
                lets: lets.iter().map(|(v, e)| (*v, f(e))).collect(),
                terms: terms
                    .iter()
                    .map(|t| Term { coeff: t.coeff.clone(), factors: t.factors.iter().map(|x| x.map(&f)).collect() })
                    .collect(),
                strict: *strict,
            },
        };
        Certificate {
            name: self.name.clone(),
            group: self.group,
            regime: self.regime,
            claim: self.claim.clone(),
            body,
            expands: self.expands.iter().map(f).collect(),
        }
    }
}

macro_rules! embedded {
    ($($name:literal),* $(,)?) => {
        /// The built-in corpus as (file stem, contents).
        pub const EMBEDDED: &[(&str, &str)] = &[
            $(($name, include_str!(concat!("../../certificates/", $name, ".cert")))),*
        ];
    };
}

embedded![
    // general
    "q1_two_forms",
    "p1_shifted_form",
    "q0p0_identity",
    "q0p0_nonneg",
    "qp1_identity",
    "p1_at_alpha1",
    "p1_at_alpha2",
    "p1_at_alpha2_positive",
    "p1_quadratic_in_a",
    "p1_vertex_below_alpha2",
    "p1_distance_form",
    "p1_dtau_positive",
    "p1_tau_expansion",
    "as_at",
    // le1
    "g1_taylor",
    "g1_nonneg_le1",
    "g0_taylor",
    "sg2_nonneg",
    "g0_alpha1_nonneg",
    "sg1_case1_expansion",
    "sg1_case1_nonneg",
    "g0_case2_split",
    "g0_case2_lower_expansion",
    "g0_case2_nonneg",
    // gt1, N >= 3
    "qp2_identity",
    "p1_taylor",
    "e1_taylor",
    "e12_expanded",
    "e12_nonneg",
    "e11_expanded",
    "e11_nonneg",
    "e10_nonneg",
    "e0_taylor",
    "e03_nonneg",
    "e02_expanded",
    "e02_nonneg",
    "e00_nonneg",
    "sg1_gt1_param",
    "e01_gt1_param",
    "e01_param_nge4",
    "e01_param_n3",
    "e01_completed_squares",
    "e01_nge6_nonneg",
    "e01_n3_squares",
    "e01_n4_squares",
    "e01_n5_squares",
    // N = 2
    "n2_p1_form",
    "n2_qp_identity",
    "n2_p1_taylor",
    "n2_g1_half_taylor",
    "n2_g0_half_taylor",
    "n2_f1_taylor",
    "n2_f1_nonneg",
    "n2_f0_taylor",
    "n2_f0_alpha1",
    "n2_f0_difference",
    "n2_f0_shift",
    "n2_f0_alpha2_nonneg",
    "n2_p1_positive",
];

fn syntax(file: &str, line: usize, msg: impl Into<String>) -> CorpusError {
    CorpusError::Syntax { file: file.to_string(), line, msg: msg.into() }
}

/// Parse one certificate file, resolving `@KEY` references against `fam`.
pub fn parse_certificate(file: &str, src: &str, fam: &PolyFamily) -> Result<Certificate, CorpusError> {
    // Join continuation lines, keep the first line number of each entry.
    let mut entries: Vec<(usize, String, String)> = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        if line.starts_with(char::is_whitespace) {
            match entries.last_mut() {
                Some(e) => {
                    e.2.push(' ');
                    e.2.push_str(line.trim());
                }
                None => return Err(syntax(file, i + 1, "continuation line without an entry")),
            }
            continue;
        }
        let (k, v) = line.split_once(':').ok_or_else(|| syntax(file, i + 1, "expected `key: value`"))?;
        entries.push((i + 1, k.trim().to_string(), v.trim().to_string()));
    }

    let resolve = |k: &str| fam.get(k);
    let poly = |s: &str| parse_with(s, &resolve).map_err(|e| CorpusError::Poly { file: file.to_string(), source: e });

    let mut name = None;
    let mut group = None;
    let mut regime = None;
    let mut claim = String::new();
    let (mut lhs, mut rhs, mut target) = (None, None, None);
    let mut lets = Vec::new();
    let mut terms = Vec::new();
    let mut expands = Vec::new();
    let mut strict = false;

    for (line, key, val) in &entries {
        let line = *line;
        match key.as_str() {
            "name" => name = Some(val.clone()),
            "group" => group = Some(Group::from_name(val).ok_or_else(|| syntax(file, line, format!("unknown group `{val}`")))?),
            "regime" => {
                regime = Some(Regime::from_name(val).ok_or_else(|| syntax(file, line, format!("unknown regime `{val}`")))?)
            }
            "claim" => claim = val.clone(),
            "lhs" => lhs = Some(poly(val)?),
            "rhs" => rhs = Some(poly(val)?),
            "target" => target = Some(poly(val)?),
            "expand" => expands.push(poly(val)?),
            "strict" => strict = matches!(val.as_str(), "yes" | "true"),
            "let" => {
                let (v, e) = val.split_once('=').ok_or_else(|| syntax(file, line, "expected `let: var = expr`"))?;
                let v = crate::poly::Var::from_name(v.trim())
                    .ok_or_else(|| syntax(file, line, format!("unknown alias variable `{}`", v.trim())))?;
                lets.push((v, poly(e)?));
            }
            "term" => {
                let mut coeff = Rational::from_integer(1.into());
                let mut factors = Vec::new();
                for (j, piece) in val.split('|').map(str::trim).enumerate() {
                    if j == 0 {
                        if let Some(c) = parse_rational(piece) {
                            coeff = c;
                            continue;
                        }
                    }
                    let (tag, body) = piece
                        .split_once(':')
                        .ok_or_else(|| syntax(file, line, format!("expected `tag: poly`, got `{piece}`")))?;
                    let q = poly(body)?;
                    factors.push(match tag.trim() {
                        "sq" => Factor::Square(q),
                        "dom" => Factor::Domain(q),
                        "uni" => Factor::Univariate(q),
                        t => return Err(syntax(file, line, format!("unknown factor tag `{t}`"))),
                    });
                }
                terms.push(Term { coeff, factors });
            }
            k => return Err(syntax(file, line, format!("unknown key `{k}`"))),
        }
    }

    let name = name.ok_or_else(|| syntax(file, 0, "missing `name`"))?;
    let group = group.ok_or_else(|| syntax(file, 0, "missing `group`"))?;
    let regime = regime.ok_or_else(|| syntax(file, 0, "missing `regime`"))?;
    let body = match (lhs, rhs, target) {
        (Some(lhs), Some(rhs), None) if terms.is_empty() && lets.is_empty() => CertBody::Identity { lhs, rhs },
        (None, None, Some(target)) if !terms.is_empty() => CertBody::Nonneg { target, lets, terms, strict },
        _ => return Err(syntax(file, 0, "need either `lhs`+`rhs` or `target`+`term` lines")),
    };
    Ok(Certificate { name, group, regime, claim, body, expands })
}

pub fn embedded_corpus(fam: &PolyFamily) -> Result<Vec<Certificate>, CorpusError> {
    EMBEDDED.iter().map(|(stem, src)| parse_certificate(stem, src, fam)).collect()
}

/// Load every `*.cert` file in `dir`, sorted by file name.
pub fn load_dir(dir: &Path, fam: &PolyFamily) -> Result<Vec<Certificate>, CorpusError> {
    let mut paths: Vec<_> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "cert"))
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| {
            let src = std::fs::read_to_string(p)?;
            parse_certificate(&p.display().to_string(), &src, fam)
        })
        .collect()
}
