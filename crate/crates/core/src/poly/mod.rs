//! Exact multivariate polynomials over the rationals.
//!
//! Variables form a closed set ([`Var`]); names outside it are rejected when
//! parsing. Coefficients are arbitrary-precision rationals, so every identity
//! check in this crate is an exact equality of canonical term maps.

mod parse;
mod ratfunc;
mod uni;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use parse::{parse_with, Resolver};
pub use ratfunc::RatFunc;
pub use uni::{nonneg_on_interval, BernsteinLeaf, IntervalQ, NonnegVerdict, NonnegWitness, UniPoly};

pub type Rational = BigRational;

/// Number of variables in the closed set.
pub const NVARS: usize = 8;

/// Closed variable set.
///
/// `S`, `M`, `Mu` and `Ell` are shift or alias variables; what they stand for is
/// fixed by whoever builds the polynomial (a certificate binds them explicitly).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Tau,
    A,
    Lambda,
    N,
    S,
    M,
    Mu,
    Ell,
}

impl Var {
    pub const ALL: [Var; NVARS] = [
        Var::Tau,
        Var::A,
        Var::Lambda,
        Var::N,
        Var::S,
        Var::M,
        Var::Mu,
        Var::Ell,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::Tau => "tau",
            Var::A => "a",
            Var::Lambda => "lambda",
            Var::N => "N",
            Var::S => "s",
            Var::M => "m",
            Var::Mu => "mu",
            Var::Ell => "ell",
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        Some(match name {
            "tau" | "τ" => Var::Tau,
            "a" => Var::A,
            "lambda" | "λ" => Var::Lambda,
            "N" => Var::N,
            "s" => Var::S,
            "m" => Var::M,
            "mu" | "μ" => Var::Mu,
            "ell" | "ℓ" => Var::Ell,
            _ => return None,
        })
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolyError {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("division by a non-constant or zero polynomial")]
    BadDivision,
    #[error("expansion center depends on the expansion variable {0}")]
    CenterDependsOnVar(Var),
    #[error("polynomial is not univariate: variables {0:?}")]
    NotUnivariate(Vec<Var>),
    #[error("empty or inverted interval")]
    BadInterval,
}

pub type Monomial = [u32; NVARS];

/// Sparse polynomial: monomial exponent vector to nonzero rational coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term([0; NVARS], c);
        p
    }

    pub fn int(n: i64) -> Self {
        Self::constant(int(n))
    }

    pub fn rat(n: i64, d: i64) -> Self {
        Self::constant(rat(n, d))
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; NVARS];
        e[v.index()] = 1;
        let mut p = Self::zero();
        p.add_term(e, Rational::one());
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&[0; NVARS]).cloned(),
            _ => None,
        }
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        for e in self.terms.keys() {
            for v in Var::ALL {
                if e[v.index()] > 0 {
                    out.insert(v);
                }
            }
        }
        out
    }

    pub fn contains(&self, v: Var) -> bool {
        self.terms.keys().any(|e| e[v.index()] > 0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|e| e[v.index()]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, k)| (*e, k * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, v: Var) -> Self {
        let i = v.index();
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut f = *e;
                f[i] -= 1;
                out.add_term(f, c * int(e[i] as i64));
            }
        }
        out
    }

    /// Simultaneous substitution `v_i := p_i`.
    pub fn substitute_many(&self, subs: &[(Var, MultiPoly)]) -> Self {
        if subs.is_empty() {
            return self.clone();
        }
        let mut powers: Vec<Vec<MultiPoly>> = subs.iter().map(|_| vec![MultiPoly::one()]).collect();
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut rest = *e;
            let mut term = MultiPoly::one();
            for (j, (v, p)) in subs.iter().enumerate() {
                let k = e[v.index()] as usize;
                rest[v.index()] = 0;
                while powers[j].len() <= k {
                    let next = &powers[j][powers[j].len() - 1] * p;
                    powers[j].push(next);
                }
                if k > 0 {
                    term = &term * &powers[j][k];
                }
            }
            let mono = MultiPoly::from_terms([(rest, c.clone())]);
            out += &(&term * &mono);
        }
        out
    }

    pub fn substitute(&self, v: Var, p: &MultiPoly) -> Self {
        self.substitute_many(&[(v, p.clone())])
    }

    pub fn substitute_value(&self, v: Var, c: &Rational) -> Self {
        self.substitute(v, &MultiPoly::constant(c.clone()))
    }

    /// Coefficients in `v`: `self = Σ_k out[k] · v^k`.
    pub fn coeffs_in(&self, v: Var) -> Vec<MultiPoly> {
        let i = v.index();
        let mut out = vec![MultiPoly::zero(); self.degree_in(v) as usize + 1];
        for (e, c) in &self.terms {
            let mut f = *e;
            let k = f[i] as usize;
            f[i] = 0;
            out[k].add_term(f, c.clone());
        }
        out
    }

    /// Taylor coefficients about `v = center`: `self = Σ_k out[k] · (v − center)^k`.
    pub fn taylor_coeffs(&self, v: Var, center: &MultiPoly) -> Result<Vec<MultiPoly>, PolyError> {
        if center.contains(v) {
            return Err(PolyError::CenterDependsOnVar(v));
        }
        let shifted = self.substitute(v, &(&MultiPoly::var(v) + center));
        Ok(shifted.coeffs_in(v))
    }

    pub fn eval(&self, point: &BTreeMap<Var, Rational>) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for v in Var::ALL {
                let k = e[v.index()];
                if k > 0 {
                    let x = point.get(&v).cloned().unwrap_or_else(Rational::zero);
                    t *= num_traits::pow(x, k as usize);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, point: &[(Var, f64)]) -> f64 {
        let mut vals = [0.0f64; NVARS];
        for (v, x) in point {
            vals[v.index()] = *x;
        }
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut t = c.to_f64().unwrap_or(f64::NAN);
                for (i, k) in e.iter().enumerate() {
                    if *k > 0 {
                        t *= vals[i].powi(*k as i32);
                    }
                }
                t
            })
            .sum()
    }

    /// Single variable of the polynomial, `None` if constant.
    pub fn univariate_var(&self) -> Result<Option<Var>, PolyError> {
        let vs = self.variables();
        match vs.len() {
            0 => Ok(None),
            1 => Ok(vs.into_iter().next()),
            _ => Err(PolyError::NotUnivariate(vs.into_iter().collect())),
        }
    }

    pub fn to_univariate(&self) -> Result<(Option<Var>, UniPoly), PolyError> {
        let v = self.univariate_var()?;
        let coeffs = match v {
            None => vec![self.as_constant().unwrap_or_else(Rational::zero)],
            Some(v) => self
                .coeffs_in(v)
                .into_iter()
                .map(|c| c.as_constant().unwrap_or_else(Rational::zero))
                .collect(),
        };
        Ok((v, UniPoly::new(coeffs)))
    }

    pub fn all_coeffs_nonneg(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn from_univariate(v: Var, p: &UniPoly) -> Self {
        let mut out = Self::zero();
        for (k, c) in p.coeffs().iter().enumerate() {
            let mut e = [0; NVARS];
            e[v.index()] = k as u32;
            out.add_term(e, c.clone());
        }
        out
    }
}

impl From<Var> for MultiPoly {
    fn from(v: Var) -> Self {
        MultiPoly::var(v)
    }
}

impl From<Rational> for MultiPoly {
    fn from(c: Rational) -> Self {
        MultiPoly::constant(c)
    }
}

impl From<i64> for MultiPoly {
    fn from(n: i64) -> Self {
        MultiPoly::int(n)
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let mut e = *e1;
                for i in 0..NVARS {
                    e[i] += e2[i];
                }
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: MultiPoly) -> MultiPoly { (&self).$f(&rhs) }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: &MultiPoly) -> MultiPoly { (&self).$f(rhs) }
        }
        impl $tr<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: MultiPoly) -> MultiPoly { self.$f(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, c: &Rational) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

/// Canonical text: `c*var^k*var + ...`, highest total degree first.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut items: Vec<_> = self.terms.iter().collect();
        items.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (i, (e, c)) in items.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let is_const = e.iter().all(|k| *k == 0);
            let mut first = true;
            if is_const || !abs.is_one() {
                write_rational(f, &abs)?;
                first = false;
            }
            for v in Var::ALL {
                let k = e[v.index()];
                if k == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                f.write_str(v.name())?;
                if k > 1 {
                    write!(f, "^{}", k)?;
                }
            }
        }
        Ok(())
    }
}

impl FromStr for MultiPoly {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Self, PolyError> {
        parse_with(s, &|_: &str| None)
    }
}

/// Shorthand used by the family builders: `p("2*lambda + N - 2")`.
///
/// Panics on malformed input; only call it with literals.
pub fn p(s: &str) -> MultiPoly {
    s.parse().unwrap_or_else(|e| panic!("bad polynomial literal {s:?}: {e}"))
}
