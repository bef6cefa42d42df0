//! Dense univariate polynomials and the exact nonnegativity decision on intervals.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{MultiPoly, PolyError, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    c: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Self { c }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.c.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for k in self.c.iter().rev() {
            acc = acc * x + k;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, k)| k * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new(
            (0..n)
                .map(|i| {
                    let a = self.c.get(i).cloned().unwrap_or_else(Rational::zero);
                    let b = o.c.get(i).cloned().unwrap_or_else(Rational::zero);
                    a - b
                })
                .collect(),
        )
    }

    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::new(vec![]);
        }
        let mut out = vec![Rational::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    fn neg(&self) -> Self {
        Self::new(self.c.iter().map(|k| -k.clone()).collect())
    }

    fn monic(&self) -> Self {
        let l = self.leading();
        Self::new(self.c.iter().map(|k| k / &l).collect())
    }

    /// Euclidean division by a nonzero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.c.clone();
        let dl = d.leading();
        let dd = d.degree();
        if r.len() < d.c.len() {
            return (Self::new(vec![]), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let f = &r[k + dd] / &dl;
            if !f.is_zero() {
                for (j, dj) in d.c.iter().enumerate() {
                    r[k + j] -= &f * dj;
                }
            }
            q[k] = f;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    fn is_const(&self) -> bool {
        self.c.len() <= 1
    }

    /// Yun's square-free factorization: `out[i]` has multiplicity `i + 1`.
    pub fn square_free_parts(&self) -> Vec<UniPoly> {
        if self.is_const() {
            return vec![];
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_rem(&a0).0;
        let c = df.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut out = Vec::new();
        while !b.is_const() {
            let a = b.gcd(&d);
            let nb = b.div_rem(&a).0;
            let nc = d.div_rem(&a).0;
            d = nc.sub(&nb.derivative());
            b = nb;
            out.push(a);
        }
        out
    }

    /// `x ↦ p(lo + w·x)`.
    pub fn compose_affine(&self, lo: &Rational, w: &Rational) -> Self {
        let lin = UniPoly::new(vec![lo.clone(), w.clone()]);
        let mut acc = UniPoly::new(vec![]);
        for k in self.c.iter().rev() {
            acc = acc.mul(&lin);
            acc = acc.sub(&UniPoly::new(vec![-k.clone()]));
        }
        acc
    }

    fn sign_at(&self, x: &Point) -> i32 {
        match x {
            Point::Finite(x) => sgn(&self.eval(x)),
            Point::PosInf => sgn(&self.leading()),
            Point::NegInf => {
                let s = sgn(&self.leading());
                if self.degree() % 2 == 1 {
                    -s
                } else {
                    s
                }
            }
        }
    }

    /// Cauchy bound: every real root has `|x| < bound`.
    fn root_bound(&self) -> Rational {
        let l = self.leading().abs();
        let m = self.c[..self.c.len() - 1]
            .iter()
            .map(|k| k.abs() / &l)
            .max()
            .unwrap_or_else(Rational::zero);
        m + Rational::one() + Rational::one()
    }
}

fn sgn(x: &Rational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

#[derive(Clone, Debug)]
enum Point {
    NegInf,
    Finite(Rational),
    PosInf,
}

struct Sturm {
    chain: Vec<UniPoly>,
}

impl Sturm {
    fn new(sqfree: &UniPoly) -> Self {
        let mut chain = vec![sqfree.clone(), sqfree.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[n - 2].div_rem(&chain[n - 1]).1.neg();
            if r.is_zero() {
                break;
            }
            chain.push(r);
        }
        Self { chain }
    }

    fn variations(&self, x: &Point) -> usize {
        let mut last = 0;
        let mut v = 0;
        for s in self.chain.iter().map(|p| p.sign_at(x)) {
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    /// Distinct roots in `(u, v]`.
    fn count(&self, u: &Point, v: &Point) -> usize {
        self.variations(u).saturating_sub(self.variations(v))
    }
}

/// Interval with rational or infinite endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntervalQ {
    #[serde(serialize_with = "ser_opt_rat")]
    pub lo: Option<Rational>,
    #[serde(serialize_with = "ser_opt_rat")]
    pub hi: Option<Rational>,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

fn ser_opt_rat<S: serde::Serializer>(x: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_none(),
    }
}

impl IntervalQ {
    pub fn closed(lo: Rational, hi: Rational) -> Self {
        Self { lo: Some(lo), hi: Some(hi), lo_closed: true, hi_closed: true }
    }

    pub fn at_least(lo: Rational) -> Self {
        Self { lo: Some(lo), hi: None, lo_closed: true, hi_closed: false }
    }

    pub fn at_most(hi: Rational) -> Self {
        Self { lo: None, hi: Some(hi), lo_closed: false, hi_closed: true }
    }

    pub fn real_line() -> Self {
        Self { lo: None, hi: None, lo_closed: false, hi_closed: false }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let lo_ok = match &self.lo {
            None => true,
            Some(l) => x > l || (self.lo_closed && x == l),
        };
        let hi_ok = match &self.hi {
            None => true,
            Some(h) => x < h || (self.hi_closed && x == h),
        };
        lo_ok && hi_ok
    }

    /// Whether `other ⊆ self` (endpoint openness taken into account).
    pub fn includes(&self, other: &IntervalQ) -> bool {
        let lo_ok = match (&self.lo, &other.lo) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(a), Some(b)) => a < b || (a == b && (self.lo_closed || !other.lo_closed)),
        };
        let hi_ok = match (&self.hi, &other.hi) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(a), Some(b)) => a > b || (a == b && (self.hi_closed || !other.hi_closed)),
        };
        lo_ok && hi_ok
    }

    fn is_valid(&self) -> bool {
        match (&self.lo, &self.hi) {
            (Some(l), Some(h)) => l < h || (l == h && self.lo_closed && self.hi_closed),
            _ => true,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BernsteinLeaf {
    #[serde(serialize_with = "ser_rat")]
    pub lo: Rational,
    #[serde(serialize_with = "ser_rat")]
    pub hi: Rational,
    #[serde(serialize_with = "ser_rat_vec")]
    pub coeffs: Vec<Rational>,
}

fn ser_rat<S: serde::Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn ser_rat_vec<S: serde::Serializer>(x: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(x.len()))?;
    for r in x {
        seq.serialize_element(&r.to_string())?;
    }
    seq.end()
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NonnegWitness {
    Constant {
        #[serde(serialize_with = "ser_rat")]
        value: Rational,
    },
    /// All Bernstein coefficients on every leaf of a dyadic subdivision are ≥ 0.
    Bernstein { leaves: Vec<BernsteinLeaf> },
    /// No odd-multiplicity root in the interior, and a positive sample.
    Sturm {
        odd_roots_in_interior: usize,
        #[serde(serialize_with = "ser_rat")]
        sample: Rational,
        #[serde(serialize_with = "ser_rat")]
        value: Rational,
    },
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum NonnegVerdict {
    Nonneg { witness: NonnegWitness },
    Negative {
        #[serde(serialize_with = "ser_rat")]
        at: Rational,
        #[serde(serialize_with = "ser_rat")]
        value: Rational,
    },
    Inconclusive { reason: String },
}

impl NonnegVerdict {
    pub fn is_nonneg(&self) -> bool {
        matches!(self, NonnegVerdict::Nonneg { .. })
    }
}

const BERNSTEIN_DEPTH: u32 = 32;
const BERNSTEIN_MAX_LEAVES: usize = 1 << 14;
const ISOLATION_STEPS: usize = 100_000;

/// Decide `p ≥ 0` on `interval` for a univariate (or constant) polynomial.
///
/// Bounded intervals go through Bernstein subdivision first; half-lines, or
/// subdivisions that hit the depth cap (e.g. an interior double root), are
/// decided exactly with Sturm sequences on the odd-multiplicity part.
pub fn nonneg_on_interval(p: &MultiPoly, interval: &IntervalQ) -> Result<NonnegVerdict, PolyError> {
    if !interval.is_valid() {
        return Err(PolyError::BadInterval);
    }
    let (_, u) = p.to_univariate()?;
    if u.degree() == 0 {
        let value = u.coeffs().first().cloned().unwrap_or_else(Rational::zero);
        return Ok(if value.is_negative() {
            let at = interval
                .lo
                .clone()
                .or_else(|| interval.hi.clone())
                .unwrap_or_else(Rational::zero);
            NonnegVerdict::Negative { at, value }
        } else {
            NonnegVerdict::Nonneg { witness: NonnegWitness::Constant { value } }
        });
    }
    if let (Some(lo), Some(hi)) = (&interval.lo, &interval.hi) {
        if lo == hi {
            let value = u.eval(lo);
            return Ok(if value.is_negative() {
                NonnegVerdict::Negative { at: lo.clone(), value }
            } else {
                NonnegVerdict::Nonneg { witness: NonnegWitness::Constant { value } }
            });
        }
        if let Some(v) = bernstein(&u, lo, hi) {
            return Ok(v);
        }
    }
    Ok(sturm_decide(&u, interval))
}

fn binomials(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 0..n {
        let next = &row[k] * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(next);
    }
    row
}

fn to_bernstein(q: &UniPoly) -> Vec<Rational> {
    let n = q.degree();
    let cn = binomials(n);
    (0..=n)
        .map(|k| {
            let ck = binomials(k);
            (0..=k)
                .map(|i| {
                    let a = q.coeffs().get(i).cloned().unwrap_or_else(Rational::zero);
                    a * Rational::new(ck[i].clone(), cn[i].clone())
                })
                .fold(Rational::zero(), |x, y| x + y)
        })
        .collect()
}

fn de_casteljau_half(b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let half = Rational::new(1.into(), 2.into());
    let n = b.len();
    let mut left = Vec::with_capacity(n);
    let mut right = vec![Rational::zero(); n];
    let mut work = b.to_vec();
    left.push(work[0].clone());
    right[n - 1] = work[n - 1].clone();
    for r in 1..n {
        for i in 0..n - r {
            work[i] = (&work[i] + &work[i + 1]) * &half;
        }
        left.push(work[0].clone());
        right[n - 1 - r] = work[n - 1 - r].clone();
    }
    (left, right)
}

/// `None` means the subdivision gave up and the caller should use Sturm.
fn bernstein(u: &UniPoly, lo: &Rational, hi: &Rational) -> Option<NonnegVerdict> {
    let w = hi - lo;
    let q = u.compose_affine(lo, &w);
    let half = Rational::new(1.into(), 2.into());
    let mut stack = vec![(to_bernstein(&q), 0u32, Rational::zero(), Rational::one())];
    let mut leaves = Vec::new();
    while let Some((b, depth, x0, x1)) = stack.pop() {
        if b.iter().all(|c| !c.is_negative()) {
            leaves.push(BernsteinLeaf { lo: lo + &w * &x0, hi: lo + &w * &x1, coeffs: b });
            if leaves.len() > BERNSTEIN_MAX_LEAVES {
                return None;
            }
            continue;
        }
        if b[0].is_negative() {
            return Some(NonnegVerdict::Negative { at: lo + &w * &x0, value: b[0].clone() });
        }
        if b[b.len() - 1].is_negative() {
            return Some(NonnegVerdict::Negative { at: lo + &w * &x1, value: b[b.len() - 1].clone() });
        }
        if depth >= BERNSTEIN_DEPTH {
            return None;
        }
        let mid = (&x0 + &x1) * &half;
        let (l, r) = de_casteljau_half(&b);
        stack.push((r, depth + 1, mid.clone(), x1));
        stack.push((l, depth + 1, x0, mid));
    }
    leaves.sort_by(|a, b| a.lo.cmp(&b.lo));
    Some(NonnegVerdict::Nonneg { witness: NonnegWitness::Bernstein { leaves } })
}

fn odd_and_sqfree(u: &UniPoly) -> (UniPoly, UniPoly) {
    let parts = u.square_free_parts();
    let one = UniPoly::new(vec![Rational::one()]);
    let mut odd = one.clone();
    let mut sqf = one;
    for (i, f) in parts.iter().enumerate() {
        sqf = sqf.mul(f);
        if i % 2 == 0 {
            odd = odd.mul(f);
        }
    }
    (odd, sqf)
}

fn sturm_decide(u: &UniPoly, interval: &IntervalQ) -> NonnegVerdict {
    let (odd, sqf) = odd_and_sqfree(u);
    let lo = interval.lo.clone().map(Point::Finite).unwrap_or(Point::NegInf);
    let hi = interval.hi.clone().map(Point::Finite).unwrap_or(Point::PosInf);
    let g = Sturm::new(&odd);
    let mut interior = if odd.degree() == 0 { 0 } else { g.count(&lo, &hi) };
    if let Some(h) = &interval.hi {
        if odd.degree() > 0 && odd.eval(h).is_zero() {
            interior -= 1;
        }
    }
    if interior == 0 {
        let sample = interior_nonroot(u, interval);
        let value = u.eval(&sample);
        return if value.is_positive() {
            NonnegVerdict::Nonneg {
                witness: NonnegWitness::Sturm { odd_roots_in_interior: 0, sample, value },
            }
        } else {
            NonnegVerdict::Negative { at: sample, value }
        };
    }
    negative_witness(u, &odd, &sqf, interval)
}

fn interior_nonroot(u: &UniPoly, interval: &IntervalQ) -> Rational {
    let one = Rational::one();
    for k in 1..=(u.degree() as i64 + 2) {
        let kq = Rational::from_integer(BigInt::from(k));
        let x = match (&interval.lo, &interval.hi) {
            (Some(l), Some(h)) => l + (h - l) * &kq / (&kq + &one + &one),
            (Some(l), None) => l + &kq,
            (None, Some(h)) => h - &kq,
            (None, None) => kq - &one,
        };
        if !u.eval(&x).is_zero() {
            return x;
        }
    }
    unreachable!("a nonzero polynomial has at most deg roots")
}

fn negative_witness(u: &UniPoly, odd: &UniPoly, sqf: &UniPoly, interval: &IntervalQ) -> NonnegVerdict {
    let g = Sturm::new(odd);
    let q = Sturm::new(sqf);
    let bound = sqf.root_bound();
    let mut a = interval.lo.clone().unwrap_or_else(|| -bound.clone());
    let mut b = interval.hi.clone().unwrap_or(bound);
    let half = Rational::new(1.into(), 2.into());
    for _ in 0..ISOLATION_STEPS {
        let (pa, pb) = (Point::Finite(a.clone()), Point::Finite(b.clone()));
        let ua = u.eval(&a);
        let ub = u.eval(&b);
        if q.count(&pa, &pb) == 1 && g.count(&pa, &pb) == 1 && !ua.is_zero() && !ub.is_zero() {
            return if ua.is_negative() {
                NonnegVerdict::Negative { at: a, value: ua }
            } else {
                NonnegVerdict::Negative { at: b, value: ub }
            };
        }
        let mut t = half.clone();
        let mut m = &a + (&b - &a) * &t;
        while sqf.eval(&m).is_zero() {
            t = &t * &half;
            m = &a + (&b - &a) * &t;
        }
        if g.count(&pa, &Point::Finite(m.clone())) >= 1 {
            b = m;
        } else {
            a = m;
        }
    }
    NonnegVerdict::Inconclusive { reason: "root isolation did not terminate".into() }
}
