use std::ops::{Add, Div, Mul, Neg, Sub};

use super::MultiPoly;

/// Quotient of two polynomials, kept unreduced; equality is by cross-multiplication.
#[derive(Clone, Debug)]
pub struct RatFunc {
    pub num: MultiPoly,
    pub den: MultiPoly,
}

impl RatFunc {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Self { num, den }
    }

    pub fn poly(p: MultiPoly) -> Self {
        Self::new(p, MultiPoly::one())
    }

    /// `self == other` as rational functions.
    pub fn identical(&self, other: &RatFunc) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    pub fn substitute_many(&self, subs: &[(super::Var, MultiPoly)]) -> Self {
        Self::new(self.num.substitute_many(subs), self.den.substitute_many(subs))
    }
}

impl From<MultiPoly> for RatFunc {
    fn from(p: MultiPoly) -> Self {
        Self::poly(p)
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, r: RatFunc) -> RatFunc {
        if self.den == r.den {
            return RatFunc::new(&self.num + &r.num, self.den);
        }
        RatFunc::new(&self.num * &r.den + &r.num * &self.den, &self.den * &r.den)
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, r: RatFunc) -> RatFunc {
        self + (-r)
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc::new(-self.num, self.den)
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, r: RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &r.num, &self.den * &r.den)
    }
}

impl Div for RatFunc {
    type Output = RatFunc;
    fn div(self, r: RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &r.den, &self.den * &r.num)
    }
}
