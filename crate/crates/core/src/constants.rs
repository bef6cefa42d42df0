//! Closed-form Hardy–Leray, Rellich–Leray and Rellich–Hardy constants.
//!
//! Everything here is exact over the rationals; [`float`] mirrors the same
//! formulas in `f64` for sweeps and the spectral code. The infimum over the
//! spherical degree ν is taken by scanning `0..=nu_max` and then certifying that
//! the tail cannot go lower.

use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exact::Exact;
use crate::poly::{int, rat, Rational};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConstantsError {
    #[error("dimension N = {0} is below 2")]
    InvalidDimension(u32),
    #[error("mode nu = {nu} is degenerate at lambda = 0 for the unsimplified formula")]
    Degenerate { nu: u32 },
    #[error("could not certify the tail of the {what} scan beyond nu = {nu_max}")]
    TailBoundFailed { what: &'static str, nu_max: u32 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Params {
    pub n: u32,
    pub gamma: Rational,
}

impl Params {
    pub fn new(n: u32, gamma: Rational) -> Result<Self, ConstantsError> {
        if n < 2 {
            return Err(ConstantsError::InvalidDimension(n));
        }
        Ok(Self { n, gamma })
    }

    /// Parameters with a prescribed λ = 2 − N/2 − γ.
    pub fn from_lambda(n: u32, lambda: Rational) -> Result<Self, ConstantsError> {
        let gamma = int(2) - rat(n as i64, 2) - lambda;
        Self::new(n, gamma)
    }

    pub fn nq(&self) -> Rational {
        int(self.n as i64)
    }

    pub fn lambda(&self) -> Rational {
        int(2) - rat(self.n as i64, 2) - &self.gamma
    }

    pub fn to_f64(&self) -> float::ParamsF64 {
        float::ParamsF64 { n: self.n, gamma: crate::exact::to_f64(&self.gamma) }
    }
}

/// Laplace–Beltrami eigenvalue α_s = s(s + N − 2).
pub fn alpha(s: &Rational, n: u32) -> Rational {
    s * (s + int(n as i64 - 2))
}

pub fn alpha_nu(nu: u32, n: u32) -> Rational {
    alpha(&int(nu as i64), n)
}

fn sq(x: Rational) -> Rational {
    &x * &x
}

/// Scan bound ⌈|γ|⌉ + N + 16.
pub fn nu_max(p: &Params) -> u32 {
    let g = p.gamma.abs().ceil().to_integer();
    let g: u32 = g.try_into().unwrap_or(u32::MAX / 16);
    g + p.n + 16
}

/// Sharp Hardy–Leray constant for curl-free fields.
pub fn hardy_leray(p: &Params) -> Rational {
    let n = p.nq();
    let g = &p.gamma + &n / int(2);
    if sq(g.clone()) <= &n + int(1) {
        let w = sq(&g - int(2));
        sq(&g - int(1)) * (int(3) * (&n - int(1)) + &w) / (&n - int(1) + &w)
    } else {
        sq(&g - int(1)) + n - int(1)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MinReport {
    pub value: Exact,
    pub argmin: u32,
    pub nu_scanned: u32,
    pub tail_bound_ok: bool,
}

fn scan(f: &dyn Fn(u32) -> Rational, from: u32, to: u32) -> (Rational, u32) {
    let mut best = f(from);
    let mut arg = from;
    for nu in from + 1..=to {
        let v = f(nu);
        if v < best {
            best = v;
            arg = nu;
        }
    }
    (best, arg)
}

/// Tail check for families without a monotonicity argument: every value in
/// `(nu_max, 8·nu_max]` exceeds the current minimum and the last eight are increasing.
fn window_tail_ok(f: &dyn Fn(u32) -> Rational, nu_max: u32, current: &Rational) -> bool {
    let end = 8 * nu_max;
    let vals: Vec<Rational> = (nu_max + 1..=end).map(f).collect();
    vals.iter().all(|v| v > current) && vals[vals.len() - 9..].windows(2).all(|w| w[0] < w[1])
}

/// Unconstrained Rellich–Leray constant min_ν ((γ−1)² − (ν+N/2−1)²)².
pub fn rellich_leray_unconstrained(p: &Params) -> MinReport {
    let c = sq(&p.gamma - int(1));
    let shift = rat(p.n as i64, 2) - int(1);
    let x = |nu: u32| int(nu as i64) + &shift;
    let f = |nu: u32| sq(&c - sq(x(nu)));
    // (c − x²)² is increasing in ν once x² ≥ c.
    let mut last = 0;
    while sq(x(last)) < c {
        last += 1;
    }
    last += 1;
    let (best, arg) = scan(&f, 0, last);
    MinReport { value: best.into(), argmin: arg, nu_scanned: last, tail_bound_ok: true }
}

/// Mode term of the curl-free Rellich–Leray constant; ν = 0 is the first branch
/// ((γ−1)² − N²/4)², ν ≥ 1 the term ((γ+N/2−1)² + α_ν)/((γ+N/2−3)² + α_ν)·((γ−2)² − (ν+N/2−1)²)².
pub fn rellich_leray_curlfree_term(p: &Params, nu: u32) -> Rational {
    let n = p.nq();
    let g = &p.gamma;
    if nu == 0 {
        return sq(sq(g - int(1)) - sq(n) / int(4));
    }
    let a = alpha_nu(nu, p.n);
    let x = sq(g - int(2)) - sq(int(nu as i64) + &n / int(2) - int(1));
    (sq(g + &n / int(2) - int(1)) + &a) / (sq(g + &n / int(2) - int(3)) + &a) * sq(x)
}

/// Rellich–Leray constant for curl-free fields: minimum of the mode terms.
pub fn rellich_leray_curlfree(p: &Params) -> Result<MinReport, ConstantsError> {
    let f = |nu: u32| rellich_leray_curlfree_term(p, nu);
    let nm = nu_max(p);
    let (best, arg) = scan(&f, 0, nm);
    if !window_tail_ok(&f, nm, &best) {
        return Err(ConstantsError::TailBoundFailed { what: "Rellich-Leray", nu_max: nm });
    }
    Ok(MinReport { value: best.into(), argmin: arg, nu_scanned: nm, tail_bound_ok: true })
}

/// A_{N,γ,ν} in the γ-form.
pub fn rellich_hardy_a(p: &Params, nu: u32) -> Rational {
    let n = p.nq();
    let g = &p.gamma;
    if nu == 0 {
        return sq(g - &n / int(2));
    }
    let num = sq(sq(g - int(1)) - sq(int(nu as i64) + &n / int(2) - int(1)));
    num / (sq(g + &n / int(2) - int(2)) + alpha_nu(nu, p.n))
}

/// A_{N,γ,ν} rewritten through λ: (λ+N−2)² and (α_ν − α_λ)²/(α_ν + λ²).
pub fn rellich_hardy_a_lambda(p: &Params, nu: u32) -> Rational {
    let l = p.lambda();
    if nu == 0 {
        return sq(&l + p.nq() - int(2));
    }
    let a = alpha_nu(nu, p.n);
    sq(&a - alpha(&l, p.n)) / (a + sq(l))
}

/// C_{N,γ,ν}: separate closed forms for ν = 0 and ν = 1, general form for ν ≥ 2.
pub fn rellich_hardy_c(p: &Params, nu: u32) -> Rational {
    let n = p.nq();
    let g = &p.gamma;
    let h = &n / int(2);
    match nu {
        0 => sq(sq(g - int(1)) - sq(h.clone())) / (sq(g + &h - int(2)) + &n - int(1)),
        1 => {
            sq(g - &h - int(2)) * (sq(g + &h - int(1)) + &n - int(1))
                / (sq(g + &h - int(3)) + int(3) * (&n - int(1)))
        }
        _ => rellich_hardy_c_general(p, nu).expect("P1(0, α_ν) > 0 for ν ≥ 2"),
    }
}

/// The ν ≥ 2 formula applied at any ν ≥ 1; at λ = 0, ν = 1 it is 0/0.
pub fn rellich_hardy_c_general(p: &Params, nu: u32) -> Result<Rational, ConstantsError> {
    if nu == 0 {
        return Ok(rellich_hardy_c(p, 0));
    }
    let n = p.nq();
    let g = &p.gamma;
    let h = &n / int(2);
    let a = alpha_nu(nu, p.n);
    let x2 = sq(sq(g - int(2)) - sq(int(nu as i64) + &h - int(1)));
    let den = &x2
        + int(2)
            * (g - int(1))
            * ((int(2) * g + &n - int(5)) * &a + (&n - int(1)) * sq(g + &h - int(3)));
    if den.is_zero() {
        return Err(ConstantsError::Degenerate { nu });
    }
    Ok(x2 * (sq(g + &h - int(1)) + a) / den)
}

/// inf_ν A_{N,γ,ν}; the tail is certified by the monotone-numerator argument:
/// once A_{k} ≤ A_{k+1} at some k ≥ 1 the sequence is nondecreasing from k on.
pub fn a_min(p: &Params) -> Result<MinReport, ConstantsError> {
    let nm = nu_max(p);
    let f = |nu: u32| rellich_hardy_a(p, nu);
    let (best, arg) = scan(&f, 0, nm);
    if f(nm - 1) > f(nm) {
        return Err(ConstantsError::TailBoundFailed { what: "A", nu_max: nm });
    }
    Ok(MinReport { value: best.into(), argmin: arg, nu_scanned: nm, tail_bound_ok: true })
}

/// inf_ν C_{N,γ,ν} with the windowed tail check.
pub fn c_min(p: &Params) -> Result<MinReport, ConstantsError> {
    let nm = nu_max(p);
    let f = |nu: u32| rellich_hardy_c(p, nu);
    let (best, arg) = scan(&f, 0, nm);
    if !window_tail_ok(&f, nm, &best) {
        return Err(ConstantsError::TailBoundFailed { what: "C", nu_max: nm });
    }
    Ok(MinReport { value: best.into(), argmin: arg, nu_scanned: nm, tail_bound_ok: true })
}

#[derive(Clone, Debug, Serialize)]
pub struct ImprovementReport {
    #[serde(rename = "N")]
    pub n: u32,
    pub gamma: Exact,
    pub lambda: Exact,
    pub a_min: MinReport,
    pub c_min: MinReport,
    pub equal: bool,
    pub strict: bool,
    pub in_improvement_region: bool,
    /// min{A_{ν−1}, A_{ν+1}} ≤ C_ν ≤ max{A_{ν−1}, A_{ν+1}} for 1 ≤ ν ≤ nu_max; `None` at λ = 0.
    pub sandwich_ok: Option<bool>,
    pub degenerate: bool,
}

/// |γ − (N+4)/6| < √(N²−N+1)/3, decided exactly as (6γ − N − 4)² < 4(N² − N + 1).
pub fn in_improvement_region(p: &Params) -> bool {
    let n = p.nq();
    sq(int(6) * &p.gamma - &n - int(4)) < int(4) * (&n * &n - &n + int(1))
}

pub fn improvement_report(p: &Params) -> Result<ImprovementReport, ConstantsError> {
    let a = a_min(p)?;
    let c = c_min(p)?;
    let degenerate = p.lambda().is_zero();
    let sandwich_ok = (!degenerate).then(|| {
        (1..=a.nu_scanned).all(|nu| {
            let c = rellich_hardy_c(p, nu);
            let lo = rellich_hardy_a(p, nu - 1);
            let hi = rellich_hardy_a(p, nu + 1);
            let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
            lo <= c && c <= hi
        })
    });
    Ok(ImprovementReport {
        n: p.n,
        gamma: p.gamma.clone().into(),
        lambda: p.lambda().into(),
        equal: c.value == a.value,
        strict: c.value > a.value,
        in_improvement_region: in_improvement_region(p),
        a_min: a,
        c_min: c,
        sandwich_ok,
        degenerate,
    })
}

pub mod float {
    //! `f64` mirror of the exact formulas.

    use serde::Serialize;

    #[derive(Clone, Copy, Debug, PartialEq, Serialize)]
    pub struct ParamsF64 {
        #[serde(rename = "N")]
        pub n: u32,
        pub gamma: f64,
    }

    impl ParamsF64 {
        pub fn lambda(&self) -> f64 {
            2.0 - self.n as f64 / 2.0 - self.gamma
        }

        pub fn nu_max(&self) -> u32 {
            self.gamma.abs().ceil() as u32 + self.n + 16
        }
    }

    pub fn alpha(s: f64, n: u32) -> f64 {
        s * (s + n as f64 - 2.0)
    }

    pub fn hardy_leray(p: &ParamsF64) -> f64 {
        let n = p.n as f64;
        let g = p.gamma + n / 2.0;
        if g * g <= n + 1.0 {
            let w = (g - 2.0).powi(2);
            (g - 1.0).powi(2) * (3.0 * (n - 1.0) + w) / (n - 1.0 + w)
        } else {
            (g - 1.0).powi(2) + n - 1.0
        }
    }

    pub fn rellich_hardy_a(p: &ParamsF64, nu: u32) -> f64 {
        let n = p.n as f64;
        let g = p.gamma;
        if nu == 0 {
            return (g - n / 2.0).powi(2);
        }
        let num = ((g - 1.0).powi(2) - (nu as f64 + n / 2.0 - 1.0).powi(2)).powi(2);
        num / ((g + n / 2.0 - 2.0).powi(2) + alpha(nu as f64, p.n))
    }

    pub fn rellich_hardy_c(p: &ParamsF64, nu: u32) -> f64 {
        let n = p.n as f64;
        let g = p.gamma;
        let h = n / 2.0;
        match nu {
            0 => ((g - 1.0).powi(2) - h * h).powi(2) / ((g + h - 2.0).powi(2) + n - 1.0),
            1 => {
                (g - h - 2.0).powi(2) * ((g + h - 1.0).powi(2) + n - 1.0)
                    / ((g + h - 3.0).powi(2) + 3.0 * (n - 1.0))
            }
            _ => {
                let a = alpha(nu as f64, p.n);
                let x2 = ((g - 2.0).powi(2) - (nu as f64 + h - 1.0).powi(2)).powi(2);
                let den = x2 + 2.0 * (g - 1.0) * ((2.0 * g + n - 5.0) * a + (n - 1.0) * (g + h - 3.0).powi(2));
                x2 * ((g + h - 1.0).powi(2) + a) / den
            }
        }
    }

    fn scan(f: impl Fn(u32) -> f64, to: u32) -> (f64, u32) {
        let mut best = (f(0), 0);
        for nu in 1..=to {
            let v = f(nu);
            if v < best.0 {
                best = (v, nu);
            }
        }
        best
    }

    pub fn a_min(p: &ParamsF64) -> (f64, u32) {
        scan(|nu| rellich_hardy_a(p, nu), p.nu_max())
    }

    pub fn c_min(p: &ParamsF64) -> (f64, u32) {
        scan(|nu| rellich_hardy_c(p, nu), p.nu_max())
    }

    pub fn in_improvement_region(p: &ParamsF64) -> bool {
        let n = p.n as f64;
        (6.0 * p.gamma - n - 4.0).powi(2) < 4.0 * (n * n - n + 1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pr(n: u32, g: Rational) -> Params {
        Params::new(n, g).unwrap()
    }

    #[test]
    fn small_dimension_rejected() {
        assert_eq!(Params::new(1, int(0)), Err(ConstantsError::InvalidDimension(1)));
    }

    #[test]
    fn hardy_leray_values() {
        assert_eq!(hardy_leray(&pr(2, int(10))), int(101));
        assert_eq!(hardy_leray(&pr(3, int(0))), rat(25, 36));
    }

    #[test]
    fn rellich_leray_values() {
        let p = pr(3, int(0));
        assert_eq!(rellich_leray_unconstrained(&p).value.0, rat(9, 16));
        assert_eq!(rellich_leray_curlfree(&p).unwrap().value.0, rat(25, 16));
    }

    #[test]
    fn degenerate_general_form() {
        let p = Params::from_lambda(3, int(0)).unwrap();
        assert_eq!(rellich_hardy_c_general(&p, 1), Err(ConstantsError::Degenerate { nu: 1 }));
        assert_eq!(rellich_hardy_c(&p, 1), rat(27, 7));
    }
}
