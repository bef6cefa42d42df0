#![allow(clippy::needless_range_loop)]

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rellich_core::constants::{alpha_nu, c_min, Params};
use rellich_core::exact::to_f64;
use rellich_core::field_oracle::{
    analytic_field, crosscheck, harmonic_norm_closed, harmonic_norm_sq, laplace_beltrami_residual,
    weighted_integrals, AnalyticField, OracleConfig, OracleError,
};
use rellich_core::poly::{int, rat, Rational};
use rellich_core::quad::legendre;
use rellich_core::spectral::{Profile, ProfileKind, SpectralConfig};

fn params(n: u32, g: Rational) -> Params {
    Params::new(n, g).unwrap()
}

fn bundle(n: u32, g: Rational, nu: u32, dil: u32, kind: ProfileKind) -> AnalyticField {
    let pf = Profile::standard(kind, dil).unwrap();
    analytic_field(&params(n, g), nu, &pf, n).unwrap()
}

/// Random points in the annulus e^{−n} < r < e^{n}.
fn annulus_points(dim: usize, dil: u32, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let r = rng.gen_range(-(dil as f64) * 0.95..dil as f64 * 0.95).exp();
            let mut v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.iter_mut().for_each(|x| *x *= r / norm);
            v
        })
        .collect()
}

#[test]
fn fields_are_curl_free() {
    for (n, nu) in [(2, 0), (2, 3), (3, 0), (3, 2)] {
        let b = bundle(n, rat(1, 2), nu, 2, ProfileKind::Bump);
        let pts = annulus_points(n as usize, 2, 100, 3);
        assert!(b.curl_residual(&pts) <= 1e-12);
    }
}

#[test]
fn radial_field_matches_its_formula() {
    // u = x r^{λ−1} h(log r).
    let b = bundle(3, int(-1), 0, 1, ProfileKind::RaisedCosine);
    for x in annulus_points(3, 1, 20, 5) {
        let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        let h = b.profile.derivatives(r.ln())[0];
        let fp = b.eval(&x);
        for i in 0..3 {
            let expect = x[i] * r.powf(b.lambda - 1.0) * h;
            assert!((fp.u[i] - expect).abs() <= 1e-13 * expect.abs().max(1e-3));
        }
    }
}

/// Jacobian and Δu against central differences of the analytic u.
#[test]
fn derivatives_match_finite_differences() {
    for (n, nu) in [(2, 0), (2, 2), (3, 1), (3, 3)] {
        let b = bundle(n, rat(1, 2), nu, 2, ProfileKind::Bump);
        let d = n as usize;
        let eps = 1e-4;
        for x in annulus_points(d, 2, 10, 7) {
            let fp = b.eval(&x);
            let scale = fp.jac.iter().flatten().fold(1e-12f64, |m, v| m.max(v.abs()));
            let shifted = |j: usize, s: f64| {
                let mut y = x.clone();
                y[j] += s;
                b.eval(&y)
            };
            let mut lap_fd = vec![0.0; d];
            for j in 0..d {
                let (p, m) = (shifted(j, eps), shifted(j, -eps));
                for i in 0..d {
                    let fd = (p.u[i] - m.u[i]) / (2.0 * eps);
                    assert!((fd - fp.jac[i][j]).abs() <= 1e-5 * scale, "N={n} ν={nu}");
                    lap_fd[i] += (p.jac[i][j] - m.jac[i][j]) / (2.0 * eps);
                }
            }
            let lscale = fp.lap_u.iter().fold(1e-12f64, |m, v| m.max(v.abs())).max(scale);
            for i in 0..d {
                assert!((lap_fd[i] - fp.lap_u[i]).abs() <= 1e-5 * lscale);
            }
        }
    }
}

/// tr ∇u = Δφ against r^{−2}((∂ₜ² + (N−2)∂ₜ − α_ν)(e^{(λ+1)t}h))·Y.
#[test]
fn laplacian_of_potential_matches_polar_operator() {
    for (n, nu) in [(2u32, 1u32), (2, 3), (3, 2), (3, 1)] {
        let b = bundle(n, int(0), nu, 2, ProfileKind::Bump);
        let l1 = b.lambda + 1.0;
        let alpha = to_f64(&alpha_nu(nu, n));
        for x in annulus_points(n as usize, 2, 20, 11) {
            let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            let t = r.ln();
            let h = b.profile.derivatives(t);
            let e = (l1 * t).exp();
            let (f0, f1, f2) = (e * h[0], e * (l1 * h[0] + h[1]), e * (l1 * l1 * h[0] + 2.0 * l1 * h[1] + h[2]));
            let y = if n == 2 { (nu as f64 * x[1].atan2(x[0])).cos() } else { legendre(nu, x[2] / r) };
            let expect = (f2 + (n as f64 - 2.0) * f1 - alpha * f0) * y / (r * r);
            let fp = b.eval(&x);
            let trace: f64 = (0..n as usize).map(|i| fp.jac[i][i]).sum();
            assert!((trace - expect).abs() <= 1e-10 * (expect.abs() + f2.abs() / (r * r) + 1e-12));
            let phi = fp.phi.unwrap();
            assert!((phi - f0 * y).abs() <= 1e-12 * (f0.abs() + 1e-300));
        }
    }
}

#[test]
fn eigenvalues_on_the_sphere() {
    assert!(laplace_beltrami_residual(2, 1, 50) < 1e-6);
    assert!(laplace_beltrami_residual(3, 2, 50) < 1e-5);
    for nu in 0..6 {
        assert!(laplace_beltrami_residual(3, nu, 40) < 1e-5);
        assert!(laplace_beltrami_residual(2, nu, 40) < 1e-5);
    }
}

#[test]
fn harmonic_norms() {
    for nu in 0..8 {
        for dim in [2, 3] {
            assert!((harmonic_norm_sq(dim, nu).unwrap() - harmonic_norm_closed(dim, nu)).abs() < 1e-12);
        }
    }
    assert_eq!(harmonic_norm_closed(3, 2), 4.0 * std::f64::consts::PI / 5.0);
    assert!(harmonic_norm_sq(4, 1).is_err());
}

#[test]
fn zero_and_nonzero_fields() {
    let cfg = OracleConfig::default();
    let zero = Profile::new(ProfileKind::Bump, 1, 64, 0.0).unwrap();
    let b = analytic_field(&params(2, int(0)), 1, &zero, 2).unwrap();
    let w = weighted_integrals(&b, &cfg).unwrap();
    assert_eq!((w.i_lap, w.i_grad, w.i_u, w.i_rem), (0.0, 0.0, 0.0, 0.0));
    let w = weighted_integrals(&bundle(3, int(1), 2, 1, ProfileKind::Bump), &cfg).unwrap();
    assert!(w.i_grad > 0.0 && w.i_lap > 0.0 && w.i_u > 0.0 && w.i_rem > 0.0);
}

#[test]
fn integral_ratio_respects_best_constant() {
    let w = weighted_integrals(&bundle(2, rat(1, 2), 1, 3, ProfileKind::Bump), &OracleConfig::default()).unwrap();
    let cm = c_min(&params(2, rat(1, 2))).unwrap().value.approx();
    assert!(w.i_lap / w.i_grad >= cm - 1e-6);
}

#[test]
fn crosscheck_examples() {
    let (oc, sc) = (OracleConfig::default(), SpectralConfig::default());
    for (n, g, nu, tol) in [(2, int(0), 1, 1e-6), (2, int(1), 0, 1e-6), (3, rat(1, 2), 2, 1e-5)] {
        let pf = Profile::standard(ProfileKind::Bump, 2).unwrap();
        let r = crosscheck(&params(n, g), nu, &pf, &oc, &sc).unwrap();
        assert!(r.rel_lap <= tol && r.rel_grad <= tol && r.rel_rem <= 1e-5, "{r:?}");
    }
}

#[test]
fn crosscheck_flags_a_wrong_normalization() {
    let (mut oc, sc) = (OracleConfig::default(), SpectralConfig::default());
    let pf = Profile::standard(ProfileKind::Bump, 1).unwrap();
    let ok = crosscheck(&params(2, int(0)), 2, &pf, &oc, &sc).unwrap();
    assert!(ok.pass);
    oc.tol_n2 = -1.0;
    assert!(matches!(crosscheck(&params(2, int(0)), 2, &pf, &oc, &sc), Err(OracleError::Mismatch(_))));
}

#[test]
fn unconverged_quadrature_is_reported() {
    let oc = OracleConfig { cells_per_unit: 1, converged_tol: 1e-14, ..OracleConfig::default() };
    let b = bundle(2, int(0), 1, 1, ProfileKind::Bump);
    assert!(matches!(weighted_integrals(&b, &oc), Err(OracleError::NotConverged { .. })));
}

#[test]
fn rejects_unsupported_dimensions() {
    let pf = Profile::standard(ProfileKind::Bump, 1).unwrap();
    assert_eq!(analytic_field(&params(4, int(0)), 1, &pf, 4).unwrap_err(), OracleError::UnsupportedDimension(4));
    assert!(analytic_field(&params(3, int(0)), 1, &pf, 2).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// Random parameters beyond the fixed grid, including the raised-cosine profile.
    #[test]
    fn reduction_holds_off_grid(n in 2u32..=3, k in -16i64..=24, nu in 0u32..=4, dil in 1u32..=2, cos in any::<bool>()) {
        let kind = if cos { ProfileKind::RaisedCosine } else { ProfileKind::Bump };
        let pf = Profile::standard(kind, dil).unwrap();
        let r = crosscheck(&params(n, rat(k, 8)), nu, &pf, &OracleConfig::default(), &SpectralConfig::default());
        prop_assert!(r.is_ok(), "{:?}", r);
    }
}
