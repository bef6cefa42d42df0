//! Acceptance suite: one PASS/FAIL line per criterion; exits nonzero if any fails.

use std::time::{Duration, Instant};

use num_traits::Zero;
use rellich_core::certificates::lemma::le1_infimum_near_one;
use rellich_core::certificates::{self, family, lemma_guard};
use rellich_core::constants::{
    a_min, alpha_nu, c_min, improvement_report, rellich_hardy_a, rellich_hardy_c, Params,
};
use rellich_core::field_oracle::{crosscheck, OracleConfig};
use rellich_core::poly::{int, rat, MultiPoly, Rational, Var};
use rellich_core::spectral::{
    brute_min_tau_nu, minimizing_sequence, remainder_suite, Profile, ProfileKind, SpectralConfig, TauGrid,
};

const SEED: u64 = 20240611;

type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

struct Outcome {
    ok: bool,
    detail: String,
}

fn pr(n: u32, g: Rational) -> Params {
    Params::new(n, g).expect("N >= 2")
}

fn gamma_grid() -> Vec<Rational> {
    [(-3, 1), (-2, 1), (-1, 1), (-1, 2), (0, 1), (1, 2), (1, 1), (3, 2), (2, 1), (3, 1)]
        .iter()
        .map(|&(a, b)| rat(a, b))
        .collect()
}

fn exact_constants() -> Outcome {
    let mut fails = Vec::new();
    let mut check = |ok: bool, what: String| {
        if !ok {
            fails.push(what);
        }
    };
    let am = |n, g| a_min(&pr(n, g)).unwrap().value.0;
    let cm = |n, g| c_min(&pr(n, g)).unwrap().value.0;
    check(am(3, int(0)) == rat(25, 36), "A_{3,0} = 25/36".into());
    check(am(4, int(0)) == int(3), "A_{4,0} = 3".into());
    for n in 3..=12u32 {
        let g = int(2) - rat(n as i64, 2);
        check(cm(n, g) == int(n as i64 - 1), format!("C_{{{n},2-N/2}} = N-1"));
    }
    check(cm(2, int(1)) == int(1) && am(2, int(1)) == int(0), "C_{2,1} = 1, A_{2,1} = 0".into());
    for n in 2..=4 {
        let r = improvement_report(&pr(n, int(0))).unwrap();
        check(r.equal, format!("C = A at (N, gamma) = ({n}, 0)"));
    }
    for n in 5..=12i64 {
        let r = improvement_report(&pr(n as u32, int(0))).unwrap();
        let q = rat(n * n, 4);
        let closed = (q.clone() - int(1)) * (q.clone() - int(1)) / (q - int(n) + int(3));
        check(r.strict && r.c_min.value.0 == closed, format!("C > A with closed form at N = {n}"));
    }
    Outcome { ok: fails.is_empty(), detail: if fails.is_empty() { "all identities exact".into() } else { fails.join("; ") } }
}

fn certificate_suite() -> Outcome {
    let reports = certificates::certify_all(2..=12);
    let s = certificates::summarize(&reports);
    let first = reports.iter().find(|r| !r.pass()).map(|r| format!(", first failure {}", r.name)).unwrap_or_default();
    Outcome { ok: s.failed == 0 && s.total > 0, detail: format!("{}/{} passed{first}", s.passed, s.total) }
}

/// C_{N,γ,ν} from the symbols at τ = 0, independent of the closed forms.
fn c_from_symbols(p: &Params, nu: u32) -> Option<Rational> {
    let fam = family();
    let (q, d) = if nu == 0 { (&fam.q0, &fam.p0) } else { (&fam.q1, &fam.p1) };
    let subs = [
        (Var::Tau, MultiPoly::zero()),
        (Var::A, MultiPoly::constant(alpha_nu(nu, p.n))),
        (Var::Lambda, MultiPoly::constant(p.lambda())),
        (Var::N, MultiPoly::int(p.n as i64)),
    ];
    let den = d.substitute_many(&subs).as_constant()?;
    (!den.is_zero()).then(|| q.substitute_many(&subs).as_constant().unwrap() / den)
}

fn identity_links() -> Outcome {
    let (mut checked, mut fails) = (0, Vec::new());
    for n in 2..=10 {
        for g in gamma_grid() {
            let p = pr(n, g.clone());
            checked += 1;
            if rellich_hardy_c(&p, 0) != rellich_hardy_a(&p, 1) {
                fails.push(format!("C0 != A1 at ({n}, {g})"));
            }
            for nu in 0..=8 {
                if nu == 1 && p.lambda().is_zero() {
                    continue;
                }
                checked += 1;
                if c_from_symbols(&p, nu) != Some(rellich_hardy_c(&p, nu)) {
                    fails.push(format!("symbol ratio != C at ({n}, {g}, {nu})"));
                }
            }
        }
    }
    Outcome { ok: fails.is_empty(), detail: format!("{checked} exact links, {} failures {:?}", fails.len(), fails.first()) }
}

fn brute_force_minimum() -> Outcome {
    let cfg = SpectralConfig::default();
    let (mut worst, mut fails, mut count) = (0.0f64, Vec::new(), 0);
    for n in 2..=10 {
        for g in gamma_grid() {
            let p = pr(n, g.clone());
            count += 1;
            match brute_min_tau_nu(&p, &TauGrid::default(), 8, &cfg) {
                Ok(r) => {
                    worst = worst.max(r.rel_err);
                    if !(r.argmin_tau == 0.0 && r.rel_err <= 1e-10) {
                        fails.push(format!("({n}, {g})"));
                    }
                }
                Err(e) => fails.push(format!("({n}, {g}): {e}")),
            }
        }
    }
    Outcome {
        ok: fails.is_empty(),
        detail: format!("{count} scans, argmin at tau = 0, max rel err {worst:.1e}, failures {fails:?}"),
    }
}

fn sharpness() -> Outcome {
    let cfg = SpectralConfig::default();
    let mut lines = Vec::new();
    let mut ok = true;
    for (n, g) in [(3, int(0)), (4, int(0)), (5, int(0)), (2, rat(1, 2))] {
        let p = pr(n, g.clone());
        let nu = c_min(&p).unwrap().argmin;
        match minimizing_sequence(&p, nu, &[10, 20, 40], ProfileKind::Bump, &cfg) {
            Ok(s) => {
                ok &= s.gap_ratios.len() == 2 && s.gap_ratios.iter().all(|r| (3.5..=4.5).contains(r));
                lines.push(format!("({n},{g},nu={nu}) [{:.3}, {:.3}]", s.gap_ratios[0], s.gap_ratios[1]));
            }
            Err(e) => {
                ok = false;
                lines.push(format!("({n},{g}) {e}"));
            }
        }
    }
    Outcome { ok, detail: format!("gap ratios {}", lines.join(" ")) }
}

fn reduction_oracle() -> Outcome {
    let (oc, sc) = (OracleConfig::default(), SpectralConfig::default());
    let gammas = [int(-1), int(0), rat(1, 2), int(1), int(2)];
    let (mut worst2, mut worst3, mut worst_rem) = (0.0f64, 0.0f64, 0.0f64);
    let (mut cases, mut fails) = (0, Vec::new());
    for n in [2u32, 3] {
        for g in &gammas {
            for nu in 0..=3 {
                for dil in [1, 2] {
                    cases += 1;
                    let pf = Profile::standard(ProfileKind::Bump, dil).unwrap();
                    match crosscheck(&pr(n, g.clone()), nu, &pf, &oc, &sc) {
                        Ok(r) => {
                            let w = r.rel_lap.max(r.rel_grad);
                            if n == 2 {
                                worst2 = worst2.max(w);
                            } else {
                                worst3 = worst3.max(w);
                            }
                            worst_rem = worst_rem.max(r.rel_rem);
                        }
                        Err(e) => fails.push(format!("({n}, {g}, {nu}, {dil}): {e}")),
                    }
                }
            }
        }
    }
    Outcome {
        ok: fails.is_empty() && worst2 <= 1e-6 && worst3 <= 1e-5 && worst_rem <= 1e-5,
        detail: format!(
            "{cases} cases, max rel diff N=2 {worst2:.1e}, N=3 {worst3:.1e}, remainder {worst_rem:.1e}, failures {fails:?}"
        ),
    }
}

fn remainder_inequality() -> Outcome {
    let cfg = SpectralConfig { remainder_tol: 1e-8, ..SpectralConfig::default() };
    match remainder_suite(SEED, 20, &cfg) {
        Ok(reps) => {
            let mut c0s: Vec<f64> = reps.iter().map(|r| r.c0).collect();
            c0s.sort_by(f64::total_cmp);
            c0s.dedup();
            let allowed = c0s.iter().all(|c| [1.0, 0.5, 1.0 / 3.0].contains(c));
            let failed = reps.iter().filter(|r| !r.pass).count();
            let min_rel = reps.iter().map(|r| r.slack / r.scale).fold(f64::INFINITY, f64::min);
            Outcome {
                ok: failed == 0 && reps.len() == 60 && allowed,
                detail: format!("{}/{} fields pass, c0 values {c0s:?}, min slack/scale {min_rel:.2e}", reps.len() - failed, reps.len()),
            }
        }
        Err(e) => Outcome { ok: false, detail: e.to_string() },
    }
}

fn lemma_numeric_guard() -> Outcome {
    let guard = lemma_guard(SEED, 10_000);
    let cases: Vec<(u32, Rational)> =
        vec![(2, int(0)), (3, int(0)), (3, int(-1)), (4, rat(1, 2)), (5, int(1)), (6, int(-2)), (10, rat(-1, 2))];
    let inf = le1_infimum_near_one(&cases);
    let ok = guard.iter().all(|g| g.pass) && inf.iter().all(|r| r.pass);
    let mins: Vec<String> = guard.iter().map(|g| format!("{} {:.4}>={:.4}", g.regime, g.min_quotient, g.c0)).collect();
    let worst_inf = inf.iter().map(|r| r.infimum).fold(f64::NEG_INFINITY, f64::max);
    Outcome {
        ok,
        detail: format!("{} samples per regime: {}; le1 infima within [1, {worst_inf:.6}]", 10_000, mins.join(", ")),
    }
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("exact constants", exact_constants, Some(Duration::from_secs(1))),
        ("certificate suite", certificate_suite, Some(Duration::from_secs(30))),
        ("identity links", identity_links, None),
        ("brute-force minimum location", brute_force_minimum, None),
        ("sharpness at desk scale", sharpness, Some(Duration::from_secs(60))),
        ("reduction oracle", reduction_oracle, None),
        ("remainder inequality", remainder_inequality, None),
        ("difference-quotient guard", lemma_numeric_guard, None),
    ];
    let mut all = true;
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = f();
        let took = start.elapsed();
        let in_time = limit.is_none_or(|l| took <= l);
        let ok = out.ok && in_time;
        all &= ok;
        let budget = limit.map(|l| format!(" (limit {} s)", l.as_secs())).unwrap_or_default();
        println!(
            "criterion {}: {} - {name}: {} [{:.2} s{budget}]",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            out.detail,
            took.as_secs_f64()
        );
    }
    if !all {
        std::process::exit(1);
    }
}
