//! The symbolic polynomial families in (τ, a, λ, N).
//!
//! `P`/`Q` are the numerator/denominator symbols of the reduced quotient; `G`
//! and `E` are the auxiliary families of the difference-quotient identities,
//! `F` their N = 2 counterparts. Each is built from its defining formula; the
//! expanded and Taylor-shifted displays live in the certificate corpus and are
//! checked against these.

use crate::poly::{p, MultiPoly, Var};

#[derive(Clone, Debug)]
pub struct PolyFamily {
    pub p0: MultiPoly,
    pub p1: MultiPoly,
    pub q0: MultiPoly,
    pub q1: MultiPoly,
    pub q1_alt: MultiPoly,
    /// Unshifted P1 symbol; `p1` equals it with λ ↦ λ + 1.
    pub p1_unshifted: MultiPoly,
    pub g0: MultiPoly,
    pub g1: MultiPoly,
    pub script_g1: MultiPoly,
    pub script_g2: MultiPoly,
    pub e1: MultiPoly,
    pub e0: MultiPoly,
    pub e12: MultiPoly,
    pub e11: MultiPoly,
    pub e10: MultiPoly,
    pub e03: MultiPoly,
    pub e02: MultiPoly,
    pub e01: MultiPoly,
    pub e00: MultiPoly,
    pub f1: MultiPoly,
    pub f0: MultiPoly,
    pub w: MultiPoly,
}

fn at_tau0(q: &MultiPoly) -> MultiPoly {
    q.substitute(Var::Tau, &MultiPoly::zero())
}

impl PolyFamily {
    pub fn build() -> Self {
        let p0 = p("lambda^2 + N - 1 + tau");
        let p1 = p("a^2 + (2*(lambda^2 - lambda + tau) - N)*a + ((lambda + 1)^2 + tau)*(lambda^2 + N - 1 + tau)");
        let q0 = p("(tau + (lambda - 1)^2)*(tau + (lambda + N - 1)^2)");
        let q1 = p("(tau + a + (lambda - 1)^2)*((tau + a + (lambda + 1)^2)*(tau + a + (lambda + N - 1)^2) - (2*lambda + N)^2*a)");
        let q1_alt = p(
            "(tau + a + (lambda - 1)^2)*(tau^2 + (2*(a + (lambda + 1)*(lambda + N - 1)) + (N - 2)^2)*tau \
             + (a - (lambda + 1)*(lambda + N - 1))^2)",
        );
        let p1_unshifted = p(
            "((lambda - 1)^2 + N - 1)*(lambda^2 + tau + a) + (lambda^2 + tau + a)*tau + a^2 \
             + ((lambda - 2)^2 - 2*N)*a + a*tau",
        );
        let g0 = p(
            "(2*lambda + N)*a^3 + ((2*lambda^2 - N + 5)*(2*lambda + N) - 2*(N - 1))*a^2 \
             + (2*lambda^5 + (N - 8)*lambda^4 - 8*N*lambda^3 - 2*(N^2 + 2*N - 2)*lambda^2 \
                - 2*(6*N - 7)*lambda - 2*N^2 - N + 4)*a \
             + (N - 1)*(2*lambda + N - 2)*(lambda + 1)^4",
        );
        let g1 = p(
            "(2*lambda + N)*a^2 + ((2*lambda + N)*((lambda - 1)^2 - N + 1) - 2*(N - 1))*a \
             + (N - 1)*(2*lambda + N - 2)*(lambda + 1)^2",
        );
        let script_g2 = p("(2*lambda + N - 2)*((lambda + 1)^2 + lambda^2 + N + 3) + (N - 1)^2 + 9");
        let script_g1 = p("lambda^4*(2*lambda + N - 8) + 2*lambda^2*(2 - 4*lambda - 4*N + N^2) + N^2*(2*lambda + N)");

        let mu = p("2*lambda + N - 2");
        let p1_0 = at_tau0(&p1);
        let e1 = &(&mu.scale(&crate::poly::int(2)) * &g1) + &(&p("2*(a + lambda^2 + lambda) + N") * &p1_0);
        let e0 = &(&mu.scale(&crate::poly::int(2)) * &g0) + &(&p1_0 * &p1_0);
        let e12 = p("2*(2*lambda + N - 2)*(2*lambda + N) + 2*(lambda^2 + lambda) + 3*N - 2 + 2*(2*lambda^2 - 2*lambda + N - 2)");
        let e11 = p(
            "2*(2*lambda + N - 2)*((N - 1)*(2*lambda + N - 2) + (lambda - 1)^2*(2*lambda + N)) \
             + 2*lambda^2*((lambda + 1)^2 + 3*N - 3) \
             + (2*(lambda^2 + lambda) + 3*N - 2)*(2*lambda^2 - 2*lambda + N - 2)",
        );
        let e10 = p("4*(N - 1)*(2*lambda + N - 2)*(2*lambda + N - 1) + (2*(lambda^2 + lambda) + 3*N - 2)*((lambda + 1)^2 + 3*N - 3)");
        let e03 = p("2*(2*lambda + N - 2)*(2*lambda + N) + 2*(2*lambda^2 - 2*lambda + N - 2)");
        let e02 = &(&mu.scale(&crate::poly::int(2)) * &script_g2)
            + &p("(2*lambda^2 - 2*lambda + N - 2)^2 + 2*lambda^2*((lambda + 1)^2 + 3*N - 3)");
        let e01 = &(&mu * &script_g1) + &p("lambda^2*((lambda + 1)^2 + 3*N - 3)*(2*lambda^2 - 2*lambda + N - 2)");
        let e00 = p("4*(N - 1)*(2*lambda + N - 2)*(2*lambda + N - 1) + ((lambda + 1)^2 + 3*N - 3)^2");

        let two = MultiPoly::int(2);
        let p1_0_n2 = p1_0.substitute(Var::N, &two);
        let f1 = &(&p("a + lambda^2 + lambda + 1") * &p1_0_n2) + &(&p("3/2*lambda") * &g1.substitute(Var::N, &two));
        let f0 = &(&p1_0_n2 * &p1_0_n2) + &(&p("3*lambda") * &g0.substitute(Var::N, &two));

        let w = p("lambda^2*(2*lambda + N - 4)*(2*lambda + N) + (N - 2)^2 - (a + lambda^2 - 1)^2");

        Self {
            p0,
            p1,
            q0,
            q1,
            q1_alt,
            p1_unshifted,
            g0,
            g1,
            script_g1,
            script_g2,
            e1,
            e0,
            e12,
            e11,
            e10,
            e03,
            e02,
            e01,
            e00,
            f1,
            f0,
            w,
        }
    }

    /// Lookup by the names used in certificate files (`@P1`, `@sG1`, ...).
    pub fn get(&self, key: &str) -> Option<MultiPoly> {
        Some(match key {
            "P0" => self.p0.clone(),
            "P1" => self.p1.clone(),
            "Q0" => self.q0.clone(),
            "Q1" => self.q1.clone(),
            "Q1alt" => self.q1_alt.clone(),
            "P1unshifted" => self.p1_unshifted.clone(),
            "G0" => self.g0.clone(),
            "G1" => self.g1.clone(),
            "sG1" => self.script_g1.clone(),
            "sG2" => self.script_g2.clone(),
            "E1" => self.e1.clone(),
            "E0" => self.e0.clone(),
            "E12" => self.e12.clone(),
            "E11" => self.e11.clone(),
            "E10" => self.e10.clone(),
            "E03" => self.e03.clone(),
            "E02" => self.e02.clone(),
            "E01" => self.e01.clone(),
            "E00" => self.e00.clone(),
            "F1" => self.f1.clone(),
            "F0" => self.f0.clone(),
            "W" => self.w.clone(),
            // Coefficient of a in P1(0, a), and ∂P1/∂τ.
            "P1lin" => at_tau0(&self.p1).coeffs_in(Var::A).get(1).cloned().unwrap_or_default(),
            "dP1dtau" => self.p1.derivative(Var::Tau),
            _ => return None,
        })
    }

    pub const KEYS: [&'static str; 24] = [
        "P0", "P1", "Q0", "Q1", "Q1alt", "P1unshifted", "G0", "G1", "sG1", "sG2", "E1", "E0", "E12", "E11", "E10",
        "E03", "E02", "E01", "E00", "F1", "F0", "W", "P1lin", "dP1dtau",
    ];

    /// Every family with N fixed to `n`.
    pub fn instantiate(&self, n: u32) -> InstantiatedFamily {
        let nn = MultiPoly::int(n as i64);
        InstantiatedFamily {
            n,
            polys: Self::KEYS
                .iter()
                .map(|k| (*k, self.get(k).expect("known key").substitute(Var::N, &nn)))
                .collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct InstantiatedFamily {
    pub n: u32,
    pub polys: Vec<(&'static str, MultiPoly)>,
}

impl InstantiatedFamily {
    pub fn get(&self, key: &str) -> Option<&MultiPoly> {
        self.polys.iter().find(|(k, _)| *k == key).map(|(_, v)| v)
    }
}
