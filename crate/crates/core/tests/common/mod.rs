//! Generators shared by the integration tests: primary ideals with known
//! multiplicity, staircases and random polynomials.

#![allow(dead_code)]

use noether::algebra::{Field, Monomial, Polynomial, Rational, Ring};
use noether::groebner::Ideal;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

pub type P = Polynomial<Rational>;

pub fn q(n: i64) -> Rational {
    Rational::from_int(n)
}

pub fn ring(names: &[&str]) -> Ring {
    Ring::rational(names.iter().copied()).unwrap()
}

/// Deterministic runner with `cases` cases and no failure persistence.
pub fn runner(cases: u32, seed: u8) -> TestRunner {
    let cfg = Config {
        cases,
        failure_persistence: None,
        max_shrink_iters: 64,
        ..Config::default()
    };
    TestRunner::new_with_rng(cfg, TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]))
}

/// p(images[0], images[1], ...).
pub fn substitute(p: &P, images: &[P]) -> P {
    let mut out = P::zero();
    for (m, c) in p.terms() {
        let mut t = P::constant(c.clone());
        for (i, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                t = &t * &images[i].pow(e);
            }
        }
        out = &out + &t;
    }
    out
}

/// Univariate polynomial in variable `v` from low-to-high coefficients.
pub fn univariate(v: usize, coeffs: &[i64]) -> P {
    let mut out = P::zero();
    for (k, &c) in coeffs.iter().enumerate() {
        if c != 0 {
            let mut e = vec![0; v + 1];
            e[v] = k as u32;
            out.add_term(Monomial::from_exponents(&e), q(c));
        }
    }
    out
}

/// A primary ideal of QQ[x1,x2,x3] with prime (x1 - f(x3), x2 - g(x3)):
/// a template in (y1, y2) = (x1 - f, x2 - g) over the parameter x3.
#[derive(Clone, Debug)]
pub struct PrimaryCase {
    pub kind: u8,
    pub a: u32,
    pub b: u32,
    pub c: i64,
    pub f: Vec<i64>,
    pub g: Vec<i64>,
}

pub struct BuiltPrimary {
    pub ring: Ring,
    pub q: Ideal,
    pub p: Ideal,
    pub multiplicity: usize,
}

impl PrimaryCase {
    /// Template generators in x1, x2 (standing for y1, y2) and x3, with the
    /// colength over QQ(x3).
    fn template(&self) -> (Vec<P>, usize) {
        let y1 = P::var(0);
        let y2 = P::var(1);
        let t = P::var(2);
        let c = P::constant(q(self.c));
        match self.kind {
            // (y1^a, y2^b)
            0 => (vec![y1.pow(self.a), y2.pow(self.b)], (self.a * self.b) as usize),
            // (y1 - c t y2, y2^a)
            1 => (vec![&y1 - &(&(&c * &t) * &y2), y2.pow(self.a)], self.a as usize),
            // (y1, y2)^a
            2 => {
                let gens = (0..=self.a).map(|i| &y1.pow(i) * &y2.pow(self.a - i)).collect();
                (gens, (self.a * (self.a + 1) / 2) as usize)
            }
            // (y1^2 - c t y2, y2^2): colength 4
            _ => (vec![&y1.pow(2) - &(&(&c * &t) * &y2), y2.pow(2)], 4),
        }
    }

    pub fn build(&self) -> BuiltPrimary {
        let r = ring(&["x1", "x2", "x3"]);
        let f = univariate(2, &self.f);
        let g = univariate(2, &self.g);
        let images = vec![&P::var(0) - &f, &P::var(1) - &g, P::var(2)];
        let (tmpl, m) = self.template();
        let gens = tmpl.iter().map(|h| substitute(h, &images)).collect();
        BuiltPrimary {
            q: Ideal::new(&r, gens).unwrap(),
            p: Ideal::new(&r, images[..2].to_vec()).unwrap(),
            ring: r,
            multiplicity: m,
        }
    }
}

pub fn primary_case() -> impl Strategy<Value = PrimaryCase> {
    let coeffs = prop::collection::vec(-2i64..=2, 0..=3);
    (0u8..4, 1u32..=3, 1u32..=2, prop_oneof![-3i64..=-1, 1i64..=3], coeffs.clone(), coeffs).prop_map(
        |(kind, a, b, c, f, g)| {
            // keep multiplicities small enough for exact arithmetic over QQ(x3)
            let a = if kind == 0 || kind == 2 { a.min(2) } else { a };
            PrimaryCase { kind, a, b, c, f, g }
        },
    )
}

/// Sparse polynomial in `n` variables, total degree ≤ `deg`.
pub fn polynomial(n: usize, deg: u32, max_terms: usize) -> impl Strategy<Value = P> {
    let exps = prop::collection::vec(0u32..=deg, n);
    prop::collection::vec((exps, -4i64..=4), 1..=max_terms).prop_map(move |terms| {
        let mut p = P::zero();
        for (e, c) in terms {
            if e.iter().sum::<u32>() <= deg && c != 0 {
                p.add_term(Monomial::from_exponents(&e), q(c));
            }
        }
        p
    })
}

/// Every antichain of nonconstant monomials in two variables with degree
/// ≤ `deg`: the minimal generators of each monomial ideal generated there.
pub fn staircases(deg: u32) -> Vec<Vec<Monomial>> {
    let monos: Vec<Monomial> = (1..=deg)
        .flat_map(|d| (0..=d).map(move |a| Monomial::from_exponents(&[a, d - a])))
        .collect();
    let mut out = Vec::new();
    fn rec(i: usize, monos: &[Monomial], chosen: &mut Vec<Monomial>, out: &mut Vec<Vec<Monomial>>) {
        if i == monos.len() {
            if !chosen.is_empty() {
                out.push(chosen.clone());
            }
            return;
        }
        rec(i + 1, monos, chosen, out);
        let m = &monos[i];
        if chosen.iter().all(|c| !c.divides(m) && !m.divides(c)) {
            chosen.push(m.clone());
            rec(i + 1, monos, chosen, out);
            chosen.pop();
        }
    }
    rec(0, &monos, &mut Vec::new(), &mut out);
    out
}

/// Monomial ideal membership: every term divisible by a generator.
pub fn in_monomial_ideal(f: &P, gens: &[Monomial]) -> bool {
    f.terms().all(|(m, _)| gens.iter().any(|g| g.divides(m)))
}

/// Standard monomials of a zero-dimensional monomial ideal in `n` variables.
pub fn colength(gens: &[Monomial], n: usize, bound: u32) -> usize {
    let vars: Vec<usize> = (0..n).collect();
    Monomial::all_up_to_degree(&vars, bound)
        .iter()
        .filter(|m| !gens.iter().any(|g| g.divides(m)))
        .count()
}
