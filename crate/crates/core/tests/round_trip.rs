//! Forward and inverse maps on a corpus of primary ideals.

mod common;

use common::ring;
use noether::algebra::{Field, Polynomial, Rational};
use noether::diffops::DiffOp;
use noether::dual::{in_span, DualConfig};
use noether::groebner::Ideal;
use noether::noetherian::{
    ideal_from_noetherian_operators, noetherian_operators, specialized_noetherian_operators, NoetherianOptions,
    Strategy,
};

struct Entry {
    vars: &'static [&'static str],
    q: &'static [&'static str],
    p: &'static [&'static str],
    multiplicity: usize,
    /// A point of V(P) with generic independent coordinates.
    point: &'static [i64],
}

const X3: &[&str] = &["x1", "x2", "x3"];

fn corpus() -> Vec<Entry> {
    vec![
        Entry { vars: X3, q: &["x1^2", "x2^2", "x1 - x2*x3"], p: &["x1", "x2"], multiplicity: 2, point: &[0, 0, 5] },
        Entry {
            vars: X3,
            q: &["x1^2", "x2^2", "x3^2", "x1*x2 + x1*x3 + x2*x3"],
            p: &["x1", "x2", "x3"],
            multiplicity: 6,
            point: &[0, 0, 0],
        },
        Entry { vars: &["x1", "x2"], q: &["(x2 - x1^2)^2"], p: &["x2 - x1^2"], multiplicity: 2, point: &[3, 9] },
        Entry { vars: X3, q: &["x1^2", "x2"], p: &["x1", "x2"], multiplicity: 2, point: &[0, 0, -4] },
        Entry { vars: X3, q: &["x1^2", "x1*x2", "x2^2"], p: &["x1", "x2"], multiplicity: 3, point: &[0, 0, 2] },
        Entry { vars: X3, q: &["x1^3", "x2 - x1*x3"], p: &["x1", "x2"], multiplicity: 3, point: &[0, 0, 7] },
        Entry { vars: X3, q: &["x1^2 - x3*x2", "x2^2"], p: &["x1", "x2"], multiplicity: 4, point: &[0, 0, 3] },
        Entry {
            vars: X3,
            q: &["(x1 - 1)^2", "(x1 - 1)*(x2 + 2)", "(x2 + 2)^2", "(x1 - 1)*x3", "(x2 + 2)*x3", "x3^2"],
            p: &["x1 - 1", "x2 + 2", "x3"],
            multiplicity: 4,
            point: &[1, -2, 0],
        },
        Entry { vars: X3, q: &["x1 - x3^2", "x2*x3 - 1"], p: &["x1 - x3^2", "x2*x3 - 1"], multiplicity: 1, point: &[1, 1, 1] },
        Entry { vars: X3, q: &["(x1 - x3^2)^2", "x2"], p: &["x1 - x3^2", "x2"], multiplicity: 2, point: &[9, 0, 3] },
        Entry { vars: X3, q: &["x1^2", "x2^2"], p: &["x1", "x2"], multiplicity: 4, point: &[0, 0, 1] },
        Entry {
            vars: &["x1", "x2", "x3", "x4"],
            q: &["x1^2", "x1*x2", "x2^2", "x3*x1 - x4*x2"],
            p: &["x1", "x2"],
            multiplicity: 2,
            point: &[0, 0, 2, 3],
        },
    ]
}

fn build(e: &Entry) -> (Ideal, Ideal) {
    let r = ring(e.vars);
    (Ideal::parse(&r, e.q).unwrap(), Ideal::parse(&r, e.p).unwrap())
}

#[test]
fn forward_then_inverse_recovers_the_ideal() {
    for e in corpus() {
        let (q, p) = build(&e);
        let cert = noetherian_operators(&q, &p, Strategy::PunctualHilbert, &NoetherianOptions::default()).unwrap();
        assert_eq!(cert.operators.len(), e.multiplicity, "{}", q.to_text());
        assert!(cert.verify(&q), "{}", q.to_text());
        let back = ideal_from_noetherian_operators(&cert.operators, &p, &NoetherianOptions::default()).unwrap();
        assert!(back.equals(&q).unwrap(), "{} came back as {}", q.to_text(), back.to_text());
    }
}

#[test]
fn specialization_matches_the_certificate() {
    for e in corpus() {
        let (q, p) = build(&e);
        let cert = noetherian_operators(&q, &p, Strategy::PunctualHilbert, &NoetherianOptions::default()).unwrap();
        let point: Vec<Rational> = e.point.iter().map(|&v| Rational::from_int(v)).collect();
        for g in p.gens() {
            assert!(g.evaluate(&point).is_zero(), "corpus point off the variety");
        }
        let evaluated: Vec<DiffOp<Rational>> = cert
            .operators
            .iter()
            .map(|a| a.map_coeffs(|c| Polynomial::constant(c.evaluate(&point))))
            .collect();
        let special = specialized_noetherian_operators(&q, &point, &cert.split.dependent, &DualConfig::default()).unwrap();
        assert_eq!(special.len(), e.multiplicity, "{}", q.to_text());
        for a in &evaluated {
            assert!(in_span(a, &special, 0.0), "{}: {} not specialized", q.to_text(), a.display(q.ring()));
        }
    }
}
