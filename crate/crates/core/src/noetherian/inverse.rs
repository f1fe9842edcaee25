//! The P-primary ideal {f : A•f ∈ P for all A in the bisubmodule
//! generated by given operators}.

use std::collections::HashMap;

use super::{map_to_punctual_hilbert, NoetherianOptions, PrimeData, PF};
use crate::algebra::{Field, Monomial, MonomialOrder, Polynomial, Rational};
use crate::diffops::DiffOp;
use crate::dual::echelonize;
use crate::error::{Error, Result};
use crate::groebner::{groebner_basis, multiplicity_over_prime, Ideal, ResidueElem};
use crate::linalg::exact_kernel;

type P = Polynomial<Rational>;

/// F-span of the operator images, closed under contraction by the
/// dependent variables (the right action of R on the bisubmodule).
fn closed_span(data: &PrimeData, ops: &[DiffOp<Rational>]) -> Result<Vec<DiffOp<ResidueElem>>> {
    let images: Vec<_> = ops.iter().map(|a| data.to_field(a)).collect();
    let mut basis = echelonize(&images, 0.0);
    loop {
        let mut grown = basis.clone();
        for v in &basis {
            for &i in &data.split.dependent {
                let w = v.right_action(i)?;
                if !w.is_zero() {
                    grown.push(w);
                }
            }
        }
        let next = echelonize(&grown, 0.0);
        if next.len() == basis.len() {
            return Ok(basis);
        }
        basis = next;
    }
}

/// Reduced Gröbner basis over F of V⊥ ⊂ F[y].
fn orthogonal_ideal(data: &PrimeData, v: &[DiffOp<ResidueElem>]) -> Result<Vec<PF>> {
    let vars = &data.split.dependent;
    let s = v.iter().map(DiffOp::order).max().unwrap_or(0) + 1;
    let columns = Monomial::all_up_to_degree(vars, s - 1);
    let weights: Vec<ResidueElem> = columns.iter().map(|m| ResidueElem::from_bigint(&m.factorial())).collect();
    let rows: Vec<Vec<ResidueElem>> = v
        .iter()
        .map(|a| {
            columns
                .iter()
                .zip(&weights)
                .map(|(m, w)| a.scalar(m) * w.clone())
                .collect()
        })
        .collect();
    let mut gens: Vec<PF> = exact_kernel(&rows, columns.len())
        .into_iter()
        .map(|k| PF::from_terms(columns.iter().cloned().zip(k)))
        .collect();
    gens.extend(Monomial::all_of_degree(vars, s).into_iter().map(|m| PF::term(m, ResidueElem::one())));
    groebner_basis(&gens, &MonomialOrder::Grevlex)
}

/// Polynomials of degree ≤ d killed modulo P by every lifted operator.
fn members_up_to(data: &PrimeData, lifts: &[DiffOp<Rational>], d: u32) -> Vec<P> {
    let n = data.prime.ring().arity();
    let all: Vec<usize> = (0..n).collect();
    let monos = Monomial::all_up_to_degree(&all, d);
    let order = MonomialOrder::Grevlex;
    let mut row_of: HashMap<(usize, Monomial), usize> = HashMap::new();
    let mut entries: Vec<(usize, usize, Rational)> = Vec::new();
    for (j, m) in monos.iter().enumerate() {
        let x = P::term(m.clone(), Rational::one());
        for (k, a) in lifts.iter().enumerate() {
            let h = data.prime.normal_form(&a.apply(&x), &order);
            for (b, c) in h.terms() {
                let next = row_of.len();
                let r = *row_of.entry((k, b.clone())).or_insert(next);
                entries.push((r, j, c.clone()));
            }
        }
    }
    let mut rows = vec![vec![Rational::zero(); monos.len()]; row_of.len()];
    for (r, j, c) in entries {
        rows[r][j] = c;
    }
    exact_kernel(&rows, monos.len())
        .into_iter()
        .map(|k| P::from_terms(monos.iter().cloned().zip(k)))
        .collect()
}

/// Q = γ⁻¹(V⊥) for V the closed F-span of `ops`. Candidates are the ideals
/// generated by Q ∩ R_{≤D}; a candidate with the right multiplicity is
/// contracted from K(t)[x_dep] and accepted once its punctual Hilbert point
/// equals V⊥.
pub fn ideal_from_noetherian_operators(ops: &[DiffOp<Rational>], p: &Ideal, opts: &NoetherianOptions) -> Result<Ideal> {
    if ops.is_empty() {
        return Err(Error::InvalidInput("at least one operator is required".into()));
    }
    let ring = p.ring();
    let data = PrimeData::new(p, opts.dependent.as_deref())?;
    for a in ops {
        a.check(ring)?;
        if a.terms().any(|(alpha, _)| alpha.degree_in(&data.split.independent) > 0) {
            return Err(Error::InvalidInput(
                "operators may only differentiate the dependent variables".into(),
            ));
        }
    }
    let v = closed_span(&data, ops)?;
    if v.is_empty() {
        return Err(Error::InvalidInput("all operators vanish modulo the prime".into()));
    }
    let m = v.len();
    let target = orthogonal_ideal(&data, &v)?;
    let lifts: Vec<DiffOp<Rational>> = v.iter().map(|a| data.lift(a)).collect();
    let cap = opts.inverse_cap.unwrap_or(m as u32 + p.max_degree() + 2);
    let mut partial = Ideal::new(ring, Vec::new())?;
    for d in 1..=cap {
        let members = members_up_to(&data, &lifts, d);
        if members.is_empty() {
            continue;
        }
        let candidate = Ideal::new(ring, members)?;
        partial = candidate.clone();
        match multiplicity_over_prime(&candidate, p, &data.split) {
            Ok(k) if k == m => {}
            Ok(_) | Err(Error::NotPrimary) => continue,
            Err(e) => return Err(e),
        }
        let q = candidate.contract_from_fractions(&data.split)?;
        let hp = map_to_punctual_hilbert(&q, &data, &opts.dual)?;
        if hp.multiplicity == m && hp.ideal == target {
            let gb = q.groebner_basis(&MonomialOrder::Grevlex);
            return Ideal::new(ring, gb.to_vec());
        }
    }
    Err(Error::CapReached {
        cap,
        what: format!("inverse problem not certified; partial result {}", partial.to_text()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Ring;
    use crate::noetherian::noetherian_operators_punctual;

    fn ring3() -> Ring {
        Ring::rational(["x1", "x2", "x3"]).unwrap()
    }

    fn ops(r: &Ring, texts: &[&str]) -> Vec<DiffOp<Rational>> {
        texts.iter().map(|t| DiffOp::parse(r, t).unwrap()).collect()
    }

    #[test]
    fn zero_dimensional_round_trip() {
        let r = ring3();
        let p = Ideal::parse(&r, &["x1", "x2", "x3"]).unwrap();
        let a = ops(&r, &["1", "dx3", "dx2", "dx1", "-dx1*dx2 + dx2*dx3", "-dx1*dx2 + dx1*dx3"]);
        let q = ideal_from_noetherian_operators(&a, &p, &NoetherianOptions::default()).unwrap();
        let expect = Ideal::parse(&r, &["x3^2", "x2^2", "x1*x2 + x1*x3 + x2*x3", "x1^2"]).unwrap();
        assert!(q.equals(&expect).unwrap(), "{}", q.to_text());
    }

    #[test]
    fn running_example_round_trip() {
        let r = ring3();
        let p = Ideal::parse(&r, &["x2", "x1"]).unwrap();
        let q = ideal_from_noetherian_operators(&ops(&r, &["1", "x3*dx1 + dx2"]), &p, &NoetherianOptions::default()).unwrap();
        let expect = Ideal::parse(&r, &["x1^2", "x2^2", "x1 - x2*x3"]).unwrap();
        assert!(q.equals(&expect).unwrap(), "{}", q.to_text());
        // only x3*dx1 + dx2: its contraction supplies the identity
        let q2 = ideal_from_noetherian_operators(&ops(&r, &["x3*dx1 + dx2"]), &p, &NoetherianOptions::default()).unwrap();
        assert!(q2.equals(&expect).unwrap());
    }

    #[test]
    fn identity_gives_the_prime() {
        let r = ring3();
        let p = Ideal::parse(&r, &["x1 - x3^2", "x2*x3 - 1"]).unwrap();
        let q = ideal_from_noetherian_operators(&ops(&r, &["1"]), &p, &NoetherianOptions::default()).unwrap();
        assert!(q.equals(&p).unwrap());
    }

    #[test]
    fn curved_round_trip() {
        let r = Ring::rational(["x1", "x2"]).unwrap();
        let p = Ideal::parse(&r, &["x2 - x1^2"]).unwrap();
        let q = p.power(2);
        let c = noetherian_operators_punctual(&q, &p, &NoetherianOptions::default()).unwrap();
        let back = ideal_from_noetherian_operators(&c.operators, &p, &NoetherianOptions::default()).unwrap();
        assert!(back.equals(&q).unwrap(), "{}", back.to_text());
    }

    #[test]
    fn invalid_operator_sets() {
        let r = ring3();
        let p = Ideal::parse(&r, &["x2", "x1"]).unwrap();
        let o = NoetherianOptions::default();
        assert!(ideal_from_noetherian_operators(&[], &p, &o).is_err());
        assert!(ideal_from_noetherian_operators(&ops(&r, &["dx3"]), &p, &o).is_err());
        assert!(ideal_from_noetherian_operators(&ops(&r, &["x1"]), &p, &o).is_err());
    }
}
