//! Ideals over ℚ and the queries built on Gröbner bases.

pub mod buchberger;
pub mod residue;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::Serialize;

pub use buchberger::{groebner_basis, is_groebner, reduce, standard_monomials};
pub use residue::{clear_denominators, extend_to_fractions, ResidueElem, ResidueField};

use crate::algebra::{Field, Monomial, MonomialOrder, Polynomial, Rational, Ring};
use crate::error::{Error, Result};

type P = Polynomial<Rational>;

/// Partition of the ring variables into parameters t (independent modulo a
/// prime) and the remaining coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct VariableSplit {
    pub independent: Vec<usize>,
    pub dependent: Vec<usize>,
}

impl VariableSplit {
    /// Split of `n` variables with the given dependent ones.
    pub fn new(n: usize, dependent: &[usize]) -> Self {
        let mut dep: Vec<usize> = dependent.to_vec();
        dep.sort_unstable();
        dep.dedup();
        let independent = (0..n).filter(|i| !dep.contains(i)).collect();
        VariableSplit {
            independent,
            dependent: dep,
        }
    }

    pub fn codim(&self) -> usize {
        self.dependent.len()
    }
}

/// Ideal of ℚ[x] given by generators, with Gröbner bases cached per order.
pub struct Ideal {
    ring: Ring,
    gens: Vec<P>,
    cache: Mutex<HashMap<MonomialOrder, Arc<Vec<P>>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            cache: Mutex::new(self.cache.lock().unwrap().clone()),
        }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl Ideal {
    pub fn new(ring: &Ring, gens: Vec<P>) -> Result<Self> {
        for g in &gens {
            ring.check(g)?;
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal {
            ring: ring.clone(),
            gens,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn parse(ring: &Ring, gens: &[&str]) -> Result<Self> {
        let polys = gens.iter().map(|g| ring.parse(g)).collect::<std::result::Result<Vec<_>, _>>()?;
        Self::new(ring, polys)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Nonzero generators as given.
    pub fn gens(&self) -> &[P] {
        &self.gens
    }

    pub fn max_degree(&self) -> u32 {
        self.gens.iter().map(P::total_degree).max().unwrap_or(0)
    }

    /// `ideal (g1, g2, ...)`.
    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self.gens.iter().map(|g| self.ring.print(g)).collect();
        format!("ideal ({})", parts.join(", "))
    }

    fn same_ring(&self, other: &Ideal) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn groebner_basis(&self, order: &MonomialOrder) -> Arc<Vec<P>> {
        if let Some(g) = self.cache.lock().unwrap().get(order) {
            return g.clone();
        }
        let g = Arc::new(groebner_basis(&self.gens, order).expect("exact coefficients"));
        self.cache.lock().unwrap().insert(order.clone(), g.clone());
        g
    }

    pub fn normal_form(&self, f: &P, order: &MonomialOrder) -> P {
        reduce(f, &self.groebner_basis(order), order)
    }

    pub fn contains(&self, f: &P) -> bool {
        self.normal_form(f, &MonomialOrder::Grevlex).is_zero()
    }

    pub fn is_unit(&self) -> bool {
        let g = self.groebner_basis(&MonomialOrder::Grevlex);
        g.len() == 1 && g[0].is_constant()
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        self.same_ring(other)?;
        Ok(other.gens.iter().all(|g| self.contains(g)))
    }

    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a * b);
            }
        }
        Ideal::new(&self.ring, gens)
    }

    pub fn power(&self, k: u32) -> Ideal {
        let mut acc = Ideal::new(&self.ring, vec![P::one()]).unwrap();
        for _ in 0..k {
            acc = acc.product(self).unwrap();
        }
        acc
    }

    /// Generators of I ∩ ℚ[other variables].
    pub fn eliminate(&self, vars: &[usize]) -> Vec<P> {
        let order = MonomialOrder::Elimination(vars.to_vec());
        self.groebner_basis(&order)
            .iter()
            .filter(|g| vars.iter().all(|&v| !g.uses_var(v)))
            .cloned()
            .collect()
    }

    /// A ∩ B by eliminating w from w·A + (1 − w)·B.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        let w = self.ring.arity();
        let wp = P::var(w);
        let one_minus_w = &P::one() - &wp;
        let mut gens: Vec<P> = self.gens.iter().map(|a| &wp * a).collect();
        gens.extend(other.gens.iter().map(|b| &one_minus_w * b));
        let order = MonomialOrder::Elimination(vec![w]);
        let g = groebner_basis(&gens, &order)?;
        let kept = g.into_iter().filter(|p| !p.uses_var(w)).collect();
        Ideal::new(&self.ring, kept)
    }

    /// I : h^∞, eliminating w from I + (1 − w·h).
    pub fn saturate(&self, h: &P) -> Result<Ideal> {
        if h.is_constant() {
            return Ok(self.clone());
        }
        let w = self.ring.arity().max(h.var_bound());
        let mut gens = self.gens.clone();
        gens.push(&P::one() - &(&P::var(w) * h));
        let g = groebner_basis(&gens, &MonomialOrder::Elimination(vec![w]))?;
        let kept = g.into_iter().filter(|p| !p.uses_var(w)).collect();
        Ideal::new(&self.ring, kept)
    }

    /// I·K(t)[x_dep] ∩ R, with t the independent variables of `split`.
    pub fn contract_from_fractions(&self, split: &VariableSplit) -> Result<Ideal> {
        let order = MonomialOrder::Product(split.dependent.clone());
        let basis = self.groebner_basis(&order);
        let mut h = P::one();
        for g in basis.iter() {
            let lead = g.lead_monomial(&order).unwrap().restrict(&split.dependent);
            let mut lc = P::zero();
            for (m, c) in g.terms() {
                if m.restrict(&split.dependent) == lead {
                    lc.add_term(m.div(&lead).unwrap(), c.clone());
                }
            }
            if !lc.is_constant() {
                h = crate::algebra::gcd::lcm(&h, &lc);
            }
        }
        self.saturate(&h)
    }

    /// Lead monomials of the reduced grevlex basis.
    pub fn lead_monomials(&self) -> Vec<Monomial> {
        self.groebner_basis(&MonomialOrder::Grevlex)
            .iter()
            .map(|g| g.lead_monomial(&MonomialOrder::Grevlex).unwrap().clone())
            .collect()
    }

    /// A maximal independent set modulo this (prime) ideal: the first subset,
    /// by decreasing size and then lexicographically by index, containing no
    /// lead monomial of the grevlex basis.
    pub fn independent_set(&self) -> Result<VariableSplit> {
        if self.is_unit() {
            return Err(Error::UnitIdeal);
        }
        let n = self.ring.arity();
        let leads = self.lead_monomials();
        for size in (0..=n).rev() {
            let mut found = None;
            for_each_subset(n, size, &mut |s| {
                if found.is_none() && !leads.iter().any(|m| m.support().all(|v| s.contains(&v))) {
                    found = Some(s.to_vec());
                }
            });
            if let Some(indep) = found {
                let dependent: Vec<usize> = (0..n).filter(|i| !indep.contains(i)).collect();
                return Ok(VariableSplit::new(n, &dependent));
            }
        }
        unreachable!("the empty set is always independent for a proper ideal")
    }

    /// Check that `split` puts a maximal independent set of this prime in
    /// the parameters.
    pub fn check_split(&self, split: &VariableSplit) -> Result<()> {
        let auto = self.independent_set()?;
        let elim = self.eliminate(&split.dependent);
        if !elim.is_empty() || split.independent.len() != auto.independent.len() {
            return Err(Error::NoCoordinateSplit);
        }
        Ok(())
    }
}

fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::new(), f);
}

/// Multiplicity of a P-primary ideal `q` over `p`: the F-dimension of the
/// extension of R/Q to K(t)[x_dep], with F = Frac(R/P).
pub fn multiplicity_over_prime(q: &Ideal, p: &Ideal, split: &VariableSplit) -> Result<usize> {
    let field = ResidueField::new(p, split)?;
    let gens: Vec<Polynomial<crate::algebra::RationalFunction>> =
        q.gens().iter().map(|g| extend_to_fractions(g, split)).collect();
    let basis = groebner_basis(&gens, &MonomialOrder::Grevlex)?;
    if basis.iter().any(|g| g.is_constant()) {
        return Err(Error::NotPrimary);
    }
    let leads: Vec<Monomial> = basis
        .iter()
        .map(|g| g.lead_monomial(&MonomialOrder::Grevlex).unwrap().clone())
        .collect();
    let count = standard_monomials(&leads, &split.dependent).ok_or(Error::NotPrimary)?.len();
    if count % field.degree() != 0 {
        return Err(Error::NotPrimary);
    }
    Ok(count / field.degree())
}

/// Mutual-containment test on raw generator lists over any exact field.
pub fn same_ideal<C: Field>(a: &[Polynomial<C>], b: &[Polynomial<C>], order: &MonomialOrder) -> Result<bool> {
    let ga = groebner_basis(a, order)?;
    let gb = groebner_basis(b, order)?;
    Ok(ga == gb)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring3() -> Ring {
        Ring::rational(["x1", "x2", "x3"]).unwrap()
    }

    #[test]
    fn normal_forms() {
        let r = ring3();
        let i = Ideal::parse(&r, &["x1"]).unwrap();
        assert!(i.normal_form(&r.parse("x1^2").unwrap(), &MonomialOrder::Grevlex).is_zero());
        assert_eq!(r.print(&i.normal_form(&r.parse("x1 + 1").unwrap(), &MonomialOrder::Grevlex)), "1");
        let j = Ideal::parse(&r, &["x2", "x1"]).unwrap();
        assert!(j.contains(&r.parse("x2^2*x3^2").unwrap()));
    }

    #[test]
    fn equality() {
        let r = ring3();
        let a = Ideal::parse(&r, &["x1^2", "x2^2"]).unwrap();
        let b = Ideal::parse(&r, &["x2^2", "x1^2"]).unwrap();
        assert!(a.equals(&b).unwrap());
        let c = Ideal::parse(&r, &["x1"]).unwrap();
        let d = Ideal::parse(&r, &["x1^2"]).unwrap();
        assert!(!c.equals(&d).unwrap());
        let other = Ideal::parse(&Ring::rational(["a"]).unwrap(), &["a"]).unwrap();
        assert!(c.equals(&other).is_err());
    }

    #[test]
    fn intersections() {
        let r = Ring::rational(["x", "y"]).unwrap();
        let x = Ideal::parse(&r, &["x"]).unwrap();
        let y = Ideal::parse(&r, &["y"]).unwrap();
        let xy = Ideal::parse(&r, &["x*y"]).unwrap();
        assert!(x.intersect(&y).unwrap().equals(&xy).unwrap());
        let x2 = Ideal::parse(&r, &["x^2"]).unwrap();
        let x3 = Ideal::parse(&r, &["x^3"]).unwrap();
        assert!(x2.intersect(&x3).unwrap().equals(&x3).unwrap());
        assert!(x2.intersect(&x2).unwrap().equals(&x2).unwrap());
    }

    #[test]
    fn independent_sets() {
        let r = ring3();
        let p = Ideal::parse(&r, &["x1", "x2"]).unwrap();
        let s = p.independent_set().unwrap();
        assert_eq!(s.independent, vec![2]);
        assert_eq!(s.codim(), 2);
        let zero = Ideal::new(&r, vec![]).unwrap();
        assert_eq!(zero.independent_set().unwrap().codim(), 0);
        let max = Ideal::parse(&r, &["x1", "x2", "x3"]).unwrap();
        assert!(max.independent_set().unwrap().independent.is_empty());
        let unit = Ideal::parse(&r, &["1"]).unwrap();
        assert_eq!(unit.independent_set(), Err(Error::UnitIdeal));
    }

    #[test]
    fn check_split_rejects_dependent_parameters() {
        let r = ring3();
        let p = Ideal::parse(&r, &["x1 - x3", "x2"]).unwrap();
        assert!(p.check_split(&VariableSplit::new(3, &[1, 2])).is_ok());
        assert!(p.check_split(&VariableSplit::new(3, &[0, 2])).is_err());
        assert!(p.check_split(&VariableSplit::new(3, &[0])).is_err());
    }

    #[test]
    fn multiplicities() {
        let r = ring3();
        let p = Ideal::parse(&r, &["x1", "x2"]).unwrap();
        let split = p.independent_set().unwrap();
        assert_eq!(multiplicity_over_prime(&p, &p, &split).unwrap(), 1);
        let q = Ideal::parse(&r, &["x1^2", "x2^2", "x1 - x2*x3"]).unwrap();
        assert_eq!(multiplicity_over_prime(&q, &p, &split).unwrap(), 2);
        let m = Ideal::parse(&r, &["x1", "x2", "x3"]).unwrap();
        let q6 = Ideal::parse(&r, &["x1^2", "x2^2", "x3^2", "x1*x2 + x1*x3 + x2*x3"]).unwrap();
        let s = m.independent_set().unwrap();
        assert_eq!(multiplicity_over_prime(&q6, &m, &s).unwrap(), 6);
        let not_primary = Ideal::parse(&r, &["x1^2"]).unwrap();
        assert_eq!(multiplicity_over_prime(&not_primary, &p, &split), Err(Error::NotPrimary));
    }

    #[test]
    fn multiplicity_over_curved_prime() {
        // P = (x2 - x1^2): lead x1^2, so t = x2 and F = Q(x2)(sqrt(x2)); Q = P^2 has multiplicity 2
        let r = Ring::rational(["x1", "x2"]).unwrap();
        let p = Ideal::parse(&r, &["x2 - x1^2"]).unwrap();
        let split = p.independent_set().unwrap();
        assert_eq!(split.independent, vec![1]);
        assert_eq!(ResidueField::new(&p, &split).unwrap().degree(), 2);
        assert_eq!(multiplicity_over_prime(&p.power(2), &p, &split).unwrap(), 2);
    }
}
