//! The residue field F = Frac(R/P), realized as S/PS with
//! S = K(t)[x_dep] and t the independent variables.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::buchberger::{groebner_basis, reduce, standard_monomials};
use super::{Ideal, VariableSplit};
use crate::algebra::gcd::lcm;
use crate::algebra::{CoeffText, Field, Monomial, MonomialOrder, Polynomial, Rational, RationalFunction};
use crate::error::{Error, Result};
use crate::linalg::exact_solve;

type P = Polynomial<Rational>;
type PK = Polynomial<RationalFunction>;

/// Rewrite `f ∈ ℚ[x]` as an element of K(t)[x_dep].
pub fn extend_to_fractions(f: &P, split: &VariableSplit) -> PK {
    let mut out = PK::zero();
    for (m, c) in f.terms() {
        let dep = m.restrict(&split.dependent);
        let indep = m.restrict(&split.independent);
        let coeff = RationalFunction::from_poly(P::term(indep, c.clone()));
        out.add_term(dep, coeff);
    }
    out
}

/// Clear denominators: `f = num / den` with `num ∈ ℚ[x]` and `den ∈ ℚ[t]`.
pub fn clear_denominators(f: &PK) -> (P, P) {
    let mut den = P::one();
    for (_, c) in f.terms() {
        den = lcm(&den, c.denominator());
    }
    let mut num = P::zero();
    for (m, c) in f.terms() {
        let scaled = c.clone() * RationalFunction::from_poly(den.clone());
        debug_assert!(scaled.is_polynomial());
        let k = scaled.denominator().constant_value().unwrap();
        let part = scaled.numerator().scale(&Field::inv(&k).unwrap());
        num = num + part.mul_term(m, &<Rational as Field>::one());
    }
    (num, den)
}

pub struct ResidueField {
    split: VariableSplit,
    basis: Vec<PK>,
    standard: Vec<Monomial>,
}

impl fmt::Debug for ResidueField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ResidueField")
            .field("split", &self.split)
            .field("basis", &self.basis)
            .finish()
    }
}

impl ResidueField {
    /// Frac(R/P) for a prime `p` and a split whose independent variables are
    /// independent modulo `p`.
    pub fn new(p: &Ideal, split: &VariableSplit) -> Result<Arc<Self>> {
        let gens: Vec<PK> = p.gens().iter().map(|g| extend_to_fractions(g, split)).collect();
        let basis = groebner_basis(&gens, &MonomialOrder::Grevlex)?;
        if basis.iter().any(|g| g.is_constant()) {
            return Err(Error::UnitIdeal);
        }
        let leads: Vec<Monomial> = basis
            .iter()
            .map(|g| g.lead_monomial(&MonomialOrder::Grevlex).unwrap().clone())
            .collect();
        let standard = standard_monomials(&leads, &split.dependent).ok_or(Error::NotPrimary)?;
        Ok(Arc::new(ResidueField {
            split: split.clone(),
            basis,
            standard,
        }))
    }

    pub fn split(&self) -> &VariableSplit {
        &self.split
    }

    /// Degree [F : K(t)].
    pub fn degree(&self) -> usize {
        self.standard.len()
    }

    /// Gröbner basis of P·S.
    pub fn basis(&self) -> &[PK] {
        &self.basis
    }

    pub fn standard_monomials(&self) -> &[Monomial] {
        &self.standard
    }

    pub fn normal_form(&self, f: &PK) -> PK {
        if self.basis.is_empty() || f.is_constant() {
            return f.clone();
        }
        reduce(f, &self.basis, &MonomialOrder::Grevlex)
    }

    /// Class of a polynomial of R.
    pub fn class(self: &Arc<Self>, f: &P) -> ResidueElem {
        self.element(extend_to_fractions(f, &self.split))
    }

    pub fn element(self: &Arc<Self>, f: PK) -> ResidueElem {
        let nf = self.normal_form(&f);
        ResidueElem::from_normal_form(self, nf)
    }

    fn coords(&self, f: &PK) -> Vec<RationalFunction> {
        self.standard.iter().map(|m| f.coeff(m)).collect()
    }

    fn invert(&self, f: &PK) -> Option<PK> {
        // multiplication-by-f matrix in the standard basis; solve M u = e_1
        let k = self.standard.len();
        let cols: Vec<Vec<RationalFunction>> = self
            .standard
            .iter()
            .map(|m| self.coords(&self.normal_form(&f.mul_term(m, &RationalFunction::one()))))
            .collect();
        let rows: Vec<Vec<RationalFunction>> = (0..k).map(|i| (0..k).map(|j| cols[j][i].clone()).collect()).collect();
        let mut rhs = vec![RationalFunction::zero(); k];
        let one_idx = self.standard.iter().position(|m| m.is_one())?;
        rhs[one_idx] = RationalFunction::one();
        let u = exact_solve(&rows, &rhs)?;
        Some(PK::from_terms(self.standard.iter().cloned().zip(u)))
    }
}

/// Element of a residue field. Values lying in K(t) are kept as `Scalar`
/// so they can be combined without reference to a particular field.
#[derive(Clone)]
pub enum ResidueElem {
    Scalar(RationalFunction),
    Full(Arc<ResidueField>, PK),
}

impl ResidueElem {
    fn from_normal_form(field: &Arc<ResidueField>, nf: PK) -> Self {
        match nf.constant_value() {
            Some(c) => ResidueElem::Scalar(c),
            None if nf.is_zero() => ResidueElem::Scalar(RationalFunction::zero()),
            None => ResidueElem::Full(field.clone(), nf),
        }
    }

    pub fn scalar(c: RationalFunction) -> Self {
        ResidueElem::Scalar(c)
    }

    /// Representative in K(t)[x_dep] (normal form).
    pub fn representative(&self) -> PK {
        match self {
            ResidueElem::Scalar(c) => PK::constant(c.clone()),
            ResidueElem::Full(_, p) => p.clone(),
        }
    }

    pub fn as_scalar(&self) -> Option<&RationalFunction> {
        match self {
            ResidueElem::Scalar(c) => Some(c),
            ResidueElem::Full(..) => None,
        }
    }

    /// Value at a point of V(P): `point` lists all coordinates of R.
    pub fn evaluate<D: Field>(&self, point: &[D]) -> Option<D> {
        match self {
            ResidueElem::Scalar(c) => c.evaluate(point),
            ResidueElem::Full(_, p) => {
                let mut acc = D::zero();
                for (m, c) in p.terms() {
                    let mut v = c.evaluate(point)?;
                    for (i, &e) in m.exponents().iter().enumerate() {
                        for _ in 0..e {
                            v = v * point[i].clone();
                        }
                    }
                    acc = acc + v;
                }
                Some(acc)
            }
        }
    }
}

impl PartialEq for ResidueElem {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (ResidueElem::Scalar(a), ResidueElem::Scalar(b)) => a == b,
            (ResidueElem::Full(_, a), ResidueElem::Full(_, b)) => a == b,
            _ => false,
        }
    }
}

impl fmt::Debug for ResidueElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResidueElem::Scalar(c) => write!(f, "{c:?}"),
            ResidueElem::Full(_, p) => write!(f, "[{p:?}]"),
        }
    }
}

impl Add for ResidueElem {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        match (self, rhs) {
            (ResidueElem::Scalar(a), ResidueElem::Scalar(b)) => ResidueElem::Scalar(a + b),
            (ResidueElem::Full(f, p), ResidueElem::Scalar(c)) | (ResidueElem::Scalar(c), ResidueElem::Full(f, p)) => {
                let s = p + PK::constant(c);
                ResidueElem::from_normal_form(&f, s)
            }
            (ResidueElem::Full(f, p), ResidueElem::Full(_, q)) => ResidueElem::from_normal_form(&f, p + q),
        }
    }
}

impl Sub for ResidueElem {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for ResidueElem {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        match (self, rhs) {
            (ResidueElem::Scalar(a), ResidueElem::Scalar(b)) => ResidueElem::Scalar(a * b),
            (ResidueElem::Full(f, p), ResidueElem::Scalar(c)) | (ResidueElem::Scalar(c), ResidueElem::Full(f, p)) => {
                if Field::is_zero(&c) {
                    return ResidueElem::Scalar(c);
                }
                ResidueElem::Full(f, p.scale(&c))
            }
            (ResidueElem::Full(f, p), ResidueElem::Full(_, q)) => {
                let nf = f.normal_form(&(&p * &q));
                ResidueElem::from_normal_form(&f, nf)
            }
        }
    }
}

impl Neg for ResidueElem {
    type Output = Self;
    fn neg(self) -> Self {
        match self {
            ResidueElem::Scalar(a) => ResidueElem::Scalar(-a),
            ResidueElem::Full(f, p) => ResidueElem::Full(f, -p),
        }
    }
}

impl Field for ResidueElem {
    const EXACT: bool = true;

    fn zero() -> Self {
        ResidueElem::Scalar(RationalFunction::zero())
    }
    fn one() -> Self {
        ResidueElem::Scalar(RationalFunction::one())
    }
    fn is_zero(&self) -> bool {
        matches!(self, ResidueElem::Scalar(c) if Field::is_zero(c))
    }
    fn inv(&self) -> Option<Self> {
        match self {
            ResidueElem::Scalar(c) => c.inv().map(ResidueElem::Scalar),
            ResidueElem::Full(f, p) => f.invert(p).map(|u| ResidueElem::from_normal_form(f, u)),
        }
    }
    fn from_rational(q: &Rational) -> Self {
        ResidueElem::Scalar(RationalFunction::from_rational(q))
    }
    /// `params` are the names of the ring variables: both the parameters t
    /// and the dependent coordinates of a representative use them.
    fn coeff_text(&self, params: &[String]) -> CoeffText {
        match self {
            ResidueElem::Scalar(c) => c.coeff_text(params),
            ResidueElem::Full(_, p) => p.coeff_text(params, params),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Ring;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn parabola() -> (Ring, Arc<ResidueField>) {
        // P = (x1^2 - x3, x2): F = Q(x3)(sqrt(x3)), degree 2
        let r = Ring::rational(["x1", "x2", "x3"]).unwrap();
        let p = Ideal::parse(&r, &["x1^2 - x3", "x2"]).unwrap();
        let split = VariableSplit::new(3, &[0, 1]);
        (r, ResidueField::new(&p, &split).unwrap())
    }

    #[test]
    fn invert_one_and_scalars() {
        let r = Ring::rational(["x1", "x2", "x3"]).unwrap();
        let p = Ideal::parse(&r, &["x2", "x1"]).unwrap();
        let f = ResidueField::new(&p, &VariableSplit::new(3, &[0, 1])).unwrap();
        assert_eq!(f.degree(), 1);
        assert!(Field::is_one(&ResidueElem::one().inv().unwrap()));
        let x3 = f.class(&r.parse("x3").unwrap());
        let inv = x3.inv().unwrap();
        assert_eq!(inv.as_scalar().unwrap().to_text(r.names()), "1/(x3)");
        assert!(Field::is_zero(&f.class(&r.parse("x1 + 2*x2").unwrap())));
    }

    #[test]
    fn quadratic_extension() {
        let (r, f) = parabola();
        assert_eq!(f.degree(), 2);
        let s = f.class(&r.parse("x1").unwrap());
        assert!(matches!(s, ResidueElem::Full(..)));
        let sq = s.clone() * s.clone();
        assert_eq!(sq.as_scalar().unwrap().to_text(r.names()), "x3");
        let inv = s.inv().unwrap();
        assert!(Field::is_one(&(inv * s)));
    }

    #[test]
    fn random_inverses() {
        let (r, f) = parabola();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut checked = 0;
        while checked < 100 {
            let a: i64 = rng.random_range(-5..6);
            let b: i64 = rng.random_range(-5..6);
            let c: i64 = rng.random_range(-3..4);
            let text = format!("{a}*x1*x3 + {b}*x1^3 + {c}*x3^2 - x2*x1");
            let e = f.class(&r.parse(&text).unwrap());
            if Field::is_zero(&e) {
                continue;
            }
            let inv = e.inv().unwrap();
            assert!(Field::is_one(&(e * inv)));
            checked += 1;
        }
    }

    #[test]
    fn field_axioms_on_random_elements() {
        let (r, f) = parabola();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let gen = |rng: &mut ChaCha8Rng| {
            let (a, b, c): (i64, i64, i64) = (rng.random_range(-4..5), rng.random_range(-4..5), rng.random_range(-4..5));
            f.class(&r.parse(&format!("{a}*x1 + {b}*x3 + {c}*x1*x3^2 + 1")).unwrap())
        };
        for _ in 0..30 {
            let (a, b, c) = (gen(&mut rng), gen(&mut rng), gen(&mut rng));
            assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
            assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
            assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
            assert!(Field::is_zero(&(a.clone() - a.clone())));
            for e in [&a, &b, &c] {
                assert!(e.representative().terms().all(|(m, _)| f.standard_monomials().contains(m)));
            }
        }
    }

    #[test]
    fn clearing_denominators() {
        let x3 = RationalFunction::var(2);
        let half_inv = RationalFunction::new(P::constant(Rational::new(1.into(), 2.into())), P::var(2)).unwrap();
        let f = PK::from_terms([(Monomial::var(0), x3), (Monomial::var(1), half_inv)]);
        let (num, den) = clear_denominators(&f);
        let names: Vec<String> = ["x1", "x2", "x3"].iter().map(|s| s.to_string()).collect();
        assert_eq!(den.to_text(&names, &[]), "x3");
        assert_eq!(num.to_text(&names, &[]), "x1*x3^2 + 1/2*x2");
    }
}
