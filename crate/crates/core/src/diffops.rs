//! Differential operators Σ c_α(x) ∂^α with polynomial coefficients.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::algebra::monomial::monomial_text;
use crate::algebra::parse::{parse_polynomial, ParseError};
use crate::algebra::polynomial::join_signed;
use crate::algebra::{Field, Monomial, Polynomial, Rational, RationalFunction, Ring};
use crate::error::{Error, Result};

/// Keys are ∂-monomials (same exponent vectors as ring monomials), values
/// nonzero coefficients in the ring.
#[derive(Clone, PartialEq)]
pub struct DiffOp<C: Field> {
    terms: BTreeMap<Monomial, Polynomial<C>>,
}

/// Operator whose coefficients are rational functions of the parameters.
pub type InterpolatedDiffOp = DiffOp<RationalFunction>;

/// JSON form of one operator term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermJson {
    pub monomial: Vec<u32>,
    pub coefficient: String,
}

impl<C: Field> Default for DiffOp<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Field> DiffOp<C> {
    pub fn zero() -> Self {
        DiffOp { terms: BTreeMap::new() }
    }

    /// The identity operator 1.
    pub fn identity() -> Self {
        Self::term(Monomial::one(), Polynomial::one())
    }

    pub fn term(alpha: Monomial, coeff: Polynomial<C>) -> Self {
        let mut op = Self::zero();
        op.add_term(alpha, coeff);
        op
    }

    /// ∂^α with coefficient 1.
    pub fn partial(alpha: Monomial) -> Self {
        Self::term(alpha, Polynomial::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Polynomial<C>)>>(it: I) -> Self {
        let mut op = Self::zero();
        for (a, c) in it {
            op.add_term(a, c);
        }
        op
    }

    /// Constant-coefficient operator from scalar coefficients.
    pub fn from_scalars<I: IntoIterator<Item = (Monomial, C)>>(it: I) -> Self {
        Self::from_terms(it.into_iter().map(|(a, c)| (a, Polynomial::constant(c))))
    }

    pub fn add_term(&mut self, alpha: Monomial, coeff: Polynomial<C>) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(alpha.clone()).or_insert_with(Polynomial::zero);
        *entry = &*entry + &coeff;
        if entry.is_zero() {
            self.terms.remove(&alpha);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms by ascending grevlex ∂-monomial.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Polynomial<C>)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, alpha: &Monomial) -> Polynomial<C> {
        self.terms.get(alpha).cloned().unwrap_or_else(Polynomial::zero)
    }

    /// ∂-monomials with nonzero coefficient.
    pub fn support(&self) -> Vec<Monomial> {
        self.terms.keys().cloned().collect()
    }

    pub fn order(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn has_constant_coefficients(&self) -> bool {
        self.terms.values().all(Polynomial::is_constant)
    }

    /// Scalar coefficient of ∂^α in a constant-coefficient operator.
    pub fn scalar(&self, alpha: &Monomial) -> C {
        self.terms
            .get(alpha)
            .and_then(Polynomial::constant_value)
            .unwrap_or_else(C::zero)
    }

    /// One past the largest variable index used by keys or coefficients.
    pub fn var_bound(&self) -> usize {
        self.terms
            .iter()
            .map(|(a, c)| a.len().max(c.var_bound()))
            .max()
            .unwrap_or(0)
    }

    pub fn check(&self, ring: &Ring) -> Result<()> {
        if self.var_bound() > ring.arity() {
            Err(Error::RingMismatch)
        } else {
            Ok(())
        }
    }

    /// A • f = Σ c_α ∂^α f.
    pub fn apply(&self, f: &Polynomial<C>) -> Polynomial<C> {
        let mut out = Polynomial::zero();
        for (alpha, c) in &self.terms {
            let d = f.apply_partials(alpha);
            if !d.is_zero() {
                out = out + c * &d;
            }
        }
        out
    }

    /// [`DiffOp::apply`] after checking both live in `ring`.
    pub fn apply_in(&self, ring: &Ring, f: &Polynomial<C>) -> Result<Polynomial<C>> {
        self.check(ring)?;
        ring.check(f)?;
        Ok(self.apply(f))
    }

    /// (A • f)(0).
    pub fn pair_at_origin(&self, f: &Polynomial<C>) -> C {
        if !self.has_constant_coefficients() {
            let n = self.var_bound().max(f.var_bound());
            return self.apply(f).evaluate(&vec![C::zero(); n]);
        }
        // ⟨∂^α, x^β⟩₀ = α! when α = β, else 0
        let mut acc = C::zero();
        for (alpha, c) in &self.terms {
            let k = f.coeff(alpha);
            if !k.is_zero() {
                acc = acc + c.coeff(&Monomial::one()) * k * C::from_bigint(&alpha.factorial());
            }
        }
        acc
    }

    pub fn scale(&self, c: &C) -> Self {
        self.scale_by(&Polynomial::constant(c.clone()))
    }

    /// Multiply every coefficient by the polynomial `p` (left multiplication).
    pub fn scale_by(&self, p: &Polynomial<C>) -> Self {
        Self::from_terms(self.terms.iter().map(|(a, c)| (a.clone(), c * p)))
    }

    pub fn map_coeffs<D: Field>(&self, f: impl Fn(&Polynomial<C>) -> Polynomial<D>) -> DiffOp<D> {
        DiffOp::from_terms(self.terms.iter().map(|(a, c)| (a.clone(), f(c))))
    }

    /// Right action of the variable `v` on a constant-coefficient operator:
    /// c·∂^α ↦ c·α_v·∂^(α − e_v).
    pub fn right_action(&self, v: usize) -> Result<Self> {
        if !self.has_constant_coefficients() {
            return Err(Error::NonConstantRightAction);
        }
        let mut out = Self::zero();
        for (alpha, c) in &self.terms {
            let e = alpha.exponent(v);
            if e == 0 {
                continue;
            }
            let lowered = alpha.with_exponent(v, e - 1);
            out.add_term(lowered, c.scale(&C::from_int(e as i64)));
        }
        Ok(out)
    }

    /// Text with ∂-symbols named `d_names`, coefficient variables `vars`
    /// and field parameters `params`; terms by descending ∂-monomial.
    pub fn to_text(&self, d_names: &[String], vars: &[String], params: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut pieces = Vec::new();
        for (alpha, c) in self.terms.iter().rev() {
            if alpha.is_one() {
                pieces.push(c.to_text(vars, params));
                continue;
            }
            let ct = c.coeff_text(vars, params);
            pieces.push(format!("{}{}", ct.prefix(), monomial_text(alpha, d_names)));
        }
        join_signed(&pieces)
    }

    /// Canonical text in `ring`: ∂-symbols `d<name>`, parameters named after
    /// the ring variables.
    pub fn display(&self, ring: &Ring) -> String {
        self.to_text(&ring.d_names(), ring.names(), ring.names())
    }

    pub fn json_terms(&self, ring: &Ring) -> Vec<TermJson> {
        self.terms
            .iter()
            .rev()
            .map(|(a, c)| TermJson {
                monomial: a.to_vec(ring.arity()),
                coefficient: c.to_text(ring.names(), ring.names()),
            })
            .collect()
    }
}

impl DiffOp<Rational> {
    /// Parse operator text such as `x3*dx1 + dx2` in `ring`.
    pub fn parse(ring: &Ring, text: &str) -> std::result::Result<Self, ParseError> {
        let n = ring.arity();
        let d_names = ring.d_names();
        if let Some(clash) = d_names.iter().find(|d| ring.names().contains(d)) {
            return Err(ParseError {
                offset: 0,
                message: format!("operator symbol '{clash}' collides with a ring variable"),
            });
        }
        let mut names = ring.names().to_vec();
        names.extend(d_names);
        let p = parse_polynomial(text, &names)?;
        let mut op = Self::zero();
        for (m, c) in p.terms() {
            let exps = m.to_vec(2 * n);
            let coeff_m = Monomial::from_exponents(&exps[..n]);
            let alpha = Monomial::from_exponents(&exps[n..]);
            op.add_term(alpha, Polynomial::term(coeff_m, c.clone()));
        }
        Ok(op)
    }
}

/// `{A1, A2, ...}`.
pub fn list_text<C: Field>(ops: &[DiffOp<C>], ring: &Ring) -> String {
    let parts: Vec<String> = ops.iter().map(|o| o.display(ring)).collect();
    format!("{{{}}}", parts.join(", "))
}

impl<C: Field> fmt::Debug for DiffOp<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.var_bound();
        let vars: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let ds: Vec<String> = (0..n).map(|i| format!("dx{i}")).collect();
        write!(f, "{}", self.to_text(&ds, &vars, &vars))
    }
}

impl<C: Field> std::ops::Add for DiffOp<C> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (a, c) in rhs.terms {
            self.add_term(a, c);
        }
        self
    }
}

impl<C: Field> std::ops::Sub for DiffOp<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<C: Field> std::ops::Neg for DiffOp<C> {
    type Output = Self;
    fn neg(self) -> Self {
        DiffOp {
            terms: self.terms.into_iter().map(|(a, c)| (a, -c)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Ring {
        Ring::rational(["x1", "x2", "x3"]).unwrap()
    }

    fn op(text: &str) -> DiffOp<Rational> {
        DiffOp::parse(&ring(), text).unwrap()
    }

    fn poly(text: &str) -> Polynomial<Rational> {
        ring().parse(text).unwrap()
    }

    #[test]
    fn apply_examples() {
        let f = poly("x1^3*x2 - 7");
        assert_eq!(DiffOp::identity().apply(&f), f);
        assert!(op("x3*dx1 + dx2").apply(&poly("x1 - x2*x3")).is_zero());
        assert_eq!(op("dx1*dx2").apply(&poly("x1*x2")), poly("1"));
    }

    #[test]
    fn arithmetic() {
        let a = op("x3*dx1 + 2*dx2^2 - 1");
        assert!((a.clone() + a.scale(&Rational::from_integer((-1).into()))).is_zero());
        let s = DiffOp::partial(Monomial::var(0)).scale_by(&poly("x3"));
        assert_eq!(s.display(&ring()), "x3*dx1");
        let sum = op("dx1 + dx2") + op("dx2");
        assert_eq!(sum.display(&ring()), "dx1 + 2*dx2");
    }

    #[test]
    fn right_action_examples() {
        let r = ring();
        assert_eq!(op("dx1^2").right_action(0).unwrap().display(&r), "2*dx1");
        assert!(op("1").right_action(0).unwrap().is_zero());
        assert_eq!(op("dx1*dx2").right_action(1).unwrap().display(&r), "dx1");
        assert_eq!(op("x1*dx1").right_action(0), Err(Error::NonConstantRightAction));
    }

    #[test]
    fn printing() {
        let r = ring();
        assert_eq!(DiffOp::<Rational>::identity().display(&r), "1");
        assert_eq!(DiffOp::<Rational>::zero().display(&r), "0");
        let a = DiffOp::from_terms([
            (Monomial::var(0), poly("x3")),
            (Monomial::var(1), poly("1")),
        ]);
        assert_eq!(a.display(&r), "x3*dx1 + dx2");
        assert_eq!(op("dx2*dx3 - dx1*dx2").display(&r), "-dx1*dx2 + dx2*dx3");
        assert_eq!(op("(x1 + x2)*dx3 - 3").display(&r), "(x1 + x2)*dx3 - 3");
        assert_eq!(list_text(&[DiffOp::identity(), a], &r), "{1, x3*dx1 + dx2}");
    }

    #[test]
    fn round_trip() {
        let r = ring();
        for t in ["x3*dx1 + dx2", "-dx1*dx2 + dx1*dx3", "(x1 + x2)*dx3 - 3", "1/2*x1^2*dx2^3 + x3"] {
            let a = op(t);
            assert_eq!(a.display(&r), t);
            assert_eq!(DiffOp::parse(&r, &a.display(&r)).unwrap(), a);
        }
    }

    #[test]
    fn json_form() {
        let j = op("x3*dx1 + dx2").json_terms(&ring());
        assert_eq!(j[0].monomial, vec![1, 0, 0]);
        assert_eq!(j[0].coefficient, "x3");
        assert_eq!(j[1].monomial, vec![0, 1, 0]);
        assert_eq!(j[1].coefficient, "1");
    }

    #[test]
    fn ring_checks() {
        let small = Ring::rational(["x1"]).unwrap();
        assert_eq!(op("dx2").apply_in(&small, &poly("x1")), Err(Error::RingMismatch));
    }
}
