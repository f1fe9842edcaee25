use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{CoeffText, Field};
use super::monomial::{monomial_text, Monomial};
use super::order::MonomialOrder;

/// Sparse multivariate polynomial. Terms are kept in a map ordered by
/// grevlex, never with a zero coefficient, so iteration (and printing) is
/// deterministic.
#[derive(Clone, PartialEq)]
pub struct Polynomial<C> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Field> Default for Polynomial<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Field> Polynomial<C> {
    pub fn zero() -> Self {
        Polynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn var(i: usize) -> Self {
        Self::term(Monomial::var(i), C::one())
    }

    pub fn term(m: Monomial, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    /// Sum of the given terms (repeated monomials are combined).
    pub fn from_terms<I: IntoIterator<Item = (Monomial, C)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// self += c·m·g, in place.
    pub fn add_multiple(&mut self, g: &Self, m: &Monomial, c: &C) {
        if c.is_zero() {
            return;
        }
        for (k, a) in &g.terms {
            self.add_term(k.mul(m), a.clone() * c.clone());
        }
    }

    pub fn remove_term(&mut self, m: &Monomial) -> Option<C> {
        self.terms.remove(m)
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

    /// Terms in ascending grevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> + '_ {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, C)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<C> {
        if self.is_constant() {
            Some(self.coeff(&Monomial::one()))
        } else {
            None
        }
    }

    /// Total degree; the zero polynomial has degree 0.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Smallest total degree of a term (the order of vanishing at the origin).
    pub fn low_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).min().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exponent(var)).max().unwrap_or(0)
    }

    /// One past the largest variable index occurring in the polynomial.
    pub fn var_bound(&self) -> usize {
        self.terms.keys().map(Monomial::len).max().unwrap_or(0)
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exponent(var) > 0)
    }

    pub fn lead_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &C)> {
        match order {
            MonomialOrder::Grevlex => self.terms.iter().next_back(),
            _ => self
                .terms
                .iter()
                .max_by(|a, b| order.cmp(a.0, b.0)),
        }
    }

    pub fn lead_monomial(&self, order: &MonomialOrder) -> Option<&Monomial> {
        self.lead_term(order).map(|t| t.0)
    }

    pub fn lead_coeff(&self, order: &MonomialOrder) -> Option<&C> {
        self.lead_term(order).map(|t| t.1)
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self, order: &MonomialOrder) -> Self {
        match self.lead_coeff(order).and_then(|c| c.inv()) {
            Some(inv) => self.scale(&inv),
            None => self.clone(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = BTreeMap::new();
        for (m, a) in &self.terms {
            let v = a.clone() * c.clone();
            if !v.is_zero() {
                out.insert(m.clone(), v);
            }
        }
        Polynomial { terms: out }
    }

    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = BTreeMap::new();
        for (k, a) in &self.terms {
            let v = a.clone() * c.clone();
            if !v.is_zero() {
                out.insert(k.mul(m), v);
            }
        }
        Polynomial { terms: out }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `order`-fold partial derivative with respect to `var`.
    pub fn derivative(&self, var: usize, order: u32) -> Self {
        if order == 0 {
            return self.clone();
        }
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e < order {
                continue;
            }
            let mut falling = 1i64;
            for k in 0..order {
                falling *= (e - k) as i64;
            }
            out.add_term(m.with_exponent(var, e - order), c.clone() * C::from_int(falling));
        }
        out
    }

    /// ∂^α f.
    pub fn apply_partials(&self, alpha: &Monomial) -> Self {
        if alpha.is_one() {
            return self.clone();
        }
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if let Some(rest) = m.div(alpha) {
                // β!/(β-α)!
                let mut factor = num_bigint::BigInt::from(1);
                for (i, &a) in alpha.exponents().iter().enumerate() {
                    let b = m.exponent(i);
                    for k in 0..a {
                        factor *= b - k;
                    }
                }
                out.add_term(rest, c.clone() * C::from_bigint(&factor));
            }
        }
        out
    }

    /// Value at `point` (indices past the end of `point` must not occur).
    pub fn evaluate(&self, point: &[C]) -> C {
        self.eval_with(point, |c| c.clone())
    }

    /// Evaluate in another field through a coefficient map.
    pub fn eval_with<D: Field>(&self, point: &[D], f: impl Fn(&C) -> D) -> D {
        let mut acc = D::zero();
        for (m, c) in &self.terms {
            let mut v = f(c);
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    v = v * point[i].clone();
                }
            }
            acc = acc + v;
        }
        acc
    }

    pub fn map_coeffs<D: Field>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Rewrite each term through `f`, which returns a polynomial to add.
    pub fn flat_map_terms<D: Field>(&self, f: impl Fn(&Monomial, &C) -> Polynomial<D>) -> Polynomial<D> {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            out = out + f(m, c);
        }
        out
    }

    /// f(x + p) for a shift vector `p` (missing entries count as 0).
    pub fn translate(&self, shift: &[C]) -> Self {
        let images: Vec<Self> = (0..self.var_bound())
            .map(|i| match shift.get(i) {
                Some(s) if !s.is_zero() => Self::var(i) + Self::constant(s.clone()),
                _ => Self::var(i),
            })
            .collect();
        self.compose(&images)
    }

    /// f(g_0, g_1, ...): variable i replaced by `images[i]`; variables
    /// beyond the list are kept.
    pub fn compose(&self, images: &[Self]) -> Self {
        let n = self.var_bound();
        let mut powers: Vec<Vec<Self>> = Vec::with_capacity(n);
        for i in 0..n {
            let base = images.get(i).cloned().unwrap_or_else(|| Self::var(i));
            let mut pw = vec![Self::one()];
            for k in 1..=self.degree_in(i) as usize {
                let next = &pw[k - 1] * &base;
                pw.push(next);
            }
            powers.push(pw);
        }
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut t = Self::constant(c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = &t * &powers[i][e as usize];
                }
            }
            out = out + t;
        }
        out
    }

    /// Substitute constants for the listed variables.
    pub fn specialize(&self, values: &[(usize, C)]) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut exps = m.to_vec(m.len());
            for (v, val) in values {
                if let Some(e) = exps.get_mut(*v) {
                    for _ in 0..*e {
                        coeff = coeff * val.clone();
                    }
                    *e = 0;
                }
            }
            out.add_term(Monomial::from_exponents(&exps), coeff);
        }
        out
    }

    /// Drop terms whose coefficient magnitude is below `tol` times the largest.
    pub fn clean(&self, tol: f64) -> Self {
        let max = self
            .terms
            .values()
            .map(Field::magnitude)
            .fold(0.0f64, f64::max);
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(_, c)| c.magnitude() > tol * max)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Euclidean norm of the coefficient vector.
    pub fn coeff_norm(&self) -> f64 {
        self.terms
            .values()
            .map(|c| c.magnitude().powi(2))
            .sum::<f64>()
            .sqrt()
    }

    /// Render with `vars` as variable names and `params` for coefficient parameters.
    pub fn to_text(&self, vars: &[String], params: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let pieces: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let ct = c.coeff_text(params);
                if m.is_one() {
                    ct.standalone()
                } else {
                    format!("{}{}", ct.prefix(), monomial_text(m, vars))
                }
            })
            .collect();
        join_signed(&pieces)
    }

    /// Rendering for use as a coefficient in front of something else.
    pub fn coeff_text(&self, vars: &[String], params: &[String]) -> CoeffText {
        match self.terms.len() {
            0 => CoeffText::Atom("0".to_string()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                if m.is_one() {
                    c.coeff_text(params)
                } else {
                    CoeffText::Atom(self.to_text(vars, params))
                }
            }
            _ => CoeffText::Sum(self.to_text(vars, params)),
        }
    }
}

/// Join rendered terms with ` + ` / ` - `.
pub fn join_signed(pieces: &[String]) -> String {
    let mut out = String::new();
    for (i, p) in pieces.iter().enumerate() {
        if i == 0 {
            out.push_str(p);
        } else if let Some(rest) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(p);
        }
    }
    out
}

impl<C: Field> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.var_bound();
        let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let params: Vec<String> = (0..16).map(|i| format!("t{i}")).collect();
        write!(f, "{}", self.to_text(&names, &params))
    }
}

impl<'a, C: Field> Add<&'a Polynomial<C>> for &'a Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: &'a Polynomial<C>) -> Polynomial<C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<C: Field> Add for Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(mut self, rhs: Polynomial<C>) -> Polynomial<C> {
        if self.terms.len() < rhs.terms.len() {
            return rhs + self;
        }
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<'a, C: Field> Sub<&'a Polynomial<C>> for &'a Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: &'a Polynomial<C>) -> Polynomial<C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<C: Field> Sub for Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(mut self, rhs: Polynomial<C>) -> Polynomial<C> {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
        self
    }
}

impl<'a, C: Field> Mul<&'a Polynomial<C>> for &'a Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: &'a Polynomial<C>) -> Polynomial<C> {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<C: Field> Mul for Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: Polynomial<C>) -> Polynomial<C> {
        &self * &rhs
    }
}

impl<C: Field> Neg for Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        Polynomial {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl<C: Field> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        -self.clone()
    }
}

/// Compare two polynomials' leading monomials under `order` (zero is smallest).
pub fn cmp_lead<C: Field>(a: &Polynomial<C>, b: &Polynomial<C>, order: &MonomialOrder) -> Ordering {
    match (a.lead_monomial(order), b.lead_monomial(order)) {
        (None, None) => Ordering::Equal,
        (None, _) => Ordering::Less,
        (_, None) => Ordering::Greater,
        (Some(x), Some(y)) => order.cmp(x, y),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Rational;

    type P = Polynomial<Rational>;

    fn x(i: usize) -> P {
        P::var(i)
    }
    fn c(n: i64) -> P {
        P::constant(Rational::from_integer(n.into()))
    }
    #[test]
    fn compose_substitutes_polynomials() {
        // (x0 + x1^2)|_{x0 = x1 - 1, x1 = 2*x0} = x1 - 1 + 4*x0^2
        let f = &x(0) + &x(1).pow(2);
        let g = f.compose(&[&x(1) - &c(1), &c(2) * &x(0)]);
        assert_eq!(g, &(&x(1) - &c(1)) + &(&c(4) * &x(0).pow(2)));
        assert_eq!(x(2).compose(&[c(5)]), x(2));
    }

    fn names() -> Vec<String> {
        vec!["x1".into(), "x2".into(), "x3".into()]
    }

    #[test]
    fn additive_cancellation() {
        let p = &(&x(0) + &c(1)) + &(-x(0));
        assert_eq!(p, c(1));
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&x(0) + &x(1)) * &(&x(0) - &x(1));
        assert_eq!(p, &(&x(0) * &x(0)) - &(&x(1) * &x(1)));
    }

    #[test]
    fn expansion_by_hand() {
        // (x1 - x2 x3) * x2 = x1 x2 - x2^2 x3
        let f = &x(0) - &(&x(1) * &x(2));
        let p = &f * &x(1);
        let expected = P::from_terms([
            (Monomial::from_exponents(&[1, 1]), Rational::from_integer(1.into())),
            (Monomial::from_exponents(&[0, 2, 1]), Rational::from_integer((-1).into())),
        ]);
        assert_eq!(p, expected);
        assert_eq!(p.to_text(&names(), &[]), "-x2^2*x3 + x1*x2");
    }

    #[test]
    fn derivatives() {
        let sq = &x(0) * &x(0);
        assert_eq!(sq.derivative(0, 1), &c(2) * &x(0));
        assert_eq!(sq.derivative(0, 2), c(2));
        assert!((&x(1) * &x(1)).derivative(0, 1).is_zero());
        let a = Monomial::from_exponents(&[1, 1]);
        assert_eq!((&x(0) * &x(1)).apply_partials(&a), c(1));
    }

    #[test]
    fn evaluation() {
        let q = |n: i64| Rational::from_integer(n.into());
        assert_eq!(c(5).evaluate(&[q(9), q(9)]), q(5));
        assert_eq!((&x(0) * &x(1)).evaluate(&[q(2), q(3)]), q(6));
    }

    #[test]
    fn translation_is_substitution() {
        let q = |n: i64| Rational::from_integer(n.into());
        let f = &(&x(0) * &x(0)) - &(&c(3) * &x(1));
        let g = f.translate(&[q(1), q(-2)]);
        // g(0,0) = f(1,-2) = 1 + 6
        assert_eq!(g.evaluate(&[q(0), q(0)]), q(7));
        assert_eq!(g.evaluate(&[q(2), q(1)]), f.evaluate(&[q(3), q(-1)]));
    }

    #[test]
    fn printing() {
        let f = &(&x(0) * &x(0)) - &(&x(1) * &x(2));
        assert_eq!(f.to_text(&names(), &[]), "x1^2 - x2*x3");
        assert_eq!(P::zero().to_text(&names(), &[]), "0");
        let h = &(&c(-3) * &x(0)) + &c(1);
        assert_eq!(h.to_text(&names(), &[]), "-3*x1 + 1");
    }
}
