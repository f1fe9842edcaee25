use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{CoeffText, Field, Rational};
use super::gcd::{exact_div, gcd};
use super::monomial::Monomial;
use super::order::MonomialOrder;
use super::polynomial::Polynomial;

type P = Polynomial<Rational>;

/// Quotient of two polynomials over ℚ, kept reduced with a monic
/// (grevlex) denominator. The variables are indices into the ambient ring,
/// normally its independent variables.
#[derive(Clone, PartialEq)]
pub struct RationalFunction {
    num: P,
    den: P,
}

impl RationalFunction {
    /// Normalized quotient; `None` when `den` is zero.
    pub fn new(num: P, den: P) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Self::normalized(num, den))
    }

    pub fn from_poly(p: P) -> Self {
        RationalFunction { num: p, den: P::one() }
    }

    pub fn var(i: usize) -> Self {
        Self::from_poly(P::var(i))
    }

    pub fn numerator(&self) -> &P {
        &self.num
    }

    pub fn denominator(&self) -> &P {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    fn normalized(num: P, den: P) -> Self {
        if num.is_zero() {
            return RationalFunction { num, den: P::one() };
        }
        let (num, den) = if den.is_constant() || num.is_constant() {
            (num, den)
        } else {
            let g = gcd(&num, &den);
            if g.is_constant() {
                (num, den)
            } else {
                (exact_div(&num, &g).unwrap(), exact_div(&den, &g).unwrap())
            }
        };
        let lc = den.lead_coeff(&MonomialOrder::Grevlex).unwrap().clone();
        if Field::is_one(&lc) {
            return RationalFunction { num, den };
        }
        let inv = Field::inv(&lc).unwrap();
        RationalFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    /// Re-run normalization; a no-op on values built through the public API.
    pub fn renormalize(&self) -> Self {
        Self::normalized(self.num.clone(), self.den.clone())
    }

    /// Value at a point; `None` at a pole.
    pub fn evaluate<D: Field>(&self, point: &[D]) -> Option<D> {
        let n = self.num.eval_with(point, D::from_rational);
        let d = self.den.eval_with(point, D::from_rational);
        n.div(&d)
    }

    pub fn to_text(&self, names: &[String]) -> String {
        let n = self.num.to_text(names, &[]);
        if self.den.is_one_poly() {
            return n;
        }
        let n = if self.num.len() > 1 { format!("({n})") } else { n };
        format!("{}/({})", n, self.den.to_text(names, &[]))
    }

    pub fn total_degrees(&self) -> (u32, u32) {
        (self.num.total_degree(), self.den.total_degree())
    }
}

trait IsOnePoly {
    fn is_one_poly(&self) -> bool;
}

impl IsOnePoly for P {
    fn is_one_poly(&self) -> bool {
        self.len() == 1 && Field::is_one(&self.coeff(&Monomial::one()))
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})/({:?})", self.num, self.den)
    }
}

impl Add for RationalFunction {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        if self.num.is_zero() {
            return rhs;
        }
        if rhs.num.is_zero() {
            return self;
        }
        if self.den == rhs.den {
            return Self::normalized(&self.num + &rhs.num, self.den);
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        Self::normalized(num, &self.den * &rhs.den)
    }
}

impl Sub for RationalFunction {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for RationalFunction {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.num.is_zero() || rhs.num.is_zero() {
            return Self::zero();
        }
        if self.den.is_constant() && rhs.den.is_constant() {
            return Self::normalized(&self.num * &rhs.num, &self.den * &rhs.den);
        }
        // cross-cancel before multiplying to keep sizes down
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let n1 = exact_div(&self.num, &g1).unwrap();
        let d2 = exact_div(&rhs.den, &g1).unwrap();
        let n2 = exact_div(&rhs.num, &g2).unwrap();
        let d1 = exact_div(&self.den, &g2).unwrap();
        Self::normalized(&n1 * &n2, &d1 * &d2)
    }
}

impl Neg for RationalFunction {
    type Output = Self;
    fn neg(self) -> Self {
        RationalFunction {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Field for RationalFunction {
    const EXACT: bool = true;

    fn zero() -> Self {
        RationalFunction {
            num: P::zero(),
            den: P::one(),
        }
    }
    fn one() -> Self {
        Self::from_poly(P::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Some(Self::normalized(self.den.clone(), self.num.clone()))
        }
    }
    fn from_rational(q: &Rational) -> Self {
        Self::from_poly(P::constant(q.clone()))
    }
    fn coeff_text(&self, params: &[String]) -> CoeffText {
        if self.den.is_one_poly() {
            return self.num.coeff_text(params, &[]);
        }
        let text = self.to_text(params);
        if self.num.len() == 1 {
            CoeffText::Atom(text)
        } else {
            CoeffText::Sum(text)
        }
    }
}
