//! Coefficient fields.
//!
//! Three concrete fields are used by the library: exact rationals, complex
//! doubles for approximate input, and rational functions over ℚ (plus the
//! residue fields built on top of them in [`crate::groebner::residue`]).

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::Complex;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::linalg;

/// Exact rational numbers.
pub type Rational = BigRational;

/// Double precision complex numbers.
pub type Complex64 = Complex<f64>;

/// How a coefficient should be rendered in front of a monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoeffText {
    One,
    MinusOne,
    /// A single token, possibly with a leading minus sign.
    Atom(String),
    /// A sum that needs parentheses when multiplied by something.
    Sum(String),
}

impl CoeffText {
    /// Text used when the coefficient stands alone.
    pub fn standalone(&self) -> String {
        match self {
            CoeffText::One => "1".to_string(),
            CoeffText::MinusOne => "-1".to_string(),
            CoeffText::Atom(s) | CoeffText::Sum(s) => s.clone(),
        }
    }

    /// Text used in front of a (non-trivial) monomial, including the `*`.
    pub fn prefix(&self) -> String {
        match self {
            CoeffText::One => String::new(),
            CoeffText::MinusOne => "-".to_string(),
            CoeffText::Atom(s) => format!("{s}*"),
            CoeffText::Sum(s) => format!("({s})*"),
        }
    }
}

/// A field of characteristic zero.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// False for floating point fields: equality is then only approximate.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;
    fn from_rational(q: &Rational) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    fn from_bigint(n: &BigInt) -> Self {
        Self::from_rational(&Rational::from_integer(n.clone()))
    }

    /// Size used for numeric thresholds. Exact fields only distinguish zero.
    fn magnitude(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.clone() * i)
    }

    /// Render using `params` as the names of any parameters the field carries.
    fn coeff_text(&self, params: &[String]) -> CoeffText;

    /// Basis of the right kernel of `rows` (each of length `ncols`), in
    /// reduced echelon form with pivots at the smallest column indices.
    fn kernel(rows: &[Vec<Self>], ncols: usize, tol: f64) -> Vec<Vec<Self>> {
        let _ = tol;
        linalg::exact_kernel(rows, ncols)
    }

    /// Reduced row echelon form of the span of `rows`, pivots at the
    /// smallest column indices. Returns the nonzero rows and their pivots.
    fn rref(rows: Vec<Vec<Self>>, tol: f64) -> (Vec<Vec<Self>>, Vec<usize>) {
        let _ = tol;
        linalg::exact_rref(rows)
    }
}

fn rational_text(q: &Rational) -> CoeffText {
    if One::is_one(q) {
        CoeffText::One
    } else if One::is_one(&-q) {
        CoeffText::MinusOne
    } else {
        CoeffText::Atom(q.to_string())
    }
}

impl Field for Rational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn coeff_text(&self, _params: &[String]) -> CoeffText {
        rational_text(self)
    }
}

/// Format a float with six significant digits, dropping trailing zeros.
pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let rounded = x.round();
    if (x - rounded).abs() <= 1e-9 * x.abs().max(1.0) && rounded.abs() < 1e15 {
        return format!("{}", rounded as i64);
    }
    let magnitude = x.abs().log10().floor() as i32;
    if !(-5..=14).contains(&magnitude) {
        return format!("{x:.5e}");
    }
    let decimals = (5 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    let s = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    };
    if s == "-0" {
        "0".to_string()
    } else {
        s
    }
}

impl Field for Complex64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn inv(&self) -> Option<Self> {
        if Field::is_zero(self) {
            None
        } else {
            Some(Complex64::new(1.0, 0.0) / self)
        }
    }
    fn from_rational(q: &Rational) -> Self {
        Complex64::new(rational_to_f64(q), 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn coeff_text(&self, _params: &[String]) -> CoeffText {
        let scale = self.norm();
        let im_small = self.im.abs() <= 1e-10 * scale.max(1.0);
        if im_small {
            let s = format_float(self.re);
            match s.as_str() {
                "1" => CoeffText::One,
                "-1" => CoeffText::MinusOne,
                _ => CoeffText::Atom(s),
            }
        } else if self.re.abs() <= 1e-10 * scale.max(1.0) {
            CoeffText::Atom(format!("{}*ii", format_float(self.im)))
        } else {
            let sign = if self.im < 0.0 { "-" } else { "+" };
            CoeffText::Sum(format!(
                "{}{}{}*ii",
                format_float(self.re),
                sign,
                format_float(self.im.abs())
            ))
        }
    }
    fn kernel(rows: &[Vec<Self>], ncols: usize, tol: f64) -> Vec<Vec<Self>> {
        let basis = linalg::numeric_kernel_scaled(rows, ncols, tol, 1.0);
        linalg::numeric_rref(basis, tol).0
    }
    fn rref(rows: Vec<Vec<Self>>, tol: f64) -> (Vec<Vec<Self>>, Vec<usize>) {
        linalg::numeric_rref(rows, tol)
    }
}

/// Nearest double to a rational (handles huge numerators and denominators).
pub fn rational_to_f64(q: &Rational) -> f64 {
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() && d != 0.0 => n / d,
        _ => {
            let shift = q.numer().bits().max(q.denom().bits()) as i64 - 60;
            let (n, d) = if shift > 0 {
                (q.numer() >> shift as usize, q.denom() >> shift as usize)
            } else {
                (q.numer().clone(), q.denom().clone())
            };
            let d = d.to_f64().unwrap_or(f64::INFINITY);
            if d == 0.0 {
                if q.is_negative() {
                    f64::NEG_INFINITY
                } else {
                    f64::INFINITY
                }
            } else {
                n.to_f64().unwrap_or(0.0) / d
            }
        }
    }
}

/// Best rational approximation of `x` with denominator at most `max_den`,
/// accepted only if it is within `tol` (relative to `max(1, |x|)`).
pub fn rationalize(x: f64, tol: f64, max_den: i64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let scale = x.abs().max(1.0);
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e15 {
            break;
        }
        let a = a as i128;
        let h2 = a * h1 + h0;
        let k2 = a * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        let approx = h1 as f64 / k1 as f64;
        if (approx - x).abs() <= tol * scale {
            return Some(Rational::new(BigInt::from(h1), BigInt::from(k1)));
        }
        let frac = r - a as f64;
        if frac.abs() < 1e-300 {
            break;
        }
        r = 1.0 / frac;
    }
    if k1 != 0 && ((h1 as f64 / k1 as f64) - x).abs() <= tol * scale {
        Some(Rational::new(BigInt::from(h1), BigInt::from(k1)))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting() {
        assert_eq!(format_float(-1.7320508), "-1.73205");
        assert_eq!(format_float(2.0), "2");
        assert_eq!(format_float(0.5), "0.5");
        assert_eq!(format_float(-0.0), "0");
    }

    #[test]
    fn rationalize_recovers_small_fractions() {
        assert_eq!(rationalize(0.5, 1e-9, 1000), Some(Rational::new(1.into(), 2.into())));
        assert_eq!(rationalize(-3.0, 1e-9, 1000), Some(Rational::from_integer((-3).into())));
        assert_eq!(
            rationalize(2.0 / 3.0 + 1e-12, 1e-9, 1000),
            Some(Rational::new(2.into(), 3.into()))
        );
        assert_eq!(rationalize(std::f64::consts::PI, 1e-12, 1000), None);
    }

    #[test]
    fn huge_rationals_convert() {
        let big = BigInt::from(10).pow(400);
        let q = Rational::new(big.clone() * 3, big);
        assert!((rational_to_f64(&q) - 3.0).abs() < 1e-12);
    }
}
