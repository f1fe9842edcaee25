use super::field::{Field, Rational};
use super::parse::{parse_polynomial, ParseError};
use super::polynomial::Polynomial;
use crate::error::{Error, Result};

/// Coefficient field of a polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldTag {
    /// ℚ, exact.
    Rational,
    /// ℂ in double precision; input coefficients are still read exactly and
    /// converted when a numeric routine runs.
    ComplexDouble,
    /// ℚ(t) for the listed parameter variables (disjoint from the ring's own).
    RationalFunctions(Vec<String>),
}

impl FieldTag {
    pub fn name(&self) -> String {
        match self {
            FieldTag::Rational => "QQ".into(),
            FieldTag::ComplexDouble => "CC".into(),
            FieldTag::RationalFunctions(t) => format!("frac(QQ[{}])", t.join(",")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
}

/// Variable names plus coefficient field. Polynomials themselves only store
/// variable indices; the ring gives them names and checks arity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    names: Vec<String>,
    field: FieldTag,
}

impl Ring {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>, field: FieldTag) -> Result<Ring> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() {
                return Err(Error::InvalidRing("empty variable name".into()));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidRing(format!("duplicate variable '{n}'")));
            }
        }
        if let FieldTag::RationalFunctions(params) = &field {
            if let Some(p) = params.iter().find(|p| names.contains(p)) {
                return Err(Error::InvalidRing(format!(
                    "parameter '{p}' is also a ring variable"
                )));
            }
        }
        Ok(Ring { names, field })
    }

    /// ℚ[names].
    pub fn rational<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Ring> {
        Self::new(names, FieldTag::Rational)
    }

    pub fn arity(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn field(&self) -> &FieldTag {
        &self.field
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Names of the ∂-symbols: `d` prefixed to each variable.
    pub fn d_names(&self) -> Vec<String> {
        self.names.iter().map(|n| format!("d{n}")).collect()
    }

    /// Names of the local coordinates in the punctual Hilbert scheme.
    pub fn h_names(&self) -> Vec<String> {
        self.names.iter().map(|n| format!("h{n}")).collect()
    }

    pub fn check<C: Field>(&self, p: &Polynomial<C>) -> Result<()> {
        if p.var_bound() > self.arity() {
            Err(Error::RingMismatch)
        } else {
            Ok(())
        }
    }

    pub fn arith<C: Field>(&self, a: &Polynomial<C>, b: &Polynomial<C>, kind: ArithKind) -> Result<Polynomial<C>> {
        self.check(a)?;
        self.check(b)?;
        Ok(match kind {
            ArithKind::Add => a + b,
            ArithKind::Sub => a - b,
            ArithKind::Mul => a * b,
        })
    }

    pub fn evaluate<C: Field>(&self, f: &Polynomial<C>, point: &[C]) -> Result<C> {
        if point.len() != self.arity() {
            return Err(Error::Arity {
                expected: self.arity(),
                found: point.len(),
            });
        }
        self.check(f)?;
        Ok(f.evaluate(point))
    }

    pub fn parse(&self, text: &str) -> std::result::Result<Polynomial<Rational>, ParseError> {
        parse_polynomial(text, &self.names)
    }

    pub fn print<C: Field>(&self, p: &Polynomial<C>) -> String {
        p.to_text(&self.names, &self.names)
    }
}
