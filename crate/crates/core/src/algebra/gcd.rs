//! Exact division and greatest common divisors in ℚ[x₀, x₁, …].
//!
//! The gcd works recursively on the largest variable index present:
//! content/primitive-part splitting followed by a primitive pseudo-remainder
//! sequence in the main variable.

use super::field::{Field, Rational};
use super::monomial::Monomial;
use super::order::MonomialOrder;
use super::polynomial::Polynomial;
use crate::error::{Error, Result};

type P = Polynomial<Rational>;

/// `a / b` if `b` divides `a` exactly.
pub fn exact_div<C: Field>(a: &Polynomial<C>, b: &Polynomial<C>) -> Option<Polynomial<C>> {
    if b.is_zero() {
        return None;
    }
    if a.is_zero() {
        return Some(Polynomial::zero());
    }
    let order = MonomialOrder::Grevlex;
    let (lm_b, lc_b) = b.lead_term(&order).unwrap();
    let lm_b = lm_b.clone();
    let inv = lc_b.inv()?;
    let mut rem = a.clone();
    let mut quot = Polynomial::zero();
    while let Some((lm, lc)) = rem.lead_term(&order) {
        let m = lm.div(&lm_b)?;
        let c = lc.clone() * inv.clone();
        rem = &rem - &b.mul_term(&m, &c);
        quot.add_term(m, c);
    }
    Some(quot)
}

/// Coefficients of `p` as a polynomial in `var` (index = power of `var`).
fn coefficients_in(p: &P, var: usize) -> Vec<P> {
    let deg = p.degree_in(var) as usize;
    let mut out = vec![P::zero(); deg + 1];
    for (m, c) in p.terms() {
        let e = m.exponent(var) as usize;
        out[e].add_term(m.with_exponent(var, 0), c.clone());
    }
    out
}

fn from_coefficients(coeffs: &[P], var: usize) -> P {
    let mut out = P::zero();
    for (k, c) in coeffs.iter().enumerate() {
        out = out + c.mul_term(&Monomial::var_pow(var, k as u32), &one_q());
    }
    out
}

fn one_q() -> Rational {
    <Rational as Field>::one()
}

/// Content of `p` viewed as a polynomial in `var`.
fn content_in(p: &P, var: usize) -> P {
    let mut g = P::zero();
    for c in coefficients_in(p, var) {
        if c.is_zero() {
            continue;
        }
        g = gcd_inner(&g, &c);
        if g.is_constant() {
            return P::one();
        }
    }
    g
}

fn primitive_part_in(p: &P, var: usize) -> P {
    let c = content_in(p, var);
    exact_div(p, &c).expect("content divides")
}

/// Pseudo-remainder of `a` by `b` with respect to `var`.
fn pseudo_rem(a: &P, b: &P, var: usize) -> P {
    let db = b.degree_in(var);
    let bc = coefficients_in(b, var);
    let lc_b = bc[db as usize].clone();
    let b_tail = from_coefficients(&bc[..db as usize], var);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(var) >= db {
        let dr = r.degree_in(var);
        let rc = coefficients_in(&r, var);
        let lc_r = rc[dr as usize].clone();
        let r_tail = from_coefficients(&rc[..dr as usize], var);
        let shift = P::term(Monomial::var_pow(var, dr - db), one_q());
        // r ← lc_b·(r − lc_r x^dr) − lc_r·x^(dr−db)·(b − lc_b x^db)
        r = &(&lc_b * &r_tail) - &(&(&lc_r * &shift) * &b_tail);
    }
    r
}

fn normalize(p: &P) -> P {
    p.monic(&MonomialOrder::Grevlex)
}

fn gcd_inner(a: &P, b: &P) -> P {
    if a.is_zero() {
        return normalize(b);
    }
    if b.is_zero() {
        return normalize(a);
    }
    if a.is_constant() || b.is_constant() {
        return P::one();
    }
    if exact_div(a, b).is_some() {
        return normalize(b);
    }
    if exact_div(b, a).is_some() {
        return normalize(a);
    }
    let var = a.var_bound().max(b.var_bound()) - 1;
    let (in_a, in_b) = (a.uses_var(var), b.uses_var(var));
    if !in_a {
        return gcd_inner(a, &content_in(b, var));
    }
    if !in_b {
        return gcd_inner(&content_in(a, var), b);
    }
    let ca = content_in(a, var);
    let cb = content_in(b, var);
    let content = gcd_inner(&ca, &cb);
    let mut f = exact_div(a, &ca).unwrap();
    let mut g = exact_div(b, &cb).unwrap();
    if f.degree_in(var) < g.degree_in(var) {
        std::mem::swap(&mut f, &mut g);
    }
    loop {
        let r = pseudo_rem(&f, &g, var);
        if r.is_zero() {
            break;
        }
        if r.degree_in(var) == 0 {
            return normalize(&content);
        }
        f = g;
        g = primitive_part_in(&r, var);
    }
    normalize(&(&content * &primitive_part_in(&g, var)))
}

/// Greatest common divisor over ℚ, monic under grevlex; `gcd(0, b)` is `b` made monic.
pub fn gcd(a: &P, b: &P) -> P {
    gcd_inner(a, b)
}

/// Checked gcd for an arbitrary coefficient field: floating fields are rejected.
pub fn multivariate_gcd<C: Field>(a: &Polynomial<C>, b: &Polynomial<C>) -> Result<Polynomial<C>> {
    if !C::EXACT {
        return Err(Error::FloatingCoefficients("gcd"));
    }
    let to_q = |p: &Polynomial<C>| -> Result<P> {
        let mut out = P::zero();
        for (m, c) in p.terms() {
            let any: &dyn std::any::Any = c;
            match any.downcast_ref::<Rational>() {
                Some(q) => out.add_term(m.clone(), q.clone()),
                None => return Err(Error::Unsupported("gcd over this coefficient field".into())),
            }
        }
        Ok(out)
    };
    let g = gcd(&to_q(a)?, &to_q(b)?);
    Ok(g.map_coeffs(C::from_rational))
}

/// Least common multiple, monic under grevlex.
pub fn lcm(a: &P, b: &P) -> P {
    if a.is_zero() || b.is_zero() {
        return P::zero();
    }
    let g = gcd(a, b);
    normalize(&(&exact_div(a, &g).unwrap() * b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> P {
        P::var(i)
    }
    fn c(n: i64) -> P {
        P::constant(Rational::from_integer(n.into()))
    }

    #[test]
    fn common_factor() {
        let a = &(&x(0) * &x(0)) - &(&x(1) * &x(1));
        let b = &x(0) - &x(1);
        assert_eq!(gcd(&a, &b), b);
    }

    #[test]
    fn coprime_variables() {
        assert_eq!(gcd(&x(0), &x(1)), c(1));
    }

    #[test]
    fn gcd_with_monomial_factor() {
        // gcd(2 x0 x1, 4 x0^2) = x0; oracle: both quotients exist and are coprime
        let a = &c(2) * &(&x(0) * &x(1));
        let b = &c(4) * &(&x(0) * &x(0));
        let g = gcd(&a, &b);
        assert_eq!(g, x(0));
        let qa = exact_div(&a, &g).unwrap();
        let qb = exact_div(&b, &g).unwrap();
        assert_eq!(gcd(&qa, &qb), c(1));
    }

    #[test]
    fn gcd_with_zero() {
        let b = &c(3) * &(&x(0) + &c(1));
        assert_eq!(gcd(&P::zero(), &b), &x(0) + &c(1));
    }

    #[test]
    fn multivariate_hidden_factor() {
        // (x0 x2 + x1 + 1) * (x0 - x2^2) and (x0 x2 + x1 + 1) * (x1 + x2)
        let h = &(&(&x(0) * &x(2)) + &x(1)) + &c(1);
        let a = &h * &(&x(0) - &(&x(2) * &x(2)));
        let b = &h * &(&x(1) + &x(2));
        assert_eq!(gcd(&a, &b), normalize(&h));
    }

    #[test]
    fn floating_gcd_is_rejected() {
        use crate::algebra::field::Complex64;
        let a: Polynomial<Complex64> = Polynomial::var(0);
        assert!(multivariate_gcd(&a, &a).is_err());
        let q = multivariate_gcd(&x(0), &(&x(0) * &x(1))).unwrap();
        assert_eq!(q, x(0));
    }

    #[test]
    fn exact_division_detects_remainder() {
        assert!(exact_div(&(&x(0) + &c(1)), &x(0)).is_none());
        let p = &(&x(0) + &c(1)) * &x(1);
        assert_eq!(exact_div(&p, &x(1)), Some(&x(0) + &c(1)));
    }
}
