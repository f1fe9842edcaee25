use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};
use smallvec::SmallVec;

/// Exponent vector. Trailing zeros are never stored, so monomials do not
/// carry the arity of their ring; index `i` refers to the ring's `i`-th
/// variable. The same type keys both ring monomials and ∂-monomials.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[u32; 6]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        let mut v: SmallVec<[u32; 6]> = exps.iter().copied().collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        Monomial(v)
    }

    pub fn var(i: usize) -> Self {
        Self::var_pow(i, 1)
    }

    pub fn var_pow(i: usize, k: u32) -> Self {
        if k == 0 {
            return Self::one();
        }
        let mut v: SmallVec<[u32; 6]> = SmallVec::from_elem(0, i + 1);
        v[i] = k;
        Monomial(v)
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Stored exponents (without trailing zeros).
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// Exponents padded (or truncated) to length `n`.
    pub fn to_vec(&self, n: usize) -> Vec<u32> {
        (0..n).map(|i| self.exponent(i)).collect()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn degree_in(&self, vars: &[usize]) -> u32 {
        vars.iter().map(|&v| self.exponent(v)).sum()
    }

    /// One past the largest variable index with a nonzero exponent.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.len().max(other.len());
        let v: SmallVec<[u32; 6]> = (0..n)
            .map(|i| self.exponent(i) + other.exponent(i))
            .collect();
        Monomial(v)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.len() <= other.len() && self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let v: Vec<u32> = (0..self.len())
            .map(|i| self.exponent(i) - other.exponent(i))
            .collect();
        Some(Monomial::from_exponents(&v))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let n = self.len().max(other.len());
        Monomial((0..n).map(|i| self.exponent(i).max(other.exponent(i))).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let n = self.len().min(other.len());
        let v: Vec<u32> = (0..n)
            .map(|i| self.exponent(i).min(other.exponent(i)))
            .collect();
        Monomial::from_exponents(&v)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0
            .iter()
            .zip(other.0.iter())
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn with_exponent(&self, i: usize, e: u32) -> Monomial {
        let n = self.len().max(i + 1);
        let mut v: Vec<u32> = (0..n).map(|j| self.exponent(j)).collect();
        v[i] = e;
        Monomial::from_exponents(&v)
    }

    /// Keep only the exponents of `vars`.
    pub fn restrict(&self, vars: &[usize]) -> Monomial {
        let mut v = vec![0u32; self.len()];
        for &i in vars {
            if i < v.len() {
                v[i] = self.exponent(i);
            }
        }
        Monomial::from_exponents(&v)
    }

    /// α! = ∏ αᵢ!, the pairing constant ⟨∂^α, x^α⟩ at the origin.
    pub fn factorial(&self) -> BigInt {
        let mut acc = BigInt::from(1);
        for &e in self.0.iter() {
            for k in 2..=e {
                acc *= k;
            }
        }
        acc
    }

    /// Ordered by increasing degree, then grevlex within a degree.
    pub fn all_up_to_degree(vars: &[usize], d: u32) -> Vec<Monomial> {
        (0..=d).flat_map(|k| Self::all_of_degree(vars, k)).collect()
    }

    /// All monomials of total degree `d` in `vars`, ascending grevlex.
    pub fn all_of_degree(vars: &[usize], d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut exps = vec![0u32; vars.iter().copied().max().map_or(0, |m| m + 1)];
        fn rec(vars: &[usize], k: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if k + 1 == vars.len() {
                exps[vars[k]] = left;
                out.push(Monomial::from_exponents(exps));
                exps[vars[k]] = 0;
                return;
            }
            for e in 0..=left {
                exps[vars[k]] = e;
                rec(vars, k + 1, left - e, exps, out);
            }
            exps[vars[k]] = 0;
        }
        if vars.is_empty() {
            if d == 0 {
                out.push(Monomial::one());
            }
            return out;
        }
        rec(vars, 0, d, &mut exps, &mut out);
        out.sort();
        out
    }
}

/// Graded reverse lexicographic comparison with x₀ > x₁ > ….
pub fn grevlex(a: &Monomial, b: &Monomial) -> Ordering {
    match a.degree().cmp(&b.degree()) {
        Ordering::Equal => {}
        o => return o,
    }
    let n = a.len().max(b.len());
    for i in (0..n).rev() {
        match a.exponent(i).cmp(&b.exponent(i)) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        grevlex(self, other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.as_slice().serialize(s)
    }
}

/// Render `m` using `names`, e.g. `x1^2*x3`; the empty monomial renders as "".
pub fn monomial_text(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        let name = names.get(i).map(String::as_str).unwrap_or("?");
        if e == 1 {
            parts.push(name.to_string());
        } else {
            parts.push(format!("{name}^{e}"));
        }
    }
    parts.join("*")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn trailing_zeros_are_dropped() {
        assert_eq!(m(&[1, 0, 0]), m(&[1]));
        assert_eq!(m(&[0, 0]), Monomial::one());
        assert_eq!(Monomial::var_pow(2, 3).exponent(2), 3);
    }

    #[test]
    fn grevlex_matches_convention() {
        // x0 > x1 > x2 in degree one
        assert!(m(&[1]) > m(&[0, 1]));
        assert!(m(&[0, 1]) > m(&[0, 0, 1]));
        // x0*x1 > x1*x2 (smaller exponent in the last variable wins)
        assert!(m(&[1, 1]) > m(&[0, 1, 1]));
        assert!(m(&[1, 0, 1]) > m(&[0, 1, 1]));
        // degree first
        assert!(m(&[0, 0, 2]) > m(&[1]));
    }

    #[test]
    fn enumeration_counts() {
        let vars = [0, 1, 2];
        assert_eq!(Monomial::all_of_degree(&vars, 2).len(), 6);
        assert_eq!(Monomial::all_up_to_degree(&vars, 3).len(), 20);
        let sub = Monomial::all_of_degree(&[1, 3], 2);
        assert!(sub.iter().all(|x| x.exponent(0) == 0 && x.exponent(2) == 0));
        assert_eq!(sub.len(), 3);
    }

    #[test]
    fn divisibility_and_lcm() {
        assert!(m(&[1, 1]).divides(&m(&[2, 1, 1])));
        assert!(!m(&[0, 2]).divides(&m(&[2, 1])));
        assert_eq!(m(&[2, 1]).lcm(&m(&[0, 3, 1])), m(&[2, 3, 1]));
        assert_eq!(m(&[2, 3]).div(&m(&[1, 3])), Some(m(&[1])));
        assert!(m(&[1, 0]).is_coprime(&m(&[0, 4])));
        assert_eq!(m(&[3, 2]).factorial(), BigInt::from(12));
    }
}
