use std::cmp::Ordering;

use super::monomial::{grevlex, Monomial};

/// Global monomial orders. All of them are multiplicative well-orders.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Grevlex,
    Lex,
    /// Block order: degree in the block variables first, grevlex to break ties.
    /// Any monomial involving a block variable exceeds every monomial free of them.
    Elimination(Vec<usize>),
    /// Weighted degree (missing weights count as 1), grevlex to break ties.
    Weighted(Vec<u32>),
    /// Product order: grevlex on the block variables, then grevlex on the rest.
    Product(Vec<usize>),
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Grevlex => grevlex(a, b),
            MonomialOrder::Lex => {
                let n = a.len().max(b.len());
                for i in 0..n {
                    match a.exponent(i).cmp(&b.exponent(i)) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Elimination(block) => a
                .degree_in(block)
                .cmp(&b.degree_in(block))
                .then_with(|| grevlex(a, b)),
            MonomialOrder::Weighted(w) => {
                let wdeg = |m: &Monomial| -> u64 {
                    m.exponents()
                        .iter()
                        .enumerate()
                        .map(|(i, &e)| e as u64 * w.get(i).copied().unwrap_or(1) as u64)
                        .sum()
                };
                wdeg(a).cmp(&wdeg(b)).then_with(|| grevlex(a, b))
            }
            MonomialOrder::Product(block) => {
                let (ab, bb) = (a.restrict(block), b.restrict(block));
                grevlex(&ab, &bb).then_with(|| grevlex(&a.div(&ab).unwrap(), &b.div(&bb).unwrap()))
            }
        }
    }

    pub fn max<'a>(&self, a: &'a Monomial, b: &'a Monomial) -> &'a Monomial {
        if self.cmp(a, b) == Ordering::Less {
            b
        } else {
            a
        }
    }
}
