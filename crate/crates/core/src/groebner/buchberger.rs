//! Buchberger's algorithm with the Gebauer–Möller criteria and the normal
//! selection strategy.

use std::cmp::Ordering;

use crate::algebra::{Field, Monomial, MonomialOrder, Polynomial};
use crate::error::{Error, Result};

/// Lead data cached for a basis element.
struct Lead<C> {
    mono: Monomial,
    inv: C,
}

fn lead_of<C: Field>(p: &Polynomial<C>, order: &MonomialOrder) -> Lead<C> {
    let (m, c) = p.lead_term(order).expect("nonzero");
    Lead {
        mono: m.clone(),
        inv: c.inv().expect("nonzero lead coefficient"),
    }
}

/// Full reduction of `f` by `basis`: no term of the result is divisible by
/// a lead monomial of the basis.
pub fn reduce<C: Field>(f: &Polynomial<C>, basis: &[Polynomial<C>], order: &MonomialOrder) -> Polynomial<C> {
    let leads: Vec<Lead<C>> = basis.iter().filter(|g| !g.is_zero()).map(|g| lead_of(g, order)).collect();
    let polys: Vec<&Polynomial<C>> = basis.iter().filter(|g| !g.is_zero()).collect();
    reduce_with(f, &polys, &leads, order)
}

fn reduce_with<C: Field>(
    f: &Polynomial<C>,
    polys: &[&Polynomial<C>],
    leads: &[Lead<C>],
    order: &MonomialOrder,
) -> Polynomial<C> {
    let mut p = f.clone();
    let mut rem = Polynomial::zero();
    while let Some((lm, lc)) = p.lead_term(order) {
        let (lm, lc) = (lm.clone(), lc.clone());
        match leads.iter().position(|l| l.mono.divides(&lm)) {
            Some(k) => {
                let shift = lm.div(&leads[k].mono).unwrap();
                let c = -(lc * leads[k].inv.clone());
                p.add_multiple(polys[k], &shift, &c);
                // guard against inexact cancellation of the lead term
                p.remove_term(&lm);
            }
            None => {
                p.remove_term(&lm);
                rem.add_term(lm, lc);
            }
        }
    }
    rem
}

fn s_polynomial<C: Field>(f: &Polynomial<C>, g: &Polynomial<C>, order: &MonomialOrder) -> Polynomial<C> {
    let (mf, cf) = f.lead_term(order).unwrap();
    let (mg, cg) = g.lead_term(order).unwrap();
    let l = mf.lcm(mg);
    let mut s = f.mul_term(&l.div(mf).unwrap(), &cf.inv().unwrap());
    s.add_multiple(g, &l.div(mg).unwrap(), &-cg.inv().unwrap());
    s
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Gebauer–Möller update after adding basis element `h`.
fn update(basis_leads: &[Monomial], active: &mut Vec<bool>, pairs: &mut Vec<Pair>, h: usize) {
    let lh = &basis_leads[h];
    let mut candidates: Vec<Pair> = (0..h)
        .filter(|&g| active[g])
        .map(|g| Pair {
            i: g,
            j: h,
            lcm: basis_leads[g].lcm(lh),
        })
        .collect();

    // criterion M/F: drop (g1, h) when another pair's lcm properly divides it
    let mut kept: Vec<Pair> = Vec::new();
    while let Some(p) = candidates.pop() {
        let coprime = basis_leads[p.i].is_coprime(lh);
        let dominated = candidates.iter().chain(kept.iter()).any(|q| q.lcm.divides(&p.lcm));
        if coprime || !dominated {
            kept.push(p);
        }
    }
    // product criterion
    kept.retain(|p| !basis_leads[p.i].is_coprime(lh));

    // criterion B on old pairs
    pairs.retain(|p| {
        !(lh.divides(&p.lcm)
            && basis_leads[p.i].lcm(lh) != p.lcm
            && basis_leads[p.j].lcm(lh) != p.lcm)
    });
    pairs.extend(kept);

    for g in 0..h {
        if active[g] && lh.divides(&basis_leads[g]) {
            active[g] = false;
        }
    }
    active.push(true);
}

/// Reduced Gröbner basis, sorted by increasing lead monomial. The unit
/// ideal gives `[1]`, the zero ideal `[]`.
pub fn groebner_basis<C: Field>(gens: &[Polynomial<C>], order: &MonomialOrder) -> Result<Vec<Polynomial<C>>> {
    if !C::EXACT {
        return Err(Error::FloatingCoefficients("Gröbner basis"));
    }
    let mut basis: Vec<Polynomial<C>> = Vec::new();
    let mut leads: Vec<Monomial> = Vec::new();
    let mut inv_leads: Vec<Lead<C>> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let push = |p: Polynomial<C>,
                    basis: &mut Vec<Polynomial<C>>,
                    leads: &mut Vec<Monomial>,
                    inv_leads: &mut Vec<Lead<C>>,
                    active: &mut Vec<bool>,
                    pairs: &mut Vec<Pair>| {
        let p = p.monic(order);
        let l = lead_of(&p, order);
        leads.push(l.mono.clone());
        inv_leads.push(l);
        basis.push(p);
        let h = basis.len() - 1;
        update(leads, active, pairs, h);
    };

    let mut sorted: Vec<Polynomial<C>> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    sorted.sort_by(|a, b| order.cmp(a.lead_monomial(order).unwrap(), b.lead_monomial(order).unwrap()));
    for g in sorted {
        let polys: Vec<&Polynomial<C>> = basis.iter().collect();
        let r = reduce_with(&g, &polys, &inv_leads, order);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return Ok(vec![Polynomial::one()]);
        }
        push(r, &mut basis, &mut leads, &mut inv_leads, &mut active, &mut pairs);
    }

    while !pairs.is_empty() {
        // normal strategy: smallest lcm first
        let k = (0..pairs.len())
            .min_by(|&a, &b| order.cmp(&pairs[a].lcm, &pairs[b].lcm))
            .unwrap();
        let pair = pairs.swap_remove(k);
        let s = s_polynomial(&basis[pair.i], &basis[pair.j], order);
        let idx: Vec<usize> = (0..basis.len()).filter(|&g| active[g]).collect();
        let polys: Vec<&Polynomial<C>> = idx.iter().map(|&g| &basis[g]).collect();
        let ls: Vec<Lead<C>> = idx
            .iter()
            .map(|&g| Lead {
                mono: inv_leads[g].mono.clone(),
                inv: inv_leads[g].inv.clone(),
            })
            .collect();
        let r = reduce_with(&s, &polys, &ls, order);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return Ok(vec![Polynomial::one()]);
        }
        push(r, &mut basis, &mut leads, &mut inv_leads, &mut active, &mut pairs);
    }

    let mut minimal: Vec<Polynomial<C>> = (0..basis.len())
        .filter(|&g| active[g])
        .map(|g| basis[g].clone())
        .collect();
    minimal.sort_by(|a, b| cmp_leads(a, b, order));
    // a lead may still be divisible by a later one with equal lead; dedupe
    let mut kept: Vec<Polynomial<C>> = Vec::new();
    for p in minimal {
        let lm = p.lead_monomial(order).unwrap().clone();
        if kept.iter().any(|q| q.lead_monomial(order).unwrap().divides(&lm)) {
            continue;
        }
        kept.push(p);
    }
    let mut reduced = Vec::with_capacity(kept.len());
    for i in 0..kept.len() {
        let others: Vec<Polynomial<C>> = kept
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, q)| q.clone())
            .collect();
        let lm = kept[i].lead_monomial(order).unwrap().clone();
        let lc = kept[i].lead_coeff(order).unwrap().clone();
        let mut tail = kept[i].clone();
        tail.remove_term(&lm);
        let mut r = reduce(&tail, &others, order);
        r.add_term(lm, lc);
        reduced.push(r.monic(order));
    }
    reduced.sort_by(|a, b| cmp_leads(a, b, order));
    Ok(reduced)
}

fn cmp_leads<C: Field>(a: &Polynomial<C>, b: &Polynomial<C>, order: &MonomialOrder) -> Ordering {
    order.cmp(a.lead_monomial(order).unwrap(), b.lead_monomial(order).unwrap())
}

/// Every S-polynomial of `basis` reduces to zero.
pub fn is_groebner<C: Field>(basis: &[Polynomial<C>], order: &MonomialOrder) -> bool {
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let s = s_polynomial(&basis[i], &basis[j], order);
            if !reduce(&s, basis, order).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Monomials not divisible by any of `leads`, if there are finitely many.
pub fn standard_monomials(leads: &[Monomial], vars: &[usize]) -> Option<Vec<Monomial>> {
    // zero-dimensional iff every variable has a pure power among the leads
    for &v in vars {
        let pure = leads.iter().any(|m| m.degree() > 0 && m.support().all(|i| i == v));
        if !pure {
            return None;
        }
    }
    if leads.iter().any(|m| m.is_one()) {
        return Some(Vec::new());
    }
    let mut out = Vec::new();
    let mut d = 0;
    loop {
        let layer: Vec<Monomial> = Monomial::all_of_degree(vars, d)
            .into_iter()
            .filter(|m| !leads.iter().any(|l| l.divides(m)))
            .collect();
        if layer.is_empty() {
            return Some(out);
        }
        out.extend(layer);
        d += 1;
    }
}
