use std::sync::Arc;

use serde::Serialize;

use super::{PrimeData, PF};
use crate::algebra::{Field, Monomial, MonomialOrder, Polynomial, Rational, Ring};
use crate::dual::DualConfig;
use crate::error::{Error, Result};
use crate::groebner::{extend_to_fractions, groebner_basis, standard_monomials, ResidueElem, ResidueField};

/// γ(f): dependent x_i ↦ y_i + x̄_i, independent x_j ↦ x̄_j, over F.
/// The y-variables reuse the indices of the dependent variables.
pub fn gamma_embed(f: &Polynomial<Rational>, field: &Arc<ResidueField>) -> PF {
    let split = field.split();
    let ext = extend_to_fractions(f, split);
    let lifted: PF = ext.map_coeffs(|c| ResidueElem::scalar(c.clone()));
    let n = split.dependent.iter().copied().max().map_or(0, |m| m + 1);
    let mut shift = vec![ResidueElem::zero(); n];
    for &i in &split.dependent {
        shift[i] = field.class(&Polynomial::var(i));
    }
    lifted.translate(&shift)
}

/// A point of the punctual Hilbert scheme over F: the ideal
/// J = ⟨y⟩^N + γ(Q) as a reduced Gröbner basis, with its colength.
#[derive(Clone, Debug)]
pub struct HilbPoint {
    pub ring: Ring,
    pub field: Arc<ResidueField>,
    pub ideal: Vec<PF>,
    pub multiplicity: usize,
    /// Smallest N at which the colength stabilized.
    pub order: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct HilbPointJson {
    pub ideal: Vec<String>,
    pub multiplicity: usize,
    #[serde(rename = "auxiliaryVariables")]
    pub auxiliary_variables: Vec<String>,
}

impl HilbPoint {
    fn generator_texts(&self) -> Vec<String> {
        let h = self.ring.h_names();
        self.ideal.iter().map(|g| g.to_text(&h, self.ring.names())).collect()
    }

    /// `ideal (hx1 - x3*hx2, hx2^2)`.
    pub fn to_text(&self) -> String {
        format!("ideal ({})", self.generator_texts().join(", "))
    }

    pub fn to_json(&self) -> HilbPointJson {
        let h = self.ring.h_names();
        HilbPointJson {
            ideal: self.generator_texts(),
            multiplicity: self.multiplicity,
            auxiliary_variables: self.field.split().dependent.iter().map(|&i| h[i].clone()).collect(),
        }
    }

    /// Same ideal J and colength.
    pub fn same_point(&self, other: &HilbPoint) -> bool {
        self.multiplicity == other.multiplicity && self.ideal == other.ideal
    }
}

/// J = ⟨y⟩^N + γ(Q) for the smallest N with colength(N) = colength(N+1);
/// m is that colength.
pub fn map_to_punctual_hilbert(q: &crate::groebner::Ideal, data: &PrimeData, cfg: &DualConfig) -> Result<HilbPoint> {
    if q.ring() != data.prime.ring() {
        return Err(Error::RingMismatch);
    }
    let vars = &data.split.dependent;
    let images: Vec<PF> = q
        .gens()
        .iter()
        .map(|g| gamma_embed(g, &data.field))
        .filter(|g| !g.is_zero())
        .collect();
    let order = MonomialOrder::Grevlex;
    let mut prev: Option<(Vec<PF>, usize)> = None;
    for n in 1..=cfg.cap + 1 {
        let mut gens = images.clone();
        gens.extend(Monomial::all_of_degree(vars, n).into_iter().map(|m| PF::term(m, ResidueElem::one())));
        let gb = groebner_basis(&gens, &order)?;
        if gb.iter().any(|g| g.is_constant() && !g.is_zero()) {
            return Err(Error::NotPrimary);
        }
        let leads: Vec<Monomial> = gb.iter().map(|g| g.lead_monomial(&order).unwrap().clone()).collect();
        let colength = standard_monomials(&leads, vars).expect("contains a power of the maximal ideal").len();
        if let Some((prev_gb, prev_len)) = prev.take() {
            if prev_len == colength {
                return Ok(HilbPoint {
                    ring: q.ring().clone(),
                    field: data.field.clone(),
                    ideal: prev_gb,
                    multiplicity: colength,
                    order: n - 1,
                });
            }
        }
        prev = Some((gb, colength));
    }
    Err(Error::ColengthInfinite)
}
