//! Noetherian operators of primary ideals: the punctual Hilbert scheme
//! correspondence, four forward strategies and the inverse problem.

mod inverse;
mod punctual;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

pub use inverse::ideal_from_noetherian_operators;
pub use punctual::{gamma_embed, map_to_punctual_hilbert, HilbPoint};

use crate::algebra::gcd::lcm;
use crate::algebra::{Complex64, Field, Monomial, MonomialOrder, Polynomial, Rational, RationalFunction};
use crate::diffops::{list_text, DiffOp, TermJson};
use crate::dual::{echelonize, DualConfig, LocalSystem, PointField};
use crate::error::{Error, Result};
use crate::groebner::{multiplicity_over_prime, Ideal, ResidueElem, ResidueField, VariableSplit};
use crate::numerical::{sample_points, SamplerConfig};

type P = Polynomial<Rational>;
type PK = Polynomial<RationalFunction>;
/// Polynomials over the residue field F.
pub type PF = Polynomial<ResidueElem>;

/// A prime together with its coordinate split and residue field.
#[derive(Clone, Debug)]
pub struct PrimeData {
    pub prime: Ideal,
    pub split: VariableSplit,
    pub field: Arc<ResidueField>,
}

impl PrimeData {
    /// Uses `dependent` when given (checked), otherwise a computed
    /// maximal independent set.
    pub fn new(prime: &Ideal, dependent: Option<&[usize]>) -> Result<Self> {
        let split = match dependent {
            Some(dep) => {
                let s = VariableSplit::new(prime.ring().arity(), dep);
                prime.check_split(&s)?;
                s
            }
            None => prime.independent_set()?,
        };
        let field = ResidueField::new(prime, &split)?;
        Ok(PrimeData {
            prime: prime.clone(),
            split,
            field,
        })
    }

    /// Class in F of a polynomial of R.
    pub fn class(&self, f: &P) -> ResidueElem {
        self.field.class(f)
    }

    /// Image over F of an operator with polynomial coefficients.
    pub fn to_field(&self, op: &DiffOp<Rational>) -> DiffOp<ResidueElem> {
        op.map_coeffs(|c| PF::constant(self.class(c)))
    }

    /// Polynomial representative of an F-operator: clear the common
    /// denominator in K[t], then reduce the numerators modulo P.
    pub fn lift(&self, op: &DiffOp<ResidueElem>) -> DiffOp<Rational> {
        let reps: Vec<(Monomial, PK)> = op
            .terms()
            .map(|(a, c)| (a.clone(), c.constant_value().unwrap_or_else(ResidueElem::zero).representative()))
            .collect();
        let mut den = P::one();
        for (_, r) in &reps {
            for (_, c) in r.terms() {
                den = lcm(&den, c.denominator());
            }
        }
        let order = MonomialOrder::Grevlex;
        let terms = reps.into_iter().map(|(a, r)| {
            let poly = times_polynomial(&r, &den);
            (a, self.prime.normal_form(&poly, &order))
        });
        DiffOp::from_terms(terms)
    }

    /// F-span of `ops` in reduced echelon form.
    pub fn span(&self, ops: &[DiffOp<Rational>]) -> Vec<DiffOp<ResidueElem>> {
        let images: Vec<_> = ops.iter().map(|a| self.to_field(a)).collect();
        echelonize(&images, 0.0)
    }

    /// Whether two operator lists span the same F-space.
    pub fn spans_equal(&self, a: &[DiffOp<Rational>], b: &[DiffOp<Rational>]) -> bool {
        self.span(a) == self.span(b)
    }

    /// γ(I) as a local system at the y-origin over F.
    fn local_system(&self, ideal: &Ideal) -> Result<LocalSystem<ResidueElem>> {
        if ideal.ring() != self.prime.ring() {
            return Err(Error::RingMismatch);
        }
        let gens = ideal.gens().iter().map(|g| gamma_embed(g, &self.field)).collect();
        Ok(LocalSystem::new(gens, self.split.dependent.clone()))
    }
}

/// `r · den` for `r` whose coefficient denominators divide `den`.
fn times_polynomial(r: &PK, den: &P) -> P {
    let d = RationalFunction::from_poly(den.clone());
    let mut out = P::zero();
    for (m, c) in r.terms() {
        let scaled = c.clone() * d.clone();
        let k = scaled.denominator().constant_value().expect("denominator divides the lcm");
        let part = scaled.numerator().scale(&Field::inv(&k).unwrap());
        out = out + part.mul_term(m, &Rational::one());
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    PunctualHilbert,
    Macaulay,
    Hybrid,
}

impl FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "punctual-hilbert" => Ok(Strategy::PunctualHilbert),
            "macaulay" => Ok(Strategy::Macaulay),
            "hybrid" => Ok(Strategy::Hybrid),
            _ => Err(Error::InvalidInput(format!(
                "unknown strategy '{s}' (expected punctual-hilbert, macaulay or hybrid)"
            ))),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::PunctualHilbert => "punctual-hilbert",
            Strategy::Macaulay => "macaulay",
            Strategy::Hybrid => "hybrid",
        })
    }
}

#[derive(Clone, Debug)]
pub struct NoetherianOptions {
    pub dual: DualConfig,
    /// Dependent variables; a maximal independent set is chosen if absent.
    pub dependent: Option<Vec<usize>>,
    /// Seed for the hybrid strategy's sampler.
    pub seed: u64,
    pub seed_point: Option<Vec<Complex64>>,
    /// Degree cap of the inverse problem (default m + maxdeg P + 2).
    pub inverse_cap: Option<u32>,
}

impl Default for NoetherianOptions {
    fn default() -> Self {
        NoetherianOptions {
            dual: DualConfig::default(),
            dependent: None,
            seed: 1,
            seed_point: None,
            inverse_cap: None,
        }
    }
}

/// Operators A₁..A_m with Q = {f : Aᵢ•f ∈ P for all i}.
#[derive(Clone, Debug)]
pub struct NoetherianCertificate {
    pub prime: Ideal,
    pub operators: Vec<DiffOp<Rational>>,
    pub multiplicity: usize,
    pub split: VariableSplit,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateJson {
    pub prime: Vec<String>,
    pub operators: Vec<Vec<TermJson>>,
    pub multiplicity: usize,
    #[serde(rename = "independentVariables")]
    pub independent_variables: Vec<String>,
}

impl NoetherianCertificate {
    fn from_field_ops(data: &PrimeData, ops: &[DiffOp<ResidueElem>]) -> Self {
        NoetherianCertificate {
            prime: data.prime.clone(),
            operators: ops.iter().map(|a| data.lift(a)).collect(),
            multiplicity: ops.len(),
            split: data.split.clone(),
        }
    }

    /// `{1, x3*dx1 + dx2}`.
    pub fn to_text(&self) -> String {
        list_text(&self.operators, self.prime.ring())
    }

    pub fn to_json(&self) -> CertificateJson {
        let ring = self.prime.ring();
        CertificateJson {
            prime: self.prime.gens().iter().map(|g| ring.print(g)).collect(),
            operators: self.operators.iter().map(|a| a.json_terms(ring)).collect(),
            multiplicity: self.multiplicity,
            independent_variables: self.split.independent.iter().map(|&i| ring.names()[i].clone()).collect(),
        }
    }

    /// Every operator sends every generator of `source` into P.
    pub fn verify(&self, source: &Ideal) -> bool {
        self.operators
            .iter()
            .all(|a| source.gens().iter().all(|g| self.prime.contains(&a.apply(g))))
    }
}

/// Dispatch on the strategy.
pub fn noetherian_operators(
    ideal: &Ideal,
    prime: &Ideal,
    strategy: Strategy,
    opts: &NoetherianOptions,
) -> Result<NoetherianCertificate> {
    match strategy {
        Strategy::PunctualHilbert => noetherian_operators_punctual(ideal, prime, opts),
        Strategy::Macaulay => noetherian_operators_macaulay(ideal, prime, opts),
        Strategy::Hybrid => noetherian_operators_hybrid(ideal, prime, opts),
    }
}

/// Dual basis of J = ⟨y⟩^N + γ(Q) over F, lifted to R.
pub fn noetherian_operators_punctual(q: &Ideal, p: &Ideal, opts: &NoetherianOptions) -> Result<NoetherianCertificate> {
    let data = PrimeData::new(p, opts.dependent.as_deref())?;
    let hp = map_to_punctual_hilbert(q, &data, &opts.dual)?;
    let sys = LocalSystem::new(hp.ideal.clone(), data.split.dependent.clone());
    let basis = sys.truncated(hp.order.saturating_sub(1), 0.0);
    debug_assert_eq!(basis.len(), hp.multiplicity);
    Ok(NoetherianCertificate::from_field_ops(&data, &basis))
}

/// Dual of γ(I) at the y-origin over F, raising the degree until the
/// dimension repeats. Describes the P-primary component of I.
pub fn noetherian_operators_macaulay(i: &Ideal, p: &Ideal, opts: &NoetherianOptions) -> Result<NoetherianCertificate> {
    let data = PrimeData::new(p, opts.dependent.as_deref())?;
    let sys = data.local_system(i)?;
    if sys.gens.iter().any(|g| !g.constant_value().is_none_or(|c| c.is_zero())) {
        return Err(Error::NotPrimary);
    }
    let (basis, _) = sys.complete(&opts.dual).map_err(|e| match e {
        Error::NotIsolated => Error::CapReached {
            cap: opts.dual.cap,
            what: "Macaulay dual did not stabilize".into(),
        },
        e => e,
    })?;
    Ok(NoetherianCertificate::from_field_ops(&data, &basis))
}

/// ∂-monomials carrying a non-negligible coefficient in some operator.
fn numeric_support(ops: &[DiffOp<Complex64>], tol: f64) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = Vec::new();
    for a in ops {
        let max = a.terms().map(|(_, c)| c.coeff_norm()).fold(0.0, f64::max);
        for (m, c) in a.terms() {
            if c.coeff_norm() > tol * max.max(1.0) {
                out.push(m.clone());
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Symbolic Macaulay system restricted to the ∂-support of the specialized
/// operators at a general point of V(P).
pub fn noetherian_operators_hybrid(i: &Ideal, p: &Ideal, opts: &NoetherianOptions) -> Result<NoetherianCertificate> {
    const ATTEMPTS: usize = 3;
    let data = PrimeData::new(p, opts.dependent.as_deref())?;
    let sys = data.local_system(i)?;
    let mut points: Vec<Vec<Complex64>> = opts.seed_point.iter().cloned().collect();
    if points.len() < ATTEMPTS {
        let cfg = SamplerConfig {
            seed: opts.seed,
            ..SamplerConfig::default()
        };
        points.extend(sample_points(p, ATTEMPTS - points.len(), &cfg)?);
    }
    for point in points.iter().take(ATTEMPTS) {
        let spec = match specialized_noetherian_operators(i, point, &data.split.dependent, &opts.dual) {
            Ok(s) => s,
            Err(Error::PointNotOnVariety) | Err(Error::NotIsolated) => continue,
            Err(e) => return Err(e),
        };
        let support = numeric_support(&spec, 1e2 * opts.dual.tol);
        let basis = sys.macaulay_matrix(&support).kernel(0.0);
        if basis.len() == spec.len() {
            return Ok(NoetherianCertificate::from_field_ops(&data, &basis));
        }
    }
    Err(Error::CapReached {
        cap: ATTEMPTS as u32,
        what: "hybrid strategy found no general seed point".into(),
    })
}

/// Dual basis at `point` of I + (t − t₀), t the independent variables:
/// constant-coefficient operators in the dependent ∂'s, pivot coefficient 1.
pub fn specialized_noetherian_operators<C: PointField>(
    i: &Ideal,
    point: &[C],
    dependent: &[usize],
    cfg: &DualConfig,
) -> Result<Vec<DiffOp<C>>> {
    let n = i.ring().arity();
    if let Some(&bad) = dependent.iter().find(|&&v| v >= n) {
        return Err(Error::InvalidInput(format!("dependent variable index {bad} out of range")));
    }
    let sys = C::local_system(i, point)?;
    let independent: Vec<usize> = (0..n).filter(|v| !dependent.contains(v)).collect();
    let (basis, _) = sys.slice(&independent).complete(cfg)?;
    Ok(basis)
}

/// Sanity check of the trusted inputs: Q ⊆ P and a power of every
/// generator of P lies in Q, and Q has finite multiplicity over P.
pub fn verify_primary_input(q: &Ideal, p: &Ideal, opts: &NoetherianOptions) -> Result<()> {
    let data = PrimeData::new(p, opts.dependent.as_deref())?;
    if !p.contains_ideal(q)? {
        return Err(Error::NotPrimary);
    }
    let m = multiplicity_over_prime(q, p, &data.split)?;
    let bound = (m as u32).max(1) * p.max_degree().max(1) + 1;
    for g in p.gens() {
        let mut pw = g.clone();
        let mut ok = false;
        for _ in 0..bound {
            if q.contains(&pw) {
                ok = true;
                break;
            }
            pw = &pw * g;
        }
        if !ok {
            return Err(Error::NotPrimary);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Ring;
    use crate::dual::{in_span, zero_dimensional_dual};

    fn ring3() -> Ring {
        Ring::rational(["x1", "x2", "x3"]).unwrap()
    }

    fn q5() -> (Ideal, Ideal) {
        let r = ring3();
        (
            Ideal::parse(&r, &["x1^2", "x2^2", "x1 - x2*x3"]).unwrap(),
            Ideal::parse(&r, &["x2", "x1"]).unwrap(),
        )
    }

    fn q22() -> (Ideal, Ideal) {
        let r = ring3();
        (
            Ideal::parse(&r, &["x1^2", "x2^2", "x3^2", "x1*x2 + x1*x3 + x2*x3"]).unwrap(),
            Ideal::parse(&r, &["x1", "x2", "x3"]).unwrap(),
        )
    }

    fn ops(r: &Ring, texts: &[&str]) -> Vec<DiffOp<Rational>> {
        texts.iter().map(|t| DiffOp::parse(r, t).unwrap()).collect()
    }

    #[test]
    fn strategies_on_the_running_example() {
        let (q, p) = q5();
        let opts = NoetherianOptions::default();
        let punctual = noetherian_operators_punctual(&q, &p, &opts).unwrap();
        assert_eq!(punctual.to_text(), "{1, x3*dx1 + dx2}");
        assert!(punctual.verify(&q));
        let data = PrimeData::new(&p, None).unwrap();
        let expect = ops(q.ring(), &["1", "x3*dx1 + dx2"]);
        for s in [Strategy::Macaulay, Strategy::Hybrid] {
            let c = noetherian_operators(&q, &p, s, &opts).unwrap();
            assert_eq!(c.multiplicity, 2, "{s}");
            assert!(data.spans_equal(&c.operators, &expect), "{s}: {}", c.to_text());
            assert!(c.verify(&q));
        }
    }

    #[test]
    fn zero_dimensional_example() {
        let (q, p) = q22();
        let c = noetherian_operators_punctual(&q, &p, &NoetherianOptions::default()).unwrap();
        assert_eq!(c.operators.len(), 6);
        let expect = ops(
            q.ring(),
            &["1", "dx3", "dx2", "dx1", "-dx1*dx2 + dx2*dx3", "-dx1*dx2 + dx1*dx3"],
        );
        let data = PrimeData::new(&p, None).unwrap();
        assert!(data.spans_equal(&c.operators, &expect));
        let m = noetherian_operators_macaulay(&q, &p, &NoetherianOptions::default()).unwrap();
        assert!(data.spans_equal(&c.operators, &m.operators));
    }

    #[test]
    fn prime_gives_identity() {
        let r = ring3();
        let p = Ideal::parse(&r, &["x1 - x3^2", "x2"]).unwrap();
        for s in [Strategy::PunctualHilbert, Strategy::Macaulay, Strategy::Hybrid] {
            let c = noetherian_operators(&p, &p, s, &NoetherianOptions::default()).unwrap();
            assert_eq!(c.to_text(), "{1}", "{s}");
        }
        let m = Ideal::parse(&r, &["x1 - 1", "x2 + 2", "x3"]).unwrap();
        let c = noetherian_operators_hybrid(&m, &m, &NoetherianOptions::default()).unwrap();
        assert_eq!(c.to_text(), "{1}");
    }

    #[test]
    fn macaulay_selects_the_primary_component() {
        // (x1) ∩ (x2, x3)^2: the component at (x2, x3) has operators {1, dx2, dx3}
        let r = ring3();
        let i = Ideal::parse(&r, &["x1*x2^2", "x1*x2*x3", "x1*x3^2"]).unwrap();
        let p = Ideal::parse(&r, &["x2", "x3"]).unwrap();
        let c = noetherian_operators_macaulay(&i, &p, &NoetherianOptions::default()).unwrap();
        let data = PrimeData::new(&p, None).unwrap();
        assert!(data.spans_equal(&c.operators, &ops(&r, &["1", "dx2", "dx3"])));
        let h = noetherian_operators_hybrid(&i, &p, &NoetherianOptions::default()).unwrap();
        assert!(data.spans_equal(&h.operators, &c.operators));
    }

    #[test]
    fn specialized_at_exact_and_numeric_points() {
        let (q, _) = q5();
        let five = Rational::from_integer(5.into());
        let z = Rational::from_integer(0.into());
        let s = specialized_noetherian_operators(&q, &[z.clone(), z.clone(), five], &[0, 1], &DualConfig::default()).unwrap();
        let texts: Vec<String> = s.iter().map(|a| a.display(q.ring())).collect();
        assert_eq!(texts, vec!["1", "5*dx1 + dx2"]);
        let pt = vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(5.0, 0.0)];
        let s = specialized_noetherian_operators(&q, &pt, &[0, 1], &DualConfig::default()).unwrap();
        assert_eq!(s.len(), 2);
        assert!((s[1].scalar(&Monomial::var(0)) - Complex64::new(5.0, 0.0)).norm() < 1e-6);
        let off = vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(5.0, 0.0)];
        assert_eq!(
            specialized_noetherian_operators(&q, &off, &[0, 1], &DualConfig::default()).unwrap_err(),
            Error::PointNotOnVariety
        );
    }

    #[test]
    fn specialized_matches_zero_dimensional_dual() {
        let (q, _) = q22();
        let z = vec![Rational::from_integer(0.into()); 3];
        let s = specialized_noetherian_operators(&q, &z, &[0, 1, 2], &DualConfig::default()).unwrap();
        let d = zero_dimensional_dual(&z, &q, &DualConfig::default()).unwrap();
        assert_eq!(s.len(), d.dim());
        assert!(s.iter().all(|a| in_span(a, &d.basis, 0.0)));
    }

    #[test]
    fn dependent_set_is_checked() {
        let (q, p) = q5();
        let opts = NoetherianOptions {
            dependent: Some(vec![0, 2]),
            ..Default::default()
        };
        assert_eq!(noetherian_operators_punctual(&q, &p, &opts).unwrap_err(), Error::NoCoordinateSplit);
    }

    #[test]
    fn input_verification() {
        let (q, p) = q5();
        verify_primary_input(&q, &p, &NoetherianOptions::default()).unwrap();
        let r = ring3();
        let bad = Ideal::parse(&r, &["x1^2", "x2^2", "x1 - x2*x3", "x3"]).unwrap();
        assert!(verify_primary_input(&bad, &p, &NoetherianOptions::default()).is_err());
        let not_contained = Ideal::parse(&r, &["x1 + 1"]).unwrap();
        assert_eq!(
            verify_primary_input(&not_contained, &p, &NoetherianOptions::default()).unwrap_err(),
            Error::NotPrimary
        );
    }

    #[test]
    fn certificate_json() {
        let (q, p) = q5();
        let c = noetherian_operators_punctual(&q, &p, &NoetherianOptions::default()).unwrap();
        let j = c.to_json();
        assert_eq!(j.prime, vec!["x2", "x1"]);
        assert_eq!(j.independent_variables, vec!["x3"]);
        assert_eq!(j.multiplicity, 2);
        assert_eq!(j.operators.len(), 2);
    }
}
