//! Noetherian operators from numerical data: specialized operators at
//! sampled points, interpolated coefficient by coefficient.

mod interpolate;
mod sampler;

pub use interpolate::{
    degree_schedule, interpolate_rational, required_samples, InterpolationState, Progress, Sample,
    DEFAULT_DEGREE_CAP, VALIDATION_TOL,
};
pub use sampler::{residual_ok, sample_points, solve_zero_dimensional, Sampler, SamplerConfig, SamplerMode, SAMPLE_RESIDUAL};

use crate::algebra::{Complex64, Field, Monomial, Polynomial, RationalFunction};
use crate::diffops::{DiffOp, InterpolatedDiffOp};
use crate::dual::{DualConfig, PointField};
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::noetherian::specialized_noetherian_operators;

#[derive(Clone, Debug)]
pub struct NumericalConfig {
    pub sampler: SamplerConfig,
    pub dual: DualConfig,
    /// Points sampled before the first interpolation attempt.
    pub initial_points: usize,
    pub max_degree: u32,
}

impl Default for NumericalConfig {
    fn default() -> Self {
        NumericalConfig {
            sampler: SamplerConfig::default(),
            dual: DualConfig::default(),
            initial_points: 8,
            max_degree: DEFAULT_DEGREE_CAP,
        }
    }
}

/// Support of each specialized operator: its pivot (grevlex-smallest
/// ∂-monomial, coefficient 1) and the other monomials.
#[derive(Clone, Debug, PartialEq)]
struct Shape {
    pivots: Vec<Monomial>,
    others: Vec<Vec<Monomial>>,
}

fn shape_of(ops: &[DiffOp<Complex64>], tol: f64) -> Shape {
    let mut pivots = Vec::new();
    let mut others = Vec::new();
    for a in ops {
        let max = a.terms().map(|(_, c)| c.coeff_norm()).fold(0.0, f64::max);
        let live: Vec<Monomial> = a
            .terms()
            .filter(|(_, c)| c.coeff_norm() > tol * max.max(1.0))
            .map(|(m, _)| m.clone())
            .collect();
        pivots.push(live[0].clone());
        others.push(live[1..].to_vec());
    }
    Shape { pivots, others }
}

/// Specialized operators at `point`, restricted to the columns of `shape`
/// when one is known.
fn specialized_values(
    ideal: &Ideal,
    point: &[Complex64],
    dependent: &[usize],
    shape: Option<&Shape>,
    cfg: &NumericalConfig,
) -> Result<Vec<DiffOp<Complex64>>> {
    match shape {
        None => specialized_noetherian_operators(ideal, point, dependent, &cfg.dual),
        Some(s) => {
            let n = ideal.ring().arity();
            let independent: Vec<usize> = (0..n).filter(|v| !dependent.contains(v)).collect();
            let sys = Complex64::local_system(ideal, point)?.slice(&independent);
            let mut columns: Vec<Monomial> = s.pivots.iter().chain(s.others.iter().flatten()).cloned().collect();
            columns.sort();
            columns.dedup();
            Ok(sys.macaulay_matrix(&columns).kernel(cfg.dual.tol))
        }
    }
}

/// Operators with rational-function coefficients in the independent
/// variables, recovered from specialized operators at sampled points.
pub fn numerical_noetherian_operators(
    ideal: &Ideal,
    dependent: &[usize],
    cfg: &NumericalConfig,
) -> Result<Vec<InterpolatedDiffOp>> {
    const MISMATCH_LIMIT: usize = 5;
    let n = ideal.ring().arity();
    if dependent.is_empty() || dependent.iter().any(|&v| v >= n) {
        return Err(Error::InvalidInput("a valid dependent set is required".into()));
    }
    let independent: Vec<usize> = (0..n).filter(|v| !dependent.contains(v)).collect();
    let mut sampler = Sampler::new(ideal, &cfg.sampler, Some(dependent))?;
    let support_tol = 1e2 * cfg.dual.tol;

    let first_point = sampler.next_point()?;
    let first = specialized_values(ideal, &first_point, dependent, None, cfg)?;
    let shape = shape_of(&first, support_tol);

    // one interpolation problem per (operator, non-pivot monomial)
    let mut states: Vec<Vec<InterpolationState>> = shape
        .others
        .iter()
        .map(|o| o.iter().map(|_| InterpolationState::new(independent.clone())).collect())
        .collect();
    let record = |states: &mut Vec<Vec<InterpolationState>>, point: &[Complex64], ops: &[DiffOp<Complex64>]| {
        for (k, a) in ops.iter().enumerate() {
            for (j, m) in shape.others[k].iter().enumerate() {
                states[k][j].samples.push(Sample {
                    point: point.to_vec(),
                    value: a.scalar(m),
                });
            }
        }
    };
    record(&mut states, &first_point, &first);

    let mut mismatches = 0;
    let mut add_points = |states: &mut Vec<Vec<InterpolationState>>, count: usize| -> Result<()> {
        let mut added = 0;
        while added < count {
            let p = sampler.next_point()?;
            let ops = specialized_values(ideal, &p, dependent, Some(&shape), cfg)?;
            if ops.len() != shape.pivots.len() || shape_of(&ops, support_tol).pivots != shape.pivots {
                mismatches += 1;
                if mismatches > MISMATCH_LIMIT {
                    return Err(Error::Sampling("operator support differs between sample points".into()));
                }
                continue;
            }
            record(states, &p, &ops);
            added += 1;
        }
        Ok(())
    };
    add_points(&mut states, cfg.initial_points.saturating_sub(1))?;

    let mut result: Vec<Vec<Option<RationalFunction>>> =
        shape.others.iter().map(|o| vec![None; o.len()]).collect();
    loop {
        let mut need = 0;
        for k in 0..states.len() {
            for j in 0..states[k].len() {
                if result[k][j].is_some() {
                    continue;
                }
                match states[k][j].advance(cfg.max_degree)? {
                    Progress::Found(f) => result[k][j] = Some(f),
                    Progress::NeedSamples(s) => need = need.max(s),
                }
            }
        }
        if need == 0 {
            break;
        }
        let have = states.iter().flatten().map(|s| s.samples.len()).min().unwrap_or(0);
        add_points(&mut states, need.saturating_sub(have))?;
    }

    Ok(shape
        .pivots
        .iter()
        .enumerate()
        .map(|(k, piv)| {
            let mut op = DiffOp::term(piv.clone(), Polynomial::one());
            for (j, m) in shape.others[k].iter().enumerate() {
                let f = result[k][j].take().unwrap();
                if !f.is_zero() {
                    op.add_term(m.clone(), Polynomial::constant(f));
                }
            }
            op
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Ring;
    use crate::diffops::list_text;

    #[test]
    fn running_example_interpolates_x3() {
        let r = Ring::rational(["x1", "x2", "x3"]).unwrap();
        let q = Ideal::parse(&r, &["x1^2", "x2^2", "x1 - x2*x3"]).unwrap();
        let ops = numerical_noetherian_operators(&q, &[0, 1], &NumericalConfig::default()).unwrap();
        assert_eq!(list_text(&ops, &r), "{1, x3*dx1 + dx2}");
        let again = numerical_noetherian_operators(&q, &[0, 1], &NumericalConfig::default()).unwrap();
        assert_eq!(ops, again);
    }

    #[test]
    fn rational_coefficient() {
        // locally at (x1, x2) the operators are {1, x4/x3*dx1 + dx2}
        let r = Ring::rational(["x1", "x2", "x3", "x4"]).unwrap();
        let i = Ideal::parse(&r, &["x1^2", "x1*x2", "x2^2", "x3*x1 - x4*x2"]).unwrap();
        let ops = numerical_noetherian_operators(&i, &[0, 1], &NumericalConfig::default()).unwrap();
        assert_eq!(list_text(&ops, &r), "{1, x4/(x3)*dx1 + dx2}");
    }

    #[test]
    fn prime_gives_identity() {
        let r = Ring::rational(["x1", "x2"]).unwrap();
        let p = Ideal::parse(&r, &["x1^2 + x2^2 - 1"]).unwrap();
        let ops = numerical_noetherian_operators(&p, &[1], &NumericalConfig::default()).unwrap();
        assert_eq!(list_text(&ops, &r), "{1}");
    }
}
