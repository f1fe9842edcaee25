//! Rational functions recovered from approximate values at sample points.

use nalgebra::DMatrix;

use crate::algebra::field::rationalize;
use crate::algebra::{Complex64, Field, Monomial, Polynomial, Rational, RationalFunction};
use crate::error::{Error, Result};

/// Relative residual accepted at validation points.
pub const VALIDATION_TOL: f64 = 1e-6;
/// Bound on numerator plus denominator degree.
pub const DEFAULT_DEGREE_CAP: u32 = 10;
const MIN_VALIDATION: usize = 2;

#[derive(Clone, Debug, PartialEq)]
pub struct Sample {
    /// Full coordinate vector of the sample point.
    pub point: Vec<Complex64>,
    pub value: Complex64,
}

/// (numerator, denominator) degree pairs: (0,0), (1,0), (0,1), (1,1),
/// (2,1), (1,2), (2,2), … while the sum stays within `cap`.
pub fn degree_schedule(cap: u32) -> Vec<(u32, u32)> {
    let mut out = vec![(0, 0)];
    let mut k = 0;
    loop {
        let next = [(k + 1, k), (k, k + 1), (k + 1, k + 1)];
        for (a, b) in next {
            if a + b > cap {
                return out;
            }
            out.push((a, b));
        }
        k += 1;
    }
}

/// Samples consumed by a fit of degrees (a, b) in `nvars` variables:
/// one per unknown coefficient plus the validation points.
pub fn required_samples(nvars: usize, a: u32, b: u32) -> usize {
    let vars: Vec<usize> = (0..nvars).collect();
    let unknowns = Monomial::all_up_to_degree(&vars, a).len() + Monomial::all_up_to_degree(&vars, b).len();
    unknowns + validation_count(a, b)
}

fn validation_count(a: u32, b: u32) -> usize {
    MIN_VALIDATION + ((a + b) / 2) as usize
}

/// Samples and the position reached in the degree schedule.
#[derive(Clone, Debug)]
pub struct InterpolationState {
    /// Variables of the rational function (indices into the sample points).
    pub vars: Vec<usize>,
    pub samples: Vec<Sample>,
    pub numerator_degree: u32,
    pub denominator_degree: u32,
}

pub enum Progress {
    Found(RationalFunction),
    /// Fitting the current degrees needs this many samples in total.
    NeedSamples(usize),
}

impl InterpolationState {
    pub fn new(vars: Vec<usize>) -> Self {
        InterpolationState {
            vars,
            samples: Vec::new(),
            numerator_degree: 0,
            denominator_degree: 0,
        }
    }

    /// Walk the schedule from the current degrees with the samples at hand.
    pub fn advance(&mut self, cap: u32) -> Result<Progress> {
        let schedule = degree_schedule(cap);
        let start = schedule
            .iter()
            .position(|&d| d == (self.numerator_degree, self.denominator_degree))
            .unwrap_or(0);
        for &(a, b) in &schedule[start..] {
            self.numerator_degree = a;
            self.denominator_degree = b;
            let need = required_samples(self.vars.len(), a, b);
            if self.samples.len() < need {
                return Ok(Progress::NeedSamples(need));
            }
            if let Some(f) = fit(&self.samples, &self.vars, a, b) {
                return Ok(Progress::Found(f));
            }
        }
        Err(Error::Interpolation)
    }
}

/// Interpolate with the samples available; running out of them is an error.
pub fn interpolate_rational(state: &mut InterpolationState, cap: u32) -> Result<RationalFunction> {
    match state.advance(cap)? {
        Progress::Found(f) => Ok(f),
        Progress::NeedSamples(n) => Err(Error::Sampling(format!(
            "interpolation needs {n} samples, {} given",
            state.samples.len()
        ))),
    }
}

fn eval_monomial(m: &Monomial, point: &[Complex64]) -> Complex64 {
    let mut v = Complex64::new(1.0, 0.0);
    for (i, &e) in m.exponents().iter().enumerate() {
        for _ in 0..e {
            v *= point[i];
        }
    }
    v
}

/// Least-squares fit of value·den − num = 0, denominator normalized at its
/// largest coefficient, coefficients rationalized, then validated on the
/// held-out samples.
fn fit(samples: &[Sample], vars: &[usize], a: u32, b: u32) -> Option<RationalFunction> {
    let num_m = Monomial::all_up_to_degree(vars, a);
    let den_m = Monomial::all_up_to_degree(vars, b);
    let unknowns = num_m.len() + den_m.len();
    let n_fit = samples.len() - validation_count(a, b);
    let (fitting, validation) = samples.split_at(n_fit);
    let rows = DMatrix::from_fn(fitting.len().max(unknowns), unknowns, |r, c| {
        let Some(s) = fitting.get(r) else {
            return Complex64::new(0.0, 0.0);
        };
        if c < num_m.len() {
            -eval_monomial(&num_m[c], &s.point)
        } else {
            s.value * eval_monomial(&den_m[c - num_m.len()], &s.point)
        }
    });
    // rows scaled to unit length so large sample coordinates do not dominate
    let mut rows = rows;
    for mut r in rows.row_iter_mut() {
        let n = r.norm();
        if n > 0.0 {
            r /= Complex64::new(n, 0.0);
        }
    }
    let svd = rows.svd(false, true);
    let v_t = svd.v_t?;
    let (imin, _) = svd
        .singular_values
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (i, &s)| if s < acc.1 { (i, s) } else { acc });
    let v: Vec<Complex64> = v_t.row(imin).iter().map(|z| z.conj()).collect();
    let (piv, _) = v[num_m.len()..]
        .iter()
        .enumerate()
        .fold((0, 0.0), |acc, (i, z)| if z.norm() > acc.1 { (i, z.norm()) } else { acc });
    let scale = v[num_m.len() + piv];
    if scale.norm() == 0.0 {
        return None;
    }
    let v: Vec<Complex64> = v.iter().map(|z| z / scale).collect();
    let max = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut coeffs = Vec::with_capacity(v.len());
    for z in &v {
        if z.im.abs() > 1e-6 * max {
            return None;
        }
        if z.re.abs() <= 1e-9 * max {
            coeffs.push(Rational::zero());
            continue;
        }
        coeffs.push(rationalize(z.re, 1e-7, 10_000)?);
    }
    let num = Polynomial::from_terms(num_m.iter().cloned().zip(coeffs[..num_m.len()].iter().cloned()));
    let den = Polynomial::from_terms(den_m.iter().cloned().zip(coeffs[num_m.len()..].iter().cloned()));
    let f = RationalFunction::new(num, den)?;
    let ok = fitting.iter().chain(validation).all(|s| match f.evaluate(&s.point) {
        Some(y) => (y - s.value).norm() <= VALIDATION_TOL * s.value.norm().max(1.0),
        None => false,
    });
    ok.then_some(f)
}
