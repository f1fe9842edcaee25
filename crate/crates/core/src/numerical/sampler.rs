//! Points on V(I) by coordinate slicing: fix the independent variables at
//! random rationals, solve the zero-dimensional slice through
//! multiplication matrices, then polish with Gauss-Newton.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::field::rational_to_f64;
use crate::algebra::gcd::{exact_div, gcd};
use crate::algebra::{Complex64, Field, Monomial, MonomialOrder, Polynomial, Rational};
use crate::error::{Error, Result};
use crate::groebner::{groebner_basis, reduce, standard_monomials, Ideal};
use crate::linalg::exact_kernel;

type P = Polynomial<Rational>;

/// Residual accepted for sampled points: |g(p)| ≤ 1e-8·(1 + ‖p‖^deg g).
pub const SAMPLE_RESIDUAL: f64 = 1e-8;
const SLICE_RETRIES: usize = 5;

#[derive(Clone, Debug, PartialEq)]
pub enum SamplerMode {
    BuiltinSlice,
    /// User-supplied points, consumed in order.
    Points(Vec<Vec<Complex64>>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SamplerConfig {
    pub mode: SamplerMode,
    pub seed: u64,
    pub newton_tol: f64,
    pub max_newton_iters: usize,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            mode: SamplerMode::BuiltinSlice,
            seed: 1,
            newton_tol: 1e-10,
            max_newton_iters: 50,
        }
    }
}

pub fn residual_ok(gens: &[P], point: &[Complex64], tol: f64) -> bool {
    let norm = point.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    gens.iter().all(|g| {
        let v = g.eval_with(point, Complex64::from_rational);
        v.norm() <= tol * (1.0 + norm.powi(g.total_degree() as i32))
    })
}

/// Stream of points on V(I) with the independent variables at fresh
/// random values.
pub struct Sampler<'a> {
    ideal: &'a Ideal,
    cfg: SamplerConfig,
    independent: Vec<usize>,
    dependent: Vec<usize>,
    rng: ChaCha8Rng,
    next_user: usize,
}

impl<'a> Sampler<'a> {
    /// `dependent` fixes which coordinates are solved for; by default the
    /// complement of a maximal independent set of I.
    pub fn new(ideal: &'a Ideal, cfg: &SamplerConfig, dependent: Option<&[usize]>) -> Result<Self> {
        let n = ideal.ring().arity();
        let dependent: Vec<usize> = match dependent {
            Some(d) => d.to_vec(),
            None => ideal.independent_set()?.dependent,
        };
        let independent = (0..n).filter(|v| !dependent.contains(v)).collect();
        Ok(Sampler {
            ideal,
            cfg: cfg.clone(),
            independent,
            dependent,
            rng: ChaCha8Rng::seed_from_u64(cfg.seed),
            next_user: 0,
        })
    }

    pub fn next_point(&mut self) -> Result<Vec<Complex64>> {
        if let SamplerMode::Points(points) = &self.cfg.mode {
            while self.next_user < points.len() {
                let p = points[self.next_user].clone();
                self.next_user += 1;
                if p.len() != self.ideal.ring().arity() {
                    return Err(Error::Arity {
                        expected: self.ideal.ring().arity(),
                        found: p.len(),
                    });
                }
                if residual_ok(self.ideal.gens(), &p, 1e-4) {
                    return Ok(p);
                }
                return Err(Error::PointNotOnVariety);
            }
            return Err(Error::Sampling("point file exhausted".into()));
        }
        let mut last = Error::Sampling("no solution found".into());
        for _ in 0..SLICE_RETRIES {
            match self.try_slice() {
                Ok(p) => return Ok(p),
                Err(e) => last = e,
            }
        }
        Err(last)
    }

    fn random_rational(&mut self) -> Rational {
        let den: i64 = self.rng.random_range(1..=7);
        let num: i64 = self.rng.random_range(-30..=30);
        Rational::new(num.into(), den.into())
    }

    fn try_slice(&mut self) -> Result<Vec<Complex64>> {
        let t0: Vec<(usize, Rational)> = self
            .independent
            .clone()
            .into_iter()
            .map(|v| (v, self.random_rational()))
            .collect();
        let sliced: Vec<P> = self
            .ideal
            .gens()
            .iter()
            .map(|g| g.specialize(&t0))
            .filter(|g| !g.is_zero())
            .collect();
        let weights: Vec<i64> = self.dependent.iter().map(|_| self.rng.random_range(1..=9)).collect();
        let (radical, roots) = solve_zero_dimensional(&sliced, &self.dependent, &weights)?;
        if roots.is_empty() {
            return Err(Error::Sampling("slice has no solutions".into()));
        }
        let real: Vec<usize> = (0..roots.len())
            .filter(|&k| roots[k].iter().all(|z| z.im.abs() <= 1e-8 * (1.0 + z.norm())))
            .collect();
        let pick = if real.is_empty() {
            self.rng.random_range(0..roots.len())
        } else {
            real[self.rng.random_range(0..real.len())]
        };
        let n = self.ideal.ring().arity();
        let mut point = vec![Complex64::new(0.0, 0.0); n];
        for (v, q) in &t0 {
            point[*v] = Complex64::new(rational_to_f64(q), 0.0);
        }
        for (k, &v) in self.dependent.iter().enumerate() {
            point[v] = roots[pick][k];
        }
        if !real.is_empty() {
            for z in point.iter_mut() {
                z.im = 0.0;
            }
        }
        let point = newton(&radical, &self.dependent, point, self.cfg.newton_tol, self.cfg.max_newton_iters)?;
        if residual_ok(self.ideal.gens(), &point, SAMPLE_RESIDUAL) {
            Ok(point)
        } else {
            Err(Error::Sampling("Newton refinement did not reach the residual bound".into()))
        }
    }
}

/// `n` points on V(I) (see [`Sampler`]).
pub fn sample_points(ideal: &Ideal, n: usize, cfg: &SamplerConfig) -> Result<Vec<Vec<Complex64>>> {
    if n == 0 {
        return Err(Error::InvalidInput("at least one sample point is required".into()));
    }
    let mut s = Sampler::new(ideal, cfg, None)?;
    (0..n).map(|_| s.next_point()).collect()
}

/// Minimal polynomial of x_var in ℚ[vars]/⟨basis⟩, as a polynomial in x_var.
fn minimal_polynomial(basis: &[P], standard: &[Monomial], var: usize) -> P {
    let order = MonomialOrder::Grevlex;
    let coords = |f: &P| -> Vec<Rational> { standard.iter().map(|m| f.coeff(m)).collect() };
    let mut powers: Vec<Vec<Rational>> = vec![coords(&P::one())];
    let mut current = P::one();
    for _ in 0..standard.len() {
        current = reduce(&current.mul_term(&Monomial::var(var), &Rational::one()), basis, &order);
        powers.push(coords(&current));
        // columns are the powers; look for a dependency among them
        let rows: Vec<Vec<Rational>> = (0..standard.len())
            .map(|i| powers.iter().map(|c| c[i].clone()).collect())
            .collect();
        if let Some(k) = exact_kernel(&rows, powers.len()).into_iter().next() {
            return P::from_terms(k.into_iter().enumerate().map(|(e, c)| (Monomial::var_pow(var, e as u32), c)));
        }
    }
    unreachable!("dependency found by degree dim+1")
}

/// Radical of a zero-dimensional slice (Seidenberg: add the squarefree
/// parts of the univariate eliminants) and all its complex solutions.
pub fn solve_zero_dimensional(gens: &[P], vars: &[usize], weights: &[i64]) -> Result<(Vec<P>, Vec<Vec<Complex64>>)> {
    let order = MonomialOrder::Grevlex;
    let mut basis = groebner_basis(gens, &order)?;
    if basis.iter().any(|g| g.is_constant() && !g.is_zero()) {
        return Ok((basis, Vec::new()));
    }
    let leads = |b: &[P]| -> Vec<Monomial> { b.iter().map(|g| g.lead_monomial(&order).unwrap().clone()).collect() };
    let standard = standard_monomials(&leads(&basis), vars)
        .ok_or_else(|| Error::Sampling("slice is not zero-dimensional".into()))?;
    let mut extra = Vec::new();
    for &v in vars {
        let mu = minimal_polynomial(&basis, &standard, v);
        let g = gcd(&mu, &mu.derivative(v, 1));
        if !g.is_constant() {
            extra.push(exact_div(&mu, &g).unwrap());
        }
    }
    let mut standard = standard;
    if !extra.is_empty() {
        let mut all = basis.clone();
        all.extend(extra);
        basis = groebner_basis(&all, &order)?;
        standard = standard_monomials(&leads(&basis), vars).unwrap();
    }
    let k = standard.len();
    let index = |m: &Monomial| standard.iter().position(|s| s == m);
    // transposed multiplication matrices: row s holds the coordinates of x_v·s
    let mult_t: Vec<DMatrix<f64>> = vars
        .iter()
        .map(|&v| {
            let mut m = DMatrix::<f64>::zeros(k, k);
            for (col, s) in standard.iter().enumerate() {
                let nf = reduce(&P::term(s.mul(&Monomial::var(v)), Rational::one()), &basis, &order);
                for (mono, c) in nf.terms() {
                    m[(col, index(mono).unwrap())] = rational_to_f64(c);
                }
            }
            m
        })
        .collect();
    let mut mu_t = DMatrix::<f64>::zeros(k, k);
    for (m, &w) in mult_t.iter().zip(weights) {
        mu_t += m * (w as f64);
    }
    let eig = mu_t.clone().complex_eigenvalues();
    let mu_c = mu_t.map(|x| Complex64::new(x, 0.0));
    let mult_c: Vec<DMatrix<Complex64>> = mult_t.iter().map(|m| m.map(|x| Complex64::new(x, 0.0))).collect();
    let mut roots = Vec::with_capacity(k);
    for lambda in eig.iter() {
        let shifted = &mu_c - DMatrix::<Complex64>::identity(k, k) * *lambda;
        let svd = shifted.svd(false, true);
        let v_t = svd.v_t.expect("requested");
        let (imin, _) = svd
            .singular_values
            .iter()
            .enumerate()
            .fold((0, f64::INFINITY), |acc, (i, &s)| if s < acc.1 { (i, s) } else { acc });
        let w = v_t.row(imin).transpose().map(|z| z.conj());
        let norm = w.dotc(&w);
        let coords: Vec<Complex64> = mult_c.iter().map(|m| w.dotc(&(m * &w)) / norm).collect();
        roots.push(coords);
    }
    Ok((basis, roots))
}

/// Gauss-Newton on `gens` in the variables `vars`, other coordinates fixed.
fn newton(gens: &[P], vars: &[usize], mut point: Vec<Complex64>, tol: f64, iters: usize) -> Result<Vec<Complex64>> {
    if vars.is_empty() || gens.is_empty() {
        return Ok(point);
    }
    let jac: Vec<Vec<P>> = gens.iter().map(|g| vars.iter().map(|&v| g.derivative(v, 1)).collect()).collect();
    for _ in 0..iters {
        let f = DMatrix::from_iterator(
            gens.len(),
            1,
            gens.iter().map(|g| g.eval_with(&point, Complex64::from_rational)),
        );
        let j = DMatrix::from_fn(gens.len(), vars.len(), |r, c| jac[r][c].eval_with(&point, Complex64::from_rational));
        let step = j
            .svd(true, true)
            .solve(&f, 1e-14)
            .map_err(|e| Error::Sampling(format!("Newton step failed: {e}")))?;
        let mut size = 0.0;
        for (k, &v) in vars.iter().enumerate() {
            point[v] -= step[k];
            size += step[k].norm_sqr();
        }
        let scale = 1.0 + point.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !size.is_finite() {
            return Err(Error::Sampling("Newton iteration diverged".into()));
        }
        if size.sqrt() <= tol * scale {
            break;
        }
    }
    Ok(point)
}
