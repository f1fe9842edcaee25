//! Macaulay dual spaces: the constant-coefficient operators killing an
//! ideal at a point, computed as kernels of Macaulay matrices.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::algebra::field::format_float;
use crate::algebra::monomial::monomial_text;
use crate::algebra::parse::parse_polynomial;
use crate::algebra::{Complex64, Field, Monomial, Polynomial, Rational, Ring};
use crate::diffops::{DiffOp, TermJson};
use crate::error::{Error, Result};
use crate::groebner::Ideal;

pub use crate::linalg::numeric_kernel;

/// Relative tolerance used for numeric kernels unless configured otherwise.
pub const DEFAULT_TOLERANCE: f64 = 1e-6;
/// Degree cap for stabilization loops.
pub const DEFAULT_CAP: u32 = 20;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DualConfig {
    pub tol: f64,
    pub cap: u32,
}

impl Default for DualConfig {
    fn default() -> Self {
        DualConfig {
            tol: DEFAULT_TOLERANCE,
            cap: DEFAULT_CAP,
        }
    }
}

/// A point with exact or approximate coordinates.
#[derive(Clone, Debug, PartialEq)]
pub enum Point {
    Exact(Vec<Rational>),
    Approx(Vec<Complex64>),
}

fn parse_complex(s: &str) -> Option<Complex64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some(body) = t.strip_suffix('i') {
        let body = body.strip_suffix('*').unwrap_or(body);
        // split at the last sign that is not an exponent sign or the leading one
        let bytes = body.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            if (bytes[k] == b'+' || bytes[k] == b'-') && bytes[k - 1] != b'e' && bytes[k - 1] != b'E' {
                split = Some(k);
                break;
            }
        }
        let (re, im) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => 1.0,
            "-" => -1.0,
            x => x.parse().ok()?,
        };
        Some(Complex64::new(re.parse().ok()?, im))
    } else {
        t.parse::<f64>().ok().map(|x| Complex64::new(x, 0.0))
    }
}

impl Point {
    /// Comma-separated coordinates. A coordinate with a decimal point,
    /// exponent or imaginary part makes the whole point approximate.
    pub fn parse(text: &str) -> Result<Point> {
        let parts: Vec<&str> = text.split(',').map(str::trim).collect();
        if parts.iter().any(|p| p.is_empty()) {
            return Err(Error::InvalidInput(format!("malformed point '{text}'")));
        }
        let approximate = parts
            .iter()
            .any(|p| p.contains('.') || p.contains('e') || p.contains('E') || p.ends_with('i'));
        if approximate {
            let coords = parts
                .iter()
                .map(|p| parse_complex(p).ok_or_else(|| Error::InvalidInput(format!("bad coordinate '{p}'"))))
                .collect::<Result<Vec<_>>>()?;
            Ok(Point::Approx(coords))
        } else {
            let coords = parts
                .iter()
                .map(|p| {
                    let q = parse_polynomial(p, &[])?;
                    Ok(q.constant_value().unwrap())
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Point::Exact(coords))
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Point::Exact(v) => v.len(),
            Point::Approx(v) => v.len(),
        }
    }

    pub fn is_approximate(&self) -> bool {
        matches!(self, Point::Approx(_))
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        match self {
            Point::Exact(v) => v.iter().map(Complex64::from_rational).collect(),
            Point::Approx(v) => v.clone(),
        }
    }

    pub fn coordinate_texts(&self) -> Vec<String> {
        match self {
            Point::Exact(v) => v.iter().map(|q| q.to_string()).collect(),
            Point::Approx(v) => v.iter().map(|z| z.coeff_text(&[]).standalone()).collect(),
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.coordinate_texts().join(", "))
    }
}

/// Residual bound for approximate points: |g(p)| ≤ 1e-4·(1 + ‖p‖^deg g).
pub fn check_on_variety(gens: &[Polynomial<Rational>], point: &[Complex64]) -> Result<()> {
    let norm = point.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for g in gens {
        let v = g.eval_with(point, Complex64::from_rational);
        let bound = 1e-4 * (1.0 + norm.powi(g.total_degree() as i32));
        if v.norm() > bound {
            return Err(Error::PointNotOnVariety);
        }
    }
    Ok(())
}

/// Generators moved so the point of interest is the origin, plus the
/// variables the ∂-monomials range over.
#[derive(Clone, Debug)]
pub struct LocalSystem<C: Field> {
    pub gens: Vec<Polynomial<C>>,
    pub vars: Vec<usize>,
}

/// Rows are shifted generators x^β·g, columns ∂-monomials; the entry is
/// ⟨∂^α, x^β·g⟩ at the origin, i.e. α! times the coefficient of x^α.
#[derive(Clone, Debug)]
pub struct MacaulayMatrix<C: Field> {
    pub rows: Vec<Vec<C>>,
    /// (shift x^β, generator index) for each row.
    pub row_labels: Vec<(Monomial, usize)>,
    pub columns: Vec<Monomial>,
}

impl<C: Field> MacaulayMatrix<C> {
    /// Kernel as constant-coefficient operators, echelonized with pivots
    /// at the grevlex-smallest ∂-monomials and sorted by pivot.
    pub fn kernel(&self, tol: f64) -> Vec<DiffOp<C>> {
        let basis = C::kernel(&self.rows, self.columns.len(), tol);
        basis
            .into_iter()
            .map(|v| DiffOp::from_scalars(self.columns.iter().cloned().zip(v)))
            .collect()
    }
}

impl<C: Field> LocalSystem<C> {
    pub fn new(gens: Vec<Polynomial<C>>, vars: Vec<usize>) -> Self {
        LocalSystem {
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            vars,
        }
    }

    /// Set the variables `fixed` to zero and drop them from the ∂-variables:
    /// the local system of I + (t − t₀) seen inside the remaining coordinates.
    pub fn slice(&self, fixed: &[usize]) -> Self {
        let zeros: Vec<(usize, C)> = fixed.iter().map(|&v| (v, C::zero())).collect();
        let gens = self
            .gens
            .iter()
            .map(|g| g.specialize(&zeros))
            .collect();
        let vars = self.vars.iter().copied().filter(|v| !fixed.contains(v)).collect();
        LocalSystem::new(gens, vars)
    }

    /// Matrix against an explicit list of columns (sorted ascending).
    pub fn macaulay_matrix(&self, columns: &[Monomial]) -> MacaulayMatrix<C> {
        let d = columns.iter().map(Monomial::degree).max().unwrap_or(0);
        let index: HashMap<&Monomial, usize> = columns.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let weights: Vec<C> = columns.iter().map(|m| C::from_bigint(&m.factorial())).collect();
        let mut rows = Vec::new();
        let mut labels = Vec::new();
        for (gi, g) in self.gens.iter().enumerate() {
            let low = g.low_degree();
            if low > d {
                continue;
            }
            for beta in Monomial::all_up_to_degree(&self.vars, d - low) {
                let mut row = vec![C::zero(); columns.len()];
                let mut any = false;
                for (m, c) in g.terms() {
                    let shifted = m.mul(&beta);
                    if let Some(&j) = index.get(&shifted) {
                        row[j] = c.clone() * weights[j].clone();
                        any = true;
                    }
                }
                if any {
                    rows.push(row);
                    labels.push((beta, gi));
                }
            }
        }
        MacaulayMatrix {
            rows,
            row_labels: labels,
            columns: columns.to_vec(),
        }
    }

    pub fn columns_up_to(&self, d: u32) -> Vec<Monomial> {
        Monomial::all_up_to_degree(&self.vars, d)
    }

    /// Degree-d truncation of the dual.
    pub fn truncated(&self, d: u32, tol: f64) -> Vec<DiffOp<C>> {
        self.macaulay_matrix(&self.columns_up_to(d)).kernel(tol)
    }

    /// Iterate d = 0, 1, … until the kernel dimension repeats; returns the
    /// basis and the degree at which it stabilized.
    pub fn complete(&self, cfg: &DualConfig) -> Result<(Vec<DiffOp<C>>, u32)> {
        let mut prev = self.truncated(0, cfg.tol);
        for d in 1..=cfg.cap {
            let next = self.truncated(d, cfg.tol);
            if next.len() == prev.len() {
                return Ok((prev, d - 1));
            }
            prev = next;
        }
        Err(Error::NotIsolated)
    }

    /// Operators with every term of degree ≤ d in `v`. Without `total`,
    /// the total degree is raised until the dimension repeats; with it,
    /// the space is truncated there.
    pub fn eliminating(&self, v: &[usize], d: u32, total: Option<u32>, cfg: &DualConfig) -> Result<Vec<DiffOp<C>>> {
        let cols = |t: u32| -> Vec<Monomial> {
            self.columns_up_to(t)
                .into_iter()
                .filter(|m| m.degree_in(v) <= d)
                .collect()
        };
        if let Some(t) = total {
            return Ok(self.macaulay_matrix(&cols(t)).kernel(cfg.tol));
        }
        let mut prev = self.macaulay_matrix(&cols(0)).kernel(cfg.tol);
        for t in 1..=cfg.cap {
            let next = self.macaulay_matrix(&cols(t)).kernel(cfg.tol);
            if next.len() == prev.len() {
                return Ok(prev);
            }
            prev = next;
        }
        Err(Error::EliminatingDualInfinite)
    }
}

fn local_system_exact(ideal: &Ideal, point: &[Rational]) -> Result<LocalSystem<Rational>> {
    let n = ideal.ring().arity();
    if point.len() != n {
        return Err(Error::Arity {
            expected: n,
            found: point.len(),
        });
    }
    let mut gens = Vec::new();
    for g in ideal.gens() {
        let t = g.translate(point);
        if !Field::is_zero(&t.coeff(&Monomial::one())) {
            return Err(Error::PointNotOnVariety);
        }
        gens.push(t);
    }
    Ok(LocalSystem::new(gens, (0..n).collect()))
}

fn local_system_approx(ideal: &Ideal, point: &[Complex64]) -> Result<LocalSystem<Complex64>> {
    let n = ideal.ring().arity();
    if point.len() != n {
        return Err(Error::Arity {
            expected: n,
            found: point.len(),
        });
    }
    check_on_variety(ideal.gens(), point)?;
    let gens = ideal
        .gens()
        .iter()
        .map(|g| {
            let t = g.map_coeffs(Complex64::from_rational).translate(point);
            // drop the residual and normalize so all rows carry equal weight
            let mut t = t;
            t.remove_term(&Monomial::one());
            let norm = t.coeff_norm();
            if norm > 0.0 {
                t.scale(&Complex64::new(1.0 / norm, 0.0))
            } else {
                t
            }
        })
        .collect();
    Ok(LocalSystem::new(gens, (0..n).collect()))
}

/// Coordinates usable as a base point: builds the translated system.
pub trait PointField: Field {
    fn local_system(ideal: &Ideal, point: &[Self]) -> Result<LocalSystem<Self>>;
}

impl PointField for Rational {
    fn local_system(ideal: &Ideal, point: &[Self]) -> Result<LocalSystem<Self>> {
        local_system_exact(ideal, point)
    }
}

impl PointField for Complex64 {
    fn local_system(ideal: &Ideal, point: &[Self]) -> Result<LocalSystem<Self>> {
        local_system_approx(ideal, point)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Truncation {
    Degree(u32),
    Complete,
}

/// Finite basis of dual operators at a point.
#[derive(Clone, Debug)]
pub struct DualSpace<C: Field> {
    pub point: Vec<C>,
    pub basis: Vec<DiffOp<C>>,
    pub truncation: Truncation,
    /// Variables V and bound d for eliminating duals.
    pub elimination: Option<(Vec<usize>, u32)>,
    pub tolerance: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct DualJson {
    pub point: Vec<String>,
    pub tolerance: f64,
    pub basis: Vec<Vec<TermJson>>,
    pub truncation: serde_json_like::Truncation,
}

/// Serialization helper types (kept free of a JSON dependency).
pub mod serde_json_like {
    use serde::Serialize;

    #[derive(Clone, Debug, Serialize)]
    #[serde(untagged)]
    pub enum Truncation {
        Degree(u32),
        Complete(&'static str),
    }
}

impl<C: Field> DualSpace<C> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `| A1 A2 ... |` row, as a matrix-style listing.
    pub fn basis_text(&self, ring: &Ring) -> String {
        let parts: Vec<String> = self.basis.iter().map(|a| a.display(ring)).collect();
        format!("| {} |", parts.join(" "))
    }

    pub fn to_json(&self, ring: &Ring) -> DualJson {
        DualJson {
            point: self.point.iter().map(|c| c.coeff_text(&[]).standalone()).collect(),
            tolerance: self.tolerance,
            basis: self.basis.iter().map(|a| a.json_terms(ring)).collect(),
            truncation: match self.truncation {
                Truncation::Degree(d) => serde_json_like::Truncation::Degree(d),
                Truncation::Complete => serde_json_like::Truncation::Complete("complete"),
            },
        }
    }

    /// Local Hilbert function: the number of basis elements of top degree
    /// `i` in a degree-graded echelon form.
    pub fn hilbert_function(&self, i: u32) -> Result<usize> {
        if let Truncation::Degree(d) = self.truncation {
            if i > d {
                return Err(Error::BeyondTruncation { degree: i, truncation: d });
            }
        }
        Ok(hilbert_value(&self.basis, i, self.tolerance))
    }

    /// Lead ∂-monomials (highest degree, then grevlex-largest) of an
    /// echelon form of the basis; they index the standard monomials.
    pub fn lead_monomials(&self) -> Vec<Monomial> {
        dual_leads(&self.basis, self.tolerance)
    }
}

fn coefficient_rows<C: Field>(ops: &[DiffOp<C>], columns: &[Monomial]) -> Vec<Vec<C>> {
    ops.iter()
        .map(|a| columns.iter().map(|m| a.scalar(m)).collect())
        .collect()
}

fn all_support<C: Field>(ops: &[DiffOp<C>]) -> Vec<Monomial> {
    let mut cols: Vec<Monomial> = ops.iter().flat_map(|a| a.support()).collect();
    cols.sort();
    cols.dedup();
    cols
}

/// Rank of the basis restricted to ∂-monomials of degree > i.
fn rank_above<C: Field>(ops: &[DiffOp<C>], i: Option<u32>, tol: f64) -> usize {
    let cols: Vec<Monomial> = all_support(ops)
        .into_iter()
        .filter(|m| i.is_none_or(|i| m.degree() > i))
        .collect();
    if cols.is_empty() {
        return 0;
    }
    C::rref(coefficient_rows(ops, &cols), tol).1.len()
}

fn hilbert_value<C: Field>(ops: &[DiffOp<C>], i: u32, tol: f64) -> usize {
    let below = if i == 0 { rank_above(ops, None, tol) } else { rank_above(ops, Some(i - 1), tol) };
    below - rank_above(ops, Some(i), tol)
}

fn dual_leads<C: Field>(ops: &[DiffOp<C>], tol: f64) -> Vec<Monomial> {
    let mut cols = all_support(ops);
    cols.reverse();
    if cols.is_empty() {
        return Vec::new();
    }
    let (_, pivots) = C::rref(coefficient_rows(ops, &cols), tol);
    pivots.into_iter().map(|p| cols[p].clone()).collect()
}

pub fn dual_hilbert_function<C: Field>(i: u32, dual: &DualSpace<C>) -> Result<usize> {
    dual.hilbert_function(i)
}

pub fn build_macaulay_matrix<C: PointField>(ideal: &Ideal, point: &[C], d: u32) -> Result<MacaulayMatrix<C>> {
    let sys = C::local_system(ideal, point)?;
    Ok(sys.macaulay_matrix(&sys.columns_up_to(d)))
}

pub fn truncated_dual<C: PointField>(point: &[C], ideal: &Ideal, d: u32, cfg: &DualConfig) -> Result<DualSpace<C>> {
    let sys = C::local_system(ideal, point)?;
    Ok(DualSpace {
        point: point.to_vec(),
        basis: sys.truncated(d, cfg.tol),
        truncation: Truncation::Degree(d),
        elimination: None,
        tolerance: cfg.tol,
    })
}

pub fn zero_dimensional_dual<C: PointField>(point: &[C], ideal: &Ideal, cfg: &DualConfig) -> Result<DualSpace<C>> {
    let sys = C::local_system(ideal, point)?;
    let (basis, _) = sys.complete(cfg)?;
    Ok(DualSpace {
        point: point.to_vec(),
        basis,
        truncation: Truncation::Complete,
        elimination: None,
        tolerance: cfg.tol,
    })
}

/// E^d_p[I, V]. `total` truncates at a total degree, which positive
/// dimensional inputs generally need.
pub fn eliminating_dual<C: PointField>(
    point: &[C],
    ideal: &Ideal,
    v: &[usize],
    d: u32,
    total: Option<u32>,
    cfg: &DualConfig,
) -> Result<DualSpace<C>> {
    if v.is_empty() {
        return Err(Error::InvalidInput("elimination set must be nonempty".into()));
    }
    let sys = C::local_system(ideal, point)?;
    Ok(DualSpace {
        point: point.to_vec(),
        basis: sys.eliminating(v, d, total, cfg)?,
        truncation: total.map_or(Truncation::Complete, Truncation::Degree),
        elimination: Some((v.to_vec(), d)),
        tolerance: cfg.tol,
    })
}

/// E^d_p[I : x_v, {x_v}] = x_v · E^{d+1}_p[I, {x_v}].
pub fn colon_dual<C: PointField>(
    point: &[C],
    ideal: &Ideal,
    v: usize,
    d: u32,
    total: Option<u32>,
    cfg: &DualConfig,
) -> Result<DualSpace<C>> {
    let e = eliminating_dual(point, ideal, &[v], d + 1, total, cfg)?;
    let mut contracted = Vec::new();
    for a in &e.basis {
        contracted.push(a.right_action(v)?);
    }
    let basis = echelonize(&contracted, cfg.tol);
    Ok(DualSpace {
        point: point.to_vec(),
        basis,
        truncation: total.map_or(Truncation::Complete, |t| Truncation::Degree(t.saturating_sub(1))),
        elimination: Some((vec![v], d)),
        tolerance: cfg.tol,
    })
}

/// Reduced echelon basis of the span, pivots at grevlex-smallest ∂-monomials.
pub fn echelonize<C: Field>(ops: &[DiffOp<C>], tol: f64) -> Vec<DiffOp<C>> {
    let cols = all_support(ops);
    if cols.is_empty() {
        return Vec::new();
    }
    let (rows, _) = C::rref(coefficient_rows(ops, &cols), tol);
    rows.into_iter()
        .map(|r| DiffOp::from_scalars(cols.iter().cloned().zip(r)))
        .filter(|a: &DiffOp<C>| !a.is_zero())
        .collect()
}

/// Whether `a` lies in the span of `basis` (constant coefficients).
pub fn in_span<C: Field>(a: &DiffOp<C>, basis: &[DiffOp<C>], tol: f64) -> bool {
    let mut all = basis.to_vec();
    let before = echelonize(&all, tol).len();
    all.push(a.clone());
    echelonize(&all, tol).len() == before
}

/// Minimal generators of the local initial ideal, optionally with
/// standard-basis elements (in the original coordinates).
#[derive(Clone, Debug)]
pub struct GCorners<C: Field> {
    pub corners: Vec<Monomial>,
    pub standard_basis: Option<Vec<Polynomial<C>>>,
}

impl<C: Field> GCorners<C> {
    /// `x2 x1^2`: space separated, by degree then grevlex descending.
    pub fn text(&self, ring: &Ring) -> String {
        let parts: Vec<String> = self.corners.iter().map(|m| monomial_text(m, ring.names())).collect();
        parts.join(" ")
    }
}

fn sort_corners(v: &mut [Monomial]) {
    v.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
}

/// g-corners found degree by degree from truncated duals. Stops once every
/// monomial of the current degree is divisible by a corner; `limit` bounds
/// the degree for positive-dimensional inputs, which never stop.
pub fn g_corners<C: PointField>(
    point: &[C],
    ideal: &Ideal,
    produce_sb: bool,
    limit: Option<u32>,
    cfg: &DualConfig,
) -> Result<GCorners<C>> {
    let sys = C::local_system(ideal, point)?;
    let cap = limit.unwrap_or(cfg.cap);
    let mut corners: Vec<Monomial> = Vec::new();
    let mut finished = false;
    for d in 0..=cap {
        let dual = sys.truncated(d, cfg.tol);
        let leads = dual_leads(&dual, cfg.tol);
        let layer = Monomial::all_of_degree(&sys.vars, d);
        let mut all_divisible = true;
        for m in layer {
            if corners.iter().any(|c| c.divides(&m)) {
                continue;
            }
            all_divisible = false;
            if !leads.contains(&m) {
                corners.push(m);
            }
        }
        if all_divisible {
            finished = true;
            break;
        }
    }
    // one more pass: the last degree may have been closed by corners found in it
    if !finished {
        let d = cap + 1;
        finished = Monomial::all_of_degree(&sys.vars, d)
            .iter()
            .all(|m| corners.iter().any(|c| c.divides(m)));
        if !finished && limit.is_none() {
            return Err(Error::CapReached {
                cap,
                what: "g-corners did not close off".into(),
            });
        }
    }
    sort_corners(&mut corners);
    let standard_basis = if produce_sb {
        Some(standard_basis(&sys, point, &corners, cfg)?)
    } else {
        None
    };
    Ok(GCorners {
        corners,
        standard_basis,
    })
}

/// For each corner m, the element m + Σ c_s s (s standard) killed by the
/// complete dual; returned in the original coordinates.
fn standard_basis<C: PointField>(
    sys: &LocalSystem<C>,
    point: &[C],
    corners: &[Monomial],
    cfg: &DualConfig,
) -> Result<Vec<Polynomial<C>>> {
    let (dual, _) = sys.complete(cfg)?;
    let standard = dual_leads(&dual, cfg.tol);
    let neg_point: Vec<C> = point.iter().map(|c| -c.clone()).collect();
    let mut out = Vec::new();
    for m in corners {
        // Σ_s c_s ⟨A_j, s⟩ = −⟨A_j, m⟩ for every dual basis element A_j
        let rows: Vec<Vec<C>> = dual
            .iter()
            .map(|a| standard.iter().map(|s| a.pair_at_origin(&Polynomial::term(s.clone(), C::one()))).collect())
            .collect();
        let rhs: Vec<C> = dual
            .iter()
            .map(|a| -a.pair_at_origin(&Polynomial::term(m.clone(), C::one())))
            .collect();
        let coeffs = solve_square(&rows, &rhs, cfg.tol).ok_or(Error::NotIsolated)?;
        let mut f = Polynomial::term(m.clone(), C::one());
        for (s, c) in standard.iter().zip(coeffs) {
            f.add_term(s.clone(), c);
        }
        out.push(f.translate(&neg_point));
    }
    Ok(out)
}

fn solve_square<C: Field>(a: &[Vec<C>], b: &[C], tol: f64) -> Option<Vec<C>> {
    let n = a.first().map_or(0, Vec::len);
    let aug: Vec<Vec<C>> = a
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut r = r.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (red, piv) = C::rref(aug, tol);
    if piv.len() != n || piv.contains(&n) {
        return None;
    }
    Some(red.into_iter().map(|r| r[n].clone()).collect())
}

/// Space-separated integers.
pub fn hilbert_text(values: &[usize]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

/// Kill check for a dual basis: |(A•g)(p)| ≤ tol·(1 + ‖g‖).
pub fn kills<C: Field>(a: &DiffOp<C>, g: &Polynomial<C>, point: &[C], tol: f64) -> bool {
    let v = a.apply(g).evaluate(point);
    if C::EXACT {
        v.is_zero()
    } else {
        v.magnitude() <= tol * (1.0 + g.coeff_norm())
    }
}

/// Float rendering used in diagnostics.
pub fn describe_tolerance(tol: f64) -> String {
    format_float(tol)
}
