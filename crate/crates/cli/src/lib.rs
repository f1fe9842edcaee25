//! Command-line front end: problem files in, canonical text or JSON out.

pub mod problem;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use noether::algebra::{Complex64, Field, Monomial, Polynomial, Rational, Ring};
use noether::diffops::list_text;
use noether::dual::{
    eliminating_dual, g_corners, hilbert_text, truncated_dual, zero_dimensional_dual, DualConfig, DualSpace, Point,
    PointField,
};
use noether::groebner::Ideal;
use noether::linalg::exact_kernel;
use noether::noetherian::{
    ideal_from_noetherian_operators, map_to_punctual_hilbert, noetherian_operators, specialized_noetherian_operators,
    verify_primary_input, NoetherianOptions, PrimeData, Strategy,
};
use noether::numerical::{numerical_noetherian_operators, NumericalConfig, SamplerMode};

use problem::{parse_problem, variable_list, Problem};

/// Exit status for malformed input: files, flags, missing objects.
pub const EXIT_PARSE: i32 = 1;
/// Exit status for mathematical failures reported by the library.
pub const EXIT_DOMAIN: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "noether", version, about = "Noetherian operators, dual spaces and primary ideals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Problem file.
    pub file: PathBuf,
    /// Emit JSON instead of text.
    #[arg(long)]
    pub json: bool,
    /// Name of the ideal to use (default: the first `ideal`).
    #[arg(long)]
    pub ideal: Option<String>,
    /// Numerical tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Linear change of coordinates applied to every ideal and prime, e.g.
    /// `x1=x1+x3`; repeat for several variables. Points are then read in
    /// the new coordinates.
    #[arg(long, value_name = "VAR=EXPR")]
    pub substitute: Vec<String>,
}

#[derive(Args, Debug, Clone)]
pub struct PointArg {
    /// Point coordinates, e.g. `1.0,1.7320508`; or the name of a point in the file.
    #[arg(long, allow_hyphen_values = true)]
    pub point: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Noetherian operators of a P-primary ideal.
    NoetherianOps {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        prime: Option<String>,
        /// punctual-hilbert, macaulay or hybrid.
        #[arg(long)]
        strategy: Option<String>,
        #[arg(long)]
        dependent: Option<String>,
        /// Seed point for the hybrid strategy.
        #[command(flatten)]
        point: PointArg,
        #[arg(long)]
        seed: Option<u64>,
        /// Check that the ideal is P-primary before computing.
        #[arg(long)]
        verify_input: bool,
    },
    /// Noetherian operators specialized at a point of the variety.
    SpecializedOps {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        point: PointArg,
        #[arg(long)]
        dependent: Option<String>,
    },
    /// Noetherian operators interpolated from sampled points.
    NumericalOps {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        dependent: Option<String>,
        /// File with one point per line instead of the built-in sampler.
        #[arg(long)]
        points: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        /// Bound on numerator plus denominator degree.
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// The primary ideal described by Noetherian operators.
    IdealFromOps {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        prime: Option<String>,
        /// Name of the operator list (default: the first).
        #[arg(long)]
        operators: Option<String>,
        #[arg(long)]
        dependent: Option<String>,
    },
    /// Macaulay dual space at a point, complete or truncated.
    Dual {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        point: PointArg,
        /// Truncation degree; the complete dual of an isolated point if absent.
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Eliminating dual space with respect to some variables.
    EliminatingDual {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        point: PointArg,
        /// Variables to eliminate, e.g. `x1` or `x1,x2`.
        #[arg(long)]
        eliminate: Option<String>,
        /// Bound on the order in the eliminated variables.
        #[arg(long)]
        degree: Option<u32>,
        /// Optional bound on the total order.
        #[arg(long)]
        total: Option<u32>,
    },
    /// Local Hilbert function values.
    Hilbert {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        point: PointArg,
        /// Degrees to report: `a..b` (inclusive) or a single degree.
        #[arg(long)]
        degrees: String,
        /// Truncation degree for non-isolated points.
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Minimal generators of the local initial ideal.
    Gcorners {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        point: PointArg,
        /// Degree bound for positive-dimensional components.
        #[arg(long)]
        degree: Option<u32>,
        /// Also print a local standard basis.
        #[arg(long)]
        standard_basis: bool,
    },
    /// Point of the punctual Hilbert scheme attached to a primary ideal.
    HilbMap {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        prime: Option<String>,
        #[arg(long)]
        dependent: Option<String>,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::NoetherianOps { common, .. }
            | Command::SpecializedOps { common, .. }
            | Command::NumericalOps { common, .. }
            | Command::IdealFromOps { common, .. }
            | Command::Dual { common, .. }
            | Command::EliminatingDual { common, .. }
            | Command::Hilbert { common, .. }
            | Command::Gcorners { common, .. }
            | Command::HilbMap { common, .. } => common,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Command::NoetherianOps { .. } => "noetherian-ops",
            Command::SpecializedOps { .. } => "specialized-ops",
            Command::NumericalOps { .. } => "numerical-ops",
            Command::IdealFromOps { .. } => "ideal-from-ops",
            Command::Dual { .. } => "dual",
            Command::EliminatingDual { .. } => "eliminating-dual",
            Command::Hilbert { .. } => "hilbert",
            Command::Gcorners { .. } => "gcorners",
            Command::HilbMap { .. } => "hilb-map",
        }
    }
}

/// What a run printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Input(String),
    Domain(noether::Error),
}

impl From<noether::Error> for Failure {
    fn from(e: noether::Error) -> Self {
        Failure::Domain(e)
    }
}

fn input(msg: impl Into<String>) -> Failure {
    Failure::Input(msg.into())
}

struct Output {
    text: String,
    json: Value,
}

/// Parse arguments (the first is the program name) and run.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { 0 };
            let rendered = e.render().to_string();
            let (stdout, stderr) = if code == 0 { (rendered, String::new()) } else { (String::new(), rendered) };
            return Outcome { code, stdout, stderr };
        }
    };
    run_command(&cli.command)
}

pub fn run_command(cmd: &Command) -> Outcome {
    let common = cmd.common();
    let text = match std::fs::read_to_string(&common.file) {
        Ok(t) => t,
        Err(e) => return failure(EXIT_PARSE, format!("error: cannot read {}: {e}", common.file.display())),
    };
    let mut problem = match parse_problem(&text) {
        Ok(p) => p,
        Err(diags) => {
            let lines: Vec<String> = diags
                .iter()
                .map(|d| format!("{}:{d}", common.file.display()))
                .collect();
            return failure(EXIT_PARSE, lines.join("\n"));
        }
    };
    if !common.substitute.is_empty() {
        match linear_substitution(&problem.ring, &common.substitute) {
            Ok(images) => problem.apply_substitution(&images),
            Err(m) => return failure(EXIT_PARSE, format!("error: {m}")),
        }
    }
    match execute(cmd, &problem) {
        Ok(out) => {
            let stdout = if common.json {
                let envelope = json!({ "command": cmd.name(), "result": out.json });
                serde_json::to_string_pretty(&envelope).expect("serializable")
            } else {
                out.text
            };
            Outcome { code: 0, stdout: stdout + "\n", stderr: String::new() }
        }
        Err(Failure::Input(m)) => failure(EXIT_PARSE, format!("error: {m}")),
        Err(Failure::Domain(e)) => {
            let code = if matches!(e, noether::Error::Parse(_)) { EXIT_PARSE } else { EXIT_DOMAIN };
            let hint = if e == noether::Error::NoCoordinateSplit { " (see --substitute)" } else { "" };
            failure(code, format!("error: {e}{hint}"))
        }
    }
}

/// Images of the variables under `VAR=EXPR` assignments; the map must be
/// affine-linear and invertible.
pub fn linear_substitution(ring: &Ring, assignments: &[String]) -> Result<Vec<Polynomial<Rational>>, String> {
    let n = ring.arity();
    let mut images: Vec<Polynomial<Rational>> = (0..n).map(Polynomial::var).collect();
    let mut seen = Vec::new();
    for a in assignments {
        let (lhs, rhs) = a.split_once('=').ok_or(format!("expected VAR=EXPR, got '{a}'"))?;
        let v = ring.index_of(lhs.trim()).ok_or(format!("undeclared variable '{}'", lhs.trim()))?;
        if seen.contains(&v) {
            return Err(format!("variable '{}' substituted twice", lhs.trim()));
        }
        seen.push(v);
        let image = ring.parse(rhs).map_err(|e| format!("in '{a}': {e}"))?;
        if image.total_degree() > 1 {
            return Err(format!("substitution '{a}' is not linear"));
        }
        images[v] = image;
    }
    let linear: Vec<Vec<Rational>> = images
        .iter()
        .map(|g| (0..n).map(|j| g.coeff(&Monomial::var(j))).collect())
        .collect();
    if !exact_kernel(&linear, n).is_empty() {
        return Err("the substitution is not invertible".into());
    }
    Ok(images)
}

fn failure(code: i32, message: String) -> Outcome {
    Outcome { code, stdout: String::new(), stderr: message + "\n" }
}

fn dual_config(common: &Common, problem: &Problem) -> Result<DualConfig, Failure> {
    let mut cfg = DualConfig::default();
    if let Some(t) = common.tol.or(problem.options.tol) {
        if !(t > 0.0 && t < 1.0) {
            return Err(input(format!("tolerance must lie in (0, 1), got {t}")));
        }
        cfg.tol = t;
    }
    Ok(cfg)
}

fn vars_flag(problem: &Problem, flag: &Option<String>, file: &Option<Vec<usize>>) -> Result<Option<Vec<usize>>, Failure> {
    match flag {
        Some(text) => variable_list(&problem.ring, text).map(Some).map_err(Failure::Input),
        None => Ok(file.clone()),
    }
}

/// `--point` holds either coordinates or the name of a point in the file.
fn resolve_point(problem: &Problem, arg: &PointArg) -> Result<Point, Failure> {
    let p = match &arg.point {
        Some(text) if problem.points.iter().any(|(n, _)| n == text) => problem.point(Some(text)),
        Some(text) => Point::parse(text).map_err(|e| e.to_string()),
        None => problem.point(None),
    }
    .map_err(Failure::Input)?;
    if p.arity() != problem.ring.arity() {
        return Err(input(format!(
            "point has {} coordinates, the ring has {} variables",
            p.arity(),
            problem.ring.arity()
        )));
    }
    Ok(p)
}

fn parse_degrees(text: &str) -> Result<Vec<u32>, Failure> {
    let bad = || input(format!("invalid degree range '{text}' (expected a..b or a single degree)"));
    match text.split_once("..") {
        Some((a, b)) => {
            let a: u32 = a.trim().parse().map_err(|_| bad())?;
            let b: u32 = b.trim().parse().map_err(|_| bad())?;
            if a > b {
                return Err(bad());
            }
            Ok((a..=b).collect())
        }
        None => Ok(vec![text.trim().parse().map_err(|_| bad())?]),
    }
}

fn dual_output<C: Field>(dual: &DualSpace<C>, problem: &Problem) -> Output {
    Output {
        text: dual.basis_text(&problem.ring),
        json: serde_json::to_value(dual.to_json(&problem.ring)).expect("serializable"),
    }
}

fn dual_at<C: PointField>(point: &[C], ideal: &Ideal, degree: Option<u32>, cfg: &DualConfig) -> noether::Result<DualSpace<C>> {
    match degree {
        Some(d) => truncated_dual(point, ideal, d, cfg),
        None => zero_dimensional_dual(point, ideal, cfg),
    }
}

fn hilbert_at<C: PointField>(
    point: &[C],
    ideal: &Ideal,
    degrees: &[u32],
    degree: Option<u32>,
    cfg: &DualConfig,
) -> noether::Result<Vec<usize>> {
    let dual = dual_at(point, ideal, degree, cfg)?;
    degrees.iter().map(|&i| dual.hilbert_function(i)).collect()
}

fn gcorners_at<C: PointField>(
    point: &[C],
    ideal: &Ideal,
    sb: bool,
    degree: Option<u32>,
    cfg: &DualConfig,
    problem: &Problem,
) -> noether::Result<Output> {
    let g = g_corners(point, ideal, sb, degree, cfg)?;
    let ring = &problem.ring;
    let corner_texts: Vec<String> = g.text(ring).split(' ').filter(|s| !s.is_empty()).map(String::from).collect();
    let mut text = g.text(ring);
    let mut json = json!({ "corners": corner_texts });
    if let Some(basis) = &g.standard_basis {
        let polys: Vec<String> = basis.iter().map(|f| ring.print(f)).collect();
        text.push_str(&format!("\n{{{}}}", polys.join(", ")));
        json["standardBasis"] = json!(polys);
    }
    Ok(Output { text, json })
}

fn specialized_at<C: PointField>(
    point: &[C],
    ideal: &Ideal,
    dependent: &[usize],
    cfg: &DualConfig,
    problem: &Problem,
) -> noether::Result<Output> {
    let ops = specialized_noetherian_operators(ideal, point, dependent, cfg)?;
    let ring = &problem.ring;
    Ok(Output {
        text: list_text(&ops, ring),
        json: json!({
            "operators": ops.iter().map(|a| a.json_terms(ring)).collect::<Vec<_>>(),
            "multiplicity": ops.len(),
        }),
    })
}

fn read_points(path: &PathBuf, arity: usize) -> Result<Vec<Vec<Complex64>>, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| input(format!("cannot read {}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let p = Point::parse(line).map_err(|e| input(format!("{}:{}: {e}", path.display(), k + 1)))?;
        if p.arity() != arity {
            return Err(input(format!(
                "{}:{}: point has {} coordinates, expected {arity}",
                path.display(),
                k + 1,
                p.arity()
            )));
        }
        out.push(p.to_complex());
    }
    Ok(out)
}

fn execute(cmd: &Command, problem: &Problem) -> Result<Output, Failure> {
    let common = cmd.common();
    let cfg = dual_config(common, problem)?;
    let ring = &problem.ring;
    let opts_file = &problem.options;
    let ideal = || problem.ideal(common.ideal.as_deref()).map_err(Failure::Input);
    match cmd {
        Command::NoetherianOps { prime, strategy, dependent, point, seed, verify_input, .. } => {
            let q = ideal()?;
            let p = problem.prime(prime.as_deref()).map_err(Failure::Input)?;
            let strategy: Strategy = match strategy {
                Some(s) => s.parse().map_err(|e: noether::Error| input(e.to_string()))?,
                None => opts_file.strategy.unwrap_or(Strategy::PunctualHilbert),
            };
            let mut opts = NoetherianOptions {
                dual: cfg,
                dependent: vars_flag(problem, dependent, &opts_file.dependent)?,
                seed: seed.or(opts_file.seed).unwrap_or(1),
                ..Default::default()
            };
            if point.point.is_some() {
                opts.seed_point = Some(resolve_point(problem, point)?.to_complex());
            }
            if *verify_input {
                verify_primary_input(&q, &p, &opts)?;
            }
            let cert = noetherian_operators(&q, &p, strategy, &opts)?;
            let mut json = serde_json::to_value(cert.to_json()).expect("serializable");
            json["strategy"] = json!(strategy.to_string());
            Ok(Output { text: cert.to_text(), json })
        }
        Command::SpecializedOps { point, dependent, .. } => {
            let q = ideal()?;
            let dependent = vars_flag(problem, dependent, &opts_file.dependent)?
                .ok_or_else(|| input("specialized-ops needs --dependent"))?;
            let out = match resolve_point(problem, point)? {
                Point::Exact(v) => specialized_at::<Rational>(&v, &q, &dependent, &cfg, problem)?,
                Point::Approx(v) => specialized_at::<Complex64>(&v, &q, &dependent, &cfg, problem)?,
            };
            Ok(out)
        }
        Command::NumericalOps { dependent, points, seed, max_degree, .. } => {
            let q = ideal()?;
            let dependent = vars_flag(problem, dependent, &opts_file.dependent)?
                .ok_or_else(|| input("numerical-ops needs --dependent"))?;
            let mut ncfg = NumericalConfig { dual: cfg, ..Default::default() };
            ncfg.sampler.seed = seed.or(opts_file.seed).unwrap_or(1);
            if let Some(d) = max_degree.or(opts_file.max_degree) {
                ncfg.max_degree = d;
            }
            if let Some(path) = points {
                ncfg.sampler.mode = SamplerMode::Points(read_points(path, ring.arity())?);
            }
            let ops = numerical_noetherian_operators(&q, &dependent, &ncfg)?;
            Ok(Output {
                text: list_text(&ops, ring),
                json: json!({
                    "operators": ops.iter().map(|a| a.json_terms(ring)).collect::<Vec<_>>(),
                    "multiplicity": ops.len(),
                    "independentVariables": (0..ring.arity())
                        .filter(|v| !dependent.contains(v))
                        .map(|v| ring.names()[v].clone())
                        .collect::<Vec<_>>(),
                }),
            })
        }
        Command::IdealFromOps { prime, operators, dependent, .. } => {
            let p = problem.prime(prime.as_deref()).map_err(Failure::Input)?;
            let ops = problem.operator_list(operators.as_deref()).map_err(Failure::Input)?;
            let opts = NoetherianOptions {
                dual: cfg,
                dependent: vars_flag(problem, dependent, &opts_file.dependent)?,
                ..Default::default()
            };
            let q = ideal_from_noetherian_operators(&ops, &p, &opts)?;
            let gens: Vec<String> = q.gens().iter().map(|g| ring.print(g)).collect();
            Ok(Output { text: q.to_text(), json: json!({ "ideal": gens }) })
        }
        Command::Dual { point, degree, .. } => {
            let q = ideal()?;
            let degree = degree.or(opts_file.degree);
            Ok(match resolve_point(problem, point)? {
                Point::Exact(v) => dual_output(&dual_at(&v, &q, degree, &cfg)?, problem),
                Point::Approx(v) => dual_output(&dual_at(&v, &q, degree, &cfg)?, problem),
            })
        }
        Command::EliminatingDual { point, eliminate, degree, total, .. } => {
            let q = ideal()?;
            let v = vars_flag(problem, eliminate, &opts_file.eliminate)?
                .ok_or_else(|| input("eliminating-dual needs --eliminate"))?;
            let d = degree.or(opts_file.degree).ok_or_else(|| input("eliminating-dual needs --degree"))?;
            let total = total.or(opts_file.total);
            let mut out = match resolve_point(problem, point)? {
                Point::Exact(p) => dual_output(&eliminating_dual(&p, &q, &v, d, total, &cfg)?, problem),
                Point::Approx(p) => dual_output(&eliminating_dual(&p, &q, &v, d, total, &cfg)?, problem),
            };
            out.json["eliminate"] = json!(v.iter().map(|&i| ring.names()[i].clone()).collect::<Vec<_>>());
            out.json["eliminationDegree"] = json!(d);
            Ok(out)
        }
        Command::Hilbert { point, degrees, degree, .. } => {
            let q = ideal()?;
            let degrees = parse_degrees(degrees)?;
            let degree = degree.or(opts_file.degree);
            let values = match resolve_point(problem, point)? {
                Point::Exact(v) => hilbert_at(&v, &q, &degrees, degree, &cfg)?,
                Point::Approx(v) => hilbert_at(&v, &q, &degrees, degree, &cfg)?,
            };
            Ok(Output { text: hilbert_text(&values), json: json!({ "degrees": degrees, "values": values }) })
        }
        Command::Gcorners { point, degree, standard_basis, .. } => {
            let q = ideal()?;
            let degree = degree.or(opts_file.degree);
            Ok(match resolve_point(problem, point)? {
                Point::Exact(v) => gcorners_at(&v, &q, *standard_basis, degree, &cfg, problem)?,
                Point::Approx(v) => gcorners_at(&v, &q, *standard_basis, degree, &cfg, problem)?,
            })
        }
        Command::HilbMap { prime, dependent, .. } => {
            let q = ideal()?;
            let p = problem.prime(prime.as_deref()).map_err(Failure::Input)?;
            let dependent = vars_flag(problem, dependent, &opts_file.dependent)?;
            let data = PrimeData::new(&p, dependent.as_deref())?;
            let hp = map_to_punctual_hilbert(&q, &data, &cfg)?;
            Ok(Output { text: hp.to_text(), json: serde_json::to_value(hp.to_json()).expect("serializable") })
        }
    }
}
