//! Problem files: a ring declaration followed by named ideals, primes,
//! points, operator lists and options, each statement ending in `;`.
//!
//! ```text
//! ring QQ[x1,x2,x3];
//! ideal Q = x1^2, x2^2, x1 - x2*x3;
//! prime P = x1, x2;
//! point p = 0, 0, 5;
//! operators A = 1, x3*dx1 + dx2;
//! option strategy = punctual-hilbert;
//! ```

use std::fmt;

use noether::algebra::{FieldTag, Polynomial, Rational, Ring};
use noether::diffops::DiffOp;
use noether::dual::Point;
use noether::groebner::Ideal;
use noether::noetherian::Strategy;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealKind {
    Ideal,
    Prime,
}

impl IdealKind {
    fn keyword(self) -> &'static str {
        match self {
            IdealKind::Ideal => "ideal",
            IdealKind::Prime => "prime",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NamedIdeal {
    pub name: String,
    pub kind: IdealKind,
    pub gens: Vec<Polynomial<Rational>>,
}

/// Options that may also be given as command-line flags; flags win.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FileOptions {
    pub strategy: Option<Strategy>,
    pub dependent: Option<Vec<usize>>,
    pub eliminate: Option<Vec<usize>>,
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    pub degree: Option<u32>,
    pub total: Option<u32>,
    pub max_degree: Option<u32>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Problem {
    pub ring: Ring,
    pub ideals: Vec<NamedIdeal>,
    pub points: Vec<(String, Point)>,
    pub operators: Vec<(String, Vec<DiffOp<Rational>>)>,
    pub options: FileOptions,
}

impl Problem {
    /// The named ideal or prime, else the first `ideal` statement.
    pub fn ideal(&self, name: Option<&str>) -> Result<Ideal, String> {
        self.lookup(name, IdealKind::Ideal)
    }

    /// The named ideal or prime, else the first `prime` statement.
    pub fn prime(&self, name: Option<&str>) -> Result<Ideal, String> {
        self.lookup(name, IdealKind::Prime)
    }

    fn lookup(&self, name: Option<&str>, kind: IdealKind) -> Result<Ideal, String> {
        let found = match name {
            Some(n) => self.ideals.iter().find(|i| i.name == n).ok_or(format!("no ideal named '{n}'"))?,
            None => self
                .ideals
                .iter()
                .find(|i| i.kind == kind)
                .ok_or(format!("the problem declares no {}", kind.keyword()))?,
        };
        Ideal::new(&self.ring, found.gens.clone()).map_err(|e| e.to_string())
    }

    pub fn point(&self, name: Option<&str>) -> Result<Point, String> {
        match name {
            Some(n) => self.points.iter().find(|(m, _)| m == n).map(|(_, p)| p.clone()).ok_or(format!("no point named '{n}'")),
            None => self.points.first().map(|(_, p)| p.clone()).ok_or("the problem declares no point".to_string()),
        }
    }

    pub fn operator_list(&self, name: Option<&str>) -> Result<Vec<DiffOp<Rational>>, String> {
        match name {
            Some(n) => self
                .operators
                .iter()
                .find(|(m, _)| m == n)
                .map(|(_, a)| a.clone())
                .ok_or(format!("no operator list named '{n}'")),
            None => self
                .operators
                .first()
                .map(|(_, a)| a.clone())
                .ok_or("the problem declares no operators".to_string()),
        }
    }

    /// Replace every variable of every ideal and prime by its image.
    pub fn apply_substitution(&mut self, images: &[Polynomial<Rational>]) {
        for i in &mut self.ideals {
            i.gens = i.gens.iter().map(|g| g.compose(images)).collect();
        }
    }

    /// Comma-separated variable names to indices.
    pub fn variables(&self, text: &str) -> Result<Vec<usize>, String> {
        variable_list(&self.ring, text)
    }
}

pub fn variable_list(ring: &Ring, text: &str) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for name in text.split(',').map(str::trim) {
        let i = ring.index_of(name).ok_or(format!("undeclared variable '{name}'"))?;
        if out.contains(&i) {
            return Err(format!("variable '{name}' listed twice"));
        }
        out.push(i);
    }
    Ok(out)
}

/// Float text that reads back as the same approximate value.
fn float_text(x: f64) -> String {
    let s = format!("{x}");
    if s.contains('.') || s.contains("inf") || s.contains("NaN") {
        s
    } else {
        format!("{s}.0")
    }
}

fn point_text(p: &Point) -> String {
    match p {
        Point::Exact(v) => v.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(", "),
        Point::Approx(v) => v
            .iter()
            .map(|z| {
                if z.im == 0.0 {
                    float_text(z.re)
                } else {
                    let sign = if z.im < 0.0 { "-" } else { "+" };
                    format!("{}{}{}i", float_text(z.re), sign, float_text(z.im.abs()))
                }
            })
            .collect::<Vec<_>>()
            .join(", "),
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = &self.ring;
        writeln!(f, "ring {}[{}];", r.field().name(), r.names().join(","))?;
        for i in &self.ideals {
            let g: Vec<String> = i.gens.iter().map(|g| r.print(g)).collect();
            writeln!(f, "{} {} = {};", i.kind.keyword(), i.name, g.join(", "))?;
        }
        for (name, p) in &self.points {
            writeln!(f, "point {name} = {};", point_text(p))?;
        }
        for (name, ops) in &self.operators {
            let a: Vec<String> = ops.iter().map(|a| a.display(r)).collect();
            writeln!(f, "operators {name} = {};", a.join(", "))?;
        }
        let names = |v: &[usize]| v.iter().map(|&i| r.names()[i].clone()).collect::<Vec<_>>().join(", ");
        let o = &self.options;
        if let Some(s) = o.strategy {
            writeln!(f, "option strategy = {s};")?;
        }
        if let Some(v) = &o.dependent {
            writeln!(f, "option dependent = {};", names(v))?;
        }
        if let Some(v) = &o.eliminate {
            writeln!(f, "option eliminate = {};", names(v))?;
        }
        if let Some(t) = o.tol {
            writeln!(f, "option tol = {};", float_text(t))?;
        }
        if let Some(s) = o.seed {
            writeln!(f, "option seed = {s};")?;
        }
        if let Some(d) = o.degree {
            writeln!(f, "option degree = {d};")?;
        }
        if let Some(d) = o.total {
            writeln!(f, "option total = {d};")?;
        }
        if let Some(d) = o.max_degree {
            writeln!(f, "option max-degree = {d};")?;
        }
        Ok(())
    }
}

/// Byte offsets of line starts, for offset → (line, column).
struct Source<'a> {
    text: &'a str,
    line_starts: Vec<usize>,
}

impl<'a> Source<'a> {
    fn new(text: &'a str) -> Self {
        let mut line_starts = vec![0];
        line_starts.extend(text.match_indices('\n').map(|(i, _)| i + 1));
        Source { text, line_starts }
    }

    fn diag(&self, offset: usize, message: impl Into<String>) -> Diagnostic {
        let offset = offset.min(self.text.len());
        let line = self.line_starts.partition_point(|&s| s <= offset);
        let start = self.line_starts[line - 1];
        let column = self.text[start..offset].chars().count() + 1;
        Diagnostic { line, column, message: message.into() }
    }
}

/// A slice of the source with its absolute offset.
#[derive(Clone, Copy)]
struct Span<'a> {
    text: &'a str,
    offset: usize,
}

impl<'a> Span<'a> {
    fn trim(self) -> Span<'a> {
        let lead = self.text.len() - self.text.trim_start().len();
        Span { text: self.text.trim(), offset: self.offset + lead }
    }

    fn split_at(self, i: usize) -> (Span<'a>, Span<'a>) {
        (
            Span { text: &self.text[..i], offset: self.offset },
            Span { text: &self.text[i..], offset: self.offset + i },
        )
    }

    /// Pieces between commas outside parentheses and brackets.
    fn split_commas(self) -> Vec<Span<'a>> {
        let mut out = Vec::new();
        let mut depth = 0i32;
        let mut start = 0;
        for (i, c) in self.text.char_indices() {
            match c {
                '(' | '[' => depth += 1,
                ')' | ']' => depth -= 1,
                ',' if depth == 0 => {
                    out.push(Span { text: &self.text[start..i], offset: self.offset + start });
                    start = i + 1;
                }
                _ => {}
            }
        }
        out.push(Span { text: &self.text[start..], offset: self.offset + start });
        out
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Source with comments (`#` or `//` to end of line) blanked out, so offsets
/// stay valid.
fn strip_comments(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for line in text.split_inclusive('\n') {
        let cut = match (line.find('#'), line.find("//")) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        match cut {
            Some(k) => {
                out.push_str(&line[..k]);
                for c in line[k..].chars() {
                    if c == '\n' {
                        out.push('\n');
                    } else {
                        out.extend(std::iter::repeat(' ').take(c.len_utf8()));
                    }
                }
            }
            None => out.push_str(line),
        }
    }
    out
}

struct Parser<'a> {
    src: Source<'a>,
    diags: Vec<Diagnostic>,
    ring: Option<Ring>,
    ideals: Vec<NamedIdeal>,
    points: Vec<(String, Point)>,
    operators: Vec<(String, Vec<DiffOp<Rational>>)>,
    options: FileOptions,
    names: Vec<String>,
}

pub fn parse_problem(text: &str) -> Result<Problem, Vec<Diagnostic>> {
    let clean = strip_comments(text);
    let mut p = Parser {
        src: Source::new(&clean),
        diags: Vec::new(),
        ring: None,
        ideals: Vec::new(),
        points: Vec::new(),
        operators: Vec::new(),
        options: FileOptions::default(),
        names: Vec::new(),
    };
    let whole = Span { text: &clean, offset: 0 };
    let mut rest = whole;
    loop {
        match rest.text.find(';') {
            Some(i) => {
                let (stmt, tail) = rest.split_at(i);
                p.statement(stmt.trim());
                rest = tail.split_at(1).1;
            }
            None => {
                let tail = rest.trim();
                if !tail.text.is_empty() {
                    let end = tail.offset + tail.text.len();
                    p.diags.push(p.src.diag(end, "expected ';' at end of statement"));
                }
                break;
            }
        }
    }
    if p.ring.is_none() && p.diags.is_empty() {
        p.diags.push(p.src.diag(0, "missing ring declaration"));
    }
    if !p.diags.is_empty() {
        return Err(p.diags);
    }
    Ok(Problem {
        ring: p.ring.unwrap(),
        ideals: p.ideals,
        points: p.points,
        operators: p.operators,
        options: p.options,
    })
}

impl<'a> Parser<'a> {
    fn error(&mut self, offset: usize, message: impl Into<String>) {
        let d = self.src.diag(offset, message);
        self.diags.push(d);
    }

    fn statement(&mut self, stmt: Span<'_>) {
        if stmt.text.is_empty() {
            return;
        }
        let kw_len = stmt.text.find(|c: char| !(c.is_ascii_alphanumeric() || c == '_')).unwrap_or(stmt.text.len());
        let (kw, body) = stmt.split_at(kw_len);
        if kw.text == "ring" {
            if self.ring.is_some() {
                self.error(kw.offset, "ring already declared");
                return;
            }
            self.ring_decl(body.trim());
            return;
        }
        let known = ["ideal", "prime", "point", "operators", "option"];
        if !known.contains(&kw.text) {
            self.error(stmt.offset, format!("unknown statement '{}'", stmt.text.split_whitespace().next().unwrap_or("")));
            return;
        }
        let Some(ring) = self.ring.clone() else {
            self.error(kw.offset, "the ring must be declared first");
            return;
        };
        let Some(eq) = body.text.find('=') else {
            self.error(body.offset + body.text.len(), format!("expected '=' in {} statement", kw.text));
            return;
        };
        let (name, value) = body.split_at(eq);
        let name = name.trim();
        let value = value.split_at(1).1.trim();
        if !is_identifier(name.text) {
            self.error(name.offset, format!("expected a name, found '{}'", name.text));
            return;
        }
        if kw.text == "option" {
            self.option(&ring, name, value);
            return;
        }
        if self.names.iter().any(|n| n == name.text) {
            self.error(name.offset, format!("'{}' is already defined", name.text));
            return;
        }
        self.names.push(name.text.to_string());
        match kw.text {
            "ideal" | "prime" => {
                let kind = if kw.text == "ideal" { IdealKind::Ideal } else { IdealKind::Prime };
                if value.text.is_empty() {
                    self.error(value.offset, format!("{} requires at least one generator", kw.text));
                    return;
                }
                let mut gens = Vec::new();
                for piece in value.split_commas() {
                    if piece.text.trim().is_empty() {
                        self.error(piece.offset, "empty generator");
                        continue;
                    }
                    match ring.parse(piece.text) {
                        Ok(g) => gens.push(g),
                        Err(e) => self.error(piece.offset + e.offset, e.message),
                    }
                }
                self.ideals.push(NamedIdeal { name: name.text.to_string(), kind, gens });
            }
            "point" => match Point::parse(value.text) {
                Ok(pt) if pt.arity() == ring.arity() => self.points.push((name.text.to_string(), pt)),
                Ok(pt) => self.error(
                    value.offset,
                    format!("point has {} coordinates, the ring has {} variables", pt.arity(), ring.arity()),
                ),
                Err(e) => self.error(value.offset, e.to_string()),
            },
            _ => {
                if value.text.is_empty() {
                    self.error(value.offset, "operators requires at least one operator");
                    return;
                }
                let mut ops = Vec::new();
                for piece in value.split_commas() {
                    match DiffOp::parse(&ring, piece.text) {
                        Ok(a) => ops.push(a),
                        Err(e) => self.error(piece.offset + e.offset, e.message),
                    }
                }
                self.operators.push((name.text.to_string(), ops));
            }
        }
    }

    fn ring_decl(&mut self, body: Span<'_>) {
        let (Some(open), true) = (body.text.find('['), body.text.ends_with(']')) else {
            self.error(body.offset, "expected a ring such as QQ[x1,x2]");
            return;
        };
        let field = match body.text[..open].trim() {
            "QQ" => FieldTag::Rational,
            "CC" => FieldTag::ComplexDouble,
            other => {
                self.error(body.offset, format!("unsupported coefficient field '{other}' (expected QQ or CC)"));
                return;
            }
        };
        let inner = Span { text: &body.text[open + 1..body.text.len() - 1], offset: body.offset + open + 1 };
        let mut names = Vec::new();
        for piece in inner.split_commas() {
            let piece = piece.trim();
            if !is_identifier(piece.text) {
                self.error(piece.offset, format!("invalid variable name '{}'", piece.text));
                return;
            }
            names.push(piece.text.to_string());
        }
        match Ring::new(names, field) {
            Ok(r) => self.ring = Some(r),
            Err(e) => self.error(body.offset, e.to_string()),
        }
    }

    fn option(&mut self, ring: &Ring, key: Span<'_>, value: Span<'_>) {
        let at = value.offset;
        let o = &mut self.options;
        let res: Result<(), String> = match key.text {
            "strategy" => value.text.parse().map(|s| o.strategy = Some(s)).map_err(|e: noether::Error| e.to_string()),
            "dependent" => variable_list(ring, value.text).map(|v| o.dependent = Some(v)),
            "eliminate" => variable_list(ring, value.text).map(|v| o.eliminate = Some(v)),
            "tol" => value.text.parse().map(|t| o.tol = Some(t)).map_err(|_| format!("invalid tolerance '{}'", value.text)),
            "seed" => value.text.parse().map(|s| o.seed = Some(s)).map_err(|_| format!("invalid seed '{}'", value.text)),
            "degree" | "total" | "max-degree" => match value.text.parse::<u32>() {
                Ok(d) => {
                    match key.text {
                        "degree" => o.degree = Some(d),
                        "total" => o.total = Some(d),
                        _ => o.max_degree = Some(d),
                    }
                    Ok(())
                }
                Err(_) => Err(format!("invalid degree '{}'", value.text)),
            },
            other => {
                self.error(key.offset, format!("unknown option '{other}'"));
                return;
            }
        };
        if let Err(m) = res {
            self.error(at, m);
        }
    }
}
