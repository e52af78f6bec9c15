//! Text formats: system documents, certificates and reports.
//!
//! See FORMAT.md at the repository root for the grammar.

mod expr;
mod lex;
mod write;

use std::fmt;

use nsatz_core::field::prime_power;
use nsatz_core::{Certificate, EvalSet, FieldDesc, FieldElem, Mode, MultiPoly, PolySystem};

use expr::{Ctx, ExprParser};
use lex::{lex, Tok, Token};

pub use expr::{MAX_COEFF_BITS, MAX_DEGREE, MAX_NESTING, MAX_TERMS, MAX_WORK};
pub use write::{
    certificate_kv, lower_bound_kv, lower_bound_text, min_degree_kv, min_degree_text, reduced_system_text,
    verify_kv, verify_text, write_certificate, write_system,
};

/// Largest document accepted, in bytes.
pub const MAX_INPUT: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError { line, column, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

/// A parsed system together with its variable names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemDoc {
    pub vars: Vec<String>,
    pub system: PolySystem,
}

/// A parsed certificate together with its field and variable names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertDoc {
    pub field: FieldDesc,
    pub vars: Vec<String>,
    pub certificate: Certificate,
}

struct Line<'a> {
    no: usize,
    /// Directive word, including a trailing ':' if present.
    word: &'a str,
    word_col: usize,
    rest: &'a str,
    rest_col: usize,
}

fn split_lines(text: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.split('\n').enumerate() {
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        let body = match raw.find('#') {
            Some(j) => &raw[..j],
            None => raw,
        };
        let trimmed = body.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let lead = body[..body.len() - trimmed.len()].chars().count();
        let mut end = trimmed
            .char_indices()
            .find(|&(_, c)| !(c.is_ascii_alphanumeric() || c == '_'))
            .map_or(trimmed.len(), |(j, _)| j);
        if trimmed[end..].starts_with(':') {
            end += 1;
        }
        let word = &trimmed[..end.max(trimmed.chars().next().map_or(0, char::len_utf8))];
        let rest = &trimmed[word.len()..];
        out.push(Line {
            no: i + 1,
            word,
            word_col: lead + 1,
            rest,
            rest_col: lead + word.chars().count() + 1,
        });
    }
    out
}

impl Line<'_> {
    fn tokens(&self) -> Result<Vec<Token>, ParseError> {
        lex(self.rest, self.no, self.rest_col)
    }

    fn end_col(&self) -> usize {
        self.rest_col + self.rest.chars().count()
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.no, self.word_col, msg)
    }
}

/// Decodes bytes as UTF-8, reporting the position of the first bad byte.
pub fn decode(bytes: &[u8]) -> Result<&str, ParseError> {
    if bytes.len() > MAX_INPUT {
        return Err(ParseError::new(1, 1, format!("input exceeds {MAX_INPUT} bytes")));
    }
    std::str::from_utf8(bytes).map_err(|e| {
        let good = &bytes[..e.valid_up_to()];
        let line = good.iter().filter(|&&b| b == b'\n').count() + 1;
        let start = good.iter().rposition(|&b| b == b'\n').map_or(0, |j| j + 1);
        let column = std::str::from_utf8(&good[start..]).map_or(1, |s| s.chars().count() + 1);
        ParseError::new(line, column, "input is not valid UTF-8")
    })
}

fn parse_field(line: &Line) -> Result<FieldDesc, ParseError> {
    let toks = line.tokens()?;
    let at = |i: usize| toks.get(i).map_or(line.end_col(), |t| t.col);
    let err = |i: usize, msg: &str| ParseError::new(line.no, at(i), msg);
    let int = |i: usize| -> Result<u64, ParseError> {
        match toks.get(i).map(|t| &t.tok) {
            Some(Tok::Int(d)) => d.parse::<u64>().map_err(|_| err(i, "number too large")),
            _ => Err(err(i, "expected a number")),
        }
    };
    let sym = |i: usize, c: char| matches!(toks.get(i).map(|t| &t.tok), Some(Tok::Sym(s)) if *s == c);
    match toks.first().map(|t| &t.tok) {
        Some(Tok::Ident(name)) if name == "QQ" => {
            if toks.len() > 1 {
                return Err(err(1, "unexpected text after QQ"));
            }
            Ok(FieldDesc::rationals())
        }
        Some(Tok::Ident(name)) if name == "GF" => {
            if !sym(1, '(') {
                return Err(err(1, "expected '('"));
            }
            let base = int(2)?;
            let (mut i, exp) = if sym(3, '^') { (6, Some(int(4)?)) } else { (4, None) };
            if !sym(i - 1, ')') {
                return Err(err(i - 1, "expected ')'"));
            }
            let (p, k) = match exp {
                Some(k) => {
                    let k = u32::try_from(k).map_err(|_| err(4, "degree too large"))?;
                    if k == 0 {
                        return Err(err(4, "degree must be positive"));
                    }
                    (base, k)
                }
                None if base > 1 << 32 => return Err(err(2, "field too large")),
                None => prime_power(base).ok_or_else(|| err(2, &format!("{base} is not a prime power")))?,
            };
            let modulus = match toks.get(i).map(|t| &t.tok) {
                None => None,
                Some(Tok::Ident(m)) if m == "mod" => {
                    i += 1;
                    Some(parse_modulus(line, &toks[i..], p)?)
                }
                Some(_) => return Err(err(i, "expected 'mod' or end of line")),
            };
            let built = match (k, &modulus) {
                (1, None) => FieldDesc::prime(p),
                (1, Some(_)) => return Err(err(i, "a prime field takes no modulus")),
                (k, m) => FieldDesc::extension(p, k, m.as_deref()),
            };
            built.map_err(|e| err(2, &e.to_string()))
        }
        _ => Err(err(0, "expected QQ or GF(...)")),
    }
}

fn parse_modulus(line: &Line, toks: &[Token], p: u64) -> Result<Vec<u64>, ParseError> {
    let base = FieldDesc::prime(p).map_err(|e| line.err(e.to_string()))?;
    let names = vec!["t".to_string()];
    let ctx = Ctx { field: &base, vars: &names, allow_vars: true };
    let mut parser = ExprParser::new(&ctx, toks, line.no, line.end_col());
    let poly = parser.expr()?;
    parser.expect_end()?;
    let coeffs = poly.univariate_coeffs().map_err(|e| line.err(e.to_string()))?;
    Ok(coeffs
        .iter()
        .map(|c| match c {
            FieldElem::Finite(v) => *v,
            FieldElem::Rational(_) => unreachable!("prime field"),
        })
        .collect())
}

fn parse_vars(line: &Line) -> Result<Vec<String>, ParseError> {
    let mut names: Vec<String> = Vec::new();
    for t in line.tokens()? {
        match t.tok {
            Tok::Sym(',') => {}
            Tok::Ident(name) => {
                if name == "t" {
                    return Err(ParseError::new(line.no, t.col, "t is reserved for extension-field coefficients"));
                }
                if names.contains(&name) {
                    return Err(ParseError::new(line.no, t.col, format!("variable {name} declared twice")));
                }
                names.push(name);
            }
            other => {
                return Err(ParseError::new(line.no, t.col, format!("expected a variable name, found {}", expr::describe(&other))))
            }
        }
    }
    if names.is_empty() {
        return Err(line.err("vars needs at least one name"));
    }
    Ok(names)
}

fn parse_poly(line: &Line, field: &FieldDesc, vars: &[String]) -> Result<MultiPoly, ParseError> {
    let toks = line.tokens()?;
    let ctx = Ctx { field, vars, allow_vars: true };
    let mut parser = ExprParser::new(&ctx, &toks, line.no, line.end_col());
    let p = parser.expr()?;
    parser.expect_end()?;
    Ok(p)
}

/// Parses a constant (no variables) at the parser's position.
fn constant(parser: &mut ExprParser, n: usize) -> Result<FieldElem, ParseError> {
    Ok(parser.expr()?.coefficient(&vec![0; n]))
}

fn parse_points(line: &Line, field: &FieldDesc, vars: &[String]) -> Result<EvalSet, ParseError> {
    let toks = line.tokens()?;
    if let [Token { tok: Tok::Ident(w), .. }] = toks.as_slice() {
        if w == "all" {
            return Ok(EvalSet::All);
        }
    }
    let ctx = Ctx { field, vars, allow_vars: false };
    let mut parser = ExprParser::new(&ctx, &toks, line.no, line.end_col());
    let mut points = Vec::new();
    loop {
        parser.expect_sym('(')?;
        let mut pt = Vec::with_capacity(vars.len());
        loop {
            pt.push(constant(&mut parser, vars.len())?);
            if parser.at_sym(',') {
                parser.bump();
            } else {
                break;
            }
        }
        let close = parser.col();
        parser.expect_sym(')')?;
        if pt.len() != vars.len() {
            return Err(ParseError::new(
                line.no,
                close,
                format!("point has {} coordinates, expected {}", pt.len(), vars.len()),
            ));
        }
        if points.contains(&pt) {
            return Err(ParseError::new(line.no, close, "duplicate point"));
        }
        points.push(pt);
        if parser.at_end() {
            break;
        }
        parser.expect_sym(',')?;
    }
    EvalSet::explicit(field, vars.len(), points).map_err(|e| line.err(e.to_string()))
}

fn parse_values(line: &Line, field: &FieldDesc, vars: &[String]) -> Result<Vec<FieldElem>, ParseError> {
    let toks = line.tokens()?;
    let ctx = Ctx { field, vars, allow_vars: false };
    let mut parser = ExprParser::new(&ctx, &toks, line.no, line.end_col());
    let mut out = vec![constant(&mut parser, vars.len())?];
    while parser.at_sym(',') {
        parser.bump();
        out.push(constant(&mut parser, vars.len())?);
    }
    parser.expect_end()?;
    Ok(out)
}

/// Header state shared by system and certificate documents.
#[derive(Default)]
struct Header {
    field: Option<FieldDesc>,
    vars: Option<Vec<String>>,
}

impl Header {
    /// Handles `field` and `vars`; returns false for other directives.
    fn take(&mut self, line: &Line) -> Result<bool, ParseError> {
        match line.word {
            "field" => {
                if self.field.is_some() {
                    return Err(line.err("duplicate field line"));
                }
                self.field = Some(parse_field(line)?);
                Ok(true)
            }
            "vars" => {
                if self.field.is_none() {
                    return Err(line.err("vars before field"));
                }
                if self.vars.is_some() {
                    return Err(line.err("duplicate vars line"));
                }
                self.vars = Some(parse_vars(line)?);
                Ok(true)
            }
            _ => Ok(false),
        }
    }

    fn ready(&self, line: &Line) -> Result<(&FieldDesc, &[String]), ParseError> {
        match (&self.field, &self.vars) {
            (Some(f), Some(v)) => Ok((f, v)),
            (None, _) => Err(line.err(format!("{} before field", line.word))),
            (_, None) => Err(line.err(format!("{} before vars", line.word))),
        }
    }
}

fn end_position(text: &str) -> (usize, usize) {
    let line = text.split('\n').count();
    let last = text.rsplit('\n').next().unwrap_or("");
    (line, last.chars().count() + 1)
}

pub fn parse_system(text: &str) -> Result<SystemDoc, ParseError> {
    let mut header = Header::default();
    let mut gens = Vec::new();
    let mut target: Option<(MultiPoly, usize)> = None;
    let mut domain: Option<EvalSet> = None;
    let mut images: Vec<Vec<FieldElem>> = Vec::new();
    let mut images_line = 0;
    for line in split_lines(text) {
        if header.take(&line)? {
            continue;
        }
        match line.word {
            "P:" => {
                let (f, v) = header.ready(&line)?;
                gens.push(parse_poly(&line, f, v)?);
            }
            "Q:" => {
                let (f, v) = header.ready(&line)?;
                if target.is_some() {
                    return Err(line.err("duplicate Q line"));
                }
                target = Some((parse_poly(&line, f, v)?, line.no));
            }
            "X:" => {
                let (f, v) = header.ready(&line)?;
                if domain.is_some() {
                    return Err(line.err("duplicate X line"));
                }
                domain = Some(parse_points(&line, f, v)?);
            }
            "images:" => {
                let (f, v) = header.ready(&line)?;
                images.push(parse_values(&line, f, v)?);
                images_line = line.no;
            }
            other => return Err(line.err(format!("unknown directive {other}"))),
        }
    }
    let (eline, ecol) = end_position(text);
    let at_end = |msg: &str| ParseError::new(eline, ecol, msg);
    let field = header.field.ok_or_else(|| at_end("missing field line"))?;
    let vars = header.vars.ok_or_else(|| at_end("missing vars line"))?;
    if gens.is_empty() {
        return Err(at_end("missing P line"));
    }
    let (target, qline) = target.ok_or_else(|| at_end("missing Q line"))?;
    let mut system = PolySystem::new(&field, vars.len(), gens, target, domain.unwrap_or(EvalSet::All))
        .map_err(|e| ParseError::new(qline, 1, e.to_string()))?;
    if !images.is_empty() {
        system = system.with_images(images).map_err(|e| ParseError::new(images_line, 1, e.to_string()))?;
    }
    Ok(SystemDoc { vars, system })
}

pub fn parse_system_bytes(bytes: &[u8]) -> Result<SystemDoc, ParseError> {
    parse_system(decode(bytes)?)
}

fn parse_degree(s: &str) -> Option<nsatz_core::Degree> {
    if s == "-inf" {
        Some(nsatz_core::Degree::NegInfinity)
    } else {
        s.parse().ok().map(nsatz_core::Degree::Finite)
    }
}

/// `report R<i>: raw_degree: <d> [reduced_degree: <d>]`
fn parse_report(line: &Line) -> Result<(usize, nsatz_core::Degree, Option<nsatz_core::Degree>), ParseError> {
    let words: Vec<&str> = line.rest.split_whitespace().collect();
    let bad = || line.err("expected report R<i>: raw_degree: <d> [reduced_degree: <d>]");
    let idx = words
        .first()
        .and_then(|w| w.strip_prefix('R'))
        .and_then(|w| w.strip_suffix(':'))
        .and_then(|w| w.parse::<usize>().ok())
        .ok_or_else(bad)?;
    match words.as_slice() {
        [_, "raw_degree:", raw] => Ok((idx, parse_degree(raw).ok_or_else(bad)?, None)),
        [_, "raw_degree:", raw, "reduced_degree:", red] => {
            Ok((idx, parse_degree(raw).ok_or_else(bad)?, Some(parse_degree(red).ok_or_else(bad)?)))
        }
        _ => Err(bad()),
    }
}

pub fn parse_certificate(text: &str) -> Result<CertDoc, ParseError> {
    let mut header = Header::default();
    let mut mode = None;
    let mut bound = None;
    let mut checked = None;
    let mut cofactors: Vec<MultiPoly> = Vec::new();
    let mut reports = Vec::new();
    for line in split_lines(text) {
        if header.take(&line)? {
            continue;
        }
        let value = line.rest.trim();
        match line.word {
            "mode:" => {
                if mode.is_some() {
                    return Err(line.err("duplicate mode line"));
                }
                mode = Some(Mode::parse(value).ok_or_else(|| line.err(format!("unknown mode {value}")))?);
            }
            "claimed_bound:" => {
                if bound.is_some() {
                    return Err(line.err("duplicate claimed_bound line"));
                }
                bound = Some(value.parse::<u64>().map_err(|_| line.err("expected a nonnegative integer"))?);
            }
            "containment:" => {
                if checked.is_some() {
                    return Err(line.err("duplicate containment line"));
                }
                checked = Some(match value {
                    "checked" => true,
                    "unchecked" => false,
                    _ => return Err(line.err("expected checked or unchecked")),
                });
            }
            "report" => reports.push((line.no, parse_report(&line)?)),
            w if w.starts_with('R') && w.ends_with(':') => {
                let (f, v) = header.ready(&line)?;
                let idx: usize = w[1..w.len() - 1].parse().map_err(|_| line.err(format!("unknown directive {w}")))?;
                if idx != cofactors.len() + 1 {
                    return Err(line.err(format!("expected R{}, found {w}", cofactors.len() + 1)));
                }
                cofactors.push(parse_poly(&line, f, v)?);
            }
            other => return Err(line.err(format!("unknown directive {other}"))),
        }
    }
    let (eline, ecol) = end_position(text);
    let at_end = |msg: &str| ParseError::new(eline, ecol, msg);
    let field = header.field.ok_or_else(|| at_end("missing field line"))?;
    let vars = header.vars.ok_or_else(|| at_end("missing vars line"))?;
    let mode = mode.ok_or_else(|| at_end("missing mode line"))?;
    let bound = bound.ok_or_else(|| at_end("missing claimed_bound line"))?;
    let checked = checked.ok_or_else(|| at_end("missing containment line"))?;
    if cofactors.is_empty() {
        return Err(at_end("missing R1 line"));
    }
    let certificate = Certificate::new(mode, cofactors, bound, checked);
    for (no, (idx, raw, reduced)) in reports {
        let i = idx.checked_sub(1).filter(|&i| i < certificate.cofactors.len());
        let Some(i) = i else {
            return Err(ParseError::new(no, 1, format!("report for missing cofactor R{idx}")));
        };
        let actual_reduced = certificate.reduced_degrees.as_ref().map(|d| d[i]);
        if certificate.raw_degrees[i] != raw || (reduced.is_some() && reduced != actual_reduced) {
            return Err(ParseError::new(no, 1, format!("report for R{idx} disagrees with the cofactor")));
        }
    }
    Ok(CertDoc { field, vars, certificate })
}

pub fn parse_certificate_bytes(bytes: &[u8]) -> Result<CertDoc, ParseError> {
    parse_certificate(decode(bytes)?)
}
