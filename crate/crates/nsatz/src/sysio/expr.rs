//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   = [ "+" | "-" ] term { ( "+" | "-" ) term }
//! term   = factor { "*" factor }
//! factor = atom [ "^" int ]
//! atom   = int [ "/" int ] | ident | "(" expr ")"
//! ```

use num_bigint::BigInt;
use nsatz_core::{Degree, FieldDesc, FieldElem, FieldKind, MultiPoly};

use super::lex::{Tok, Token};
use super::ParseError;

/// Largest total degree any intermediate result may reach.
pub const MAX_DEGREE: u64 = 100_000;
/// Largest number of terms an expansion may be expected to produce.
pub const MAX_TERMS: u128 = 2_000_000;
/// Largest bit length of a rational numerator or denominator.
pub const MAX_COEFF_BITS: u64 = 1 << 20;
/// Deepest parenthesis nesting accepted.
pub const MAX_NESTING: usize = 256;
/// Budget of coefficient operations one expression may spend.
pub const MAX_WORK: u128 = 1 << 26;

pub(crate) struct Ctx<'a> {
    pub field: &'a FieldDesc,
    pub vars: &'a [String],
    pub allow_vars: bool,
}

pub(crate) struct ExprParser<'a> {
    ctx: &'a Ctx<'a>,
    toks: &'a [Token],
    pos: usize,
    depth: usize,
    work: u128,
    line: usize,
    /// Column reported for errors at end of input.
    end_col: usize,
}

fn degree_of(p: &MultiPoly) -> u64 {
    match p.total_degree() {
        Degree::NegInfinity => 0,
        Degree::Finite(d) => d,
    }
}

/// Largest numerator or denominator bit length among the coefficients.
fn coeff_bits(p: &MultiPoly) -> u64 {
    p.terms()
        .iter()
        .map(|(_, c)| match c {
            FieldElem::Rational(r) => r.numer().bits().max(r.denom().bits()),
            FieldElem::Finite(_) => 0,
        })
        .max()
        .unwrap_or(0)
}

/// `C(a + b, b)` saturating at `u128::MAX`.
fn binom_sat(a: u128, b: u128) -> u128 {
    let b = b.min(a);
    let mut acc: u128 = 1;
    for i in 1..=b {
        acc = match acc.checked_mul(a + i) {
            Some(v) => v / i,
            None => return u128::MAX,
        };
        if acc > MAX_TERMS * 16 {
            return u128::MAX;
        }
    }
    acc
}

impl<'a> ExprParser<'a> {
    pub fn new(ctx: &'a Ctx<'a>, toks: &'a [Token], line: usize, end_col: usize) -> Self {
        ExprParser { ctx, toks, pos: 0, depth: 0, work: 0, line, end_col }
    }

    pub fn peek(&self) -> Option<&'a Token> {
        self.toks.get(self.pos)
    }

    pub fn bump(&mut self) -> Option<&'a Token> {
        let t = self.toks.get(self.pos);
        self.pos += 1;
        t
    }

    pub fn col(&self) -> usize {
        self.peek().map_or(self.end_col, |t| t.col)
    }

    pub fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.col(), msg)
    }

    fn err_at(&self, col: usize, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.line, col, msg)
    }

    pub fn at_sym(&self, c: char) -> bool {
        matches!(self.peek(), Some(Token { tok: Tok::Sym(s), .. }) if *s == c)
    }

    pub fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        if self.at_sym(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected '{c}'")))
        }
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub fn expect_end(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(self.err_at(t.col, format!("unexpected {}", describe(&t.tok)))),
        }
    }

    fn charge(&mut self, col: usize, cost: u128) -> Result<(), ParseError> {
        self.work = self.work.saturating_add(cost);
        if self.work > MAX_WORK {
            return Err(self.err_at(col, "expression too expensive to expand"));
        }
        Ok(())
    }

    fn n(&self) -> usize {
        self.ctx.vars.len()
    }

    pub fn expr(&mut self) -> Result<MultiPoly, ParseError> {
        let negate = if self.at_sym('-') {
            self.pos += 1;
            true
        } else {
            if self.at_sym('+') {
                self.pos += 1;
            }
            false
        };
        let first = self.term()?;
        let mut acc = if negate { -&first } else { first };
        loop {
            let col = self.col();
            if self.at_sym('+') {
                self.pos += 1;
                let rhs = self.term()?;
                self.charge(col, (acc.num_terms() + rhs.num_terms()) as u128)?;
                acc = &acc + &rhs;
            } else if self.at_sym('-') {
                self.pos += 1;
                let rhs = self.term()?;
                self.charge(col, (acc.num_terms() + rhs.num_terms()) as u128)?;
                acc = &acc - &rhs;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.factor()?;
        while self.at_sym('*') {
            let col = self.col();
            self.pos += 1;
            let rhs = self.factor()?;
            if degree_of(&acc) + degree_of(&rhs) > MAX_DEGREE {
                return Err(self.err_at(col, format!("degree exceeds {MAX_DEGREE}")));
            }
            if (acc.num_terms() as u128) * (rhs.num_terms() as u128) > MAX_TERMS
                || coeff_bits(&acc) + coeff_bits(&rhs) > MAX_COEFF_BITS
            {
                return Err(self.err_at(col, "product too large"));
            }
            self.charge(col, (acc.num_terms() as u128) * (rhs.num_terms() as u128))?;
            acc = &acc * &rhs;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly, ParseError> {
        let base = self.atom()?;
        if !self.at_sym('^') {
            return Ok(base);
        }
        let col = self.col();
        self.pos += 1;
        let e = match self.bump() {
            Some(Token { tok: Tok::Int(digits), col }) => match digits.parse::<u64>() {
                Ok(e) if e <= MAX_DEGREE => e,
                _ => return Err(self.err_at(*col, format!("exponent exceeds {MAX_DEGREE}"))),
            },
            _ => return Err(self.err_at(col + 1, "expected a nonnegative integer exponent")),
        };
        let d = degree_of(&base);
        if d.saturating_mul(e) > MAX_DEGREE {
            return Err(self.err_at(col, format!("degree exceeds {MAX_DEGREE}")));
        }
        if coeff_bits(&base).saturating_mul(e) > MAX_COEFF_BITS {
            return Err(self.err_at(col, "coefficient too large"));
        }
        let k = base.num_terms() as u128;
        if k > 1 {
            let by_terms = binom_sat(e as u128, k - 1);
            let by_degree = binom_sat((d * e) as u128, self.n() as u128);
            let est = by_terms.min(by_degree);
            if est > MAX_TERMS {
                return Err(self.err_at(col, "power too large to expand"));
            }
            // The last squaring dominates: about (est/2)^2 products, k*est for the final multiply.
            self.charge(col, est.saturating_mul(est) / 4 + k * est)?;
        }
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<MultiPoly, ParseError> {
        let field = self.ctx.field;
        let n = self.n();
        let Some(token) = self.bump() else {
            return Err(self.err_at(self.end_col, "unexpected end of expression"));
        };
        match &token.tok {
            Tok::Int(digits) => {
                let num: BigInt = digits.parse().expect("lexer yields digits");
                if self.at_sym('/') {
                    let slash = self.col();
                    if field.kind() != FieldKind::Rationals {
                        return Err(self.err_at(
                            slash,
                            "fractions are only allowed over QQ; write finite-field coefficients as residues",
                        ));
                    }
                    self.pos += 1;
                    let den = match self.bump() {
                        Some(Token { tok: Tok::Int(d), .. }) => d.parse::<BigInt>().expect("digits"),
                        _ => return Err(self.err_at(slash + 1, "expected an integer denominator")),
                    };
                    let c = field.rational(num, den).map_err(|_| self.err_at(slash, "zero denominator"))?;
                    return Ok(MultiPoly::constant(field, n, c));
                }
                Ok(MultiPoly::constant(field, n, field.from_bigint(&num)))
            }
            Tok::Ident(name) => {
                if let Some(i) = self.ctx.vars.iter().position(|v| v == name) {
                    if !self.ctx.allow_vars {
                        return Err(self.err_at(token.col, format!("variable {name} not allowed here")));
                    }
                    return Ok(MultiPoly::var(field, n, i));
                }
                if name == "t" {
                    return match field.generator() {
                        Ok(g) => Ok(MultiPoly::constant(field, n, g)),
                        Err(_) => Err(self.err_at(token.col, "t is reserved for extension-field coefficients")),
                    };
                }
                Err(self.err_at(token.col, format!("undeclared variable {name}")))
            }
            Tok::Sym('(') => {
                if self.depth == MAX_NESTING {
                    return Err(self.err_at(token.col, "parentheses nested too deeply"));
                }
                self.depth += 1;
                let inner = self.expr()?;
                self.depth -= 1;
                self.expect_sym(')')?;
                Ok(inner)
            }
            other => Err(self.err_at(token.col, format!("unexpected {}", describe(other)))),
        }
    }
}

pub(crate) fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("identifier {s}"),
        Tok::Int(s) => format!("number {s}"),
        Tok::Sym(c) => format!("'{c}'"),
    }
}
