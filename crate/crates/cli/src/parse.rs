//! Text grammar for polynomials, ideals and pairs.
//!
//! ```text
//! pair   := factor (';' factor)*
//! factor := ideal '^' (rational | 't')
//! ideal  := '(' poly (',' poly)* ')' | poly
//! poly   := ['+'|'-'] term (('+'|'-') term)*
//! term   := power ('*' power)*
//! power  := atom ('^' integer)?
//! atom   := integer | variable | '(' poly ')'
//! ```
//!
//! Whitespace is insignificant. Columns in errors are 1-based character
//! positions in the input.

use std::fmt;

use fjump::{
    ExactRational, Ideal, MixedPair, MonomialOrder, ParametricPair, Polynomial, PrimeChar, Ring,
    RingContext,
};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("negative exponent")]
    NegativeExponent,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("{0}")]
    Semantic(String),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    /// 1-based column.
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.column, self.kind)
    }
}

type PResult<T> = std::result::Result<T, ParseError>;

fn err<T>(column: usize, kind: ParseErrorKind) -> PResult<T> {
    Err(ParseError { column, kind })
}

fn syntax<T>(column: usize, msg: impl Into<String>) -> PResult<T> {
    err(column, ParseErrorKind::Syntax(msg.into()))
}

/// A parsed pair: either every exponent is fixed, or exactly one factor
/// carries the parameter `t`.
#[derive(Clone, Debug)]
pub enum PairSpec {
    Fixed(MixedPair),
    Parametric(ParametricPair),
}

/// Builds the ring from `--char`, `--vars` (comma separated) and `--order`.
pub fn ring_from_flags(p: u64, vars: &str, order: MonomialOrder) -> fjump::Result<Ring> {
    let names: Vec<&str> = vars.split(',').map(str::trim).collect();
    RingContext::new(PrimeChar::new(p)?, &names, order)
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    column: usize,
}

fn tokenize(text: &str) -> PResult<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            let n = digits.parse::<BigInt>().expect("decimal digits");
            out.push(Token { tok: Tok::Int(n), column });
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                column,
            });
        } else if "+-*^/(),;".contains(c) {
            out.push(Token { tok: Tok::Sym(c), column });
            i += 1;
        } else {
            return syntax(column, format!("unexpected character {c:?}"));
        }
    }
    Ok(out)
}

fn is_sym(t: Option<&Token>, c: char) -> bool {
    matches!(t, Some(Token { tok: Tok::Sym(s), .. }) if *s == c)
}

// Splits at depth-0 occurrences of `sep`, checking bracket balance.
fn split_top(tokens: &[Token], sep: char, end_column: usize) -> PResult<Vec<(&[Token], usize)>> {
    let mut parts = Vec::new();
    let mut depth = 0i64;
    let mut start = 0;
    for (k, t) in tokens.iter().enumerate() {
        match t.tok {
            Tok::Sym('(') => depth += 1,
            Tok::Sym(')') => {
                depth -= 1;
                if depth < 0 {
                    return syntax(t.column, "unmatched ')'");
                }
            }
            Tok::Sym(s) if s == sep && depth == 0 => {
                parts.push((&tokens[start..k], t.column));
                start = k + 1;
            }
            _ => {}
        }
    }
    if depth > 0 {
        return syntax(end_column, "unclosed '('");
    }
    parts.push((&tokens[start..], end_column));
    Ok(parts)
}

struct PolyParser<'a> {
    ring: &'a Ring,
    tokens: &'a [Token],
    pos: usize,
    // Column reported when the slice runs out.
    end: usize,
}

impl<'a> PolyParser<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos)
    }

    fn column(&self) -> usize {
        self.peek().map_or(self.end, |t| t.column)
    }

    fn expr(&mut self) -> PResult<Polynomial> {
        let mut negate = false;
        if is_sym(self.peek(), '+') || is_sym(self.peek(), '-') {
            negate = is_sym(self.peek(), '-');
            self.pos += 1;
        }
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            if is_sym(self.peek(), '+') {
                self.pos += 1;
                acc = &acc + &self.term()?;
            } else if is_sym(self.peek(), '-') {
                self.pos += 1;
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> PResult<Polynomial> {
        let mut acc = self.power()?;
        while is_sym(self.peek(), '*') {
            self.pos += 1;
            let column = self.column();
            let rhs = self.power()?;
            acc = acc
                .checked_mul(&rhs)
                .or_else(|e| err(column, ParseErrorKind::Semantic(e.to_string())))?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> PResult<Polynomial> {
        let base = self.atom()?;
        if !is_sym(self.peek(), '^') {
            return Ok(base);
        }
        self.pos += 1;
        let column = self.column();
        match self.peek().map(|t| &t.tok) {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let too_large = || ParseError {
                    column,
                    kind: ParseErrorKind::Semantic("exponent too large".into()),
                };
                let n = n.to_u64().ok_or_else(too_large)?;
                base.total_degree()
                    .checked_mul(n)
                    .filter(|d| *d <= 1 << 32)
                    .ok_or_else(too_large)?;
                Ok(base.pow(n))
            }
            Some(Tok::Sym('-')) => err(column, ParseErrorKind::NegativeExponent),
            _ => syntax(column, "expected a nonnegative integer exponent"),
        }
    }

    fn atom(&mut self) -> PResult<Polynomial> {
        let column = self.column();
        match self.peek().map(|t| t.tok.clone()) {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let p = BigInt::from(self.ring.p());
                let r = ((n % &p) + &p) % &p;
                Ok(Polynomial::constant(self.ring, r.to_i64().expect("below p")))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match self.ring.variable_index(&name) {
                    Some(i) => Ok(Polynomial::variable(self.ring, i)),
                    None => err(column, ParseErrorKind::UnknownVariable(name)),
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !is_sym(self.peek(), ')') {
                    return syntax(self.column(), "expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(_) => syntax(column, "expected a number, variable or '('"),
            None => syntax(column, "unexpected end of input"),
        }
    }
}

fn poly_from_tokens(ring: &Ring, tokens: &[Token], end: usize) -> PResult<Polynomial> {
    let mut parser = PolyParser {
        ring,
        tokens,
        pos: 0,
        end,
    };
    let f = parser.expr()?;
    if parser.pos < tokens.len() {
        let t = &tokens[parser.pos];
        let msg = match t.tok {
            Tok::Ident(_) | Tok::Int(_) | Tok::Sym('(') => "expected an operator (juxtaposition needs '*')",
            _ => "unexpected token",
        };
        return syntax(t.column, msg);
    }
    Ok(f)
}

fn nonzero_poly(ring: &Ring, tokens: &[Token], end: usize) -> PResult<Polynomial> {
    if tokens.is_empty() {
        return syntax(end, "expected a polynomial");
    }
    let f = poly_from_tokens(ring, tokens, end)?;
    if f.is_zero() {
        return err(tokens[0].column, ParseErrorKind::ZeroPolynomial);
    }
    Ok(f)
}

fn ideal_from_tokens(ring: &Ring, tokens: &[Token], end: usize) -> PResult<Ideal> {
    if tokens.is_empty() {
        return syntax(end, "expected an ideal");
    }
    let wrapped = is_sym(tokens.first(), '(') && is_sym(tokens.last(), ')') && {
        // The opening parenthesis must close at the last token.
        let mut depth = 0i64;
        tokens.iter().enumerate().all(|(k, t)| {
            match t.tok {
                Tok::Sym('(') => depth += 1,
                Tok::Sym(')') => depth -= 1,
                _ => {}
            }
            depth > 0 || k + 1 == tokens.len()
        })
    };
    let gens = if wrapped {
        let inner = &tokens[1..tokens.len() - 1];
        let close = tokens[tokens.len() - 1].column;
        split_top(inner, ',', close)?
            .into_iter()
            .map(|(part, end)| nonzero_poly(ring, part, end))
            .collect::<PResult<Vec<_>>>()?
    } else {
        vec![nonzero_poly(ring, tokens, end)?]
    };
    Ideal::new(ring, gens).or_else(|e| err(tokens[0].column, ParseErrorKind::Semantic(e.to_string())))
}

fn end_column(text: &str) -> usize {
    text.chars().count() + 1
}

pub fn parse_polynomial(ring: &Ring, text: &str) -> PResult<Polynomial> {
    let tokens = tokenize(text)?;
    let end = end_column(text);
    if tokens.is_empty() {
        return syntax(end, "expected a polynomial");
    }
    poly_from_tokens(ring, &tokens, end)
}

pub fn parse_ideal(ring: &Ring, text: &str) -> PResult<Ideal> {
    ideal_from_tokens(ring, &tokenize(text)?, end_column(text))
}

fn parse_rational_tokens(tokens: &[Token], end: usize) -> PResult<ExactRational> {
    let column = tokens.first().map_or(end, |t| t.column);
    match tokens {
        [Token { tok: Tok::Sym('-'), .. }, ..] => err(column, ParseErrorKind::NegativeExponent),
        [Token { tok: Tok::Int(n), .. }] => Ok(ExactRational::from_integer(n.clone())),
        [Token { tok: Tok::Int(n), .. }, Token { tok: Tok::Sym('/'), .. }, Token { tok: Tok::Int(d), column: dc }] => {
            if d.is_zero() {
                return err(*dc, ParseErrorKind::Semantic("zero denominator".into()));
            }
            Ok(ExactRational::new(n.clone(), d.clone()))
        }
        [] => syntax(end, "expected an exponent"),
        _ => syntax(column, "expected an exponent a, a/b or t"),
    }
}

/// Parses a `;`-separated pair.
pub fn parse_pair(ring: &Ring, text: &str) -> PResult<PairSpec> {
    let tokens = tokenize(text)?;
    let end = end_column(text);
    if tokens.is_empty() {
        return syntax(end, "expected a pair");
    }
    let mut fixed = Vec::new();
    let mut moving: Option<Ideal> = None;
    for (factor, fend) in split_top(&tokens, ';', end)? {
        if factor.is_empty() {
            return syntax(fend, "empty factor");
        }
        let mut depth = 0i64;
        let mut caret = None;
        for (k, t) in factor.iter().enumerate() {
            match t.tok {
                Tok::Sym('(') => depth += 1,
                Tok::Sym(')') => depth -= 1,
                Tok::Sym('^') if depth == 0 => caret = Some(k),
                _ => {}
            }
        }
        let Some(k) = caret else {
            return syntax(factor[0].column, "factor needs an exponent '^'");
        };
        let ideal = ideal_from_tokens(ring, &factor[..k], factor[k].column)?;
        let exponent = &factor[k + 1..];
        match exponent {
            [Token { tok: Tok::Ident(name), column }] if name == "t" => {
                if moving.is_some() {
                    return syntax(*column, "only one factor may carry t");
                }
                moving = Some(ideal);
            }
            _ => fixed.push((ideal, parse_rational_tokens(exponent, fend)?)),
        }
    }
    let base = MixedPair::new(ring, fixed).or_else(|e| err(1, ParseErrorKind::Semantic(e.to_string())))?;
    Ok(match moving {
        None => PairSpec::Fixed(base),
        Some(a) => PairSpec::Parametric(
            ParametricPair::new(base, a).or_else(|e| err(1, ParseErrorKind::Semantic(e.to_string())))?,
        ),
    })
}

/// Parses `lo..hi` with rational endpoints.
pub fn parse_range(text: &str) -> std::result::Result<(ExactRational, ExactRational), String> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| format!("expected lo..hi, got {text:?}"))?;
    let lo = fjump::ring::parse_rational(lo.trim()).map_err(|e| e.to_string())?;
    let hi = fjump::ring::parse_rational(hi.trim()).map_err(|e| e.to_string())?;
    if lo < ExactRational::zero() || lo >= hi {
        return Err(format!("need 0 ≤ lo < hi, got {text:?}"));
    }
    Ok((lo, hi))
}
