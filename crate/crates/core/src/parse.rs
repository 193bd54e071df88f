//! Text syntax for fields, elements, polynomials and linearized polynomials.
//!
//! * field: `p`, `p^k`, `p^k/c0,..,ck` (little-endian modulus), or a bare
//!   prime power such as `4`;
//! * element: an expression in the generator `w`, e.g. `1+w`, `2*w^2`;
//! * polynomial: dense `c0,c1,..`, sparse `d:c;d:c`, or an expression in one
//!   letter such as `X^2*(X+1)` or `y^3 - w*y`;
//! * linearized: `i:a;j:b` mapping `q`-exponents to coefficients, optionally
//!   as `q=<field> L=<terms>`.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::arith::prime_power;
use crate::ff::{make_extension, make_prime_field, Field, FieldElement, FieldError};
use crate::linpoly::{LinError, LinearizedPoly};
use crate::poly::Poly;
use crate::rng::stream;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("cannot parse {what} from {input:?}: {reason}")]
    Syntax { what: &'static str, input: String, reason: String },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Lin(#[from] LinError),
}

fn syntax(what: &'static str, input: &str, reason: impl Into<String>) -> ParseError {
    ParseError::Syntax { what, input: input.to_string(), reason: reason.into() }
}

fn int<T: std::str::FromStr>(what: &'static str, s: &str) -> Result<T, ParseError> {
    s.trim().parse().map_err(|_| syntax(what, s, "expected an integer"))
}

/// Builds the field named by `s`; an unspecified modulus is drawn from the
/// `modulus-search` stream of `seed`.
pub fn parse_field(s: &str, seed: u64) -> Result<Arc<Field>, ParseError> {
    let s = s.trim();
    let (head, modulus) = match s.split_once('/') {
        Some((h, m)) => (h, Some(m)),
        None => (s, None),
    };
    let (p, k) = match head.split_once('^') {
        Some((p, k)) => (int::<u64>("field", p)?, int::<usize>("field", k)?),
        None => {
            let q: u64 = int("field", head)?;
            let (p, k) = prime_power(q).ok_or_else(|| syntax("field", s, "not a prime power"))?;
            (p, k as usize)
        }
    };
    let prime = make_prime_field(p)?;
    match modulus {
        None => Ok(make_extension(&prime, k, None, &mut stream(seed, "modulus-search"))?),
        Some(m) => {
            let coeffs = m.split(',').map(|c| int::<i64>("modulus", c)).collect::<Result<Vec<_>, _>>()?;
            let poly = Poly::from_ints(&prime, &coeffs);
            if poly.degree() != Some(k) || coeffs.len() != k + 1 {
                return Err(syntax("field", s, format!("modulus must have {} coefficients", k + 1)));
            }
            if k == 1 {
                return Err(syntax("field", s, "a prime field takes no modulus"));
            }
            Ok(make_extension(&prime, k, Some(&poly), &mut stream(0, "unused"))?)
        }
    }
}

/// An element written as an expression in `w`.
pub fn parse_element(field: &Arc<Field>, s: &str) -> Result<FieldElement, ParseError> {
    let p = Expr::new(field, s, None).parse()?;
    match p.degree() {
        None => Ok(field.zero()),
        Some(0) => Ok(p.coeff(0)),
        Some(_) => Err(syntax("element", s, "unexpected indeterminate")),
    }
}

/// A polynomial in dense, sparse or expression form.
pub fn parse_poly(field: &Arc<Field>, s: &str) -> Result<Poly, ParseError> {
    let t = s.trim();
    if t.contains(':') {
        let terms = parse_terms(field, t)?;
        let deg = terms.keys().next_back().copied().unwrap_or(0);
        let mut c = vec![field.zero(); deg + 1];
        for (d, a) in terms {
            c[d] = a;
        }
        Ok(Poly::new(field.clone(), c))
    } else if t.contains(',') {
        let c = t.split(',').map(|x| parse_element(field, x)).collect::<Result<Vec<_>, _>>()?;
        Ok(Poly::new(field.clone(), c))
    } else {
        Expr::new(field, t, None).parse()
    }
}

/// `d:c;d:c` with each degree at most once.
fn parse_terms(field: &Arc<Field>, s: &str) -> Result<BTreeMap<usize, FieldElement>, ParseError> {
    let mut out = BTreeMap::new();
    for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (d, c) = part.split_once(':').ok_or_else(|| syntax("term", part, "expected exponent:coefficient"))?;
        let d: usize = int("exponent", d)?;
        if out.insert(d, parse_element(field, c)?).is_some() {
            return Err(syntax("terms", s, format!("exponent {d} repeated")));
        }
    }
    if out.is_empty() {
        return Err(syntax("terms", s, "no terms"));
    }
    Ok(out)
}

/// A linearized polynomial over `field` from `i:a;j:b`.
pub fn parse_linearized(field: &Arc<Field>, s: &str) -> Result<LinearizedPoly, ParseError> {
    Ok(LinearizedPoly::new(field, &parse_terms(field, s)?)?)
}

/// `q=<field> L=<terms>`.
pub fn parse_linearized_spec(s: &str, seed: u64) -> Result<LinearizedPoly, ParseError> {
    let mut field = None;
    let mut terms = None;
    for tok in s.split_whitespace() {
        if let Some(f) = tok.strip_prefix("q=") {
            field = Some(parse_field(f, seed)?);
        } else if let Some(l) = tok.strip_prefix("L=") {
            terms = Some(l);
        } else {
            return Err(syntax("linearized", s, format!("unexpected token {tok:?}")));
        }
    }
    match (field, terms) {
        (Some(f), Some(t)) => parse_linearized(&f, t),
        _ => Err(syntax("linearized", s, "expected q=<field> L=<terms>")),
    }
}

/// Recursive-descent parser over polynomial arithmetic.
struct Expr<'a> {
    field: &'a Arc<Field>,
    input: &'a str,
    chars: Vec<char>,
    pos: usize,
    var: Option<char>,
}

impl<'a> Expr<'a> {
    fn new(field: &'a Arc<Field>, input: &'a str, var: Option<char>) -> Self {
        Expr { field, input, chars: input.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0, var }
    }

    fn err(&self, reason: impl Into<String>) -> ParseError {
        syntax("polynomial", self.input, reason)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<Poly, ParseError> {
        if self.chars.is_empty() {
            return Err(self.err("empty"));
        }
        let p = self.sum()?;
        if self.pos != self.chars.len() {
            return Err(self.err(format!("unexpected {:?}", self.chars[self.pos])));
        }
        Ok(p)
    }

    fn sum(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.product()?;
        while let Some(op @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let rhs = self.product()?;
            acc = if op == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => self.pos += 1,
                Some(c) if c == '(' || c.is_ascii_alphanumeric() => {}
                _ => return Ok(acc),
            }
            let rhs = self.unary()?;
            acc = &acc * &rhs;
        }
    }

    fn unary(&mut self) -> Result<Poly, ParseError> {
        if self.peek() == Some('-') {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        if self.peek() == Some('+') {
            self.pos += 1;
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.number()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn number(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.err("number too large"))
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        let f = self.field;
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let p = self.sum()?;
                if self.peek() != Some(')') {
                    return Err(self.err("missing ')'"));
                }
                self.pos += 1;
                Ok(p)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                Ok(Poly::constant(f, f.from_int((n % f.characteristic()) as i64)))
            }
            Some('w') => {
                self.pos += 1;
                if f.is_prime_field() {
                    return Err(self.err("w is only defined in extension fields"));
                }
                Ok(Poly::constant(f, f.generator()))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                self.pos += 1;
                match self.var {
                    Some(v) if v != c => Err(self.err(format!("mixed indeterminates {v} and {c}"))),
                    _ => {
                        self.var = Some(c);
                        Ok(Poly::x(f))
                    }
                }
            }
            Some(c) => Err(self.err(format!("unexpected {c:?}"))),
            None => Err(self.err("unexpected end")),
        }
    }
}
