//! The term language: `+`, `-`, `*`, `/` over variables and integer constants.
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := atom (('*' | '/') atom)*
//! atom    := integer | variable | '(' sum ')' | '-' atom
//! ```
//!
//! Both binary levels are left-associative, so `a/b*c` is `(a/b)*c` and
//! `x - z + y` is `(x - z) + y`. Unary minus is sugar for `0 - t`.
//! Multiplication is always explicit: `xy` is a single identifier and
//! `x y` is a parse error.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Abstract syntax tree of a term.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Const(BigRational),
    Var(String),
    Add(Box<Term>, Box<Term>),
    Sub(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
    Div(Box<Term>, Box<Term>),
}

// Named after the operators they build; they are not arithmetic.
#[allow(clippy::should_implement_trait)]
impl Term {
    pub fn int(value: i64) -> Term {
        Term::Const(BigRational::from_integer(BigInt::from(value)))
    }

    pub fn zero() -> Term {
        Term::Const(BigRational::zero())
    }

    pub fn one() -> Term {
        Term::Const(BigRational::one())
    }

    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn add(left: Term, right: Term) -> Term {
        Term::Add(Box::new(left), Box::new(right))
    }

    pub fn sub(left: Term, right: Term) -> Term {
        Term::Sub(Box::new(left), Box::new(right))
    }

    pub fn mul(left: Term, right: Term) -> Term {
        Term::Mul(Box::new(left), Box::new(right))
    }

    pub fn div(numerator: Term, denominator: Term) -> Term {
        Term::Div(Box::new(numerator), Box::new(denominator))
    }

    /// `1 - t`
    pub fn complement(t: Term) -> Term {
        Term::sub(Term::one(), t)
    }

    /// Product of `factors`, or the constant 1 when empty.
    pub fn product<I: IntoIterator<Item = Term>>(factors: I) -> Term {
        factors
            .into_iter()
            .reduce(Term::mul)
            .unwrap_or_else(Term::one)
    }

    /// Sum of `terms`, or the constant 0 when empty.
    pub fn sum<I: IntoIterator<Item = Term>>(terms: I) -> Term {
        terms
            .into_iter()
            .reduce(Term::add)
            .unwrap_or_else(Term::zero)
    }

    pub fn contains_division(&self) -> bool {
        match self {
            Term::Const(_) | Term::Var(_) => false,
            Term::Div(..) => true,
            Term::Add(l, r) | Term::Sub(l, r) | Term::Mul(l, r) => {
                l.contains_division() || r.contains_division()
            }
        }
    }

    pub fn division_count(&self) -> usize {
        match self {
            Term::Const(_) | Term::Var(_) => 0,
            Term::Add(l, r) | Term::Sub(l, r) | Term::Mul(l, r) => {
                l.division_count() + r.division_count()
            }
            Term::Div(l, r) => 1 + l.division_count() + r.division_count(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Const(_) | Term::Var(_) => 0,
            Term::Add(l, r) | Term::Sub(l, r) | Term::Mul(l, r) | Term::Div(l, r) => {
                1 + l.depth().max(r.depth())
            }
        }
    }

    pub fn contains_var(&self, name: &str) -> bool {
        match self {
            Term::Const(_) => false,
            Term::Var(v) => v == name,
            Term::Add(l, r) | Term::Sub(l, r) | Term::Mul(l, r) | Term::Div(l, r) => {
                l.contains_var(name) || r.contains_var(name)
            }
        }
    }

    /// Replaces every occurrence of `name` by `replacement`.
    pub fn substitute(&self, name: &str, replacement: &Term) -> Term {
        let rec = |t: &Term| Box::new(t.substitute(name, replacement));
        match self {
            Term::Var(v) if v == name => replacement.clone(),
            Term::Const(_) | Term::Var(_) => self.clone(),
            Term::Add(l, r) => Term::Add(rec(l), rec(r)),
            Term::Sub(l, r) => Term::Sub(rec(l), rec(r)),
            Term::Mul(l, r) => Term::Mul(rec(l), rec(r)),
            Term::Div(l, r) => Term::Div(rec(l), rec(r)),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Term::Add(..) | Term::Sub(..) => 1,
            Term::Mul(..) | Term::Div(..) => 2,
            Term::Var(_) => 3,
            // Negative and fractional constants print through an operator.
            Term::Const(c) if c.is_negative() => 1,
            Term::Const(c) if !c.is_integer() => 2,
            Term::Const(_) => 3,
        }
    }
}

/// Ordered list of distinct variable names.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct VarOrder(Vec<String>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VarOrderError {
    #[error("variable `{0}` listed more than once")]
    Duplicate(String),
    #[error("`{0}` is not a valid variable name")]
    InvalidName(String),
    #[error("variable `{0}` occurs in the term but not in the variable list")]
    Missing(String),
}

impl VarOrder {
    pub fn new<I, S>(names: I) -> Result<VarOrder, VarOrderError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut out: Vec<String> = Vec::new();
        for name in names {
            let name = name.into();
            if !is_identifier(&name) {
                return Err(VarOrderError::InvalidName(name));
            }
            if out.contains(&name) {
                return Err(VarOrderError::Duplicate(name));
            }
            out.push(name);
        }
        Ok(VarOrder(out))
    }

    pub fn empty() -> VarOrder {
        VarOrder(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(String::as_str)
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.position(name).is_some()
    }

    /// Names of `self` followed by the names of `other` not already present.
    pub fn union(&self, other: &VarOrder) -> VarOrder {
        let mut out = self.0.clone();
        for name in &other.0 {
            if !out.contains(name) {
                out.push(name.clone());
            }
        }
        VarOrder(out)
    }

    pub fn sorted(&self) -> VarOrder {
        let mut out = self.0.clone();
        out.sort();
        VarOrder(out)
    }

    pub fn without(&self, name: &str) -> VarOrder {
        VarOrder(self.0.iter().filter(|n| *n != name).cloned().collect())
    }

    /// Fails with the first free variable of `term` missing from `self`.
    pub fn covers(&self, term: &Term) -> Result<(), VarOrderError> {
        match free_vars(term).iter().find(|v| !self.contains(v)) {
            Some(missing) => Err(VarOrderError::Missing(missing.to_string())),
            None => Ok(()),
        }
    }
}

impl fmt::Display for VarOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.join(", "))
    }
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some('a'..='z'))
        && chars.all(|c| matches!(c, 'a'..='z' | '0'..='9' | '_'))
}

/// Variables of `t` in first-occurrence order.
pub fn free_vars(t: &Term) -> VarOrder {
    fn walk(t: &Term, out: &mut Vec<String>) {
        match t {
            Term::Const(_) => {}
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Term::Add(l, r) | Term::Sub(l, r) | Term::Mul(l, r) | Term::Div(l, r) => {
                walk(l, out);
                walk(r, out);
            }
        }
    }
    let mut out = Vec::new();
    walk(t, &mut out);
    VarOrder(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {offset}: expected {}; found {found}", .expected.join(" or "))]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<&'static str>,
    pub found: String,
}

impl ParseError {
    /// Shifts the reported offset, for input that was cut out of a larger string.
    pub fn shifted(mut self, by: usize) -> ParseError {
        self.offset += by;
        self
    }
}

pub fn parse(text: &str) -> Result<Term, ParseError> {
    let mut parser = Parser { src: text, pos: 0 };
    let term = parser.sum()?;
    parser.skip_ws();
    if parser.pos < text.len() {
        return Err(parser.error(&["operator", "end of input"]));
    }
    Ok(term)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

const ATOM_START: &[&str] = &["integer", "variable", "'('", "'-'"];

impl Parser<'_> {
    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn error(&mut self, expected: &[&'static str]) -> ParseError {
        let found = match self.peek() {
            Some(c) => format!("'{c}'"),
            None => "end of input".to_string(),
        };
        ParseError {
            offset: self.pos,
            expected: expected.to_vec(),
            found,
        }
    }

    fn sum(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.product()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = Term::add(acc, self.product()?);
                }
                Some('-') => {
                    self.pos += 1;
                    acc = Term::sub(acc, self.product()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.atom()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = Term::mul(acc, self.atom()?);
                }
                Some('/') => {
                    self.pos += 1;
                    acc = Term::div(acc, self.atom()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(')') {
                    return Err(self.error(&["')'", "operator"]));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some('-') => {
                self.pos += 1;
                Ok(Term::sub(Term::zero(), self.atom()?))
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.take_while(|c| c.is_ascii_digit());
                let value: BigInt = digits.parse().expect("digit run parses as an integer");
                Ok(Term::Const(BigRational::from_integer(value)))
            }
            Some(c) if c.is_ascii_lowercase() => {
                let name =
                    self.take_while(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_');
                Ok(Term::Var(name.to_string()))
            }
            _ => Err(self.error(ATOM_START)),
        }
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> &str {
        let start = self.pos;
        let len: usize = self.src[start..]
            .chars()
            .take_while(|c| pred(*c))
            .map(char::len_utf8)
            .sum();
        self.pos += len;
        &self.src[start..self.pos]
    }
}

/// Renders `t` with the fewest parentheses that still re-parse to `t`.
///
/// Spaces surround `+` and `-`; `*` and `/` are written tight, e.g.
/// `x/y*y` or `z*(x + y) - 1`.
pub fn print(t: &Term) -> String {
    let mut out = String::new();
    write_term(t, &mut out);
    out
}

fn write_term(t: &Term, out: &mut String) {
    match t {
        Term::Var(v) => out.push_str(v),
        Term::Const(c) => write_const(c, out),
        Term::Add(l, r) => write_binary(l, " + ", r, 1, out),
        Term::Sub(l, r) => write_binary(l, " - ", r, 1, out),
        Term::Mul(l, r) => write_binary(l, "*", r, 2, out),
        Term::Div(l, r) => write_binary(l, "/", r, 2, out),
    }
}

fn write_const(c: &BigRational, out: &mut String) {
    if c.is_negative() {
        out.push_str("0 - ");
        write_const(&-c, out);
    } else if c.is_integer() {
        out.push_str(&c.numer().to_string());
    } else {
        out.push_str(&format!("{}/{}", c.numer(), c.denom()));
    }
}

fn write_binary(l: &Term, op: &str, r: &Term, level: u8, out: &mut String) {
    // Left-associative: the left operand may share the level, the right may not.
    write_operand(l, l.precedence() < level, out);
    out.push_str(op);
    write_operand(r, r.precedence() <= level, out);
}

fn write_operand(t: &Term, parens: bool, out: &mut String) {
    if parens {
        out.push('(');
        write_term(t, out);
        out.push(')');
    } else {
        write_term(t, out);
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(self))
    }
}

impl std::str::FromStr for Term {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Term, ParseError> {
        parse(s)
    }
}
