//! Developments: the expansion of a term as a coefficient-weighted sum of
//! all `2^n` constituents over a variable order.
//!
//! Two independent routes produce one:
//!
//! * [`develop`] evaluates the term at every binary point;
//! * [`develop_by_intersections`] multiplies the term by each constituent
//!   and reduces the product algebraically to `k * constituent`.
//!
//! Coefficient index `j` encodes the binary point with the *first*
//! variable as the most significant bit, so over `[x, y]` index 3 is the
//! constituent `x*y`, index 2 is `x*(1-y)`, and so on.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::binary_eval::{eval_policy, eval_sym, Assignment, DivisionPolicy, ExtValue};
use crate::term::{Term, VarOrder, VarOrderError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DevelopError {
    #[error(transparent)]
    Vars(#[from] VarOrderError),
    #[error("division is not supported here: {0}")]
    DivisionUnsupported(String),
}

/// A product whose k-th factor is `x_k` (sign bit 1) or `1 - x_k` (sign bit 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Constituent {
    index: usize,
    arity: usize,
}

impl Constituent {
    pub fn new(index: usize, arity: usize) -> Constituent {
        assert!(
            index < 1 << arity,
            "constituent index {index} out of range for {arity} variables"
        );
        Constituent { index, arity }
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Sign bits, first variable first.
    pub fn signs(&self) -> Vec<bool> {
        (0..self.arity)
            .map(|k| self.index >> (self.arity - 1 - k) & 1 == 1)
            .collect()
    }

    /// Sign bits as a string such as `"10"` for `x*(1-y)`.
    pub fn sign_string(&self) -> String {
        self.signs()
            .iter()
            .map(|&s| if s { '1' } else { '0' })
            .collect()
    }

    pub fn from_sign_string(signs: &str) -> Option<Constituent> {
        let mut index = 0;
        for c in signs.chars() {
            index = index << 1
                | match c {
                    '1' => 1,
                    '0' => 0,
                    _ => return None,
                };
        }
        Some(Constituent::new(index, signs.len()))
    }

    /// The constituent as a term over `order`; `1` when there are no variables.
    pub fn to_term(&self, order: &VarOrder) -> Term {
        assert_eq!(
            order.len(),
            self.arity,
            "variable order does not match constituent arity"
        );
        Term::product(order.iter().zip(self.signs()).map(|(name, positive)| {
            if positive {
                Term::var(name)
            } else {
                Term::complement(Term::var(name))
            }
        }))
    }

    /// Compact rendering such as `x*(1-y)`.
    pub fn render(&self, order: &VarOrder) -> String {
        assert_eq!(
            order.len(),
            self.arity,
            "variable order does not match constituent arity"
        );
        if self.arity == 0 {
            return "1".to_string();
        }
        let factors: Vec<String> = order
            .iter()
            .zip(self.signs())
            .map(|(name, positive)| {
                if positive {
                    name.to_string()
                } else {
                    format!("(1-{name})")
                }
            })
            .collect();
        factors.join("*")
    }

    /// The binary point at which this constituent is 1.
    pub fn assignment(&self, order: &VarOrder) -> Assignment {
        Assignment::from_index(order, self.index)
    }

    pub fn all(arity: usize) -> impl DoubleEndedIterator<Item = Constituent> {
        (0..1usize << arity).map(move |index| Constituent { index, arity })
    }
}

/// Variable order plus one coefficient per constituent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Development {
    order: VarOrder,
    coeffs: Vec<ExtValue>,
}

impl Development {
    /// Panics unless `coeffs.len() == 2^order.len()`.
    pub fn new(order: VarOrder, coeffs: Vec<ExtValue>) -> Development {
        assert_eq!(
            coeffs.len(),
            1 << order.len(),
            "a development needs 2^n coefficients"
        );
        Development { order, coeffs }
    }

    pub fn constant(order: VarOrder, value: ExtValue) -> Development {
        let coeffs = vec![value; 1 << order.len()];
        Development { order, coeffs }
    }

    pub fn order(&self) -> &VarOrder {
        &self.order
    }

    pub fn coeffs(&self) -> &[ExtValue] {
        &self.coeffs
    }

    pub fn coeff(&self, c: Constituent) -> &ExtValue {
        &self.coeffs[c.index]
    }

    pub fn constituents(&self) -> impl DoubleEndedIterator<Item = Constituent> {
        Constituent::all(self.order.len())
    }

    /// Coefficient-wise union; merges developments taken under different
    /// choices for `0/0`.
    pub fn union(&self, other: &Development) -> Development {
        assert_eq!(
            self.order, other.order,
            "developments over different variables"
        );
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.union(b))
            .collect();
        Development {
            order: self.order.clone(),
            coeffs,
        }
    }

    /// The development as a term `sum k_j * c_j`. `None` if some coefficient
    /// is not a single ordinary value.
    pub fn to_term(&self) -> Option<Term> {
        let addenda: Option<Vec<Term>> = self
            .constituents()
            .rev()
            .map(|c| {
                let k = self.coeff(c).as_singleton()?;
                Some(Term::mul(Term::Const(k.clone()), c.to_term(&self.order)))
            })
            .collect();
        Some(Term::sum(addenda?))
    }

    /// Text rendering, all-positive constituent first, e.g.
    /// `x*y + (1/0)*x*(1-y) + 0*(1-x)*y + (0/0)*(1-x)*(1-y)`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.constituents().rev().enumerate() {
            let coeff = self.coeff(c);
            let negative = coeff.as_singleton().is_some_and(|q| q.is_negative());
            match (i, negative) {
                (0, false) => {}
                (0, true) => out.push('-'),
                (_, false) => out.push_str(" + "),
                (_, true) => out.push_str(" - "),
            }
            let magnitude = match coeff.as_singleton() {
                Some(q) if negative => ExtValue::finite(-q),
                _ => coeff.clone(),
            };
            out.push_str(&render_addendum(
                &magnitude,
                &c.render(&self.order),
                c.arity == 0,
            ));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(DevelopmentWire::from(self)).expect("development serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Development, FormatError> {
        let wire: DevelopmentWire = serde_json::from_value(value.clone())?;
        wire.try_into()
    }
}

fn render_addendum(coeff: &ExtValue, constituent: &str, bare: bool) -> String {
    let prefix = if coeff.is_pure_infinite() {
        "(1/0)".to_string()
    } else if coeff.is_indefinite() {
        "(0/0)".to_string()
    } else {
        match coeff.as_singleton() {
            Some(q) if q.is_one() => return constituent.to_string(),
            Some(q) if q.is_integer() => q.to_string(),
            Some(q) => format!("({q})"),
            None => coeff.to_string(),
        }
    };
    if bare {
        prefix
    } else {
        format!("{prefix}*{constituent}")
    }
}

impl fmt::Display for Development {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Vars(#[from] VarOrderError),
    #[error("expected {expected} coefficients, found {found}")]
    CoeffCount { expected: usize, found: usize },
    #[error("`{0}` is not a rational number")]
    Rational(String),
    #[error("coefficient {0} has neither finite members nor the infinite marker")]
    EmptyCoeff(usize),
    #[error("`{0}` is not a constituent over the listed variables")]
    Constituent(String),
    #[error("the {0} list does not match the coefficients")]
    Mismatch(&'static str),
}

#[derive(Debug, Serialize, Deserialize)]
pub(crate) struct CoeffWire {
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    infinite: bool,
    finite: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub(crate) struct DevelopmentWire {
    vars: Vec<String>,
    coeffs: Vec<CoeffWire>,
}

impl From<&Development> for DevelopmentWire {
    fn from(d: &Development) -> DevelopmentWire {
        DevelopmentWire {
            vars: d.order.names().to_vec(),
            coeffs: d
                .coeffs
                .iter()
                .map(|c| CoeffWire {
                    infinite: c.has_infinite(),
                    finite: c.finites().iter().map(ToString::to_string).collect(),
                })
                .collect(),
        }
    }
}

impl TryFrom<DevelopmentWire> for Development {
    type Error = FormatError;

    fn try_from(wire: DevelopmentWire) -> Result<Development, FormatError> {
        let order = VarOrder::new(wire.vars)?;
        let expected = 1 << order.len();
        if wire.coeffs.len() != expected {
            return Err(FormatError::CoeffCount {
                expected,
                found: wire.coeffs.len(),
            });
        }
        let coeffs = wire
            .coeffs
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                let finites = c
                    .finite
                    .iter()
                    .map(|s| BigRational::from_str(s).map_err(|_| FormatError::Rational(s.clone())))
                    .collect::<Result<Vec<_>, _>>()?;
                ExtValue::new(finites, c.infinite).map_err(|_| FormatError::EmptyCoeff(i))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Development { order, coeffs })
    }
}

/// Development by evaluation: the coefficient of each constituent is the
/// value of `t` at the binary point where that constituent is 1.
pub fn develop(t: &Term, order: &VarOrder) -> Result<Development, DevelopError> {
    order.covers(t)?;
    let coeffs = Constituent::all(order.len())
        .map(|c| eval_sym(t, &c.assignment(order)))
        .collect();
    Ok(Development::new(order.clone(), coeffs))
}

/// Development by evaluation under one concrete division policy; every
/// coefficient is a single value.
pub fn develop_with_policy(
    t: &Term,
    order: &VarOrder,
    policy: &DivisionPolicy,
) -> Result<Development, DevelopError> {
    order.covers(t)?;
    let coeffs = Constituent::all(order.len())
        .map(|c| ExtValue::finite(eval_policy(t, &c.assignment(order), policy)))
        .collect();
    Ok(Development::new(order.clone(), coeffs))
}

/// Coefficient of the constituent matching `a`; every other addendum vanishes there.
pub fn eval_development<'d>(d: &'d Development, a: &Assignment) -> &'d ExtValue {
    &d.coeffs[a.index_in(&d.order)]
}

/// A multilinear monomial: the set of variables it multiplies.
pub type Monomial = BTreeSet<String>;

/// Sparse polynomial in which every variable occurs with exponent at most 1.
///
/// Multiplication merges monomials by set union, which applies `x*x = x`
/// on the fly. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MultilinearPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl MultilinearPoly {
    pub fn zero() -> MultilinearPoly {
        MultilinearPoly::default()
    }

    pub fn constant(value: BigRational) -> MultilinearPoly {
        let mut p = MultilinearPoly::zero();
        p.accumulate(Monomial::new(), value);
        p
    }

    pub fn var(name: &str) -> MultilinearPoly {
        let mut p = MultilinearPoly::zero();
        p.accumulate(Monomial::from([name.to_string()]), BigRational::one());
        p
    }

    fn accumulate(&mut self, monomial: Monomial, value: BigRational) {
        match self.terms.entry(monomial) {
            Entry::Vacant(e) => {
                if !value.is_zero() {
                    e.insert(value);
                }
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += value;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigRational> {
        &self.terms
    }

    pub fn coefficient(&self, monomial: &Monomial) -> BigRational {
        self.terms
            .get(monomial)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &MultilinearPoly) -> MultilinearPoly {
        let mut out = self.clone();
        for (m, v) in &other.terms {
            out.accumulate(m.clone(), v.clone());
        }
        out
    }

    pub fn neg(&self) -> MultilinearPoly {
        MultilinearPoly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), -v)).collect(),
        }
    }

    pub fn sub(&self, other: &MultilinearPoly) -> MultilinearPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MultilinearPoly) -> MultilinearPoly {
        let mut out = MultilinearPoly::zero();
        for (ma, va) in &self.terms {
            for (mb, vb) in &other.terms {
                out.accumulate(ma.union(mb).cloned().collect(), va * vb);
            }
        }
        out
    }

    pub fn scale(&self, k: &BigRational) -> MultilinearPoly {
        if k.is_zero() {
            return MultilinearPoly::zero();
        }
        MultilinearPoly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * k)).collect(),
        }
    }

    /// Value at a binary point. Panics on an unassigned variable.
    pub fn eval(&self, a: &Assignment) -> BigRational {
        self.terms
            .iter()
            .filter(|(m, _)| {
                m.iter()
                    .all(|v| a.get(v).unwrap_or_else(|| panic!("`{v}` is unassigned")))
            })
            .map(|(_, v)| v.clone())
            .sum()
    }

    /// The scalar `k` with `self = k * other`, if there is one. `other` must be nonzero.
    pub fn ratio_to(&self, other: &MultilinearPoly) -> Option<BigRational> {
        let (lead, lead_coeff) = other.terms.iter().next_back()?;
        let k = self.coefficient(lead) / lead_coeff;
        (other.scale(&k) == *self).then_some(k)
    }
}

impl fmt::Display for MultilinearPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, v)) in self.terms.iter().enumerate() {
            let sign = if v.is_negative() { "-" } else { "+" };
            match (i, v.is_negative()) {
                (0, false) => {}
                (0, true) => f.write_str("-")?,
                _ => write!(f, " {sign} ")?,
            }
            let mag = v.abs();
            let vars: Vec<&str> = m.iter().map(String::as_str).collect();
            match (mag.is_one(), vars.is_empty()) {
                (true, true) => f.write_str("1")?,
                (true, false) => f.write_str(&vars.join("*"))?,
                (false, true) => write!(f, "{mag}")?,
                (false, false) => write!(f, "{mag}*{}", vars.join("*"))?,
            }
        }
        Ok(())
    }
}

/// Multilinear normal form of a division-free term.
pub fn to_multilinear(t: &Term) -> Result<MultilinearPoly, DevelopError> {
    Ok(match t {
        Term::Const(c) => MultilinearPoly::constant(c.clone()),
        Term::Var(v) => MultilinearPoly::var(v),
        Term::Add(l, r) => to_multilinear(l)?.add(&to_multilinear(r)?),
        Term::Sub(l, r) => to_multilinear(l)?.sub(&to_multilinear(r)?),
        Term::Mul(l, r) => to_multilinear(l)?.mul(&to_multilinear(r)?),
        Term::Div(..) => return Err(DevelopError::DivisionUnsupported(t.to_string())),
    })
}

/// Development by the method of intersections.
///
/// For each constituent `c` the product `t*c` is reduced to `k*c` by
/// recursion on `t`:
/// leaves are multiplied into the multilinear form of `c` and divided back
/// out; products use `c*c = c`; sums and differences distribute; a
/// quotient `s/u` reduces `s*c` to `a*c` and `u*c` to `b*c` and takes the
/// coefficient `a/b` under the division rules.
pub fn develop_by_intersections(t: &Term, order: &VarOrder) -> Result<Development, DevelopError> {
    order.covers(t)?;
    let coeffs = Constituent::all(order.len())
        .map(|c| {
            let c_poly = to_multilinear(&c.to_term(order)).expect("constituents are division-free");
            relativize(t, &c_poly)
        })
        .collect();
    Ok(Development::new(order.clone(), coeffs))
}

fn relativize(t: &Term, c_poly: &MultilinearPoly) -> ExtValue {
    match t {
        Term::Const(_) | Term::Var(_) => {
            let leaf = to_multilinear(t).expect("leaves are division-free");
            let k = leaf
                .mul(c_poly)
                .ratio_to(c_poly)
                .expect("a leaf times a constituent is a multiple of that constituent");
            ExtValue::finite(k)
        }
        Term::Mul(l, r) => relativize(l, c_poly).mul(&relativize(r, c_poly)),
        Term::Add(l, r) => relativize(l, c_poly).add(&relativize(r, c_poly)),
        Term::Sub(l, r) => relativize(l, c_poly).sub(&relativize(r, c_poly)),
        Term::Div(l, r) => relativize(l, c_poly).div(&relativize(r, c_poly)),
    }
}
