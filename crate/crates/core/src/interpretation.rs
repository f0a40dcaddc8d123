//! Logical readings of developments.
//!
//! Each coefficient decides the fate of its constituent: `1` keeps it,
//! `0` drops it, `0/0` keeps an indefinite part of it (all, some or none),
//! and any other value, `1/0` included, forces the constituent to be empty.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::binary_eval::{DivisionPolicy, ExtValue};
use crate::development::{
    develop, develop_with_policy, to_multilinear, Constituent, DevelopError, Development,
    DevelopmentWire, FormatError,
};
use crate::term::{free_vars, Term, VarOrder};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoeffClass {
    Keep,
    Drop,
    Indefinite,
    EquateZero,
}

pub fn classify(c: &ExtValue) -> CoeffClass {
    match c.as_singleton() {
        Some(q) if q.is_one() => CoeffClass::Keep,
        Some(q) if q.is_zero() => CoeffClass::Drop,
        _ if c.is_indefinite() => CoeffClass::Indefinite,
        _ => CoeffClass::EquateZero,
    }
}

/// Coefficients that only arise from combining `0/0` or `1/0` with further
/// arithmetic, e.g. `{0, 2}` from `0/0 + 0/0`.
fn is_extension_value(c: &ExtValue) -> bool {
    c.as_singleton().is_none() && !c.is_indefinite() && !c.is_pure_infinite()
}

/// The class described by a development.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassReading {
    source: Development,
    kept: Vec<Constituent>,
    indefinite: Vec<(Constituent, String)>,
    side_conditions: Vec<Constituent>,
    dropped: Vec<Constituent>,
    extension_warning: bool,
}

impl ClassReading {
    pub fn order(&self) -> &VarOrder {
        self.source.order()
    }

    pub fn source(&self) -> &Development {
        &self.source
    }

    pub fn kept(&self) -> &[Constituent] {
        &self.kept
    }

    /// Indefinite constituents with their fresh symbols `v1`, `v2`, ...
    pub fn indefinite(&self) -> &[(Constituent, String)] {
        &self.indefinite
    }

    /// Constituents that must equal 0.
    pub fn side_conditions(&self) -> &[Constituent] {
        &self.side_conditions
    }

    pub fn dropped(&self) -> &[Constituent] {
        &self.dropped
    }

    /// Set when some coefficient is a value such as `{0, 2}` that only
    /// extended arithmetic on `0/0` or `1/0` produces.
    pub fn extension_warning(&self) -> bool {
        self.extension_warning
    }

    pub fn class_of(&self, c: Constituent) -> CoeffClass {
        classify(self.source.coeff(c))
    }

    /// Same constituents in the same buckets, whatever the exact coefficients.
    pub fn same_classes(&self, other: &ClassReading) -> bool {
        self.order() == other.order()
            && self.kept == other.kept
            && self.indefinite == other.indefinite
            && self.side_conditions == other.side_conditions
            && self.dropped == other.dropped
    }

    /// `x*y + v1*(1-x)*(1-y), with x*(1-y) = 0`
    pub fn render(&self) -> String {
        let order = self.order();
        let mut addenda: Vec<String> = self.kept.iter().map(|c| c.render(order)).collect();
        addenda.extend(self.indefinite.iter().map(|(c, v)| {
            if c.arity() == 0 {
                v.clone()
            } else {
                format!("{v}*{}", c.render(order))
            }
        }));
        let mut out = if addenda.is_empty() {
            "0".to_string()
        } else {
            addenda.join(" + ")
        };
        if !self.side_conditions.is_empty() {
            let conditions: Vec<String> = self
                .side_conditions
                .iter()
                .map(|c| format!("{} = 0", c.render(order)))
                .collect();
            out.push_str(", with ");
            out.push_str(&conditions.join(", "));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let signs =
            |cs: &mut dyn Iterator<Item = &Constituent>| cs.map(Constituent::sign_string).collect();
        let wire = ReadingWire {
            development: DevelopmentWire::from(&self.source),
            kept: signs(&mut self.kept.iter()),
            indefinite: signs(&mut self.indefinite.iter().map(|(c, _)| c)),
            equate_zero: signs(&mut self.side_conditions.iter()),
            warning: self.extension_warning,
        };
        serde_json::to_value(wire).expect("reading serializes")
    }

    /// Rebuilds a reading and checks the listed buckets against the coefficients.
    pub fn from_json(value: &serde_json::Value) -> Result<ClassReading, FormatError> {
        let wire: ReadingWire = serde_json::from_value(value.clone())?;
        let reading = interpret(&Development::try_from(wire.development)?);
        let parse = |list: &[String]| -> Result<Vec<Constituent>, FormatError> {
            list.iter()
                .map(|s| {
                    Constituent::from_sign_string(s)
                        .filter(|c| c.arity() == reading.order().len())
                        .ok_or_else(|| FormatError::Constituent(s.clone()))
                })
                .collect()
        };
        let indefinite: Vec<Constituent> = reading.indefinite.iter().map(|(c, _)| *c).collect();
        if parse(&wire.kept)? != reading.kept {
            return Err(FormatError::Mismatch("kept"));
        }
        if parse(&wire.indefinite)? != indefinite {
            return Err(FormatError::Mismatch("indefinite"));
        }
        if parse(&wire.equate_zero)? != reading.side_conditions {
            return Err(FormatError::Mismatch("equate_zero"));
        }
        if wire.warning != reading.extension_warning {
            return Err(FormatError::Mismatch("warning"));
        }
        Ok(reading)
    }
}

impl fmt::Display for ClassReading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct ReadingWire {
    #[serde(flatten)]
    development: DevelopmentWire,
    kept: Vec<String>,
    indefinite: Vec<String>,
    equate_zero: Vec<String>,
    #[serde(default)]
    warning: bool,
}

/// Buckets every constituent of `d` by its coefficient class. Buckets and
/// fresh symbols follow the display order, all-positive constituent first.
pub fn interpret(d: &Development) -> ClassReading {
    let mut reading = ClassReading {
        source: d.clone(),
        kept: Vec::new(),
        indefinite: Vec::new(),
        side_conditions: Vec::new(),
        dropped: Vec::new(),
        extension_warning: false,
    };
    for c in d.constituents().rev() {
        let coeff = d.coeff(c);
        match classify(coeff) {
            CoeffClass::Keep => reading.kept.push(c),
            CoeffClass::Drop => reading.dropped.push(c),
            CoeffClass::Indefinite => {
                let symbol = format!("v{}", reading.indefinite.len() + 1);
                reading.indefinite.push((c, symbol));
            }
            CoeffClass::EquateZero => {
                reading.extension_warning |= is_extension_value(coeff);
                reading.side_conditions.push(c);
            }
        }
    }
    reading
}

/// Reading of `t` assembled from single-valued developments under both
/// choices for `0/0`, with `rep` as the value of `p/0`. Constituents kept
/// under one choice and dropped under the other become indefinite.
pub fn interpret_with_policies(
    t: &Term,
    order: &VarOrder,
    rep: &num_rational::BigRational,
) -> Result<ClassReading, PolicyReadingError> {
    let mut merged: Option<Development> = None;
    for branch in [false, true] {
        let policy = DivisionPolicy::new(rep.clone(), branch)?;
        let d = develop_with_policy(t, order, &policy)?;
        merged = Some(match merged {
            None => d,
            Some(m) => m.union(&d),
        });
    }
    Ok(interpret(&merged.expect("two branches")))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolicyReadingError {
    #[error(transparent)]
    Policy(#[from] crate::binary_eval::InvalidRepresentative),
    #[error(transparent)]
    Develop(#[from] DevelopError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("`{0}` does not occur in the equation")]
    TargetAbsent(String),
    #[error("equations containing division are not supported")]
    DivisionUnsupported,
    #[error("the equation carries no information about `{0}`")]
    Degenerate(String),
}

/// The quotient `Q / (Q - P)` whose development solves `lhs = rhs` for
/// `target`, where `P` and `Q` are `lhs - rhs` with `target` set to 1 and 0,
/// together with the remaining variables.
pub fn solution_quotient(
    lhs: &Term,
    rhs: &Term,
    target: &str,
) -> Result<(Term, VarOrder), SolveError> {
    let equation = Term::sub(lhs.clone(), rhs.clone());
    if equation.contains_division() {
        return Err(SolveError::DivisionUnsupported);
    }
    if !equation.contains_var(target) {
        return Err(SolveError::TargetAbsent(target.to_string()));
    }
    let p = equation.substitute(target, &Term::one());
    let q = equation.substitute(target, &Term::zero());
    let denominator = Term::sub(q.clone(), p);
    if to_multilinear(&denominator)
        .expect("division-free")
        .is_zero()
    {
        return Err(SolveError::Degenerate(target.to_string()));
    }
    let order = free_vars(&equation).without(target);
    Ok((Term::div(q, denominator), order))
}

/// Solves the class equation `lhs = rhs` for `target`.
pub fn solve(lhs: &Term, rhs: &Term, target: &str) -> Result<ClassReading, SolveError> {
    let (quotient, order) = solution_quotient(lhs, rhs, target)?;
    let d = develop(&quotient, &order).expect("order is the free variables of the quotient");
    Ok(interpret(&d))
}
