//! Finite-universe set semantics.
//!
//! Classes are subsets of a universe `{0, ..., u-1}` with `u <= 6`, stored
//! as bitmasks. Multiplication is intersection; the other operations are
//! partial:
//!
//! * `p + q` is the union, defined only for disjoint `p`, `q`;
//! * `p - q` is the difference, defined only when `q` is a subset of `p`;
//! * `p / q` is defined only when `p` is a subset of `q`, and then denotes
//!   every `z` with `z ∩ q = p`, i.e. every set from `p` up to `p ∪ ¬q`.
//!
//! Division makes terms nondeterministic, so a term denotes a [`ValueSet`]:
//! the set of its possible values.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::binary_eval::{eval_sym, Assignment, ExtValue};
use crate::development::Constituent;
use crate::interpretation::ClassReading;
use crate::term::{free_vars, Term, VarOrder};

pub const MAX_UNIVERSE: u8 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Universe(u8);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetModelError {
    #[error("universe size must be between 1 and {MAX_UNIVERSE}, got {0}")]
    UniverseSize(usize),
    #[error("element {element} is outside a universe of size {size}")]
    Element { element: usize, size: u8 },
    #[error("malformed set `{0}`; expected a list such as {{0,2}}")]
    SetSyntax(String),
    #[error("malformed assignment `{0}`; expected name={{...}}")]
    AssignmentSyntax(String),
    #[error("variable `{0}` is assigned twice")]
    DuplicateVariable(String),
    #[error("variable `{0}` is not assigned")]
    Unassigned(String),
    #[error("equations with division are not supported here")]
    DivisionUnsupported,
}

impl Universe {
    pub fn new(size: usize) -> Result<Universe, SetModelError> {
        match u8::try_from(size) {
            Ok(s @ 1..=MAX_UNIVERSE) => Ok(Universe(s)),
            _ => Err(SetModelError::UniverseSize(size)),
        }
    }

    pub fn size(&self) -> u8 {
        self.0
    }

    pub fn full(&self) -> SetVal {
        SetVal((1u64 << self.0) - 1)
    }

    /// Every subset, in ascending mask order.
    pub fn subsets(&self) -> impl Iterator<Item = SetVal> {
        (0..1u64 << self.0).map(SetVal)
    }

    pub fn complement(&self, s: SetVal) -> SetVal {
        SetVal(self.full().0 & !s.0)
    }
}

/// A subset of the universe as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SetVal(u64);

impl SetVal {
    pub const EMPTY: SetVal = SetVal(0);

    pub fn from_mask(mask: u64) -> SetVal {
        SetVal(mask)
    }

    pub fn from_elements(universe: Universe, elements: &[usize]) -> Result<SetVal, SetModelError> {
        elements.iter().try_fold(SetVal::EMPTY, |acc, &e| {
            if e >= usize::from(universe.0) {
                Err(SetModelError::Element {
                    element: e,
                    size: universe.0,
                })
            } else {
                Ok(SetVal(acc.0 | 1 << e))
            }
        })
    }

    pub fn mask(&self) -> u64 {
        self.0
    }

    pub fn elements(&self) -> Vec<usize> {
        (0..64).filter(|i| self.0 >> i & 1 == 1).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn intersect(self, other: SetVal) -> SetVal {
        SetVal(self.0 & other.0)
    }

    pub fn union(self, other: SetVal) -> SetVal {
        SetVal(self.0 | other.0)
    }

    pub fn minus(self, other: SetVal) -> SetVal {
        SetVal(self.0 & !other.0)
    }

    pub fn is_subset(self, other: SetVal) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: SetVal) -> bool {
        self.0 & other.0 == 0
    }

    /// Every `s` with `self ⊆ s ⊆ self ∪ free`.
    pub fn interval(self, free: SetVal) -> impl Iterator<Item = SetVal> {
        let free = free.minus(self);
        let mut next = Some(free.0);
        std::iter::from_fn(move || {
            let sub = next?;
            next = (sub != 0).then(|| (sub - 1) & free.0);
            Some(SetVal(self.0 | sub))
        })
    }

    /// Parses `{0,2}` or `{}`.
    pub fn parse(universe: Universe, text: &str) -> Result<SetVal, SetModelError> {
        let syntax = || SetModelError::SetSyntax(text.to_string());
        let inner = text
            .trim()
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(syntax)?;
        let elements = inner
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().map_err(|_| syntax()))
            .collect::<Result<Vec<_>, _>>()?;
        SetVal::from_elements(universe, &elements)
    }

    fn sort_key(&self) -> Vec<usize> {
        self.elements()
    }
}

impl fmt::Display for SetVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements().iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Possible denotations of a term: a bitset over the `2^u <= 64` subsets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ValueSet(u64);

impl ValueSet {
    pub fn empty() -> ValueSet {
        ValueSet(0)
    }

    pub fn singleton(s: SetVal) -> ValueSet {
        ValueSet(1 << s.0)
    }

    pub fn insert(&mut self, s: SetVal) {
        self.0 |= 1 << s.0;
    }

    pub fn contains(&self, s: SetVal) -> bool {
        self.0 >> s.0 & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(&self) -> impl Iterator<Item = SetVal> {
        let bits = self.0;
        (0..64u64).filter(move |i| bits >> i & 1 == 1).map(SetVal)
    }

    /// Members sorted by their element lists, `{}` first.
    pub fn sorted(&self) -> Vec<SetVal> {
        let mut out: Vec<SetVal> = self.iter().collect();
        out.sort_by_key(SetVal::sort_key);
        out
    }
}

impl FromIterator<SetVal> for ValueSet {
    fn from_iter<I: IntoIterator<Item = SetVal>>(iter: I) -> ValueSet {
        let mut out = ValueSet::empty();
        for s in iter {
            out.insert(s);
        }
        out
    }
}

impl fmt::Display for ValueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sorted().iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Variables mapped to subsets of one universe.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetAssignment {
    universe: Universe,
    values: BTreeMap<String, SetVal>,
}

impl SetAssignment {
    pub fn new<I, S>(universe: Universe, pairs: I) -> SetAssignment
    where
        I: IntoIterator<Item = (S, SetVal)>,
        S: Into<String>,
    {
        SetAssignment {
            universe,
            values: pairs.into_iter().map(|(k, v)| (k.into(), v)).collect(),
        }
    }

    /// Parses `x={0};y={0,1}`.
    pub fn parse(universe: Universe, text: &str) -> Result<SetAssignment, SetModelError> {
        let mut values = BTreeMap::new();
        for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, set) = part
                .split_once('=')
                .ok_or_else(|| SetModelError::AssignmentSyntax(part.to_string()))?;
            let name = name.trim();
            if VarOrder::new([name]).is_err() {
                return Err(SetModelError::AssignmentSyntax(part.to_string()));
            }
            let set = SetVal::parse(universe, set)?;
            if values.insert(name.to_string(), set).is_some() {
                return Err(SetModelError::DuplicateVariable(name.to_string()));
            }
        }
        Ok(SetAssignment { universe, values })
    }

    /// The `{∅, U}` image of a binary assignment.
    pub fn from_binary(universe: Universe, a: &Assignment) -> SetAssignment {
        let values = a
            .iter()
            .map(|(k, v)| {
                (
                    k.to_string(),
                    if v { universe.full() } else { SetVal::EMPTY },
                )
            })
            .collect();
        SetAssignment { universe, values }
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn get(&self, name: &str) -> Option<SetVal> {
        self.values.get(name).copied()
    }

    pub fn covers(&self, t: &Term) -> Result<(), SetModelError> {
        match free_vars(t).iter().find(|v| !self.values.contains_key(*v)) {
            Some(v) => Err(SetModelError::Unassigned(v.to_string())),
            None => Ok(()),
        }
    }

    /// The region of `c` over `order`: the intersection of its factors.
    pub fn region(&self, c: Constituent, order: &VarOrder) -> SetVal {
        order
            .iter()
            .zip(c.signs())
            .fold(self.universe.full(), |acc, (name, positive)| {
                let x = self
                    .get(name)
                    .unwrap_or_else(|| panic!("`{name}` is unassigned"));
                acc.intersect(if positive {
                    x
                } else {
                    self.universe.complement(x)
                })
            })
    }
}

impl fmt::Display for SetAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .values
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        write!(f, "{} (u={})", parts.join(";"), self.universe.0)
    }
}

/// Every assignment of `order` into subsets of `universe`, first variable
/// most significant.
pub fn set_assignments(
    order: &VarOrder,
    universe: Universe,
) -> impl Iterator<Item = SetAssignment> + '_ {
    let width = u32::from(universe.0);
    let total = 1u64 << (width * order.len() as u32);
    (0..total).map(move |code| {
        let n = order.len() as u32;
        let values = order
            .iter()
            .enumerate()
            .map(|(k, name)| {
                let shift = width * (n - 1 - k as u32);
                (name.to_string(), SetVal(code >> shift & universe.full().0))
            })
            .collect();
        SetAssignment { universe, values }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Operation {
    Constant,
    Add,
    Sub,
    Div,
}

impl fmt::Display for Operation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Operation::Constant => "constant",
            Operation::Add => "+",
            Operation::Sub => "-",
            Operation::Div => "/",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("`{subterm}` is undefined: {}", self.describe())]
pub struct PartialityError {
    pub operation: Operation,
    pub subterm: String,
    pub left: Option<ValueSet>,
    pub right: Option<ValueSet>,
}

impl PartialityError {
    fn describe(&self) -> String {
        match (self.operation, self.left, self.right) {
            (Operation::Constant, ..) => "only 0 and 1 denote classes".to_string(),
            (op, Some(l), Some(r)) => format!("no admissible pair for {op} among {l} and {r}"),
            (op, ..) => format!("{op} has no admissible operands"),
        }
    }
}

/// How a composite handles operand combinations that are undefined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum BranchRule {
    /// Undefined combinations are pruned; fail only if none survives.
    #[default]
    AnyBranch,
    /// Fail as soon as one combination is undefined.
    AllBranches,
}

pub fn set_eval(t: &Term, a: &SetAssignment) -> Result<ValueSet, PartialityError> {
    set_eval_with(t, a, BranchRule::AnyBranch)
}

/// # Panics
///
/// If a variable of `t` is not assigned by `a`.
pub fn set_eval_with(
    t: &Term,
    a: &SetAssignment,
    rule: BranchRule,
) -> Result<ValueSet, PartialityError> {
    let u = a.universe;
    let binary =
        |l: &Term, r: &Term, op: Operation, f: &dyn Fn(SetVal, SetVal, &mut ValueSet) -> bool| {
            let (lv, rv) = (set_eval_with(l, a, rule)?, set_eval_with(r, a, rule)?);
            let mut out = ValueSet::empty();
            let mut complete = true;
            for p in lv.iter() {
                for q in rv.iter() {
                    complete &= f(p, q, &mut out);
                }
            }
            if out.is_empty() || (rule == BranchRule::AllBranches && !complete) {
                return Err(PartialityError {
                    operation: op,
                    subterm: t.to_string(),
                    left: Some(lv),
                    right: Some(rv),
                });
            }
            Ok(out)
        };
    match t {
        Term::Const(c) if c.is_zero() => Ok(ValueSet::singleton(SetVal::EMPTY)),
        Term::Const(c) if c.is_one() => Ok(ValueSet::singleton(u.full())),
        Term::Const(_) => Err(PartialityError {
            operation: Operation::Constant,
            subterm: t.to_string(),
            left: None,
            right: None,
        }),
        Term::Var(v) => {
            Ok(ValueSet::singleton(a.get(v).unwrap_or_else(|| {
                panic!("variable `{v}` is not assigned")
            })))
        }
        Term::Mul(l, r) => {
            let (lv, rv) = (set_eval_with(l, a, rule)?, set_eval_with(r, a, rule)?);
            Ok(lv
                .iter()
                .flat_map(|p| rv.iter().map(move |q| p.intersect(q)))
                .collect())
        }
        Term::Add(l, r) => binary(l, r, Operation::Add, &|p, q, out| {
            let ok = p.is_disjoint(q);
            if ok {
                out.insert(p.union(q));
            }
            ok
        }),
        Term::Sub(l, r) => binary(l, r, Operation::Sub, &|p, q, out| {
            let ok = q.is_subset(p);
            if ok {
                out.insert(p.minus(q));
            }
            ok
        }),
        Term::Div(l, r) => binary(l, r, Operation::Div, &|p, q, out| {
            let ok = p.is_subset(q);
            if ok {
                for z in p.interval(u.complement(q)) {
                    out.insert(z);
                }
            }
            ok
        }),
    }
}

/// Whether a set-semantics result matches an algebraic value at a binary
/// point: 0 ↔ ∅, 1 ↔ U, `{0, 1}` ↔ `{∅, U}`, anything else ↔ undefined.
pub fn corresponds(
    sym: &ExtValue,
    set: &Result<ValueSet, PartialityError>,
    universe: Universe,
) -> bool {
    let classlike = !sym.has_infinite() && sym.finites().iter().all(|q| q.is_zero() || q.is_one());
    match set {
        Err(_) => !classlike,
        Ok(vs) => {
            classlike
                && *vs
                    == sym
                        .finites()
                        .iter()
                        .map(|q| {
                            if q.is_one() {
                                universe.full()
                            } else {
                                SetVal::EMPTY
                            }
                        })
                        .collect()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRowCheck {
    pub term: Term,
    pub left: bool,
    pub right: bool,
    pub algebraic: ExtValue,
    pub set: Result<ValueSet, PartialityError>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrespondenceReport {
    /// The four rows of each of `x+y`, `x-y`, `x/y`.
    pub rows: Vec<TableRowCheck>,
    /// Checks over class-valued operands in `n` variables.
    pub operand_checks: usize,
    pub operand_failures: Vec<String>,
}

impl CorrespondenceReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass) && self.operand_failures.is_empty()
    }
}

/// Compares the pseudo-binary tables of `+`, `-`, `/` with the set semantics
/// over `{∅, U}` (universe of size 1), and repeats the comparison for each
/// operation applied to class-valued operands built from `n <= 3` variables.
pub fn check_partiality_correspondence(n: usize) -> CorrespondenceReport {
    let universe = Universe(1);
    let xy = VarOrder::new(["x", "y"]).expect("valid names");
    let mut rows = Vec::new();
    for op in ["x+y", "x-y", "x/y"] {
        let term = crate::term::parse(op).expect("table term parses");
        for index in (0..4).rev() {
            let a = Assignment::from_index(&xy, index);
            let algebraic = eval_sym(&term, &a);
            let set = set_eval(&term, &SetAssignment::from_binary(universe, &a));
            rows.push(TableRowCheck {
                pass: corresponds(&algebraic, &set, universe),
                left: a.get("x") == Some(true),
                right: a.get("y") == Some(true),
                term: term.clone(),
                algebraic,
                set,
            });
        }
    }

    let names: Vec<String> = (1..=n.min(3)).map(|i| format!("x{i}")).collect();
    let order = VarOrder::new(names.clone()).expect("valid names");
    let mut operands = vec![Term::zero(), Term::one()];
    for name in &names {
        operands.push(Term::var(name.as_str()));
        operands.push(Term::complement(Term::var(name.as_str())));
    }
    let literals = operands.len();
    for i in 2..literals {
        for j in (i + 1)..literals {
            operands.push(Term::mul(operands[i].clone(), operands[j].clone()));
        }
    }
    let mut operand_checks = 0;
    let mut operand_failures = Vec::new();
    for l in &operands {
        for r in &operands {
            let terms = [
                Term::mul(l.clone(), r.clone()),
                Term::add(l.clone(), r.clone()),
                Term::sub(l.clone(), r.clone()),
                Term::div(l.clone(), r.clone()),
            ];
            for term in terms {
                for index in 0..1usize << order.len() {
                    let a = Assignment::from_index(&order, index);
                    let algebraic = eval_sym(&term, &a);
                    let set = set_eval(&term, &SetAssignment::from_binary(universe, &a));
                    operand_checks += 1;
                    if !corresponds(&algebraic, &set, universe) {
                        operand_failures.push(format!("{term} at {a}"));
                    }
                }
            }
        }
    }
    CorrespondenceReport {
        rows,
        operand_checks,
        operand_failures,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WitnessKind {
    /// Only the left side is defined.
    LeftOnly,
    /// Only the right side is defined.
    RightOnly,
    /// Both defined, with different values.
    Differ,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetWitness {
    pub kind: WitnessKind,
    pub assignment: SetAssignment,
    pub lhs: Result<ValueSet, PartialityError>,
    pub rhs: Result<ValueSet, PartialityError>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollapseVerdict {
    /// Valid over every assignment for every universe size up to the bound.
    pub full_valid: bool,
    /// Valid over assignments into `{∅, U}`.
    pub boolean_valid: bool,
    /// First witness of each kind for each universe size.
    pub witnesses: Vec<SetWitness>,
}

impl CollapseVerdict {
    pub fn agree(&self) -> bool {
        self.full_valid == self.boolean_valid
    }
}

/// When an equation counts as holding at one assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum EquationSense {
    /// Wherever the left side is defined, the right side is defined with
    /// the same value.
    #[default]
    Directional,
    /// Both sides defined and equal, or both undefined.
    Strict,
}

fn classify_pair(
    lhs: &Result<ValueSet, PartialityError>,
    rhs: &Result<ValueSet, PartialityError>,
    sense: EquationSense,
) -> Option<WitnessKind> {
    match (lhs, rhs) {
        (Ok(l), Ok(r)) if l != r => Some(WitnessKind::Differ),
        (Ok(_), Err(_)) => Some(WitnessKind::LeftOnly),
        (Err(_), Ok(_)) if sense == EquationSense::Strict => Some(WitnessKind::RightOnly),
        _ => None,
    }
}

/// [`check_collapse_with`] in the directional sense.
pub fn check_collapse(
    lhs: &Term,
    rhs: &Term,
    u_max: usize,
) -> Result<CollapseVerdict, SetModelError> {
    check_collapse_with(lhs, rhs, u_max, EquationSense::Directional)
}

/// Set-semantics validity of `lhs = rhs` for all universes up to `u_max`,
/// next to validity over `{∅, U}` alone. Both sides must be division-free.
pub fn check_collapse_with(
    lhs: &Term,
    rhs: &Term,
    u_max: usize,
    sense: EquationSense,
) -> Result<CollapseVerdict, SetModelError> {
    if lhs.contains_division() || rhs.contains_division() {
        return Err(SetModelError::DivisionUnsupported);
    }
    if !(1..=3).contains(&u_max) {
        return Err(SetModelError::UniverseSize(u_max));
    }
    let order = free_vars(lhs).union(&free_vars(rhs)).sorted();
    let mut witnesses: Vec<SetWitness> = Vec::new();
    let mut full_valid = true;
    for size in 1..=u_max {
        let universe = Universe::new(size)?;
        for a in set_assignments(&order, universe) {
            let (l, r) = (set_eval(lhs, &a), set_eval(rhs, &a));
            if let Some(kind) = classify_pair(&l, &r, sense) {
                full_valid = false;
                let seen = witnesses
                    .iter()
                    .any(|w| w.kind == kind && w.assignment.universe == universe);
                if !seen {
                    witnesses.push(SetWitness {
                        kind,
                        assignment: a,
                        lhs: l,
                        rhs: r,
                    });
                }
            }
        }
    }
    let universe = Universe(1);
    let boolean_valid = crate::binary_eval::assignments(&order).all(|a| {
        let a = SetAssignment::from_binary(universe, &a);
        classify_pair(&set_eval(lhs, &a), &set_eval(rhs, &a), sense).is_none()
    });
    Ok(CollapseVerdict {
        full_valid,
        boolean_valid,
        witnesses,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReadingExtension {
    /// Kept regions plus any part of the indefinite regions.
    Sets(ValueSet),
    /// A constituent that must be empty is not.
    PremiseViolated(Constituent),
}

/// The sets a class reading denotes under `a`.
pub fn reading_extension(r: &ClassReading, a: &SetAssignment) -> ReadingExtension {
    let order = r.order();
    if let Some(&c) = r
        .side_conditions()
        .iter()
        .find(|&&c| !a.region(c, order).is_empty())
    {
        return ReadingExtension::PremiseViolated(c);
    }
    let base = r
        .kept()
        .iter()
        .fold(SetVal::EMPTY, |acc, &c| acc.union(a.region(c, order)));
    let free = r
        .indefinite()
        .iter()
        .fold(SetVal::EMPTY, |acc, (c, _)| acc.union(a.region(*c, order)));
    ReadingExtension::Sets(base.interval(free).collect())
}
