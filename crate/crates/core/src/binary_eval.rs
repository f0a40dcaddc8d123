//! Evaluation over binary assignments.
//!
//! Variables take the values 0 and 1 only, but terms range over the
//! rationals: `x + y` is 2 at `x = y = 1`. Division follows three rules:
//!
//! 1. `p/q` is the ordinary quotient when `q != 0`;
//! 2. `p/0` with `p != 0` is some rational outside `{0, 1}`;
//! 3. `0/0` is 0 or 1, indifferently.
//!
//! [`eval_sym`] keeps every admissible outcome at once as an [`ExtValue`]:
//! rule 2 becomes an "infinite" flag and rule 3 the two-element set
//! `{0, 1}`. [`eval_policy`] instead fixes one concrete choice per rule
//! through a [`DivisionPolicy`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::term::{free_vars, Term, VarOrder};

/// Set-valued extended rational: the possible values of a term at one point.
///
/// A plain value `q` is `{q}`; `0/0` is `{0, 1}`; `1/0` is the infinite
/// marker with no finite members. Never empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtValue {
    finites: BTreeSet<BigRational>,
    infinite: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("an extended value needs at least one finite member or the infinite marker")]
pub struct EmptyExtValue;

impl ExtValue {
    pub fn new(
        finites: impl IntoIterator<Item = BigRational>,
        infinite: bool,
    ) -> Result<ExtValue, EmptyExtValue> {
        let finites: BTreeSet<_> = finites.into_iter().collect();
        if finites.is_empty() && !infinite {
            return Err(EmptyExtValue);
        }
        Ok(ExtValue { finites, infinite })
    }

    pub fn finite(value: BigRational) -> ExtValue {
        ExtValue {
            finites: BTreeSet::from([value]),
            infinite: false,
        }
    }

    pub fn int(value: i64) -> ExtValue {
        ExtValue::finite(rat(value))
    }

    /// `{0, 1}`, the value of `0/0`.
    pub fn indefinite() -> ExtValue {
        ExtValue {
            finites: BTreeSet::from([rat(0), rat(1)]),
            infinite: false,
        }
    }

    /// The value of `p/0` for `p != 0`.
    pub fn infinity() -> ExtValue {
        ExtValue {
            finites: BTreeSet::new(),
            infinite: true,
        }
    }

    pub fn finites(&self) -> &BTreeSet<BigRational> {
        &self.finites
    }

    pub fn has_infinite(&self) -> bool {
        self.infinite
    }

    /// The single ordinary value, if this is one.
    pub fn as_singleton(&self) -> Option<&BigRational> {
        match (self.infinite, self.finites.len()) {
            (false, 1) => self.finites.iter().next(),
            _ => None,
        }
    }

    /// True for `{0}` and `{1}`: the value satisfies `v*v = v` and is determinate.
    pub fn is_class_value(&self) -> bool {
        self.as_singleton()
            .is_some_and(|q| q.is_zero() || q.is_one())
    }

    pub fn is_indefinite(&self) -> bool {
        *self == ExtValue::indefinite()
    }

    /// Purely infinite: no finite member at all.
    pub fn is_pure_infinite(&self) -> bool {
        self.infinite && self.finites.is_empty()
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        self.finites.contains(q)
    }

    pub fn union(&self, other: &ExtValue) -> ExtValue {
        ExtValue {
            finites: self.finites.union(&other.finites).cloned().collect(),
            infinite: self.infinite || other.infinite,
        }
    }

    fn lift(
        &self,
        other: &ExtValue,
        op: impl Fn(&BigRational, &BigRational) -> BigRational,
    ) -> ExtValue {
        let finites = self
            .finites
            .iter()
            .flat_map(|a| other.finites.iter().map(|b| op(a, b)).collect::<Vec<_>>())
            .collect();
        ExtValue {
            finites,
            infinite: self.infinite || other.infinite,
        }
    }

    pub fn add(&self, other: &ExtValue) -> ExtValue {
        self.lift(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &ExtValue) -> ExtValue {
        self.lift(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &ExtValue) -> ExtValue {
        self.lift(other, |a, b| a * b)
    }

    pub fn div(&self, other: &ExtValue) -> ExtValue {
        let mut finites = BTreeSet::new();
        let mut infinite = self.infinite || other.infinite;
        for p in &self.finites {
            for q in &other.finites {
                if !q.is_zero() {
                    finites.insert(p / q);
                } else if p.is_zero() {
                    finites.insert(rat(0));
                    finites.insert(rat(1));
                } else {
                    infinite = true;
                }
            }
        }
        ExtValue { finites, infinite }
    }
}

impl From<BigRational> for ExtValue {
    fn from(value: BigRational) -> ExtValue {
        ExtValue::finite(value)
    }
}

impl fmt::Display for ExtValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.finites.iter().map(ToString::to_string).collect();
        if self.infinite {
            parts.push("inf".to_string());
        }
        write!(f, "{{{}}}", parts.join(","))
    }
}

pub(crate) fn rat(value: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(value))
}

/// Total map from variable names to `{0, 1}` (stored as booleans).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Assignment(BTreeMap<String, bool>);

impl Assignment {
    pub fn new<I, S>(pairs: I) -> Assignment
    where
        I: IntoIterator<Item = (S, bool)>,
        S: Into<String>,
    {
        Assignment(pairs.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }

    /// The assignment encoded by `index` over `order`. The first variable is
    /// the most significant bit, so `index = 0b10` over `[x, y]` is `x=1, y=0`.
    pub fn from_index(order: &VarOrder, index: usize) -> Assignment {
        let n = order.len();
        Assignment(
            order
                .iter()
                .enumerate()
                .map(|(k, name)| (name.to_string(), index >> (n - 1 - k) & 1 == 1))
                .collect(),
        )
    }

    /// Inverse of [`Assignment::from_index`]. Panics if a variable of
    /// `order` is unassigned.
    pub fn index_in(&self, order: &VarOrder) -> usize {
        order.iter().fold(0, |acc, name| {
            let bit = self
                .get(name)
                .unwrap_or_else(|| panic!("`{name}` is unassigned"));
            acc << 1 | usize::from(bit)
        })
    }

    pub fn get(&self, name: &str) -> Option<bool> {
        self.0.get(name).copied()
    }

    pub fn set(&mut self, name: impl Into<String>, value: bool) {
        self.0.insert(name.into(), value);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, bool)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .iter()
            .map(|(k, v)| format!("{k}={}", u8::from(v)))
            .collect();
        f.write_str(&parts.join(", "))
    }
}

/// All `2^n` assignments over `order` in ascending index order, which is
/// lexicographic order with the first variable most significant.
pub fn assignments(order: &VarOrder) -> impl Iterator<Item = Assignment> + '_ {
    (0..1usize << order.len()).map(move |i| Assignment::from_index(order, i))
}

fn lookup(a: &Assignment, name: &str) -> bool {
    a.get(name)
        .unwrap_or_else(|| panic!("variable `{name}` is not assigned"))
}

/// Set-valued evaluation of `t` at a binary point.
///
/// # Panics
///
/// If a variable of `t` is not assigned by `a`.
pub fn eval_sym(t: &Term, a: &Assignment) -> ExtValue {
    match t {
        Term::Const(c) => ExtValue::finite(c.clone()),
        Term::Var(v) => ExtValue::int(i64::from(lookup(a, v))),
        Term::Add(l, r) => eval_sym(l, a).add(&eval_sym(r, a)),
        Term::Sub(l, r) => eval_sym(l, a).sub(&eval_sym(r, a)),
        Term::Mul(l, r) => eval_sym(l, a).mul(&eval_sym(r, a)),
        Term::Div(l, r) => eval_sym(l, a).div(&eval_sym(r, a)),
    }
}

/// One concrete reading of the division rules.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DivisionPolicy {
    nonzero_over_zero: BigRational,
    zero_over_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("the value of p/0 (p != 0) must lie outside {{0, 1}}, got {0}")]
pub struct InvalidRepresentative(pub BigRational);

impl DivisionPolicy {
    pub fn new(
        nonzero_over_zero: BigRational,
        zero_over_zero: bool,
    ) -> Result<DivisionPolicy, InvalidRepresentative> {
        if nonzero_over_zero.is_zero() || nonzero_over_zero.is_one() {
            return Err(InvalidRepresentative(nonzero_over_zero));
        }
        Ok(DivisionPolicy {
            nonzero_over_zero,
            zero_over_zero,
        })
    }

    /// Shorthand for integer representatives.
    pub fn with(rep: i64, zero_over_zero: bool) -> Result<DivisionPolicy, InvalidRepresentative> {
        DivisionPolicy::new(rat(rep), zero_over_zero)
    }

    pub fn nonzero_over_zero(&self) -> &BigRational {
        &self.nonzero_over_zero
    }

    pub fn zero_over_zero(&self) -> bool {
        self.zero_over_zero
    }

    pub fn divide(&self, p: &BigRational, q: &BigRational) -> BigRational {
        if !q.is_zero() {
            p / q
        } else if p.is_zero() {
            rat(i64::from(self.zero_over_zero))
        } else {
            self.nonzero_over_zero.clone()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolicyParseError {
    #[error("`{0}` is not a rational number")]
    Rational(String),
    #[error("the 0/0 choice must be 0 or 1, got `{0}`")]
    Branch(String),
    #[error(transparent)]
    Representative(#[from] InvalidRepresentative),
}

impl std::str::FromStr for DivisionPolicy {
    type Err = PolicyParseError;

    /// `REP` or `REP,B`: the value of `p/0` and the choice for `0/0`
    /// (default 0), e.g. `2,1` or `-1/2`.
    fn from_str(s: &str) -> Result<DivisionPolicy, PolicyParseError> {
        let (rep, branch) = s.split_once(',').unwrap_or((s, "0"));
        let rep: BigRational = rep
            .trim()
            .parse()
            .map_err(|_| PolicyParseError::Rational(rep.trim().to_string()))?;
        let branch = match branch.trim() {
            "0" => false,
            "1" => true,
            other => return Err(PolicyParseError::Branch(other.to_string())),
        };
        Ok(DivisionPolicy::new(rep, branch)?)
    }
}

impl Default for DivisionPolicy {
    /// `p/0 = 2`, `0/0 = 0`.
    fn default() -> DivisionPolicy {
        DivisionPolicy {
            nonzero_over_zero: rat(2),
            zero_over_zero: false,
        }
    }
}

/// Single-valued evaluation under `policy`.
///
/// # Panics
///
/// If a variable of `t` is not assigned by `a`.
pub fn eval_policy(t: &Term, a: &Assignment, policy: &DivisionPolicy) -> BigRational {
    match t {
        Term::Const(c) => c.clone(),
        Term::Var(v) => rat(i64::from(lookup(a, v))),
        Term::Add(l, r) => eval_policy(l, a, policy) + eval_policy(r, a, policy),
        Term::Sub(l, r) => eval_policy(l, a, policy) - eval_policy(r, a, policy),
        Term::Mul(l, r) => eval_policy(l, a, policy) * eval_policy(r, a, policy),
        Term::Div(l, r) => policy.divide(&eval_policy(l, a, policy), &eval_policy(r, a, policy)),
    }
}

/// Ordinary rational evaluation at an arbitrary (not necessarily binary)
/// point. `None` when some denominator is zero.
pub fn eval_rational(t: &Term, point: &BTreeMap<String, BigRational>) -> Option<BigRational> {
    Some(match t {
        Term::Const(c) => c.clone(),
        Term::Var(v) => point.get(v)?.clone(),
        Term::Add(l, r) => eval_rational(l, point)? + eval_rational(r, point)?,
        Term::Sub(l, r) => eval_rational(l, point)? - eval_rational(r, point)?,
        Term::Mul(l, r) => eval_rational(l, point)? * eval_rational(r, point)?,
        Term::Div(l, r) => {
            let den = eval_rational(r, point)?;
            if den.is_zero() {
                return None;
            }
            eval_rational(l, point)? / den
        }
    })
}

/// Whether `t` obeys `t*t = t` with a determinate 0/1 value at every binary point.
pub fn check_duality(t: &Term) -> bool {
    let square = Term::mul(t.clone(), t.clone());
    let order = free_vars(t);
    let holds = assignments(&order).all(|a| {
        let value = eval_sym(t, &a);
        value.is_class_value() && eval_sym(&square, &a) == value
    });
    holds
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Mode {
    /// Every binary assignment counts.
    #[default]
    Free,
    /// Only assignments where both sides take a determinate 0/1 value count.
    Star,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Counterexample(Assignment),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }

    pub fn counterexample(&self) -> Option<&Assignment> {
        match self {
            Verdict::Valid => None,
            Verdict::Counterexample(a) => Some(a),
        }
    }
}

fn equation_vars(lhs: &Term, rhs: &Term) -> VarOrder {
    free_vars(lhs).union(&free_vars(rhs)).sorted()
}

/// Checks `lhs = rhs` at every binary assignment over the sorted union of
/// their variables, comparing full extended values. The first failing
/// assignment in lexicographic order is returned.
pub fn verify_equation(lhs: &Term, rhs: &Term, mode: Mode) -> Verdict {
    let order = equation_vars(lhs, rhs);
    for a in assignments(&order) {
        let (l, r) = (eval_sym(lhs, &a), eval_sym(rhs, &a));
        if mode == Mode::Star && !(l.is_class_value() && r.is_class_value()) {
            continue;
        }
        if l != r {
            return Verdict::Counterexample(a);
        }
    }
    Verdict::Valid
}

/// As [`verify_equation`], with both sides evaluated under `policy`.
pub fn verify_equation_with_policy(
    lhs: &Term,
    rhs: &Term,
    mode: Mode,
    policy: &DivisionPolicy,
) -> Verdict {
    let order = equation_vars(lhs, rhs);
    let is_class = |q: &BigRational| q.is_zero() || q.is_one();
    for a in assignments(&order) {
        let (l, r) = (eval_policy(lhs, &a, policy), eval_policy(rhs, &a, policy));
        if mode == Mode::Star && !(is_class(&l) && is_class(&r)) {
            continue;
        }
        if l != r {
            return Verdict::Counterexample(a);
        }
    }
    Verdict::Valid
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse;
    use proptest::prelude::*;

    fn t(s: &str) -> Term {
        parse(s).unwrap()
    }

    fn at(pairs: &[(&str, u8)]) -> Assignment {
        Assignment::new(pairs.iter().map(|(k, v)| (*k, *v == 1)))
    }

    #[test]
    fn total_tables_for_sum_and_difference() {
        assert_eq!(
            eval_sym(&t("x+y"), &at(&[("x", 1), ("y", 1)])),
            ExtValue::int(2)
        );
        assert_eq!(
            eval_sym(&t("x-y"), &at(&[("x", 0), ("y", 1)])),
            ExtValue::int(-1)
        );
    }

    #[test]
    fn parses_policies() {
        let p: DivisionPolicy = "-1/2,1".parse().unwrap();
        assert_eq!(
            p.nonzero_over_zero(),
            &BigRational::new(BigInt::from(-1), BigInt::from(2))
        );
        assert!(p.zero_over_zero());
        assert_eq!(
            "2".parse::<DivisionPolicy>().unwrap(),
            DivisionPolicy::default()
        );
        assert!(matches!(
            "1".parse::<DivisionPolicy>(),
            Err(PolicyParseError::Representative(_))
        ));
        assert!(matches!(
            "2,5".parse::<DivisionPolicy>(),
            Err(PolicyParseError::Branch(_))
        ));
        assert!(matches!(
            "two".parse::<DivisionPolicy>(),
            Err(PolicyParseError::Rational(_))
        ));
    }

    #[test]
    fn division_rows() {
        let q = t("x/y");
        assert_eq!(
            eval_sym(&q, &at(&[("x", 0), ("y", 0)])),
            ExtValue::indefinite()
        );
        assert_eq!(
            eval_sym(&q, &at(&[("x", 1), ("y", 0)])),
            ExtValue::infinity()
        );
        assert_eq!(eval_sym(&q, &at(&[("x", 0), ("y", 1)])), ExtValue::int(0));
        assert_eq!(eval_sym(&q, &at(&[("x", 1), ("y", 1)])), ExtValue::int(1));
    }

    #[test]
    fn infinity_absorbs_through_arithmetic() {
        let v = eval_sym(&t("x/y + 1"), &at(&[("x", 1), ("y", 0)]));
        assert!(v.is_pure_infinite());
        let v = eval_sym(&t("(x/y)*0"), &at(&[("x", 1), ("y", 0)]));
        assert!(v.has_infinite());
        let v = eval_sym(&t("1/(x/y)"), &at(&[("x", 1), ("y", 0)]));
        assert!(v.has_infinite());
    }

    #[test]
    fn zero_over_nonzero_is_zero() {
        assert_eq!(
            eval_sym(&t("0/2"), &Assignment::default()),
            ExtValue::int(0)
        );
    }

    #[test]
    fn policy_substitution() {
        let z = DivisionPolicy::with(2, true).unwrap();
        assert_eq!(
            eval_policy(&t("x/y"), &at(&[("x", 0), ("y", 0)]), &z),
            rat(1)
        );
        assert_eq!(
            eval_policy(&t("x/y"), &at(&[("x", 1), ("y", 0)]), &z),
            rat(2)
        );
        for rep in [2, -1, 7] {
            for branch in [false, true] {
                let p = DivisionPolicy::with(rep, branch).unwrap();
                assert_eq!(
                    eval_policy(&t("(x/y)*y"), &at(&[("x", 0), ("y", 0)]), &p),
                    rat(0)
                );
            }
        }
    }

    #[test]
    fn policy_rejects_class_representatives() {
        assert!(DivisionPolicy::with(0, false).is_err());
        assert!(DivisionPolicy::with(1, true).is_err());
        assert_eq!(DivisionPolicy::default().nonzero_over_zero(), &rat(2));
    }

    #[test]
    fn duality_examples() {
        assert!(check_duality(&t("x*y")));
        assert!(!check_duality(&t("x+y")));
        assert!(check_duality(&t("1 - x")));
        assert!(check_duality(&t("(1+1)-(1+1)")));
        assert!(check_duality(&t("(x+x)-x")));
        assert!(!check_duality(&t("x/y")));
    }

    #[test]
    fn distributivity_is_valid() {
        assert_eq!(
            verify_equation(&t("z*(x+y)"), &t("z*x + z*y"), Mode::Free),
            Verdict::Valid
        );
    }

    #[test]
    fn regrouping_is_numerically_valid() {
        // The set semantics tells these apart; the numbers do not.
        assert!(verify_equation(&t("(x+y)-z"), &t("x+(y-z)"), Mode::Star).is_valid());
        assert!(verify_equation(&t("(x+y)-z"), &t("x+(y-z)"), Mode::Free).is_valid());
    }

    #[test]
    fn cancelling_a_vanishing_factor_fails() {
        let verdict = verify_equation(&t("(s*t)/t"), &t("s"), Mode::Free);
        let witness = verdict.counterexample().expect("counterexample");
        assert_eq!(witness.get("t"), Some(false));
        // Both values of s fail at t = 0.
        for s in [0, 1] {
            let a = at(&[("s", s), ("t", 0)]);
            assert_ne!(eval_sym(&t("(s*t)/t"), &a), eval_sym(&t("s"), &a));
        }
        // Under a fixed 0/0 branch b the witness is s = 1 - b.
        for branch in [false, true] {
            let p = DivisionPolicy::with(2, branch).unwrap();
            let verdict = verify_equation_with_policy(&t("(s*t)/t"), &t("s"), Mode::Free, &p);
            assert_eq!(
                verdict.counterexample(),
                Some(&at(&[("s", u8::from(!branch)), ("t", 0)]))
            );
        }
    }

    #[test]
    fn relativized_fraction_law_holds_in_star_mode() {
        let lhs = t("(s/t)*u");
        let rhs = t("((s*u)/(t*u))*u");
        assert!(verify_equation(&lhs, &rhs, Mode::Star).is_valid());
    }

    #[test]
    fn counterexamples_come_in_lexicographic_order() {
        let verdict = verify_equation(&t("b"), &t("a*b"), Mode::Free);
        assert_eq!(verdict, Verdict::Counterexample(at(&[("a", 0), ("b", 1)])));
    }

    #[test]
    fn assignment_index_convention() {
        let order = VarOrder::new(["x", "y"]).unwrap();
        assert_eq!(
            Assignment::from_index(&order, 0b10),
            at(&[("x", 1), ("y", 0)])
        );
        for i in 0..4 {
            assert_eq!(Assignment::from_index(&order, i).index_in(&order), i);
        }
    }

    #[test]
    fn division_rule_at_binary_points_matches_product() {
        // x = y*z iff z is a possible value of x/y, whenever x <= y.
        for x in 0..2 {
            for y in x..2 {
                let quotient = eval_sym(
                    &Term::div(Term::int(x), Term::int(y)),
                    &Assignment::default(),
                );
                for z in 0..2 {
                    assert_eq!(x == y * z, quotient.contains(&rat(z)), "x={x} y={y} z={z}");
                }
            }
        }
    }

    #[test]
    fn ext_value_construction() {
        assert!(ExtValue::new([], false).is_err());
        assert_eq!(
            ExtValue::new([rat(0), rat(1)], false).unwrap(),
            ExtValue::indefinite()
        );
        assert_eq!(ExtValue::indefinite().to_string(), "{0,1}");
        assert_eq!(ExtValue::infinity().to_string(), "{inf}");
    }

    fn division_free() -> impl Strategy<Value = Term> {
        let leaf = prop_oneof![
            (0i64..3).prop_map(Term::int),
            prop::sample::select(vec!["x", "y", "z"]).prop_map(Term::var),
        ];
        leaf.prop_recursive(5, 32, 2, |inner| {
            (0u8..3, inner.clone(), inner).prop_map(|(op, l, r)| match op {
                0 => Term::add(l, r),
                1 => Term::sub(l, r),
                _ => Term::mul(l, r),
            })
        })
    }

    fn class_term() -> impl Strategy<Value = Term> {
        let leaf = prop_oneof![
            (0i64..2).prop_map(Term::int),
            prop::sample::select(vec!["x", "y", "z", "w"]).prop_map(Term::var),
        ];
        leaf.prop_recursive(5, 32, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(l, r)| Term::mul(l, r)),
                inner.prop_map(Term::complement),
            ]
        })
    }

    fn all_vars() -> VarOrder {
        VarOrder::new(["x", "y", "z"]).unwrap()
    }

    fn policies() -> Vec<DivisionPolicy> {
        [(2, false), (2, true), (-1, false), (-1, true)]
            .into_iter()
            .map(|(r, b)| DivisionPolicy::with(r, b).unwrap())
            .collect()
    }

    proptest! {
        #[test]
        fn division_free_values_are_ordinary(t in division_free()) {
            for a in assignments(&all_vars()) {
                let point = a.iter().map(|(k, v)| (k.to_string(), rat(i64::from(v)))).collect();
                let ordinary = eval_rational(&t, &point).unwrap();
                prop_assert_eq!(eval_sym(&t, &a), ExtValue::finite(ordinary.clone()));
                for p in policies() {
                    prop_assert_eq!(eval_policy(&t, &a, &p), ordinary.clone());
                }
            }
        }

        #[test]
        fn outermost_division_refines_set_value(num in division_free(), den in division_free()) {
            let q = Term::div(num, den);
            for a in assignments(&all_vars()) {
                let sym = eval_sym(&q, &a);
                for p in policies() {
                    let value = eval_policy(&q, &a, &p);
                    if sym.has_infinite() {
                        prop_assert_eq!(&value, p.nonzero_over_zero());
                    } else {
                        prop_assert!(sym.contains(&value));
                    }
                }
            }
        }

        #[test]
        fn quotient_times_denominator_restores_numerator(s in division_free(), t in division_free()) {
            let restored = Term::mul(Term::div(s.clone(), t.clone()), t.clone());
            for a in assignments(&all_vars()) {
                let (sv, tv) = (eval_sym(&s, &a), eval_sym(&t, &a));
                let (sq, tq) = (sv.as_singleton().unwrap(), tv.as_singleton().unwrap());
                if tq.is_zero() && !sq.is_zero() {
                    continue;
                }
                let rv = eval_sym(&restored, &a);
                prop_assert!(sv.finites().is_subset(rv.finites()));
                if sv.is_class_value() && tv.is_class_value() {
                    prop_assert_eq!(rv, sv);
                }
            }
        }

        #[test]
        fn products_and_complements_are_classes(t in class_term()) {
            prop_assert!(check_duality(&t));
        }
    }
}
