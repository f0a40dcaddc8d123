//! Truth tables, developments with 0/1 coefficients, and full disjunctive
//! normal forms, plus the partial tables of the arithmetic operations.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::binary_eval::{eval_sym, Assignment, ExtValue};
use crate::development::{Constituent, Development};
use crate::term::{Term, VarOrder, VarOrderError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PropError {
    #[error("a table over {vars} variables needs {expected} rows, found {found}")]
    RowCount {
        vars: usize,
        expected: usize,
        found: usize,
    },
    #[error("table length {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("unexpected `{found}` at offset {offset}; table rows are 0 or 1")]
    Bit { offset: usize, found: char },
    #[error("coefficient of {constituent} is {value}, not 0 or 1")]
    NonBinaryCoefficient { constituent: String, value: String },
    #[error(transparent)]
    Vars(#[from] VarOrderError),
}

/// Rows indexed like constituents: row `j` holds the value at the assignment
/// whose bits, first variable most significant, spell `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    order: VarOrder,
    rows: Vec<bool>,
}

/// `x1, ..., xn`.
pub fn indexed_order(n: usize) -> VarOrder {
    VarOrder::new((1..=n).map(|i| format!("x{i}"))).expect("indexed names are valid")
}

impl TruthTable {
    pub fn new(order: VarOrder, rows: Vec<bool>) -> Result<TruthTable, PropError> {
        let expected = 1usize << order.len();
        if rows.len() != expected {
            return Err(PropError::RowCount {
                vars: order.len(),
                expected,
                found: rows.len(),
            });
        }
        Ok(TruthTable { order, rows })
    }

    pub fn from_fn(order: VarOrder, f: impl Fn(&Assignment) -> bool) -> TruthTable {
        let rows = (0..1usize << order.len())
            .map(|j| f(&Assignment::from_index(&order, j)))
            .collect();
        TruthTable { order, rows }
    }

    /// Parses the bitstring form, highest row first. Without `order` the
    /// variables are `x1..xn`.
    pub fn parse(bits: &str, order: Option<VarOrder>) -> Result<TruthTable, PropError> {
        let mut rows = bits
            .chars()
            .enumerate()
            .map(|(offset, c)| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                found => Err(PropError::Bit { offset, found }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.reverse();
        let order = match order {
            Some(order) => order,
            None if rows.len().is_power_of_two() => {
                indexed_order(rows.len().trailing_zeros() as usize)
            }
            None => return Err(PropError::NotPowerOfTwo(rows.len())),
        };
        TruthTable::new(order, rows)
    }

    pub fn order(&self) -> &VarOrder {
        &self.order
    }

    pub fn row(&self, index: usize) -> bool {
        self.rows[index]
    }

    pub fn rows(&self) -> &[bool] {
        &self.rows
    }

    pub fn eval(&self, a: &Assignment) -> bool {
        self.rows[a.index_in(&self.order)]
    }

    pub fn bit_string(&self) -> String {
        self.rows
            .iter()
            .rev()
            .map(|&b| if b { '1' } else { '0' })
            .collect()
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.bit_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Disjunction {
    Inclusive,
    Exclusive,
}

/// A full DNF: each conjunct is a constituent, read as a conjunction of
/// literals over every variable of the order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PropFormula {
    order: VarOrder,
    conjuncts: Vec<Constituent>,
}

impl PropFormula {
    pub fn order(&self) -> &VarOrder {
        &self.order
    }

    pub fn conjuncts(&self) -> &[Constituent] {
        &self.conjuncts
    }

    pub fn eval(&self, a: &Assignment, disjunction: Disjunction) -> bool {
        let index = a.index_in(&self.order);
        let hits = self.conjuncts.iter().filter(|c| c.index() == index).count();
        match disjunction {
            Disjunction::Inclusive => hits > 0,
            Disjunction::Exclusive => hits % 2 == 1,
        }
    }

    /// The sum of the conjuncts' constituents; `0` when there are none.
    pub fn to_term(&self) -> Term {
        Term::sum(self.conjuncts.iter().map(|c| c.to_term(&self.order)))
    }

    fn render_conjunct(&self, c: Constituent) -> String {
        if self.order.is_empty() {
            return "⊤".to_string();
        }
        let literals: Vec<String> = self
            .order
            .iter()
            .zip(c.signs())
            .map(|(name, positive)| {
                if positive {
                    name.to_string()
                } else {
                    format!("¬{name}")
                }
            })
            .collect();
        let body = literals.join(" ∧ ");
        if literals.len() > 1 && self.conjuncts.len() > 1 {
            format!("({body})")
        } else {
            body
        }
    }
}

impl fmt::Display for PropFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.conjuncts.is_empty() {
            return f.write_str("⊥");
        }
        let parts: Vec<String> = self
            .conjuncts
            .iter()
            .map(|&c| self.render_conjunct(c))
            .collect();
        f.write_str(&parts.join(" ∨ "))
    }
}

pub fn table_to_development(tt: &TruthTable) -> Development {
    let coeffs = tt
        .rows
        .iter()
        .map(|&b| ExtValue::int(i64::from(b)))
        .collect();
    Development::new(tt.order.clone(), coeffs)
}

pub fn development_to_table(d: &Development) -> Result<TruthTable, PropError> {
    let rows = d
        .constituents()
        .map(|c| match d.coeff(c).as_singleton() {
            Some(q) if q.is_zero() => Ok(false),
            Some(q) if q.is_one() => Ok(true),
            _ => Err(PropError::NonBinaryCoefficient {
                constituent: c.render(d.order()),
                value: d.coeff(c).to_string(),
            }),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TruthTable {
        order: d.order().clone(),
        rows,
    })
}

/// One conjunct per unit coefficient, highest index first.
pub fn development_to_dnf(d: &Development) -> Result<PropFormula, PropError> {
    let table = development_to_table(d)?;
    let conjuncts = d
        .constituents()
        .rev()
        .filter(|c| table.row(c.index()))
        .collect();
    Ok(PropFormula {
        order: table.order,
        conjuncts,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    Mul,
    Add,
    Sub,
    Div,
}

impl BinaryOp {
    pub fn symbol(&self) -> char {
        match self {
            BinaryOp::Mul => '*',
            BinaryOp::Add => '+',
            BinaryOp::Sub => '-',
            BinaryOp::Div => '/',
        }
    }

    pub fn apply(&self, l: Term, r: Term) -> Term {
        match self {
            BinaryOp::Mul => Term::mul(l, r),
            BinaryOp::Add => Term::add(l, r),
            BinaryOp::Sub => Term::sub(l, r),
            BinaryOp::Div => Term::div(l, r),
        }
    }
}

impl FromStr for BinaryOp {
    type Err = ();

    fn from_str(s: &str) -> Result<BinaryOp, ()> {
        match s.trim() {
            "*" | "×" => Ok(BinaryOp::Mul),
            "+" => Ok(BinaryOp::Add),
            "-" | "−" => Ok(BinaryOp::Sub),
            "/" => Ok(BinaryOp::Div),
            _ => Err(()),
        }
    }
}

/// How a pseudo-binary value reads as a table cell.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TableEntry {
    Value(bool),
    /// A finite number other than 0 and 1.
    NotAllowed,
    /// A quotient with zero denominator and nonzero numerator.
    NonClassQuotient,
    /// Either 0 or 1.
    Either,
    Other(ExtValue),
}

impl TableEntry {
    pub fn of(v: &ExtValue) -> TableEntry {
        if v.is_indefinite() {
            return TableEntry::Either;
        }
        if v.is_pure_infinite() {
            return TableEntry::NonClassQuotient;
        }
        match v.as_singleton() {
            Some(q) if q.is_zero() => TableEntry::Value(false),
            Some(q) if q.is_one() => TableEntry::Value(true),
            Some(_) => TableEntry::NotAllowed,
            None => TableEntry::Other(v.clone()),
        }
    }
}

impl fmt::Display for TableEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableEntry::Value(b) => write!(f, "{}", u8::from(*b)),
            TableEntry::NotAllowed => f.write_str("not allowed"),
            TableEntry::NonClassQuotient => f.write_str("q ≠ 0,1"),
            TableEntry::Either => f.write_str("0 or 1"),
            TableEntry::Other(v) => write!(f, "{v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub assignment: Assignment,
    pub value: ExtValue,
    pub entry: TableEntry,
}

/// The pseudo-binary table of a term, highest row first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermTable {
    pub term: Term,
    pub order: VarOrder,
    pub rows: Vec<TableRow>,
}

pub fn term_table(t: &Term, order: &VarOrder) -> TermTable {
    let rows = (0..1usize << order.len())
        .rev()
        .map(|j| {
            let assignment = Assignment::from_index(order, j);
            let value = eval_sym(t, &assignment);
            TableRow {
                entry: TableEntry::of(&value),
                assignment,
                value,
            }
        })
        .collect();
    TermTable {
        term: t.clone(),
        order: order.clone(),
        rows,
    }
}

/// The table of `x op y`.
pub fn op_table(op: BinaryOp) -> TermTable {
    let order = VarOrder::new(["x", "y"]).expect("valid names");
    term_table(&op.apply(Term::var("x"), Term::var("y")), &order)
}

impl fmt::Display for TermTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.order.iter().collect();
        writeln!(f, "{} | {}", names.join(" "), self.term)?;
        for row in &self.rows {
            let bits: Vec<String> = self
                .order
                .iter()
                .map(|n| u8::from(row.assignment.get(n) == Some(true)).to_string())
                .collect();
            writeln!(f, "{} | {}", bits.join(" "), row.entry)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binary_eval::assignments;
    use crate::development::develop;
    use crate::term::parse;
    use proptest::prelude::*;

    fn xyz() -> VarOrder {
        VarOrder::new(["x", "y", "z"]).unwrap()
    }

    #[test]
    fn three_variable_example() {
        let tt = TruthTable::parse("10110011", Some(xyz())).unwrap();
        let d = table_to_development(&tt);
        assert_eq!(
            d.render(),
            "x*y*z + 0*x*y*(1-z) + x*(1-y)*z + x*(1-y)*(1-z) + 0*(1-x)*y*z + 0*(1-x)*y*(1-z) \
             + (1-x)*(1-y)*z + (1-x)*(1-y)*(1-z)"
        );
        let dnf = development_to_dnf(&d).unwrap();
        assert_eq!(
            dnf.to_string(),
            "(x ∧ y ∧ z) ∨ (x ∧ ¬y ∧ z) ∨ (x ∧ ¬y ∧ ¬z) ∨ (¬x ∧ ¬y ∧ z) ∨ (¬x ∧ ¬y ∧ ¬z)"
        );
        assert_eq!(development_to_table(&d).unwrap(), tt);
        assert_eq!(tt.to_string(), "10110011");
    }

    #[test]
    fn trivial_tables() {
        let tt = TruthTable::parse("0000", None).unwrap();
        assert_eq!(tt.order().names(), ["x1", "x2"]);
        let d = table_to_development(&tt);
        assert!(d.coeffs().iter().all(|c| c == &ExtValue::int(0)));
        assert_eq!(development_to_dnf(&d).unwrap().to_string(), "⊥");

        let tt = TruthTable::parse("1000", None).unwrap();
        assert_eq!(
            table_to_development(&tt).render(),
            "x1*x2 + 0*x1*(1-x2) + 0*(1-x1)*x2 + 0*(1-x1)*(1-x2)"
        );
    }

    #[test]
    fn dnf_examples() {
        let x = VarOrder::new(["x"]).unwrap();
        let d = develop(&Term::one(), &x).unwrap();
        assert_eq!(development_to_dnf(&d).unwrap().to_string(), "x ∨ ¬x");
        let d = develop(&parse("x*y").unwrap(), &VarOrder::new(["x", "y"]).unwrap()).unwrap();
        assert_eq!(development_to_dnf(&d).unwrap().to_string(), "x ∧ y");
        assert_eq!(development_to_table(&d).unwrap().to_string(), "1000");
    }

    #[test]
    fn non_binary_coefficient_is_named() {
        let d = develop(&parse("x+y").unwrap(), &VarOrder::new(["x", "y"]).unwrap()).unwrap();
        match development_to_table(&d) {
            Err(PropError::NonBinaryCoefficient { constituent, value }) => {
                assert_eq!(constituent, "x*y");
                assert_eq!(value, "{2}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn malformed_tables() {
        assert_eq!(
            TruthTable::parse("10a1", None),
            Err(PropError::Bit {
                offset: 2,
                found: 'a'
            })
        );
        assert_eq!(
            TruthTable::parse("101", None),
            Err(PropError::NotPowerOfTwo(3))
        );
        assert!(matches!(
            TruthTable::parse("10", Some(xyz())),
            Err(PropError::RowCount {
                expected: 8,
                found: 2,
                ..
            })
        ));
    }

    fn entries(op: BinaryOp) -> Vec<String> {
        op_table(op)
            .rows
            .iter()
            .map(|r| r.entry.to_string())
            .collect()
    }

    #[test]
    fn operation_tables() {
        assert_eq!(entries(BinaryOp::Mul), ["1", "0", "0", "0"]);
        assert_eq!(entries(BinaryOp::Add), ["not allowed", "1", "1", "0"]);
        assert_eq!(entries(BinaryOp::Sub), ["0", "1", "not allowed", "0"]);
        assert_eq!(entries(BinaryOp::Div), ["1", "q ≠ 0,1", "0", "0 or 1"]);
        assert_eq!(
            op_table(BinaryOp::Add).to_string(),
            "x y | x + y\n1 1 | not allowed\n1 0 | 1\n0 1 | 1\n0 0 | 0\n"
        );
        assert_eq!("×".parse(), Ok(BinaryOp::Mul));
        assert_eq!("−".parse(), Ok(BinaryOp::Sub));
        assert!("%".parse::<BinaryOp>().is_err());
    }

    #[test]
    fn formula_term_matches_table() {
        let tt = TruthTable::parse("10110011", Some(xyz())).unwrap();
        let f = development_to_dnf(&table_to_development(&tt)).unwrap();
        for a in assignments(tt.order()) {
            let v = eval_sym(&f.to_term(), &a);
            assert_eq!(v, ExtValue::int(i64::from(tt.eval(&a))));
        }
    }

    fn arb_table() -> impl Strategy<Value = TruthTable> {
        (0usize..=4)
            .prop_flat_map(|n| proptest::collection::vec(any::<bool>(), 1 << n))
            .prop_map(|rows| {
                let n = rows.len().trailing_zeros() as usize;
                TruthTable::new(indexed_order(n), rows).unwrap()
            })
    }

    proptest! {
        #[test]
        fn table_round_trip(tt in arb_table()) {
            let d = table_to_development(&tt);
            prop_assert_eq!(development_to_table(&d).unwrap(), tt.clone());
            prop_assert_eq!(TruthTable::parse(&tt.to_string(), Some(tt.order().clone())).unwrap(), tt);
        }

        #[test]
        fn dnf_agrees_with_table(tt in arb_table()) {
            let f = development_to_dnf(&table_to_development(&tt)).unwrap();
            for a in assignments(tt.order()) {
                prop_assert_eq!(f.eval(&a, Disjunction::Inclusive), tt.eval(&a));
                prop_assert_eq!(f.eval(&a, Disjunction::Exclusive), tt.eval(&a));
            }
        }
    }
}
