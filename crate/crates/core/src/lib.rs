//! Boole's pseudo-binary calculus.
//!
//! Terms over `+`, `-`, `*`, `/`, 0 and 1 are evaluated with variables
//! restricted to `{0, 1}`, expanded into developments over constituents,
//! read back as class descriptions, and checked against a finite-set
//! semantics in which `+`, `-` and `/` are partial operations.

pub mod binary_eval;
pub mod development;
pub mod interpretation;
pub mod proposition;
pub mod set_model;
pub mod term;

pub use binary_eval::{
    check_duality, eval_policy, eval_sym, verify_equation, verify_equation_with_policy, Assignment,
    DivisionPolicy, ExtValue, Mode, PolicyParseError, Verdict,
};
pub use development::{
    develop, develop_by_intersections, develop_with_policy, eval_development, to_multilinear,
    Constituent, Development, MultilinearPoly,
};
pub use interpretation::{classify, interpret, solve, ClassReading, CoeffClass};
pub use proposition::{
    development_to_dnf, development_to_table, op_table, table_to_development, term_table, BinaryOp,
    PropFormula, TruthTable,
};
pub use set_model::{
    check_collapse, check_collapse_with, check_partiality_correspondence, reading_extension,
    set_eval, EquationSense, SetAssignment, SetVal, Universe, ValueSet,
};
pub use term::{free_vars, parse, print, ParseError, Term, VarOrder};
