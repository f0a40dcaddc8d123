//! The `boole` command.
//!
//! [`run`] takes the full argument vector and writes to the given streams,
//! so the binary and the tests share one entry point.

use std::io::Write;

use boole_core::binary_eval::{eval_sym, verify_equation, verify_equation_with_policy};
use boole_core::development::{develop, develop_by_intersections, develop_with_policy};
use boole_core::interpretation::{interpret, interpret_with_policies, solve};
use boole_core::proposition::{
    development_to_dnf, op_table, table_to_development, term_table, BinaryOp, TruthTable,
};
use boole_core::set_model::{
    check_collapse_with, set_eval_with, BranchRule, EquationSense, SetAssignment, Universe,
};
use boole_core::term::{free_vars, parse, ParseError, Term, VarOrder};
use boole_core::{DivisionPolicy, Mode, Verdict};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PARTIAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "boole",
    version,
    about = "Pseudo-binary calculus: developments, readings and set semantics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Variable order, comma separated; default is order of first occurrence.
    #[arg(long, value_name = "x,y,...")]
    vars: Option<String>,
    /// Print JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Expand a term over its constituents.
    Develop {
        term: String,
        #[command(flatten)]
        common: Common,
        /// Evaluate division single-valued: `REP` or `REP,B` for p/0 = REP, 0/0 = B.
        #[arg(long, value_name = "REP[,B]", allow_hyphen_values = true)]
        policy: Option<DivisionPolicy>,
    },
    /// Develop by the method of intersections and compare with `develop`.
    Intersect {
        term: String,
        #[command(flatten)]
        common: Common,
    },
    /// Read a development as a class description.
    Interpret {
        term: String,
        #[command(flatten)]
        common: Common,
        /// Merge the single-valued developments for both 0/0 choices, with p/0 = REP.
        #[arg(long, value_name = "REP", allow_hyphen_values = true)]
        policies: Option<DivisionPolicy>,
    },
    /// Check an equation at every binary point, or over finite sets.
    Verify {
        equation: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Free)]
        mode: ModeArg,
        /// Check over all subsets of universes of size 1..=U instead.
        #[arg(long, value_name = "U")]
        sets: Option<usize>,
        /// With --sets: also fail where only the right side is defined.
        #[arg(long, requires = "sets")]
        strict: bool,
        #[arg(
            long,
            value_name = "REP[,B]",
            conflicts_with = "sets",
            allow_hyphen_values = true
        )]
        policy: Option<DivisionPolicy>,
        #[arg(long)]
        json: bool,
    },
    /// Solve an equation for one variable.
    Solve {
        equation: String,
        #[arg(long = "for", value_name = "VAR")]
        target: String,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate a term over subsets of a finite universe.
    Seteval {
        term: String,
        #[arg(long, value_name = "U")]
        universe: usize,
        /// Assignment such as "x={0};y={0,1}".
        #[arg(long, value_name = "ASSIGNMENT")]
        assign: String,
        /// Fail when any branch of a composite is undefined.
        #[arg(long)]
        all_branches: bool,
        #[arg(long)]
        json: bool,
    },
    /// Print the pseudo-binary table of an operator (+, -, *, /) or a term.
    Table {
        subject: String,
        #[command(flatten)]
        common: Common,
    },
    /// Convert a truth table bitstring, highest row first, to a full DNF.
    Dnf {
        #[arg(long, value_name = "BITS")]
        table: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Free,
    Star,
}

/// A failure already reported, carrying its exit code.
struct Exit(i32);

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Io<'_> {
    fn usage(&mut self, message: impl std::fmt::Display) -> Exit {
        let _ = writeln!(self.err, "error: {message}");
        Exit(EXIT_USAGE)
    }

    fn parse_error(&mut self, input: &str, e: &ParseError) -> Exit {
        let column = input[..e.offset.min(input.len())].chars().count();
        let _ = writeln!(self.err, "error: {e}\n  {input}\n  {}^", " ".repeat(column));
        Exit(EXIT_USAGE)
    }

    fn print(&mut self, text: impl std::fmt::Display) {
        let _ = writeln!(self.out, "{text}");
    }

    fn print_json(&mut self, value: &serde_json::Value) {
        let text = serde_json::to_string_pretty(value).expect("values serialize");
        self.print(text);
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// code: 0 success, 1 verification failure, 2 usage or parse error, 3
/// partiality error.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let mut io = Io { out, err };
    match dispatch(cli.command, &mut io) {
        Ok(code) | Err(Exit(code)) => code,
    }
}

fn term_arg(io: &mut Io, text: &str) -> Result<Term, Exit> {
    parse(text).map_err(|e| io.parse_error(text, &e))
}

fn equation_arg(io: &mut Io, text: &str) -> Result<(Term, Term), Exit> {
    let mut sides = text.split('=');
    let (Some(lhs), Some(rhs), None) = (sides.next(), sides.next(), sides.next()) else {
        return Err(io.usage(format!("expected one `=` in `{text}`")));
    };
    let l = parse(lhs).map_err(|e| io.parse_error(text, &e))?;
    let r = parse(rhs).map_err(|e| io.parse_error(text, &e.shifted(lhs.len() + 1)))?;
    Ok((l, r))
}

fn order_arg(io: &mut Io, vars: Option<&str>, t: &Term) -> Result<VarOrder, Exit> {
    let order = match vars {
        None => return Ok(free_vars(t)),
        Some(list) => VarOrder::new(list.split(',').map(str::trim).filter(|s| !s.is_empty()))
            .map_err(|e| io.usage(e))?,
    };
    order.covers(t).map_err(|e| io.usage(e))?;
    Ok(order)
}

fn dispatch(command: Command, io: &mut Io) -> Result<i32, Exit> {
    match command {
        Command::Develop {
            term,
            common,
            policy,
        } => {
            let t = term_arg(io, &term)?;
            let order = order_arg(io, common.vars.as_deref(), &t)?;
            let d = match &policy {
                Some(p) => develop_with_policy(&t, &order, p),
                None => develop(&t, &order),
            }
            .map_err(|e| io.usage(e))?;
            if common.json {
                io.print_json(&d.to_json());
            } else {
                io.print(d.render());
            }
            Ok(EXIT_OK)
        }
        Command::Intersect { term, common } => {
            let t = term_arg(io, &term)?;
            let order = order_arg(io, common.vars.as_deref(), &t)?;
            let by_intersections = develop_by_intersections(&t, &order).map_err(|e| io.usage(e))?;
            let direct = develop(&t, &order).map_err(|e| io.usage(e))?;
            let same = by_intersections == direct;
            if common.json {
                io.print_json(&json!({
                    "development": by_intersections.to_json(),
                    "coincides": same,
                }));
            } else {
                io.print(by_intersections.render());
                io.print(if same {
                    "coincides with direct development"
                } else {
                    "DIFFERS from direct development"
                });
            }
            Ok(if same { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Interpret {
            term,
            common,
            policies,
        } => {
            let t = term_arg(io, &term)?;
            let order = order_arg(io, common.vars.as_deref(), &t)?;
            let reading = match &policies {
                Some(p) => interpret_with_policies(&t, &order, p.nonzero_over_zero())
                    .map_err(|e| io.usage(e))?,
                None => interpret(&develop(&t, &order).map_err(|e| io.usage(e))?),
            };
            if common.json {
                io.print_json(&reading.to_json());
            } else {
                io.print(reading.render());
                if reading.extension_warning() {
                    let _ = writeln!(
                        io.err,
                        "warning: some coefficients are neither 0, 1 nor 0/0"
                    );
                }
            }
            Ok(EXIT_OK)
        }
        Command::Verify {
            equation,
            mode,
            sets,
            strict,
            policy,
            json,
        } => {
            let (lhs, rhs) = equation_arg(io, &equation)?;
            match sets {
                Some(u) => verify_sets(io, &lhs, &rhs, u, strict, json),
                None => verify_binary(io, &lhs, &rhs, mode, policy.as_ref(), json),
            }
        }
        Command::Solve {
            equation,
            target,
            json,
        } => {
            let (lhs, rhs) = equation_arg(io, &equation)?;
            let reading = solve(&lhs, &rhs, &target).map_err(|e| io.usage(e))?;
            if json {
                io.print_json(&reading.to_json());
            } else {
                io.print(reading.render());
            }
            Ok(EXIT_OK)
        }
        Command::Seteval {
            term,
            universe,
            assign,
            all_branches,
            json,
        } => {
            let t = term_arg(io, &term)?;
            let universe = Universe::new(universe).map_err(|e| io.usage(e))?;
            let a = SetAssignment::parse(universe, &assign).map_err(|e| io.usage(e))?;
            a.covers(&t).map_err(|e| io.usage(e))?;
            let rule = if all_branches {
                BranchRule::AllBranches
            } else {
                BranchRule::AnyBranch
            };
            match set_eval_with(&t, &a, rule) {
                Ok(values) => {
                    if json {
                        let list: Vec<String> =
                            values.sorted().iter().map(ToString::to_string).collect();
                        io.print_json(&json!({ "values": list }));
                    } else {
                        io.print(values);
                    }
                    Ok(EXIT_OK)
                }
                Err(e) => {
                    let _ = writeln!(io.err, "error: {e}");
                    Err(Exit(EXIT_PARTIAL))
                }
            }
        }
        Command::Table { subject, common } => {
            let table = match subject.parse::<BinaryOp>() {
                Ok(op) if common.vars.is_none() => op_table(op),
                _ => {
                    let t = term_arg(io, &subject)?;
                    let order = order_arg(io, common.vars.as_deref(), &t)?;
                    term_table(&t, &order)
                }
            };
            if common.json {
                let rows: Vec<_> = table
                    .rows
                    .iter()
                    .map(|r| json!({ "assignment": r.assignment.to_string(), "entry": r.entry.to_string() }))
                    .collect();
                io.print_json(&json!({ "term": table.term.to_string(), "rows": rows }));
            } else {
                let text = table.to_string();
                io.print(text.trim_end());
            }
            Ok(EXIT_OK)
        }
        Command::Dnf { table, common } => {
            let order = match common.vars.as_deref() {
                Some(list) => Some(
                    VarOrder::new(list.split(',').map(str::trim).filter(|s| !s.is_empty()))
                        .map_err(|e| io.usage(e))?,
                ),
                None => None,
            };
            let tt = TruthTable::parse(&table, order).map_err(|e| io.usage(e))?;
            let d = table_to_development(&tt);
            let formula = development_to_dnf(&d).expect("tables have 0/1 coefficients");
            if common.json {
                io.print_json(&json!({
                    "table": tt.to_string(),
                    "development": d.to_json(),
                    "formula": formula.to_string(),
                    "term": formula.to_term().to_string(),
                }));
            } else {
                io.print(formula);
            }
            Ok(EXIT_OK)
        }
    }
}

fn verify_binary(
    io: &mut Io,
    lhs: &Term,
    rhs: &Term,
    mode: ModeArg,
    policy: Option<&DivisionPolicy>,
    json: bool,
) -> Result<i32, Exit> {
    let mode = match mode {
        ModeArg::Free => Mode::Free,
        ModeArg::Star => Mode::Star,
    };
    let verdict = match policy {
        Some(p) => verify_equation_with_policy(lhs, rhs, mode, p),
        None => verify_equation(lhs, rhs, mode),
    };
    let code = if verdict.is_valid() {
        EXIT_OK
    } else {
        EXIT_FAILED
    };
    match (&verdict, json) {
        (Verdict::Valid, false) => io.print("valid"),
        (Verdict::Counterexample(a), false) => {
            io.print(format!("counterexample: {a}"));
            io.print(format!("  lhs = {}", eval_sym(lhs, a)));
            io.print(format!("  rhs = {}", eval_sym(rhs, a)));
        }
        (_, true) => io.print_json(&json!({
            "valid": verdict.is_valid(),
            "counterexample": verdict.counterexample().map(|a| {
                a.iter().map(|(k, v)| (k.to_string(), json!(u8::from(v)))).collect::<serde_json::Map<_, _>>()
            }),
        })),
    }
    Ok(code)
}

fn verify_sets(
    io: &mut Io,
    lhs: &Term,
    rhs: &Term,
    u: usize,
    strict: bool,
    json: bool,
) -> Result<i32, Exit> {
    let sense = if strict {
        EquationSense::Strict
    } else {
        EquationSense::Directional
    };
    let verdict = check_collapse_with(lhs, rhs, u, sense).map_err(|e| io.usage(e))?;
    let show = |r: &Result<_, _>| match r {
        Ok(v) => format!("{v}"),
        Err(_) => "undefined".to_string(),
    };
    if json {
        let witnesses: Vec<_> = verdict
            .witnesses
            .iter()
            .map(|w| {
                json!({
                    "kind": format!("{:?}", w.kind),
                    "assignment": w.assignment.to_string(),
                    "lhs": show(&w.lhs),
                    "rhs": show(&w.rhs),
                })
            })
            .collect();
        io.print_json(&json!({
            "valid": verdict.full_valid,
            "boolean_valid": verdict.boolean_valid,
            "witnesses": witnesses,
        }));
    } else {
        io.print(if verdict.full_valid {
            "valid"
        } else {
            "invalid"
        });
        io.print(format!(
            "  over {{∅, U}} only: {}",
            if verdict.boolean_valid {
                "valid"
            } else {
                "invalid"
            }
        ));
        for w in &verdict.witnesses {
            io.print(format!(
                "  {:?}: {}: lhs = {}, rhs = {}",
                w.kind,
                w.assignment,
                show(&w.lhs),
                show(&w.rhs)
            ));
        }
    }
    Ok(if verdict.full_valid {
        EXIT_OK
    } else {
        EXIT_FAILED
    })
}
