mod common;

use boole_core::binary_eval::{assignments, eval_sym, ExtValue};
use boole_core::development::{develop, Development};
use boole_core::interpretation::{interpret, solve, ClassReading, CoeffClass, SolveError};
use boole_core::term::{free_vars, Term};
use rand::Rng;

/// Solutions in {0, 1} of `lhs = rhs` for `target`, by trying both values.
fn binary_solutions(
    lhs: &Term,
    rhs: &Term,
    target: &str,
    rest: &boole_core::Assignment,
) -> Vec<bool> {
    [false, true]
        .into_iter()
        .filter(|&b| {
            let mut a = rest.clone();
            a.set(target, b);
            eval_sym(lhs, &a) == eval_sym(rhs, &a)
        })
        .collect()
}

#[test]
fn solutions_match_brute_force() {
    let mut rng = common::rng(21);
    let mut solved = 0;
    for _ in 0..400 {
        let n = rng.gen_range(2..=4);
        let lhs = common::division_free(&mut rng, n, 3);
        let rhs = common::division_free(&mut rng, n, 2);
        let target = common::POOL[rng.gen_range(0..n)];
        let reading = match solve(&lhs, &rhs, target) {
            Ok(r) => r,
            Err(SolveError::TargetAbsent(_) | SolveError::Degenerate(_)) => continue,
            Err(e) => panic!("{lhs} = {rhs}: {e}"),
        };
        solved += 1;
        for a in assignments(reading.order()) {
            let c =
                boole_core::Constituent::new(a.index_in(reading.order()), reading.order().len());
            let expected: Vec<bool> = match reading.class_of(c) {
                CoeffClass::Keep => vec![true],
                CoeffClass::Drop => vec![false],
                CoeffClass::Indefinite => vec![false, true],
                CoeffClass::EquateZero => vec![],
            };
            assert_eq!(
                binary_solutions(&lhs, &rhs, target, &a),
                expected,
                "{lhs} = {rhs} for {target} at {a}"
            );
        }
    }
    assert!(solved > 100, "only {solved} equations solved");
}

#[test]
fn json_round_trips_for_random_terms() {
    let mut rng = common::rng(22);
    for _ in 0..300 {
        let n = rng.gen_range(0..=3);
        let t = if n == 0 {
            Term::int(rng.gen_range(0..=2))
        } else {
            common::term(&mut rng, &common::POOL[..n], 4, 2)
        };
        let d = develop(&t, &free_vars(&t)).unwrap();
        let text = d.to_json().to_string();
        let back = Development::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, d, "{t}");

        let r = interpret(&d);
        let back =
            ClassReading::from_json(&serde_json::from_str(&r.to_json().to_string()).unwrap())
                .unwrap();
        assert_eq!(back, r, "{t}");
        assert_eq!(back.render(), r.render());
    }
}

#[test]
fn reading_reassembles_to_the_development_on_kept_and_dropped() {
    let mut rng = common::rng(23);
    for _ in 0..200 {
        let t = common::term(&mut rng, &common::POOL[..3], 4, 2);
        let d = develop(&t, &common::order(3)).unwrap();
        let r = interpret(&d);
        for c in d.constituents() {
            let coeff = d.coeff(c);
            match r.class_of(c) {
                CoeffClass::Keep => assert_eq!(coeff, &ExtValue::int(1)),
                CoeffClass::Drop => assert_eq!(coeff, &ExtValue::int(0)),
                CoeffClass::Indefinite => assert!(coeff.is_indefinite()),
                CoeffClass::EquateZero => {
                    assert!(!coeff.is_class_value() && !coeff.is_indefinite())
                }
            }
        }
    }
}
