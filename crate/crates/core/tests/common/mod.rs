//! Seeded random terms shared by the integration tests.
#![allow(dead_code)]

use boole_core::term::{Term, VarOrder};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const POOL: [&str; 4] = ["x", "y", "z", "w"];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn order(n: usize) -> VarOrder {
    VarOrder::new(POOL[..n].iter().copied()).unwrap()
}

/// A random term over `vars`, at most `depth` deep, with at most
/// `divisions` division nodes.
pub fn term(rng: &mut ChaCha8Rng, vars: &[&str], depth: usize, divisions: usize) -> Term {
    let mut budget = divisions;
    grow(rng, vars, depth, &mut budget)
}

fn grow(rng: &mut ChaCha8Rng, vars: &[&str], depth: usize, budget: &mut usize) -> Term {
    if depth == 0 || rng.gen_bool(0.3) {
        return if rng.gen_bool(0.8) {
            Term::var(*vars.choose(rng).unwrap())
        } else {
            Term::int(rng.gen_range(0..=2))
        };
    }
    let op = if *budget > 0 && rng.gen_bool(0.25) {
        *budget -= 1;
        3
    } else {
        rng.gen_range(0..3)
    };
    let l = grow(rng, vars, depth - 1, budget);
    let r = grow(rng, vars, depth - 1, budget);
    match op {
        0 => Term::add(l, r),
        1 => Term::sub(l, r),
        2 => Term::mul(l, r),
        _ => Term::div(l, r),
    }
}

/// A division-free term over the first `n` pool variables.
pub fn division_free(rng: &mut ChaCha8Rng, n: usize, depth: usize) -> Term {
    term(rng, &POOL[..n], depth, 0)
}

/// A term with one or two division nodes.
pub fn with_divisions(rng: &mut ChaCha8Rng, n: usize, depth: usize) -> Term {
    loop {
        let t = term(rng, &POOL[..n], depth, 2);
        if (1..=2).contains(&t.division_count()) {
            return t;
        }
    }
}

/// `t` with the operands of some sums and products swapped.
pub fn commute(rng: &mut ChaCha8Rng, t: &Term) -> Term {
    match t {
        Term::Add(l, r) | Term::Mul(l, r) => {
            let (l, r) = (commute(rng, l), commute(rng, r));
            let (l, r) = if rng.gen_bool(0.5) { (r, l) } else { (l, r) };
            if matches!(t, Term::Add(..)) {
                Term::add(l, r)
            } else {
                Term::mul(l, r)
            }
        }
        Term::Sub(l, r) => Term::sub(commute(rng, l), commute(rng, r)),
        Term::Div(l, r) => Term::div(commute(rng, l), commute(rng, r)),
        leaf => leaf.clone(),
    }
}
