//! Direct count of transitive permutation tuples, for small degree.

use std::collections::HashMap;

use num_bigint::BigInt;

use super::classes::class_elements;
use super::{marking_factor, HurwitzQuery};
use crate::error::Result;
use crate::guard;
use crate::rational::{factorial, Rational};

pub const BRUTE_DEGREE_LIMIT: u64 = 6;
pub const BRUTE_SIMPLE_LIMIT: u64 = 10;

type State = (Vec<u8>, Vec<u8>);

/// Multiplies every state by every generator, merging orbits along the
/// cycles of the generator.
fn advance(states: HashMap<State, u128>, gens: &[Vec<u8>]) -> HashMap<State, u128> {
    let mut next: HashMap<State, u128> = HashMap::new();
    for ((perm, blocks), count) in states {
        for g in gens {
            let prod: Vec<u8> = perm.iter().map(|&x| g[x as usize]).collect();
            let mut b = blocks.clone();
            for x in 0..g.len() {
                let (p, q) = (b[x], b[g[x] as usize]);
                if p != q {
                    let (lo, hi) = (p.min(q), p.max(q));
                    for v in b.iter_mut() {
                        if *v == hi {
                            *v = lo;
                        }
                    }
                }
            }
            *next.entry((prod, b)).or_default() += count;
        }
    }
    next
}

/// The connected count `h_{g,n;μ_1…μ_k}` by enumerating permutation
/// tuples, merging tuples with the same running product and orbits.
pub fn brute_force_oracle(q: &HurwitzQuery) -> Result<Rational> {
    guard::check("brute-force degree", q.n as u64, BRUTE_DEGREE_LIMIT)?;
    let Some(c) = q.simple_points() else {
        return Ok(Rational::from_integer(0.into()));
    };
    guard::check("brute-force simple points", c as u64, BRUTE_SIMPLE_LIMIT)?;
    let n = q.n as usize;
    if n == 0 {
        return Ok(Rational::from_integer(0.into()));
    }
    let id: Vec<u8> = (0..n as u8).collect();
    let mut states: HashMap<State, u128> = HashMap::from([((id.clone(), id.clone()), 1)]);
    for mu in &q.mus {
        let Some(lambda) = mu.nontrivial().completed(n) else {
            return Ok(Rational::from_integer(0.into()));
        };
        states = advance(states, &class_elements(&lambda));
    }
    let transpositions: Vec<Vec<u8>> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .map(|(a, b)| {
            let mut t = id.clone();
            t.swap(a, b);
            t
        })
        .collect();
    for _ in 0..c {
        states = advance(states, &transpositions);
    }
    let single = vec![0u8; n];
    let count: u128 = states.iter().filter(|((p, b), _)| *p == id && *b == single).map(|(_, c)| c).sum();
    let marks: BigInt = q.mus.iter().map(|mu| marking_factor(n, &mu.nontrivial(), mu.multiplicity(1))).product();
    Ok(Rational::new(BigInt::from(count) * marks, factorial(n as u64)))
}
