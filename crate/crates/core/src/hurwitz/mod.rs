//! Hurwitz numbers of marked coverings of the sphere.
//!
//! A covering of degree `n` with profiles `μ_1 … μ_k` and `c(n)` simple
//! branch points has monodromy `σ_1 … σ_k τ_1 … τ_c = 1`, where `σ_i` has
//! the parts of `μ_i` of size at least 2 as its nontrivial cycles and the
//! `τ_j` are transpositions. The parts of `μ_i` equal to 1 are marked fixed
//! points of `σ_i`, chosen among all of its fixed points.
//!
//! Disconnected counts come from iterating multiplication by the class of
//! transpositions. Connected counts come from the logarithm of their
//! generating series, with coefficients in [`MarkedPoly`] so that
//! components may share out the ramification data.

mod brute;
mod classes;
mod marked;
mod partition;

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{fit_escalating, leading_asymptotic, AElement, AsymptoticTerm};
use crate::error::{Error, Result};
use crate::rational::{big, binomial, factorial, pow_i, Rational};
use crate::series::{BiSeries, Coefficient, PowerSeries};

pub use brute::{brute_force_oracle, BRUTE_DEGREE_LIMIT, BRUTE_SIMPLE_LIMIT};
pub use classes::{class_multiply, cut_and_join, ClassVector, CLASS_LIMIT, CUT_AND_JOIN_LIMIT};
pub use marked::{Lattice, MarkedPoly};
pub use partition::{class_size, cycle_type, parse_partitions, Partition};

use classes::ClassSpace;

/// Holdout used by [`fit_and_b`].
pub const FIT_HOLDOUT: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HurwitzQuery {
    pub g: u32,
    pub mus: Vec<Partition>,
    pub n: u32,
}

impl HurwitzQuery {
    pub fn new(g: u32, mus: Vec<Partition>, n: u32) -> Self {
        HurwitzQuery { g, mus, n }
    }

    /// `r = Σ r_i`.
    pub fn degeneracy(&self) -> usize {
        total_degeneracy(&self.mus)
    }

    /// `c(n) = 2n + 2g - 2 - r`, or `None` when negative.
    pub fn simple_points(&self) -> Option<usize> {
        simple_points(self.g, &self.mus, self.n as usize)
    }
}

pub fn total_degeneracy(mus: &[Partition]) -> usize {
    mus.iter().map(Partition::degeneracy).sum()
}

/// `c(n) = 2n + 2g - 2 - r`, or `None` when negative.
pub fn simple_points(g: u32, mus: &[Partition], n: usize) -> Option<usize> {
    usize::try_from(2 * n as i64 + 2 * g as i64 - 2 - total_degeneracy(mus) as i64).ok()
}

/// Genus 1 with no ramification profile, whose series is not in the algebra.
pub fn is_exceptional(g: u32, mus: &[Partition]) -> bool {
    g == 1 && mus.iter().all(Partition::is_empty)
}

/// Ways to mark `f` of the fixed points of a permutation of `S_n` whose
/// nontrivial cycles are `nu`.
pub(crate) fn marking_factor(n: usize, nu: &Partition, f: usize) -> BigInt {
    match n.checked_sub(nu.size()) {
        Some(fixed) => binomial(fixed as u64, f as u64),
        None => BigInt::zero(),
    }
}

/// Number of tuples `(σ_1, …, σ_k, τ_1, …, τ_t)` with product 1, where the
/// `σ` run over the classes `prefix ∪ {last}` completed by fixed points, for
/// every `t ≤ t_max` and every entry of `lasts`.
fn tuple_counts(space: &ClassSpace, n: usize, prefix: &[Partition], lasts: &[Partition], t_max: usize) -> Result<Vec<Vec<BigInt>>> {
    let mut out = vec![vec![BigInt::zero(); t_max + 1]; lasts.len()];
    let mut classes = Vec::with_capacity(prefix.len());
    for p in prefix {
        match p.completed(n) {
            Some(c) => classes.push(c),
            None => return Ok(out),
        }
    }
    let mut v = vec![BigInt::zero(); space.len()];
    let start = classes.first().cloned().unwrap_or_else(|| Partition::identity(n));
    v[space.index_of(&start)] = BigInt::one();
    for mid in classes.iter().skip(1) {
        v = space.class_multiply(&v, mid)?;
    }
    let targets: Vec<Option<(usize, BigInt)>> = lasts
        .iter()
        .map(|l| l.completed(n).map(|c| (space.index_of(&c), class_size(&c))))
        .collect();
    for t in 0..=t_max {
        for (row, target) in out.iter_mut().zip(&targets) {
            if let Some((j, size)) = target {
                row[t] = &v[*j] * size;
            }
        }
        if t < t_max {
            v = space.cut_and_join(&v);
        }
    }
    Ok(out)
}

/// Splits a profile list into the classes multiplied in order and the one
/// read off at the end.
fn split_profile(nus: &[Partition]) -> (Vec<Partition>, Partition) {
    match nus.len() {
        0 | 1 => (nus.to_vec(), Partition::empty()),
        k => (nus[..k - 1].to_vec(), nus[k - 1].clone()),
    }
}

/// The disconnected count: tuples with product 1 divided by `n!`, times
/// the marking factors.
pub fn disconnected_count(q: &HurwitzQuery) -> Result<Rational> {
    let Some(c) = q.simple_points() else {
        return Ok(Rational::zero());
    };
    let n = q.n as usize;
    let space = ClassSpace::new(n)?;
    let nus: Vec<Partition> = q.mus.iter().map(Partition::nontrivial).collect();
    let (prefix, last) = split_profile(&nus);
    let counts = tuple_counts(&space, n, &prefix, &[last], c)?;
    let marks: BigInt = q.mus.iter().map(|mu| marking_factor(n, &mu.nontrivial(), mu.multiplicity(1))).product();
    Ok(Rational::new(&counts[0][c] * marks, factorial(n as u64)))
}

/// Row `n` of the disconnected series: for each `t ≤ t_max`, the
/// coefficient of `qⁿ uᵗ` with `u` exponential.
fn disconnected_row(lattice: &Arc<Lattice>, n: usize, t_max: usize) -> Result<Vec<MarkedPoly>> {
    let zero = MarkedPoly::zero(lattice);
    let mut row = vec![zero; t_max + 1];
    if n == 0 {
        row[0].set(0, Rational::one());
        return Ok(row);
    }
    let space = ClassSpace::new(n)?;
    let profiles: Vec<Vec<(Partition, usize)>> = (0..lattice.size()).map(|i| lattice.profile(i)).collect();

    // Profiles sharing everything but the last class share one run.
    let mut groups: BTreeMap<Vec<Partition>, Vec<usize>> = BTreeMap::new();
    for (idx, prof) in profiles.iter().enumerate() {
        let nus: Vec<Partition> = prof.iter().map(|(nu, _)| nu.clone()).collect();
        groups.entry(split_profile(&nus).0).or_default().push(idx);
    }
    let n_fact = big(factorial(n as u64));
    for (prefix, members) in groups {
        let lasts: Vec<Partition> = members
            .iter()
            .map(|&i| {
                let nus: Vec<Partition> = profiles[i].iter().map(|(nu, _)| nu.clone()).collect();
                split_profile(&nus).1
            })
            .collect();
        let counts = tuple_counts(&space, n, &prefix, &lasts, t_max)?;
        for (&idx, per_t) in members.iter().zip(counts) {
            let marks: BigInt = profiles[idx].iter().map(|(nu, f)| marking_factor(n, nu, *f)).product();
            if marks.is_zero() {
                continue;
            }
            let t_fact = (0..=t_max).scan(BigInt::one(), |acc, t| {
                if t > 0 {
                    *acc *= t;
                }
                Some(acc.clone())
            });
            for ((t, count), tf) in per_t.into_iter().enumerate().zip(t_fact) {
                if !count.is_zero() {
                    let c = big(count * &marks) / &n_fact / big(tf);
                    row[t].set(idx, c);
                }
            }
        }
    }
    Ok(row)
}

/// Disconnected covers with any sub-profile of `mus`, as a series in `q`
/// (with `1/n!` built in) and `u` (exponential in the number of simple
/// branch points).
pub fn disconnected_series(mus: &[Partition], order_q: usize, order_u: usize) -> Result<BiSeries<MarkedPoly>> {
    let lattice = Arc::new(Lattice::new(mus));
    ClassSpace::new(order_q)?;
    let rows: Mutex<Vec<Option<Vec<MarkedPoly>>>> = Mutex::new(vec![None; order_q + 1]);
    let next = AtomicUsize::new(0);
    let failure: Mutex<Option<Error>> = Mutex::new(None);
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(order_q + 1);
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i > order_q {
                    break;
                }
                // Largest degrees first, they take longest.
                let n = order_q - i;
                match disconnected_row(&lattice, n, order_u) {
                    Ok(row) => rows.lock().expect("rows lock")[n] = Some(row),
                    Err(e) => {
                        *failure.lock().expect("failure lock") = Some(e);
                        break;
                    }
                }
            });
        }
    });
    if let Some(e) = failure.into_inner().expect("failure lock") {
        return Err(e);
    }
    let mut out = BiSeries::filled(order_q, order_u, MarkedPoly::zero(&lattice));
    for (n, row) in rows.into_inner().expect("rows lock").into_iter().enumerate() {
        for (t, c) in row.expect("every row computed").into_iter().enumerate() {
            if !c.vanishes() {
                out.set(n, t, c);
            }
        }
    }
    Ok(out)
}

/// `h_{g,n;μ_1…μ_k}` for `n = 0 … order`.
pub fn connected_counts(g: u32, mus: &[Partition], order: usize) -> Result<Vec<Rational>> {
    let Some(t_max) = simple_points(g, mus, order) else {
        return Ok(vec![Rational::zero(); order + 1]);
    };
    let conn = disconnected_series(mus, order, t_max)?.log()?;
    Ok((0..=order)
        .map(|n| match simple_points(g, mus, n) {
            Some(c) if n > 0 => conn.get(n, c).top() * big(factorial(c as u64)),
            _ => Rational::zero(),
        })
        .collect())
}

/// `h_{0,n;μ} = (2n-2-r)!/|Aut μ| · Π b_i^{b_i}/b_i! · n^{n-r-3}/(n-p-r)!`,
/// zero when `n < p + r`.
pub fn genus0_closed(n: usize, mu: &Partition) -> Rational {
    let (p, r) = (mu.len(), mu.degeneracy());
    if n == 0 || n < p + r || 2 * n < 2 + r {
        return Rational::zero();
    }
    let mut acc = big(factorial((2 * n - 2 - r) as u64)) / big(mu.aut());
    for &b in mu.parts() {
        acc *= Rational::new(num_traits::pow(BigInt::from(b), b as usize), factorial(b as u64));
    }
    acc * pow_i(n as i64, n as i64 - r as i64 - 3) / big(factorial((n - p - r) as u64))
}

/// `Σ h_{g,n;μ}/c(n)! qⁿ` to order `order`.
pub fn h_series(g: u32, mus: &[Partition], order: usize) -> Result<PowerSeries> {
    let h = connected_counts(g, mus, order)?;
    Ok(PowerSeries::new(
        h.into_iter()
            .enumerate()
            .map(|(n, v)| match simple_points(g, mus, n) {
                Some(c) => v / big(factorial(c as u64)),
                None => Rational::zero(),
            })
            .collect(),
    ))
}

/// Fits the series of `(g, μ)` with windows up to `max_window` and returns
/// the element with its leading asymptotic.
pub fn fit_and_b(g: u32, mus: &[Partition], order: usize, max_window: usize) -> Result<(AElement, AsymptoticTerm)> {
    let series = h_series(g, mus, order)?;
    let elem = fit_escalating(&series, max_window, FIT_HOLDOUT).map_err(|f| Error::FitFailed {
        window: f.window,
        reason: f.to_string(),
        index: f.first_mismatch,
    })?;
    let asym = leading_asymptotic(&elem)?;
    Ok((elem, asym))
}
