//! Distances between marked vertices in Cayley trees.
//!
//! `m_{n,k} = Σ_T l(T)^k` and `p_{n,k} = Σ_T C(l(T), k)`, summed over labeled
//! trees on `n` vertices with an ordered pair of distinct marked vertices at
//! distance `l(T)`.

use std::collections::VecDeque;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::AElement;
use crate::error::{Error, Result};
use crate::guard;
use crate::rational::{big, binomial, factorial, Rational};
use crate::series::PowerSeries;

pub const TREE_LIMIT: u64 = 9;
pub const MOMENT_LIMIT: u64 = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledTree {
    pub n: usize,
    /// Edges on vertices `1..=n`, each with the smaller endpoint first.
    pub edges: Vec<(usize, usize)>,
}

impl LabeledTree {
    /// Decodes a Prüfer sequence of length `n - 2` over `1..=n`.
    pub fn from_prufer(n: usize, seq: &[usize]) -> Self {
        if n == 1 {
            return LabeledTree { n, edges: Vec::new() };
        }
        assert_eq!(seq.len(), n - 2, "Prüfer sequence length");
        let mut degree = vec![1usize; n + 1];
        for &s in seq {
            degree[s] += 1;
        }
        let mut edges = Vec::with_capacity(n - 1);
        for &s in seq {
            let leaf = (1..=n).find(|&v| degree[v] == 1).expect("a leaf exists");
            edges.push((leaf.min(s), leaf.max(s)));
            degree[leaf] -= 1;
            degree[s] -= 1;
        }
        let rest: Vec<usize> = (1..=n).filter(|&v| degree[v] == 1).collect();
        edges.push((rest[0], rest[1]));
        LabeledTree { n, edges }
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n + 1];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// `dist[a][b]` for `a, b` in `1..=n`.
    pub fn distances(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut dist = vec![vec![usize::MAX; self.n + 1]; self.n + 1];
        for src in 1..=self.n {
            let row = &mut dist[src];
            row[src] = 0;
            let mut queue = VecDeque::from([src]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if row[w] == usize::MAX {
                        row[w] = row[v] + 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        dist
    }
}

/// All `n^{n-2}` labeled trees on `1..=n`, in Prüfer order.
pub fn enumerate_trees(n: usize) -> Result<impl Iterator<Item = LabeledTree>> {
    if n == 0 {
        return Err(Error::InvalidInput("a tree needs at least one vertex".into()));
    }
    guard::check("tree vertices", n as u64, TREE_LIMIT)?;
    let len = n.saturating_sub(2);
    let total = (n as u64).pow(len as u32);
    Ok((0..total).map(move |mut code| {
        let mut seq = vec![0usize; len];
        for slot in seq.iter_mut().rev() {
            *slot = (code % n as u64) as usize + 1;
            code /= n as u64;
        }
        LabeledTree::from_prufer(n, &seq)
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MomentKind {
    /// Power moments `l^k`.
    M,
    /// Binomial moments `C(l, k)`.
    P,
}

impl FromStr for MomentKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "m" | "M" => Ok(MomentKind::M),
            "p" | "P" => Ok(MomentKind::P),
            other => Err(Error::InvalidInput(format!("unknown moment kind {other:?}"))),
        }
    }
}

impl MomentKind {
    pub fn name(self) -> &'static str {
        match self {
            MomentKind::M => "m",
            MomentKind::P => "p",
        }
    }

    fn weight(self, l: u64, k: u32) -> BigInt {
        match self {
            MomentKind::M => num_traits::pow(BigInt::from(l), k as usize),
            MomentKind::P => binomial(l, k as u64),
        }
    }
}

/// `counts[l]` = number of (tree, ordered distinct pair at distance `l`), by
/// enumerating every tree.
pub fn distance_counts_brute(n: usize) -> Result<Vec<BigInt>> {
    guard::check("moment vertices", n as u64, MOMENT_LIMIT)?;
    let mut counts = vec![0u64; n.max(1)];
    for tree in enumerate_trees(n)? {
        let dist = tree.distances();
        for a in 1..=n {
            for b in 1..=n {
                if a != b {
                    counts[dist[a][b]] += 1;
                }
            }
        }
    }
    Ok(counts.into_iter().map(BigInt::from).collect())
}

/// Same table without enumeration: choose the path (ordered endpoints and
/// `l-1` interior vertices in order), then a rooted forest on `n` vertices
/// whose `l+1` roots are the path vertices, counted as `(l+1) n^{n-l-2}`.
pub fn distance_counts(n: usize) -> Vec<BigInt> {
    let mut counts = vec![BigInt::zero(); n.max(1)];
    for (l, slot) in counts.iter_mut().enumerate().skip(1) {
        let l = l as u64;
        let n = n as u64;
        let paths = (0..l + 1).fold(BigInt::one(), |acc, i| acc * (n - i));
        let forests = if n == l + 1 {
            BigInt::one()
        } else {
            BigInt::from(l + 1) * num_traits::pow(BigInt::from(n), (n - l - 2) as usize)
        };
        *slot = paths * forests;
    }
    counts
}

fn moment_from_counts(counts: &[BigInt], k: u32, kind: MomentKind) -> BigInt {
    counts
        .iter()
        .enumerate()
        .skip(1)
        .map(|(l, c)| c * kind.weight(l as u64, k))
        .fold(BigInt::zero(), |a, b| a + b)
}

/// Exact moment by full enumeration; limited to `n ≤ 8`.
pub fn path_moments(n: usize, k: u32, kind: MomentKind) -> Result<Rational> {
    Ok(big(moment_from_counts(&distance_counts_brute(n)?, k, kind)))
}

/// Moment from the closed distance table; no size limit.
pub fn path_moments_counted(n: usize, k: u32, kind: MomentKind) -> Rational {
    big(moment_from_counts(&distance_counts(n), k, kind))
}

/// `Σ_n moment_{n,k} qⁿ/n!` to the given order, from the closed table.
pub fn moment_series(k: u32, kind: MomentKind, order: usize) -> PowerSeries {
    PowerSeries::from_fn(order, |n| {
        if n < 2 {
            Rational::zero()
        } else {
            path_moments_counted(n, k, kind) / big(factorial(n as u64))
        }
    })
}

/// Stirling numbers of the second kind `S(k, j)`.
pub fn stirling2(k: u32, j: u32) -> BigInt {
    let (k, j) = (k as usize, j as usize);
    let mut table = vec![vec![BigInt::zero(); j + 1]; k + 1];
    table[0][0] = BigInt::one();
    for a in 1..=k {
        for b in 1..=j.min(a) {
            table[a][b] = &table[a - 1][b - 1] + &table[a - 1][b] * BigInt::from(b);
        }
    }
    table[k][j].clone()
}

/// The element of the algebra whose coefficients are the moments:
/// `p_{·,k} ↦ Z^{k+1}` and `m_{·,k} ↦ Σ_j S(k,j) j! Z^{j+1}`.
pub fn moment_prediction(k: u32, kind: MomentKind) -> AElement {
    let z = AElement::z();
    match kind {
        MomentKind::P => z.pow(k + 1),
        MomentKind::M => (1..=k).fold(AElement::zero(), |acc, j| {
            let c = big(stirling2(k, j) * factorial(j as u64));
            acc.add(&z.pow(j + 1).scale(&c))
        }),
    }
}
