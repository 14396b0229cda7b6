//! Central elements of the group algebra of `S_n`, stored one number per
//! conjugacy class.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::Zero;

use super::partition::{class_size, cycle_type, Partition};
use crate::error::{Error, Result};
use crate::guard;
use crate::rational::{big, Rational};

/// Largest `n` accepted by the cut-and-join engine.
pub const CUT_AND_JOIN_LIMIT: u64 = 30;
/// Largest conjugacy class [`class_multiply`] will enumerate.
pub const CLASS_LIMIT: u64 = 1_000_000;

/// Total weight carried by the elements of each class, keyed by partitions
/// of `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassVector {
    n: usize,
    entries: BTreeMap<Partition, Rational>,
}

impl ClassVector {
    pub fn zero(n: usize) -> Self {
        ClassVector { n, entries: BTreeMap::new() }
    }

    /// The identity element, weight 1 on `1^n`.
    pub fn identity(n: usize) -> Self {
        let mut v = Self::zero(n);
        v.entries.insert(Partition::identity(n), Rational::from_integer(1.into()));
        v
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, lambda: &Partition) -> Rational {
        self.entries.get(lambda).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, lambda: Partition, w: Rational) -> Result<()> {
        if lambda.size() != self.n {
            return Err(Error::InvalidInput(format!("({lambda}) is not a partition of {}", self.n)));
        }
        if w.is_zero() {
            self.entries.remove(&lambda);
        } else {
            self.entries.insert(lambda, w);
        }
        Ok(())
    }

    /// Nonzero entries.
    pub fn entries(&self) -> &BTreeMap<Partition, Rational> {
        &self.entries
    }
}

pub(crate) trait Weight: Clone + Zero {
    fn add_scaled(&mut self, x: &Self, c: u64);
}

impl Weight for BigInt {
    fn add_scaled(&mut self, x: &Self, c: u64) {
        if c == 1 {
            *self += x;
        } else {
            *self += x * c;
        }
    }
}

impl Weight for Rational {
    fn add_scaled(&mut self, x: &Self, c: u64) {
        *self += x * Rational::from_integer(c.into());
    }
}

/// The partitions of `n` with their transposition neighbourhoods.
///
/// Vectors handled here hold the coefficient of a single element of each
/// class rather than the class total.
pub(crate) struct ClassSpace {
    n: usize,
    parts: Vec<Partition>,
    index: HashMap<Partition, usize>,
    /// For a class `μ`, the classes of `y·t` over all transpositions `t`
    /// (with `y` of type `μ`), with multiplicities.
    neighbours: Vec<Vec<(usize, u64)>>,
}

impl ClassSpace {
    pub(crate) fn new(n: usize) -> Result<Self> {
        guard::check("cut-and-join degree", n as u64, CUT_AND_JOIN_LIMIT)?;
        let parts = Partition::all(n);
        let index: HashMap<Partition, usize> = parts.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let neighbours = parts
            .iter()
            .map(|mu| {
                let mut acc: BTreeMap<usize, u64> = BTreeMap::new();
                for (nu, c) in transposition_moves(mu) {
                    *acc.entry(index[&nu]).or_default() += c;
                }
                acc.into_iter().collect()
            })
            .collect();
        Ok(ClassSpace { n, parts, index, neighbours })
    }

    pub(crate) fn len(&self) -> usize {
        self.parts.len()
    }

    pub(crate) fn index_of(&self, lambda: &Partition) -> usize {
        self.index[lambda]
    }

    /// Right multiplication by the sum of all transpositions.
    pub(crate) fn cut_and_join<T: Weight>(&self, v: &[T]) -> Vec<T> {
        self.neighbours
            .iter()
            .map(|nb| {
                let mut acc = T::zero();
                for &(j, c) in nb {
                    if !v[j].is_zero() {
                        acc.add_scaled(&v[j], c);
                    }
                }
                acc
            })
            .collect()
    }

    /// Right multiplication by the sum of the class `lambda`, evaluated on
    /// one representative per output class.
    pub(crate) fn class_multiply<T: Weight>(&self, v: &[T], lambda: &Partition) -> Result<Vec<T>> {
        if lambda.size() != self.n {
            return Err(Error::InvalidInput(format!("({lambda}) is not a partition of {}", self.n)));
        }
        let size = class_size(lambda);
        guard::check("class size", u64::try_from(&size).unwrap_or(u64::MAX), CLASS_LIMIT)?;
        let members = class_elements(lambda);
        let mut prod = vec![0u8; self.n];
        Ok(self
            .parts
            .iter()
            .map(|rho| {
                let x = representative(rho);
                let mut acc = T::zero();
                for y in &members {
                    for (i, p) in prod.iter_mut().enumerate() {
                        *p = y[x[i] as usize];
                    }
                    let j = self.index[&cycle_type(&prod)];
                    if !v[j].is_zero() {
                        acc.add_scaled(&v[j], 1);
                    }
                }
                acc
            })
            .collect())
    }

    pub(crate) fn to_per_element(&self, v: &ClassVector) -> Result<Vec<Rational>> {
        if v.n != self.n {
            return Err(Error::InvalidInput(format!("class vector of S_{} used in S_{}", v.n, self.n)));
        }
        Ok(self.parts.iter().map(|p| v.get(p) / big(class_size(p))).collect())
    }

    pub(crate) fn from_per_element(&self, v: &[Rational]) -> ClassVector {
        let entries = self
            .parts
            .iter()
            .zip(v)
            .filter(|(_, w)| !w.is_zero())
            .map(|(p, w)| (p.clone(), w * big(class_size(p))))
            .collect();
        ClassVector { n: self.n, entries }
    }
}

/// Every way a transposition changes the cycle type `mu`, with the number of
/// transpositions producing it.
fn transposition_moves(mu: &Partition) -> Vec<(Partition, u64)> {
    let mult = mu.multiplicities();
    let mut out = Vec::new();
    let replace = |remove: &[u32], add: &[u32]| {
        let mut parts = mu.parts().to_vec();
        for r in remove {
            let pos = parts.iter().position(|x| x == r).expect("part present");
            parts.remove(pos);
        }
        parts.extend_from_slice(add);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::from_sorted(parts)
    };
    // Joins: points in two different cycles.
    for (x, &(i, ai)) in mult.iter().enumerate() {
        let (iu, ai) = (i as u64, ai as u64);
        if ai >= 2 {
            out.push((replace(&[i, i], &[2 * i]), ai * (ai - 1) / 2 * iu * iu));
        }
        for &(j, aj) in &mult[x + 1..] {
            out.push((replace(&[i, j], &[i + j]), ai * aj as u64 * iu * j as u64));
        }
    }
    // Cuts: two points of one cycle.
    for &(k, ak) in &mult {
        for s in 1..=k / 2 {
            let c = if 2 * s == k { k as u64 / 2 } else { k as u64 };
            out.push((replace(&[k], &[k - s, s]), ak as u64 * c));
        }
    }
    out
}

/// The permutation `(0 1 … b_1-1)(b_1 …)…` of cycle type `lambda`.
fn representative(lambda: &Partition) -> Vec<u8> {
    let mut perm = Vec::with_capacity(lambda.size());
    let mut start = 0usize;
    for &b in lambda.parts() {
        let b = b as usize;
        for i in 0..b {
            perm.push((start + (i + 1) % b) as u8);
        }
        start += b;
    }
    perm
}

/// All permutations of cycle type `lambda`, each listed once: the smallest
/// unused point opens a cycle of each still-available length.
pub(crate) fn class_elements(lambda: &Partition) -> Vec<Vec<u8>> {
    let n = lambda.size();
    let mut lengths: Vec<(u32, usize)> = lambda.multiplicities();
    let mut perm = vec![u8::MAX; n];
    let mut out = Vec::new();
    fn open(perm: &mut Vec<u8>, lengths: &mut Vec<(u32, usize)>, out: &mut Vec<Vec<u8>>) {
        let Some(first) = perm.iter().position(|&x| x == u8::MAX) else {
            out.push(perm.clone());
            return;
        };
        for li in 0..lengths.len() {
            if lengths[li].1 == 0 {
                continue;
            }
            lengths[li].1 -= 1;
            let len = lengths[li].0 as usize;
            let mut cycle = vec![first];
            extend(perm, lengths, out, &mut cycle, len);
            lengths[li].1 += 1;
        }
    }
    fn extend(perm: &mut Vec<u8>, lengths: &mut Vec<(u32, usize)>, out: &mut Vec<Vec<u8>>, cycle: &mut Vec<usize>, len: usize) {
        if cycle.len() == len {
            for w in 0..len {
                perm[cycle[w]] = cycle[(w + 1) % len] as u8;
            }
            open(perm, lengths, out);
            for &c in cycle.iter() {
                perm[c] = u8::MAX;
            }
            return;
        }
        // Points already in this cycle are marked so they are not reused.
        for x in 0..perm.len() {
            if perm[x] != u8::MAX || cycle.contains(&x) {
                continue;
            }
            cycle.push(x);
            extend(perm, lengths, out, cycle, len);
            cycle.pop();
        }
    }
    open(&mut perm, &mut lengths, &mut out);
    out
}

/// Multiplication by the class of transpositions.
pub fn cut_and_join(v: &ClassVector) -> Result<ClassVector> {
    let space = ClassSpace::new(v.n)?;
    let pe = space.to_per_element(v)?;
    Ok(space.from_per_element(&space.cut_and_join(&pe)))
}

/// Multiplication by the class sum of `lambda`, a partition of `n`.
pub fn class_multiply(v: &ClassVector, lambda: &Partition) -> Result<ClassVector> {
    let space = ClassSpace::new(v.n)?;
    let pe = space.to_per_element(v)?;
    Ok(space.from_per_element(&space.class_multiply(&pe, lambda)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn moves_cover_all_transpositions() {
        for n in 1..=8 {
            for mu in Partition::all(n) {
                let total: u64 = transposition_moves(&mu).iter().map(|(_, c)| c).sum();
                assert_eq!(total, (n * (n - 1) / 2) as u64, "({mu})");
            }
        }
    }

    #[test]
    fn s3_examples() {
        let once = cut_and_join(&ClassVector::identity(3)).unwrap();
        assert_eq!(once.entries().len(), 1);
        assert_eq!(once.get(&p("2,1")), int(3));
        let twice = cut_and_join(&once).unwrap();
        assert_eq!(twice.get(&p("1,1,1")), int(3));
        assert_eq!(twice.get(&p("3")), int(6));
        let four = cut_and_join(&cut_and_join(&twice).unwrap()).unwrap();
        assert_eq!(four.get(&p("1,1,1")), int(27));
    }

    #[test]
    fn class_elements_are_the_class() {
        for n in 0..=6 {
            for lambda in Partition::all(n) {
                let els = class_elements(&lambda);
                assert_eq!(BigInt::from(els.len()), class_size(&lambda), "({lambda})");
                assert!(els.iter().all(|e| cycle_type(e) == lambda));
                let distinct: std::collections::HashSet<_> = els.iter().collect();
                assert_eq!(distinct.len(), els.len());
            }
        }
    }

    #[test]
    fn identity_times_class() {
        let lambda = p("3,2,1");
        let v = class_multiply(&ClassVector::identity(6), &lambda).unwrap();
        assert_eq!(v.get(&lambda), big(class_size(&lambda)));
        assert_eq!(v.entries().len(), 1);
    }

    #[test]
    fn transposition_class_agrees() {
        let mut v = ClassVector::zero(4);
        for (i, lambda) in Partition::all(4).into_iter().enumerate() {
            v.set(lambda, int(i as i64 * 3 - 4)).unwrap();
        }
        assert_eq!(class_multiply(&v, &p("2,1,1")).unwrap(), cut_and_join(&v).unwrap());
    }

    #[test]
    fn guards() {
        assert!(matches!(ClassSpace::new(31), Err(Error::GuardExceeded { .. })));
        let space = ClassSpace::new(12).unwrap();
        let v = vec![BigInt::zero(); space.len()];
        assert!(matches!(space.class_multiply(&v, &p("12")), Err(Error::GuardExceeded { .. })));
    }
}
