//! Coefficients that remember which ramification data a cover carries.
//!
//! For branch points with profiles `μ_1 … μ_k` there is one variable per
//! distinct part size `j ≥ 2` of each `μ_i` (counting cycles of that length)
//! and one per `μ_i` counting marked fixed points. A monomial is kept only
//! if it divides the full profile, so products are truncated polynomials.

use std::sync::Arc;

use num_traits::{One, Zero};

use super::partition::Partition;
use crate::rational::Rational;
use crate::series::Coefficient;

/// The exponent box `0 ≤ e_v ≤ cap_v`, indexed in mixed radix.
#[derive(Debug, PartialEq, Eq)]
pub struct Lattice {
    /// `(branch point, part size)`; size 1 stands for marked fixed points.
    vars: Vec<(usize, u32)>,
    caps: Vec<usize>,
    digits: Vec<Vec<usize>>,
    branches: usize,
}

impl Lattice {
    pub fn new(mus: &[Partition]) -> Self {
        let mut vars = Vec::new();
        let mut caps = Vec::new();
        for (i, mu) in mus.iter().enumerate() {
            for (j, a) in mu.multiplicities() {
                vars.push((i, j));
                caps.push(a);
            }
        }
        let mut digits = vec![Vec::new()];
        for &cap in &caps {
            let mut next = Vec::with_capacity(digits.len() * (cap + 1));
            // The first variable varies fastest.
            for d in 0..=cap {
                for base in &digits {
                    let mut v: Vec<usize> = base.clone();
                    v.push(d);
                    next.push(v);
                }
            }
            digits = next;
        }
        Lattice { vars, caps, digits, branches: mus.len() }
    }

    pub fn size(&self) -> usize {
        self.digits.len()
    }

    /// Index of the full profile.
    pub fn top(&self) -> usize {
        self.size() - 1
    }

    /// The profile `(ν_i, f_i)` at index `idx`: `ν_i` the cycles of length
    /// at least 2 at branch point `i`, `f_i` the marked fixed points.
    pub fn profile(&self, idx: usize) -> Vec<(Partition, usize)> {
        let mut parts: Vec<Vec<u32>> = vec![Vec::new(); self.branches];
        let mut fixed = vec![0usize; self.branches];
        for (&(i, j), &d) in self.vars.iter().zip(&self.digits[idx]) {
            if j == 1 {
                fixed[i] = d;
            } else {
                parts[i].extend(std::iter::repeat_n(j, d));
            }
        }
        parts
            .into_iter()
            .zip(fixed)
            .map(|(p, f)| (Partition::new(p).expect("positive parts"), f))
            .collect()
    }

    /// `a + b` as exponent vectors, when it stays inside the box.
    fn add(&self, a: usize, b: usize) -> Option<usize> {
        let fits = self.digits[a].iter().zip(&self.digits[b]).zip(&self.caps).all(|((x, y), c)| x + y <= *c);
        fits.then_some(a + b)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MarkedPoly {
    lattice: Arc<Lattice>,
    coeffs: Vec<Rational>,
}

impl MarkedPoly {
    pub fn zero(lattice: &Arc<Lattice>) -> Self {
        MarkedPoly { lattice: Arc::clone(lattice), coeffs: vec![Rational::zero(); lattice.size()] }
    }

    pub fn coeff(&self, idx: usize) -> &Rational {
        &self.coeffs[idx]
    }

    pub fn set(&mut self, idx: usize, c: Rational) {
        self.coeffs[idx] = c;
    }

    pub fn top(&self) -> &Rational {
        &self.coeffs[self.lattice.top()]
    }

    fn map(&self, f: impl Fn(&Rational) -> Rational) -> Self {
        MarkedPoly { lattice: Arc::clone(&self.lattice), coeffs: self.coeffs.iter().map(f).collect() }
    }

    fn zip(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect();
        MarkedPoly { lattice: Arc::clone(&self.lattice), coeffs }
    }
}

impl Coefficient for MarkedPoly {
    fn zero_like(&self) -> Self {
        MarkedPoly::zero(&self.lattice)
    }

    fn one_like(&self) -> Self {
        let mut one = self.zero_like();
        one.coeffs[0] = Rational::one();
        one
    }

    fn vanishes(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn plus(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    fn minus(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    fn times(&self, other: &Self) -> Self {
        let mut out = self.zero_like();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                if let Some(k) = self.lattice.add(i, j) {
                    out.coeffs[k] += a * b;
                }
            }
        }
        out
    }

    fn scaled(&self, c: &Rational) -> Self {
        self.map(|a| a * c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn lattice_profiles() {
        let mus: Vec<Partition> = vec!["2,2,1".parse().unwrap(), "3".parse().unwrap()];
        let l = Lattice::new(&mus);
        assert_eq!(l.size(), 3 * 2 * 2);
        assert_eq!(l.profile(0), vec![(Partition::empty(), 0), (Partition::empty(), 0)]);
        let top = l.profile(l.top());
        assert_eq!(top, vec![("2,2".parse().unwrap(), 1), ("3".parse().unwrap(), 0)]);
    }

    #[test]
    fn truncated_product() {
        let l = Arc::new(Lattice::new(&["2".parse().unwrap()]));
        let mut x = MarkedPoly::zero(&l);
        x.set(1, int(3));
        let one = x.one_like();
        let sum = one.plus(&x);
        let sq = sum.times(&sum);
        assert_eq!(sq.coeff(0), &int(1));
        assert_eq!(sq.coeff(1), &int(6));
        assert!(x.times(&x).vanishes());
    }
}
