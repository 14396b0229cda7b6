//! Closed formulas for brackets in genus 0 and 1.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Bracket, Monomial};
use crate::error::{Error, Result};
use crate::rational::{factorial, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosedBracket {
    /// `(n-3)!/Πd_i!` when `Σd = n-3`.
    G0,
    /// `(n! - Σ_{j≥2} (j-2)!(n-j)! σ_j) / (24 Πd_i!)` when `Σd = n`,
    /// with `σ_j` the elementary symmetric functions of the `d_i`.
    G1,
    /// `(n-1)!/Πd_i!` when `Σd = n-1`.
    G1Beta,
}

impl FromStr for ClosedBracket {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "g0" => Ok(ClosedBracket::G0),
            "g1" => Ok(ClosedBracket::G1),
            "g1beta" => Ok(ClosedBracket::G1Beta),
            other => Err(Error::InvalidInput(format!("unknown closed bracket {other:?}"))),
        }
    }
}

fn prod_factorials(m: &Monomial) -> BigInt {
    m.indices().iter().map(|&d| factorial(d as u64)).product()
}

/// `σ_0 … σ_n` of the indices.
fn elementary_symmetric(d: &[u32]) -> Vec<BigInt> {
    let mut e = vec![BigInt::zero(); d.len() + 1];
    e[0] = BigInt::one();
    for (i, &x) in d.iter().enumerate() {
        for j in (1..=i + 1).rev() {
            let t = &e[j - 1] * x;
            e[j] += t;
        }
    }
    e
}

impl ClosedBracket {
    pub fn eval(&self, m: &Monomial) -> Rational {
        let n = m.len() as i64;
        let total = m.total() as i64;
        match self {
            ClosedBracket::G0 => {
                if n < 3 || total != n - 3 {
                    return Rational::zero();
                }
                Rational::new(factorial((n - 3) as u64), prod_factorials(m))
            }
            ClosedBracket::G1 => {
                if n < 1 || total != n {
                    return Rational::zero();
                }
                let n = n as u64;
                let sigma = elementary_symmetric(m.indices());
                let mut num = factorial(n);
                for j in 2..=n {
                    num -= factorial(j - 2) * factorial(n - j) * &sigma[j as usize];
                }
                Rational::new(num, prod_factorials(m) * 24)
            }
            ClosedBracket::G1Beta => {
                if n < 1 || total != n - 1 {
                    return Rational::zero();
                }
                Rational::new(factorial((n - 1) as u64), prod_factorials(m))
            }
        }
    }
}

impl Bracket for ClosedBracket {
    fn genus(&self) -> u32 {
        match self {
            ClosedBracket::G0 => 0,
            ClosedBracket::G1 | ClosedBracket::G1Beta => 1,
        }
    }

    fn value(&self, m: &Monomial) -> Result<Rational> {
        Ok(self.eval(m))
    }

    fn max_total(&self, n: usize) -> Option<u64> {
        let n = n as i64;
        let s = match self {
            ClosedBracket::G0 => n - 3,
            ClosedBracket::G1 => n,
            ClosedBracket::G1Beta => n - 1,
        };
        u64::try_from(s).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn m(d: &[u32]) -> Monomial {
        Monomial::new(d.to_vec())
    }

    #[test]
    fn examples() {
        assert_eq!(ClosedBracket::G0.eval(&m(&[0, 0, 0])), int(1));
        assert_eq!(ClosedBracket::G1.eval(&m(&[1])), frac(1, 24));
        assert_eq!(ClosedBracket::G1Beta.eval(&m(&[0])), int(1));
        assert_eq!(ClosedBracket::G0.eval(&m(&[0, 0])), int(0));
        assert_eq!(ClosedBracket::G1.eval(&m(&[0, 2])), frac(1, 24));
        assert_eq!(ClosedBracket::G1.eval(&m(&[1, 1])), frac(1, 24));
    }

    #[test]
    fn symmetric_functions() {
        let e = elementary_symmetric(&[1, 2, 3]);
        assert_eq!(e, [1, 6, 11, 6].map(BigInt::from).to_vec());
    }
}
