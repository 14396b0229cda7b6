//! Generating series `Σ qⁿ/n! Σ_d ⟨τ_{d_1} … τ_{d_n}⟩` and the weighted
//! variant with `p` distinguished points.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Bracket, Monomial};
use crate::error::{Error, Result};
use crate::rational::{factorial, frac, Rational};
use crate::series::PowerSeries;

/// Calls `visit` on every nondecreasing sequence of `size` indices with sum
/// at most `max_total`.
pub fn for_each_multiset(size: usize, max_total: u64, visit: &mut dyn FnMut(&[u32])) {
    let mut buf = Vec::with_capacity(size);
    fill(size, max_total, 0, &mut buf, visit);
}

fn fill(size: usize, budget: u64, min: u32, buf: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32])) {
    if buf.len() == size {
        visit(buf);
        return;
    }
    let slots_left = (size - buf.len()) as u64;
    let mut d = min;
    // Every remaining slot is at least d.
    while d as u64 * slots_left <= budget {
        buf.push(d);
        fill(size, budget - d as u64, d, buf, visit);
        buf.pop();
        d += 1;
    }
}

fn multiplicity_weight(d: &[u32]) -> BigInt {
    Monomial::new(d.to_vec()).multiplicities().into_iter().map(|m| factorial(m as u64)).product()
}

/// `Σ_n qⁿ/n! Σ_{d_1..d_n} ⟨τ_{d_1} … τ_{d_n}⟩` to order `order`, summing
/// over unordered monomials weighted by `1/Π(multiplicity)!`.
pub fn f_series(b: &dyn Bracket, order: usize) -> Result<PowerSeries> {
    let mut coeffs = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut acc = Rational::zero();
        if let Some(max) = b.max_total(n) {
            let mut err = None;
            for_each_multiset(n, max, &mut |d| {
                if err.is_some() {
                    return;
                }
                match b.value(&Monomial::new(d.to_vec())) {
                    Ok(v) if !v.is_zero() => acc += v / Rational::from_integer(multiplicity_weight(d)),
                    Ok(_) => {}
                    Err(e) => err = Some(e),
                }
            });
            if let Some(e) = err {
                return Err(e);
            }
        }
        coeffs.push(acc);
    }
    Ok(PowerSeries::new(coeffs))
}

/// `q + q²/4`, the two genus-0 terms with no moduli space behind them.
pub fn g0_convention_terms(order: usize) -> PowerSeries {
    PowerSeries::from_fn(order, |n| match n {
        1 => Rational::one(),
        2 => frac(1, 4),
        _ => Rational::zero(),
    })
}

/// Ordered `p`-tuples with sum at most `max_total`.
fn for_each_tuple(p: usize, max_total: u64, buf: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32], u64)) {
    if buf.len() == p {
        visit(buf, max_total);
        return;
    }
    for d in 0..=max_total {
        buf.push(d as u32);
        for_each_tuple(p, max_total - d, buf, visit);
        buf.pop();
    }
}

/// `Σ_n qⁿ/(n-p-r)! Σ_d b_1^{d_1} … b_p^{d_p} ⟨τ_{d_1} … τ_{d_{n-r}}⟩` with
/// `r = Σ(b_i - 1)`. The first `p` indices are ordered, the others are
/// summed as a multiset.
pub fn weighted_f_series(b: &dyn Bracket, weights: &[u32], order: usize) -> Result<PowerSeries> {
    if weights.contains(&0) {
        return Err(Error::InvalidInput("weights must be positive".into()));
    }
    let p = weights.len();
    let r: usize = weights.iter().map(|&w| w as usize - 1).sum();
    let mut coeffs = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut acc = Rational::zero();
        if n >= p + r {
            let size = n - r;
            if let Some(max) = b.max_total(size) {
                let mut err = None;
                for_each_tuple(p, max, &mut Vec::with_capacity(p), &mut |first, left| {
                    if err.is_some() {
                        return;
                    }
                    let w: BigInt = first
                        .iter()
                        .zip(weights)
                        .map(|(&d, &bw)| num_traits::pow(BigInt::from(bw), d as usize))
                        .product();
                    let mut inner = Rational::zero();
                    for_each_multiset(size - p, left, &mut |rest| {
                        if err.is_some() {
                            return;
                        }
                        let mut all = first.to_vec();
                        all.extend_from_slice(rest);
                        match b.value(&Monomial::new(all)) {
                            Ok(v) if !v.is_zero() => {
                                inner += v / Rational::from_integer(multiplicity_weight(rest))
                            }
                            Ok(_) => {}
                            Err(e) => err = Some(e),
                        }
                    });
                    acc += inner * Rational::from_integer(w);
                });
                if let Some(e) = err {
                    return Err(e);
                }
            }
        }
        coeffs.push(acc);
    }
    Ok(PowerSeries::new(coeffs))
}
