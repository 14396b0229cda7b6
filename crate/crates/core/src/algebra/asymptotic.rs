//! Leading growth `c·eⁿ·n^alpha` of coefficient sequences.

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use super::{closed_form, AElement};
use crate::error::{Error, Result};
use crate::rational::{self, big, frac, Rational};

/// `c = c_gauss/√(2π) + c_plain`; in a leading term only one is nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsymptoticTerm {
    pub alpha: Rational,
    pub c_gauss: Rational,
    pub c_plain: Rational,
}

impl AsymptoticTerm {
    pub fn to_json(&self) -> Value {
        json!({
            "alpha": rational::to_string(&self.alpha),
            "c_gauss": rational::to_string(&self.c_gauss),
            "c_plain": rational::to_string(&self.c_plain),
        })
    }

    /// The constant `c` truncated to `digits` decimal places.
    pub fn c_decimal(&self, digits: usize) -> String {
        let guard = 12;
        let scale = num_traits::pow(BigInt::from(10), digits + guard);
        let mut value = self.c_plain.clone();
        if !self.c_gauss.is_zero() {
            let root = sqrt_two_pi_scaled(digits + guard);
            value += &self.c_gauss * Rational::new(scale, root);
        }
        rational::to_decimal(&value, digits)
    }
}

/// `⌊√(2π)·10^digits⌋`, up to an error of a couple of units in the last place.
fn sqrt_two_pi_scaled(digits: usize) -> BigInt {
    let scale = num_traits::pow(BigInt::from(10), 2 * digits);
    let two_pi: BigInt = pi_scaled(&scale) * 2;
    two_pi.sqrt()
}

/// `π·scale` by Machin's formula `π = 16 atan(1/5) - 4 atan(1/239)`.
fn pi_scaled(scale: &BigInt) -> BigInt {
    let guard = BigInt::from(10).pow(10);
    let s = scale * &guard;
    let pi = atan_inv(5, &s) * 16 - atan_inv(239, &s) * 4;
    pi / guard
}

fn atan_inv(x: u64, scale: &BigInt) -> BigInt {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = scale / &x;
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !power.is_zero() {
        let term = &power / (2 * k + 1);
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    sum
}

/// `√(2π)` truncated to `digits` decimal places.
pub fn sqrt_two_pi_decimal(digits: usize) -> String {
    let guard = 12;
    let root = sqrt_two_pi_scaled(digits + guard);
    let scale = num_traits::pow(BigInt::from(10), digits + guard);
    rational::to_decimal(&Rational::new(root, scale), digits)
}

/// Leading term from the closed form: `P` contributes `n^{deg P - 1/2}`
/// with constant `lc(P)/√(2π)`, `Q` contributes `n^{deg Q}` with `lc(Q)/2`.
pub fn leading_asymptotic(a: &AElement) -> Result<AsymptoticTerm> {
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    let cf = closed_form(a);
    let from_p = cf.p.iter().next_back().map(|(e, c)| AsymptoticTerm {
        alpha: big(BigInt::from(*e)) - frac(1, 2),
        c_gauss: c.clone(),
        c_plain: Rational::zero(),
    });
    let from_q = cf.q.iter().next_back().map(|(e, c)| AsymptoticTerm {
        alpha: big(BigInt::from(*e)),
        c_gauss: Rational::zero(),
        c_plain: c / big(BigInt::from(2)),
    });
    match (from_p, from_q) {
        (Some(p), Some(q)) => Ok(if p.alpha > q.alpha { p } else { q }),
        (Some(t), None) | (None, Some(t)) => Ok(t),
        (None, None) => Err(Error::NoGrowth),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn generator_asymptotics() {
        let z = leading_asymptotic(&AElement::z()).unwrap();
        assert_eq!((z.alpha, z.c_gauss, z.c_plain), (frac(-1, 2), int(1), int(0)));
        let z2 = leading_asymptotic(&AElement::z().pow(2)).unwrap();
        assert_eq!((z2.alpha, z2.c_gauss, z2.c_plain), (int(0), int(0), frac(1, 2)));
        let y = leading_asymptotic(&AElement::y()).unwrap();
        assert_eq!((y.alpha, y.c_gauss), (frac(-3, 2), int(1)));
    }

    #[test]
    fn degenerate_elements() {
        assert_eq!(leading_asymptotic(&AElement::zero()), Err(Error::ZeroElement));
        assert_eq!(leading_asymptotic(&AElement::constant(int(3))), Err(Error::NoGrowth));
    }

    #[test]
    fn digits_of_root_two_pi() {
        assert_eq!(sqrt_two_pi_decimal(30), "2.506628274631000502415765284811");
        let t = AsymptoticTerm { alpha: int(0), c_gauss: int(1), c_plain: int(0) };
        assert_eq!(t.c_decimal(20), "0.39894228040143267793");
    }
}
