//! Per-coefficient closed forms `P(n)·nⁿ/n! + Q(n)·A_n/n!`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::AElement;
use crate::rational::{self, big, binomial, factorial, int, pow_i, Rational};
use crate::series::{a_number, gen_z, PowerSeries};

/// Polynomial in `Z`, index = degree.
type ZPoly = Vec<Rational>;

fn zpoly_d(f: &ZPoly) -> ZPoly {
    // D acts on polynomials in Z as f ↦ f'(Z) · Z(1+Z)².
    let mut out = vec![Rational::zero(); f.len() + 2];
    for (d, c) in f.iter().enumerate().skip(1) {
        if c.is_zero() {
            continue;
        }
        let dc = c * int(d as i64);
        out[d] += &dc;
        out[d + 1] += &dc * int(2);
        out[d + 2] += dc;
    }
    trim(out)
}

fn trim(mut f: ZPoly) -> ZPoly {
    while f.len() > 1 && f.last().is_some_and(Zero::is_zero) {
        f.pop();
    }
    f
}

fn z_monomial(d: usize) -> ZPoly {
    let mut f = vec![Rational::zero(); d + 1];
    f[d] = Rational::one();
    f
}

/// `D^m` applied to `Z^start`, written as a polynomial in `Z`.
pub fn d_power_in_z(m: u32, start: usize) -> Vec<Rational> {
    (0..m).fold(z_monomial(start), |f, _| zpoly_d(&f))
}

/// `Z^k = Σ dz[m]·D^m Z + Σ dz2[m]·D^m(Z²)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ZDecomposition {
    pub dz: BTreeMap<u32, Rational>,
    pub dz2: BTreeMap<u32, Rational>,
}

impl ZDecomposition {
    pub fn to_series(&self, order: usize) -> PowerSeries {
        let z = gen_z(order);
        let z2 = &z * &z;
        let mut acc = PowerSeries::zero(order);
        for (base, terms) in [(&z, &self.dz), (&z2, &self.dz2)] {
            for (&m, c) in terms {
                let mut s = base.clone();
                for _ in 0..m {
                    s = s.d_operator();
                }
                acc = &acc + &s.scale(c);
            }
        }
        acc
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.dz.values().chain(self.dz2.values()).all(|c| c.is_integer())
    }

    pub fn to_json(&self) -> Value {
        let side = |m: &BTreeMap<u32, Rational>| -> Value {
            m.iter().map(|(k, c)| (k.to_string(), Value::String(rational::to_string(c)))).collect()
        };
        json!({"D^m Z": side(&self.dz), "D^m Z^2": side(&self.dz2)})
    }
}

/// Writes `Z^k` over `Z, Z², DZ, D(Z²), D²Z, …` by triangular elimination
/// on the degree in `Z`. The coefficients are rational in general.
pub fn z_power_decompose(k: u32) -> ZDecomposition {
    assert!(k >= 1, "z_power_decompose needs k ≥ 1");
    let mut rest = z_monomial(k as usize);
    let mut out = ZDecomposition::default();
    for d in (1..=k as usize).rev() {
        let c = rest.get(d).cloned().unwrap_or_else(Rational::zero);
        if c.is_zero() {
            continue;
        }
        let (m, basis, side) = if d % 2 == 1 {
            let m = (d as u32 - 1) / 2;
            (m, d_power_in_z(m, 1), &mut out.dz)
        } else {
            let m = (d as u32 - 2) / 2;
            (m, d_power_in_z(m, 2), &mut out.dz2)
        };
        let factor = c / &basis[d];
        for (i, b) in basis.iter().enumerate() {
            rest[i] -= &factor * b;
        }
        side.insert(m, factor);
    }
    debug_assert!(rest.iter().all(Zero::is_zero));
    out
}

/// Closed form for the coefficients of an element of the algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedForm {
    /// Laurent polynomial in `n` multiplying `nⁿ/n!`.
    pub p: BTreeMap<i64, Rational>,
    /// Laurent polynomial in `n` multiplying `A_n/n!`.
    pub q: BTreeMap<i64, Rational>,
    pub n0: u64,
    /// Coefficients for `n < n0`, verbatim; omitted entries are zero.
    pub exceptions: Vec<(u64, Rational)>,
}

fn add_to(map: &mut BTreeMap<i64, Rational>, k: i64, c: Rational) {
    if c.is_zero() {
        return;
    }
    let slot = map.entry(k).or_insert_with(Rational::zero);
    *slot += c;
    if slot.is_zero() {
        map.remove(&k);
    }
}

fn eval_laurent(map: &BTreeMap<i64, Rational>, n: u64) -> Rational {
    map.iter().map(|(e, c)| c * pow_i(n as i64, *e)).fold(Rational::zero(), |a, b| a + b)
}

impl ClosedForm {
    pub fn coefficient(&self, n: u64) -> Rational {
        if n < self.n0 {
            return self
                .exceptions
                .iter()
                .find(|(m, _)| *m == n)
                .map(|(_, c)| c.clone())
                .unwrap_or_else(Rational::zero);
        }
        let nf = big(factorial(n));
        let mut acc = Rational::zero();
        if !self.p.is_empty() {
            acc += eval_laurent(&self.p, n) * pow_i(n as i64, n as i64) / &nf;
        }
        if !self.q.is_empty() {
            acc += eval_laurent(&self.q, n) * big(a_number(n)) / &nf;
        }
        acc
    }

    pub fn to_json(&self) -> Value {
        let side = |m: &BTreeMap<i64, Rational>| -> Value {
            m.iter().map(|(k, c)| (k.to_string(), Value::String(rational::to_string(c)))).collect()
        };
        let exc: Vec<Value> = self
            .exceptions
            .iter()
            .map(|(n, c)| json!({"n": n, "coefficient": rational::to_string(c)}))
            .collect();
        json!({"P": side(&self.p), "Q": side(&self.q), "n0": self.n0, "exceptions": exc})
    }
}

/// Coefficients of `j·(n-1)(n-2)…(n-j+1)` as a polynomial in `n`.
fn falling_poly(j: u64) -> Vec<Rational> {
    let mut poly = vec![int(j as i64)];
    for i in 1..j {
        // multiply by (n - i)
        let mut next = vec![Rational::zero(); poly.len() + 1];
        for (d, c) in poly.iter().enumerate() {
            next[d + 1] += c;
            next[d] -= c * int(i as i64);
        }
        poly = next;
    }
    poly
}

pub fn closed_form(a: &AElement) -> ClosedForm {
    let mut p = BTreeMap::new();
    let mut q = BTreeMap::new();
    let mut constant = Rational::zero();

    for (&k, c) in a.terms() {
        constant += c;
        if k > 0 {
            let k = k as u64;
            // X^k = (1 - Y)^k; Y^j contributes j(n-1)…(n-j+1) n^{-j}.
            for j in 1..=k {
                let sign = if j % 2 == 1 { -1 } else { 1 };
                let w = c * big(binomial(k, j)) * int(sign);
                for (d, e) in falling_poly(j).into_iter().enumerate() {
                    add_to(&mut p, d as i64 - j as i64, &w * e);
                }
            }
        } else if k < 0 {
            let k = (-k) as u64;
            // X^{-k} = (1 + Z)^k.
            for j in 1..=k {
                let w = c * big(binomial(k, j));
                let dec = z_power_decompose(j as u32);
                for (&m, v) in &dec.dz {
                    add_to(&mut p, m as i64, &w * v);
                }
                for (&m, v) in &dec.dz2 {
                    add_to(&mut q, m as i64, &w * v);
                }
            }
        }
    }
    let exceptions = if constant.is_zero() { Vec::new() } else { vec![(0, constant)] };
    ClosedForm { p, q, n0: 1, exceptions }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{from_yz_poly, y_power_count, YzPoly};
    use crate::rational::frac;

    #[test]
    fn small_z_powers() {
        let z1 = z_power_decompose(1);
        assert_eq!(z1.dz, [(0, int(1))].into_iter().collect());
        assert!(z1.dz2.is_empty());
        let z2 = z_power_decompose(2);
        assert_eq!(z2.dz2, [(0, int(1))].into_iter().collect());
        let z3 = z_power_decompose(3);
        assert_eq!(z3.dz, [(0, int(-1)), (1, int(1))].into_iter().collect());
        assert_eq!(z3.dz2, [(0, int(-2))].into_iter().collect());
    }

    #[test]
    fn z4_needs_a_half() {
        let z4 = z_power_decompose(4);
        assert_eq!(z4.dz2, [(0, int(3)), (1, frac(1, 2))].into_iter().collect());
        assert_eq!(z4.dz, [(0, int(2)), (1, int(-2))].into_iter().collect());
        assert!(!z4.is_integral());
    }

    #[test]
    fn decompositions_reexpand() {
        let z = gen_z(20);
        for k in 1..=9u32 {
            assert_eq!(z_power_decompose(k).to_series(20), z.pow(k as i64).unwrap(), "k = {k}");
        }
    }

    #[test]
    fn closed_form_examples() {
        let y = closed_form(&AElement::y());
        assert_eq!(y.p, [(-1, int(1))].into_iter().collect());
        assert!(y.q.is_empty() && y.exceptions.is_empty());

        let z2 = closed_form(&AElement::z().pow(2));
        assert!(z2.p.is_empty());
        assert_eq!(z2.q, [(0, int(1))].into_iter().collect());

        let y2 = closed_form(&from_yz_poly(&YzPoly::term(int(1), 2, 0)));
        assert_eq!(y2.p, [(-1, int(2)), (-2, int(-2))].into_iter().collect());
        assert!(y2.q.is_empty());
    }

    #[test]
    fn constant_goes_to_exceptions() {
        let cf = closed_form(&AElement::constant(int(1)));
        assert!(cf.p.is_empty() && cf.q.is_empty());
        assert_eq!(cf.coefficient(0), int(1));
        assert_eq!(cf.coefficient(3), int(0));
    }

    #[test]
    fn y_powers_by_closed_form() {
        for k in 1..=5u32 {
            let a = from_yz_poly(&YzPoly::term(int(1), k, 0));
            let s = a.to_series(15);
            let cf = closed_form(&a);
            for n in 1..=15u64 {
                assert_eq!(cf.coefficient(n), *s.coeff(n as usize));
                assert_eq!(y_power_count(k as u64, n) / big(factorial(n)), *s.coeff(n as usize));
            }
        }
    }
}
