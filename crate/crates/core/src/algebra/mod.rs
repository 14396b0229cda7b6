//! The algebra generated by the tree series `Y` and `Z`.
//!
//! Every element is stored as a Laurent polynomial in `X = 1 - Y`, using
//! `1 + Z = X⁻¹`. Nonnegative powers of `X` expand as powers of `1 - Y` and
//! negative powers as powers of `1 + Z`.

mod asymptotic;
mod closed_form;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::linalg;
use crate::rational::{self, binomial, big, int, Rational};
use crate::series::{gen_y, gen_z, PowerSeries};

pub use asymptotic::{leading_asymptotic, sqrt_two_pi_decimal, AsymptoticTerm};
pub use closed_form::{closed_form, d_power_in_z, z_power_decompose, ClosedForm, ZDecomposition};

/// Canonical element: exponent of `X` to nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct AElement {
    laurent: BTreeMap<i64, Rational>,
}

impl fmt::Debug for AElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.laurent.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.laurent.iter().map(|(k, c)| format!("({c})X^{k}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl AElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    /// `c · X^k`.
    pub fn monomial(c: Rational, k: i64) -> Self {
        let mut a = Self::zero();
        a.add_term(k, c);
        a
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    /// `Y = 1 - X`.
    pub fn y() -> Self {
        let mut a = Self::constant(Rational::one());
        a.add_term(1, int(-1));
        a
    }

    /// `Z = X⁻¹ - 1`.
    pub fn z() -> Self {
        let mut a = Self::monomial(Rational::one(), -1);
        a.add_term(0, int(-1));
        a
    }

    /// `1 + Z = X⁻¹`.
    pub fn one_plus_z() -> Self {
        Self::monomial(Rational::one(), -1)
    }

    pub fn from_map(map: BTreeMap<i64, Rational>) -> Self {
        let mut a = Self::zero();
        for (k, c) in map {
            a.add_term(k, c);
        }
        a
    }

    pub fn terms(&self) -> &BTreeMap<i64, Rational> {
        &self.laurent
    }

    pub fn coeff(&self, k: i64) -> Rational {
        self.laurent.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.laurent.is_empty()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.laurent.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.laurent.keys().next_back().copied()
    }

    fn add_term(&mut self, k: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.laurent.entry(k).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.laurent.remove(&k);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.laurent {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&int(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        AElement { laurent: self.laurent.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (i, a) in &self.laurent {
            for (j, b) in &other.laurent {
                out.add_term(i + j, a * b);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::constant(Rational::one()), |acc, _| acc.mul(self))
    }

    /// The Euler operator `D = q d/dq`, using `DX = -Z = 1 - X⁻¹`, so that
    /// `D X^k = k X^{k-1} - k X^{k-2}`.
    pub fn d(&self) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.laurent {
            let kc = c * int(*k);
            out.add_term(k - 1, kc.clone());
            out.add_term(k - 2, -kc);
        }
        out
    }

    pub fn to_series(&self, order: usize) -> PowerSeries {
        let mut acc = PowerSeries::zero(order);
        let (lo, hi) = match (self.min_exponent(), self.max_exponent()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return acc,
        };
        let x = &PowerSeries::one(order) - &gen_y(order);
        let inv_x = &PowerSeries::one(order) + &gen_z(order);
        let mut pos = PowerSeries::one(order);
        for k in 0..=hi.max(0) {
            if let Some(c) = self.laurent.get(&k) {
                acc = &acc + &pos.scale(c);
            }
            if k < hi {
                pos = &pos * &x;
            }
        }
        let mut neg = PowerSeries::one(order);
        for k in 1..=(-lo).max(0) {
            neg = &neg * &inv_x;
            if let Some(c) = self.laurent.get(&-k) {
                acc = &acc + &neg.scale(c);
            }
        }
        acc
    }

    /// JSON form `{"X": {"-1": "1", "0": "-1"}}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("AElement serializes")
    }
}

impl Serialize for AElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let inner: BTreeMap<String, String> =
            self.laurent.iter().map(|(k, c)| (k.to_string(), rational::to_string(c))).collect();
        let mut outer = BTreeMap::new();
        outer.insert("X", inner);
        outer.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let outer: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::deserialize(d)?;
        let inner = outer.get("X").ok_or_else(|| D::Error::custom("missing key \"X\""))?;
        let mut a = AElement::zero();
        for (k, v) in inner {
            let k: i64 = k.parse().map_err(D::Error::custom)?;
            a.add_term(k, rational::parse(v).map_err(D::Error::custom)?);
        }
        Ok(a)
    }
}

/// Polynomial in the symbols `Y` and `Z`: `(a, b)` keys `Y^a Z^b`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct YzPoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl YzPoly {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn term(c: Rational, y_deg: u32, z_deg: u32) -> Self {
        let mut p = Self::new();
        p.add_term(y_deg, z_deg, c);
        p
    }

    pub fn add_term(&mut self, y_deg: u32, z_deg: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((y_deg, z_deg)).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(y_deg, z_deg));
        }
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), Rational> {
        &self.terms
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(a, b), c) in &other.terms {
            out.add_term(a, b, c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::new();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &other.terms {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out
    }

    /// Direct evaluation at the generator series, without going through
    /// the Laurent form.
    pub fn eval_series(&self, order: usize) -> PowerSeries {
        let y = gen_y(order);
        let z = gen_z(order);
        let mut acc = PowerSeries::zero(order);
        for (&(a, b), c) in &self.terms {
            let t = &y.pow(a as i64).expect("nonnegative power") * &z.pow(b as i64).expect("nonnegative power");
            acc = &acc + &t.scale(c);
        }
        acc
    }
}

/// Substitutes `Y = 1 - X` and `Z = X⁻¹ - 1`.
pub fn from_yz_poly(poly: &YzPoly) -> AElement {
    let y = AElement::y();
    let z = AElement::z();
    let mut out = AElement::zero();
    for (&(a, b), c) in poly.terms() {
        out = out.add(&y.pow(a).mul(&z.pow(b)).scale(c));
    }
    out
}

/// Why a fit was rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FitFailureReason {
    /// Fewer coefficients than the window and holdout need.
    InsufficientData { needed: usize, available: usize },
    RankDeficient,
    /// The solved element disagrees with the series at `index`.
    HoldoutMismatch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FitFailure {
    pub window: usize,
    pub reason: FitFailureReason,
    pub first_mismatch: Option<usize>,
}

impl fmt::Display for FitFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.reason {
            FitFailureReason::InsufficientData { needed, available } => {
                write!(f, "window {} needs order {needed}, series has order {available}", self.window)
            }
            FitFailureReason::RankDeficient => write!(f, "rank deficient at window {}", self.window),
            FitFailureReason::HoldoutMismatch => write!(
                f,
                "holdout mismatch at window {} (first bad index {})",
                self.window,
                self.first_mismatch.unwrap_or_default()
            ),
        }
    }
}

/// Minimal series order that [`fit`] accepts for window `m` and holdout `h`.
pub fn fit_required_order(window: usize, holdout: usize) -> usize {
    2 * window + holdout
}

/// Expresses `coeffs` in the basis `X^k`, `-M ≤ k ≤ M`, from the first
/// `2M+1` coefficients, then checks the following `h` coefficients.
pub fn fit(coeffs: &PowerSeries, window: usize, holdout: usize) -> Result<AElement, FitFailure> {
    let needed = fit_required_order(window, holdout);
    if coeffs.order() < needed {
        return Err(FitFailure {
            window,
            reason: FitFailureReason::InsufficientData { needed, available: coeffs.order() },
            first_mismatch: None,
        });
    }
    let m = window as i64;
    let size = 2 * window + 1;
    let order = coeffs.order();
    let basis: Vec<PowerSeries> =
        (-m..=m).map(|k| AElement::monomial(Rational::one(), k).to_series(order)).collect();

    let matrix: Vec<Vec<Rational>> =
        (0..size).map(|n| basis.iter().map(|b| b.coeff(n).clone()).collect()).collect();
    let rhs: Vec<Rational> = (0..size).map(|n| coeffs.coeff(n).clone()).collect();
    let Some(sol) = linalg::solve(matrix, rhs) else {
        return Err(FitFailure { window, reason: FitFailureReason::RankDeficient, first_mismatch: None });
    };

    let mut elem = AElement::zero();
    for (k, c) in (-m..=m).zip(sol) {
        elem.add_term(k, c);
    }
    let check = elem.to_series(order);
    for n in size..=needed {
        if check.coeff(n) != coeffs.coeff(n) {
            return Err(FitFailure {
                window,
                reason: FitFailureReason::HoldoutMismatch,
                first_mismatch: Some(n),
            });
        }
    }
    Ok(elem)
}

/// Tries windows `1..=max_window` in turn and returns the first success,
/// or the last failure.
pub fn fit_escalating(
    coeffs: &PowerSeries,
    max_window: usize,
    holdout: usize,
) -> Result<AElement, FitFailure> {
    let mut last = None;
    for w in 1..=max_window {
        if fit_required_order(w, holdout) > coeffs.order() {
            break;
        }
        match fit(coeffs, w, holdout) {
            Ok(a) => return Ok(a),
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap_or(FitFailure {
        window: 1,
        reason: FitFailureReason::InsufficientData {
            needed: fit_required_order(1, holdout),
            available: coeffs.order(),
        },
        first_mismatch: None,
    }))
}

/// `n!·[qⁿ] Y^k` for `k ≥ 1`, `n ≥ 1`: `k (n-1)(n-2)…(n-k+1) n^{n-k}` as an
/// exact rational (zero when `n < k`).
pub fn y_power_count(k: u64, n: u64) -> Rational {
    if n < k {
        return Rational::zero();
    }
    let mut acc = big(num_bigint::BigInt::from(k));
    for i in 1..k {
        acc *= int((n - i) as i64);
    }
    acc * rational::pow_i(n as i64, n as i64 - k as i64)
}

/// `(1+Z)^k = Σ C(k,j) Z^j` as a [`YzPoly`].
pub fn one_plus_z_pow(k: u32) -> YzPoly {
    let mut p = YzPoly::new();
    for j in 0..=k {
        p.add_term(0, j, big(binomial(k as u64, j as u64)));
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;
    use crate::series::a_number;

    #[test]
    fn yz_is_z_minus_y() {
        let yz = from_yz_poly(&YzPoly::term(int(1), 1, 1));
        let mut expect = BTreeMap::new();
        expect.insert(-1, int(1));
        expect.insert(0, int(-2));
        expect.insert(1, int(1));
        assert_eq!(yz, AElement::from_map(expect));
        assert_eq!(yz, AElement::z().sub(&AElement::y()));
    }

    #[test]
    fn z_and_product_identity() {
        assert_eq!(from_yz_poly(&YzPoly::term(int(1), 0, 1)), AElement::z());
        let mut p = YzPoly::term(int(1), 0, 0);
        p.add_term(1, 0, int(-1));
        let mut q = YzPoly::term(int(1), 0, 0);
        q.add_term(0, 1, int(1));
        assert_eq!(from_yz_poly(&p.mul(&q)), AElement::constant(int(1)));
    }

    #[test]
    fn to_series_examples() {
        assert_eq!(AElement::z().to_series(3).coeffs(), &[int(0), int(1), int(2), frac(9, 2)]);
        assert_eq!(AElement::constant(int(1)).to_series(5), PowerSeries::one(5));
        let y2 = from_yz_poly(&YzPoly::term(int(1), 2, 0)).to_series(12);
        for n in 1..=12u64 {
            let expect = y_power_count(2, n) / big(rational::factorial(n));
            assert_eq!(y2.coeff(n as usize), &expect);
        }
    }

    #[test]
    fn fit_recovers_z() {
        assert_eq!(fit(&gen_z(20), 2, 10).unwrap(), AElement::z());
    }

    #[test]
    fn fit_rejects_short_series() {
        let err = fit(&gen_z(5), 2, 10).unwrap_err();
        assert!(matches!(err.reason, FitFailureReason::InsufficientData { .. }));
    }

    #[test]
    fn fit_genus0_degree1() {
        // Σ n^{n-3}/n! qⁿ, whose first two terms are 1 and 1/4.
        let s = PowerSeries::from_fn(24, |n| {
            if n == 0 {
                Rational::zero()
            } else {
                rational::pow_i(n as i64, n as i64 - 3) / big(rational::factorial(n as u64))
            }
        });
        let a = fit(&s, 4, 8).unwrap();
        assert_eq!(a.to_series(40).coeff(37), &(rational::pow_i(37, 34) / big(rational::factorial(37))));
    }

    #[test]
    fn fit_rejects_genus1_degree1() {
        let s = PowerSeries::from_fn(30, |n| {
            if n == 0 {
                Rational::zero()
            } else {
                big(a_number(n as u64)) / big(rational::factorial(n as u64)) / int(24 * n as i64)
            }
        });
        for m in 1..=8 {
            let err = fit(&s, m, 10).unwrap_err();
            assert_eq!(err.reason, FitFailureReason::HoldoutMismatch, "window {m}");
        }
    }

    #[test]
    fn d_matches_series() {
        let a = AElement::from_map([(-3, int(2)), (1, frac(1, 3)), (4, int(-5))].into_iter().collect());
        assert_eq!(a.d().to_series(14), a.to_series(14).d_operator());
        assert_eq!(AElement::y().d(), AElement::z());
    }

    #[test]
    fn json_shape() {
        let v = AElement::z().to_json();
        assert_eq!(v.to_string(), r#"{"X":{"-1":"1","0":"-1"}}"#);
        let back: AElement = serde_json::from_value(v).unwrap();
        assert_eq!(back, AElement::z());
    }
}
