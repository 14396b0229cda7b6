//! Truncated formal power series over exact rationals.
//!
//! A [`PowerSeries`] of order `N` carries the coefficients of `q^0 .. q^N`.
//! Coefficients are stored against `q^n` directly; exponential
//! normalizations (`/n!`) are the caller's business. Binary operations
//! truncate to the smaller of the two orders.
//!
//! [`BiSeries`] is the two-variable analogue in `(q, u)`. It is generic over
//! its coefficient ring so that the Hurwitz module can run the exponential
//! formula with extra grading carried inside the coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, big, factorial, int, Rational};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "PowerSeries[{}] + O(q^{})", terms.join(", "), self.order() + 1)
    }
}

impl PowerSeries {
    /// Builds a series from `coeffs[0..=N]`. An empty vector is read as the
    /// order-0 zero series.
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Rational::zero());
        }
        PowerSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        PowerSeries { coeffs: vec![Rational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c * q^k`, dropped entirely if `k > order`.
    pub fn monomial(c: Rational, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Rational) -> Self {
        PowerSeries { coeffs: (0..=order).map(f).collect() }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        PowerSeries { coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        PowerSeries { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Integer power; a negative exponent inverts first, which needs a
    /// nonzero constant term.
    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = PowerSeries::one(self.order());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let inv0 = c0.recip();
        let n = self.order();
        let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for k in 1..=n {
            let mut s = Rational::zero();
            for j in 1..=k {
                s += &self.coeffs[j] * &out[k - j];
            }
            out.push(-s * &inv0);
        }
        Ok(PowerSeries { coeffs: out })
    }

    /// The Euler operator `q d/dq`: multiplies the `q^n` coefficient by `n`.
    pub fn d_operator(&self) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().enumerate().map(|(n, c)| c * int(n as i64)).collect(),
        }
    }

    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = self.order();
        let mut out = vec![Rational::zero(); n + 1];
        out[0] = Rational::one();
        for m in 1..=n {
            let mut s = Rational::zero();
            for k in 1..=m {
                s += &self.coeffs[k] * &out[m - k] * int(k as i64);
            }
            out[m] = s / int(m as i64);
        }
        Ok(PowerSeries { coeffs: out })
    }

    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTermNotOne);
        }
        let n = self.order();
        let mut out = vec![Rational::zero(); n + 1];
        for m in 1..=n {
            let mut s = Rational::zero();
            for k in 1..m {
                s += &out[k] * &self.coeffs[m - k] * int(k as i64);
            }
            out[m] = &self.coeffs[m] - s / int(m as i64);
        }
        Ok(PowerSeries { coeffs: out })
    }

    /// JSON-friendly view: every coefficient as `"num/den"`.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(rational::to_string).collect()
    }

    pub fn from_strings<S: AsRef<str>>(items: &[S]) -> Result<Self> {
        let coeffs = items.iter().map(|s| rational::parse(s.as_ref())).collect::<Result<_>>()?;
        Ok(Self::new(coeffs))
    }

    /// CSV with header `n,numerator,denominator`, one row per coefficient.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,numerator,denominator\n");
        for (n, c) in self.coeffs.iter().enumerate() {
            out.push_str(&format!("{},{},{}\n", n, c.numer(), c.denom()));
        }
        out
    }

    /// Reads the CSV written by [`PowerSeries::to_csv`]. Missing rows are
    /// zero; the order is the largest index present.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut rows: Vec<(usize, Rational)> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || (lineno == 0 && line.starts_with('n')) {
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            let bad = || Error::Parse(format!("bad CSV row {}: {line:?}", lineno + 1));
            if fields.len() != 3 {
                return Err(bad());
            }
            let n: usize = fields[0].parse().map_err(|_| bad())?;
            let num: BigInt = fields[1].parse().map_err(|_| bad())?;
            let den: BigInt = fields[2].parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            rows.push((n, Rational::new(num, den)));
        }
        let order = rows.iter().map(|(n, _)| *n).max().unwrap_or(0);
        let mut s = Self::zero(order);
        for (n, c) in rows {
            s.coeffs[n] = c;
        }
        Ok(s)
    }
}

fn zip_trunc(a: &PowerSeries, b: &PowerSeries, f: impl Fn(&Rational, &Rational) -> Rational) -> PowerSeries {
    let n = a.order().min(b.order());
    PowerSeries::from_fn(n, |i| f(&a.coeffs[i], &b.coeffs[i]))
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        zip_trunc(self, rhs, |x, y| x + y)
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        zip_trunc(self, rhs, |x, y| x - y)
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        PowerSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.order().min(rhs.order());
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n + 1 - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        PowerSeries { coeffs: out }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for PowerSeries {
            type Output = PowerSeries;
            fn $m(self, rhs: PowerSeries) -> PowerSeries {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// The named generator series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    /// `Σ n^{n-1}/n! q^n`, rooted Cayley trees.
    Y,
    /// `Σ n^n/n! q^n = D Y`, doubly-rooted Cayley trees.
    Z,
    /// `Σ A_n/n! q^n`, which equals `Z²`.
    ASequence,
}

impl std::str::FromStr for Generator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Y" | "y" => Ok(Generator::Y),
            "Z" | "z" => Ok(Generator::Z),
            "A" | "a" | "Asequence" | "ASequence" => Ok(Generator::ASequence),
            other => Err(Error::InvalidInput(format!("unknown generator {other:?}"))),
        }
    }
}

pub fn generator(which: Generator, order: usize) -> PowerSeries {
    PowerSeries::from_fn(order, |n| {
        if n == 0 {
            return Rational::zero();
        }
        let nn = n as u64;
        let num = match which {
            Generator::Y => num_traits::pow(BigInt::from(nn), n - 1),
            Generator::Z => num_traits::pow(BigInt::from(nn), n),
            Generator::ASequence => a_number(nn),
        };
        Rational::new(num, factorial(nn))
    })
}

pub fn gen_y(order: usize) -> PowerSeries {
    generator(Generator::Y, order)
}

pub fn gen_z(order: usize) -> PowerSeries {
    generator(Generator::Z, order)
}

/// `A_n = Σ_{p+q=n, p,q≥1} n!/(p! q!) p^p q^q`: 0, 2, 24, 312, 4720, ...
pub fn a_number(n: u64) -> BigInt {
    let mut acc = BigInt::zero();
    for p in 1..n {
        let q = n - p;
        acc += crate::rational::binomial(n, p)
            * num_traits::pow(BigInt::from(p), p as usize)
            * num_traits::pow(BigInt::from(q), q as usize);
    }
    acc
}

/// Ring of coefficients usable inside a [`BiSeries`].
pub trait Coefficient: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn vanishes(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn scaled(&self, c: &Rational) -> Self;

    fn is_unit(&self) -> bool {
        *self == self.one_like()
    }
}

impl Coefficient for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn scaled(&self, c: &Rational) -> Self {
        self * c
    }
}

/// Truncated series in two variables `(q, u)`; `coeffs[n][t]` is the
/// coefficient of `q^n u^t`.
#[derive(Clone, Debug, PartialEq)]
pub struct BiSeries<C: Coefficient = Rational> {
    coeffs: Vec<Vec<C>>,
}

impl BiSeries<Rational> {
    pub fn zero(order_q: usize, order_u: usize) -> Self {
        Self::filled(order_q, order_u, Rational::zero())
    }

    /// Embeds a univariate series in `q` as the `u^0` slice.
    pub fn from_q_series(s: &PowerSeries, order_u: usize) -> Self {
        let mut b = Self::zero(s.order(), order_u);
        for (n, c) in s.coeffs().iter().enumerate() {
            b.coeffs[n][0] = c.clone();
        }
        b
    }

    pub fn u0_slice(&self) -> PowerSeries {
        PowerSeries::new(self.coeffs.iter().map(|row| row[0].clone()).collect())
    }
}

impl<C: Coefficient> BiSeries<C> {
    pub fn filled(order_q: usize, order_u: usize, zero: C) -> Self {
        BiSeries { coeffs: vec![vec![zero; order_u + 1]; order_q + 1] }
    }

    pub fn order_q(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn order_u(&self) -> usize {
        self.coeffs[0].len() - 1
    }

    pub fn get(&self, n: usize, t: usize) -> &C {
        &self.coeffs[n][t]
    }

    pub fn set(&mut self, n: usize, t: usize, v: C) {
        self.coeffs[n][t] = v;
    }

    pub fn row(&self, n: usize) -> &[C] {
        &self.coeffs[n]
    }

    /// Formal logarithm; needs the `(0,0)` coefficient to be one.
    ///
    /// The `u`-only slice is handled with a univariate logarithm; the
    /// remaining rows come from `F · q∂_q L = q∂_q F`.
    pub fn log(&self) -> Result<Self> {
        let c00 = &self.coeffs[0][0];
        if !c00.is_unit() {
            return Err(Error::ConstantTermNotOne);
        }
        let big_t = self.order_u();
        let f0 = &self.coeffs[0];
        let f0_inv = upoly_inverse(f0);
        let trivial_f0 = f0.iter().skip(1).all(Coefficient::vanishes);
        let mut out: Vec<Vec<C>> = Vec::with_capacity(self.coeffs.len());
        out.push(upoly_log(f0));
        for n in 1..=self.order_q() {
            // acc = n F_n - Σ_{j<n} j L_j F_{n-j}
            let mut acc: Vec<C> = self.coeffs[n].iter().map(|c| c.scaled(&int(n as i64))).collect();
            for j in 1..n {
                let prod = upoly_mul(&out[j], &self.coeffs[n - j], big_t);
                let w = int(j as i64);
                for (a, p) in acc.iter_mut().zip(prod.iter()) {
                    if !p.vanishes() {
                        *a = a.minus(&p.scaled(&w));
                    }
                }
            }
            let inv_n = Rational::new(BigInt::one(), BigInt::from(n));
            let row: Vec<C> = acc.iter().map(|c| c.scaled(&inv_n)).collect();
            let row = if trivial_f0 { row } else { upoly_mul(&row, &f0_inv, big_t) };
            out.push(row);
        }
        Ok(BiSeries { coeffs: out })
    }

    /// Formal exponential; needs a zero `(0,0)` coefficient.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0][0].vanishes() {
            return Err(Error::NonzeroConstantTerm);
        }
        let big_t = self.order_u();
        let mut out: Vec<Vec<C>> = Vec::with_capacity(self.coeffs.len());
        out.push(upoly_exp(&self.coeffs[0]));
        for n in 1..=self.order_q() {
            // n E_n = Σ_{j=1..n} j L_j E_{n-j}
            let zero = self.coeffs[0][0].zero_like();
            let mut acc = vec![zero; big_t + 1];
            for j in 1..=n {
                let prod = upoly_mul(&self.coeffs[j], &out[n - j], big_t);
                let w = Rational::new(BigInt::from(j), BigInt::from(n));
                for (a, p) in acc.iter_mut().zip(prod.iter()) {
                    if !p.vanishes() {
                        *a = a.plus(&p.scaled(&w));
                    }
                }
            }
            out.push(acc);
        }
        Ok(BiSeries { coeffs: out })
    }
}

fn upoly_mul<C: Coefficient>(a: &[C], b: &[C], order: usize) -> Vec<C> {
    let zero = a[0].zero_like();
    let mut out = vec![zero; order + 1];
    for (i, x) in a.iter().enumerate().take(order + 1) {
        if x.vanishes() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(order + 1 - i) {
            if !y.vanishes() {
                out[i + j] = out[i + j].plus(&x.times(y));
            }
        }
    }
    out
}

/// Inverse of a `u`-polynomial with constant term one.
fn upoly_inverse<C: Coefficient>(f: &[C]) -> Vec<C> {
    let mut out = vec![f[0].one_like()];
    for k in 1..f.len() {
        let mut s = f[0].zero_like();
        for j in 1..=k {
            if !f[j].vanishes() {
                s = s.plus(&f[j].times(&out[k - j]));
            }
        }
        out.push(s.scaled(&int(-1)));
    }
    out
}

fn upoly_log<C: Coefficient>(f: &[C]) -> Vec<C> {
    let mut out = vec![f[0].zero_like(); f.len()];
    for m in 1..f.len() {
        let mut s = f[m].scaled(&int(m as i64));
        for k in 1..m {
            if !out[k].vanishes() && !f[m - k].vanishes() {
                s = s.minus(&out[k].times(&f[m - k]).scaled(&int(k as i64)));
            }
        }
        out[m] = s.scaled(&Rational::new(BigInt::one(), BigInt::from(m)));
    }
    out
}

fn upoly_exp<C: Coefficient>(f: &[C]) -> Vec<C> {
    let mut out = vec![f[0].zero_like(); f.len()];
    out[0] = f[0].one_like();
    for m in 1..f.len() {
        let mut s = f[0].zero_like();
        for k in 1..=m {
            if !f[k].vanishes() {
                s = s.plus(&f[k].times(&out[m - k]).scaled(&int(k as i64)));
            }
        }
        out[m] = s.scaled(&Rational::new(BigInt::one(), BigInt::from(m)));
    }
    out
}

/// `n! · [q^n] f` for every coefficient, handy for comparing against counts.
pub fn egf_counts(f: &PowerSeries) -> Vec<Rational> {
    f.coeffs().iter().enumerate().map(|(n, c)| c * big(factorial(n as u64))).collect()
}
