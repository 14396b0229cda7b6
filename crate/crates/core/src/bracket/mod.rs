//! Brackets `⟨τ_{d_1} … τ_{d_n}⟩` and their generating series.
//!
//! A bracket of genus `g` is a rational function on monomials satisfying
//! the string relation (removing a `τ_0` lowers one other index) and the
//! dilaton relation (removing a `τ_1` multiplies by `2g-2+n`). A
//! [`BracketTable`] stores the finitely many initial values and recovers
//! everything else by those two relations.

mod closed;
mod decompose;
mod series;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rational::{self, int, Rational};

pub use closed::ClosedBracket;
pub use decompose::{decompose_to_graphs, graph_for_monomial, GraphTerm};
pub use series::{f_series, for_each_multiset, g0_convention_terms, weighted_f_series};

/// A multiset of indices `d_1 ≤ … ≤ d_n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(mut d: Vec<u32>) -> Self {
        d.sort_unstable();
        Monomial(d)
    }

    pub fn indices(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&d| d as u64).sum()
    }

    /// Copy with the entry at `idx` removed.
    fn without(&self, idx: usize) -> Monomial {
        let mut d = self.0.clone();
        d.remove(idx);
        Monomial(d)
    }

    /// Multiplicities of equal entries.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 && self.0[i - 1] == *d {
                *out.last_mut().expect("nonempty") += 1;
            } else {
                out.push(1);
            }
        }
        out
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Monomial {
    type Err = Error;
    /// `"2,3"`, `"2 3"`, or `""` for the empty monomial.
    fn from_str(s: &str) -> Result<Self> {
        let d = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<u32>().map_err(|_| Error::Parse(format!("bad monomial index {t:?}"))))
            .collect::<Result<Vec<u32>>>()?;
        Ok(Monomial::new(d))
    }
}

impl From<Vec<u32>> for Monomial {
    fn from(d: Vec<u32>) -> Self {
        Monomial::new(d)
    }
}

/// Anything that assigns values to monomials in a fixed genus.
pub trait Bracket {
    fn genus(&self) -> u32;

    fn value(&self, m: &Monomial) -> Result<Rational>;

    /// Largest `Σ d_i` that can be nonzero for `n` points, or `None` when
    /// every monomial of that size vanishes.
    fn max_total(&self, n: usize) -> Option<u64> {
        let s = 3 * self.genus() as i64 - 3 + n as i64;
        u64::try_from(s).ok()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degree {
    /// Vanishes unless `b + Σd = 3g-3+n`.
    Pure(u32),
    /// Vanishes unless `Σd ≤ 3g-3+n`.
    Mixed,
}

const MAX_DEPTH: usize = 10_000;

/// Initial values plus string/dilaton recursion, with a shared memo.
#[derive(Debug)]
pub struct BracketTable {
    genus: u32,
    degree: Degree,
    initial: BTreeMap<Monomial, Rational>,
    memo: Mutex<HashMap<Monomial, Rational>>,
}

impl Clone for BracketTable {
    fn clone(&self) -> Self {
        BracketTable::new(self.genus, self.degree, self.initial.clone())
    }
}

impl PartialEq for BracketTable {
    fn eq(&self, other: &Self) -> bool {
        self.genus == other.genus && self.degree == other.degree && self.initial == other.initial
    }
}

impl BracketTable {
    pub fn new(genus: u32, degree: Degree, initial: BTreeMap<Monomial, Rational>) -> Self {
        let initial = initial.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        BracketTable { genus, degree, initial, memo: Mutex::new(HashMap::new()) }
    }

    /// The genus-2 table with `⟨τ4⟩ = 1/1152`, `⟨τ2 τ3⟩ = 29/5760`,
    /// `⟨τ2 τ2 τ2⟩ = 7/240`.
    pub fn genus2_beta1() -> Self {
        Self::from_json_str(include_str!("../../data/genus2_beta1.json")).expect("bundled table parses")
    }

    /// `{(0,0,0) ↦ 1}` in genus 0.
    pub fn genus0() -> Self {
        Self::new(0, Degree::Pure(0), [(Monomial::new(vec![0, 0, 0]), int(1))].into_iter().collect())
    }

    /// `{(1) ↦ 1/24}` in genus 1.
    pub fn genus1() -> Self {
        Self::new(1, Degree::Pure(0), [(Monomial::new(vec![1]), rational::frac(1, 24))].into_iter().collect())
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn initial_values(&self) -> &BTreeMap<Monomial, Rational> {
        &self.initial
    }

    /// Whether the degree condition alone forces `m` to vanish.
    pub fn vanishes(&self, m: &Monomial) -> bool {
        let dim = 3 * self.genus as i64 - 3 + m.len() as i64;
        let total = m.total() as i64;
        match self.degree {
            Degree::Pure(b) => b as i64 + total != dim,
            Degree::Mixed => total > dim,
        }
    }

    /// Evaluates by string (first), then dilaton, then table lookup.
    pub fn eval(&self, m: &Monomial) -> Result<Rational> {
        self.eval_depth(m, 0)
    }

    fn eval_depth(&self, m: &Monomial, depth: usize) -> Result<Rational> {
        if depth > MAX_DEPTH {
            return Err(Error::RecursionDepth(m.to_string()));
        }
        if self.vanishes(m) {
            return Ok(Rational::zero());
        }
        if let Some(v) = self.memo.lock().expect("memo lock").get(m) {
            return Ok(v.clone());
        }
        let g = self.genus as i64;
        let reduced_ok = 2 * g - 2 + (m.len() as i64 - 1) > 0;
        let d = m.indices();
        let value = if let (Some(zero), true) = (d.iter().position(|&x| x == 0), reduced_ok) {
            let rest = m.without(zero);
            let mut acc = Rational::zero();
            for i in 0..rest.len() {
                if rest.0[i] == 0 {
                    continue;
                }
                let mut lowered = rest.0.clone();
                lowered[i] -= 1;
                acc += self.eval_depth(&Monomial::new(lowered), depth + 1)?;
            }
            acc
        } else if let (Some(one), true) = (d.iter().position(|&x| x == 1), reduced_ok) {
            let rest = m.without(one);
            let factor = int(2 * g - 2 + rest.len() as i64);
            self.eval_depth(&rest, depth + 1)? * factor
        } else {
            self.initial.get(m).cloned().unwrap_or_else(Rational::zero)
        };
        self.memo.lock().expect("memo lock").insert(m.clone(), value.clone());
        Ok(value)
    }

    /// `{"genus": g, "degree": b | "mixed", "values": {"2,3": "29/5760", …}}`.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&v)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("bracket table: {what}"));
        let genus = v.get("genus").and_then(Value::as_u64).ok_or_else(|| bad("missing genus"))? as u32;
        let degree = match v.get("degree") {
            None => Degree::Mixed,
            Some(Value::String(s)) if s == "mixed" => Degree::Mixed,
            Some(d) => Degree::Pure(d.as_u64().ok_or_else(|| bad("degree must be a number or \"mixed\""))? as u32),
        };
        let values = v.get("values").and_then(Value::as_object).ok_or_else(|| bad("missing values"))?;
        let mut initial = BTreeMap::new();
        for (k, val) in values {
            let m: Monomial = k.parse()?;
            let r = match val {
                Value::String(s) => rational::parse(s)?,
                Value::Number(n) => rational::parse(&n.to_string())?,
                _ => return Err(bad("values must be rational strings")),
            };
            initial.insert(m, r);
        }
        Ok(Self::new(genus, degree, initial))
    }

    pub fn to_json(&self) -> Value {
        let values: serde_json::Map<String, Value> =
            self.initial.iter().map(|(m, r)| (m.to_string(), Value::String(rational::to_string(r)))).collect();
        let degree = match self.degree {
            Degree::Pure(b) => json!(b),
            Degree::Mixed => json!("mixed"),
        };
        json!({"genus": self.genus, "degree": degree, "values": values})
    }
}

impl Bracket for BracketTable {
    fn genus(&self) -> u32 {
        self.genus
    }

    fn value(&self, m: &Monomial) -> Result<Rational> {
        self.eval(m)
    }

    fn max_total(&self, n: usize) -> Option<u64> {
        let dim = 3 * self.genus as i64 - 3 + n as i64;
        let s = match self.degree {
            Degree::Pure(b) => dim - b as i64,
            Degree::Mixed => dim,
        };
        u64::try_from(s).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn m(d: &[u32]) -> Monomial {
        Monomial::new(d.to_vec())
    }

    #[test]
    fn genus2_string_and_dilaton() {
        let t = BracketTable::genus2_beta1();
        assert_eq!(t.eval(&m(&[0, 5])).unwrap(), frac(1, 1152));
        assert_eq!(t.eval(&m(&[1, 4])).unwrap(), frac(1, 384));
        assert_eq!(t.eval(&m(&[2, 2, 2])).unwrap(), frac(7, 240));
        assert_eq!(t.eval(&m(&[3, 3])).unwrap(), int(0));
    }

    #[test]
    fn genus0_small() {
        let t = BracketTable::genus0();
        assert_eq!(t.eval(&m(&[0, 0, 0])).unwrap(), int(1));
        assert_eq!(t.eval(&m(&[0, 0, 0, 1])).unwrap(), int(1));
        assert_eq!(t.eval(&m(&[0, 0, 0, 0, 2])).unwrap(), int(1));
        assert_eq!(t.eval(&m(&[0, 0, 0, 1, 1])).unwrap(), int(2));
    }

    #[test]
    fn genus1_table() {
        let t = BracketTable::genus1();
        assert_eq!(t.eval(&m(&[1])).unwrap(), frac(1, 24));
        assert_eq!(t.eval(&m(&[0, 2])).unwrap(), frac(1, 24));
        assert_eq!(t.eval(&m(&[0])).unwrap(), int(0));
    }

    #[test]
    fn monomial_parsing() {
        assert_eq!("3,2".parse::<Monomial>().unwrap(), m(&[2, 3]));
        assert_eq!("".parse::<Monomial>().unwrap(), m(&[]));
        assert!("a".parse::<Monomial>().is_err());
        assert_eq!(m(&[2, 2, 3]).multiplicities(), vec![2, 1]);
    }

    #[test]
    fn json_round_trip() {
        let t = BracketTable::genus2_beta1();
        let back = BracketTable::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t);
        assert_eq!(t.degree(), Degree::Pure(0));
    }
}
