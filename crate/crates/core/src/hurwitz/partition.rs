use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::rational::factorial;

/// Parts `b_1 ≥ … ≥ b_p ≥ 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidInput("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    pub(crate) fn from_sorted(parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// `1^n`.
    pub fn identity(n: usize) -> Self {
        Partition(vec![1; n])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `m = Σ b_i`.
    pub fn size(&self) -> usize {
        self.0.iter().map(|&b| b as usize).sum()
    }

    /// `p`, the number of parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// `r = m - p`.
    pub fn degeneracy(&self) -> usize {
        self.size() - self.len()
    }

    /// `a_j`, the number of parts equal to `j`.
    pub fn multiplicity(&self, j: u32) -> usize {
        self.0.iter().filter(|&&b| b == j).count()
    }

    /// `(j, a_j)` for every part size present, largest first.
    pub fn multiplicities(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &b in &self.0 {
            match out.last_mut() {
                Some((j, a)) if *j == b => *a += 1,
                _ => out.push((b, 1)),
            }
        }
        out
    }

    /// `|Aut(μ)| = Π a_j!`.
    pub fn aut(&self) -> BigInt {
        self.multiplicities().into_iter().map(|(_, a)| factorial(a as u64)).product()
    }

    /// `Π j^{a_j} a_j!`, the centralizer order of the cycle type.
    pub fn centralizer(&self) -> BigInt {
        self.multiplicities()
            .into_iter()
            .map(|(j, a)| num_traits::pow(BigInt::from(j), a) * factorial(a as u64))
            .product()
    }

    /// Parts of size at least 2.
    pub fn nontrivial(&self) -> Partition {
        Partition(self.0.iter().copied().filter(|&b| b >= 2).collect())
    }

    /// The partition padded with parts equal to 1 up to size `n`.
    pub fn completed(&self, n: usize) -> Option<Partition> {
        let m = self.size();
        if m > n {
            return None;
        }
        let mut parts = self.0.clone();
        parts.extend(std::iter::repeat_n(1, n - m));
        Some(Partition(parts))
    }

    /// Every partition of `n`, in reverse lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut buf = Vec::new();
        fn rec(left: u32, max: u32, buf: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if left == 0 {
                out.push(Partition(buf.clone()));
                return;
            }
            for b in (1..=max.min(left)).rev() {
                buf.push(b);
                rec(left - b, b, buf, out);
                buf.pop();
            }
        }
        rec(n as u32, n as u32, &mut buf, &mut out);
        out
    }

    /// Every sub-multiset of the parts.
    pub fn sub_partitions(&self) -> Vec<Partition> {
        let mut out = vec![Vec::new()];
        for (j, a) in self.multiplicities() {
            let mut next = Vec::new();
            for base in &out {
                for c in 0..=a {
                    let mut v: Vec<u32> = base.clone();
                    v.extend(std::iter::repeat_n(j, c));
                    next.push(v);
                }
            }
            out = next;
        }
        out.into_iter().map(Partition).collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;
    /// Either `"3,2,2"` or the multiplicative form `"1^2 3"`; `""`, `"-"`
    /// and `"∅"` are the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "-" || s == "∅" {
            return Ok(Partition::empty());
        }
        let bad = |t: &str| Error::Parse(format!("bad partition token {t:?}"));
        let mut parts = Vec::new();
        for tok in s.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            let (j, a) = match tok.split_once('^') {
                Some((j, a)) => (j, a.parse::<usize>().map_err(|_| bad(tok))?),
                None => (tok, 1),
            };
            let j: u32 = j.parse().map_err(|_| bad(tok))?;
            parts.extend(std::iter::repeat_n(j, a));
        }
        Partition::new(parts)
    }
}

/// `"2;3,1"` as a list of partitions; a blank string is the empty list.
pub fn parse_partitions(s: &str) -> Result<Vec<Partition>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(';').map(str::parse).collect()
}

/// Cycle type of a permutation given as an image table.
pub fn cycle_type(perm: &[u8]) -> Partition {
    let mut seen = vec![false; perm.len()];
    let mut parts = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x] as usize;
            len += 1;
        }
        parts.push(len);
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Partition(parts)
}

/// Number of elements of `S_n` with cycle type `lambda` (a partition of `n`).
pub fn class_size(lambda: &Partition) -> BigInt {
    let n = lambda.size() as u64;
    factorial(n) / lambda.centralizer()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn parsing() {
        assert_eq!(p("2,3,2"), Partition(vec![3, 2, 2]));
        assert_eq!(p("1^2 3"), Partition(vec![3, 1, 1]));
        assert_eq!(p(""), Partition::empty());
        assert!("2,x".parse::<Partition>().is_err());
        assert!("0".parse::<Partition>().is_err());
        assert_eq!(parse_partitions("2;3,1").unwrap(), vec![p("2"), p("3,1")]);
        assert!(parse_partitions(" ").unwrap().is_empty());
    }

    #[test]
    fn statistics() {
        let mu = p("3,2,2,1");
        assert_eq!((mu.size(), mu.len(), mu.degeneracy()), (8, 4, 4));
        assert_eq!(mu.aut(), BigInt::from(2));
        assert_eq!(mu.multiplicity(1), 1);
        assert_eq!(mu.nontrivial(), p("3,2,2"));
        assert_eq!(mu.completed(10).unwrap(), p("3,2,2,1,1,1"));
    }

    #[test]
    fn counts() {
        assert_eq!(Partition::all(5).len(), 7);
        assert_eq!(Partition::all(0), vec![Partition::empty()]);
        let total: BigInt = Partition::all(6).iter().map(class_size).sum();
        assert_eq!(total, factorial(6));
        assert_eq!(p("2,2,1").sub_partitions().len(), 6);
        assert_eq!(cycle_type(&[1, 2, 0, 4, 3]), p("3,2"));
    }
}
