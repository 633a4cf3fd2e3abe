use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `1..=m` used as a forbidden consecutive pattern.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Pattern(Vec<u8>);

/// A host permutation of `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u32>);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symmetry {
    Reverse,
    Complement,
}

fn check_bijection(values: impl Iterator<Item = usize>, len: usize) -> Result<()> {
    let mut seen = vec![false; len];
    for v in values {
        if v == 0 || v > len {
            return Err(Error::InvalidInput(format!("value {v} outside 1..={len}")));
        }
        if std::mem::replace(&mut seen[v - 1], true) {
            return Err(Error::InvalidInput(format!("value {v} repeated")));
        }
    }
    Ok(())
}

/// Splits `1423` or `1,4,2,3` into its entries.
fn parse_entries(s: &str) -> Result<Vec<u64>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::InvalidInput("empty permutation".into()));
    }
    let bad = || Error::InvalidInput(format!("cannot parse {s:?} as a permutation"));
    if s.contains(',') || s.contains(' ') {
        s.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<u64>().map_err(|_| bad()))
            .collect()
    } else {
        s.chars()
            .map(|c| c.to_digit(10).map(u64::from).ok_or_else(bad))
            .collect()
    }
}

fn write_entries<T: fmt::Display>(f: &mut fmt::Formatter<'_>, xs: &[T]) -> fmt::Result {
    let sep = if xs.len() > 9 { "," } else { "" };
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

impl Pattern {
    pub fn new(elems: Vec<u8>) -> Result<Self> {
        if elems.is_empty() {
            return Err(Error::InvalidInput("pattern must be non-empty".into()));
        }
        check_bijection(elems.iter().map(|&v| v as usize), elems.len())?;
        Ok(Pattern(elems))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    /// `inverse()[v - 1]` is the position of value `v`.
    pub fn inverse(&self) -> Vec<usize> {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v as usize - 1] = i;
        }
        inv
    }

    pub fn reverse(&self) -> Pattern {
        Pattern(self.0.iter().rev().copied().collect())
    }

    pub fn complement(&self) -> Pattern {
        let m = self.len() as u8;
        Pattern(self.0.iter().map(|&v| m + 1 - v).collect())
    }

    pub fn apply(&self, which: Symmetry) -> Pattern {
        match which {
            Symmetry::Reverse => self.reverse(),
            Symmetry::Complement => self.complement(),
        }
    }

    /// True when `window` is order-isomorphic to this pattern.
    pub fn matches<T: Ord>(&self, window: &[T]) -> bool {
        debug_assert_eq!(window.len(), self.len());
        // Positions listed by increasing pattern value must carry increasing values.
        let inv = self.inverse();
        inv.windows(2).all(|w| window[w[0]] < window[w[1]])
    }

    /// Lehmer code of the pattern as a single integer in `0..m!`.
    pub fn lehmer_rank(&self) -> u64 {
        let m = self.len();
        let mut rank = 0u64;
        for i in 0..m {
            let smaller = self.0[i + 1..].iter().filter(|&&v| v < self.0[i]).count() as u64;
            rank = rank * (m - i) as u64 + smaller;
        }
        rank
    }

    /// Inverse of [`Pattern::lehmer_rank`].
    pub fn from_lehmer(mut rank: u64, m: usize) -> Pattern {
        let mut digits = vec![0usize; m];
        for i in (0..m).rev() {
            let base = (m - i) as u64;
            digits[i] = (rank % base) as usize;
            rank /= base;
        }
        let mut free: Vec<u8> = (1..=m as u8).collect();
        Pattern(digits.into_iter().map(|d| free.remove(d)).collect())
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_entries(f, &self.0)
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let entries = parse_entries(s)?;
        if entries.iter().any(|&v| v > u8::MAX as u64) {
            return Err(Error::InvalidInput(format!("pattern {s:?} too long")));
        }
        Pattern::new(entries.into_iter().map(|v| v as u8).collect())
    }
}

impl TryFrom<String> for Pattern {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Pattern> for String {
    fn from(p: Pattern) -> String {
        p.to_string()
    }
}

impl Permutation {
    pub fn new(elems: Vec<u32>) -> Result<Self> {
        check_bijection(elems.iter().map(|&v| v as usize), elems.len())?;
        Ok(Permutation(elems))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_entries(f, &self.0)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let entries = parse_entries(s)?;
        if entries.iter().any(|&v| v > u32::MAX as u64) {
            return Err(Error::InvalidInput(format!("entry in {s:?} too large")));
        }
        Permutation::new(entries.into_iter().map(|v| v as u32).collect())
    }
}

/// Replaces a word of distinct integers by the ranks of its entries.
pub fn standardize(word: &[i64]) -> Result<Pattern> {
    if word.is_empty() {
        return Err(Error::InvalidInput("cannot standardize an empty word".into()));
    }
    if word.len() > u8::MAX as usize {
        return Err(Error::InvalidInput("word too long to standardize into a pattern".into()));
    }
    let mut order: Vec<usize> = (0..word.len()).collect();
    order.sort_by_key(|&i| word[i]);
    if order.windows(2).any(|w| word[w[0]] == word[w[1]]) {
        return Err(Error::InvalidInput(format!("word {word:?} has repeated entries")));
    }
    let mut ranks = vec![0u8; word.len()];
    for (rank, &i) in order.iter().enumerate() {
        ranks[i] = rank as u8 + 1;
    }
    Ok(Pattern(ranks))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    #[test]
    fn standardize_examples() {
        assert_eq!(standardize(&[5, 2, 3]).unwrap(), pat("312"));
        assert_eq!(standardize(&[1, 2, 3]).unwrap(), pat("123"));
        assert_eq!(standardize(&[15, 3, 9, 7]).unwrap(), pat("4132"));
        assert!(matches!(standardize(&[4, 1, 4]), Err(Error::InvalidInput(_))));
        assert!(standardize(&[]).is_err());
    }

    #[test]
    fn symmetries() {
        assert_eq!(pat("1423").reverse(), pat("3241"));
        assert_eq!(pat("1234").complement(), pat("4321"));
        assert_eq!(pat("1243").reverse().complement(), pat("2134"));
    }

    #[test]
    fn rejects_non_bijections() {
        assert!("1224".parse::<Pattern>().is_err());
        assert!("1254".parse::<Pattern>().is_err());
        assert!("".parse::<Pattern>().is_err());
        assert!("1,3,2".parse::<Permutation>().is_ok());
    }

    #[test]
    fn lehmer_rank_is_a_bijection() {
        let mut seen = std::collections::HashSet::new();
        for a in 1..=4u8 {
            for b in 1..=4u8 {
                for c in 1..=4u8 {
                    for d in 1..=4u8 {
                        if let Ok(p) = Pattern::new(vec![a, b, c, d]) {
                            assert!(p.lehmer_rank() < 24);
                            assert!(seen.insert(p.lehmer_rank()));
                            assert_eq!(Pattern::from_lehmer(p.lehmer_rank(), 4), p);
                        }
                    }
                }
            }
        }
        assert_eq!(seen.len(), 24);
        assert_eq!(pat("1234").lehmer_rank(), 0);
    }

    #[test]
    fn display_round_trips() {
        let p = pat("15243");
        assert_eq!(p.to_string().parse::<Pattern>().unwrap(), p);
        let long = Permutation::new((1..=11).rev().collect()).unwrap();
        assert_eq!(long.to_string().parse::<Permutation>().unwrap(), long);
    }
}
