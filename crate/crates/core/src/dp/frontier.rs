//! Enumeration by window pattern and gap sizes, for one fixed length n.
//!
//! A state records the relative order of the last L-1 placed values and how
//! many unused values remain in each of the L intervals those values cut
//! [1, n] into. Weights are exact big integers.

use std::collections::HashMap;

use dashu::integer::UBig;

use crate::error::{Error, Result};
use crate::perm::Pattern;

const GAP_BITS: u32 = 16;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DPState {
    pub window: Pattern,
    /// Unused values below the window minimum, between consecutive window
    /// values, and above the maximum.
    pub gaps: Vec<u32>,
}

impl DPState {
    pub fn remaining(&self) -> u64 {
        self.gaps.iter().map(|&g| g as u64).sum()
    }

    /// Lehmer rank of the window in the low bits, then 16 bits per gap.
    pub fn key(&self) -> u128 {
        let mut k = 0u128;
        for &g in self.gaps.iter().rev() {
            k = (k << GAP_BITS) | g as u128;
        }
        (k << GAP_BITS) | self.window.lehmer_rank() as u128
    }

    pub fn from_key(key: u128, len: usize) -> DPState {
        let mask = (1u128 << GAP_BITS) - 1;
        let window = Pattern::from_lehmer((key & mask) as u64, len - 1);
        let gaps = (1..=len).map(|i| ((key >> (GAP_BITS * i as u32)) & mask) as u32).collect();
        DPState { window, gaps }
    }
}

/// Successor of one window when the new value enters at a given slot.
#[derive(Clone, Copy, Debug)]
struct SlotMove {
    rejected: bool,
    next_window: u64,
    /// Rank (0-based, among window plus new value) of the value dropped.
    dropped: usize,
}

#[derive(Clone, Debug)]
pub struct Frontier {
    len: usize,
    states: HashMap<u128, UBig>,
}

impl Frontier {
    /// All states after the first L-1 placements of a length-n permutation:
    /// every window with every composition of the n-L+1 unused values.
    pub fn seed(pat: &Pattern, n: usize) -> Result<Frontier> {
        let len = pat.len();
        let w = len - 1;
        if n < w {
            return Err(Error::InvalidInput(format!("n = {n} is shorter than the window")));
        }
        if n >= 1 << GAP_BITS {
            return Err(Error::InvalidInput(format!("n = {n} too large for packed gaps")));
        }
        let rest = (n - w) as u32;
        let mut states = HashMap::new();
        let mut comps = Vec::new();
        compositions(rest, len, &mut Vec::new(), &mut comps);
        let windows = (0..factorial(w)).map(|r| Pattern::from_lehmer(r, w));
        for window in windows {
            for gaps in &comps {
                let st = DPState { window: window.clone(), gaps: gaps.clone() };
                states.insert(st.key(), UBig::ONE);
            }
        }
        Ok(Frontier { len, states })
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn total(&self) -> UBig {
        self.states.values().fold(UBig::ZERO, |acc, w| acc + w)
    }

    pub fn states(&self) -> impl Iterator<Item = (DPState, &UBig)> + '_ {
        self.states.iter().map(|(&k, w)| (DPState::from_key(k, self.len), w))
    }

    pub fn weight(&self, st: &DPState) -> Option<&UBig> {
        self.states.get(&st.key())
    }

    /// Places one more value in every possible way, dropping transitions that
    /// complete an occurrence of `pat`.
    pub fn expand(&self, pat: &Pattern) -> Frontier {
        let len = self.len;
        let w = len - 1;
        let table = slot_table(pat);
        let mask = (1u128 << GAP_BITS) - 1;
        let mut next: HashMap<u128, UBig> = HashMap::with_capacity(self.states.len());
        let mut gaps = vec![0u32; len];
        let mut split = vec![0u32; len + 1];
        for (&key, weight) in &self.states {
            let lehmer = (key & mask) as usize;
            for (i, g) in gaps.iter_mut().enumerate() {
                *g = ((key >> (GAP_BITS * (i as u32 + 1))) & mask) as u32;
            }
            for slot in 0..=w {
                let g = gaps[slot];
                let mv = table[lehmer][slot];
                if g == 0 || mv.rejected {
                    continue;
                }
                for a in 0..g {
                    split[..slot].copy_from_slice(&gaps[..slot]);
                    split[slot] = a;
                    split[slot + 1] = g - 1 - a;
                    split[slot + 2..].copy_from_slice(&gaps[slot + 1..]);
                    let mut k = 0u128;
                    for j in (0..=len).rev() {
                        if j == mv.dropped {
                            continue;
                        }
                        let v = if j == mv.dropped + 1 { split[j] + split[j - 1] } else { split[j] };
                        k = (k << GAP_BITS) | v as u128;
                    }
                    k = (k << GAP_BITS) | mv.next_window as u128;
                    *next.entry(k).or_insert(UBig::ZERO) += weight;
                }
            }
        }
        Frontier { len, states: next }
    }
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn compositions(total: u32, parts: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if parts == 1 {
        cur.push(total);
        out.push(cur.clone());
        cur.pop();
        return;
    }
    for first in 0..=total {
        cur.push(first);
        compositions(total - first, parts - 1, cur, out);
        cur.pop();
    }
}

fn slot_table(pat: &Pattern) -> Vec<Vec<SlotMove>> {
    let w = pat.len() - 1;
    (0..factorial(w))
        .map(|r| {
            let window = Pattern::from_lehmer(r, w);
            (0..=w)
                .map(|slot| {
                    // Ranks 1..=L after the new value takes rank slot+1.
                    let mut seq: Vec<i64> = window
                        .as_slice()
                        .iter()
                        .map(|&v| if v as usize > slot { v as i64 + 1 } else { v as i64 })
                        .collect();
                    seq.push(slot as i64 + 1);
                    let rejected = pat.matches(&seq);
                    let dropped = seq[0] as usize - 1;
                    let next = crate::perm::standardize(&seq[1..]).expect("distinct values");
                    SlotMove { rejected, next_window: next.lehmer_rank(), dropped }
                })
                .collect()
        })
        .collect()
}

/// Number of length-n permutations avoiding `pat` consecutively.
pub fn frontier_count(pat: &Pattern, n: usize) -> Result<UBig> {
    let w = pat.len() - 1;
    if n <= w {
        return Ok((2..=n).fold(UBig::ONE, |acc, k| acc * k));
    }
    let mut f = Frontier::seed(pat, n)?;
    for _ in w..n {
        f = f.expand(pat);
    }
    Ok(f.total())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::brute_count;

    fn pat(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    #[test]
    fn key_round_trip() {
        let st = DPState { window: pat("231"), gaps: vec![3, 0, 7, 1] };
        assert_eq!(DPState::from_key(st.key(), 4), st);
        assert_eq!(st.remaining(), 11);
    }

    #[test]
    fn matches_brute_force() {
        for s in ["1423", "1234", "2413", "13425"] {
            let p = pat(s);
            for n in 0..=8 {
                assert_eq!(frontier_count(&p, n).unwrap(), UBig::from(brute_count(&p, n).unwrap()));
            }
        }
        assert_eq!(frontier_count(&pat("1423"), 5).unwrap(), UBig::from(110u32));
    }

    #[test]
    fn rejects_exactly_the_completing_slot() {
        // Window ordered like 142 with one unused value between its middle and
        // largest entries: placing it completes 1423.
        let p = pat("1423");
        let only = |gaps: Vec<u32>| {
            let st = DPState { window: pat("132"), gaps };
            let mut f = Frontier { len: 4, states: HashMap::new() };
            f.states.insert(st.key(), UBig::ONE);
            f.expand(&p)
        };
        assert!(only(vec![0, 0, 1, 0]).is_empty());
        // Between the smallest and middle entries gives 1432 instead.
        let ok = only(vec![0, 1, 0, 0]);
        assert_eq!(ok.total(), UBig::ONE);
        let (st, _) = ok.states().next().unwrap();
        assert_eq!(st.window, pat("321"));
        let full = Frontier::seed(&p, 4).unwrap().expand(&p);
        assert_eq!(full.total(), UBig::from(23u32));
    }

    #[test]
    fn outgoing_multiplicity_is_conserved() {
        let p = pat("1423");
        let f = Frontier::seed(&p, 7).unwrap();
        let table = slot_table(&p);
        for (st, _) in f.states() {
            let mut single = Frontier { len: 4, states: HashMap::new() };
            single.states.insert(st.key(), UBig::ONE);
            let out = single.expand(&p).total();
            let lehmer = st.window.lehmer_rank() as usize;
            let want: u64 = (0..4)
                .filter(|&i| !table[lehmer][i].rejected)
                .map(|i| st.gaps[i] as u64)
                .sum();
            assert_eq!(out, UBig::from(want));
        }
    }

    #[test]
    fn state_count_bound() {
        let p = pat("1342");
        let n = 12;
        let mut f = Frontier::seed(&p, n).unwrap();
        for step in 3..n {
            let remaining = n - step;
            let binom: u64 = (1..=3u64).fold(1, |acc, i| acc * (remaining as u64 + i) / i);
            assert!(f.len() as u64 <= 6 * binom);
            f = f.expand(&p);
        }
    }
}
