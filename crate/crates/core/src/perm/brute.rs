//! Exhaustive reference counts. Nothing here shares code with the
//! dynamic-programming or recurrence engines, so these serve as oracles.

use super::pattern::Pattern;
use crate::error::{Error, Result};

/// Largest `n` the exhaustive scans accept by default.
pub const DEFAULT_BRUTE_CAP: usize = 12;

/// How clusters on a fixed permutation are counted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ClusterCounting {
    /// Every choice of marked occurrences that covers the permutation and
    /// chains with pairwise overlaps is a separate cluster. This is the
    /// count the Goulden–Jackson inversion consumes.
    #[default]
    Marked,
    /// A permutation counts once, with `k` equal to its total number of
    /// occurrences, when all of them together form an overlapping chain.
    ExactOccurrences,
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::CapExceeded { n, cap })
    } else if n > 31 {
        Err(Error::CapExceeded { n, cap: 31 })
    } else {
        Ok(())
    }
}

/// Depth-first walk over permutations of `1..=n`, calling `visit` at each
/// full permutation. `prune(prefix)` is consulted after every placement.
fn walk<P, V>(n: usize, prune: &mut P, visit: &mut V)
where
    P: FnMut(&[u32]) -> bool,
    V: FnMut(&[u32]),
{
    fn go<P, V>(n: usize, used: u32, prefix: &mut Vec<u32>, prune: &mut P, visit: &mut V)
    where
        P: FnMut(&[u32]) -> bool,
        V: FnMut(&[u32]),
    {
        if prefix.len() == n {
            visit(prefix);
            return;
        }
        for v in 1..=n as u32 {
            if used & (1 << v) != 0 {
                continue;
            }
            prefix.push(v);
            if !prune(prefix) {
                go(n, used | (1 << v), prefix, prune, visit);
            }
            prefix.pop();
        }
    }
    let mut prefix = Vec::with_capacity(n);
    go(n, 0, &mut prefix, prune, visit);
}

/// Number of permutations of length `n` with no consecutive occurrence of `pat`.
pub fn brute_count(pat: &Pattern, n: usize) -> Result<u64> {
    brute_count_capped(pat, n, DEFAULT_BRUTE_CAP)
}

pub fn brute_count_capped(pat: &Pattern, n: usize, cap: usize) -> Result<u64> {
    check_cap(n, cap)?;
    let m = pat.len();
    let inv = pat.inverse();
    let mut count = 0u64;
    // Every extension of a prefix that already contains the pattern contains it too.
    let mut prune = |prefix: &[u32]| {
        let t = prefix.len();
        t >= m && inv.windows(2).all(|w| prefix[t - m + w[0]] < prefix[t - m + w[1]])
    };
    walk(n, &mut prune, &mut |_| count += 1);
    Ok(count)
}

/// Number of `k`-clusters of length `n`, with `s(1, 0) = 1`.
pub fn brute_clusters(pat: &Pattern, n: usize, k: usize) -> Result<u64> {
    Ok(brute_cluster_row(pat, n, ClusterCounting::Marked)?
        .get(k)
        .copied()
        .unwrap_or(0))
}

/// All cluster counts of length `n`, indexed by the number of occurrences.
pub fn brute_cluster_row(pat: &Pattern, n: usize, mode: ClusterCounting) -> Result<Vec<u64>> {
    check_cap(n, DEFAULT_BRUTE_CAP)?;
    let m = pat.len();
    if m < 2 {
        return Err(Error::InvalidInput("cluster patterns need length at least 2".into()));
    }
    if n == 1 {
        return Ok(vec![1]);
    }
    if n < m {
        return Ok(Vec::new());
    }
    let inv = pat.inverse();
    let is_occ = |p: &[u32], s: usize| inv.windows(2).all(|w| p[s + w[0]] < p[s + w[1]]);

    let mut row = vec![0u64; n];
    // Pruning keeps track of which decided windows can be reached by a chain
    // of overlapping occurrences starting at position 0.
    let mut reach: Vec<bool> = vec![false; n];
    let mut prune = |prefix: &[u32]| {
        let t = prefix.len();
        if t < m {
            return false;
        }
        let s = t - m;
        let lo = s.saturating_sub(m - 1);
        reach[s] = is_occ(prefix, s) && (s == 0 || reach[lo..s].iter().any(|&r| r));
        if s == 0 && !reach[0] {
            return true;
        }
        // Later windows start after s and must overlap a reachable one.
        let keep = s.saturating_sub(m - 2);
        !reach[keep..=s].iter().any(|&r| r)
    };
    let mut visit = |p: &[u32]| {
        let occ: Vec<usize> = (0..=n - m).filter(|&s| is_occ(p, s)).collect();
        match mode {
            ClusterCounting::Marked => {
                // chains[i][k]: chains from occurrence 0 to occ[i] using k occurrences.
                let mut chains: Vec<Vec<u64>> = vec![vec![0; occ.len() + 1]; occ.len()];
                if occ.first() != Some(&0) {
                    return;
                }
                chains[0][1] = 1;
                for i in 1..occ.len() {
                    for j in 0..i {
                        if occ[i] - occ[j] < m {
                            for k in 1..occ.len() {
                                chains[i][k + 1] += chains[j][k];
                            }
                        }
                    }
                }
                if occ.last() == Some(&(n - m)) {
                    for (k, &c) in chains[occ.len() - 1].iter().enumerate() {
                        row[k] += c;
                    }
                }
            }
            ClusterCounting::ExactOccurrences => {
                let chained = occ.first() == Some(&0)
                    && occ.last() == Some(&(n - m))
                    && occ.windows(2).all(|w| w[1] - w[0] < m);
                if chained {
                    row[occ.len()] += 1;
                }
            }
        }
    };
    walk(n, &mut prune, &mut visit);
    while row.last() == Some(&0) {
        row.pop();
    }
    Ok(row)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    fn factorial(n: usize) -> u64 {
        (1..=n as u64).product()
    }

    #[test]
    fn counts_from_examples() {
        assert_eq!(brute_count(&pat("1234"), 4).unwrap(), 23);
        assert_eq!(brute_count(&pat("1423"), 3).unwrap(), 6);
        assert_eq!(brute_count(&pat("1423"), 5).unwrap(), 110);
        assert_eq!(brute_count(&pat("1423"), 0).unwrap(), 1);
    }

    #[test]
    fn short_lengths_are_factorial() {
        for p in ["123", "132", "1423", "25314"] {
            let p = pat(p);
            for n in 0..p.len() {
                assert_eq!(brute_count(&p, n).unwrap(), factorial(n));
            }
            assert_eq!(brute_count(&p, p.len()).unwrap(), factorial(p.len()) - 1);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let err = brute_count_capped(&pat("123"), 10, 9).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { n: 10, cap: 9 }));
        assert!(brute_clusters(&pat("123"), 13, 1).is_err());
    }

    #[test]
    fn clusters_from_examples() {
        let p = pat("1423");
        assert_eq!(brute_clusters(&p, 6, 2).unwrap(), 1);
        assert_eq!(brute_clusters(&p, 4, 1).unwrap(), 1);
        assert_eq!(brute_clusters(&p, 7, 2).unwrap(), 4);
        assert_eq!(brute_clusters(&p, 1, 0).unwrap(), 1);
        assert_eq!(brute_clusters(&p, 3, 1).unwrap(), 0);
        assert_eq!(brute_clusters(&p, 2, 0).unwrap(), 0);
    }

    #[test]
    fn marked_and_exact_agree_without_redundant_occurrences() {
        for p in ["1423", "13425", "14523"] {
            let p = pat(p);
            for n in 1..=9 {
                assert_eq!(
                    brute_cluster_row(&p, n, ClusterCounting::Marked).unwrap(),
                    brute_cluster_row(&p, n, ClusterCounting::ExactOccurrences).unwrap(),
                    "{p} n={n}"
                );
            }
        }
    }

    #[test]
    fn marked_counts_subchains_for_15243() {
        // 1 9 2 8 3 7 4 6 5 has occurrences at 0, 2, 4; {0, 4} is also a cluster.
        let p = pat("15243");
        let marked = brute_cluster_row(&p, 9, ClusterCounting::Marked).unwrap();
        let exact = brute_cluster_row(&p, 9, ClusterCounting::ExactOccurrences).unwrap();
        assert_ne!(marked, exact);
        assert!(marked[2] > exact[2]);
    }

    #[test]
    fn pruned_cluster_walk_matches_naive_scan() {
        // Naive: check every permutation of length 8 against the definition.
        let p = pat("1324");
        let n = 8;
        let mut naive = vec![0u64; n];
        let mut perm: Vec<u32> = (1..=n as u32).collect();
        loop {
            let occ: Vec<usize> = super::super::scan::consecutive_starts(&perm, &p).collect();
            if occ.first() == Some(&0)
                && occ.last() == Some(&(n - 4))
                && occ.windows(2).all(|w| w[1] - w[0] < 4)
            {
                naive[occ.len()] += 1;
            }
            // next lexicographic permutation
            let Some(i) = (0..n - 1).rev().find(|&i| perm[i] < perm[i + 1]) else { break };
            let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
            perm.swap(i, j);
            perm[i + 1..].reverse();
        }
        while naive.last() == Some(&0) {
            naive.pop();
        }
        assert_eq!(brute_cluster_row(&p, n, ClusterCounting::ExactOccurrences).unwrap(), naive);
    }
}
