use super::pattern::{Pattern, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanMode {
    /// Any subsequence of the host.
    Classical,
    /// Contiguous windows only.
    Consecutive,
}

/// Occurrences of a pattern in a host, as 0-based position sets in
/// lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Occurrences {
    pub positions: Vec<Vec<usize>>,
}

impl Occurrences {
    pub fn count(&self) -> usize {
        self.positions.len()
    }
}

pub fn occurrences(host: &Permutation, pat: &Pattern, mode: ScanMode) -> Occurrences {
    let (n, m) = (host.len(), pat.len());
    let mut positions = Vec::new();
    if m > n {
        return Occurrences { positions };
    }
    let h = host.as_slice();
    match mode {
        ScanMode::Consecutive => {
            for start in 0..=n - m {
                if pat.matches(&h[start..start + m]) {
                    positions.push((start..start + m).collect());
                }
            }
        }
        ScanMode::Classical => {
            // Walk all m-subsets in lexicographic order.
            let mut idx: Vec<usize> = (0..m).collect();
            let mut buf = vec![0u32; m];
            loop {
                for (b, &i) in buf.iter_mut().zip(&idx) {
                    *b = h[i];
                }
                if pat.matches(&buf) {
                    positions.push(idx.clone());
                }
                let Some(j) = (0..m).rev().find(|&j| idx[j] < n - m + j) else {
                    break;
                };
                idx[j] += 1;
                for l in j + 1..m {
                    idx[l] = idx[l - 1] + 1;
                }
            }
        }
    }
    Occurrences { positions }
}

/// Consecutive-occurrence starts only; the hot path for scans.
pub fn consecutive_starts<'a>(
    host: &'a [u32],
    pat: &'a Pattern,
) -> impl Iterator<Item = usize> + 'a {
    let m = pat.len();
    let inv = pat.inverse();
    let last = host.len().checked_sub(m).map_or(0, |x| x + 1);
    (0..last).filter(move |&s| inv.windows(2).all(|w| host[s + w[0]] < host[s + w[1]]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn host(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn pat(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    #[test]
    fn worked_examples() {
        let cl = occurrences(&host("15234"), &pat("312"), ScanMode::Classical);
        assert_eq!(cl.count(), 3);
        // 523, 524, 534
        assert_eq!(cl.positions, vec![vec![1, 2, 3], vec![1, 2, 4], vec![1, 3, 4]]);

        let co = occurrences(&host("15234"), &pat("312"), ScanMode::Consecutive);
        assert_eq!(co.positions, vec![vec![1, 2, 3]]);

        assert_eq!(occurrences(&host("3142"), &pat("312"), ScanMode::Consecutive).count(), 0);
        assert_eq!(occurrences(&host("3142"), &pat("312"), ScanMode::Classical).count(), 1);
    }

    #[test]
    fn longer_pattern_than_host_is_empty() {
        assert_eq!(occurrences(&host("21"), &pat("123"), ScanMode::Classical).count(), 0);
        assert_eq!(occurrences(&host("21"), &pat("123"), ScanMode::Consecutive).count(), 0);
    }

    #[test]
    fn starts_agree_with_full_scan() {
        let h = host("162534");
        let p = pat("1423");
        let starts: Vec<_> = consecutive_starts(h.as_slice(), &p).collect();
        assert_eq!(starts, vec![0, 2]);
    }
}
