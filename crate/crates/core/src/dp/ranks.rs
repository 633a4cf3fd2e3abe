//! Enumeration by the ranks of the last L-1 entries.
//!
//! After t entries have been placed, the state is the tuple (r_1, ..., r_w),
//! w = L-1, of ranks (0-based, among all t placed values) of the last w
//! entries, oldest first. Appending a new entry of rank s among t+1 values
//! shifts every rank >= s up by one; since the set of placed values is
//! always an initial segment after standardization, the tuple determines all
//! future behaviour. Counts are stored densely with r_1 varying fastest, so
//! summing over the forgotten entry r_1 is a range query on a contiguous row,
//! answered in O(1) from prefix sums. One step costs O(w (t+1)^w).

use super::modular::{primes_below_2_62, Crt};
use crate::perm::Pattern;

/// Precomputed facts about the pattern used by every transition.
struct Shape {
    w: usize,
    /// Relative order required of (q_1..q_{w-1}) for the window to be a
    /// candidate occurrence: less[j][k] iff sigma_{j+2} < sigma_{k+2}.
    less: Vec<Vec<bool>>,
    /// How many of sigma_2..sigma_w lie below sigma_L.
    below_last: usize,
    /// Tail position (0..w) holding sigma_1 - 1 and sigma_1 + 1.
    lower: Option<usize>,
    upper: Option<usize>,
}

impl Shape {
    fn new(pat: &Pattern) -> Shape {
        let s = pat.as_slice();
        let w = s.len() - 1;
        let tail = &s[1..];
        let less = (0..w.saturating_sub(1))
            .map(|j| (0..w - 1).map(|k| tail[j] < tail[k]).collect())
            .collect();
        let below_last = tail[..w - 1].iter().filter(|&&v| v < tail[w - 1]).count();
        let lower = tail.iter().position(|&v| v + 1 == s[0]);
        let upper = tail.iter().position(|&v| v == s[0] + 1);
        Shape { w, less, below_last, lower, upper }
    }
}

/// Bytes needed to step from t-1 to t entries.
pub fn step_bytes(w: usize, t: usize) -> u128 {
    let pow = |b: usize| (b as u128).pow(w as u32);
    8 * (pow(t.saturating_sub(1)) + pow(t))
}

/// c_0..c_n_max modulo p (p < 2^62).
pub fn counts_mod(pat: &Pattern, n_max: usize, p: u64) -> Vec<u64> {
    let shape = Shape::new(pat);
    let w = shape.w;
    let mut out = Vec::with_capacity(n_max + 1);
    let mut fact = 1u64;
    for t in 0..=n_max.min(w) {
        if t > 0 {
            fact = ((fact as u128 * t as u128) % p as u128) as u64;
        }
        out.push(fact);
    }
    if n_max <= w {
        return out;
    }

    // Seed: every arrangement of w distinct ranks in [0, w).
    let mut cur = vec![0u64; w.pow(w as u32)];
    let mut digits = vec![0usize; w];
    for (idx, slot) in cur.iter_mut().enumerate() {
        let mut x = idx;
        for d in digits.iter_mut() {
            *d = x % w;
            x /= w;
        }
        let distinct = (0..w).all(|i| (0..i).all(|j| digits[i] != digits[j]));
        *slot = u64::from(distinct);
    }

    // q_2..q_{w-1}: the middle of the target tuple, with q_1 handled by the
    // innermost loop.
    let mut rest = vec![0usize; w.saturating_sub(2)];
    let mut rest_old = vec![0usize; rest.len()];
    for t in w..n_max {
        // Prefix sums along r_1.
        for row in cur.chunks_exact_mut(t) {
            let mut acc = 0u64;
            for v in row.iter_mut() {
                acc += *v;
                if acc >= p {
                    acc -= p;
                }
                *v = acc;
            }
        }
        let nt = t + 1;
        let mut next = vec![0u64; nt.pow(w as u32)];
        let mut total = 0u64;
        if w == 1 {
            for (s, slot) in next.iter_mut().enumerate() {
                *slot = single_entry(&shape, &cur[..t], t, s, p);
                total = add_mod(total, *slot, p);
            }
        } else {
            // Layout of `next`: q_1 fastest, then q_2, ..., q_{w-1}, then s.
            let mut chunks = next.chunks_exact_mut(nt);
            for s in 0..nt {
                rest.iter_mut().for_each(|x| *x = 0);
                loop {
                    let chunk = chunks.next().expect("layout covers every row");
                    let sum = fill_row(&shape, &cur, t, s, &rest, &mut rest_old, chunk, p);
                    total = add_mod(total, sum, p);
                    let mut k = 0;
                    while k < rest.len() {
                        rest[k] += 1;
                        if rest[k] < nt {
                            break;
                        }
                        rest[k] = 0;
                        k += 1;
                    }
                    if k == rest.len() {
                        break;
                    }
                }
            }
        }
        out.push(total);
        cur = next;
    }
    out
}

#[inline]
fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

/// Total of `row` minus the entries whose r_1 lies in [lo, hi].
#[inline]
fn row_minus(row: &[u64], lo: usize, hi: isize, p: u64) -> u64 {
    let total = row[row.len() - 1];
    if hi < lo as isize {
        return total;
    }
    let mut bad = row[hi as usize];
    if lo > 0 {
        bad = sub_mod(bad, row[lo - 1], p);
    }
    sub_mod(total, bad, p)
}

/// Window of length one: the state is just the new rank s.
fn single_entry(shape: &Shape, row: &[u64], t: usize, s: usize, p: u64) -> u64 {
    let lo = if shape.lower.is_some() { s } else { 0 };
    let hi = if shape.upper.is_some() { s as isize - 1 } else { t as isize - 1 };
    row_minus(row, lo, hi, p)
}

/// Fills the targets (q_1, rest..., s) for every q_1 and returns their sum.
#[allow(clippy::too_many_arguments)]
fn fill_row(
    shape: &Shape,
    cur: &[u64],
    t: usize,
    s: usize,
    rest: &[usize],
    rest_old: &mut [usize],
    out: &mut [u64],
    p: u64,
) -> u64 {
    for (j, &qj) in rest.iter().enumerate() {
        if qj == s || rest[..j].contains(&qj) {
            return 0;
        }
        rest_old[j] = qj - usize::from(qj > s);
    }
    // Old index is r_1 + t (r_2 + t base_rest) with r_{k+3} = rest_old[k].
    let mut base_rest = 0usize;
    for &r in rest_old.iter().rev() {
        base_rest = base_rest * t + r;
    }

    // Can (q_1, rest, s) be ordered like sigma_2..sigma_L at all, and if so,
    // which q_1 qualify: an open interval (a, b) and a side of s.
    let mut cand = true;
    for j in 0..rest.len() {
        for k in 0..rest.len() {
            if j != k && (rest[j] < rest[k]) != shape.less[j + 1][k + 1] {
                cand = false;
            }
        }
    }
    let mut a: isize = -1;
    let mut b: usize = t + 1;
    for (k, &qk) in rest.iter().enumerate() {
        if shape.less[0][k + 1] {
            b = b.min(qk);
        } else {
            a = a.max(qk as isize);
        }
    }
    let below_rest = rest.iter().filter(|&&x| x < s).count();
    let need_below = match shape.below_last.checked_sub(below_rest) {
        Some(0) => false,
        Some(1) => true,
        _ => {
            cand = false;
            false
        }
    };

    // Neighbour bounds not involving q_1 (tail position 0).
    let last = shape.w - 1;
    let fixed_lo = |j: usize| if j == last { s } else { rest_old[j - 1] + 1 };
    let fixed_hi = |j: usize| if j == last { s as isize - 1 } else { rest_old[j - 1] as isize - 1 };

    let mut sum = 0u64;
    for (q1, slot) in out.iter_mut().enumerate() {
        if q1 == s || rest.contains(&q1) {
            continue;
        }
        let r2 = q1 - usize::from(q1 > s);
        let start = (r2 + t * base_rest) * t;
        let row = &cur[start..start + t];
        let hit = cand && q1 as isize > a && q1 < b && (q1 < s) == need_below;
        let v = if hit {
            let lo = match shape.lower {
                None => 0,
                Some(0) => r2 + 1,
                Some(j) => fixed_lo(j),
            };
            let hi = match shape.upper {
                None => t as isize - 1,
                Some(0) => r2 as isize - 1,
                Some(j) => fixed_hi(j),
            };
            row_minus(row, lo, hi, p)
        } else {
            row[t - 1]
        };
        *slot = v;
        sum = add_mod(sum, v, p);
    }
    sum
}

/// Exact counts c_0..c_n_max by multi-modular evaluation. One extra prime
/// beyond what the bound c_n <= n! requires is used as a consistency check.
pub fn counts_exact(pat: &Pattern, n_max: usize) -> Result<Vec<dashu::integer::UBig>, String> {
    use dashu::base::BitTest;
    use dashu::integer::UBig;
    let mut fact = UBig::ONE;
    for k in 2..=n_max.max(1) {
        fact *= k;
    }
    let bits = fact.bit_len() + 1;
    let needed = bits.div_ceil(61);
    let primes = primes_below_2_62(needed + 1);
    let mut crts = vec![Crt::default(); n_max + 1];
    let (check_prime, main) = primes.split_last().unwrap();
    for &p in main {
        for (crt, r) in crts.iter_mut().zip(counts_mod(pat, n_max, p)) {
            crt.push(r, p);
        }
    }
    let check = counts_mod(pat, n_max, *check_prime);
    for (n, (crt, r)) in crts.iter().zip(check).enumerate() {
        if (crt.value() % *check_prime) != r {
            return Err(format!("residue check failed at n = {n}"));
        }
    }
    Ok(crts.into_iter().map(|c| c.value().clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::brute_count;

    #[test]
    fn agrees_with_brute_force_small() {
        for s in ["12", "21", "123", "132", "213", "1423", "1342", "2413", "13425", "15243"] {
            let pat: Pattern = s.parse().unwrap();
            let got = counts_exact(&pat, 8).unwrap();
            for (n, c) in got.iter().enumerate() {
                assert_eq!(*c, dashu::integer::UBig::from(brute_count(&pat, n).unwrap()), "{s} n={n}");
            }
        }
    }

    #[test]
    fn known_values() {
        let pat: Pattern = "123".parse().unwrap();
        // Permutations without a double ascent.
        let want = [1u64, 1, 2, 5, 17, 70, 349, 2017, 13358, 99377, 822041];
        let got = counts_mod(&pat, 10, 1_000_000_007);
        assert_eq!(got, want);
    }
}
