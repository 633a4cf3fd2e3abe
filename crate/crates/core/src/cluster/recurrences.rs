//! Cluster-number recurrences for pattern families whose clusters decompose
//! as a run of occurrences overlapping by more than one entry, followed by an
//! overlap of exactly one entry and a shorter cluster.

use std::fmt;

use dashu::integer::UBig;

use super::ClusterTable;
use crate::combinat::{double_factorial_odd, Binomials};
use crate::error::{Error, Result};
use crate::perm::Pattern;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OverlapFamily {
    /// 1 m 2 3 ... (m-1): 1423, 15234, ...
    OneM { m: usize },
    /// 1 m tau_3 ... tau_m with tau_m = tau_{m-1} + 1 and c = m - tau_m - 1.
    General { m: usize, c: usize },
    /// 1 3 4 ... (m-1) 2 m: 1324, 13425, ...
    Tree { m: usize },
    P14523,
    P15243,
}

impl fmt::Display for OverlapFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OverlapFamily::OneM { m } => write!(f, "onem(m={m})"),
            OverlapFamily::General { m, c } => write!(f, "general(m={m},c={c})"),
            OverlapFamily::Tree { m } => write!(f, "tree(m={m})"),
            OverlapFamily::P14523 => write!(f, "14523"),
            OverlapFamily::P15243 => write!(f, "15243"),
        }
    }
}

impl OverlapFamily {
    pub fn validate(self) -> Result<Self> {
        let ok = match self {
            OverlapFamily::OneM { m } | OverlapFamily::Tree { m } => m >= 4,
            OverlapFamily::General { m, c } => m >= 4 && c + 3 <= m,
            OverlapFamily::P14523 | OverlapFamily::P15243 => true,
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::Domain(format!("parameters out of range for {self}")))
        }
    }

    pub fn length(self) -> usize {
        match self {
            OverlapFamily::OneM { m } | OverlapFamily::Tree { m } => m,
            OverlapFamily::General { m, .. } => m,
            OverlapFamily::P14523 | OverlapFamily::P15243 => 5,
        }
    }

    /// A concrete pattern governed by the recurrence. For the general family
    /// the free middle entries are placed in decreasing order, which rules out
    /// overlaps of three or more entries; c = m - 3 has no realization.
    pub fn representative(self) -> Option<Pattern> {
        let m = self.length() as u8;
        let v: Vec<u8> = match self {
            OverlapFamily::OneM { .. } => [1, m].into_iter().chain(2..m).collect(),
            OverlapFamily::General { c, .. } => {
                let c = c as u8;
                if c + 4 > m {
                    return None;
                }
                let last = m - c - 1;
                let middle = (2..m).rev().filter(|&x| x != last && x != last - 1);
                [1, m].into_iter().chain(middle).chain([last - 1, last]).collect()
            }
            OverlapFamily::Tree { .. } => {
                [1].into_iter().chain(3..m).chain([2, m]).collect()
            }
            OverlapFamily::P14523 => vec![1, 4, 5, 2, 3],
            OverlapFamily::P15243 => vec![1, 5, 2, 4, 3],
        };
        Pattern::new(v).ok()
    }

    /// The family whose recurrence governs `pat` exactly as written.
    pub fn for_pattern(pat: &Pattern) -> Option<OverlapFamily> {
        let m = pat.len();
        let s = pat.as_slice();
        if m < 4 {
            return None;
        }
        let candidates = [
            OverlapFamily::OneM { m },
            OverlapFamily::Tree { m },
            OverlapFamily::P14523,
            OverlapFamily::P15243,
        ];
        if let Some(f) = candidates.into_iter().find(|f| f.representative().as_ref() == Some(pat)) {
            return Some(f);
        }
        // Shape 1 m ... with the last two entries consecutive and increasing.
        if s[0] == 1 && s[1] as usize == m && s[m - 1] == s[m - 2] + 1 {
            let c = m - s[m - 1] as usize - 1;
            return Some(OverlapFamily::General { m, c });
        }
        None
    }

    /// Cluster counts up to length `order`.
    pub fn table(self, order: usize) -> Result<ClusterTable> {
        match self.validate()? {
            OverlapFamily::OneM { m } => clusters_onem(m, order),
            OverlapFamily::General { m, c } => clusters_general(m, c, order),
            OverlapFamily::Tree { m } => clusters_tree(m, order),
            OverlapFamily::P14523 => clusters_14523(order),
            OverlapFamily::P15243 => clusters_15243(order),
        }
    }
}

/// One term of a recurrence: s_{n,k} += coef * s_{prev, k - l}.
struct Term {
    l: usize,
    coef: UBig,
    prev: i64,
}

/// Fills a table from s_{1,0} = 1, zero rows for 2 <= n < m, and the
/// recurrence for n >= m.
fn fill(
    descriptor: String,
    m: usize,
    order: usize,
    mut terms: impl FnMut(usize) -> Result<Vec<Term>>,
) -> Result<ClusterTable> {
    let mut tab = ClusterTable::new(descriptor, order);
    if order >= 1 {
        tab.set_row(1, vec![UBig::ONE]);
    }
    for n in m..=order {
        let mut row: Vec<UBig> = Vec::new();
        for term in terms(n)? {
            if term.prev < 1 || term.coef == UBig::ZERO {
                continue;
            }
            let prev = tab.row(term.prev as usize).to_vec();
            for (j, v) in prev.iter().enumerate() {
                let k = j + term.l;
                if row.len() <= k {
                    row.resize(k + 1, UBig::ZERO);
                }
                row[k] += &term.coef * v;
            }
        }
        tab.set_row(n, row);
    }
    Ok(tab)
}

/// The values of l with lo <= step * l + offset <= n.
fn l_range(lo: usize, step: usize, offset: usize, n: usize) -> impl Iterator<Item = usize> {
    (1..).take_while(move |&l| step * l + offset <= n).filter(move |&l| step * l + offset >= lo)
}

/// s_{n,k} = sum_{m <= (m-2)l+2 <= n} C(n-(m-3)l-2, l) s_{n-(m-2)l-1, k-l}.
pub fn clusters_onem(m: usize, order: usize) -> Result<ClusterTable> {
    if m < 4 {
        return Err(Error::Domain(format!("onem family needs m >= 4, got {m}")));
    }
    let mut binom = Binomials::new();
    fill(OverlapFamily::OneM { m }.to_string(), m, order, |n| {
        Ok(l_range(m, m - 2, 2, n)
            .map(|l| Term {
                l,
                coef: binom.get((n - (m - 3) * l) as i64 - 2, l as i64),
                prev: (n - (m - 2) * l) as i64 - 1,
            })
            .collect())
    })
}

/// s_{n,k} = sum_{m <= (m-2)l+2 <= n} C(n-(m-c-3)l-2, (c+1)l) s_{n-(m-2)l-1, k-l}.
pub fn clusters_general(m: usize, c: usize, order: usize) -> Result<ClusterTable> {
    if m < 4 || c + 3 > m {
        return Err(Error::Domain(format!("general family needs m >= 4 and c <= m-3, got m={m}, c={c}")));
    }
    let mut binom = Binomials::new();
    fill(OverlapFamily::General { m, c }.to_string(), m, order, |n| {
        Ok(l_range(m, m - 2, 2, n)
            .map(|l| Term {
                l,
                coef: binom.get(n as i64 - ((m - c - 3) * l) as i64 - 2, ((c + 1) * l) as i64),
                prev: (n - (m - 2) * l) as i64 - 1,
            })
            .collect())
    })
}

/// s_{n,k} = sum_{m <= (m-2)l+2 <= n} C((m-2)l, l)/((m-3)l+1) s_{n-(m-2)l-1, k-l},
/// the coefficient counting (m-2)-ary trees with l nodes.
pub fn clusters_tree(m: usize, order: usize) -> Result<ClusterTable> {
    if m < 4 {
        return Err(Error::Domain(format!("tree family needs m >= 4, got {m}")));
    }
    let mut binom = Binomials::new();
    fill(OverlapFamily::Tree { m }.to_string(), m, order, |n| {
        l_range(m, m - 2, 2, n)
            .map(|l| {
                let num = binom.get(((m - 2) * l) as i64, l as i64);
                let den = UBig::from((m - 3) * l + 1);
                if &num % &den != UBig::ZERO {
                    return Err(Error::Internal(format!("tree count C({},{l})/{den} is not an integer", (m - 2) * l)));
                }
                Ok(Term { l, coef: num / den, prev: (n - (m - 2) * l) as i64 - 1 })
            })
            .collect()
    })
}

/// s_{n,k} = sum_{5 <= 3l+2 <= n} C(n-l-2, 2l) (2l-1)!! s_{n-3l-1, k-l}.
pub fn clusters_14523(order: usize) -> Result<ClusterTable> {
    let mut binom = Binomials::new();
    fill(OverlapFamily::P14523.to_string(), 5, order, |n| {
        Ok(l_range(5, 3, 2, n)
            .map(|l| Term {
                l,
                coef: binom.get((n - l) as i64 - 2, 2 * l as i64) * double_factorial_odd(l),
                prev: (n - 3 * l) as i64 - 1,
            })
            .collect())
    })
}

/// Which index shift to use in the 15243 recurrence
/// s_{n,k} = sum_{5 <= 2l+3 <= n} C(n-l-2, l+1) s_{n-shift, k-l}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shift15243 {
    /// n - 3l - 2, as the recurrence is usually printed.
    Printed,
    /// n - 2l - 2: a run of l occurrences overlapping by three spans 2l+3
    /// entries, and the remaining cluster starts at its last entry.
    Derived,
}

pub fn clusters_15243(order: usize) -> Result<ClusterTable> {
    clusters_15243_with(order, Shift15243::Derived)
}

pub fn clusters_15243_with(order: usize, shift: Shift15243) -> Result<ClusterTable> {
    let mut binom = Binomials::new();
    let name = match shift {
        Shift15243::Derived => OverlapFamily::P15243.to_string(),
        Shift15243::Printed => "15243(printed shift)".to_string(),
    };
    fill(name, 5, order, |n| {
        Ok(l_range(5, 2, 3, n)
            .map(|l| Term {
                l,
                coef: binom.get((n - l) as i64 - 2, l as i64 + 1),
                prev: match shift {
                    Shift15243::Derived => (n - 2 * l) as i64 - 2,
                    Shift15243::Printed => n as i64 - 3 * l as i64 - 2,
                },
            })
            .collect())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(v: u64) -> UBig {
        UBig::from(v)
    }

    #[test]
    fn onem_examples() {
        let t = clusters_onem(4, 12).unwrap();
        assert_eq!(t.get(1, 0), u(1));
        assert_eq!(t.get(4, 1), u(1));
        assert_eq!(t.get(6, 2), u(1));
        assert_eq!(t.get(7, 2), u(4));
        for n in 2..4 {
            assert!(t.row(n).is_empty());
        }
        assert!(clusters_onem(3, 5).is_err());
    }

    #[test]
    fn general_with_c_zero_is_onem() {
        for m in 4..=7 {
            let a = clusters_general(m, 0, 30).unwrap();
            let b = clusters_onem(m, 30).unwrap();
            for n in 1..=30 {
                assert_eq!(a.row(n), b.row(n));
            }
        }
        assert!(clusters_general(5, 3, 10).is_err());
    }

    #[test]
    fn tree_coefficients() {
        // m = 4 gives Catalan numbers along the diagonal s_{2l+2, l}.
        let t = clusters_tree(4, 20).unwrap();
        let catalan = [1u64, 2, 5, 14, 42, 132];
        for (i, &c) in catalan.iter().enumerate() {
            let l = i + 1;
            assert_eq!(t.get(2 * l + 2, l), u(c));
        }
        let t5 = clusters_tree(5, 10).unwrap();
        assert_eq!(t5.get(5, 1), u(1));
        assert_eq!(t5.get(8, 2), u(3));
    }

    #[test]
    fn representatives() {
        let rep = |f: OverlapFamily| f.representative().unwrap().to_string();
        assert_eq!(rep(OverlapFamily::OneM { m: 4 }), "1423");
        assert_eq!(rep(OverlapFamily::OneM { m: 5 }), "15234");
        assert_eq!(rep(OverlapFamily::General { m: 5, c: 1 }), "15423");
        assert_eq!(rep(OverlapFamily::General { m: 6, c: 2 }), "165423");
        assert_eq!(rep(OverlapFamily::General { m: 6, c: 1 }), "165234");
        assert_eq!(rep(OverlapFamily::Tree { m: 4 }), "1324");
        assert_eq!(rep(OverlapFamily::Tree { m: 6 }), "134526");
        assert!(OverlapFamily::General { m: 5, c: 2 }.representative().is_none());
        let p: Pattern = "15423".parse().unwrap();
        assert_eq!(OverlapFamily::for_pattern(&p), Some(OverlapFamily::General { m: 5, c: 1 }));
        let p: Pattern = "1423".parse().unwrap();
        assert_eq!(OverlapFamily::for_pattern(&p), Some(OverlapFamily::OneM { m: 4 }));
    }

    #[test]
    fn first_rows_of_special_patterns() {
        assert_eq!(clusters_14523(8).unwrap().get(5, 1), u(1));
        let t = clusters_15243(9).unwrap();
        assert_eq!(t.get(5, 1), u(1));
        // Overlap by three: 15243 and a second copy sharing 243.
        assert!(t.get(7, 2) > UBig::ZERO);
    }
}
