use dashu::integer::{IBig, UBig};
use dashu::rational::RBig;

use crate::error::{Error, Result};
use crate::series::TruncatedSeries;

/// Cluster counts s_{n,k} for 1 <= n <= N. Rows are stored without trailing
/// zeros, so `row(n).len() - 1` is the largest k with s_{n,k} > 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterTable {
    descriptor: String,
    /// rows[n] for n in 0..=N; rows[0] is empty.
    rows: Vec<Vec<UBig>>,
}

impl ClusterTable {
    pub fn new(descriptor: impl Into<String>, order: usize) -> Self {
        ClusterTable { descriptor: descriptor.into(), rows: vec![Vec::new(); order + 1] }
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    pub fn order(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn row(&self, n: usize) -> &[UBig] {
        &self.rows[n]
    }

    pub fn get(&self, n: usize, k: usize) -> UBig {
        self.rows.get(n).and_then(|r| r.get(k)).cloned().unwrap_or(UBig::ZERO)
    }

    pub fn set_row(&mut self, n: usize, mut row: Vec<UBig>) {
        while row.last().is_some_and(|v| *v == UBig::ZERO) {
            row.pop();
        }
        self.rows[n] = row;
    }

    /// Entries `(n, k, s)` with s > 0, by increasing n then k.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &UBig)> {
        self.rows.iter().enumerate().flat_map(|(n, row)| {
            row.iter().enumerate().filter(|(_, v)| **v != UBig::ZERO).map(move |(k, v)| (n, k, v))
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,k,s\n");
        for (n, k, v) in self.entries() {
            out.push_str(&format!("{n},{k},{v}\n"));
        }
        out
    }

    /// t_n = sum_k (-1)^k s_{n,k}.
    pub fn signed_sum(&self) -> SignedClusterSeries {
        let t = (1..=self.order())
            .map(|n| {
                self.rows[n].iter().enumerate().fold(IBig::ZERO, |acc, (k, v)| {
                    let v = IBig::from(v.clone());
                    if k % 2 == 0 {
                        acc + v
                    } else {
                        acc - v
                    }
                })
            })
            .collect();
        SignedClusterSeries { t }
    }
}

/// Signed cluster sums t_1..t_N, the coefficients of T(x) = 1 + sum t_n x^n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedClusterSeries {
    t: Vec<IBig>,
}

impl SignedClusterSeries {
    pub fn new(t: Vec<IBig>) -> Self {
        SignedClusterSeries { t }
    }

    pub fn order(&self) -> usize {
        self.t.len()
    }

    /// t_n for 1 <= n <= N.
    pub fn t(&self, n: usize) -> &IBig {
        &self.t[n - 1]
    }

    pub fn values(&self) -> &[IBig] {
        &self.t
    }

    pub fn truncate(&self, order: usize) -> SignedClusterSeries {
        SignedClusterSeries { t: self.t[..order.min(self.t.len())].to_vec() }
    }

    /// T(x) = 1 + t_1 x + ... + t_N x^N.
    pub fn ogf(&self) -> TruncatedSeries {
        let mut coeffs = vec![RBig::ONE];
        coeffs.extend(self.t.iter().map(|v| RBig::from(v.clone())));
        TruncatedSeries::new(coeffs, self.t.len())
    }

    /// Reads t_n off a series with constant term 1.
    pub fn from_ogf(series: &TruncatedSeries) -> Result<Self> {
        if *series.coeff(0) != RBig::ONE {
            return Err(Error::InvalidInput("T(0) must be 1".into()));
        }
        let ints = series
            .to_integers()
            .ok_or_else(|| Error::InvalidInput("signed cluster sums are integers".into()))?;
        Ok(SignedClusterSeries { t: ints[1..].to_vec() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signed_sums_and_csv() {
        let mut tab = ClusterTable::new("test", 4);
        tab.set_row(1, vec![UBig::ONE]);
        tab.set_row(4, vec![UBig::ZERO, UBig::ONE, UBig::ZERO]);
        assert_eq!(tab.row(4).len(), 2);
        let t = tab.signed_sum();
        assert_eq!(t.values(), &[1, 0, 0, -1].map(IBig::from)[..]);
        assert_eq!(tab.to_csv(), "n,k,s\n1,0,1\n4,1,1\n");
        let back = SignedClusterSeries::from_ogf(&t.ogf()).unwrap();
        assert_eq!(back, t);
    }
}
