use dashu::integer::{IBig, UBig};
use dashu::rational::RBig;

use super::json::{SeriesDocument, SeriesKind};
use super::TruncatedSeries;
use crate::error::{Error, Result};

/// Avoider counts c_0..c_N of one pattern or class, tagged with where they
/// came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountSeries {
    counts: Vec<UBig>,
    provenance: String,
}

impl CountSeries {
    /// Validates c_0 = 1, c_1 = 1 and c_n <= n!.
    pub fn new(counts: Vec<UBig>, provenance: impl Into<String>) -> Result<Self> {
        let mut fact = UBig::ONE;
        for (n, c) in counts.iter().enumerate() {
            if n > 0 {
                fact *= n;
            }
            if n <= 1 && *c != UBig::ONE {
                return Err(Error::InvalidInput(format!("c_{n} must be 1, got {c}")));
            }
            if *c > fact {
                return Err(Error::InvalidInput(format!("c_{n} = {c} exceeds {n}!")));
            }
        }
        if counts.is_empty() {
            return Err(Error::InvalidInput("count series needs at least c_0".into()));
        }
        Ok(CountSeries { counts, provenance: provenance.into() })
    }

    /// Number of stored terms, N + 1.
    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Truncation order N.
    pub fn order(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn counts(&self) -> &[UBig] {
        &self.counts
    }

    pub fn get(&self, n: usize) -> Option<&UBig> {
        self.counts.get(n)
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn with_provenance(mut self, provenance: impl Into<String>) -> Self {
        self.provenance = provenance.into();
        self
    }

    /// The first `order + 1` terms.
    pub fn prefix(&self, order: usize) -> CountSeries {
        CountSeries {
            counts: self.counts[..=order.min(self.order())].to_vec(),
            provenance: self.provenance.clone(),
        }
    }

    /// The e.g.f. coefficients b_n = c_n / n!.
    pub fn egf(&self) -> TruncatedSeries {
        let coeffs = self.counts.iter().map(|c| RBig::from(IBig::from(c.clone()))).collect();
        TruncatedSeries::new(coeffs, self.order()).ogf_to_egf()
    }

    pub fn to_document(&self) -> SeriesDocument {
        SeriesDocument {
            kind: SeriesKind::Counts,
            provenance: self.provenance.clone(),
            order: self.order(),
            values: self.counts.iter().map(|c| c.to_string()).collect(),
        }
    }

    pub fn from_document(doc: &SeriesDocument) -> Result<Self> {
        if doc.kind != SeriesKind::Counts {
            return Err(Error::InvalidInput("expected a counts document".into()));
        }
        if doc.values.len() != doc.order + 1 {
            return Err(Error::InvalidInput(format!(
                "order {} but {} values",
                doc.order,
                doc.values.len()
            )));
        }
        let counts = doc
            .values
            .iter()
            .map(|s| {
                s.parse::<UBig>()
                    .map_err(|_| Error::InvalidInput(format!("bad count {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        CountSeries::new(counts, doc.provenance.clone())
    }

    pub fn to_json(&self) -> String {
        self.to_document().to_json()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_document(&SeriesDocument::from_json(text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ubigs(v: &[u64]) -> Vec<UBig> {
        v.iter().map(|&x| UBig::from(x)).collect()
    }

    #[test]
    fn validates_invariants() {
        assert!(CountSeries::new(ubigs(&[1, 1, 2, 6, 23]), "1423").is_ok());
        assert!(CountSeries::new(ubigs(&[1, 1, 3]), "x").is_err());
        assert!(CountSeries::new(ubigs(&[2]), "x").is_err());
        assert!(CountSeries::new(vec![], "x").is_err());
    }

    #[test]
    fn egf_and_json_round_trip() {
        let c = CountSeries::new(ubigs(&[1, 1, 2, 6, 23]), "1423").unwrap();
        assert_eq!(c.egf().coeff(4), &"23/24".parse::<RBig>().unwrap());
        let text = c.to_json();
        assert!(text.contains("\"kind\": \"counts\""));
        assert_eq!(CountSeries::from_json(&text).unwrap(), c);
        assert_eq!(c.prefix(2).counts(), &ubigs(&[1, 1, 2])[..]);
    }
}
