use dashu::rational::RBig;
use serde::{Deserialize, Serialize};

use super::TruncatedSeries;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesKind {
    Counts,
    RationalSeries,
}

/// On-disk form shared by every series the crate emits. Numbers are kept as
/// strings ("123", "-7/12") so no precision is lost.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesDocument {
    pub kind: SeriesKind,
    pub provenance: String,
    pub order: usize,
    pub values: Vec<String>,
}

impl SeriesDocument {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

impl TruncatedSeries {
    pub fn to_document(&self, provenance: impl Into<String>) -> SeriesDocument {
        SeriesDocument {
            kind: SeriesKind::RationalSeries,
            provenance: provenance.into(),
            order: self.order(),
            values: self.coeffs().iter().map(|c| c.to_string()).collect(),
        }
    }

    /// Accepts both document kinds; counts are read as integer coefficients.
    pub fn from_document(doc: &SeriesDocument) -> Result<Self> {
        if doc.values.len() != doc.order + 1 {
            return Err(Error::InvalidInput(format!(
                "order {} but {} values",
                doc.order,
                doc.values.len()
            )));
        }
        let coeffs = doc
            .values
            .iter()
            .map(|s| {
                s.parse::<RBig>()
                    .map_err(|_| Error::InvalidInput(format!("bad rational {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TruncatedSeries::new(coeffs, doc.order))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_series_round_trip() {
        let s = TruncatedSeries::from_ints([1, -1, 1], 2).ogf_to_egf();
        let doc = s.to_document("test");
        assert_eq!(doc.values, ["1", "-1", "1/2"]);
        let back = TruncatedSeries::from_document(&SeriesDocument::from_json(&doc.to_json()).unwrap());
        assert_eq!(back.unwrap(), s);
        assert!(doc.to_json().contains("rational-series"));
    }
}
