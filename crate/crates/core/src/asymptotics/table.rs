//! Per-class results as CSV or JSON, and the extreme classes.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::SeriesEstimate;
use crate::analytic::hp;
use crate::perm::ClassId;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub class: String,
    pub order: usize,
    pub kappa: String,
    pub kappa_stable_digits: u32,
    pub amplitude: Option<String>,
    pub amplitude_stable_digits: Option<u32>,
    pub method: String,
    pub ratio_kappa: Option<String>,
    pub ratio_stable_digits: Option<u32>,
    pub precision_digits: usize,
    pub detail: String,
}

impl ResultRow {
    /// Decimal strings carry a few digits past the stable ones.
    pub fn new(class: impl Into<String>, est: &SeriesEstimate) -> ResultRow {
        let p = &est.primary;
        let shown = |d: u32| (d as usize + 3).clamp(12, 40);
        ResultRow {
            class: class.into(),
            order: est.order,
            kappa: hp::decimal(&p.kappa, shown(p.stable_digits_kappa)),
            kappa_stable_digits: p.stable_digits_kappa,
            amplitude: p
                .amplitude
                .as_ref()
                .map(|a| hp::decimal(a, shown(p.stable_digits_amplitude.unwrap_or(0)))),
            amplitude_stable_digits: p.stable_digits_amplitude,
            method: p.method.to_string(),
            ratio_kappa: est.ratio.as_ref().map(|r| hp::decimal(&r.kappa, shown(r.stable_digits_kappa))),
            ratio_stable_digits: est.ratio.as_ref().map(|r| r.stable_digits_kappa),
            precision_digits: est.precision_digits,
            detail: p.detail.clone(),
        }
    }

    pub fn kappa_f64(&self) -> f64 {
        self.kappa.parse().unwrap_or(f64::NAN)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ResultsTable {
    pub rows: Vec<ResultRow>,
}

impl ResultsTable {
    pub fn push(&mut self, row: ResultRow) {
        self.rows.push(row);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "class,order,kappa,kappa_stable_digits,amplitude,amplitude_stable_digits,method,ratio_kappa,ratio_stable_digits,precision_digits\n",
        );
        let opt = |v: &Option<String>| v.clone().unwrap_or_default();
        let optn = |v: Option<u32>| v.map(|d| d.to_string()).unwrap_or_default();
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{}",
                r.class,
                r.order,
                r.kappa,
                r.kappa_stable_digits,
                opt(&r.amplitude),
                optn(r.amplitude_stable_digits),
                r.method,
                opt(&r.ratio_kappa),
                optn(r.ratio_stable_digits),
                r.precision_digits
            );
        }
        out
    }
}

/// (argmax, argmin) of estimated kappa over the given classes. Ties are
/// reported as `None` since the ordering is then undetermined.
pub fn extremes(estimates: &[(ClassId, f64)]) -> (Option<ClassId>, Option<ClassId>) {
    let pick = |better: fn(f64, f64) -> bool| {
        let mut best: Option<(ClassId, f64)> = None;
        let mut tied = false;
        for &(c, k) in estimates {
            match best {
                None => best = Some((c, k)),
                Some((_, b)) if better(k, b) => {
                    best = Some((c, k));
                    tied = false;
                }
                Some((_, b)) if k == b => tied = true,
                _ => {}
            }
        }
        if tied {
            None
        } else {
            best.map(|(c, _)| c)
        }
    };
    (pick(|a, b| a > b), pick(|a, b| a < b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extremes_detect_ties() {
        let c = ClassId::all_of_length(4);
        let (hi, lo) = extremes(&[(c[0], 0.96), (c[1], 0.95), (c[2], 0.955)]);
        assert_eq!(hi, Some(c[0]));
        assert_eq!(lo, Some(c[1]));
        let (hi, _) = extremes(&[(c[0], 0.96), (c[1], 0.96)]);
        assert_eq!(hi, None);
    }
}
