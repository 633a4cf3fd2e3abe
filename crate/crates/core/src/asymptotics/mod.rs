//! Growth constants and amplitudes of c_n ~ C n! kappa^n from exact
//! counts, by differential approximants with a ratio-method cross-check.

pub mod da;
mod linalg;
mod ratio;
mod reference;
mod table;

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::hp::{self, Real};
use crate::error::{Error, Result};
use crate::series::CountSeries;

pub use da::{approximant_root, default_grid, differential_approximant, ApproximantRoot, ApproximantShape, KAPPA_FLOOR};
pub use linalg::solve;
pub use ratio::{amplitude, neville_diagonal, ratio_extrapolate, RatioSequence};
pub use reference::{reference_values, Reference};
pub use table::{extremes, ResultRow, ResultsTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    DifferentialApproximant,
    RatioExtrapolation,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::DifferentialApproximant => "differential-approximant",
            Method::RatioExtrapolation => "ratio-extrapolation",
        })
    }
}

#[derive(Clone, Debug)]
pub struct AsymptoticEstimate {
    pub kappa: Real,
    pub stable_digits_kappa: u32,
    pub amplitude: Option<Real>,
    pub stable_digits_amplitude: Option<u32>,
    pub method: Method,
    pub detail: String,
}

/// Settings for [`estimate_series`].
#[derive(Clone, Debug)]
pub struct EstimateConfig {
    /// Approximant orders K to combine.
    pub orders: Vec<usize>,
    /// First rung of the precision ladder, in decimal digits.
    pub start_digits: usize,
    /// Last rung of the precision ladder.
    pub max_digits: usize,
    /// Depth of the amplitude table.
    pub amplitude_depth: usize,
}

impl Default for EstimateConfig {
    fn default() -> Self {
        let start = std::env::var("CPAP_PRECISION")
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(50usize);
        EstimateConfig { orders: vec![1, 2], start_digits: start, max_digits: 200.max(start), amplitude_depth: 24 }
    }
}

/// Everything computed for one series.
#[derive(Clone, Debug)]
pub struct SeriesEstimate {
    /// Differential-approximant kappa together with its amplitude.
    pub primary: AsymptoticEstimate,
    /// Ratio-method kappa, when the ratio table settled.
    pub ratio: Option<AsymptoticEstimate>,
    /// Precision of the final ladder rung, in decimal digits.
    pub precision_digits: usize,
    /// Largest index N used.
    pub order: usize,
}

/// Differential approximants of every order in `orders` over the default
/// grid, evaluated in parallel and aggregated together.
pub fn approximant_family(rs: &RatioSequence, orders: &[usize]) -> Result<AsymptoticEstimate> {
    let shapes: Vec<ApproximantShape> = orders
        .iter()
        .flat_map(|&k| default_grid(rs.order() + 1, k))
        .collect();
    if shapes.is_empty() {
        return Err(Error::InsufficientTerms { needed: 20, available: rs.order() + 1 });
    }
    let results: Vec<Result<ApproximantRoot>> = shapes.par_iter().map(|&s| approximant_root(rs, s)).collect();
    let failures = results.iter().filter(|r| r.is_err()).count();
    let roots: Vec<ApproximantRoot> = results.into_iter().filter_map(|r| r.ok()).collect();
    if roots.len() < 2 {
        return Err(Error::NoPhysicalSingularity(format!(
            "{} of {} approximants located a singularity",
            roots.len(),
            shapes.len()
        )));
    }
    let label = orders.iter().map(|k| k.to_string()).collect::<Vec<_>>().join("+");
    da::aggregate(rs.bits(), &roots, &label, failures)
}

/// Estimates kappa and C from avoider counts c_0..c_N. The working precision
/// starts at `start_digits` and doubles until the reported stable digits stop
/// changing. Amplitude digits are capped so that the error inherited from
/// kappa, about N times its relative error, is accounted for.
pub fn estimate_series(counts: &CountSeries, cfg: &EstimateConfig) -> Result<SeriesEstimate> {
    let mut digits = cfg.start_digits.max(20);
    let mut prev: Option<(AsymptoticEstimate, RatioSequence, usize)> = None;
    loop {
        let rs = RatioSequence::from_counts(counts, hp::bits_for_digits(digits))?;
        let est = approximant_family(&rs, &cfg.orders)?;
        let settled = prev
            .as_ref()
            .is_some_and(|(p, _, _)| p.stable_digits_kappa == est.stable_digits_kappa);
        prev = Some((est, rs, digits));
        if settled || digits * 2 > cfg.max_digits {
            break;
        }
        digits *= 2;
    }
    let (mut primary, rs, digits) = prev.expect("at least one rung");
    let n = rs.order();
    let depth = cfg.amplitude_depth.min(n.saturating_sub(5));
    let amp = amplitude(&rs, &primary.kappa, depth)?;
    let inherited = primary.stable_digits_kappa as f64 - (n as f64).log10();
    let amp_digits = amp
        .stable_digits_amplitude
        .map(|d| (d as f64).min(inherited).max(0.0).floor() as u32);
    primary.amplitude = amp.amplitude;
    primary.stable_digits_amplitude = amp_digits;
    primary.detail = format!("{}; {}", primary.detail, amp.detail);
    let ratio = ratio_extrapolate(&rs, 12.min(n.saturating_sub(5))).ok();
    Ok(SeriesEstimate { primary, ratio, precision_digits: digits, order: n })
}
