//! The normalized sequence b_n = c_n/n!, its ratios, and extrapolation of
//! ratios and amplitudes by Neville tables in 1/n.

use dashu::integer::IBig;
use dashu::rational::RBig;

use super::{AsymptoticEstimate, Method};
use crate::analytic::hp::{self, Real};
use crate::combinat::factorial;
use crate::error::{Error, Result};
use crate::series::CountSeries;

/// b_0..b_N exactly, with the ratios r_n = b_n/b_{n-1} at working precision.
#[derive(Clone, Debug)]
pub struct RatioSequence {
    b: Vec<RBig>,
    bits: usize,
    b_hp: Vec<Real>,
    r: Vec<Real>,
}

impl RatioSequence {
    /// From avoider counts; checks positivity and that b_n never increases.
    pub fn from_counts(counts: &CountSeries, bits: usize) -> Result<Self> {
        let b: Vec<RBig> = counts
            .counts()
            .iter()
            .enumerate()
            .map(|(n, c)| RBig::from_parts(IBig::from(c.clone()), factorial(n)))
            .collect();
        if b.windows(2).any(|w| w[1] > w[0]) {
            return Err(Error::InvalidInput("b_n = c_n/n! increased".into()));
        }
        Self::from_values(b, bits)
    }

    /// From arbitrary positive values.
    pub fn from_values(b: Vec<RBig>, bits: usize) -> Result<Self> {
        if b.len() < 2 {
            return Err(Error::InsufficientTerms { needed: 2, available: b.len() });
        }
        if b.iter().any(|v| v <= &RBig::ZERO) {
            return Err(Error::InvalidInput("sequence must be positive".into()));
        }
        let b_hp: Vec<Real> = b.iter().map(|v| hp::real_rational(v, bits)).collect();
        let mut r = vec![hp::real_int(0, bits)];
        r.extend(b_hp.windows(2).map(|w| &w[1] / &w[0]));
        Ok(RatioSequence { b, bits, b_hp, r })
    }

    pub fn with_precision(&self, bits: usize) -> RatioSequence {
        Self::from_values(self.b.clone(), bits).expect("already validated")
    }

    pub fn truncated(&self, order: usize) -> RatioSequence {
        Self::from_values(self.b[..=order.min(self.order())].to_vec(), self.bits)
            .expect("already validated")
    }

    /// Largest index N.
    pub fn order(&self) -> usize {
        self.b.len() - 1
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn exact(&self) -> &[RBig] {
        &self.b
    }

    pub fn values(&self) -> &[Real] {
        &self.b_hp
    }

    /// r_n for n >= 1; index 0 holds a placeholder zero.
    pub fn ratios(&self) -> &[Real] {
        &self.r
    }
}

/// Diagonal estimates E_0, E_1, ... where E_d extrapolates the last d + 1
/// points (1/n, y_n) to 1/n = 0 by polynomial interpolation.
pub fn neville_diagonal(ns: &[usize], ys: &[Real]) -> Vec<Real> {
    let k = ys.len();
    let bits = ys.first().map_or(64, Real::precision);
    let h: Vec<Real> = ns.iter().map(|&n| hp::real_int(1, bits) / hp::real_int(n as i64, bits)).collect();
    // p[i] holds the interpolant through points i..=i+d at 0, for the current d.
    let mut p: Vec<Real> = ys.to_vec();
    let mut out = vec![p[k - 1].clone()];
    for d in 1..k {
        for i in 0..k - d {
            let num = &h[i + d] * &p[i] - &h[i] * &p[i + 1];
            p[i] = num / (&h[i + d] - &h[i]);
        }
        out.push(p[k - 1 - d].clone());
    }
    out
}

/// Index of the most stable diagonal entry (smallest change from the
/// previous depth) together with the digits on which the two agree.
fn most_stable(est: &[Real], cap: f64) -> Option<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for d in 1..est.len() {
        let digits = hp::agreement_digits(&est[d], &est[d - 1], cap);
        if best.is_none_or(|(_, b)| digits > b) {
            best = Some((d, digits));
        }
    }
    best
}

fn digits_cap(bits: usize) -> f64 {
    (bits as f64 / std::f64::consts::LOG2_10 - 5.0).floor()
}

/// Growth constant from a Neville table in 1/n on the last `depth + 1`
/// ratios. The reported value is the entry that changed least from the
/// previous depth, and its stable digits are that agreement.
pub fn ratio_extrapolate(rs: &RatioSequence, depth: usize) -> Result<AsymptoticEstimate> {
    if rs.order() < depth + 5 {
        return Err(Error::InsufficientTerms { needed: depth + 5, available: rs.order() });
    }
    let n = rs.order();
    let ns: Vec<usize> = (n - depth..=n).collect();
    let ys: Vec<Real> = ns.iter().map(|&k| rs.ratios()[k].clone()).collect();
    let est = neville_diagonal(&ns, &ys);
    let cap = digits_cap(rs.bits());
    let (kappa, digits) = match most_stable(&est, cap) {
        Some((d, digits)) => (est[d].clone(), digits),
        None => (est[0].clone(), cap),
    };
    if digits < 2.0 {
        return Err(Error::UnstableExtrapolation(format!(
            "ratio table does not settle: {:?}",
            est.iter().map(hp::to_f64).collect::<Vec<_>>()
        )));
    }
    Ok(AsymptoticEstimate {
        kappa,
        stable_digits_kappa: digits.floor() as u32,
        amplitude: None,
        stable_digits_amplitude: None,
        method: Method::RatioExtrapolation,
        detail: format!("depth {depth}, N = {n}"),
    })
}

/// Amplitude C in b_n ~ C kappa^n from a Neville table on a_n = b_n/kappa^n.
/// The table is cut at the first depth where successive diagonal entries
/// stop getting closer.
pub fn amplitude(rs: &RatioSequence, kappa: &Real, depth: usize) -> Result<AsymptoticEstimate> {
    let n = rs.order();
    if n < depth + 5 {
        return Err(Error::InsufficientTerms { needed: depth + 5, available: n });
    }
    let bits = rs.bits();
    let kappa = kappa.clone().with_precision(bits).value();
    let ns: Vec<usize> = (n - depth..=n).collect();
    let mut pow = kappa.powi(IBig::from(n - depth));
    let mut ys = Vec::with_capacity(ns.len());
    for &k in &ns {
        ys.push(&rs.values()[k] / &pow);
        pow = &pow * &kappa;
    }
    let est = neville_diagonal(&ns, &ys);
    let cap = digits_cap(bits);
    let mut chosen = (0usize, 0.0f64);
    let mut prev_gap = f64::NEG_INFINITY;
    for d in 1..est.len() {
        let digits = hp::agreement_digits(&est[d], &est[d - 1], cap);
        if digits < prev_gap {
            break;
        }
        prev_gap = digits;
        chosen = (d, digits);
    }
    let (d, digits) = chosen;
    Ok(AsymptoticEstimate {
        kappa: kappa.clone(),
        stable_digits_kappa: 0,
        amplitude: Some(est[d].clone()),
        stable_digits_amplitude: Some(digits.max(0.0).floor() as u32),
        method: Method::RatioExtrapolation,
        detail: format!("amplitude depth {d} of {depth}, N = {n}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: u64) -> RBig {
        RBig::from_parts(IBig::from(n), d.into())
    }

    fn geometric(scale: i64, n: usize, correction: bool) -> RatioSequence {
        let b: Vec<RBig> = (0..=n)
            .map(|k| {
                let base = q(scale, 1) * q(1, 1u64 << k);
                if correction && k > 0 {
                    base * (RBig::ONE + q(1, k as u64))
                } else {
                    base
                }
            })
            .collect();
        RatioSequence::from_values(b, 256).unwrap()
    }

    #[test]
    fn constant_ratios() {
        let rs = geometric(1, 30, false);
        let est = ratio_extrapolate(&rs, 1).unwrap();
        assert_eq!(hp::to_f64(&est.kappa), 0.5);
        let amp = amplitude(&geometric(3, 30, false), &est.kappa, 1).unwrap();
        assert_eq!(hp::to_f64(amp.amplitude.as_ref().unwrap()), 3.0);
    }

    #[test]
    fn power_law_correction_is_removed() {
        let rs = geometric(1, 40, true);
        let shallow = ratio_extrapolate(&rs, 1).unwrap();
        let deep = ratio_extrapolate(&rs, 8).unwrap();
        let half = hp::real_f64(0.5, 256);
        let e1 = hp::agreement_digits(&shallow.kappa, &half, 60.0);
        let e8 = hp::agreement_digits(&deep.kappa, &half, 60.0);
        assert!(e8 > e1 + 4.0, "{e1} {e8}");
    }

    #[test]
    fn rejects_increasing_counts() {
        let bad = RatioSequence::from_values(vec![RBig::ONE, RBig::ZERO], 64);
        assert!(bad.is_err());
    }
}
