//! Differential approximants for f(x) = sum b_n x^n.
//!
//! An approximant of order K with degrees (L, M) is
//! sum_{i=0}^{K} Q_i(x) (theta^i f)(x) + P(x) = 0, theta = x d/dx,
//! with deg Q_i = L, deg P = M and Q_K(0) = 1. Since (theta^i f)_n = n^i b_n,
//! matching the coefficients of x^0..x^{U-1} gives a square linear system in
//! the U free coefficients. Singularities of f sit at zeros of Q_K.

use super::linalg::solve;
use super::{AsymptoticEstimate, Method, RatioSequence};
use crate::analytic::hp::{self, Complex, Real};
use crate::analytic::poly_roots;
use crate::error::{Error, Result};

/// Lower bound on the growth constant for patterns of length >= 4.
pub const KAPPA_FLOOR: f64 = 0.7839;
/// Equations beyond the fitted ones that every approximant must also satisfy.
pub const DA_CHECKS: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ApproximantShape {
    pub order: usize,
    pub q_degree: usize,
    pub p_degree: usize,
}

impl ApproximantShape {
    pub fn unknowns(self) -> usize {
        (self.order + 1) * (self.q_degree + 1) + self.p_degree
    }
}

/// One approximant's estimate of the dominant singularity.
#[derive(Clone, Debug)]
pub struct ApproximantRoot {
    pub shape: ApproximantShape,
    pub root: Real,
    /// Largest relative residual over the check equations.
    pub check_residual: f64,
}

fn powi(n: usize, i: usize, bits: usize) -> Real {
    hp::real_int((n as i64).pow(i as u32), bits)
}

/// Fit one approximant and return the coefficients of Q_K, lowest first.
fn fit(rs: &RatioSequence, shape: ApproximantShape) -> Result<(Vec<Real>, f64)> {
    let ApproximantShape { order: k, q_degree: l, p_degree: m } = shape;
    let u = shape.unknowns();
    let n_avail = rs.order() + 1;
    if n_avail < u + DA_CHECKS {
        return Err(Error::InsufficientTerms { needed: u + DA_CHECKS, available: n_avail });
    }
    let bits = rs.bits();
    let b = rs.values();
    let zero = hp::real_int(0, bits);
    // Column order: q_{i,j} for all (i, j) except (K, 0), then p_0..p_M.
    let mut cols: Vec<(usize, usize)> = Vec::with_capacity(u);
    for i in 0..=k {
        for j in 0..=l {
            if !(i == k && j == 0) {
                cols.push((i, j));
            }
        }
    }
    let row = |n: usize| -> (Vec<Real>, Real) {
        let mut r: Vec<Real> = cols
            .iter()
            .map(|&(i, j)| if n >= j { powi(n - j, i, bits) * &b[n - j] } else { zero.clone() })
            .collect();
        for p in 0..=m {
            r.push(if n == p { hp::real_int(1, bits) } else { zero.clone() });
        }
        (r, -(powi(n, k, bits) * &b[n]))
    };
    let mut a = Vec::with_capacity(u);
    let mut rhs = Vec::with_capacity(u);
    for n in 0..u {
        let (r, v) = row(n);
        a.push(r);
        rhs.push(v);
    }
    let x = solve(a, rhs).ok_or_else(|| Error::Internal(format!("singular system for {shape:?}")))?;
    let mut worst = 0.0f64;
    for n in u..u + DA_CHECKS {
        let (r, v) = row(n);
        let mut acc = -v.clone();
        for (c, xi) in r.iter().zip(&x) {
            acc -= c * xi;
        }
        let rel = hp::to_f64(&hp::abs(&acc)) / hp::to_f64(&hp::abs(&v)).max(f64::MIN_POSITIVE);
        worst = worst.max(rel);
    }
    let mut qk = vec![hp::real_int(1, bits)];
    qk.extend(cols.iter().zip(&x).filter(|((i, _), _)| *i == k).map(|(_, v)| v.clone()));
    Ok((qk, worst))
}

fn eval_real(coeffs: &[Real], x: &Real) -> (Real, Real) {
    let bits = x.precision();
    let mut p = hp::real_int(0, bits);
    let mut dp = hp::real_int(0, bits);
    for c in coeffs.iter().rev() {
        dp = &dp * x + &p;
        p = &p * x + c;
    }
    (p, dp)
}

/// The zero of Q_K on the positive real axis nearest the origin, inside the
/// window (1, 1/KAPPA_FLOOR): roots are located at reduced precision, the
/// candidate is the smallest-modulus one with |arg| < 1e-6, and it is then
/// polished by Newton's method at full precision.
fn physical_root(qk: &[Real], label: &str) -> Result<Real> {
    let bits = qk[0].precision();
    let low = 192.min(bits);
    let coeffs: Vec<Complex> = qk
        .iter()
        .map(|c| Complex::real(c.clone().with_precision(low).value()))
        .collect();
    let roots = poly_roots(&coeffs, label)?;
    let hi = 1.0 / KAPPA_FLOOR;
    let mut best: Option<f64> = None;
    for z in &roots {
        let (re, im) = z.to_f64();
        if re > 0.0 && (im / re).abs() < 1e-6 && re > 1.0 && re < hi && best.is_none_or(|b| re < b) {
            best = Some(re);
        }
    }
    let Some(start) = best else {
        return Err(Error::NoPhysicalSingularity(label.to_string()));
    };
    let mut x = hp::real_f64(start, bits);
    for _ in 0..200 {
        let (p, dp) = eval_real(qk, &x);
        if hp::is_zero(&dp) {
            break;
        }
        let step = p / dp;
        x -= &step;
        if hp::is_zero(&step) || hp::log10(&hp::abs(&step)) < -(bits as f64) * 0.3 + 2.0 {
            break;
        }
    }
    Ok(x)
}

/// Fit one approximant and locate its physical singularity.
pub fn approximant_root(rs: &RatioSequence, shape: ApproximantShape) -> Result<ApproximantRoot> {
    let (qk, check_residual) = fit(rs, shape)?;
    let root = physical_root(&qk, &format!("{shape:?}"))?;
    Ok(ApproximantRoot { shape, root, check_residual })
}

/// Shapes with Q degrees spread around the largest that the series supports
/// (keeping DA_CHECKS equations spare), with P degree close to the Q degree.
pub fn default_grid(n_terms: usize, order: usize) -> Vec<ApproximantShape> {
    let mut out = Vec::new();
    let budget = n_terms.saturating_sub(DA_CHECKS);
    for slack in 0..4 {
        for dm in [0i64, -2, 2] {
            // (order+1)(l+1) + m <= budget with m = l + dm.
            let l_max = (budget as i64 - dm - (order as i64 + 1)) / (order as i64 + 2);
            let l = l_max - slack * 2;
            let m = l + dm;
            if l < 2 || m < 0 {
                continue;
            }
            let shape = ApproximantShape { order, q_degree: l as usize, p_degree: m as usize };
            if shape.unknowns() <= budget && !out.contains(&shape) {
                out.push(shape);
            }
        }
    }
    out
}

fn median(sorted: &[Real]) -> Real {
    sorted[sorted.len() / 2].clone()
}

/// Growth constant from a grid of approximants of one order: kappa = 1/root
/// for each, aggregated by the median. Stable digits come from the spread of
/// the central half of the estimates, and are never more than the agreement
/// between the two approximants with the most unknowns.
pub fn differential_approximant(
    rs: &RatioSequence,
    order: usize,
    shapes: &[ApproximantShape],
) -> Result<AsymptoticEstimate> {
    let mut roots = Vec::new();
    let mut failures = Vec::new();
    for &shape in shapes {
        match approximant_root(rs, shape) {
            Ok(r) => roots.push(r),
            Err(e) => failures.push(format!("{shape:?}: {e}")),
        }
    }
    if roots.is_empty() {
        return Err(Error::NoPhysicalSingularity(format!(
            "no approximant of order {order} produced a root: {}",
            failures.join("; ")
        )));
    }
    aggregate(rs.bits(), &roots, &order.to_string(), failures.len())
}

pub(crate) fn aggregate(
    bits: usize,
    roots: &[ApproximantRoot],
    order: &str,
    failures: usize,
) -> Result<AsymptoticEstimate> {
    let one = hp::real_int(1, bits);
    let mut kappas: Vec<Real> = roots.iter().map(|r| &one / &r.root).collect();
    kappas.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let med = median(&kappas);
    let cap = (bits as f64 / std::f64::consts::LOG2_10 - 5.0).floor();
    let q = kappas.len() / 4;
    let central = &kappas[q..kappas.len() - q];
    let mut spread_digits = cap;
    for k in central {
        spread_digits = spread_digits.min(hp::agreement_digits(k, &med, cap));
    }
    let mut by_size: Vec<&ApproximantRoot> = roots.iter().collect();
    by_size.sort_by_key(|r| std::cmp::Reverse(r.shape.unknowns()));
    let deepest = if by_size.len() >= 2 {
        let a = &one / &by_size[0].root;
        let b = &one / &by_size[1].root;
        hp::agreement_digits(&a, &b, cap)
    } else {
        0.0
    };
    let digits = spread_digits.min(deepest).max(0.0);
    if hp::to_f64(&med) <= KAPPA_FLOOR || hp::to_f64(&med) >= 1.0 {
        return Err(Error::NoPhysicalSingularity(format!("median estimate {} out of range", hp::to_f64(&med))));
    }
    Ok(AsymptoticEstimate {
        kappa: med,
        stable_digits_kappa: digits.floor() as u32,
        amplitude: None,
        stable_digits_amplitude: None,
        method: Method::DifferentialApproximant,
        detail: format!(
            "order {order}, {} approximants ({failures} failed), spread {:.1} digits, deepest pair {:.1} digits",
            roots.len(),
            spread_digits,
            deepest
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use dashu::integer::{IBig, UBig};
    use dashu::rational::RBig;

    #[test]
    fn simple_pole() {
        // 1/(1 - x/(1.2)) has b_n = (5/6)^n; singularity at 6/5.
        let b: Vec<RBig> = (0..40u32)
            .map(|n| RBig::from_parts(IBig::from(5).pow(n as usize), UBig::from(6u8).pow(n as usize)))
            .collect();
        let rs = RatioSequence::from_values(b, 256).unwrap();
        let shape = ApproximantShape { order: 1, q_degree: 3, p_degree: 3 };
        let r = approximant_root(&rs, shape).unwrap();
        let want = hp::real_int(6, 256) / hp::real_int(5, 256);
        assert!(hp::agreement_digits(&r.root, &want, 80.0) > 60.0);
    }

    #[test]
    fn grid_respects_budget() {
        for order in [1, 2] {
            let g = default_grid(81, order);
            assert!(!g.is_empty());
            assert!(g.iter().all(|s| s.unknowns() + DA_CHECKS <= 81));
        }
    }
}
