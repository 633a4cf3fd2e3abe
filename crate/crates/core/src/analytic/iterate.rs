//! Iteration of the map pair behind T(x) = 1 + A(x) T(B(x)), the cluster
//! equation of 1 m 2 3 ... (m-1), with A(x) = x/(1+x) and B(x) = x/(1+x^{m-2}).
//!
//! Unrolling the equation gives T = 1 + sum_{n>=0} prod_{j=0}^{n} A(B_j(x)),
//! with B_0(x) = x and B_{j+1} = B(B_j). Each factor has valuation one, so the
//! series converges formally, and numerically wherever the iterates tend to 0.

use dashu::integer::IBig;
use dashu::rational::RBig;

use super::hp::{self, Complex, Real};
use crate::error::{Error, Result};
use crate::series::TruncatedSeries;

fn check_m(m: usize) -> Result<()> {
    if m < 3 {
        return Err(Error::Domain(format!("map chain needs m >= 3, got {m}")));
    }
    Ok(())
}

/// The pair (A, B) for a given pattern length.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MapChain {
    m: usize,
}

impl MapChain {
    pub fn new(m: usize) -> Result<Self> {
        check_m(m)?;
        Ok(MapChain { m })
    }

    pub fn m(self) -> usize {
        self.m
    }

    /// A(y) = y/(1+y) applied to a series of positive valuation.
    pub fn a_series(self, y: &TruncatedSeries) -> Result<TruncatedSeries> {
        let one = TruncatedSeries::one(y.order());
        Ok(y.mul(&one.add(y).reciprocal()?))
    }

    /// B(y) = y/(1+y^{m-2}) applied to a series of positive valuation.
    pub fn b_series(self, y: &TruncatedSeries) -> Result<TruncatedSeries> {
        let one = TruncatedSeries::one(y.order());
        Ok(y.mul(&one.add(&y.pow(self.m - 2)).reciprocal()?))
    }

    pub fn a_rational(self, y: &RBig) -> Result<RBig> {
        let den = RBig::ONE + y;
        if den.is_zero() {
            return Err(Error::Domain("A is singular at -1".into()));
        }
        Ok(y / den)
    }

    pub fn b_rational(self, y: &RBig) -> Result<RBig> {
        let den = RBig::ONE + pow_rational(y, self.m - 2);
        if den.is_zero() {
            return Err(Error::Domain("B is singular at this point".into()));
        }
        Ok(y / den)
    }

    pub fn a_complex(self, y: &Complex) -> Complex {
        y.div(&Complex::one(y.precision()).add(y))
    }

    pub fn b_complex(self, y: &Complex) -> Complex {
        y.div(&Complex::one(y.precision()).add(&y.powi(self.m - 2)))
    }

    pub fn a_real(self, y: &Real) -> Real {
        let one = hp::real_int(1, y.precision());
        y / (one + y)
    }

    pub fn b_real(self, y: &Real) -> Real {
        let one = hp::real_int(1, y.precision());
        y / (one + y.powi(IBig::from(self.m - 2)))
    }

    /// B_j(x) for j = 0..=depth as truncated series.
    pub fn b_iterates(self, depth: usize, order: usize) -> Result<Vec<TruncatedSeries>> {
        let mut out = vec![TruncatedSeries::x(order)];
        for _ in 0..depth {
            let next = self.b_series(out.last().expect("nonempty"))?;
            out.push(next);
        }
        Ok(out)
    }
}

fn pow_rational(y: &RBig, e: usize) -> RBig {
    let mut acc = RBig::ONE;
    for _ in 0..e {
        acc *= y;
    }
    acc
}

/// T(x) to the given order by summing the unrolled products.
pub fn iterate_t(m: usize, order: usize) -> Result<TruncatedSeries> {
    let chain = MapChain::new(m)?;
    let mut t = TruncatedSeries::one(order);
    let mut b = TruncatedSeries::x(order);
    let mut prod = TruncatedSeries::one(order);
    for n in 0..order {
        let a = chain.a_series(&b)?;
        prod = prod.mul(&a);
        t = t.add(&prod);
        if n + 1 < order {
            b = chain.b_series(&b)?;
        }
    }
    Ok(t)
}

/// Evaluate T at a complex point by the product sum. Terms are added until
/// one falls below `tol` in modulus; iterates that fail to shrink within
/// `max_terms` steps are reported as non-convergence.
pub fn eval_t(m: usize, x: &Complex, tol: &Real, max_terms: usize) -> Result<Complex> {
    let chain = MapChain::new(m)?;
    let bits = x.precision();
    let mut sum = Complex::one(bits);
    let mut prod = Complex::one(bits);
    let mut y = x.clone();
    for _ in 0..max_terms {
        let denom = Complex::one(bits).add(&y);
        if denom.is_zero() {
            return Err(Error::Domain("iterate hit the pole of A".into()));
        }
        prod = prod.mul(&chain.a_complex(&y));
        sum = sum.add(&prod);
        if prod.abs() < *tol {
            return Ok(sum);
        }
        y = chain.b_complex(&y);
    }
    Err(Error::NonConvergence { branch: format!("product sum at {x}") })
}

/// The constant v = 1 + sum_{n>=1} prod_{j=1}^{n} A(beta_j), where
/// beta_1 = -1/2 and beta_{j+1} = B(beta_j) for m = 4.
#[derive(Clone, Debug)]
pub struct VConstant {
    pub value: Real,
    /// Requested decimal digits.
    pub digits: usize,
    /// Bound on |value - v|: the first omitted term of the alternating tail
    /// plus an allowance for rounding.
    pub error_bound: Real,
    pub terms: usize,
}

impl VConstant {
    pub fn decimal(&self) -> String {
        hp::decimal(&self.value, self.digits)
    }
}

/// First `k` pairs (beta_j, A(beta_j)) in exact arithmetic.
pub fn v_iterates(k: usize) -> Result<Vec<(RBig, RBig)>> {
    let chain = MapChain::new(4)?;
    let mut beta = RBig::from_parts(IBig::from(-1), 2u8.into());
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        let a = chain.a_rational(&beta)?;
        out.push((beta.clone(), a));
        beta = chain.b_rational(&beta)?;
    }
    Ok(out)
}

/// v to `digits` decimal digits. The terms alternate in sign and decrease in
/// modulus, so the truncation error is below the first omitted term.
pub fn v_constant(digits: usize) -> Result<VConstant> {
    if digits == 0 {
        return Err(Error::Domain("digits must be positive".into()));
    }
    let guard = 8;
    let bits = hp::bits_for_digits(digits + guard);
    let chain = MapChain::new(4)?;
    let tol = hp::real_int(1, bits) / hp::real_int(10, bits).powi(IBig::from(digits + guard));
    let mut beta = hp::real_rational(&RBig::from_parts(IBig::from(-1), 2u8.into()), bits);
    let mut value = hp::real_int(1, bits);
    let mut prod = hp::real_int(1, bits);
    let mut terms = 0;
    let mut prev_abs: Option<Real> = None;
    let max_terms = 100_000;
    loop {
        let a = chain.a_real(&beta);
        let next = &prod * &a;
        let next_abs = hp::abs(&next);
        if next_abs < tol {
            let rounding = hp::real_f64(terms as f64 + 1.0, bits) * &tol;
            return Ok(VConstant {
                value,
                digits,
                error_bound: next_abs + rounding,
                terms,
            });
        }
        if let Some(p) = &prev_abs {
            if next_abs > *p {
                return Err(Error::Internal("tail terms are not decreasing".into()));
            }
        }
        prev_abs = Some(next_abs);
        value += &next;
        prod = next;
        terms += 1;
        if terms > max_terms {
            return Err(Error::NonConvergence { branch: "v".into() });
        }
        beta = chain.b_real(&beta);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::clusters_onem;

    fn q(s: &str) -> RBig {
        s.parse().unwrap()
    }

    #[test]
    fn iterated_t_matches_cluster_sum() {
        for m in [4usize, 5, 6] {
            let t = iterate_t(m, 18).unwrap();
            let want = clusters_onem(m, 18).unwrap().signed_sum().ogf();
            assert_eq!(t, want, "m = {m}");
        }
    }

    #[test]
    fn exact_iterates() {
        let it = v_iterates(3).unwrap();
        assert_eq!(it[0], (q("-1/2"), q("-1")));
        assert_eq!(it[1], (q("-2/5"), q("-2/3")));
        assert_eq!(it[2], (q("-10/29"), q("-10/19")));
    }

    #[test]
    fn v_value() {
        let v = v_constant(12).unwrap();
        let want = hp::real_f64(0.427119583148, 80);
        let diff = hp::to_f64(&hp::abs(&(&v.value - &want)));
        assert!(diff < 5e-13, "{} diff {diff}", v.decimal());
        assert!(hp::to_f64(&v.error_bound) < 1e-17);
    }
}
