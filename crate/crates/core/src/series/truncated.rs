use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use dashu::integer::IBig;
use dashu::rational::RBig;

use crate::error::{Error, Result};

/// A power series a_0 + a_1 x + ... + a_N x^N + O(x^{N+1}) with exact
/// rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<RBig>,
}

impl TruncatedSeries {
    /// Builds a series of the given order, padding with zeros or dropping
    /// coefficients past `order`.
    pub fn new(mut coeffs: Vec<RBig>, order: usize) -> Self {
        coeffs.resize(order + 1, RBig::ZERO);
        TruncatedSeries { coeffs }
    }

    pub fn from_ints<I, T>(values: I, order: usize) -> Self
    where
        I: IntoIterator<Item = T>,
        IBig: From<T>,
    {
        let coeffs = values.into_iter().map(|v| RBig::from(IBig::from(v))).collect();
        Self::new(coeffs, order)
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(RBig::ONE, order)
    }

    pub fn constant(c: RBig, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    /// The series `x`.
    pub fn x(order: usize) -> Self {
        Self::monomial(RBig::ONE, 1, order)
    }

    pub fn monomial(c: RBig, degree: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if degree <= order {
            s.coeffs[degree] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[RBig] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<RBig> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &RBig {
        &self.coeffs[i]
    }

    pub fn set_coeff(&mut self, i: usize, c: RBig) {
        self.coeffs[i] = c;
    }

    /// Index of the first nonzero coefficient; `order + 1` for the zero prefix.
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(self.coeffs.len())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation() > self.order()
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..=order.min(self.order())].to_vec(), order)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let coeffs = (0..=n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect();
        TruncatedSeries { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let coeffs = (0..=n).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect();
        TruncatedSeries { coeffs }
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &RBig) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let va = self.valuation();
        let vb = other.valuation();
        let mut coeffs = vec![RBig::ZERO; n + 1];
        for i in va..=n {
            let a = &self.coeffs[i];
            if a.is_zero() {
                continue;
            }
            for j in vb..=(n - i) {
                let b = &other.coeffs[j];
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        TruncatedSeries { coeffs }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn reciprocal(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::NonUnit);
        }
        let inv0 = RBig::ONE / a0;
        let n = self.order();
        let mut r: Vec<RBig> = Vec::with_capacity(n + 1);
        r.push(inv0.clone());
        for k in 1..=n {
            let mut acc = RBig::ZERO;
            for j in 1..=k {
                let a = &self.coeffs[j];
                if !a.is_zero() {
                    acc += a * &r[k - j];
                }
            }
            r.push(-(acc * &inv0));
        }
        Ok(TruncatedSeries { coeffs: r })
    }

    /// `self / other`.
    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.reciprocal()?))
    }

    /// `self(inner(x))`, evaluated by Horner's rule in truncated arithmetic.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::CompositionDomain);
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        let v = inner.valuation().max(1);
        // Terms of degree > n / v cannot contribute.
        let top = (n / v).min(self.order());
        let mut acc = Self::constant(self.coeffs[top].clone(), n);
        for i in (0..top).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] += &self.coeffs[i];
        }
        Ok(acc)
    }

    /// Formal derivative; the order drops by one (order 0 stays 0).
    pub fn derivative(&self) -> Self {
        let n = self.order();
        if n == 0 {
            return Self::zero(0);
        }
        let coeffs = (1..=n).map(|i| &self.coeffs[i] * RBig::from(i)).collect();
        TruncatedSeries { coeffs }
    }

    /// Multiplies by `x^k`, keeping the order.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.order();
        let mut coeffs = vec![RBig::ZERO; n + 1];
        for i in 0..=n.saturating_sub(k) {
            if i + k <= n {
                coeffs[i + k] = self.coeffs[i].clone();
            }
        }
        TruncatedSeries { coeffs }
    }

    /// Reads `self` as an exponential generating function and returns the
    /// ordinary coefficients `n! a_n`.
    pub fn egf_to_ogf(&self) -> Self {
        let mut fact = IBig::ONE;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if i > 0 {
                    fact *= i;
                }
                c * RBig::from(fact.clone())
            })
            .collect();
        TruncatedSeries { coeffs }
    }

    /// Inverse of [`TruncatedSeries::egf_to_ogf`]: divides a_n by n!.
    pub fn ogf_to_egf(&self) -> Self {
        let mut fact = IBig::ONE;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if i > 0 {
                    fact *= i;
                }
                c / RBig::from(fact.clone())
            })
            .collect();
        TruncatedSeries { coeffs }
    }

    /// Coefficients as integers, if they all are.
    pub fn to_integers(&self) -> Option<Vec<IBig>> {
        self.coeffs
            .iter()
            .map(|c| c.denominator().is_one().then(|| c.numerator().clone()))
            .collect()
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::add(self, rhs)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::sub(self, rhs)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::mul(self, rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> RBig {
        s.parse().unwrap()
    }

    fn exp_series(n: usize) -> TruncatedSeries {
        TruncatedSeries::from_ints(vec![1; n + 1], n).ogf_to_egf()
    }

    #[test]
    fn product_examples() {
        let a = TruncatedSeries::from_ints([1, 1], 4);
        let b = TruncatedSeries::from_ints([1, -1], 4);
        assert_eq!(&a * &b, TruncatedSeries::from_ints([1, 0, -1], 4));
        assert_eq!(&a * &TruncatedSeries::one(4), a);

        let e = exp_series(4);
        let sq = &e * &e;
        let want: Vec<RBig> = ["1", "2", "2", "4/3", "2/3"].iter().map(|s| q(s)).collect();
        assert_eq!(sq.coeffs(), &want[..]);
    }

    #[test]
    fn mixed_orders_truncate_to_minimum() {
        let a = TruncatedSeries::from_ints([1, 2, 3], 5);
        let b = TruncatedSeries::from_ints([1, 1], 2);
        assert_eq!((&a + &b).order(), 2);
        assert_eq!((&a * &b).order(), 2);
    }

    #[test]
    fn reciprocal_examples() {
        let r = TruncatedSeries::from_ints([1, -1], 6).reciprocal().unwrap();
        assert_eq!(r, TruncatedSeries::from_ints(vec![1; 7], 6));
        assert!(matches!(TruncatedSeries::x(3).reciprocal(), Err(Error::NonUnit)));
        let e = exp_series(10);
        assert_eq!(e.reciprocal().unwrap().reciprocal().unwrap(), e);
    }

    #[test]
    fn composition_examples() {
        let n = 9;
        let b = TruncatedSeries::from_ints([0, 1, 0, -1, 0, 1, 0, -1, 0, 1], n);
        assert_eq!(b.compose(&TruncatedSeries::x(n)).unwrap(), b);
        // x(1+x^2)/((1+x^2)^2+x^2) = x - 2x^3 + 5x^5 - 13x^7 + 34x^9 - ...
        let bb = b.compose(&b).unwrap();
        assert_eq!(bb, TruncatedSeries::from_ints([0, 1, 0, -2, 0, 5, 0, -13, 0, 34], n));
        assert!(matches!(b.compose(&TruncatedSeries::one(n)), Err(Error::CompositionDomain)));
        // Valuation law.
        let outer = TruncatedSeries::from_ints([0, 0, 3, 1], n);
        let inner = TruncatedSeries::from_ints([0, 0, 0, 2, 1], n);
        assert_eq!(outer.compose(&inner).unwrap().valuation(), 6);
    }

    #[test]
    fn valuation_and_shift() {
        assert_eq!(TruncatedSeries::zero(7).valuation(), 8);
        let s = TruncatedSeries::from_ints([0, 0, 5], 4);
        assert_eq!(s.valuation(), 2);
        assert_eq!(s.shift(2), TruncatedSeries::from_ints([0, 0, 0, 0, 5], 4));
        assert_eq!(s.shift(3).valuation(), 5);
        assert_eq!(s.derivative(), TruncatedSeries::from_ints([0, 10], 3));
    }
}
