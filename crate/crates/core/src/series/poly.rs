use std::fmt;

use dashu::integer::IBig;
use dashu::rational::RBig;

use super::TruncatedSeries;
use crate::error::{Error, Result};

/// A univariate polynomial with exact rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<RBig>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<RBig>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints<I, T>(values: I) -> Self
    where
        I: IntoIterator<Item = T>,
        IBig: From<T>,
    {
        Self::new(values.into_iter().map(|v| RBig::from(IBig::from(v))).collect())
    }

    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[RBig] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> RBig {
        self.coeffs.get(i).cloned().unwrap_or(RBig::ZERO)
    }

    pub fn eval(&self, x: &RBig) -> RBig {
        let mut acc = RBig::ZERO;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn to_series(&self, order: usize) -> TruncatedSeries {
        TruncatedSeries::new(self.coeffs.clone(), order)
    }

    /// Coefficients as integers, if they all are.
    pub fn to_integers(&self) -> Option<Vec<IBig>> {
        self.coeffs
            .iter()
            .map(|c| c.denominator().is_one().then(|| c.numerator().clone()))
            .collect()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
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
                1 => write!(f, "{c}*x")?,
                _ => write!(f, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Taylor prefix of `num / den` to order `n`.
pub fn rational_to_series(num: &Poly, den: &Poly, n: usize) -> Result<TruncatedSeries> {
    if den.coeff(0).is_zero() {
        return Err(Error::PoleAtOrigin);
    }
    Ok(num.to_series(n).mul(&den.to_series(n).reciprocal()?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_expansions() {
        let a = rational_to_series(&Poly::from_ints([0, 1]), &Poly::from_ints([1, 1]), 6).unwrap();
        assert_eq!(a, TruncatedSeries::from_ints([0, 1, -1, 1, -1, 1, -1], 6));
        let b = rational_to_series(&Poly::from_ints([0, 1]), &Poly::from_ints([1, 0, 1]), 6).unwrap();
        assert_eq!(b, TruncatedSeries::from_ints([0, 1, 0, -1, 0, 1, 0], 6));
        let ab = a.compose(&b).unwrap();
        assert_eq!(ab.coeffs()[..3], TruncatedSeries::from_ints([0, 1, -1], 2).coeffs()[..]);
        assert!(matches!(
            rational_to_series(&Poly::from_ints([1]), &Poly::from_ints([0, 1]), 3),
            Err(Error::PoleAtOrigin)
        ));
    }

    #[test]
    fn normalizes_and_evaluates() {
        let p = Poly::from_ints([1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(p.eval(&RBig::from(3)), RBig::from(7));
        assert_eq!(Poly::from_ints([0, 0]).degree(), None);
    }
}
