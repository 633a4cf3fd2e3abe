use dashu::integer::{IBig, UBig};
use dashu::rational::RBig;

use super::{OverlapFamily, SignedClusterSeries};
use crate::combinat::Binomials;
use crate::error::{Error, Result};
use crate::series::{rational_to_series, CountSeries, Poly, TruncatedSeries};

/// Avoider counts from signed cluster sums via C = 1 + S C, i.e.
/// c_n = sum_{j=1}^{n} C(n, j) t_j c_{n-j}.
pub fn gj_invert(t: &SignedClusterSeries, order: usize) -> Result<CountSeries> {
    if t.order() < order {
        return Err(Error::InsufficientTerms { needed: order, available: t.order() });
    }
    if order >= 1 && *t.t(1) != IBig::ONE {
        return Err(Error::InvalidInput("t_1 must be 1".into()));
    }
    let mut binom = Binomials::new();
    let mut c: Vec<IBig> = vec![IBig::ONE];
    for n in 1..=order {
        let mut acc = IBig::ZERO;
        for j in 1..=n {
            let tj = t.t(j);
            if *tj != IBig::ZERO {
                acc += IBig::from(binom.get(n as i64, j as i64)) * tj * &c[n - j];
            }
        }
        c.push(acc);
    }
    let counts = c
        .into_iter()
        .enumerate()
        .map(|(n, v)| {
            UBig::try_from(v).map_err(|_| Error::Internal(format!("negative count at n = {n}")))
        })
        .collect::<Result<Vec<_>>>()?;
    CountSeries::new(counts, "cluster inversion")
}

/// Left minus right side of the functional equation known for `family`,
/// returned as a series whose valuation measures agreement.
pub fn functional_equation_residual(
    t: &SignedClusterSeries,
    family: OverlapFamily,
) -> Result<TruncatedSeries> {
    let n = t.order();
    let big_t = t.ogf();
    match family {
        OverlapFamily::OneM { m } if m >= 4 => {
            // T(x) = 1 + A(x) T(B(x)), A = x/(1+x), B = x/(1+x^{m-2}).
            let a = rational_to_series(&Poly::from_ints([0, 1]), &Poly::from_ints([1, 1]), n)?;
            let b = b_map(m, n)?;
            let rhs = TruncatedSeries::one(n).add(&a.mul(&big_t.compose(&b)?));
            Ok(big_t.sub(&rhs))
        }
        OverlapFamily::P15243 => {
            // x^3 T'(x) = 1 + x - T(x/(1+x^2)).
            let mut lhs = TruncatedSeries::zero(n);
            for k in 3..=n {
                let coef = RBig::from(IBig::from(k - 2) * t.t(k - 2));
                lhs.set_coeff(k, coef);
            }
            let b = b_map(4, n)?;
            let rhs = TruncatedSeries::from_ints([1, 1], n).sub(&big_t.compose(&b)?);
            Ok(lhs.sub(&rhs))
        }
        other => Err(Error::NoKnownEquation(other.to_string())),
    }
}

/// Valuation of the functional-equation residual; `order + 1` means the
/// equation holds to the full truncation order.
pub fn verify_functional_equation(t: &SignedClusterSeries, family: OverlapFamily) -> Result<usize> {
    Ok(functional_equation_residual(t, family)?.valuation())
}

/// B(x) = x / (1 + x^{m-2}) as a truncated series.
pub fn b_map(m: usize, order: usize) -> Result<TruncatedSeries> {
    let mut den = vec![0i64; m - 1];
    den[0] = 1;
    den[m - 2] += 1;
    rational_to_series(&Poly::from_ints([0, 1]), &Poly::from_ints(den), order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::{clusters_15243, clusters_onem};

    #[test]
    fn inversion_examples() {
        let t = clusters_onem(4, 10).unwrap().signed_sum();
        assert_eq!(*t.t(1), IBig::ONE);
        assert_eq!(*t.t(2), IBig::ZERO);
        assert_eq!(*t.t(3), IBig::ZERO);
        assert_eq!(*t.t(4), IBig::from(-1));
        let c = gj_invert(&t, 10).unwrap();
        assert_eq!(c.counts()[4], UBig::from(23u32));
        assert_eq!(c.counts()[5], UBig::from(110u32));

        let trivial = SignedClusterSeries::new(vec![IBig::ONE, IBig::ZERO, IBig::ZERO, IBig::ZERO]);
        let c = gj_invert(&trivial, 4).unwrap();
        assert_eq!(c.counts(), &[1u32, 1, 2, 6, 24].map(UBig::from)[..]);
    }

    #[test]
    fn functional_equations_hold() {
        let t = clusters_onem(4, 30).unwrap().signed_sum();
        assert_eq!(verify_functional_equation(&t, OverlapFamily::OneM { m: 4 }).unwrap(), 31);
        let t = clusters_15243(30).unwrap().signed_sum();
        assert_eq!(verify_functional_equation(&t, OverlapFamily::P15243).unwrap(), 31);
        assert!(matches!(
            verify_functional_equation(&t, OverlapFamily::P14523),
            Err(Error::NoKnownEquation(_))
        ));
    }
}
