//! Polynomial relations P(x, T) = 0 for cluster generating functions of the
//! patterns 1 3 4 ... (m-1) 2 m, and the hypergeometric expression for them.

use std::fmt;

use dashu::integer::IBig;
use dashu::rational::RBig;

use crate::error::{Error, Result};
use crate::series::{Poly, TruncatedSeries};

/// P(x, T) = sum_k p_k(x) T^k with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicWitness {
    coeffs: Vec<Poly>,
}

impl AlgebraicWitness {
    pub fn new(coeffs: Vec<Poly>) -> Result<Self> {
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(Poly::is_zero) {
            coeffs.pop();
        }
        if coeffs.len() < 3 {
            return Err(Error::InvalidInput("witness must have degree at least 2 in T".into()));
        }
        if coeffs.iter().any(|p| p.to_integers().is_none()) {
            return Err(Error::InvalidInput("witness coefficients must be integers".into()));
        }
        Ok(AlgebraicWitness { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    /// A copy with `delta` added to the coefficient of x^i T^k.
    pub fn perturbed(&self, k: usize, i: usize, delta: i64) -> AlgebraicWitness {
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() <= k {
            coeffs.resize(k + 1, Poly::zero());
        }
        let mut c = coeffs[k].coeffs().to_vec();
        if c.len() <= i {
            c.resize(i + 1, RBig::ZERO);
        }
        c[i] += RBig::from(IBig::from(delta));
        coeffs[k] = Poly::new(c);
        AlgebraicWitness { coeffs }
    }

    /// P(x, T(x)) truncated to the order of `t`.
    pub fn evaluate(&self, t: &TruncatedSeries) -> TruncatedSeries {
        let n = t.order();
        let mut acc = TruncatedSeries::zero(n);
        for p in self.coeffs.iter().rev() {
            acc = acc.mul(t).add(&p.to_series(n));
        }
        acc
    }
}

impl fmt::Display for AlgebraicWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, p) in self.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({p})")?,
                1 => write!(f, "({p}) T")?,
                _ => write!(f, "({p}) T^{k}")?,
            }
        }
        Ok(())
    }
}

/// Valuation of P(x, T(x)); `order + 1` means it vanishes to the full
/// truncation order.
pub fn algebraic_verify(witness: &AlgebraicWitness, t: &TruncatedSeries) -> usize {
    witness.evaluate(t).valuation()
}

fn ints(v: &[i64]) -> Poly {
    Poly::from_ints(v.iter().copied())
}

/// The published relation of degree m - 2 satisfied by the cluster
/// generating function of 1 3 4 ... (m-1) 2 m, for 4 <= m <= 7.
pub fn tree_witness(m: usize) -> Result<AlgebraicWitness> {
    let coeffs = match m {
        4 => vec![ints(&[1, 2, 4, 4]), ints(&[-2, -3, -6, -4]), ints(&[1, 1, 2, 1])],
        5 => vec![
            ints(&[1, 2, 6, 12, 8]),
            ints(&[-3, -5, -15, -24, -12]),
            ints(&[3, 4, 12, 15, 6]),
            ints(&[-1, -1, -3, -3, -1]),
        ],
        6 => vec![
            ints(&[1, 2, 8, 24, 32, 16]),
            ints(&[-4, -7, -28, -72, -80, -32]),
            ints(&[6, 9, 36, 78, 72, 24]),
            ints(&[-4, -5, -20, -36, -28, -8]),
            ints(&[1, 1, 4, 6, 4, 1]),
        ],
        7 => vec![
            ints(&[1, 2, 10, 40, 80, 80, 32]),
            ints(&[-5, -9, -45, -160, -280, -240, -80]),
            ints(&[10, 16, 80, 250, 380, 280, 80]),
            ints(&[-10, -14, -70, -190, -250, -160, -40]),
            ints(&[5, 6, 30, 70, 80, 45, 10]),
            ints(&[-1, -1, -5, -10, -10, -5, -1]),
        ],
        _ => return Err(Error::NoKnownEquation(format!("no relation recorded for m = {m}"))),
    };
    AlgebraicWitness::new(coeffs)
}

fn q(n: i64, d: u64) -> RBig {
    RBig::from_parts(IBig::from(n), d.into())
}

/// G(x) = x pFq(1/(m-2), ..., (m-3)/(m-2); 2/(m-3), ..., (m-4)/(m-3), (m-2)/(m-3);
/// -(m-2)^{m-2}/(m-3)^{m-3} x^{m-2}), expanded to the given order from the
/// ratio of consecutive terms.
pub fn hypergeometric_series(m: usize, order: usize) -> Result<TruncatedSeries> {
    if m < 5 {
        return Err(Error::Domain(format!(
            "parameter lists are only defined for m >= 5, got {m}"
        )));
    }
    let (a, b) = ((m - 2) as i64, (m - 3) as i64);
    let upper: Vec<RBig> = (1..=b).map(|i| q(i, a as u64)).collect();
    let lower: Vec<RBig> = (2..b).map(|j| q(j, b as u64)).chain([q(a, b as u64)]).collect();
    if lower.iter().any(|l| l <= &RBig::ZERO && l.denominator() == &dashu::integer::UBig::ONE) {
        return Err(Error::Domain("lower parameter is a nonpositive integer".into()));
    }
    let scale = -RBig::from(IBig::from(a).pow(a as usize))
        / RBig::from(IBig::from(b).pow(b as usize));
    let step = m - 2;
    let mut coeffs = vec![RBig::ZERO; order + 1];
    let mut term = RBig::ONE;
    let mut n = 0usize;
    while n * step < order {
        coeffs[1 + n * step] = term.clone();
        let k = RBig::from(IBig::from(n));
        let mut ratio = scale.clone() / (&k + RBig::ONE);
        for u in &upper {
            ratio *= u + &k;
        }
        for l in &lower {
            ratio /= l + &k;
        }
        term *= ratio;
        n += 1;
    }
    Ok(TruncatedSeries::new(coeffs, order))
}

/// T = (1 + 2x - G)/(1 + x - G).
pub fn t_from_g(g: &TruncatedSeries) -> Result<TruncatedSeries> {
    let n = g.order();
    let num = TruncatedSeries::from_ints([1, 2], n).sub(g);
    let den = TruncatedSeries::from_ints([1, 1], n).sub(g);
    num.div(&den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::clusters_tree;

    #[test]
    fn witnesses_annihilate_tree_series() {
        for m in 4..=7 {
            let t = clusters_tree(m, 30).unwrap().signed_sum().ogf();
            let w = tree_witness(m).unwrap();
            assert_eq!(w.degree(), m - 2);
            assert_eq!(algebraic_verify(&w, &t), 31, "m = {m}");
            assert!(algebraic_verify(&w.perturbed(1, 2, 1), &t) <= 3);
        }
    }

    #[test]
    fn g_reproduces_t() {
        for m in [5usize, 6, 7] {
            let g = hypergeometric_series(m, 30).unwrap();
            let t = t_from_g(&g).unwrap();
            let want = clusters_tree(m, 30).unwrap().signed_sum().ogf();
            assert_eq!(t, want, "m = {m}");
        }
        assert!(hypergeometric_series(4, 10).is_err());
    }

    #[test]
    fn witness_validation() {
        assert!(AlgebraicWitness::new(vec![ints(&[1]), ints(&[0, 1])]).is_err());
        let w = tree_witness(5).unwrap();
        assert!(w.to_string().contains("T^3"));
    }
}
