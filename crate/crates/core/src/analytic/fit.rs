//! Guessing linear ODEs with polynomial coefficients from series terms.
//!
//! For bounds (r, d) the unknowns are the coefficients p_{ij} of x^j y^{(i)};
//! the coefficient of x^n in sum p_{ij} x^j y^{(i)} gives one linear equation
//! per n = 0..=N-r. Ranks are computed modulo word-sized primes; a candidate
//! nullspace vector is then rebuilt over the rationals by Chinese remaindering
//! and rational reconstruction, and accepted only after every equation has
//! been checked in exact arithmetic.

use dashu::base::Gcd;
use dashu::integer::{IBig, UBig};
use dashu::rational::RBig;

use super::ode::{normalize_coeffs, LinearODE};
use crate::combinat::factorial;
use crate::dp::{mul_mod, pow_mod, primes_below_2_62, Crt};
use crate::error::{Error, Result};
use crate::series::{Poly, TruncatedSeries};

/// Trailing equations held back from the fit and used only for validation.
pub const HELD_OUT: usize = 10;
/// Validation equations that must remain after the held-out ones have
/// absorbed the excess nullspace of the fitted part.
pub const MIN_EXCESS: usize = 5;

const MAX_PRIMES: usize = 64;

fn rising_mod(a: u64, i: usize, p: u64) -> u64 {
    (0..i as u64).fold(1u64, |acc, k| mul_mod(acc, (a + k) % p, p))
}

fn rational_mod(r: &RBig, p: u64) -> Option<u64> {
    let num = r.numerator();
    let den = r.denominator();
    let d = den % p;
    if d == 0 {
        return None;
    }
    let (sign, mag) = num.clone().into_parts();
    let mut n = &mag % p;
    if sign == dashu::base::Sign::Negative && n != 0 {
        n = p - n;
    }
    Some(mul_mod(n, pow_mod(d, p - 2, p), p))
}

/// Row-reduced echelon form modulo p; returns the pivot column of each
/// nonzero row in order.
fn rref_mod(rows: &mut [Vec<u64>], cols: usize, p: u64) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else { continue };
        rows.swap(r, k);
        let inv = pow_mod(rows[r][c], p - 2, p);
        for v in rows[r].iter_mut() {
            *v = mul_mod(*v, inv, p);
        }
        let pivot = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r && row[c] != 0 {
                let f = row[c];
                for (v, &pv) in row[c..cols].iter_mut().zip(&pivot[c..cols]) {
                    *v = (*v + p - mul_mod(f, pv, p)) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

struct System<'a> {
    a: &'a [RBig],
    r: usize,
    d: usize,
}

impl System<'_> {
    fn unknowns(&self) -> usize {
        (self.r + 1) * (self.d + 1)
    }

    fn equations(&self) -> usize {
        self.a.len() - self.r
    }

    /// Unknown (i, j) is stored at i * (d + 1) + j.
    fn rows_mod(&self, p: u64, count: usize) -> Option<Vec<Vec<u64>>> {
        let a_mod: Vec<u64> = self.a.iter().map(|c| rational_mod(c, p)).collect::<Option<_>>()?;
        let mut rows = Vec::with_capacity(count);
        for n in 0..count {
            let mut row = vec![0u64; self.unknowns()];
            for i in 0..=self.r {
                for j in 0..=self.d.min(n) {
                    let k = n - j + i;
                    let f = rising_mod((n - j + 1) as u64, i, p);
                    row[i * (self.d + 1) + j] = mul_mod(f, a_mod[k], p);
                }
            }
            rows.push(row);
        }
        Some(rows)
    }

    fn nullity_mod(&self, p: u64, count: usize) -> Option<usize> {
        let mut rows = self.rows_mod(p, count)?;
        let rank = rref_mod(&mut rows, self.unknowns(), p).len();
        Some(self.unknowns() - rank)
    }

    /// The one-dimensional nullspace modulo p, scaled so the free unknown is
    /// 1, together with the index of that unknown.
    fn kernel_mod(&self, p: u64) -> Option<(usize, Vec<u64>)> {
        let mut rows = self.rows_mod(p, self.equations())?;
        let n = self.unknowns();
        let pivots = rref_mod(&mut rows, n, p);
        if pivots.len() + 1 != n {
            return None;
        }
        let free = (0..n).find(|c| !pivots.contains(c))?;
        let mut v = vec![0u64; n];
        v[free] = 1;
        for (row, &c) in pivots.iter().enumerate() {
            v[c] = (p - rows[row][free]) % p;
        }
        Some((free, v))
    }

    fn satisfied_exactly(&self, v: &[RBig]) -> bool {
        (0..self.equations()).all(|n| {
            let mut acc = RBig::ZERO;
            for i in 0..=self.r {
                for j in 0..=self.d.min(n) {
                    let c = &v[i * (self.d + 1) + j];
                    if !c.is_zero() {
                        let k = n - j + i;
                        let f = (n - j + 1..n - j + 1 + i).fold(IBig::ONE, |acc, t| acc * IBig::from(t));
                        acc += c * RBig::from(f) * &self.a[k];
                    }
                }
            }
            acc.is_zero()
        })
    }
}

/// Rational a/b with a = b u (mod m) and |a|, b below sqrt(m/2).
fn rational_reconstruct(u: &UBig, m: &UBig) -> Option<RBig> {
    let bound = (m >> 1usize).nth_root(2);
    let (mut r0, mut r1) = (IBig::from(m.clone()), IBig::from(u.clone()));
    let (mut t0, mut t1) = (IBig::ZERO, IBig::ONE);
    let bound_i = IBig::from(bound.clone());
    while r1.clone().into_parts().1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1 == IBig::ZERO {
        return None;
    }
    let (sign, tb) = t1.into_parts();
    if IBig::from(tb.clone()) > bound_i {
        return None;
    }
    let a = if sign == dashu::base::Sign::Negative { -r1 } else { r1 };
    if (&a.clone().into_parts().1).gcd(&tb) != UBig::ONE && a != IBig::ZERO {
        return None;
    }
    Some(RBig::from_parts(a, tb))
}

fn exact_kernel(sys: &System<'_>) -> Option<Vec<RBig>> {
    let primes = primes_below_2_62(MAX_PRIMES);
    let mut free_col = None;
    let mut crts: Vec<Crt> = Vec::new();
    let mut last: Option<Vec<RBig>> = None;
    for &p in &primes {
        let Some((free, v)) = sys.kernel_mod(p) else { continue };
        match free_col {
            None => {
                free_col = Some(free);
                crts = vec![Crt::default(); v.len()];
            }
            Some(f) if f != free => continue,
            _ => {}
        }
        for (crt, &x) in crts.iter_mut().zip(&v) {
            crt.push(x, p);
        }
        let cand: Option<Vec<RBig>> =
            crts.iter().map(|c| rational_reconstruct(c.value(), c.modulus())).collect();
        if let Some(cand) = cand {
            if last.as_ref() == Some(&cand) && sys.satisfied_exactly(&cand) {
                return Some(cand);
            }
            last = Some(cand);
        }
    }
    None
}

/// Search for sum_{i<=r} p_i(x) y^{(i)} = 0 with deg p_i <= d satisfied by
/// the series, sweeping (r, d) by increasing r + d and then increasing r.
///
/// For each pair the last [`HELD_OUT`] equations are set aside. A pair is
/// accepted when the full system has a one-dimensional nullspace and the
/// held-out equations cut the nullspace of the fitted part down to it with at
/// least [`MIN_EXCESS`] equations to spare; the nullspace vector is then
/// reconstructed and checked against every equation in exact arithmetic.
/// Pairs with too few equations for this test are skipped.
pub fn dfinite_fit(
    series: &TruncatedSeries,
    max_order: usize,
    max_degree: usize,
) -> Result<Option<LinearODE>> {
    let a = series.coeffs();
    if max_order == 0 {
        return Err(Error::Domain("max_order must be at least 1".into()));
    }
    if a.len() < 2 + HELD_OUT + MIN_EXCESS {
        return Err(Error::InsufficientTerms { needed: 2 + HELD_OUT + MIN_EXCESS, available: a.len() });
    }
    let probe = primes_below_2_62(1)[0];
    for total in 1..=max_order + max_degree {
        for r in 1..=max_order.min(total) {
            let d = total - r;
            if d > max_degree {
                continue;
            }
            let sys = System { a, r, d };
            let eqs = sys.equations();
            if eqs <= HELD_OUT {
                continue;
            }
            let Some(k_fit) = sys.nullity_mod(probe, eqs - HELD_OUT) else { continue };
            if k_fit == 0 || HELD_OUT < (k_fit - 1) + MIN_EXCESS {
                continue;
            }
            if sys.nullity_mod(probe, eqs) != Some(1) {
                continue;
            }
            let Some(v) = exact_kernel(&sys) else { continue };
            let coeffs: Vec<Poly> =
                (0..=r).map(|i| Poly::new(v[i * (d + 1)..(i + 1) * (d + 1)].to_vec())).collect();
            if coeffs.last().is_some_and(Poly::is_zero) {
                continue;
            }
            let initial =
                (0..r).map(|k| &a[k] * RBig::from(factorial(k))).collect::<Vec<_>>();
            return Ok(Some(LinearODE::new(normalize_coeffs(&coeffs), initial)?));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::ode::{ode_library, ode_series_solve, OdeSource};

    #[test]
    fn exponential() {
        let a: Vec<RBig> = (0..30).map(|k| RBig::ONE / RBig::from(factorial(k))).collect();
        let s = TruncatedSeries::new(a, 29);
        let ode = dfinite_fit(&s, 3, 3).unwrap().unwrap();
        assert_eq!(ode.order(), 1);
        assert_eq!(ode.coeffs()[0], Poly::from_ints([-1]));
        assert_eq!(ode.coeffs()[1], Poly::from_ints([1]));
    }

    #[test]
    fn recovers_small_library_equations() {
        for label in ["5.II", "4.VI", "5.V"] {
            let src = OdeSource::Class(label.parse().unwrap());
            let want = ode_library(src).unwrap().normalized();
            let y = ode_series_solve(&want, 39).unwrap();
            let got = dfinite_fit(&y, 5, 6).unwrap().expect(label);
            assert_eq!(got, want, "{label}");
        }
    }

    #[test]
    fn reconstruction() {
        let m = UBig::from(1_000_003u64) * UBig::from(999_983u64);
        // -7/12 modulo m
        let u = (&m - UBig::from(7u8)) * modinv(12, &m) % &m;
        assert_eq!(rational_reconstruct(&u, &m), Some("-7/12".parse().unwrap()));
    }

    fn modinv(a: u64, m: &UBig) -> UBig {
        let (mut r0, mut r1) = (IBig::from(m.clone()), IBig::from(a));
        let (mut t0, mut t1) = (IBig::ZERO, IBig::ONE);
        while r1 != IBig::ZERO {
            let q = &r0 / &r1;
            let r2 = &r0 - &q * &r1;
            r0 = std::mem::replace(&mut r1, r2);
            let t2 = &t0 - &q * &t1;
            t0 = std::mem::replace(&mut t1, t2);
        }
        let mi = IBig::from(m.clone());
        UBig::try_from(((t0 % &mi) + &mi) % &mi).unwrap()
    }

    #[test]
    fn random_looking_series_has_no_small_equation() {
        let a: Vec<RBig> = (0..40u64)
            .map(|k| RBig::from(IBig::from((k * k * 7919 + 13) % 101)))
            .collect();
        let s = TruncatedSeries::new(a, 39);
        assert!(dfinite_fit(&s, 3, 3).unwrap().is_none());
    }
}
