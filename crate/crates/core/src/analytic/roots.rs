//! Simultaneous polynomial root finding (Aberth-Ehrlich) in high precision.

use super::hp::{self, Complex, Real};
use crate::error::{Error, Result};

fn horner(coeffs: &[Complex], z: &Complex) -> (Complex, Complex) {
    let bits = z.precision();
    let mut p = Complex::zero(bits);
    let mut dp = Complex::zero(bits);
    for c in coeffs.iter().rev() {
        dp = dp.mul(z).add(&p);
        p = p.mul(z).add(c);
    }
    (p, dp)
}

/// Evaluate a polynomial given lowest degree first.
pub fn eval_poly(coeffs: &[Complex], z: &Complex) -> Complex {
    horner(coeffs, z).0
}

/// All complex roots of the polynomial with coefficients `coeffs` (lowest
/// degree first, nonzero leading coefficient), to roughly the working
/// precision of the coefficients.
pub fn poly_roots(coeffs: &[Complex], label: &str) -> Result<Vec<Complex>> {
    let mut coeffs = coeffs.to_vec();
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    let deg = coeffs.len().saturating_sub(1);
    if deg == 0 {
        return Ok(Vec::new());
    }
    let bits = coeffs.iter().map(Complex::precision).max().unwrap_or(64).max(64);
    let coeffs: Vec<Complex> = coeffs
        .iter()
        .map(|c| Complex::new(c.re.clone().with_precision(bits).value(), c.im.clone().with_precision(bits).value()))
        .collect();
    if deg == 1 {
        return Ok(vec![coeffs[0].neg().div(&coeffs[1])]);
    }
    // Starting points on a circle of the Fujiwara radius, rotated off the axes.
    let lead = coeffs[deg].abs();
    let mut radius = 0.0f64;
    for (k, c) in coeffs.iter().enumerate().take(deg) {
        let ratio = hp::to_f64(&(c.abs() / &lead));
        if ratio > 0.0 {
            radius = radius.max(ratio.powf(1.0 / (deg - k) as f64));
        }
    }
    let radius = if radius > 0.0 { radius } else { 1.0 };
    let mut z: Vec<Complex> = (0..deg)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / deg as f64 + 0.4;
            Complex::from_f64(radius * theta.cos(), radius * theta.sin(), bits)
        })
        .collect();
    let eps = hp::real_int(1, bits)
        / hp::real_int(2, bits).powi(dashu::integer::IBig::from(bits - bits / 8));
    let mut done = vec![false; deg];
    for _ in 0..(50 + 20 * deg + bits) {
        let mut all = true;
        for i in 0..deg {
            if done[i] {
                continue;
            }
            let (p, dp) = horner(&coeffs, &z[i]);
            if p.is_zero() {
                done[i] = true;
                continue;
            }
            let ratio = p.div(&dp);
            let mut sum = Complex::zero(bits);
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    sum = sum.add(&z[i].sub(zj).recip());
                }
            }
            let denom = Complex::one(bits).sub(&ratio.mul(&sum));
            let step = ratio.div(&denom);
            z[i] = z[i].sub(&step);
            let scale: Real = hp::real_int(1, bits) + z[i].abs();
            if step.abs() <= &eps * &scale {
                done[i] = true;
            } else {
                all = false;
            }
        }
        if all {
            return Ok(z);
        }
    }
    Err(Error::NonConvergence { branch: label.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_cyclotomic_and_quadratic() {
        let bits = 200;
        let c = |v: f64| Complex::from_f64(v, 0.0, bits);
        // x^4 - 1
        let mut r = poly_roots(&[c(-1.0), c(0.0), c(0.0), c(0.0), c(1.0)], "t")
            .unwrap()
            .iter()
            .map(|z| z.to_f64())
            .map(|(a, b)| ((a * 1e9).round() / 1e9, (b * 1e9).round() / 1e9))
            .collect::<Vec<_>>();
        r.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(r, [(-1.0, 0.0), (0.0, -1.0), (0.0, 1.0), (1.0, 0.0)]);
        // x^2 - 2 to full precision
        let roots = poly_roots(&[c(-2.0), c(0.0), c(1.0)], "t").unwrap();
        for z in roots {
            let res = z.mul(&z).sub(&c(2.0)).abs();
            assert!(hp::log10(&res) < -50.0);
        }
    }
}
