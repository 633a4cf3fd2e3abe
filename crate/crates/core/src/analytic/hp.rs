//! Arbitrary-precision real and complex arithmetic on top of binary floats.

use std::fmt;

use dashu::base::{Abs, BitTest, Sign, SquareRoot};
use dashu::float::round::mode::HalfEven;
use dashu::float::FBig;
use dashu::integer::IBig;
use dashu::rational::RBig;

pub type Real = FBig<HalfEven, 2>;

/// Binary precision that carries `digits` decimal digits plus a small guard.
pub fn bits_for_digits(digits: usize) -> usize {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 16
}

pub fn real_int(v: i64, bits: usize) -> Real {
    Real::from(IBig::from(v)).with_precision(bits).value()
}

pub fn real_f64(v: f64, bits: usize) -> Real {
    Real::try_from(v).expect("finite float").with_precision(bits).value()
}

pub fn real_rational(r: &RBig, bits: usize) -> Real {
    r.to_float(bits).value()
}

/// Exact value of a plain decimal string such as `-0.9630055`.
pub fn parse_decimal(s: &str) -> Option<RBig> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: IBig = format!("{int}{frac}").parse().ok()?;
    let v = RBig::from_parts(digits, dashu::integer::UBig::from(10u8).pow(frac.len()));
    Some(if neg { -v } else { v })
}

pub fn to_f64(x: &Real) -> f64 {
    x.to_f64().value()
}

pub fn is_zero(x: &Real) -> bool {
    x.repr().is_zero()
}

pub fn is_negative(x: &Real) -> bool {
    x.repr().sign() == Sign::Negative && !is_zero(x)
}

pub fn abs(x: &Real) -> Real {
    x.clone().abs()
}

/// Decimal rendering with `digits` significant digits.
pub fn decimal(x: &Real, digits: usize) -> String {
    if is_zero(x) {
        return "0".to_string();
    }
    let d = x.to_decimal().value();
    let d = d.with_precision(digits).value();
    d.to_string()
}

/// Number of leading decimal digits on which `a` agrees with `reference`,
/// measured as -log10 of the relative error and capped at `cap`.
pub fn agreement_digits(a: &Real, reference: &Real, cap: f64) -> f64 {
    let diff = abs(&(a - reference));
    if is_zero(&diff) {
        return cap;
    }
    let rel = &diff / abs(reference);
    let lg = log10(&rel);
    (-lg).min(cap)
}

/// log10 of a positive real, accurate to f64 even far outside f64 range.
pub fn log10(x: &Real) -> f64 {
    let (sig, exp) = x.repr().clone().into_parts();
    let mag = sig.into_parts().1;
    let bits = mag.bit_len() as isize;
    let shift = bits - 53;
    let top = if shift > 0 { mag >> shift as usize } else { mag << (-shift) as usize };
    let mant: f64 = top.to_f64().value();
    (mant.log2() + (exp + shift) as f64) * std::f64::consts::LOG10_2
}

#[derive(Clone, Debug, PartialEq)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Self {
        Complex { re, im }
    }

    pub fn from_f64(re: f64, im: f64, bits: usize) -> Self {
        Complex::new(real_f64(re, bits), real_f64(im, bits))
    }

    pub fn real(re: Real) -> Self {
        let bits = re.precision();
        Complex::new(re, real_int(0, bits))
    }

    pub fn zero(bits: usize) -> Self {
        Complex::from_f64(0.0, 0.0, bits)
    }

    pub fn one(bits: usize) -> Self {
        Complex::from_f64(1.0, 0.0, bits)
    }

    pub fn precision(&self) -> usize {
        self.re.precision().max(self.im.precision())
    }

    pub fn add(&self, o: &Complex) -> Complex {
        Complex::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &Complex) -> Complex {
        Complex::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn neg(&self) -> Complex {
        Complex::new(-self.re.clone(), -self.im.clone())
    }

    pub fn mul(&self, o: &Complex) -> Complex {
        Complex::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    pub fn scale(&self, s: &Real) -> Complex {
        Complex::new(&self.re * s, &self.im * s)
    }

    pub fn conj(&self) -> Complex {
        Complex::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> Real {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn abs(&self) -> Real {
        self.norm_sqr().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        is_zero(&self.re) && is_zero(&self.im)
    }

    pub fn recip(&self) -> Complex {
        let n = self.norm_sqr();
        Complex::new(&self.re / &n, -(&self.im / &n))
    }

    pub fn div(&self, o: &Complex) -> Complex {
        self.mul(&o.recip())
    }

    pub fn powi(&self, e: usize) -> Complex {
        let mut acc = Complex::one(self.precision());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Principal square root: branch cut along the negative real axis, with
    /// the negative reals themselves mapped to the positive imaginary axis.
    pub fn sqrt(&self) -> Complex {
        let bits = self.precision();
        if self.is_zero() {
            return Complex::zero(bits);
        }
        let two = real_int(2, bits);
        let r = self.abs();
        if !is_negative(&self.re) {
            let t = ((&r + &self.re) / &two).sqrt();
            let im = &self.im / (&t * &two);
            Complex::new(t, im)
        } else {
            let t = ((&r - &self.re) / &two).sqrt();
            let re = abs(&self.im) / (&t * &two);
            let im = if is_negative(&self.im) { -t } else { t };
            Complex::new(re, im)
        }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (to_f64(&self.re), to_f64(&self.im))
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_f64();
        if im < 0.0 {
            write!(f, "{re}-{}i", -im)
        } else {
            write!(f, "{re}+{im}i")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_branches() {
        let bits = 128;
        let z = Complex::from_f64(-4.0, 0.0, bits).sqrt();
        assert_eq!(z.to_f64(), (0.0, 2.0));
        let w = Complex::from_f64(-3.0, -4.0, bits).sqrt();
        assert_eq!(w.to_f64(), (1.0, -2.0));
        let u = Complex::from_f64(3.0, 4.0, bits).sqrt();
        assert_eq!(u.to_f64(), (2.0, 1.0));
    }

    #[test]
    fn division_round_trip() {
        let bits = 200;
        let a = Complex::from_f64(0.3, -1.7, bits);
        let b = Complex::from_f64(-2.5, 0.25, bits);
        let back = a.div(&b).mul(&b).sub(&a);
        assert!(log10(&back.abs()) < -55.0);
    }

    #[test]
    fn digits_and_logs() {
        let bits = bits_for_digits(40);
        let third = real_rational(&RBig::from_parts(IBig::from(1), 3u8.into()), bits);
        assert!((log10(&third) - (1.0f64 / 3.0).log10()).abs() < 1e-12);
        let near = &third + real_f64(1e-20, bits);
        let d = agreement_digits(&near, &third, 100.0);
        assert!((d - 19.52).abs() < 0.01, "{d}");
        assert!(decimal(&third, 10).starts_with("0.3333333333"));
    }
}
