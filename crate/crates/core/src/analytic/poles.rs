//! Poles of T(x) = 1 + A(x) T(B(x)) with A = x/(1+x), B = x/(1+x^{m-2}).
//!
//! A pole of depth j is a point x with B_j(x) = -1, so that the factor
//! A(B_j(x)) blows up. Depth 0 is x = -1; a depth j+1 pole solves
//! B(x) = t for a depth j pole t, that is t x^{m-2} - x + t = 0.

use std::fmt::Write as _;

use super::hp::{self, Complex, Real};
use super::iterate::{eval_t, MapChain};
use super::roots::poly_roots;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PoleMode {
    /// One root per depth, following a fixed branch choice.
    Single,
    /// Every preimage at every depth.
    All,
}

#[derive(Clone, Debug)]
pub struct Pole {
    pub depth: usize,
    /// Branch choices from depth 1 down to this pole: `+`/`-` for the two
    /// quadratic branches when m = 4, otherwise dot-separated root indices.
    pub branch: String,
    pub value: Complex,
    /// |B_depth(x) + 1| evaluated by forward iteration.
    pub residual: Real,
}

#[derive(Clone, Debug)]
pub struct PoleSet {
    pub m: usize,
    pub bits: usize,
    pub poles: Vec<Pole>,
}

impl PoleSet {
    pub fn at_depth(&self, depth: usize) -> impl Iterator<Item = &Pole> {
        self.poles.iter().filter(move |p| p.depth == depth)
    }

    pub fn max_depth(&self) -> usize {
        self.poles.iter().map(|p| p.depth).max().unwrap_or(0)
    }

    pub fn max_residual(&self) -> Real {
        let mut worst = hp::real_int(0, self.bits);
        for p in &self.poles {
            if p.residual > worst {
                worst = p.residual.clone();
            }
        }
        worst
    }

    pub fn all_in_left_half_plane(&self) -> bool {
        self.poles.iter().all(|p| hp::is_negative(&p.value.re))
    }

    /// Smallest pairwise distance between poles, over all depths.
    pub fn min_separation(&self) -> f64 {
        let pts: Vec<(f64, f64)> = self.poles.iter().map(|p| p.value.to_f64()).collect();
        let mut best = f64::INFINITY;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                let d = (pts[i].0 - pts[j].0).hypot(pts[i].1 - pts[j].1);
                if d < best {
                    best = if d < 1e-9 {
                        hp::to_f64(&self.poles[i].value.sub(&self.poles[j].value).abs())
                    } else {
                        d
                    };
                }
            }
        }
        best
    }

    /// CSV with columns depth, branch, re, im, residual.
    pub fn to_csv(&self, digits: usize) -> String {
        let mut out = String::from("depth,branch,re,im,residual\n");
        for p in &self.poles {
            let _ = writeln!(
                out,
                "{},{},{},{},{:.3e}",
                p.depth,
                p.branch,
                hp::decimal(&p.value.re, digits),
                hp::decimal(&p.value.im, digits),
                hp::to_f64(&p.residual)
            );
        }
        out
    }
}

/// |B_depth(x) + 1| by iterating B forward.
pub fn certificate(m: usize, x: &Complex, depth: usize) -> Result<Real> {
    let chain = MapChain::new(m)?;
    let mut y = x.clone();
    for _ in 0..depth {
        y = chain.b_complex(&y);
    }
    Ok(y.add(&Complex::one(x.precision())).abs())
}

/// The two solutions of t x^2 - x + t = 0: (1 +- sqrt(1 - 4t^2)) / (2t), with
/// the principal square root. Returns (C+, C-).
pub fn quadratic_preimages(t: &Complex) -> (Complex, Complex) {
    let bits = t.precision();
    let one = Complex::one(bits);
    let four = hp::real_int(4, bits);
    let disc = one.sub(&t.mul(t).scale(&four)).sqrt();
    let two_t = t.scale(&hp::real_int(2, bits));
    (one.add(&disc).div(&two_t), one.sub(&disc).div(&two_t))
}

/// All solutions of t x^{m-2} - x + t = 0, ordered by decreasing modulus and
/// then increasing imaginary part.
pub fn preimages(m: usize, t: &Complex, label: &str) -> Result<Vec<Complex>> {
    let bits = t.precision();
    let mut coeffs = vec![Complex::zero(bits); m - 1];
    coeffs[0] = t.clone();
    coeffs[1] = coeffs[1].sub(&Complex::one(bits));
    coeffs[m - 2] = coeffs[m - 2].add(t);
    let mut roots = poly_roots(&coeffs, label)?;
    roots.sort_by(|a, b| {
        let (ma, mb) = (a.abs(), b.abs());
        let diff = hp::to_f64(&(&ma - &mb));
        if diff.abs() > 1e-20 {
            mb.partial_cmp(&ma).expect("finite")
        } else {
            a.im.partial_cmp(&b.im).expect("finite")
        }
    });
    Ok(roots)
}

fn children(m: usize, t: &Complex, branch: &str) -> Result<Vec<(String, Complex)>> {
    let sep = if branch.is_empty() { "" } else { "." };
    if m == 4 {
        let (p, q) = quadratic_preimages(t);
        let bp = if branch.is_empty() { "+".to_string() } else { format!("{branch}+") };
        let bq = if branch.is_empty() { "-".to_string() } else { format!("{branch}-") };
        return Ok(vec![(bp, p), (bq, q)]);
    }
    Ok(preimages(m, t, branch)?
        .into_iter()
        .enumerate()
        .map(|(i, z)| (format!("{branch}{sep}{i}"), z))
        .collect())
}

/// Poles of depth 0..=depth, computed with `bits` of binary precision.
/// In single mode the first child is followed at every step (C+ for m = 4).
pub fn pole_chain(m: usize, depth: usize, mode: PoleMode, bits: usize) -> Result<PoleSet> {
    if m < 4 {
        return Err(Error::Domain(format!("pole chain needs m >= 4, got {m}")));
    }
    if mode == PoleMode::All && (m - 2).checked_pow(depth as u32).is_none_or(|n| n > 1 << 12) {
        return Err(Error::Domain("too many poles requested".into()));
    }
    let root = Complex::from_f64(-1.0, 0.0, bits);
    let mut poles = vec![Pole {
        depth: 0,
        branch: String::new(),
        residual: certificate(m, &root, 0)?,
        value: root.clone(),
    }];
    let mut layer = vec![(String::new(), root)];
    for d in 1..=depth {
        let mut next = Vec::new();
        for (branch, t) in &layer {
            let kids = children(m, t, branch)?;
            match mode {
                PoleMode::Single => next.push(kids.into_iter().next().expect("nonempty")),
                PoleMode::All => next.extend(kids),
            }
        }
        for (branch, z) in &next {
            let residual = certificate(m, z, d)?;
            poles.push(Pole { depth: d, branch: branch.clone(), value: z.clone(), residual });
        }
        layer = next;
    }
    Ok(PoleSet { m, bits, poles })
}

/// |T| at x(1 + delta) for each delta, using the product sum; growth as
/// delta shrinks is the numerical signature of a pole at x.
pub fn divergence_profile(m: usize, x: &Complex, deltas: &[f64]) -> Result<Vec<(f64, f64)>> {
    let bits = x.precision();
    let tol = hp::real_f64(1e-30, bits);
    deltas
        .iter()
        .map(|&d| {
            let factor = Complex::from_f64(1.0 + d, 0.0, bits);
            let t = eval_t(m, &x.mul(&factor), &tol, 100_000)?;
            Ok((d, hp::to_f64(&t.abs())))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(z: &Complex, re: f64, im: f64, tol: f64) -> bool {
        let (a, b) = z.to_f64();
        (a - re).abs() < tol && (b - im).abs() < tol
    }

    #[test]
    fn first_depths_m4() {
        let set = pole_chain(4, 3, PoleMode::All, 160).unwrap();
        let d1: Vec<_> = set.at_depth(1).collect();
        assert_eq!(d1.len(), 2);
        assert!(d1.iter().any(|p| close(&p.value, -0.5, 0.866025, 5e-6)));
        assert!(d1.iter().any(|p| close(&p.value, -0.5, -0.866025, 5e-6)));
        assert_eq!(set.at_depth(3).count(), 8);
        assert!(hp::log10(&set.max_residual()) < -40.0);
        assert!(set.all_in_left_half_plane());
        assert!(set.min_separation() > 1e-3);
    }

    #[test]
    fn single_chain_follows_plus_branch() {
        let set = pole_chain(4, 3, PoleMode::Single, 160).unwrap();
        let v: Vec<_> = set.poles.iter().map(|p| p.value.clone()).collect();
        assert!(close(&v[1], -0.5, -0.866025, 5e-6));
        assert!(close(&v[2], -0.351597, 1.49853, 5e-6));
        assert!(close(&v[3], -0.0966266, -1.36268, 5e-6));
        assert_eq!(set.poles[3].branch, "+++");
    }

    #[test]
    fn general_m_preimages_certify() {
        for m in [5usize, 6] {
            let set = pole_chain(m, 2, PoleMode::All, 160).unwrap();
            assert_eq!(set.at_depth(2).count(), (m - 2) * (m - 2));
            assert!(hp::log10(&set.max_residual()) < -30.0, "m = {m}");
        }
    }

    #[test]
    fn t_blows_up_near_a_pole() {
        let set = pole_chain(4, 2, PoleMode::Single, 160).unwrap();
        let x = &set.poles[2].value;
        let prof = divergence_profile(4, x, &[1e-3, 1e-6, 1e-9]).unwrap();
        assert!(prof[2].1 > 1e6, "{prof:?}");
        assert!(prof[2].1 > 100.0 * prof[0].1);
    }
}
