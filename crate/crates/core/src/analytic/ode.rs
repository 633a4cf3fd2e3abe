//! Linear ODEs with polynomial coefficients: the known equations for the
//! reciprocal e.g.f. of avoider counts, power-series solution, and the JSON
//! form used by the command line.

use std::fmt;
use std::str::FromStr;

use dashu::base::Gcd;
use dashu::integer::{IBig, UBig};
use dashu::rational::RBig;
use serde::{Deserialize, Serialize};

use crate::combinat::factorial;
use crate::error::{Error, Result};
use crate::perm::{ClassId, Pattern};
use crate::series::{Poly, TruncatedSeries};

/// sum_i p_i(x) y^{(i)}(x) = 0 together with y(0), y'(0), ..., y^{(r-1)}(0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearODE {
    coeffs: Vec<Poly>,
    initial: Vec<RBig>,
}

/// Rising factorial (a)_i = a (a+1) ... (a+i-1) for integer a.
fn rising(a: i64, i: usize) -> IBig {
    (0..i as i64).fold(IBig::ONE, |acc, k| acc * IBig::from(a + k))
}

impl LinearODE {
    pub fn new(coeffs: Vec<Poly>, initial: Vec<RBig>) -> Result<Self> {
        if coeffs.len() < 2 || coeffs.last().is_some_and(Poly::is_zero) {
            return Err(Error::InvalidInput("leading coefficient must be nonzero".into()));
        }
        let r = coeffs.len() - 1;
        if initial.len() != r {
            return Err(Error::InvalidInput(format!(
                "order {r} needs {r} initial values, got {}",
                initial.len()
            )));
        }
        Ok(LinearODE { coeffs, initial })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Largest coefficient degree.
    pub fn degree(&self) -> usize {
        self.coeffs.iter().filter_map(Poly::degree).max().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    /// y^{(k)}(0) for k < order.
    pub fn initial(&self) -> &[RBig] {
        &self.initial
    }

    /// Largest i - j over the nonzero terms x^j y^{(i)}: the index shift
    /// between an equation for x^n and the newest coefficient it involves.
    fn shift(&self) -> i64 {
        let mut s = i64::MIN;
        for (i, p) in self.coeffs.iter().enumerate() {
            for (j, c) in p.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    s = s.max(i as i64 - j as i64);
                }
            }
        }
        s
    }

    /// Coefficient of x^n in sum_i p_i y^{(i)}, skipping the term that
    /// multiplies y_{skip}; the second value is the multiplier of y_{skip}.
    fn equation(&self, y: &[RBig], n: usize, skip: Option<usize>) -> (RBig, RBig) {
        let mut rest = RBig::ZERO;
        let mut lead = RBig::ZERO;
        for (i, p) in self.coeffs.iter().enumerate() {
            for (j, c) in p.coeffs().iter().enumerate() {
                if c.is_zero() || j > n {
                    continue;
                }
                let k = n - j + i;
                let f = RBig::from(rising((n - j + 1) as i64, i)) * c;
                if Some(k) == skip {
                    lead += f;
                } else {
                    rest += f * &y[k];
                }
            }
        }
        (rest, lead)
    }

    /// Coefficients 0..=n of sum_i p_i y^{(i)}, for n up to `y.order() - order`.
    pub fn residual(&self, y: &TruncatedSeries) -> TruncatedSeries {
        let r = self.order();
        let top = y.order().saturating_sub(r);
        let coeffs = y.coeffs();
        let vals = (0..=top).map(|n| self.equation(coeffs, n, None).0).collect();
        TruncatedSeries::new(vals, top)
    }

    /// Integer coefficients with gcd 1 and the lowest nonzero coefficient of
    /// the leading polynomial positive. Initial values are unchanged.
    pub fn normalized(&self) -> LinearODE {
        LinearODE { coeffs: normalize_coeffs(&self.coeffs), initial: self.initial.clone() }
    }

    pub fn to_document(&self) -> OdeDocument {
        let norm = normalize_coeffs(&self.coeffs);
        OdeDocument {
            order: self.order(),
            coefficients: norm
                .iter()
                .map(|p| {
                    p.to_integers()
                        .expect("normalized coefficients are integers")
                        .iter()
                        .map(IBig::to_string)
                        .collect()
                })
                .collect(),
            initial_values: self.initial.iter().map(RBig::to_string).collect(),
        }
    }

    pub fn from_document(doc: &OdeDocument) -> Result<Self> {
        let coeffs = doc
            .coefficients
            .iter()
            .map(|p| {
                p.iter()
                    .map(|s| {
                        s.parse::<IBig>()
                            .map(RBig::from)
                            .map_err(|_| Error::InvalidInput(format!("bad coefficient {s:?}")))
                    })
                    .collect::<Result<Vec<_>>>()
                    .map(Poly::new)
            })
            .collect::<Result<Vec<_>>>()?;
        let initial = doc
            .initial_values
            .iter()
            .map(|s| s.parse::<RBig>().map_err(|_| Error::InvalidInput(format!("bad value {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let ode = LinearODE::new(coeffs, initial)?;
        if ode.order() != doc.order {
            return Err(Error::InvalidInput("order does not match coefficient count".into()));
        }
        Ok(ode)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_document()).expect("plain data");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_document(&serde_json::from_str(text)?)
    }
}

impl fmt::Display for LinearODE {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, p) in self.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({p}) y^({i})")?;
        }
        write!(f, " = 0")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OdeDocument {
    pub order: usize,
    /// p_0, ..., p_r, each lowest degree first.
    pub coefficients: Vec<Vec<String>>,
    pub initial_values: Vec<String>,
}

pub fn normalize_coeffs(coeffs: &[Poly]) -> Vec<Poly> {
    let mut lcm = UBig::ONE;
    for c in coeffs.iter().flat_map(|p| p.coeffs()) {
        let d = c.denominator();
        let g = (&lcm).gcd(d);
        lcm = &lcm / g * d;
    }
    let scale = RBig::from(IBig::from(lcm));
    let ints: Vec<Vec<IBig>> = coeffs
        .iter()
        .map(|p| p.coeffs().iter().map(|c| (c * &scale).numerator().clone()).collect())
        .collect();
    let mut g = UBig::ZERO;
    for v in ints.iter().flatten().filter(|v| **v != IBig::ZERO) {
        g = if g == UBig::ZERO { v.clone().into_parts().1 } else { (&g).gcd(&v.clone().into_parts().1) };
    }
    if g == UBig::ZERO {
        return coeffs.to_vec();
    }
    let lead_sign_negative = ints
        .last()
        .and_then(|p| p.iter().find(|c| **c != IBig::ZERO))
        .is_some_and(|c| *c < IBig::ZERO);
    let g = IBig::from(g);
    ints.into_iter()
        .map(|p| {
            Poly::new(
                p.into_iter()
                    .map(|c| {
                        let q = c / &g;
                        RBig::from(if lead_sign_negative { -q } else { q })
                    })
                    .collect(),
            )
        })
        .collect()
}

/// The power series y_0 + y_1 x + ... + y_N x^N solving `ode`, with
/// y_k = y^{(k)}(0)/k! for k below the order.
///
/// Equation n (the coefficient of x^n) involves y up to index n + s, where s
/// is the largest i - j over the terms x^j y^{(i)}. Indices below the order
/// come from the initial values and the corresponding equations are checked
/// for consistency; every later index is solved for from its equation, which
/// fails when the multiplier of the new unknown vanishes.
pub fn ode_series_solve(ode: &LinearODE, order: usize) -> Result<TruncatedSeries> {
    let r = ode.order();
    let s = ode.shift();
    let mut y = vec![RBig::ZERO; order.max(r) + 1];
    for (k, v) in ode.initial.iter().enumerate() {
        y[k] = v / RBig::from(factorial(k));
    }
    let mut n = 0usize;
    loop {
        let t = n as i64 + s;
        if t > order as i64 {
            break;
        }
        if t < 0 {
            n += 1;
            continue;
        }
        let t = t as usize;
        if t < r {
            let (rest, _) = ode.equation(&y, n, None);
            if !rest.is_zero() {
                return Err(Error::SingularRecurrence {
                    index: t,
                    detail: format!("initial values violate the equation for x^{n}"),
                });
            }
        } else {
            let (rest, lead) = ode.equation(&y, n, Some(t));
            if lead.is_zero() {
                let detail = if rest.is_zero() {
                    "coefficient left undetermined".to_string()
                } else {
                    "equation inconsistent".to_string()
                };
                return Err(Error::SingularRecurrence { index: t, detail });
            }
            y[t] = -rest / lead;
        }
        n += 1;
    }
    y.truncate(order + 1);
    Ok(TruncatedSeries::new(y, order))
}

/// Where a library ODE comes from: a c-Wilf class, or one of the two
/// infinite families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OdeSource {
    Class(ClassId),
    /// The pattern 1 2 ... m.
    Increasing { m: usize },
    /// 1 2 ... a, tau, a+1 of length m + 2, with tau increasing on
    /// {a+2, ..., m+2}; the equation holds for any order of tau.
    Prefix { a: usize, m: usize },
}

impl fmt::Display for OdeSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OdeSource::Class(c) => write!(f, "{c}"),
            OdeSource::Increasing { m } => write!(f, "increasing:{m}"),
            OdeSource::Prefix { a, m } => write!(f, "prefix:{a},{m}"),
        }
    }
}

impl FromStr for OdeSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("unknown ODE source {s:?}"));
        if let Some(rest) = s.strip_prefix("increasing:") {
            let m = rest.trim().parse().map_err(|_| bad())?;
            return Ok(OdeSource::Increasing { m });
        }
        if let Some(rest) = s.strip_prefix("prefix:") {
            let (a, m) = rest.split_once(',').ok_or_else(bad)?;
            let a = a.trim().parse().map_err(|_| bad())?;
            let m = m.trim().parse().map_err(|_| bad())?;
            return Ok(OdeSource::Prefix { a, m });
        }
        Ok(OdeSource::Class(s.parse()?))
    }
}

const WITH_ODE: [&str; 12] = [
    "4.I", "4.IV", "4.VI", "4.VII", "5.I", "5.II", "5.V", "5.VI", "5.XI", "5.XVI", "5.XXII",
    "5.XXV",
];

impl OdeSource {
    /// Every class with a known equation.
    pub fn classes() -> Vec<ClassId> {
        WITH_ODE.iter().map(|s| s.parse().expect("valid label")).collect()
    }

    /// The pattern whose counts the equation describes. For classes this is
    /// the member the equation was stated for, which need not be the
    /// lexicographically least one.
    pub fn pattern(self) -> Result<Pattern> {
        let v: Vec<u8> = match self {
            OdeSource::Class(c) => {
                let s = match c.to_string().as_str() {
                    "4.I" => "1234",
                    "4.IV" => "1324",
                    "4.VI" => "1342",
                    "4.VII" => "1243",
                    "5.I" => "12354",
                    "5.II" => "12453",
                    "5.V" => "13452",
                    "5.VI" => "12435",
                    "5.XI" => "13425",
                    "5.XVI" => "12534",
                    "5.XXII" => "13254",
                    "5.XXV" => "12345",
                    _ => return Err(Error::NoKnownOde(c.to_string())),
                };
                return s.parse();
            }
            OdeSource::Increasing { m } => {
                check_increasing(m)?;
                (1..=m as u8).collect()
            }
            OdeSource::Prefix { a, m } => {
                check_prefix(a, m)?;
                let (a, m) = (a as u8, m as u8);
                (1..=a).chain(a + 2..=m + 2).chain([a + 1]).collect()
            }
        };
        Pattern::new(v)
    }
}

fn check_increasing(m: usize) -> Result<()> {
    if !(3..=20).contains(&m) {
        return Err(Error::Domain(format!("increasing family needs 3 <= m <= 20, got {m}")));
    }
    Ok(())
}

fn check_prefix(a: usize, m: usize) -> Result<()> {
    if a < 1 || a > m || m + 2 > 20 {
        return Err(Error::Domain(format!("prefix family needs 1 <= a <= m <= 18, got a={a}, m={m}")));
    }
    Ok(())
}

fn ints(v: &[i64]) -> Poly {
    Poly::from_ints(v.iter().copied())
}

fn values(v: &[i64]) -> Vec<RBig> {
    v.iter().map(|&k| RBig::from(IBig::from(k))).collect()
}

/// w(0) = 1, w'(0) = -1 and zeros up to the given count.
fn unit_start(count: usize) -> Vec<RBig> {
    let mut v = values(&[1, -1]);
    v.resize(count, RBig::ZERO);
    v
}

/// The known equation for `source`, with its published initial values.
pub fn ode_library(source: OdeSource) -> Result<LinearODE> {
    match source {
        OdeSource::Increasing { m } => {
            check_increasing(m)?;
            LinearODE::new(vec![ints(&[1]); m], unit_start(m - 1))
        }
        OdeSource::Prefix { a, m } => {
            check_prefix(a, m)?;
            // w^{(a+1)} + x^{m-a+1}/(m-a+1)! w' = 0, scaled to integers.
            let k = m - a + 1;
            let mut coeffs = vec![Poly::zero(); a + 2];
            let mut p1 = vec![0i64; k + 1];
            p1[k] = 1;
            coeffs[1] = ints(&p1);
            let f: UBig = factorial(k);
            coeffs[a + 1] = Poly::new(vec![RBig::from(IBig::from(f))]);
            LinearODE::new(coeffs, unit_start(a + 1))
        }
        OdeSource::Class(c) => class_ode(c),
    }
}

fn class_ode(c: ClassId) -> Result<LinearODE> {
    let z = Poly::zero;
    let label = c.to_string();
    let (coeffs, init): (Vec<Poly>, Vec<RBig>) = match label.as_str() {
        "4.I" => return ode_library(OdeSource::Increasing { m: 4 }),
        "4.IV" => (
            vec![
                ints(&[0, 4]),
                ints(&[3, 8]),
                ints(&[6, 5]),
                ints(&[3, 6]),
                ints(&[3, 1]),
                ints(&[0, 1]),
            ],
            values(&[1, -1, 0, 0, 1]),
        ),
        "4.VI" => (vec![z(), ints(&[0, 0, 1]), ints(&[2])], values(&[1, -1])),
        // The published list repeats w'(0) with the value 0 before giving
        // w'(0) = -1; only the latter is consistent with the counts.
        "4.VII" => (vec![z(), ints(&[0, 1]), z(), ints(&[1])], values(&[1, -1, 0])),
        "5.I" => (vec![z(), ints(&[0, 1]), z(), z(), ints(&[1])], unit_start(4)),
        "5.II" => (vec![z(), ints(&[0, 0, 1]), z(), ints(&[2])], unit_start(3)),
        "5.V" => (vec![z(), ints(&[0, 0, 0, 1]), ints(&[6])], unit_start(2)),
        "5.VI" => (vec![ints(&[1]), ints(&[1]), z(), z(), ints(&[1])], unit_start(4)),
        "5.XI" => (
            vec![
                ints(&[0, 3600, 7920, -1620, -3240, 0, -18549]),
                ints(&[4480, 10800, 21840, -1020, -4224, 0, -55647]),
                ints(&[13440, 13520, 18000, 3540, 6768, -12366, -55647]),
                ints(&[13440, 11760, 2480, 540, 12768, -37098, -21297]),
                ints(&[4480, 11760, 6960, -7140, 816, -37098, -26793]),
                ints(&[4480, 2720, -960, 720, 4056, -12366, -8244]),
                ints(&[0, 2720, 320, -3120, -480, -12366, -2748]),
                ints(&[0, 0, 320, 0, -480, 0, -2748]),
            ],
            values(&[1, -1, 0, 0, 0, 1, 0]),
        ),
        "5.XVI" => (vec![z(), ints(&[0, 1]), ints(&[0, 1]), z(), ints(&[1])], unit_start(4)),
        "5.XXII" => (vec![z(), ints(&[0, 1]), ints(&[1]), z(), ints(&[1])], unit_start(4)),
        "5.XXV" => return ode_library(OdeSource::Increasing { m: 5 }),
        _ => return Err(Error::NoKnownOde(label)),
    };
    LinearODE::new(coeffs, init)
}
