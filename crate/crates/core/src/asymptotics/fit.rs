//! Exact interpolation of integer sequences by polynomials and
//! quasi-polynomials in `k`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Coefficients in increasing powers of `k`, trailing zeros trimmed.
pub type Coefficients = Vec<BigRational>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum FitKind {
    Polynomial {
        #[serde(with = "rational_vec")]
        coeffs: Coefficients,
    },
    /// `branches[b]` applies to `k ≡ b (mod period)`.
    QuasiPolynomial {
        period: u32,
        #[serde(with = "rational_vecs")]
        branches: Vec<Coefficients>,
    },
    None,
}

/// An eventual closed form for one entry sequence. Every computed value with
/// `k ≥ valid_from` is reproduced exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FitResult {
    pub kind: FitKind,
    pub valid_from: Option<u32>,
}

impl FitResult {
    pub fn none() -> Self {
        Self {
            kind: FitKind::None,
            valid_from: None,
        }
    }

    pub fn polynomial(&self) -> Option<&Coefficients> {
        match &self.kind {
            FitKind::Polynomial { coeffs } => Some(coeffs),
            _ => None,
        }
    }

    /// Value predicted at `k`, if a closed form was found.
    pub fn eval(&self, k: i64) -> Option<BigRational> {
        match &self.kind {
            FitKind::Polynomial { coeffs } => Some(eval(coeffs, k)),
            FitKind::QuasiPolynomial { period, branches } => {
                Some(eval(&branches[k.rem_euclid(*period as i64) as usize], k))
            }
            FitKind::None => None,
        }
    }
}

impl fmt::Display for FitResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let from = self.valid_from.map(|k| format!(" (k >= {k})")).unwrap_or_default();
        match &self.kind {
            FitKind::Polynomial { coeffs } => write!(f, "{}{from}", format_polynomial(coeffs)),
            FitKind::QuasiPolynomial { period, branches } => {
                let parts: Vec<String> = branches
                    .iter()
                    .enumerate()
                    .map(|(b, c)| format!("k = {b} mod {period}: {}", format_polynomial(c)))
                    .collect();
                write!(f, "{}{from}", parts.join("; "))
            }
            FitKind::None => f.write_str("no fit"),
        }
    }
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn eval(coeffs: &[BigRational], k: i64) -> BigRational {
    let k = BigRational::from_integer(BigInt::from(k));
    coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * &k + c)
}

/// `None` for the zero polynomial.
pub fn degree(coeffs: &[BigRational]) -> Option<usize> {
    coeffs.iter().rposition(|c| !c.is_zero())
}

/// The unique polynomial of degree `< points.len()` through the points, by
/// Newton's divided differences.
pub fn interpolate(points: &[(i64, BigRational)]) -> Coefficients {
    let xs: Vec<BigRational> = points
        .iter()
        .map(|(k, _)| BigRational::from_integer(BigInt::from(*k)))
        .collect();
    let mut dd: Vec<BigRational> = points.iter().map(|(_, v)| v.clone()).collect();
    let m = dd.len();
    for level in 1..m {
        for t in (level..m).rev() {
            dd[t] = (&dd[t] - &dd[t - 1]) / (&xs[t] - &xs[t - level]);
        }
    }
    // expand the Newton form from the innermost factor outward
    let mut coeffs: Coefficients = Vec::new();
    for t in (0..m).rev() {
        // coeffs = coeffs * (k - x_t) + dd[t]
        let mut next = vec![BigRational::zero(); coeffs.len() + 1];
        for (p, c) in coeffs.iter().enumerate() {
            next[p + 1] += c;
            next[p] -= c * &xs[t];
        }
        next[0] += &dd[t];
        coeffs = next;
    }
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    coeffs
}

/// Smallest trailing window (at least `min_window` points) on which the
/// interpolant has degree at most `window - 2`, so that at least one point
/// is a genuine check. Returns the polynomial and the index of the earliest
/// point from which it matches all later points.
pub fn fit_polynomial(points: &[(i64, BigRational)], min_window: usize) -> Option<(Coefficients, usize)> {
    let len = points.len();
    for w in min_window.max(2)..=len {
        let window = &points[len - w..];
        let c = interpolate(window);
        if degree(&c).unwrap_or(0) + 2 <= w {
            let mut start = len - w;
            while start > 0 && eval(&c, points[start - 1].0) == points[start - 1].1 {
                start -= 1;
            }
            return Some((c, start));
        }
    }
    None
}

/// Fits `v(k)` given at increasing, consecutive `k`. A polynomial and a
/// quasi-polynomial of the given period are both tried; the one reproducing
/// the longer suffix wins, the polynomial on ties.
pub fn fit_sequence(points: &[(i64, i64)], min_window: usize, period: u32) -> FitResult {
    let pts: Vec<(i64, BigRational)> = points
        .iter()
        .map(|&(k, v)| (k, BigRational::from_integer(BigInt::from(v))))
        .collect();
    let poly = fit_polynomial(&pts, min_window).map(|(c, start)| (c, pts[start].0));
    let quasi = if period >= 2 {
        fit_quasi(&pts, min_window, period)
    } else {
        None
    };
    match (poly, quasi) {
        (Some((_, from)), Some((branches, qfrom))) if qfrom < from => FitResult {
            kind: FitKind::QuasiPolynomial { period, branches },
            valid_from: Some(qfrom as u32),
        },
        (Some((coeffs, from)), _) => FitResult {
            kind: FitKind::Polynomial { coeffs },
            valid_from: Some(from as u32),
        },
        (None, Some((branches, from))) => FitResult {
            kind: FitKind::QuasiPolynomial { period, branches },
            valid_from: Some(from as u32),
        },
        (None, None) => FitResult::none(),
    }
}

fn fit_quasi(pts: &[(i64, BigRational)], min_window: usize, period: u32) -> Option<(Vec<Coefficients>, i64)> {
    let p = period as i64;
    let mut branches = Vec::new();
    for b in 0..p {
        let branch: Vec<(i64, BigRational)> = pts.iter().filter(|(k, _)| k.rem_euclid(p) == b).cloned().collect();
        let (c, _) = fit_polynomial(&branch, min_window)?;
        branches.push(c);
    }
    // the earliest k after which every value matches its branch
    let mut start = pts.len();
    while start > 0 {
        let (k, v) = &pts[start - 1];
        if eval(&branches[k.rem_euclid(p) as usize], *k) != *v {
            break;
        }
        start -= 1;
    }
    (start < pts.len()).then(|| (branches, pts[start].0))
}

/// Renders `k^2/2 - 3k/2 + 1` as `1/2*k^2 - 3/2*k + 1`.
pub fn format_polynomial(coeffs: &[BigRational]) -> String {
    let mut out = String::new();
    for (p, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let var = match p {
            0 => String::new(),
            1 => "k".to_string(),
            _ => format!("k^{p}"),
        };
        if p == 0 {
            out.push_str(&a.to_string());
        } else if a.is_one() {
            out.push_str(&var);
        } else {
            out.push_str(&format!("{a}*{var}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

mod rational_vec {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|c| c.to_string()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

mod rational_vecs {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Vec<BigRational>], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|b| b.iter().map(|c| c.to_string()).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigRational>>, D::Error> {
        Vec::<Vec<String>>::deserialize(d)?
            .iter()
            .map(|b| b.iter().map(|s| s.parse().map_err(serde::de::Error::custom)).collect())
            .collect()
    }
}
