use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported number of ring variables.
pub const MAX_VARS: usize = 16;

/// A monomial `x_1^{a_1} ... x_n^{a_n}` as a dense exponent vector.
///
/// Variables are positional: index 0 is `x_1`. The derived `Ord` is graded
/// reverse lexicographic within a fixed `n`, which is the ring's canonical
/// order.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    n: u8,
    deg: u32,
}

impl Monomial {
    pub fn new(exps: &[u32]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::InvalidInput(format!(
                "{} variables exceeds the supported maximum of {MAX_VARS}",
                exps.len()
            )));
        }
        let mut e = [0u16; MAX_VARS];
        let mut deg = 0u32;
        for (slot, &a) in e.iter_mut().zip(exps) {
            *slot = u16::try_from(a).map_err(|_| Error::InvalidInput(format!("exponent {a} too large")))?;
            deg += a;
        }
        Ok(Self {
            exps: e,
            n: exps.len() as u8,
            deg,
        })
    }

    /// Builds a monomial from a small literal exponent list; panics on bad input.
    pub fn from_exps(exps: &[u32]) -> Self {
        Self::new(exps).expect("valid exponent vector")
    }

    pub fn one(n: usize) -> Self {
        assert!(n <= MAX_VARS);
        Self {
            exps: [0; MAX_VARS],
            n: n as u8,
            deg: 0,
        }
    }

    /// The variable `x_{i+1}` (0-based index `i`).
    pub fn var(n: usize, i: usize) -> Self {
        let mut m = Self::one(n);
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn nvars(&self) -> usize {
        self.n as usize
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps[..self.n as usize]
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// 1-based index of the last variable dividing `self`.
    pub fn max_index(&self) -> Result<usize> {
        self.exponents()
            .iter()
            .rposition(|&a| a > 0)
            .map(|i| i + 1)
            .ok_or_else(|| Error::UndefinedInput("max index of the monomial 1".into()))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exponents().iter().zip(other.exponents()).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.n, other.n);
        let mut out = *self;
        for i in 0..self.n as usize {
            out.exps[i] += other.exps[i];
        }
        out.deg += other.deg;
        out
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let mut out = *self;
        for i in 0..self.n as usize {
            out.exps[i] -= other.exps[i];
        }
        out.deg -= other.deg;
        Some(out)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        let mut deg = 0;
        for i in 0..self.n as usize {
            out.exps[i] = self.exps[i].max(other.exps[i]);
            deg += out.exps[i] as u32;
        }
        out.deg = deg;
        out
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exponents()
            .iter()
            .zip(other.exponents())
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Multiplies by `x_{i+1}^e`.
    pub fn mul_var(&self, i: usize, e: u32) -> Monomial {
        let mut out = *self;
        out.exps[i] += e as u16;
        out.deg += e;
        out
    }

    /// Divides by `x_{i+1}`; `None` when the exponent is zero.
    pub fn div_var(&self, i: usize) -> Option<Monomial> {
        if self.exps[i] == 0 {
            return None;
        }
        let mut out = *self;
        out.exps[i] -= 1;
        out.deg -= 1;
        Some(out)
    }

    /// Reinterprets the exponent vector in a ring with `n` variables,
    /// truncating or zero-padding.
    pub fn with_nvars(&self, n: usize) -> Monomial {
        let mut out = Monomial::one(n);
        let k = n.min(self.n as usize);
        out.exps[..k].copy_from_slice(&self.exps[..k]);
        out.deg = out.exps[..n].iter().map(|&a| a as u32).sum();
        out
    }

    /// Renders with the given variable names, e.g. `x^2*y`.
    pub fn format_with(&self, names: &[String]) -> String {
        if self.is_one() {
            return "1".into();
        }
        let mut parts = Vec::new();
        for (i, &a) in self.exponents().iter().enumerate() {
            match a {
                0 => {}
                1 => parts.push(names[i].clone()),
                _ => parts.push(format!("{}^{}", names[i], a)),
            }
        }
        parts.join("*")
    }
}

/// Default positional names `x1, ..., xn`.
pub fn default_var_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(&default_var_names(self.nvars())))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| TermOrder::GrevLex.cmp(self, other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Monomial orders.
///
/// `Elimination { first }` is the block order that compares the first
/// `first` variables by grevlex and breaks ties by grevlex on the rest; any
/// monomial involving one of the first variables beats every monomial that
/// does not.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TermOrder {
    GrevLex,
    Lex,
    Elimination { first: usize },
}

/// Order key: lexicographic comparison of keys agrees with the term order.
pub(crate) type SortKey = [u16; MAX_VARS + 2];

const TOP: u16 = u16::MAX;

impl TermOrder {
    /// Checked comparison.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.n != b.n {
            return Err(Error::DimensionMismatch {
                expected: a.nvars(),
                found: b.nvars(),
            });
        }
        Ok(self.cmp(a, b))
    }

    /// Unchecked comparison; both monomials must live in the same ring.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let n = a.nvars();
        match *self {
            TermOrder::GrevLex => grevlex(&a.exps[..n], a.deg, &b.exps[..n], b.deg),
            TermOrder::Lex => a.exps[..n].cmp(&b.exps[..n]),
            TermOrder::Elimination { first } => {
                let k = first.min(n);
                let da: u32 = a.exps[..k].iter().map(|&e| e as u32).sum();
                let db: u32 = b.exps[..k].iter().map(|&e| e as u32).sum();
                grevlex(&a.exps[..k], da, &b.exps[..k], db)
                    .then_with(|| grevlex(&a.exps[k..n], a.deg - da, &b.exps[k..n], b.deg - db))
            }
        }
    }

    pub(crate) fn key(&self, m: &Monomial) -> SortKey {
        let n = m.nvars();
        let mut key = [0u16; MAX_VARS + 2];
        match *self {
            TermOrder::GrevLex => grevlex_key(&m.exps[..n], &mut key),
            TermOrder::Lex => key[..n].copy_from_slice(&m.exps[..n]),
            TermOrder::Elimination { first } => {
                let k = first.min(n);
                grevlex_key(&m.exps[..k], &mut key[..k + 1]);
                grevlex_key(&m.exps[k..n], &mut key[k + 1..n + 2]);
            }
        }
        key
    }

    pub(crate) fn decode(&self, key: &SortKey, n: usize) -> Monomial {
        let mut exps = [0u16; MAX_VARS];
        match *self {
            TermOrder::GrevLex => grevlex_decode(&key[..n + 1], &mut exps[..n]),
            TermOrder::Lex => exps[..n].copy_from_slice(&key[..n]),
            TermOrder::Elimination { first } => {
                let k = first.min(n);
                grevlex_decode(&key[..k + 1], &mut exps[..k]);
                grevlex_decode(&key[k + 1..n + 2], &mut exps[k..n]);
            }
        }
        Monomial {
            exps,
            n: n as u8,
            deg: exps.iter().map(|&e| e as u32).sum(),
        }
    }
}

impl fmt::Display for TermOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermOrder::GrevLex => write!(f, "grevlex"),
            TermOrder::Lex => write!(f, "lex"),
            TermOrder::Elimination { first } => write!(f, "elim({first})"),
        }
    }
}

fn grevlex(a: &[u16], da: u32, b: &[u16], db: u32) -> Ordering {
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            if a[i] != b[i] {
                // smaller exponent in the last differing variable wins
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

// key = [deg, TOP - a_n, ..., TOP - a_1]
fn grevlex_key(a: &[u16], key: &mut [u16]) {
    let deg: u32 = a.iter().map(|&e| e as u32).sum();
    key[0] = deg as u16;
    for (slot, &e) in key[1..].iter_mut().zip(a.iter().rev()) {
        *slot = TOP - e;
    }
}

fn grevlex_decode(key: &[u16], out: &mut [u16]) {
    for (slot, &k) in out.iter_mut().rev().zip(&key[1..]) {
        *slot = TOP - k;
    }
}
