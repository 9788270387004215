//! Pure diagrams and the greedy decomposition of Betti tables into positive
//! rational combinations of them.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::betti::BettiTable;
use crate::error::{Error, Result};

/// Strictly increasing internal degrees `d_0 < d_1 < ... < d_s`, `d_i` sitting
/// in homological position `i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct DegreeSequence(Vec<u32>);

impl DegreeSequence {
    pub fn new(degrees: Vec<u32>) -> Result<Self> {
        if degrees.is_empty() || degrees.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput(format!(
                "degrees {degrees:?} are not strictly increasing"
            )));
        }
        Ok(Self(degrees))
    }

    pub fn degrees(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Adds `t` to every degree.
    pub fn translate(&self, t: u32) -> Self {
        Self(self.0.iter().map(|d| d + t).collect())
    }

    /// Chain order: `self ≤ other` when `self` is at least as long and
    /// smaller or equal on the common positions.
    pub fn chain_le(&self, other: &Self) -> bool {
        self.len() >= other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn chain_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self.chain_le(other), other.chain_le(self)) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => None,
        }
    }
}

impl TryFrom<Vec<u32>> for DegreeSequence {
    type Error = Error;

    fn try_from(v: Vec<u32>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<DegreeSequence> for Vec<u32> {
    fn from(d: DegreeSequence) -> Self {
        d.0
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Sparse table of rationals keyed like [`BettiTable`].
pub type RationalTable = BTreeMap<(usize, u32), BigRational>;

/// Entry `(i, d_i)` equals `∏_{j≠i} 1/|d_j - d_i|`.
pub fn pure_diagram(ds: &DegreeSequence) -> RationalTable {
    let d = ds.degrees();
    d.iter()
        .enumerate()
        .map(|(i, &di)| {
            let prod = d
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(BigInt::one(), |acc, (_, &dj)| acc * BigInt::from(dj.abs_diff(di)));
            ((i, di), BigRational::new(BigInt::one(), prod))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Part {
    #[serde(with = "rational_string")]
    pub weight: BigRational,
    pub degrees: DegreeSequence,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub parts: Vec<Part>,
}

impl Decomposition {
    /// `Σ weight · pure_diagram(degrees)`.
    pub fn sum(&self) -> RationalTable {
        let mut out = RationalTable::new();
        for p in &self.parts {
            for (key, v) in pure_diagram(&p.degrees) {
                *out.entry(key).or_insert_with(BigRational::zero) += &p.weight * v;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    pub fn is_chain(&self) -> bool {
        self.parts.windows(2).all(|w| w[0].degrees.chain_le(&w[1].degrees))
    }

    pub fn reproduces(&self, t: &BettiTable) -> bool {
        self.sum() == to_rational(t)
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .parts
            .iter()
            .map(|p| format!("{}*pi{}", p.weight, p.degrees))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

fn to_rational(t: &BettiTable) -> RationalTable {
    t.entries()
        .map(|(key, v)| (key, BigRational::from_integer(BigInt::from(v))))
        .collect()
}

/// Greedy decomposition: take the least degree in each column while these
/// increase strictly, subtract the largest multiple of that pure diagram
/// that keeps every entry nonnegative, and repeat until nothing is left.
pub fn bs_decompose(t: &BettiTable) -> Result<Decomposition> {
    if t.is_empty() {
        return Err(Error::EmptyTable);
    }
    let mut rem = to_rational(t);
    let mut dec = Decomposition::default();
    while !rem.is_empty() {
        let mut degrees: Vec<u32> = Vec::new();
        for i in 0.. {
            let Some(d) = rem.keys().filter(|(c, _)| *c == i).map(|&(_, d)| d).min() else {
                break;
            };
            if degrees.last().is_some_and(|&last| d <= last) {
                break;
            }
            degrees.push(d);
        }
        if degrees.is_empty() {
            return Err(Error::NotDecomposable("column 0 is exhausted before the others".into()));
        }
        let ds = DegreeSequence::new(degrees)?;
        let pure = pure_diagram(&ds);
        let weight = pure
            .iter()
            .map(|(key, v)| &rem[key] / v)
            .min()
            .expect("nonempty sequence");
        for (key, v) in &pure {
            let left = &rem[key] - &weight * v;
            if left.is_negative() {
                return Err(Error::NotDecomposable(format!("entry {key:?} went negative")));
            }
            if left.is_zero() {
                rem.remove(key);
            } else {
                rem.insert(*key, left);
            }
        }
        if let Some(prev) = dec.parts.last() {
            if !prev.degrees.chain_le(&ds) {
                return Err(Error::NotDecomposable(format!(
                    "{} does not follow {} in a chain",
                    ds, prev.degrees
                )));
            }
        }
        dec.parts.push(Part { weight, degrees: ds });
    }
    Ok(dec)
}

mod rational_string {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}
