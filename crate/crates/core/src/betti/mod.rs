//! Graded Betti tables and the three routes used to compute them.
//!
//! Tables are tables of the ideal: `β_{0,j}` counts minimal generators.

mod ek;
mod koszul;
mod monomial;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;

pub use ek::ek_betti;
pub use koszul::{koszul_betti, koszul_betti_auto, KoszulBetti};
pub use monomial::monomial_betti;

/// Whether a table describes `I` or `S/I`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Subject {
    #[default]
    OfIdeal,
    OfQuotient,
}

/// Sparse map `(i, j) -> β_{i,j}` holding only nonzero entries; `j` is the
/// internal degree, so the entry is displayed in column `i`, row `j - i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BettiTable {
    subject: Subject,
    entries: BTreeMap<(usize, u32), u64>,
}

impl BettiTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries(entries: impl IntoIterator<Item = ((usize, u32), u64)>) -> Self {
        let mut t = Self::new();
        for ((i, j), v) in entries {
            t.add(i, j, v);
        }
        t
    }

    /// Builds a table from `(column, row, value)` triples as printed.
    pub fn from_rows(entries: &[(usize, u32, u64)]) -> Self {
        Self::from_entries(entries.iter().map(|&(i, row, v)| ((i, row + i as u32), v)))
    }

    pub fn subject(&self) -> Subject {
        self.subject
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j as u32)).copied().unwrap_or(0)
    }

    /// The entry in column `i`, row `row`.
    pub fn at_row(&self, i: usize, row: u32) -> u64 {
        self.entries.get(&(i, row + i as u32)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, i: usize, j: u32, v: u64) {
        if v == 0 {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn add(&mut self, i: usize, j: u32, v: u64) {
        if v > 0 {
            *self.entries.entry((i, j)).or_insert(0) += v;
        }
    }

    /// Nonzero entries as `((i, j), value)` in increasing `(i, j)`.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, u32), u64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    /// Largest homological index with a nonzero entry.
    pub fn projdim(&self) -> Result<usize> {
        self.entries.keys().map(|&(i, _)| i).max().ok_or(Error::EmptyTable)
    }

    /// `max (j - i)` over nonzero entries.
    pub fn regularity(&self) -> Result<i64> {
        self.entries
            .keys()
            .map(|&(i, j)| j as i64 - i as i64)
            .max()
            .ok_or(Error::EmptyTable)
    }

    pub fn max_internal_degree(&self) -> Option<u32> {
        self.entries.keys().map(|&(_, j)| j).max()
    }

    /// Rows `j - i` that contain a nonzero entry, ascending.
    pub fn rows(&self) -> Vec<u32> {
        let mut rows: Vec<u32> = self.entries.keys().map(|&(i, j)| j - i as u32).collect();
        rows.sort_unstable();
        rows.dedup();
        rows
    }

    /// The table of `S/I` from a table of `I`, or back.
    pub fn shifted_subject(&self) -> Self {
        let mut out = Self::new();
        match self.subject {
            Subject::OfIdeal => {
                out.subject = Subject::OfQuotient;
                out.entries.insert((0, 0), 1);
                for ((i, j), v) in self.entries() {
                    out.entries.insert((i + 1, j), v);
                }
            }
            Subject::OfQuotient => {
                for ((i, j), v) in self.entries() {
                    if i > 0 {
                        out.entries.insert((i - 1, j), v);
                    }
                }
            }
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct EntryRepr {
    i: usize,
    j: u32,
    value: u64,
}

#[derive(Serialize, Deserialize)]
struct TableRepr {
    subject: Subject,
    entries: Vec<EntryRepr>,
}

impl Serialize for BettiTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TableRepr {
            subject: self.subject,
            entries: self
                .entries()
                .map(|((i, j), value)| EntryRepr { i, j, value })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BettiTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = TableRepr::deserialize(d)?;
        let mut t = BettiTable::from_entries(repr.entries.into_iter().map(|e| ((e.i, e.j), e.value)));
        t.subject = repr.subject;
        Ok(t)
    }
}

/// A nonzero entry sitting at the upper left corner of a block of zeros.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ExtremalEntry {
    pub i: usize,
    pub row: u32,
    pub value: u64,
}

/// Entries `β_{i,i+j} ≠ 0` with `β_{k,k+l} = 0` whenever `k ≥ i`, `l ≥ j`,
/// `(k, l) ≠ (i, j)`.
pub fn extremal_entries(t: &BettiTable) -> Vec<ExtremalEntry> {
    let cells: Vec<(usize, u32, u64)> = t.entries().map(|((i, j), v)| (i, j - i as u32, v)).collect();
    cells
        .iter()
        .filter(|&&(i, row, _)| !cells.iter().any(|&(k, l, _)| k >= i && l >= row && (k, l) != (i, row)))
        .map(|&(i, row, value)| ExtremalEntry { i, row, value })
        .collect()
}

/// Counts `c_{s,r}` of consecutive cancellations between `(s, r)` and
/// `(s + 1, r)`, keyed by `(s, r)` with `r` the internal degree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CancellationWitness {
    pub moves: BTreeMap<(usize, u32), u64>,
}

impl CancellationWitness {
    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Applies the moves to `source`, failing if an entry would go negative.
    pub fn apply(&self, source: &BettiTable) -> Result<BettiTable> {
        let mut out = source.clone();
        for (&(s, r), &c) in &self.moves {
            for i in [s, s + 1] {
                let v = out.get(i, r as usize);
                if v < c {
                    return Err(Error::Infeasible(format!("entry ({i}, {r}) would become negative")));
                }
                out.set(i, r, v - c);
            }
        }
        Ok(out)
    }
}

/// Solves `d_i = c_{i-1} + c_i` in each internal degree, where
/// `d_i = source_{i,r} - target_{i,r}`.
pub fn cancellation_witness(source: &BettiTable, target: &BettiTable) -> Result<CancellationWitness> {
    if source.subject() != target.subject() {
        return Err(Error::InvalidInput("tables have different subjects".into()));
    }
    let mut degrees: Vec<u32> = source.entries().chain(target.entries()).map(|((_, j), _)| j).collect();
    degrees.sort_unstable();
    degrees.dedup();
    let top = source
        .entries()
        .chain(target.entries())
        .map(|((i, _), _)| i)
        .max()
        .unwrap_or(0);
    let mut witness = CancellationWitness::default();
    for r in degrees {
        let mut carry: i128 = 0;
        for i in 0..=top + 1 {
            let d = source.get(i, r as usize) as i128 - target.get(i, r as usize) as i128;
            if d < 0 {
                return Err(Error::Infeasible(format!("target exceeds source at ({i}, {r})")));
            }
            let c = d - carry;
            if c < 0 {
                return Err(Error::Infeasible(format!("negative cancellation count at ({i}, {r})")));
            }
            if c > 0 {
                witness.moves.insert((i, r), c as u64);
            }
            carry = c;
        }
        if carry != 0 {
            return Err(Error::Infeasible(format!("residual in degree {r}")));
        }
    }
    Ok(witness)
}

/// `m[(i, δ)]`: minimal generators of degree `δ` whose largest variable index
/// (1-based) is `i`. The generator `1`, if present, is filed under `i = 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorStats {
    pub m: BTreeMap<(usize, u32), usize>,
}

impl GeneratorStats {
    pub fn get(&self, i: usize, degree: u32) -> usize {
        self.m.get(&(i, degree)).copied().unwrap_or(0)
    }

    pub fn count_in_degree(&self, degree: u32) -> usize {
        self.m.iter().filter(|(&(_, d), _)| d == degree).map(|(_, &c)| c).sum()
    }
}

pub fn generator_stats(m: &MonomialIdeal) -> GeneratorStats {
    let mut stats = GeneratorStats::default();
    for g in m.generators() {
        let i = g.max_index().unwrap_or(0);
        *stats.m.entry((i, g.degree())).or_insert(0) += 1;
    }
    stats
}
