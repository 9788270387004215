//! Betti tables along a graded system `k ↦ T(I^k)`: stabilization of the
//! support shape, eventual closed forms for entries, and the bounds they obey.

mod fit;
mod spread;

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::betti::{ek_betti, koszul_betti_auto, monomial_betti, BettiTable};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::gin::{gin_of_power, GinCertificate, GinOptions};
use crate::groebner::{ideal_power, initial_ideal};
use crate::ideal::Ideal;
use crate::monomial::TermOrder;

pub use fit::{
    degree, eval, fit_polynomial, fit_sequence, format_polynomial, interpolate, rational, Coefficients, FitKind,
    FitResult,
};
pub use spread::analytic_spread;

/// How the `k`-th member of the system is built from `I^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", content = "order", rename_all = "snake_case")]
pub enum Transform {
    Power,
    Initial(TermOrder),
    Gin(TermOrder),
}

#[derive(Clone, Debug)]
pub struct SystemSpec<F: Field> {
    pub base: Ideal<F>,
    pub transform: Transform,
    pub k_min: u32,
    pub k_max: u32,
    /// Translation per step; defaults to the generating degree of `base`.
    pub r: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeriesOptions {
    pub gin: GinOptions,
    pub min_window: usize,
    pub stabilization_window: usize,
    pub period: u32,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        Self {
            gin: GinOptions::default(),
            min_window: 3,
            stabilization_window: 3,
            period: 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stabilization {
    pub stabilized: bool,
    /// Least `k` from which every later computed shape is the same; present
    /// only when that trailing run has at least `window` members.
    pub k0: Option<u32>,
    pub r: u32,
    pub window: usize,
    /// Length of the trailing run of identical shapes.
    pub trailing: usize,
}

/// Fit for the sequence `β_{i, rk + i + offset}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryFit {
    pub i: usize,
    pub offset: i64,
    pub fit: FitResult,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowCheck {
    pub c: i64,
    pub per_k: BTreeMap<u32, bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesReport {
    pub transform: Transform,
    pub k_min: u32,
    pub k_max: u32,
    pub tables: BTreeMap<u32, BettiTable>,
    pub certificates: BTreeMap<u32, GinCertificate>,
    pub failures: BTreeMap<u32, String>,
    pub stabilization: Stabilization,
    pub fits: Vec<EntryFit>,
    pub window: Option<WindowCheck>,
    pub spread: Option<usize>,
}

impl SeriesReport {
    pub fn fit(&self, i: usize, offset: i64) -> Option<&FitResult> {
        self.fits
            .iter()
            .find(|f| f.i == i && f.offset == offset)
            .map(|f| &f.fit)
    }
}

/// One computed member of a system: its table and, for gins, the certificate.
pub type Member = (BettiTable, Option<GinCertificate>);

/// Per-`k` seed so that each member uses its own reproducible stream.
pub fn member_seed(seed: u64, k: u32) -> u64 {
    let mut z = seed ^ (k as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Table of the `k`-th member, with the gin certificate when one applies.
pub fn member_table<F: Field>(base: &Ideal<F>, transform: Transform, k: u32, gin_opts: GinOptions) -> Result<Member> {
    match transform {
        Transform::Power => Ok((koszul_betti_auto(&ideal_power(base, k)?)?, None)),
        Transform::Initial(order) => Ok((monomial_betti(&initial_ideal(&ideal_power(base, k)?, order)?), None)),
        Transform::Gin(order) => {
            let opts = GinOptions {
                seed: member_seed(gin_opts.seed, k),
                ..gin_opts
            };
            let (m, cert) = gin_of_power(base, k, order, opts)?;
            if !cert.certified() {
                return Err(Error::GenericityFailure(format!(
                    "gin of power {k} is not certified: {cert:?}"
                )));
            }
            Ok((ek_betti(&m)?, Some(cert)))
        }
    }
}

pub fn compute_series<F: Field>(spec: &SystemSpec<F>, opts: SeriesOptions) -> Result<SeriesReport> {
    check_range(spec)?;
    let members: Vec<(u32, Result<Member>)> = (spec.k_min..=spec.k_max)
        .into_par_iter()
        .map(|k| (k, member_table(&spec.base, spec.transform, k, opts.gin)))
        .collect();
    assemble_report(spec, members, opts)
}

fn check_range<F: Field>(spec: &SystemSpec<F>) -> Result<()> {
    if spec.k_min == 0 || spec.k_min > spec.k_max {
        return Err(Error::InvalidInput(format!(
            "bad k range {}..{}",
            spec.k_min, spec.k_max
        )));
    }
    Ok(())
}

/// Builds the report from per-`k` results computed elsewhere (for example
/// loaded from a cache). Failed members are recorded, not fatal.
pub fn assemble_report<F: Field>(
    spec: &SystemSpec<F>,
    members: Vec<(u32, Result<Member>)>,
    opts: SeriesOptions,
) -> Result<SeriesReport> {
    check_range(spec)?;
    let r = match spec.r {
        Some(r) => r,
        None => spec.base.equigenerated_degree().ok_or(Error::NotEquigenerated)?,
    };
    let mut tables = BTreeMap::new();
    let mut certificates = BTreeMap::new();
    let mut failures = BTreeMap::new();
    for (k, res) in members {
        match res {
            Ok((t, cert)) => {
                tables.insert(k, t);
                if let Some(c) = cert {
                    certificates.insert(k, c);
                }
            }
            Err(e) => {
                failures.insert(k, e.to_string());
            }
        }
    }
    let run = trailing_run(&tables);
    let stabilization = detect_stabilization(&run, r, opts.stabilization_window);
    let fits = fit_entries(&run, r, opts.min_window, opts.period);
    let n = spec.base.nvars();
    let window = window_constant(&run, &stabilization, r).map(|c| WindowCheck {
        c,
        per_k: tables.iter().map(|(&k, t)| (k, check_window(t, k, r, c, n))).collect(),
    });
    let spread = match spec.base.equigenerated_degree() {
        Some(_) => analytic_spread(&spec.base).ok(),
        None => None,
    };
    Ok(SeriesReport {
        transform: spec.transform,
        k_min: spec.k_min,
        k_max: spec.k_max,
        tables,
        certificates,
        failures,
        stabilization,
        fits,
        window,
        spread,
    })
}

/// The longest run of consecutive `k` ending at the largest computed `k`.
fn trailing_run(tables: &BTreeMap<u32, BettiTable>) -> BTreeMap<u32, BettiTable> {
    let mut out = BTreeMap::new();
    let mut expect: Option<u32> = None;
    for (&k, t) in tables.iter().rev() {
        if expect.is_some_and(|e| e != k) {
            break;
        }
        out.insert(k, t.clone());
        expect = k.checked_sub(1);
    }
    out
}

/// Support of a table translated by `rk`: pairs `(i, j - i - rk)`.
pub fn shape(t: &BettiTable, k: u32, r: u32) -> BTreeSet<(usize, i64)> {
    t.entries()
        .map(|((i, j), _)| (i, j as i64 - i as i64 - (r as i64) * (k as i64)))
        .collect()
}

/// Expects consecutive `k`. A `k0` is reported only if the trailing run of
/// identical shapes has at least `window` members.
pub fn detect_stabilization(tables: &BTreeMap<u32, BettiTable>, r: u32, window: usize) -> Stabilization {
    let shapes: Vec<(u32, BTreeSet<(usize, i64)>)> = tables.iter().map(|(&k, t)| (k, shape(t, k, r))).collect();
    let mut trailing = 0;
    let mut k0 = None;
    if let Some((_, last)) = shapes.last() {
        for (k, s) in shapes.iter().rev() {
            if s != last {
                break;
            }
            trailing += 1;
            k0 = Some(*k);
        }
    }
    let stabilized = trailing >= window.max(2);
    Stabilization {
        stabilized,
        k0: if stabilized { k0 } else { None },
        r,
        window,
        trailing,
    }
}

/// Fits every entry `(i, offset)` that is nonzero in the last table.
pub fn fit_entries(tables: &BTreeMap<u32, BettiTable>, r: u32, min_window: usize, period: u32) -> Vec<EntryFit> {
    let Some((&k_last, last)) = tables.iter().next_back() else {
        return Vec::new();
    };
    shape(last, k_last, r)
        .into_iter()
        .map(|(i, offset)| {
            let points: Vec<(i64, i64)> = tables
                .iter()
                .map(|(&k, t)| {
                    let j = r as i64 * k as i64 + i as i64 + offset;
                    let v = if j < 0 { 0 } else { t.get(i, j as usize) as i64 };
                    (k as i64, v)
                })
                .collect();
            EntryFit {
                i,
                offset,
                fit: fit_sequence(&points, min_window, period),
            }
        })
        .collect()
}

/// Every nonzero entry lies in rows `rk..=rk + c` and columns `≤ n - 1`.
pub fn check_window(t: &BettiTable, k: u32, r: u32, c: i64, n: usize) -> bool {
    let lo = r as i64 * k as i64;
    t.entries().all(|((i, j), _)| {
        let row = j as i64 - i as i64;
        i < n.max(1) && row >= lo && row <= lo + c
    })
}

/// `reg(T_{k0}) - r k0` for a stabilized run, otherwise taken at the last `k`.
fn window_constant(tables: &BTreeMap<u32, BettiTable>, stab: &Stabilization, r: u32) -> Option<i64> {
    let k = stab.k0.or_else(|| tables.keys().next_back().copied())?;
    let reg = tables.get(&k)?.regularity().ok()?;
    Some(reg - r as i64 * k as i64)
}

/// Every eventually nonzero fit has positive leading coefficient and degree
/// below `spread`.
pub fn verify_degree_bounds(fits: &[EntryFit], spread: usize) -> bool {
    let ok = |c: &Coefficients| match degree(c) {
        None => true,
        Some(d) => d < spread && c[d].is_positive(),
    };
    fits.iter().all(|f| match &f.fit.kind {
        FitKind::Polynomial { coeffs } => ok(coeffs),
        FitKind::QuasiPolynomial { branches, .. } => branches.iter().all(ok),
        FitKind::None => true,
    })
}

/// Whether `k0` of the gin system is at most `k0` of the power system.
pub fn compare_stabilization_indices(power: &SeriesReport, gin: &SeriesReport) -> Result<bool> {
    match (power.stabilization.k0, gin.stabilization.k0) {
        (Some(p), Some(g)) => Ok(g <= p),
        _ => Err(Error::InvalidInput(
            "both systems must be stabilized within the computed range".into(),
        )),
    }
}
