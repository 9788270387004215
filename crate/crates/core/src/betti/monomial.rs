use std::collections::HashMap;

use rayon::prelude::*;

use super::BettiTable;
use crate::field::{Field, Rationals};
use crate::ideal::MonomialIdeal;
use crate::linalg::{rank, SparseRow};
use crate::monomial::Monomial;

/// Betti table of a monomial ideal from the upper Koszul simplicial complexes
/// `K^b = {F ⊆ [n] : x^{b - F} ∈ M}`, with `β_{i,b} = dim H̃_{i-1}(K^b; Q)`.
///
/// Only multidegrees `b` in the lcm lattice can contribute, and those lie on
/// the grid of exponent values that occur among the generators.
pub fn monomial_betti(m: &MonomialIdeal) -> BettiTable {
    let mut table = BettiTable::new();
    if m.is_empty() {
        return table;
    }
    if m.is_unit() {
        table.add(0, 0, 1);
        return table;
    }
    let n = m.nvars();
    let grid: Vec<Vec<u32>> = (0..n)
        .map(|l| {
            let mut vals: Vec<u32> = m.generators().iter().map(|g| g.exponent(l)).collect();
            vals.push(0);
            vals.sort_unstable();
            vals.dedup();
            vals
        })
        .collect();
    let first = grid[0].clone();
    let parts: Vec<Vec<(usize, u32, u64)>> = first
        .par_iter()
        .map(|&b0| {
            let mut out = Vec::new();
            let mut idx = vec![0usize; n];
            loop {
                let mut b: Vec<u32> = (0..n).map(|l| grid[l][idx[l]]).collect();
                b[0] = b0;
                if let Some(lcm) = lcm_of_divisors(m, &b) {
                    if lcm.exponents().iter().zip(&b).all(|(&e, &v)| e as u32 == v) {
                        let deg: u32 = b.iter().sum();
                        for (i, v) in upper_koszul_homology(m, &b).into_iter().enumerate() {
                            if v > 0 {
                                out.push((i, deg, v));
                            }
                        }
                    }
                }
                // odometer over coordinates 1..n
                let mut l = 1;
                while l < n {
                    idx[l] += 1;
                    if idx[l] < grid[l].len() {
                        break;
                    }
                    idx[l] = 0;
                    l += 1;
                }
                if l >= n {
                    break;
                }
            }
            out
        })
        .collect();
    for (i, j, v) in parts.into_iter().flatten() {
        table.add(i, j, v);
    }
    table
}

fn lcm_of_divisors(m: &MonomialIdeal, b: &[u32]) -> Option<Monomial> {
    let mut lcm: Option<Monomial> = None;
    for g in m.generators() {
        if g.exponents().iter().zip(b).all(|(&e, &v)| e as u32 <= v) {
            lcm = Some(match lcm {
                None => *g,
                Some(l) => l.lcm(g),
            });
        }
    }
    lcm
}

/// `dim H̃_{i-1}(K^b)` for `i = 0..=n`.
fn upper_koszul_homology(m: &MonomialIdeal, b: &[u32]) -> Vec<u64> {
    let n = b.len();
    let support: u32 = (0..n).filter(|&l| b[l] > 0).fold(0, |acc, l| acc | (1 << l));
    // faces grouped by cardinality
    let mut faces: Vec<Vec<u32>> = vec![Vec::new(); n + 1];
    for f in 0..(1u32 << n) {
        if f & !support != 0 {
            continue;
        }
        let e: Vec<u32> = (0..n).map(|l| b[l] - ((f >> l) & 1)).collect();
        if m.contains(&Monomial::from_exps(&e)) {
            faces[f.count_ones() as usize].push(f);
        }
    }
    let q = Rationals;
    let index: Vec<HashMap<u32, usize>> = faces
        .iter()
        .map(|fs| fs.iter().enumerate().map(|(k, &f)| (f, k)).collect())
        .collect();
    // ranks[s] = rank of the boundary from size-s faces to size-(s-1) faces
    let mut ranks = vec![0usize; n + 2];
    for s in 1..=n {
        if faces[s].is_empty() || faces[s - 1].is_empty() {
            continue;
        }
        let rows = faces[s].iter().map(|&f| {
            let mut row: SparseRow<_> = Vec::new();
            let mut sign = 1i64;
            for l in 0..n {
                if f & (1 << l) != 0 {
                    if let Some(&c) = index[s - 1].get(&(f & !(1 << l))) {
                        row.push((c, q.from_i64(sign)));
                    }
                    sign = -sign;
                }
            }
            row.sort_by_key(|(c, _)| *c);
            row
        });
        ranks[s] = rank(&q, rows);
    }
    (0..=n)
        .map(|s| (faces[s].len() - ranks[s] - ranks[s + 1]) as u64)
        .collect()
}
