use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{monomial_betti, BettiTable};
use crate::error::Result;
use crate::field::Field;
use crate::groebner::buchberger;
use crate::ideal::{monomials_of_degree, Ideal, MonomialIdeal};
use crate::linalg::{rank, SparseRow};
use crate::monomial::{Monomial, TermOrder};

/// Output of [`koszul_betti`]. `truncated` is set when the cap lies below the
/// largest internal degree that can carry a nonzero entry, so entries above
/// the cap may be missing. The bound comes from `in(I)` and can exceed the
/// true support of `β(I)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KoszulBetti {
    pub table: BettiTable,
    pub truncated: bool,
    /// Largest internal degree in the support of `β(in(I))`, an upper bound
    /// for the support of `β(I)`.
    pub support_bound: u32,
}

/// Normal forms of all degree-`e` monomials modulo the ideal, expressed in
/// the standard monomials of that degree.
struct GradedPiece<E> {
    standard: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    nf: HashMap<Monomial, Vec<(usize, E)>>,
}

impl<E: Clone> GradedPiece<E> {
    fn dim(&self) -> usize {
        self.standard.len()
    }

    fn normal_form(&self, u: &Monomial, one: &E) -> Vec<(usize, E)> {
        match self.index.get(u) {
            Some(&k) => vec![(k, one.clone())],
            None => self.nf[u].clone(),
        }
    }
}

fn graded_piece<F: Field>(
    field: &F,
    n: usize,
    e: u32,
    lead: &MonomialIdeal,
    gb: &[Vec<(Monomial, F::Elem)>],
) -> GradedPiece<F::Elem> {
    let mut standard = Vec::new();
    let mut index = HashMap::new();
    let mut nf: HashMap<Monomial, Vec<(usize, F::Elem)>> = HashMap::new();
    // ascending grevlex: every tail term is handled before the monomial that needs it
    for u in monomials_of_degree(n, e) {
        if !lead.contains(&u) {
            index.insert(u, standard.len());
            standard.push(u);
            continue;
        }
        let g = gb
            .iter()
            .find(|g| g[0].0.divides(&u))
            .expect("some leading monomial divides");
        let q = u.div(&g[0].0).expect("divides");
        let mut acc: BTreeMap<usize, F::Elem> = BTreeMap::new();
        for (t, a) in &g[1..] {
            let v = q.mul(t);
            let coeff = field.neg(a);
            let terms = match index.get(&v) {
                Some(&k) => vec![(k, field.one())],
                None => nf[&v].clone(),
            };
            for (k, c) in terms {
                let add = field.mul(&coeff, &c);
                let slot = acc.entry(k).or_insert_with(|| field.zero());
                *slot = field.add(slot, &add);
            }
        }
        nf.insert(u, acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect());
    }
    GradedPiece { standard, index, nf }
}

/// Graded Betti numbers of `I` in internal degrees `≤ degree_cap`, read off
/// the homology of the Koszul complex on the variables tensored with `S/I`:
/// `β_{i,j}(I) = dim H_{i+1}(x; S/I)_j`. Ranks are exact over the
/// coefficient field, on bases of standard monomials for a grevlex Gröbner
/// basis.
pub fn koszul_betti<F: Field>(ideal: &Ideal<F>, degree_cap: u32) -> Result<KoszulBetti> {
    let n = ideal.nvars();
    let field = ideal.field().clone();
    if ideal.is_zero() {
        return Ok(KoszulBetti {
            table: BettiTable::new(),
            truncated: false,
            support_bound: 0,
        });
    }
    let gb = buchberger(ideal, TermOrder::GrevLex)?;
    let lead = gb.initial_ideal();
    let support_bound = monomial_betti(&lead).max_internal_degree().unwrap_or(0);
    if lead.is_unit() {
        return Ok(KoszulBetti {
            table: BettiTable::from_entries([((0, 0), 1)]),
            truncated: false,
            support_bound,
        });
    }
    let elements: Vec<Vec<(Monomial, F::Elem)>> = gb
        .elements()
        .into_iter()
        .map(|p| p.monic(TermOrder::GrevLex).into_terms())
        .collect();
    let top = degree_cap.min(support_bound);
    let bottom = lead.generators().iter().map(|g| g.degree()).min().unwrap_or(0);
    let pieces: Vec<GradedPiece<F::Elem>> = (0..=top)
        .into_par_iter()
        .map(|e| graded_piece(&field, n, e, &lead, &elements))
        .collect();

    // faces[p] = subsets of [n] of size p, as bitmasks
    let mut faces: Vec<Vec<u32>> = vec![Vec::new(); n + 1];
    for f in 0..(1u32 << n) {
        faces[f.count_ones() as usize].push(f);
    }
    let face_index: HashMap<u32, usize> = faces
        .iter()
        .flat_map(|fs| fs.iter().enumerate().map(|(k, &f)| (f, k)))
        .collect();

    let columns: Vec<Vec<(usize, u32, u64)>> = (bottom..=top)
        .into_par_iter()
        .map(|j| {
            // dims[p] = dim K_p(j), ranks[p] = rank of d_p : K_p(j) -> K_{p-1}(j)
            let dims: Vec<usize> = (0..=n)
                .map(|p| {
                    if p as u32 > j {
                        0
                    } else {
                        faces[p].len() * pieces[(j - p as u32) as usize].dim()
                    }
                })
                .collect();
            let mut ranks = vec![0usize; n + 2];
            for p in 1..=n {
                if p as u32 > j || dims[p] == 0 || dims[p - 1] == 0 {
                    continue;
                }
                let src = &pieces[(j - p as u32) as usize];
                let dst = &pieces[(j - p as u32 + 1) as usize];
                let one = field.one();
                let rows = faces[p].iter().flat_map(|&f| src.standard.iter().map(move |u| (f, *u)));
                let rows: Vec<SparseRow<F::Elem>> = rows
                    .map(|(f, u)| {
                        let mut row = Vec::new();
                        let mut positive = true;
                        for l in 0..n {
                            if f & (1 << l) == 0 {
                                continue;
                            }
                            let base = face_index[&(f & !(1 << l))] * dst.dim();
                            for (k, c) in dst.normal_form(&u.mul_var(l, 1), &one) {
                                let c = if positive { c } else { field.neg(&c) };
                                row.push((base + k, c));
                            }
                            positive = !positive;
                        }
                        row.sort_by_key(|(c, _)| *c);
                        row
                    })
                    .collect();
                ranks[p] = rank(&field, rows);
            }
            (0..n)
                .filter_map(|i| {
                    let h = dims[i + 1] - ranks[i + 1] - ranks[i + 2];
                    (h > 0).then_some((i, j, h as u64))
                })
                .collect()
        })
        .collect();

    let mut table = BettiTable::new();
    for (i, j, v) in columns.into_iter().flatten() {
        table.add(i, j, v);
    }
    Ok(KoszulBetti {
        table,
        truncated: degree_cap < support_bound,
        support_bound,
    })
}

/// [`koszul_betti`] with the cap set to the support bound, so the table is
/// complete.
pub fn koszul_betti_auto<F: Field>(ideal: &Ideal<F>) -> Result<BettiTable> {
    Ok(koszul_betti(ideal, u32::MAX)?.table)
}
