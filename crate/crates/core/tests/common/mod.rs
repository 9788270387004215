#![allow(dead_code)]

use std::collections::BTreeSet;

use ginbetti::betti::BettiTable;
use ginbetti::field::Field;
use ginbetti::gin::is_borel_fixed;
use ginbetti::ideal::{minimalize, monomials_of_degree};
use ginbetti::{Ideal, Monomial, MonomialIdeal, Polynomial};
use rand::Rng;

pub fn poly<F: Field>(field: &F, n: usize, terms: &[(i64, &[u32])]) -> Polynomial<F> {
    Polynomial::from_terms(
        n,
        field.clone(),
        terms.iter().map(|(c, e)| (Monomial::from_exps(e), field.from_i64(*c))),
    )
    .unwrap()
}

/// `(x^2 y + z^3, xyz, y z^2)`.
pub fn reference_ideal<F: Field>(field: &F) -> Ideal<F> {
    Ideal::new(
        3,
        field.clone(),
        vec![
            poly(field, 3, &[(1, &[2, 1, 0]), (1, &[0, 0, 3])]),
            poly(field, 3, &[(1, &[1, 1, 1])]),
            poly(field, 3, &[(1, &[0, 1, 2])]),
        ],
    )
    .unwrap()
}

/// A table given as printed: `rows[t]` is row `first_row + t`, `None` is "-".
pub fn printed(first_row: u32, rows: &[&[Option<u64>]]) -> BettiTable {
    let mut cells = Vec::new();
    for (t, row) in rows.iter().enumerate() {
        for (i, v) in row.iter().enumerate() {
            if let Some(v) = v {
                cells.push((i, first_row + t as u32, *v));
            }
        }
    }
    BettiTable::from_rows(&cells)
}

/// `β(I^k)` for the reference ideal, k = 1..6.
pub fn power_table(k: u32) -> BettiTable {
    let row: &[Option<u64>] = match k {
        1 => &[Some(3), Some(1)],
        2 => &[Some(6), Some(4)],
        3 => &[Some(10), Some(9), Some(1)],
        4 => &[Some(15), Some(16), Some(3)],
        5 => &[Some(21), Some(25), Some(6)],
        6 => &[Some(28), Some(36), Some(10)],
        _ => panic!("no reference table for k = {k}"),
    };
    printed(3 * k, &[row, &[None, Some(1)]])
}

/// `β(gin(I^k))` for the reference ideal, k = 1..6.
pub fn gin_table(k: u32) -> BettiTable {
    let row: &[Option<u64>] = match k {
        1 => &[Some(3), Some(2)],
        2 => &[Some(6), Some(5)],
        3 => &[Some(10), Some(10), Some(1)],
        4 => &[Some(15), Some(17), Some(3)],
        5 => &[Some(21), Some(26), Some(6)],
        6 => &[Some(28), Some(37), Some(10)],
        _ => panic!("no reference table for k = {k}"),
    };
    printed(3 * k, &[row, &[Some(1), Some(1)]])
}

/// `β(lexgin(I^k))` for the reference ideal, k = 1..3.
pub fn lexgin_table(k: u32) -> BettiTable {
    let s = Some;
    match k {
        1 => printed(
            3,
            &[
                &[s(3), s(3), s(1)],
                &[s(2), s(3), s(1)],
                &[s(1), s(2), s(1)],
                &[s(1), s(1)],
            ],
        ),
        2 => printed(
            6,
            &[
                &[s(6), s(8), s(3)],
                &[s(4), s(7), s(3)],
                &[s(3), s(5), s(2)],
                &[s(2), s(4), s(2)],
                &[s(2), s(3), s(1)],
                &[s(1), s(2), s(1)],
                &[s(1), s(1)],
            ],
        ),
        3 => printed(
            9,
            &[
                &[s(10), s(15), s(6)],
                &[s(6), s(10), s(4)],
                &[s(4), s(8), s(4)],
                &[s(4), s(7), s(3)],
                &[s(3), s(6), s(3)],
                &[s(3), s(5), s(2)],
                &[s(2), s(4), s(2)],
                &[s(2), s(3), s(1)],
                &[s(1), s(2), s(1)],
                &[s(1), s(1)],
            ],
        ),
        _ => panic!("no reference table for k = {k}"),
    }
}

/// Closure of the given monomials under the moves `x_j -> x_i`, `i < j`.
pub fn borel_closure(n: usize, seeds: &[Monomial]) -> MonomialIdeal {
    let mut seen: BTreeSet<Monomial> = BTreeSet::new();
    let mut stack: Vec<Monomial> = seeds.to_vec();
    while let Some(m) = stack.pop() {
        if !seen.insert(m) {
            continue;
        }
        for j in 0..n {
            if let Some(h) = m.div_var(j) {
                for i in 0..j {
                    stack.push(h.mul_var(i, 1));
                }
            }
        }
    }
    let out = minimalize(n, seen).unwrap();
    assert!(is_borel_fixed(&out));
    out
}

pub fn random_monomial(rng: &mut impl Rng, n: usize, degree: u32) -> Monomial {
    let all = monomials_of_degree(n, degree);
    all[rng.gen_range(0..all.len())]
}

pub fn random_borel_fixed(rng: &mut impl Rng, max_vars: usize, max_degree: u32) -> MonomialIdeal {
    let n = rng.gen_range(2..=max_vars);
    let count = rng.gen_range(1..=3);
    let seeds: Vec<Monomial> = (0..count)
        .map(|_| {
            let d = rng.gen_range(1..=max_degree);
            random_monomial(rng, n, d)
        })
        .collect();
    borel_closure(n, &seeds)
}

pub fn random_monomial_ideal(rng: &mut impl Rng, max_vars: usize, max_gens: usize, max_exp: u32) -> MonomialIdeal {
    let n = rng.gen_range(1..=max_vars);
    let count = rng.gen_range(1..=max_gens);
    let gens: Vec<Monomial> = (0..count)
        .map(|_| {
            let e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=max_exp)).collect();
            Monomial::from_exps(&e)
        })
        .filter(|m| !m.is_one())
        .collect();
    minimalize(n, gens).unwrap()
}

/// A random ideal generated by `count` forms of degree `r` in 3 variables.
pub fn random_equigenerated<F: Field>(rng: &mut impl Rng, field: &F, r: u32, count: usize) -> Ideal<F> {
    let basis = monomials_of_degree(3, r);
    let gens = (0..count)
        .map(|_| {
            let terms: Vec<(Monomial, F::Elem)> = basis
                .iter()
                .filter_map(|m| rng.gen_bool(0.4).then(|| (*m, field.from_i64(rng.gen_range(-9..=9)))))
                .collect();
            Polynomial::from_terms(3, field.clone(), terms).unwrap()
        })
        .filter(|p| !p.is_zero())
        .collect();
    Ideal::new(3, field.clone(), gens).unwrap()
}
