//! Division, Buchberger's algorithm and the operations built on reduced
//! Gröbner bases: initial ideals, powers, dimension and elimination.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ideal::{minimalize, Ideal, MonomialIdeal};
use crate::monomial::{Monomial, SortKey, TermOrder};
use crate::polynomial::Polynomial;

/// Terms sorted by decreasing `order`; first term is the leading term.
type Terms<F> = Vec<(Monomial, <F as Field>::Elem)>;

/// A Gröbner basis with respect to a fixed term order.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    n: usize,
    field: F,
    order: TermOrder,
    elements: Vec<Terms<F>>,
    reduced: bool,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> Vec<Polynomial<F>> {
        self.elements
            .iter()
            .map(|t| Polynomial::from_terms(self.n, self.field.clone(), t.iter().cloned()).expect("same ring"))
            .collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().map(|t| t[0].0).collect()
    }

    /// The ideal of leading terms, minimally generated.
    pub fn initial_ideal(&self) -> MonomialIdeal {
        minimalize(self.n, self.leading_monomials()).expect("same ring")
    }

    /// Remainder of `f` on division by the basis; divisors are tried in
    /// stored order and the remainder is fully reduced.
    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        if f.nvars() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: f.nvars(),
            });
        }
        let lms = self.leading_monomials();
        let r = reduce(
            &self.field,
            self.order,
            self.n,
            f.terms().iter().cloned(),
            &self.elements,
            &lms,
        );
        Polynomial::from_terms(self.n, self.field.clone(), r)
    }

    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// True when every S-polynomial of the basis reduces to zero. No pair
    /// criteria are applied; this is the post-hoc correctness check.
    pub fn s_pairs_reduce_to_zero(&self) -> bool {
        let lms = self.leading_monomials();
        for i in 0..self.elements.len() {
            for j in i + 1..self.elements.len() {
                let s = s_polynomial(&self.field, self.order, &self.elements[i], &self.elements[j]);
                let r = reduce(&self.field, self.order, self.n, s, &self.elements, &lms);
                if !r.is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

fn add_into<F: Field>(field: &F, acc: &mut BTreeMap<SortKey, F::Elem>, key: SortKey, c: F::Elem) {
    match acc.entry(key) {
        Entry::Vacant(e) => {
            if !field.is_zero(&c) {
                e.insert(c);
            }
        }
        Entry::Occupied(mut e) => {
            let v = field.add(e.get(), &c);
            if field.is_zero(&v) {
                e.remove();
            } else {
                *e.get_mut() = v;
            }
        }
    }
}

/// Full reduction of a term stream by monic `basis` elements.
fn reduce<F: Field>(
    field: &F,
    order: TermOrder,
    n: usize,
    terms: impl IntoIterator<Item = (Monomial, F::Elem)>,
    basis: &[Terms<F>],
    lms: &[Monomial],
) -> Terms<F> {
    let mut acc: BTreeMap<SortKey, F::Elem> = BTreeMap::new();
    for (m, c) in terms {
        add_into(field, &mut acc, order.key(&m), c);
    }
    let mut out = Vec::new();
    while let Some((key, c)) = acc.pop_last() {
        let m = order.decode(&key, n);
        match lms.iter().position(|l| l.divides(&m)) {
            Some(i) => {
                let q = m.div(&lms[i]).expect("divisor");
                for (t, a) in &basis[i][1..] {
                    let v = field.neg(&field.mul(&c, a));
                    add_into(field, &mut acc, order.key(&q.mul(t)), v);
                }
            }
            None => out.push((m, c)),
        }
    }
    out
}

/// S-polynomial of two monic elements, leading terms already cancelled.
fn s_polynomial<F: Field>(field: &F, _order: TermOrder, a: &Terms<F>, b: &Terms<F>) -> Terms<F> {
    let l = a[0].0.lcm(&b[0].0);
    let qa = l.div(&a[0].0).expect("lcm");
    let qb = l.div(&b[0].0).expect("lcm");
    let mut out: Terms<F> = Vec::with_capacity(a.len() + b.len());
    out.extend(a[1..].iter().map(|(t, c)| (qa.mul(t), c.clone())));
    out.extend(b[1..].iter().map(|(t, c)| (qb.mul(t), field.neg(c))));
    out
}

fn make_monic<F: Field>(field: &F, mut t: Terms<F>) -> Terms<F> {
    let inv = field.inv(&t[0].1).expect("nonzero leading coefficient");
    if !field.is_one(&inv) {
        for (_, c) in t.iter_mut() {
            *c = field.mul(c, &inv);
        }
    }
    t
}

#[derive(Clone, Copy, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Reduced Gröbner basis of arbitrary polynomials (homogeneity is not
/// required; it only makes the normal strategy proceed degree by degree).
pub fn groebner_basis<F: Field>(
    n: usize,
    field: &F,
    polys: &[Polynomial<F>],
    order: TermOrder,
) -> Result<GroebnerBasis<F>> {
    for p in polys {
        if p.nvars() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.nvars(),
            });
        }
        if p.field() != field {
            return Err(Error::FieldMismatch(
                field.descriptor().to_string(),
                p.field().descriptor().to_string(),
            ));
        }
    }
    // inputs sorted by order, pending as "pairs" with no partner
    let mut inputs: Vec<Terms<F>> = polys
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| {
            let mut t = p.terms().to_vec();
            t.sort_by(|a, b| order.cmp(&b.0, &a.0));
            t
        })
        .collect();
    inputs.sort_by(|a, b| {
        a[0].0
            .degree()
            .cmp(&b[0].0.degree())
            .then_with(|| order.cmp(&a[0].0, &b[0].0))
    });
    inputs.reverse(); // pop from the back = smallest first

    let mut basis: Vec<Terms<F>> = Vec::new();
    let mut lms: Vec<Monomial> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    loop {
        // normal strategy: smallest degree first, then smallest in the order
        let best_pair = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.lcm
                    .degree()
                    .cmp(&b.lcm.degree())
                    .then_with(|| order.cmp(&a.lcm, &b.lcm))
            })
            .map(|(k, p)| (k, *p));
        let take_input = match (inputs.last(), best_pair) {
            (None, None) => break,
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (Some(f), Some((_, p))) => f[0].0.degree() <= p.lcm.degree(),
        };
        let candidate: Terms<F> = if take_input {
            inputs.pop().expect("nonempty")
        } else {
            let (k, p) = best_pair.expect("pair");
            pairs.swap_remove(k);
            s_polynomial(field, order, &basis[p.i], &basis[p.j])
        };
        let h = reduce(field, order, n, candidate, &basis, &lms);
        if h.is_empty() {
            continue;
        }
        let h = make_monic(field, h);
        let lm_h = h[0].0;
        let idx = basis.len();

        // Gebauer–Möller update
        let cands: Vec<(usize, Monomial, bool)> = (0..idx)
            .filter(|&i| active[i])
            .map(|i| (i, lms[i].lcm(&lm_h), lms[i].is_coprime(&lm_h)))
            .collect();
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        for (k, c) in cands.iter().enumerate() {
            if c.2 {
                kept.push(*c);
                continue;
            }
            let dominated = cands[k + 1..].iter().any(|d| d.1.divides(&c.1)) || kept.iter().any(|d| d.1.divides(&c.1));
            if !dominated {
                kept.push(*c);
            }
        }
        pairs.retain(|p| !(lm_h.divides(&p.lcm) && lms[p.i].lcm(&lm_h) != p.lcm && lms[p.j].lcm(&lm_h) != p.lcm));
        pairs.extend(
            kept.into_iter()
                .filter(|c| !c.2)
                .map(|(i, lcm, _)| Pair { i, j: idx, lcm }),
        );
        for i in 0..idx {
            if active[i] && lm_h.divides(&lms[i]) {
                active[i] = false;
            }
        }
        basis.push(h);
        lms.push(lm_h);
        active.push(true);
    }

    Ok(GroebnerBasis {
        n,
        field: field.clone(),
        order,
        elements: interreduce(field, order, n, basis),
        reduced: true,
    })
}

fn interreduce<F: Field>(field: &F, order: TermOrder, n: usize, basis: Vec<Terms<F>>) -> Vec<Terms<F>> {
    // drop elements whose leading monomial is divisible by another's
    let lms: Vec<Monomial> = basis.iter().map(|t| t[0].0).collect();
    let mut minimal: Vec<Terms<F>> = Vec::new();
    for (i, t) in basis.iter().enumerate() {
        let redundant = lms
            .iter()
            .enumerate()
            .any(|(j, l)| j != i && l.divides(&lms[i]) && (l != &lms[i] || j < i));
        if !redundant {
            minimal.push(t.clone());
        }
    }
    minimal.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    let lms: Vec<Monomial> = minimal.iter().map(|t| t[0].0).collect();
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Terms<F>> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, t)| t.clone())
            .collect();
        let other_lms: Vec<Monomial> = lms
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, l)| *l)
            .collect();
        let head = minimal[i][0].clone();
        let mut tail = reduce(field, order, n, minimal[i][1..].iter().cloned(), &others, &other_lms);
        let mut t = vec![head];
        t.append(&mut tail);
        out.push(t);
    }
    out
}

/// Reduced Gröbner basis of a homogeneous ideal.
pub fn buchberger<F: Field>(ideal: &Ideal<F>, order: TermOrder) -> Result<GroebnerBasis<F>> {
    groebner_basis(ideal.nvars(), ideal.field(), ideal.generators(), order)
}

/// Minimal generators of the initial ideal.
pub fn initial_ideal<F: Field>(ideal: &Ideal<F>, order: TermOrder) -> Result<MonomialIdeal> {
    Ok(buchberger(ideal, order)?.initial_ideal())
}

/// `I^k` generated by all products of `k` generators, duplicates collapsed.
/// `k = 0` yields the unit ideal.
pub fn ideal_power<F: Field>(ideal: &Ideal<F>, k: u32) -> Result<Ideal<F>> {
    let n = ideal.nvars();
    let field = ideal.field().clone();
    let one = Polynomial::constant(n, field.clone(), field.one());
    if k == 0 {
        return Ideal::new(n, field, vec![one]);
    }
    let gens = ideal.generators();
    // products over nondecreasing index sequences
    let mut layer: Vec<(usize, Polynomial<F>)> = vec![(0, one)];
    for _ in 0..k {
        let mut next = Vec::new();
        for (start, p) in &layer {
            for (i, g) in gens.iter().enumerate().skip(*start) {
                next.push((i, p * g));
            }
        }
        layer = next;
    }
    let mut products: Vec<Polynomial<F>> = Vec::new();
    for (_, p) in layer {
        if !products.contains(&p) {
            products.push(p);
        }
    }
    Ideal::new(n, field, products)
}

/// Product ideal `I * J` (pairwise products of generators).
pub fn ideal_product<F: Field>(a: &Ideal<F>, b: &Ideal<F>) -> Result<Ideal<F>> {
    let mut out: Vec<Polynomial<F>> = Vec::new();
    for f in a.generators() {
        for g in b.generators() {
            let p = f.checked_mul(g)?;
            if !out.contains(&p) {
                out.push(p);
            }
        }
    }
    Ideal::new(a.nvars(), a.field().clone(), out)
}

/// `dim S/M`: `n` minus the smallest number of variables meeting the support
/// of every minimal generator.
pub fn krull_dim(m: &MonomialIdeal) -> Result<usize> {
    if m.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let n = m.nvars();
    let supports: Vec<u32> = m
        .generators()
        .iter()
        .map(|g| {
            g.exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .fold(0u32, |acc, (i, _)| acc | (1 << i))
        })
        .collect();
    let mut subsets: Vec<u32> = (0..(1u32 << n)).collect();
    subsets.sort_by_key(|s| s.count_ones());
    let cover = subsets
        .into_iter()
        .find(|s| supports.iter().all(|sup| sup & s != 0))
        .expect("the full variable set meets every proper generator");
    Ok(n - cover.count_ones() as usize)
}

fn permute_vars<F: Field>(p: &Polynomial<F>, perm: &[usize], n_out: usize) -> Result<Polynomial<F>> {
    // perm[old] = new position
    let terms = p.terms().iter().map(|(m, c)| {
        let mut e = vec![0u32; n_out];
        for (old, &a) in m.exponents().iter().enumerate() {
            if a > 0 {
                e[perm[old]] = a as u32;
            }
        }
        (Monomial::from_exps(&e), c.clone())
    });
    Polynomial::from_terms(n_out, p.field().clone(), terms)
}

/// Generators of `(polys) ∩ K[keep]`, re-expressed in a ring whose variables
/// are the kept ones in the given order. The output is a reduced Gröbner
/// basis of the elimination ideal for grevlex on the kept variables.
pub fn elimination_ideal<F: Field>(
    n: usize,
    field: &F,
    polys: &[Polynomial<F>],
    keep: &[usize],
) -> Result<Vec<Polynomial<F>>> {
    if keep.iter().any(|&k| k >= n) {
        return Err(Error::InvalidInput("kept variable out of range".into()));
    }
    let dropped: Vec<usize> = (0..n).filter(|i| !keep.contains(i)).collect();
    let mut perm = vec![0usize; n];
    for (pos, &v) in dropped.iter().chain(keep.iter()).enumerate() {
        perm[v] = pos;
    }
    let permuted = polys
        .iter()
        .map(|p| permute_vars(p, &perm, n))
        .collect::<Result<Vec<_>>>()?;
    let order = TermOrder::Elimination { first: dropped.len() };
    let gb = groebner_basis(n, field, &permuted, order)?;
    let split = dropped.len();
    gb.elements()
        .into_iter()
        .filter(|p| {
            p.terms()
                .iter()
                .all(|(m, _)| m.exponents()[..split].iter().all(|&e| e == 0))
        })
        .map(|p| {
            let terms: Vec<_> = p
                .terms()
                .iter()
                .map(|(m, c)| {
                    let e: Vec<u32> = m.exponents()[split..].iter().map(|&a| a as u32).collect();
                    (Monomial::from_exps(&e), c.clone())
                })
                .collect();
            Polynomial::from_terms(keep.len(), field.clone(), terms)
        })
        .collect()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::ideal::monomials_of_degree;

    type Q = Rationals;

    fn poly(n: usize, terms: &[(i64, &[u32])]) -> Polynomial<Q> {
        Polynomial::from_terms(
            n,
            Rationals,
            terms
                .iter()
                .map(|(c, e)| (Monomial::from_exps(e), Rationals.from_i64(*c))),
        )
        .unwrap()
    }

    pub(crate) fn reference_ideal() -> Ideal<Q> {
        Ideal::new(
            3,
            Rationals,
            vec![
                poly(3, &[(1, &[2, 1, 0]), (1, &[0, 0, 3])]),
                poly(3, &[(1, &[1, 1, 1])]),
                poly(3, &[(1, &[0, 1, 2])]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn coprime_generators_form_a_basis() {
        let i = Ideal::new(2, Rationals, vec![poly(2, &[(1, &[2, 0])]), poly(2, &[(1, &[0, 3])])]).unwrap();
        for o in [TermOrder::GrevLex, TermOrder::Lex] {
            let gb = buchberger(&i, o).unwrap();
            assert_eq!(gb.initial_ideal(), MonomialIdeal::from_exps(2, &[&[2, 0], &[0, 3]]));
            assert_eq!(gb.len(), 2);
        }
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let m = MonomialIdeal::from_exps(2, &[&[2, 0], &[1, 1]]);
        let i = Ideal::from_monomials(Rationals, &m);
        assert_eq!(initial_ideal(&i, TermOrder::GrevLex).unwrap(), m);
    }

    #[test]
    fn lex_initial_ideal_example() {
        // (x^2 + y^2, y^2) with x > y
        let i = Ideal::new(
            2,
            Rationals,
            vec![poly(2, &[(1, &[2, 0]), (1, &[0, 2])]), poly(2, &[(1, &[0, 2])])],
        )
        .unwrap();
        let gb = buchberger(&i, TermOrder::Lex).unwrap();
        assert!(gb.s_pairs_reduce_to_zero());
        assert_eq!(gb.initial_ideal(), MonomialIdeal::from_exps(2, &[&[2, 0], &[0, 2]]));
    }

    #[test]
    fn principal_initial_ideal() {
        let f = poly(3, &[(1, &[1, 1, 0]), (3, &[0, 0, 2]), (-1, &[2, 0, 0])]);
        let i = Ideal::new(3, Rationals, vec![f.clone()]).unwrap();
        for o in [TermOrder::GrevLex, TermOrder::Lex] {
            let lt = f.leading_term(o).unwrap().0;
            assert_eq!(initial_ideal(&i, o).unwrap(), MonomialIdeal::new(3, [lt]).unwrap());
        }
    }

    #[test]
    fn reference_ideal_basis_is_sound() {
        let i = reference_ideal();
        for o in [TermOrder::GrevLex, TermOrder::Lex] {
            let gb = buchberger(&i, o).unwrap();
            assert!(gb.is_reduced());
            assert!(gb.s_pairs_reduce_to_zero());
            for g in i.generators() {
                assert!(gb.contains(g).unwrap());
            }
            // reducedness: no term divisible by another element's leading monomial
            let lms = gb.leading_monomials();
            for (k, p) in gb.elements.iter().enumerate() {
                assert!(gb.field.is_one(&p[0].1));
                for (m, _) in p {
                    for (j, l) in lms.iter().enumerate() {
                        if j != k {
                            assert!(!l.divides(m));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn normal_form_examples() {
        let i = reference_ideal();
        let gb = buchberger(&i, TermOrder::GrevLex).unwrap();
        let f = poly(3, &[(1, &[2, 1, 0])]);
        let r = gb.normal_form(&f).unwrap();
        // f - r lies in I and r is irreducible
        assert!(gb.contains(&(&f - &r)).unwrap());
        let lms = gb.leading_monomials();
        assert!(r.terms().iter().all(|(m, _)| lms.iter().all(|l| !l.divides(m))));
        let one = Polynomial::constant(3, Rationals, Rationals.one());
        assert_eq!(gb.normal_form(&one).unwrap(), one);
        let zero = Polynomial::zero(3, Rationals);
        assert!(gb.normal_form(&zero).unwrap().is_zero());
    }

    #[test]
    fn powers() {
        let xy = Ideal::new(2, Rationals, vec![poly(2, &[(1, &[1, 0])]), poly(2, &[(1, &[0, 1])])]).unwrap();
        let sq = ideal_power(&xy, 2).unwrap();
        assert_eq!(sq.generators().len(), 3);
        assert_eq!(sq.equigenerated_degree(), Some(2));
        let ci = Ideal::new(2, Rationals, vec![poly(2, &[(1, &[2, 0])]), poly(2, &[(1, &[0, 3])])]).unwrap();
        let cube = ideal_power(&ci, 3).unwrap();
        let expected: Vec<Monomial> = (0..=3u32).map(|l| Monomial::from_exps(&[2 * (3 - l), 3 * l])).collect();
        let got = initial_ideal(&cube, TermOrder::GrevLex).unwrap();
        assert_eq!(got, MonomialIdeal::new(2, expected).unwrap());
        let unit = ideal_power(&ci, 0).unwrap();
        assert_eq!(unit.generators()[0].degree(), Some(0));
        let sq = ideal_power(&reference_ideal(), 2).unwrap();
        assert_eq!(sq.generators().len(), 6);
        assert_eq!(sq.equigenerated_degree(), Some(6));
    }

    #[test]
    fn power_is_multiplicative() {
        let i = reference_ideal();
        let i3 = ideal_power(&i, 3).unwrap();
        let i1i2 = ideal_product(&i, &ideal_power(&i, 2).unwrap()).unwrap();
        let a = buchberger(&i3, TermOrder::GrevLex).unwrap().elements();
        let b = buchberger(&i1i2, TermOrder::GrevLex).unwrap().elements();
        assert_eq!(a, b);
    }

    #[test]
    fn krull_dimension() {
        assert_eq!(
            krull_dim(&MonomialIdeal::from_exps(3, &[&[1, 0, 0], &[0, 1, 0]])).unwrap(),
            1
        );
        assert_eq!(krull_dim(&MonomialIdeal::from_exps(3, &[&[1, 1, 0]])).unwrap(), 2);
        assert_eq!(
            krull_dim(&MonomialIdeal::from_exps(2, &[&[2, 0], &[1, 1], &[0, 2]])).unwrap(),
            0
        );
        assert_eq!(krull_dim(&MonomialIdeal::zero(3)).unwrap(), 3);
        assert_eq!(
            krull_dim(&MonomialIdeal::from_exps(2, &[&[0, 0]])),
            Err(Error::UnitIdeal)
        );
    }

    #[test]
    fn elimination() {
        // ring (x, t): (t - x^2, x) ∩ K[t] = (t)
        let gens = vec![poly(2, &[(1, &[0, 1]), (-1, &[2, 0])]), poly(2, &[(1, &[1, 0])])];
        let e = elimination_ideal(2, &Rationals, &gens, &[1]).unwrap();
        assert_eq!(e, vec![poly(1, &[(1, &[1])])]);

        // ring (x, t1, t2): (t1 - x, t2 - x^2) ∩ K[t1, t2] = (t2 - t1^2)
        let gens = vec![
            poly(3, &[(1, &[0, 1, 0]), (-1, &[1, 0, 0])]),
            poly(3, &[(1, &[0, 0, 1]), (-1, &[2, 0, 0])]),
        ];
        let e = elimination_ideal(3, &Rationals, &gens, &[1, 2]).unwrap();
        assert_eq!(e.len(), 1);
        let expected = poly(2, &[(1, &[2, 0]), (-1, &[0, 1])]);
        assert!(e[0] == expected || e[0] == expected.scale(&Rationals.from_i64(-1)));
        // membership in both directions: t2 - t1^2 vanishes on (x, x^2)
        let images = vec![poly(1, &[(1, &[1])]), poly(1, &[(1, &[2])])];
        assert!(e[0].substitute(&images).unwrap().is_zero());

        // eliminating nothing returns the reduced basis
        let i = reference_ideal();
        let e = elimination_ideal(3, &Rationals, i.generators(), &[0, 1, 2]).unwrap();
        assert_eq!(e, buchberger(&i, TermOrder::GrevLex).unwrap().elements());
    }

    fn hilbert_agrees(i: &Ideal<PrimeField>, max_deg: u32) {
        let lex = initial_ideal(i, TermOrder::Lex).unwrap();
        let grevlex = initial_ideal(i, TermOrder::GrevLex).unwrap();
        for d in 0..=max_deg {
            assert_eq!(lex.hilbert_function(d), grevlex.hilbert_function(d), "degree {d}");
        }
    }

    #[test]
    fn initial_ideals_share_hilbert_function() {
        let fp = PrimeField::default();
        hilbert_agrees(&reference_ideal().to_prime_field(fp).unwrap(), 10);
        // a pseudo-random quadric/cubic ideal
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let mut gens = Vec::new();
            for d in [2u32, 2, 3] {
                let terms: Vec<_> = monomials_of_degree(3, d)
                    .into_iter()
                    .filter_map(|m| rng.gen_bool(0.5).then(|| (m, fp.from_i64(rng.gen_range(-5..=5)))))
                    .collect();
                gens.push(Polynomial::from_terms(3, fp, terms).unwrap());
            }
            let i = Ideal::new(3, fp, gens).unwrap();
            hilbert_agrees(&i, 8);
        }
    }

    #[test]
    fn membership_of_random_combinations() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let fp = PrimeField::default();
        let i = reference_ideal().to_prime_field(fp).unwrap();
        let gb = buchberger(&i, TermOrder::GrevLex).unwrap();
        for _ in 0..10 {
            let mut f = Polynomial::zero(3, fp);
            for g in i.generators() {
                let m = monomials_of_degree(3, 2)[rng.gen_range(0..6)];
                let c = fp.from_i64(rng.gen_range(1..100));
                f = &f + &g.mul_monomial(&m).scale(&c);
            }
            assert!(gb.contains(&f).unwrap());
        }
        // degree-2 forms cannot lie in an ideal generated in degree 3
        for m in monomials_of_degree(3, 2) {
            let f = Polynomial::monomial(fp, m, 1);
            assert!(!gb.contains(&f).unwrap());
        }
    }
}
