use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::{default_var_names, Monomial, TermOrder};

/// A polynomial with exact coefficients.
///
/// Terms are kept sorted by strictly decreasing grevlex order with no zero
/// coefficients, so structural equality is polynomial equality.
#[derive(Clone, PartialEq)]
pub struct Polynomial<F: Field> {
    n: usize,
    field: F,
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> Polynomial<F> {
    pub fn zero(n: usize, field: F) -> Self {
        Self {
            n,
            field,
            terms: Vec::new(),
        }
    }

    pub fn constant(n: usize, field: F, c: F::Elem) -> Self {
        Self::monomial(field, Monomial::one(n), c)
    }

    pub fn monomial(field: F, m: Monomial, c: F::Elem) -> Self {
        let n = m.nvars();
        let terms = if field.is_zero(&c) { vec![] } else { vec![(m, c)] };
        Self { n, field, terms }
    }

    /// The variable `x_{i+1}`.
    pub fn var(n: usize, field: F, i: usize) -> Self {
        let one = field.one();
        Self::monomial(field, Monomial::var(n, i), one)
    }

    /// Collects terms, summing duplicates and dropping zeros.
    pub fn from_terms(n: usize, field: F, terms: impl IntoIterator<Item = (Monomial, F::Elem)>) -> Result<Self> {
        let mut acc: BTreeMap<Monomial, F::Elem> = BTreeMap::new();
        for (m, c) in terms {
            if m.nvars() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: m.nvars(),
                });
            }
            match acc.get_mut(&m) {
                Some(v) => *v = field.add(v, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let terms = acc.into_iter().rev().filter(|(_, c)| !field.is_zero(c)).collect();
        Ok(Self { n, field, terms })
    }

    /// Wraps terms already sorted by decreasing grevlex with nonzero coefficients.
    pub(crate) fn from_sorted_terms(n: usize, field: F, terms: Vec<(Monomial, F::Elem)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        Self { n, field, terms }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F::Elem)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => self.terms.iter().all(|(m, _)| m.degree() == m0.degree()),
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> F::Elem {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.field.zero())
    }

    /// Leading term under `order`.
    pub fn leading_term(&self, order: TermOrder) -> Option<(Monomial, F::Elem)> {
        self.terms.iter().max_by(|a, b| order.cmp(&a.0, &b.0)).cloned()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.descriptor().to_string(),
                other.field.descriptor().to_string(),
            ));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.product(other))
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let f = &self.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => std::cmp::Ordering::Greater,
                _ => std::cmp::Ordering::Less,
            };
            match ord {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if negate { f.neg(&b[j].1) } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate {
                        f.sub(&a[i].1, &b[j].1)
                    } else {
                        f.add(&a[i].1, &b[j].1)
                    };
                    if !f.is_zero(&c) {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Self::from_sorted_terms(self.n, self.field.clone(), out)
    }

    fn product(&self, other: &Self) -> Self {
        let f = &self.field;
        let mut acc: BTreeMap<Monomial, F::Elem> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = f.mul(ca, cb);
                let m = ma.mul(mb);
                match acc.get_mut(&m) {
                    Some(v) => *v = f.add(v, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let terms = acc.into_iter().rev().filter(|(_, c)| !f.is_zero(c)).collect();
        Self::from_sorted_terms(self.n, self.field.clone(), terms)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        if self.field.is_zero(c) {
            return Self::zero(self.n, self.field.clone());
        }
        let terms = self.terms.iter().map(|(m, a)| (*m, self.field.mul(a, c))).collect();
        Self::from_sorted_terms(self.n, self.field.clone(), terms)
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        let terms = self.terms.iter().map(|(t, a)| (t.mul(m), a.clone())).collect();
        Self::from_sorted_terms(self.n, self.field.clone(), terms)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::constant(self.n, self.field.clone(), self.field.one());
        for _ in 0..k {
            out = out.product(self);
        }
        out
    }

    /// Makes the leading coefficient (under `order`) equal to one.
    pub fn monic(&self, order: TermOrder) -> Self {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => self.scale(&self.field.inv(&c).expect("nonzero leading coefficient")),
        }
    }

    /// Substitutes `x_i -> images[i]`; the result lives in the images' ring.
    pub fn substitute(&self, images: &[Polynomial<F>]) -> Result<Self> {
        if images.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: images.len(),
            });
        }
        let target_n = images.first().map(|p| p.n).unwrap_or(0);
        if images.iter().any(|p| p.n != target_n) {
            return Err(Error::InvalidInput(
                "substitution images live in different rings".into(),
            ));
        }
        // cache powers of each image
        let mut powers: Vec<Vec<Polynomial<F>>> = images
            .iter()
            .map(|p| {
                vec![
                    Polynomial::constant(target_n, self.field.clone(), self.field.one()),
                    p.clone(),
                ]
            })
            .collect();
        let mut out = Polynomial::zero(target_n, self.field.clone());
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target_n, self.field.clone(), c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().product(&images[i]);
                    powers[i].push(next);
                }
                if e > 0 {
                    t = t.product(&powers[i][e]);
                }
            }
            out = out.merge(&t, false);
        }
        Ok(out)
    }

    /// Maps coefficients into another field.
    pub fn map_field<G: Field>(&self, target: &G, f: impl Fn(&F::Elem) -> Result<G::Elem>) -> Result<Polynomial<G>> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let c = f(c)?;
            if !target.is_zero(&c) {
                terms.push((*m, c));
            }
        }
        Ok(Polynomial::from_sorted_terms(self.n, target.clone(), terms))
    }

    pub fn format_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mut cs = self.field.format(c);
            let negative = cs.starts_with('-');
            if negative {
                cs.remove(0);
            }
            if k == 0 {
                if negative {
                    s.push('-');
                }
            } else {
                s.push_str(if negative { " - " } else { " + " });
            }
            if m.is_one() {
                s.push_str(&cs);
            } else {
                if cs != "1" {
                    s.push_str(&cs);
                    s.push('*');
                }
                s.push_str(&m.format_with(names));
            }
        }
        s
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(&default_var_names(self.n)))
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(&default_var_names(self.n)))
    }
}

impl<F: Field> std::ops::Add for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: Self) -> Polynomial<F> {
        self.checked_add(rhs).expect("compatible operands")
    }
}

impl<F: Field> std::ops::Sub for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: Self) -> Polynomial<F> {
        self.checked_sub(rhs).expect("compatible operands")
    }
}

impl<F: Field> std::ops::Mul for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: Self) -> Polynomial<F> {
        self.checked_mul(rhs).expect("compatible operands")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn p(terms: &[(i64, [u32; 3])]) -> Polynomial<Rationals> {
        Polynomial::from_terms(
            3,
            Rationals,
            terms
                .iter()
                .map(|(c, e)| (Monomial::from_exps(e), Rationals.from_i64(*c))),
        )
        .unwrap()
    }

    #[test]
    fn cancellation_drops_terms() {
        let f = p(&[(1, [2, 1, 0]), (1, [0, 0, 3])]);
        let g = p(&[(-1, [0, 0, 3])]);
        assert_eq!(&f + &g, p(&[(1, [2, 1, 0])]));
    }

    #[test]
    fn products_and_zero() {
        let x = Polynomial::var(3, Rationals, 0);
        let y = Polynomial::var(3, Rationals, 1);
        assert_eq!(&x * &y, p(&[(1, [1, 1, 0])]));
        let zero = Polynomial::zero(3, Rationals);
        assert!((&zero * &x).is_zero());
        assert!(x.scale(&Rationals.zero()).is_zero());
    }

    #[test]
    fn mismatches_are_errors() {
        let a = Polynomial::var(3, PrimeField::new(7).unwrap(), 0);
        let b = Polynomial::var(3, PrimeField::new(11).unwrap(), 0);
        assert!(matches!(a.checked_add(&b), Err(Error::FieldMismatch(..))));
        let c = Polynomial::var(2, PrimeField::new(7).unwrap(), 0);
        assert!(matches!(a.checked_mul(&c), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn homogeneity() {
        assert!(p(&[(1, [2, 1, 0]), (1, [0, 0, 3])]).is_homogeneous());
        assert!(!p(&[(1, [1, 0, 0]), (1, [0, 0, 0])]).is_homogeneous());
    }

    #[test]
    fn substitution() {
        // (x + y)^2 with x -> y, y -> z
        let f = p(&[(1, [2, 0, 0]), (2, [1, 1, 0]), (1, [0, 2, 0])]);
        let imgs = vec![
            Polynomial::var(3, Rationals, 1),
            Polynomial::var(3, Rationals, 2),
            Polynomial::var(3, Rationals, 2),
        ];
        assert_eq!(
            f.substitute(&imgs).unwrap(),
            p(&[(1, [0, 2, 0]), (2, [0, 1, 1]), (1, [0, 0, 2])])
        );
    }

    #[test]
    fn formatting() {
        let f = p(&[(1, [2, 1, 0]), (-3, [0, 0, 3])]);
        let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        assert_eq!(f.format_with(&names), "x^2*y - 3*z^3");
    }
}
