use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use crate::monomial::{default_var_names, Monomial};
use crate::polynomial::Polynomial;

/// A homogeneous ideal given by generators.
#[derive(Clone, Debug, PartialEq)]
pub struct Ideal<F: Field> {
    n: usize,
    field: F,
    generators: Vec<Polynomial<F>>,
}

impl<F: Field> Ideal<F> {
    /// Zero generators are discarded; inhomogeneous ones are rejected.
    pub fn new(n: usize, field: F, generators: Vec<Polynomial<F>>) -> Result<Self> {
        let mut gens = Vec::with_capacity(generators.len());
        for (k, g) in generators.into_iter().enumerate() {
            if g.nvars() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: g.nvars(),
                });
            }
            if *g.field() != field {
                return Err(Error::FieldMismatch(
                    field.descriptor().to_string(),
                    g.field().descriptor().to_string(),
                ));
            }
            if !g.is_homogeneous() {
                return Err(Error::Inhomogeneous(format!("generator {} ({g})", k + 1)));
            }
            if !g.is_zero() {
                gens.push(g);
            }
        }
        Ok(Self {
            n,
            field,
            generators: gens,
        })
    }

    pub fn from_monomials(field: F, m: &MonomialIdeal) -> Self {
        let gens = m
            .generators()
            .iter()
            .map(|g| Polynomial::monomial(field.clone(), *g, field.one()))
            .collect();
        Self {
            n: m.nvars(),
            field,
            generators: gens,
        }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generator_degrees(&self) -> Vec<u32> {
        self.generators.iter().filter_map(|g| g.degree()).collect()
    }

    /// `Some(r)` when every generator has degree `r`.
    pub fn equigenerated_degree(&self) -> Option<u32> {
        let degs = self.generator_degrees();
        let r = *degs.first()?;
        degs.iter().all(|&d| d == r).then_some(r)
    }

    pub fn is_equigenerated_in(&self, r: u32) -> bool {
        self.equigenerated_degree() == Some(r)
    }

    pub fn map_field<G: Field>(&self, target: &G, f: impl Fn(&F::Elem) -> Result<G::Elem>) -> Result<Ideal<G>> {
        let gens = self
            .generators
            .iter()
            .map(|g| g.map_field(target, &f))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(self.n, target.clone(), gens)
    }
}

impl Ideal<Rationals> {
    /// Reduces rational coefficients into `F_p`.
    pub fn to_prime_field(&self, fp: PrimeField) -> Result<Ideal<PrimeField>> {
        self.map_field(&fp, |c| fp.from_rational(c))
    }
}

impl<F: Field> fmt::Display for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_var_names(self.n);
        let gens: Vec<String> = self.generators.iter().map(|g| g.format_with(&names)).collect();
        write!(f, "({})", gens.join(", "))
    }
}

/// A monomial ideal stored by its unique minimal generating set, sorted
/// ascending in grevlex so that equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    n: usize,
    generators: Vec<Monomial>,
}

/// Keeps the divisibility-minimal monomials of `gens` in canonical order.
pub fn minimalize(n: usize, gens: impl IntoIterator<Item = Monomial>) -> Result<MonomialIdeal> {
    let mut all: Vec<Monomial> = gens.into_iter().collect();
    if let Some(m) = all.iter().find(|m| m.nvars() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: m.nvars(),
        });
    }
    // ascending degree, so a divisor is always seen before its multiples
    all.sort();
    all.dedup();
    let mut kept: Vec<Monomial> = Vec::new();
    for m in all {
        if !kept.iter().any(|k| k.divides(&m)) {
            kept.push(m);
        }
    }
    kept.sort();
    Ok(MonomialIdeal { n, generators: kept })
}

impl MonomialIdeal {
    pub fn new(n: usize, gens: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        minimalize(n, gens)
    }

    pub fn zero(n: usize) -> Self {
        Self { n, generators: vec![] }
    }

    /// Literal constructor for tests and examples; panics on bad input.
    pub fn from_exps(n: usize, gens: &[&[u32]]) -> Self {
        Self::new(n, gens.iter().map(|e| Monomial::from_exps(e))).expect("valid monomials")
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(|g| g.is_one())
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    /// Number of degree-`d` monomials of the ring outside the ideal.
    pub fn hilbert_function(&self, d: u32) -> usize {
        monomials_of_degree(self.n, d)
            .into_iter()
            .filter(|m| !self.contains(m))
            .count()
    }

    pub fn max_generator_degree(&self) -> Option<u32> {
        self.generators.iter().map(|g| g.degree()).max()
    }

    pub fn format_with(&self, names: &[String]) -> String {
        let gens: Vec<String> = self.generators.iter().map(|g| g.format_with(names)).collect();
        format!("({})", gens.join(", "))
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(&default_var_names(self.n)))
    }
}

/// Serialized as `{ "n": .., "generators": [[exponents], ...] }`.
#[derive(Serialize, Deserialize)]
struct MonomialIdealRepr {
    n: usize,
    generators: Vec<Vec<u32>>,
}

impl Serialize for MonomialIdeal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MonomialIdealRepr {
            n: self.n,
            generators: self
                .generators
                .iter()
                .map(|g| g.exponents().iter().map(|&e| e as u32).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MonomialIdeal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = MonomialIdealRepr::deserialize(d)?;
        let gens = repr
            .generators
            .iter()
            .map(|e| Monomial::new(e))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        MonomialIdeal::new(repr.n, gens).map_err(serde::de::Error::custom)
    }
}

/// All monomials of degree `d` in `n` variables, ascending in grevlex.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    let mut exps = vec![0u32; n];
    fn rec(i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        let n = exps.len();
        if i == n - 1 {
            exps[i] = left;
            out.push(Monomial::from_exps(exps));
            return;
        }
        for a in 0..=left {
            exps[i] = a;
            rec(i + 1, left - a, exps, out);
        }
    }
    rec(0, d, &mut exps, &mut out);
    out.sort();
    out
}
