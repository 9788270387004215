use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{elimination_ideal, krull_dim};
use crate::ideal::{minimalize, Ideal};
use crate::monomial::{Monomial, TermOrder};
use crate::polynomial::Polynomial;

/// Analytic spread of an equigenerated ideal: the Krull dimension of the
/// fiber cone `K[g_1, ..., g_m] ≅ K[t_1, ..., t_m] / ker(t_i ↦ g_i)`.
///
/// The kernel is found by eliminating `x` from `(t_i - g_i)` in `K[x, t]`;
/// its dimension is read off a monomial initial ideal.
pub fn analytic_spread<F: Field>(ideal: &Ideal<F>) -> Result<usize> {
    if ideal.is_zero() {
        return Ok(0);
    }
    if ideal.equigenerated_degree().is_none() {
        return Err(Error::NotEquigenerated);
    }
    let n = ideal.nvars();
    let m = ideal.generators().len();
    let total = n + m;
    let field = ideal.field();
    let polys = ideal
        .generators()
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let lifted = g.terms().iter().map(|(mono, c)| (lift(mono, total), field.neg(c)));
            let t = std::iter::once((Monomial::var(total, n + i), field.one()));
            Polynomial::from_terms(total, field.clone(), t.chain(lifted))
        })
        .collect::<Result<Vec<_>>>()?;
    let keep: Vec<usize> = (n..total).collect();
    let kernel = elimination_ideal(total, field, &polys, &keep)?;
    let lead = minimalize(
        m,
        kernel
            .iter()
            .filter_map(|p| p.leading_term(TermOrder::GrevLex).map(|(mono, _)| mono)),
    )?;
    krull_dim(&lead)
}

fn lift(m: &Monomial, total: usize) -> Monomial {
    let mut e: Vec<u32> = m.exponents().iter().map(|&a| a as u32).collect();
    e.resize(total, 0);
    Monomial::from_exps(&e)
}
