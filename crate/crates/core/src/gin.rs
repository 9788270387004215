//! Generic initial ideals.
//!
//! "Generic" is certified operationally: the initial ideal is computed after
//! several independent random coordinate changes, and the result is accepted
//! only when all trials agree and the common ideal is Borel-fixed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{ideal_power, initial_ideal};
use crate::ideal::{minimalize, Ideal, MonomialIdeal};
use crate::linalg::dense_rank;
use crate::monomial::{Monomial, TermOrder};
use crate::polynomial::Polynomial;

/// Default bound on the absolute value of random matrix entries.
pub const DEFAULT_ENTRY_BOUND: u64 = 100;

/// Version of the seed derivation; part of cache keys.
pub const SEED_PROTOCOL_VERSION: u32 = 1;

/// An invertible linear change of coordinates `x_j -> sum_i g_{ij} x_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoordinateChange<F: Field> {
    matrix: Vec<Vec<F::Elem>>,
    seed: u64,
    entry_bound: u64,
}

/// Derives the 32-byte ChaCha key for one trial. The stream is a pure function
/// of its inputs, so results do not depend on scheduling.
pub fn trial_rng(seed: u64, trial: u32, attempt: u32, entry_bound: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..12].copy_from_slice(&trial.to_le_bytes());
    key[12..16].copy_from_slice(&attempt.to_le_bytes());
    key[16..24].copy_from_slice(&entry_bound.to_le_bytes());
    key[24..28].copy_from_slice(&SEED_PROTOCOL_VERSION.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

impl<F: Field> CoordinateChange<F> {
    pub fn new(field: &F, matrix: Vec<Vec<F::Elem>>) -> Result<Self> {
        let n = matrix.len();
        if matrix.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("coordinate change must be square".into()));
        }
        if dense_rank(field, &matrix) != n {
            return Err(Error::SingularMatrix);
        }
        Ok(Self {
            matrix,
            seed: 0,
            entry_bound: 0,
        })
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { field.one() } else { field.zero() })
                    .collect()
            })
            .collect();
        Self {
            matrix,
            seed: 0,
            entry_bound: 0,
        }
    }

    /// Dense matrix with entries uniform in `[-bound, bound]`, resampled until
    /// invertible.
    pub fn random(field: &F, n: usize, rng: &mut impl Rng, seed: u64, entry_bound: u64) -> Self {
        let b = entry_bound as i64;
        loop {
            let matrix: Vec<Vec<F::Elem>> = (0..n)
                .map(|_| (0..n).map(|_| field.from_i64(rng.gen_range(-b..=b))).collect())
                .collect();
            if dense_rank(field, &matrix) == n {
                return Self {
                    matrix,
                    seed,
                    entry_bound,
                };
            }
        }
    }

    pub fn matrix(&self) -> &[Vec<F::Elem>] {
        &self.matrix
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn entry_bound(&self) -> u64 {
        self.entry_bound
    }

    pub fn nvars(&self) -> usize {
        self.matrix.len()
    }
}

/// Applies `x_j -> sum_i g_{ij} x_i` to every generator.
pub fn apply_change<F: Field>(ideal: &Ideal<F>, g: &CoordinateChange<F>) -> Result<Ideal<F>> {
    let n = ideal.nvars();
    if g.nvars() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: g.nvars(),
        });
    }
    let field = ideal.field();
    if dense_rank(field, g.matrix()) != n {
        return Err(Error::SingularMatrix);
    }
    let images: Vec<Polynomial<F>> = (0..n)
        .map(|j| {
            let terms = (0..n).map(|i| (Monomial::var(n, i), g.matrix[i][j].clone()));
            Polynomial::from_terms(n, field.clone(), terms).expect("same ring")
        })
        .collect();
    let gens = ideal
        .generators()
        .iter()
        .map(|f| f.substitute(&images))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(n, field.clone(), gens)
}

/// Evidence that a computed initial ideal is generic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GinCertificate {
    pub trials: u32,
    pub borel_fixed: bool,
    pub all_trials_agree: bool,
    pub entry_bound: u64,
}

impl GinCertificate {
    pub fn certified(&self) -> bool {
        self.borel_fixed && self.all_trials_agree && self.trials >= 2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GinOptions {
    pub trials: u32,
    pub seed: u64,
    pub entry_bound: u64,
}

impl Default for GinOptions {
    fn default() -> Self {
        Self {
            trials: 3,
            seed: 0,
            entry_bound: DEFAULT_ENTRY_BOUND,
        }
    }
}

/// `gin(I)` under `order`.
pub fn gin<F: Field>(ideal: &Ideal<F>, order: TermOrder, opts: GinOptions) -> Result<(MonomialIdeal, GinCertificate)> {
    gin_of_power(ideal, 1, order, opts)
}

/// `gin(I^k)`, computed as `in((g I)^k)`: the change of coordinates is applied
/// to the base generators before taking the power.
pub fn gin_of_power<F: Field>(
    ideal: &Ideal<F>,
    k: u32,
    order: TermOrder,
    opts: GinOptions,
) -> Result<(MonomialIdeal, GinCertificate)> {
    if opts.trials == 0 {
        return Err(Error::InvalidInput("gin needs at least one trial".into()));
    }
    let mut bound = opts.entry_bound.max(1);
    for attempt in 0..2u32 {
        let results: Vec<Result<MonomialIdeal>> = (0..opts.trials)
            .into_par_iter()
            .map(|t| {
                let mut rng = trial_rng(opts.seed, t, attempt, bound);
                let g = CoordinateChange::random(ideal.field(), ideal.nvars(), &mut rng, opts.seed, bound);
                let moved = apply_change(ideal, &g)?;
                initial_ideal(&ideal_power(&moved, k)?, order)
            })
            .collect();
        let results = results.into_iter().collect::<Result<Vec<_>>>()?;
        let first = &results[0];
        if results.iter().all(|r| r == first) {
            let cert = GinCertificate {
                trials: opts.trials,
                borel_fixed: is_borel_fixed(first),
                all_trials_agree: true,
                entry_bound: bound,
            };
            return Ok((first.clone(), cert));
        }
        bound *= 2;
    }
    Err(Error::GenericityFailure(format!(
        "{} trials disagreed at entry bounds {} and {}",
        opts.trials, opts.entry_bound, bound
    )))
}

/// Strong stability: for every minimal generator `m`, every `x_j | m` and
/// every `i < j`, `x_i m / x_j` lies in the ideal.
pub fn is_borel_fixed(m: &MonomialIdeal) -> bool {
    m.generators().iter().all(|g| {
        (0..m.nvars()).all(|j| match g.div_var(j) {
            None => true,
            Some(h) => (0..j).all(|i| m.contains(&h.mul_var(i, 1))),
        })
    })
}

/// The hyperplane section `phi(I)` for `h = sum h_j x_j`, `h_n != 0`, with
/// `x_n -> -(1/h_n) sum_{j<n} h_j x_j`. The result lives in `n - 1` variables.
pub fn hyperplane_section<F: Field>(ideal: &Ideal<F>, h: &[F::Elem]) -> Result<Ideal<F>> {
    let n = ideal.nvars();
    if h.len() != n || n == 0 {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: h.len(),
        });
    }
    let field = ideal.field();
    let hn_inv = field
        .inv(&h[n - 1])
        .ok_or_else(|| Error::InvalidInput("hyperplane has zero last coefficient".into()))?;
    let m = n - 1;
    let mut images: Vec<Polynomial<F>> = (0..m).map(|j| Polynomial::var(m, field.clone(), j)).collect();
    let last = (0..m).map(|j| (Monomial::var(m, j), field.neg(&field.mul(&h[j], &hn_inv))));
    images.push(Polynomial::from_terms(m, field.clone(), last)?);
    let gens = ideal
        .generators()
        .iter()
        .map(|f| f.substitute(&images))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(m, field.clone(), gens)
}

/// Image of `M` under `x_n -> 0`, as an ideal in `n - 1` variables.
pub fn restrict_last_variable(m: &MonomialIdeal) -> MonomialIdeal {
    let n = m.nvars();
    if n == 0 {
        return m.clone();
    }
    let gens = m
        .generators()
        .iter()
        .filter(|g| g.exponent(n - 1) == 0)
        .map(|g| g.with_nvars(n - 1));
    minimalize(n - 1, gens).expect("same ring")
}
