//! Graded Betti numbers of powers of homogeneous ideals and of their generic
//! initial ideals, with tools for studying how the tables behave as the power
//! grows.

pub mod asymptotics;
pub mod betti;
pub mod boij_soderberg;
pub mod error;
pub mod field;
pub mod gin;
pub mod groebner;
pub mod ideal;
pub mod linalg;
pub mod monomial;
pub mod polynomial;

pub use error::{Error, Result};
pub use field::{CoeffField, Field, PrimeField, Rationals};
pub use ideal::{Ideal, MonomialIdeal};
pub use monomial::{Monomial, TermOrder};
pub use polynomial::Polynomial;
