//! Witt vectors and finite fields: p-typical Witt arithmetic through ghost
//! components, the p-typical factorization of unit power series over
//! `F_q`, and roots of `x^p - x = a`.

mod artin_schreier;
mod field;
mod poly;
mod series;
mod witt;

pub use artin_schreier::{artin_schreier_solve, ArtinSchreierSolution, AsExtension, AsRoot};
pub use field::{FiniteField, Fq, MAX_ORDER as MAX_FIELD_ORDER};
pub use series::{prime_to_p_part, series_split_p_typical, PTypicalSplit, UnitSeries, MAX_ORDER};
pub use witt::{PTypicalWitt, MAX_LENGTH};
