//! Complexes of finitely generated abelian groups: Smith normal form,
//! cohomology, mapping cones, decalage and a few p-local computations.
//!
//! Complexes are cochain complexes of finite free abelian groups, indexed
//! cohomologically. The shift `C[k]` has `(C[k])^i = C^{i+k}` and
//! differential `(-1)^k d`.

mod complex;
mod decalage;
mod local;
mod matrix;
mod module;
pub mod random;
mod snf;

pub use complex::{
    cone, exact_at, long_exact_sequence_holds, triangle_composite, triangle_composite_vanishing, ChainMap, Cone,
    FgComplex,
};
pub use decalage::{decalage, decalage_shift};
pub use local::{local_snf_exponents, split_free_torsion, two_term_cohomology, FreeTorsionSplit, TwoTermCohomology};
pub use matrix::IntMatrix;
pub use module::FgModule;
pub use snf::{kernel_basis, lattice_contains, rank, smith_form, snf, solve, SmithForm};
