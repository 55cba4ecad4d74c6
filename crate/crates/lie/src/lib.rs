//! Chevalley–Eilenberg cohomology of Lie algebras over Z with trivial
//! coefficients, the exterior-algebra Poincaré series, and rank/torsion
//! checks on scaled lattices in `gl_n`.

mod algebra;
mod ce;
mod lazard;
mod series;

pub use algebra::{LieAlgebraZ, MAX_DIM};
pub use ce::{betti_numbers, ce_complex, lie_cohomology, weight_blocks};
pub use lazard::{lazard_check, LazardReport};
pub use series::{dense, exterior_poincare, reflect, theorem_a_series};
