//! Lattice classes and finite balls in the Bruhat–Tits building of
//! `PGL_n(Q_p)`, `n = 2, 3`, with their simplicial cohomology over `F_q`.

mod ball;
mod cohomology;
mod lattice;

pub use ball::{build_ball, build_ball_any, tree_ball_size, BuildingBall, MAX_VERTICES};
pub use cohomology::simplicial_cohomology;
pub use lattice::{neighbors, LatticeClass};
