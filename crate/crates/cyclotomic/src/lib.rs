//! Exact truncated arithmetic in the tower `Q_p(zeta_{p^k})`, `p` odd, and
//! pseudorandom checks of the trace inequalities of a sufficiently ramified
//! tower, taking `K = Q_p(zeta_p)` and `K_n = Q_p(zeta_{p^{n+1}})`.

mod element;
mod lab;

pub use element::{phi, CycElement, GUARD};
pub use lab::{trace_sigma_slack, verify_trace_bounds, InequalityReport, TraceReport, FAMILIES, MAX_PRECISION};
