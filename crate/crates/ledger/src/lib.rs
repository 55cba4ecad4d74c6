//! Symbolic bookkeeping of p-power annihilator exponents.
//!
//! A [`TorsionCert`] records, per cohomological degree, an exponent `k`
//! with `p^k · H^i = 0`. Exponents are [`LinExpr`] polynomials in a small
//! parameter alphabet. The propagation rules (composites, triangles,
//! spectral windows, restriction–corestriction) combine certificates, and
//! [`pipeline`] replays the registered derivations.

mod cert;
mod expr;
mod pipeline;
mod report;

pub use cert::{
    ceil_ratio, cert_symbols, fiber, finite_descent, res_cores, spectral_sum, spectral_sum_uniform,
    spectral_window, tame_rescale, triangle, Mode, Tail, TorsionCert, WindowCount,
};
pub use expr::{e, LinExpr, Monomial, Substitution, Symbol};
pub use pipeline::{
    agrees, full_registry, pipeline, Comparison, Parity, PipelineParams, PipelineResult,
    DEGREEWISE_WINDOW, REGISTRY, REPLAY,
};
pub use report::{default_values, rows, text_table, LedgerRow};
