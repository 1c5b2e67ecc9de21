//! The surgery invariant of closed 3-manifolds and dimensions of the
//! surface state spaces.

mod invariant;
mod kirby;
mod tqft;

#[cfg(test)]
mod tests;

pub use invariant::{
    coloring_cost, coloring_sum, rt_invariant, rt_invariant_with, s3_value, unitary_s3_numeric, RtValue,
    DEFAULT_MAX_COST,
};
pub use kirby::{corpus, handle_slide_pairs, kirby_invariance_suite};
pub use tqft::{tqft_dim, verlinde_numeric, Spine};
