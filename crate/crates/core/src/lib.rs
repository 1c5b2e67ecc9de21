//! Exact computation of quantum link and 3-manifold invariants.
//!
//! The crate is organised bottom-up:
//!
//! - [`coeff`]: exact scalars (integer Laurent polynomials, cyclotomic numbers,
//!   a quadratic square-root extension) behind a small [`coeff::Ring`] trait.
//! - [`diagram`]: braid words, planar-diagram (PD) link diagrams, tangle words,
//!   surgery presentations and the combinatorial invariants on them.
//! - [`skein`]: the Kauffman bracket by state sum and by the tangle functor,
//!   the Jones polynomial and mirror images.
//! - [`functor`]: sparse matrices, tangle-word evaluation, the Kauffman
//!   generator table and the Reidemeister/Turaev move checker.
//! - [`qgroup`]: represented `U_s(sl2)` (representations, R-matrix, twists),
//!   labelled tangle evaluation and modular data at roots of unity.
//! - [`rt`]: Reshetikhin-Turaev invariants of surgery presentations, the
//!   Kirby-move suite and TQFT state-space dimensions.
//! - [`cli`]: the command-line front end.

pub mod cli;
pub mod coeff;
pub mod diagram;
pub mod error;
pub mod functor;
pub mod qgroup;
pub mod rt;
pub mod skein;

pub use error::{Error, Result};
