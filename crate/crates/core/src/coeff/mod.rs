//! Exact coefficient rings.

mod cyclotomic;
mod laurent;
mod ring;
mod sqrt_ext;

pub use cyclotomic::{Cyclotomic, CyclotomicField};
pub use laurent::{quantum_integer, Laurent, Var};
pub use ring::Ring;
pub use sqrt_ext::{SqrtExt, SqrtExtField};
