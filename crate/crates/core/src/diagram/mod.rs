//! Links, braids and tangles: parsers, conversions and combinatorial invariants.

mod braid;
mod morse;
mod pd;
mod surgery;
mod tangle;

pub use braid::BraidWord;
pub use morse::{morse_slicing, to_tangle_word, CupTag, Slicing};
pub use pd::{Crossing, LinkDiagram};
pub use surgery::{parse_link, signature, SurgeryPresentation};
pub use tangle::{Gen, TangleWord};
