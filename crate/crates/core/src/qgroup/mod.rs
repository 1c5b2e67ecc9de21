//! Represented `U_s(sl2)`: modules, R-matrices, twists, colored invariants
//! and modular data at roots of unity.

mod group;
mod modular;

pub use group::QGroup;
pub use modular::{
    determinant, fusion, fusion_coefficient, hopf_link, hopf_value_generic, ModularData, RootSpec,
};

#[cfg(test)]
mod tests;
