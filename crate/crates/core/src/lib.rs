//! Finitely presented groups and the uniform constructions that link them to
//! Turing machines: Post's semigroup, Boone's group, the Gordon/Adian-Rabin
//! presentation and the Π/Ψ/Φ families, together with the positive
//! (semi-)decision procedures that can be run on them.
//!
//! Every positive answer produced here carries a certificate that can be
//! checked independently: semigroup derivations are replayed letter by letter
//! and triviality certificates are checked by free reduction.

pub mod abelian;
pub mod boone;
pub mod core;
pub mod engines;
pub mod error;
pub mod gadgets;
pub mod gordon;
pub mod machine;
pub mod post;

pub use crate::core::{
    abelianize, apply_hom, commutator, direct_product_with_cyclic, free_product, free_reduce,
    GroupPresentation, Homomorphism, Letter, Word,
};
pub use error::{Error, Result};
