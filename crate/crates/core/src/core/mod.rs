//! Words, presentations, homomorphisms and the presentation text format.

pub mod hom;
pub mod presentation;
pub mod text;
pub mod word;

pub use hom::{apply_hom, Homomorphism};
pub use presentation::{
    abelianize, direct_product_with_cyclic, free_product, GeneratorId, GroupPresentation,
};
pub use text::{format_presentation, format_word, parse_presentation, parse_word};
pub use word::{commutator, free_reduce, freely_equal, Letter, Reducer, Word};
