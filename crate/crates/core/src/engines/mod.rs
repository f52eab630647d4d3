//! Positive semi-decision procedures. Every answer carries a certificate or a
//! verified closed coset table; everything else is `Unknown`.

mod budget;
mod coset;
mod dovetail;
mod eliminate;
mod iso;
mod normal;
mod prove;
mod words;

pub use budget::{Budget, Meter, DEFAULT_STEPS};
pub use coset::{coset_enumerate, CosetEnumerator, CosetTable, EnumStatus, CERT_CAP, MAX_COSETS};
pub use dovetail::{dovetail, ExecMode, SliceResult, Strategy, Win, SLICE};
pub use eliminate::{ElimStatus, Eliminator};
pub use iso::{iso_search, IsoWitness};
pub use normal::{abelianization_pipeline, normal_generator_search};
pub use prove::{
    format_trivial_proof, parse_trivial_proof, prove_word, simple_wp, triviality_semi, Refutation, TrivialProof,
    WordVerdict,
};
pub use words::{
    enumerate_trivial_words, reduced_words_of_length, relator_conjugate_certificate, ReducedWords,
    TrivialWordEnumerator,
};
