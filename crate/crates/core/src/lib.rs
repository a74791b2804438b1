//! Construction and exhaustive verification of linear codes over GF(q) with
//! prescribed numbers of distinct Hamming weights.

pub mod cli;
pub mod codefile;
pub mod construct;
pub mod error;
pub mod gf;
pub mod linalg;
pub mod report;
pub mod spectrum;

pub use construct::{
    binary_weight_count_code, extend_full_translate, find_translate, lemma3_extend, lemma4_extend,
    length_bound_check, mws_construct, reachable_counts, refine_translate, simplex,
    ConstructionTrace, Step,
};
pub use error::{Error, Result};
pub use gf::Field;
pub use linalg::{
    encode, hamming_distance, hamming_weight, rref_rank, FqVector, GenMatrix, LinearCode,
};
pub use spectrum::{
    coset_profile, distinct_weights, is_mws, mws_bound, spectrum, TranslateWitness, WeightSpectrum,
};
