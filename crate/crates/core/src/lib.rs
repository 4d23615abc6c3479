//! Arithmetic of finite partially ordered sets.
//!
//! Posets are bit-matrix relations over `0..n`. On top of them this crate
//! builds products, disjoint sums and exponents `E^X` (monotone maps under
//! the pointwise order), canonical forms for deciding isomorphism,
//! retractions, and a bounded search for refinements of `A^C ≅ B^D`.

mod bits;

pub mod arithmetic;
pub mod canon;
pub mod catalog;
pub mod error;
pub mod io;
pub mod lemmas;
pub mod poset;
pub mod refinement;
pub mod retract;

pub use arithmetic::{
    component_c, constant_embed, curry_iso, diagonal_d, distributivity_check, exponent, product,
    ExponentPoset, Guard, MonotoneMap, MonotoneMaps, Product, Subposet,
};
pub use canon::{are_isomorphic, canonical_form, certificate, verify_isomorphism, CanonicalForm};
pub use catalog::{enumerate_posets, Catalog};
pub use error::{Axiom, Error, Result};
pub use poset::{
    antichain, chain, singleton, standard, ComponentPartition, CoverList, FinitePoset, StandardKind,
};
pub use refinement::{
    factorizations, refine, verify_natural_law, verify_witness, RefinementWitness, SearchBounds,
};
pub use retract::{
    find_retraction, lemma1_retraction, lift_retraction, prop4_transfer, verify_retraction, Retraction,
};
