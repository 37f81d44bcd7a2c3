//! Computational tools for homomorphisms between spherical Artin groups:
//! permutations, the Coxeter catalog, words, Garside normal forms, bounded
//! homomorphism search into symmetric groups, torsion witnesses and a
//! commensurability classifier.

pub mod catalog;
pub mod classify;
pub mod error;
pub mod garside;
pub mod homsearch;
pub mod named;
pub mod perm;
pub mod torsion;
pub mod verify;
pub mod word;

pub use catalog::{CatalogEntry, CoxeterGraph, CoxeterType, Family};
pub use error::{Error, Result};
pub use perm::{Perm, SignedPerm};
pub use word::{Letter, Presentation, Word};
