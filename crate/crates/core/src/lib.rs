//! Legendrian contact homology algebra over GF(2).
//!
//! The crate models the Chekanov–Eliashberg DGA of a Legendrian submanifold as
//! pure algebra: graded free algebras with a differential, tame isomorphisms
//! and stabilizations, augmentations and linearized homology, and the index
//! formulas that produce the gradings.

pub mod algebra;
pub mod constructions;
pub mod corpus;
pub mod dga;
pub mod error;
pub mod indices;
pub mod io;
pub mod linalg;
pub mod linearized;
pub mod morphisms;

pub use algebra::{Degree, Element, GenIdx, Generator, GradedSignature, GroupMonomial, Term, Word};
pub use dga::{Dga, DgaReport};
pub use error::Error;
pub use linalg::BitMatrix;
pub use linearized::{Augmentation, LinearizedComplex, PoincarePolynomial};
pub use morphisms::{ElementaryAuto, StableTameWitness, TameMorphism};
