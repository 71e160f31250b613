//! Exact-arithmetic engine for loop space cohomology: reduced bar
//! constructions of finitely presented differential graded algebras, Tor
//! profiles with torsion, and a symbolic homotopy G-algebra calculus with
//! instance-level verification of every operation identity.

pub mod analysis;
pub mod bar;
pub mod catalog;
pub mod derivation;
pub mod element;
pub mod error;
pub mod families;
pub mod fis;
pub mod generator;
pub mod hga;
pub mod homology;
pub mod input;
pub mod matrix;
pub mod models;
pub mod presentation;
pub mod ring;
pub mod series;
pub mod snf;

pub use derivation::{basis_words, check_d_squared, DSquaredReport, Derivation, DerivationSpec};
pub use element::{multiply, Element};
pub use error::{AlgebraError, InputError, LinalgError, ModelError};
pub use generator::{GenKind, Generator, Word};
pub use homology::{homology_at, minimal_generator_count, HomologySummary};
pub use matrix::IntMatrix;
pub use ring::CoefficientRing;
pub use snf::{smith_normal_form, SmithForm};
