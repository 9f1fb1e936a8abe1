//! Exact computations with finitely presented graded Lie algebras over
//! the rationals and prime fields.

pub mod algebra;
pub mod duality;
pub mod enveloping;
pub mod error;
pub mod field;
pub mod homology;
pub mod kurosh;
pub mod lie;
pub mod linalg;
pub mod presentation;
pub mod products;
pub mod series;
pub mod strategy;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
