//! Decision procedures for unary temporal logic hierarchies of regular languages:
//! syntactic monoids, C-pairs, equational membership, rating-map imprints and the
//! TL(AT) saturation used for covering and separation.

pub mod algebra;
pub mod automata;
pub mod corpus;
pub mod cpairs;
pub mod error;
pub mod membership;
pub mod rating;
pub mod tl;
pub mod tlat;
pub mod tlx;

pub use error::{Error, Result};
