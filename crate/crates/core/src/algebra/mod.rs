//! Finite monoids, morphisms and syntactic monoids.

mod monoid;
mod morphism;

pub use monoid::{Elem, Monoid, OMEGA_CAP};
pub(crate) use monoid::lcm;
pub use morphism::{
    brute_force_congruence, syntactic_morphism, transition_monoid, transition_monoid_with_limit,
    Morphism, MonoidJson, RecognizedLanguage, DEFAULT_MONOID_LIMIT,
};
