//! Idempotent semirings, rating maps, imprints and the covering reductions.

mod covering;
mod imprint;
mod map;
mod semiring;

pub use covering::{
    covering_to_imprint, imprint_via_covering_decisions, CoverDecision, CoveringReduction,
};
pub use imprint::{pointed_union, Imprint, PointedImprint};
pub use map::{canonical_rating_map, imprint_of_cover, RatingMap, RatingMapJson, WORD_VALUE_LIMIT};
pub use semiring::{IdemSemiring, PowersetSemiring, Rating, TableSemiring, POWERSET_MAX};
