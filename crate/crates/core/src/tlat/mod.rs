//! TL(AT): saturation, covering and separation, pairs, and TL³(ST) membership.

mod decide;
mod saturation;
#[cfg(feature = "synthesis")]
mod synth;

pub use decide::{
    decide_covering, decide_separation, decide_tl3_st, tlat_pairs, CoveringOutcome,
    SeparationDecision, SeparationOutcome, TlatPairs,
};
pub(crate) use decide::decide_tl3_st_morphism;
pub use saturation::{
    audit_fixpoint, saturate, saturate_with, trivial_elements, AuditFailure, Mode,
    SaturationOptions, SaturationState, SATURATION_MAX_LETTERS,
};
#[cfg(feature = "synthesis")]
pub use synth::{synthesize_cover, GoodTriple, SynthesisBudget};
