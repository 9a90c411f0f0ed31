use serde::Serialize;

use super::saturation::{saturate, Mode};
use crate::algebra::{syntactic_morphism, Morphism};
use crate::automata::Dfa;
use crate::cpairs::PairSet;
use crate::error::Result;
use crate::membership::{
    certificate_for, tl_counterexample, Certificate, ClassName, MembershipOutcome, Verdict,
};
use crate::rating::{canonical_rating_map, covering_to_imprint, CoverDecision, Imprint};

/// A covering decision with the evidence from both saturation modes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoveringOutcome {
    pub result: CoverDecision,
    pub monoid_size: usize,
    /// Lower-mode Opt meets F (forces not coverable).
    pub lower_meets: bool,
    /// Upper-mode Opt meets F; absent when the lower mode already decided.
    pub upper_meets: Option<bool>,
}

/// TL(AT)-covering of (L0, {L1..Ln}).
pub fn decide_covering(l0: &Dfa, ls: &[Dfa]) -> Result<CoveringOutcome> {
    let red = covering_to_imprint(l0, ls)?;
    let s = red.rho.semiring();
    let monoid_size = red.morphism.monoid().size();
    let lower = saturate(&red.rho, Mode::Lower)?;
    if red.meets_target(&lower.opt(s)) {
        return Ok(CoveringOutcome {
            result: CoverDecision::NotCoverable,
            monoid_size,
            lower_meets: true,
            upper_meets: None,
        });
    }
    let upper = saturate(&red.rho, Mode::Upper)?;
    let upper_meets = red.meets_target(&upper.opt(s));
    Ok(CoveringOutcome {
        result: if upper_meets { CoverDecision::Unknown } else { CoverDecision::Coverable },
        monoid_size,
        lower_meets: false,
        upper_meets: Some(upper_meets),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeparationDecision {
    Separable,
    NotSeparable,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparationOutcome {
    pub result: SeparationDecision,
    pub mode_detail: CoveringOutcome,
}

/// L1 is separable from L2 iff (L1, {L2}) is coverable.
pub fn decide_separation(l1: &Dfa, l2: &Dfa) -> Result<SeparationOutcome> {
    let detail = decide_covering(l1, std::slice::from_ref(l2))?;
    let result = match detail.result {
        CoverDecision::Coverable => SeparationDecision::Separable,
        CoverDecision::NotCoverable => SeparationDecision::NotSeparable,
        CoverDecision::Unknown => SeparationDecision::Unknown,
    };
    Ok(SeparationOutcome { result, mode_detail: detail })
}

/// TL(AT)-pairs: `lower` holds the certain pairs, `upper` the possible ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TlatPairs {
    pub lower: PairSet,
    pub upper: PairSet,
}

impl TlatPairs {
    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    pub fn pairs(&self) -> Option<&PairSet> {
        self.is_exact().then_some(&self.lower)
    }
}

fn pairs_of(size: usize, opt: &Imprint) -> PairSet {
    let mut p = PairSet::empty(size);
    for &x in opt.generators() {
        let members: Vec<usize> = (0..size).filter(|&i| x >> i & 1 == 1).collect();
        for &s in &members {
            for &t in &members {
                p.insert(s, t);
            }
        }
    }
    p
}

/// (s, t) is a pair iff some member of Opt(A*, ρ) for the canonical ρ of α
/// contains both s and t.
pub fn tlat_pairs(alpha: &Morphism) -> Result<TlatPairs> {
    let rho = canonical_rating_map(alpha)?;
    let s = rho.semiring();
    let n = alpha.monoid().size();
    let lower = pairs_of(n, &saturate(&rho, Mode::Lower)?.opt(s));
    let upper = pairs_of(n, &saturate(&rho, Mode::Upper)?.opt(s));
    debug_assert!(lower.is_subset(&upper));
    Ok(TlatPairs { lower, upper })
}

/// Membership in TL(TL(AT)) = TLH₃(ST).
pub fn decide_tl3_st(d: &Dfa) -> Result<MembershipOutcome> {
    let syn = syntactic_morphism(d)?;
    decide_tl3_st_morphism(&syn.morphism)
}

pub(crate) fn decide_tl3_st_morphism(alpha: &Morphism) -> Result<MembershipOutcome> {
    let m = alpha.monoid();
    let pairs = tlat_pairs(alpha)?;
    let (member, certificate) = if tl_counterexample(m, &pairs.upper).is_none() {
        (Verdict::True, Certificate::EquationVerified)
    } else if let Some(c) = tl_counterexample(m, &pairs.lower) {
        (Verdict::False, certificate_for(alpha, Some(c)))
    } else {
        let reason = format!(
            "TL(AT)-pairs known only within bounds ({} certain, {} possible)",
            pairs.lower.len(),
            pairs.upper.len()
        );
        (Verdict::Unknown, Certificate::Undetermined { reason })
    };
    Ok(MembershipOutcome { class: ClassName::Tl3St, member, monoid_size: m.size(), certificate })
}
