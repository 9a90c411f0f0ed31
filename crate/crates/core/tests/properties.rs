use proptest::prelude::*;

use tlhier_core::algebra::{brute_force_congruence, transition_monoid, Morphism};
use tlhier_core::automata::{regex_dfa, Alphabet, Dfa, Word};
use tlhier_core::corpus::{encode_beta, uv_alphabet, uv_languages};
use tlhier_core::cpairs::{at_pairs, dd_pairs, eta_at, eta_pairs, mod_pairs, st_pairs};
use tlhier_core::membership::{check_eq_tl, decide_membership, is_aperiodic, ClassName, Verdict};
use tlhier_core::rating::{canonical_rating_map, IdemSemiring, PowersetSemiring};
use tlhier_core::tl::{compile, eval, LangParam, TlFormula};
use tlhier_core::tlat::{
    audit_fixpoint, decide_covering, decide_separation, saturate, saturate_with, Mode,
    SaturationOptions, SeparationDecision,
};
use tlhier_core::rating::CoverDecision;
use tlhier_core::tlx::{tlx_imprint, SemiringAlphabet, TlxBudget};

fn ab() -> Alphabet {
    Alphabet::from_chars("ab").unwrap()
}

fn dfa_strategy(max_states: usize) -> impl Strategy<Value = Dfa> {
    (1..=max_states).prop_flat_map(|n| {
        (prop::collection::vec(0..n, 2 * n), prop::collection::vec(any::<bool>(), n)).prop_map(
            move |(delta, acc)| Dfa::from_parts(ab(), 0, delta, acc).unwrap().minimize(),
        )
    })
}

/// A DFA whose transition monoid fits the powerset semiring.
fn small_dfa(max_states: usize) -> impl Strategy<Value = Dfa> {
    dfa_strategy(max_states).prop_filter("monoid above 64", |d| {
        transition_monoid(d).map(|a| a.monoid().size() <= 64).unwrap_or(false)
    })
}

fn words(max: usize) -> Vec<Word> {
    ab().words_up_to(max).collect()
}

fn at_params() -> Vec<LangParam> {
    let al = ab();
    ["", "~", "(a|b)+", "(a|b)*", "a*", "b*", "a+", "b+", "(a|b)*a(a|b)*b(a|b)*|(a|b)*b(a|b)*a(a|b)*"]
        .iter()
        .map(|r| if r.is_empty() { LangParam::new(&Dfa::empty(&al), "") } else { LangParam::from_regex(r, &al).unwrap() })
        .collect()
}

fn formula_strategy() -> impl Strategy<Value = TlFormula> {
    let leaf = prop_oneof![
        Just(TlFormula::True),
        Just(TlFormula::False),
        Just(TlFormula::Min),
        Just(TlFormula::Max),
        Just(TlFormula::Letter(0)),
        Just(TlFormula::Letter(1)),
    ];
    let params = at_params();
    leaf.prop_recursive(3, 16, 2, move |inner| {
        let p = params.clone();
        let q = params.clone();
        prop_oneof![
            inner.clone().prop_map(TlFormula::not),
            (inner.clone(), inner.clone()).prop_map(|(f, g)| TlFormula::and(f, g)),
            (inner.clone(), inner.clone()).prop_map(|(f, g)| TlFormula::or(f, g)),
            (0..p.len(), inner.clone()).prop_map(move |(i, f)| TlFormula::finally(p[i].clone(), f)),
            (0..q.len(), inner).prop_map(move |(i, f)| TlFormula::previously(q[i].clone(), f)),
        ]
    })
}

fn verdict(d: &Dfa, c: ClassName) -> Verdict {
    decide_membership(d, c).unwrap().member
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn quotient_matches_concatenation(d in dfa_strategy(5)) {
        let ws = words(6);
        for u in ws.iter().filter(|u| u.len() <= 3) {
            let q = d.left_quotient(u);
            for v in ws.iter().filter(|v| v.len() <= 3) {
                let uv: Word = u.iter().chain(v).copied().collect();
                prop_assert_eq!(q.accepts(v), d.accepts(&uv));
            }
        }
    }

    #[test]
    fn minimize_is_idempotent(d in dfa_strategy(6)) {
        let m = d.minimize();
        prop_assert_eq!(&m.minimize(), &m);
        prop_assert!(m.equivalent(&d).unwrap());
    }

    #[test]
    fn boolean_laws(d in dfa_strategy(4), e in dfa_strategy(4)) {
        let union = d.union(&e).unwrap();
        let inter = d.intersect(&e).unwrap();
        let de_morgan = d.complement().intersect(&e.complement()).unwrap().complement();
        prop_assert!(union.equivalent(&de_morgan).unwrap());
        for w in words(6) {
            prop_assert_eq!(union.accepts(&w), d.accepts(&w) || e.accepts(&w));
            prop_assert_eq!(inter.accepts(&w), d.accepts(&w) && e.accepts(&w));
            prop_assert_eq!(d.difference(&e).unwrap().accepts(&w), d.accepts(&w) && !e.accepts(&w));
        }
    }

    #[test]
    fn omega_power_is_idempotent(d in dfa_strategy(5)) {
        let a = transition_monoid(&d).unwrap();
        let m = a.monoid();
        for s in 0..m.size() {
            let e = m.omega_power(s);
            prop_assert!(m.is_idempotent(e));
            prop_assert_eq!(m.omega_power(e), e);
        }
    }

    #[test]
    fn congruence_classes_match_syntactic_monoid(d in dfa_strategy(3)) {
        let a = transition_monoid(&d).unwrap();
        prop_assume!(a.monoid().size() <= 12);
        prop_assert_eq!(brute_force_congruence(&d, 8).len(), a.monoid().size());
    }

    #[test]
    fn pair_sets_are_reflexive_and_symmetric(d in small_dfa(4)) {
        let a = transition_monoid(&d).unwrap();
        let diag = tlhier_core::cpairs::PairSet::diagonal(&a.image());
        let sets = [st_pairs(&a), dd_pairs(&a), mod_pairs(&a).unwrap(), at_pairs(&a).unwrap()];
        for p in &sets {
            prop_assert!(diag.is_subset(p));
            prop_assert!(p.is_symmetric());
        }
        prop_assert!(sets[3].is_subset(&sets[1]) && sets[1].is_subset(&sets[0]));
        let eta = eta_pairs(&a, &eta_at(&ab()).unwrap(), None).unwrap();
        prop_assert_eq!(&sets[3], &eta);
    }

    #[test]
    fn smaller_pair_sets_keep_the_equation(d in small_dfa(4)) {
        let a = transition_monoid(&d).unwrap();
        let m = a.monoid();
        let (st, dd, at) = (st_pairs(&a), dd_pairs(&a), at_pairs(&a).unwrap());
        if check_eq_tl(m, &st) { prop_assert!(check_eq_tl(m, &dd)); }
        if check_eq_tl(m, &dd) { prop_assert!(check_eq_tl(m, &at)); }
    }

    #[test]
    fn compile_agrees_with_eval(f in formula_strategy()) {
        let d = compile(&f, &ab()).unwrap();
        for w in words(6) {
            prop_assert_eq!(d.accepts(&w), eval(&f, &w, 0).unwrap());
        }
    }

    #[test]
    fn finally_is_monotone_in_its_parameter(f in formula_strategy(), i in 0usize..9, j in 0usize..9) {
        let ps = at_params();
        let (small, large) = (&ps[i], &ps[j]);
        prop_assume!(small.dfa().is_subset_of(large.dfa()).unwrap());
        let g = TlFormula::finally(small.clone(), f.clone());
        let h = TlFormula::finally(large.clone(), f);
        for w in words(5) {
            for p in 0..=w.len() + 1 {
                if eval(&g, &w, p).unwrap() {
                    prop_assert!(eval(&h, &w, p).unwrap());
                }
            }
        }
    }

    #[test]
    fn levels_are_closed_under_complement(d in small_dfa(4)) {
        let c = d.complement();
        for class in [ClassName::Sf, ClassName::TlSt, ClassName::Tlx, ClassName::TlMod, ClassName::Tl2St, ClassName::Ipol2St] {
            prop_assert_eq!(verdict(&d, class), verdict(&c, class), "{:?}", class);
        }
    }

    #[test]
    fn sf_is_aperiodicity(d in dfa_strategy(5)) {
        let a = transition_monoid(&d).unwrap();
        prop_assert_eq!(verdict(&d, ClassName::Sf), Verdict::from_bool(is_aperiodic(a.monoid())));
    }

    #[test]
    fn rating_is_monotone_and_multiplicative(d in small_dfa(3), k1 in dfa_strategy(3), k2 in dfa_strategy(3)) {
        let rho = canonical_rating_map(&transition_monoid(&d).unwrap()).unwrap();
        let s = rho.semiring();
        let (r1, r12) = (rho.rate(&k1).unwrap(), rho.rate(&k1.union(&k2).unwrap()).unwrap());
        prop_assert!(s.leq(r1, r12));
        let cat = k1.to_nfa().concat(&k2.to_nfa()).unwrap().determinize().unwrap();
        prop_assert_eq!(rho.rate(&cat).unwrap(), s.mul(r1, rho.rate(&k2).unwrap()));
    }

    #[test]
    fn refining_a_cover_shrinks_its_imprint(d in small_dfa(3), k in dfa_strategy(3)) {
        let rho = canonical_rating_map(&transition_monoid(&d).unwrap()).unwrap();
        let s = rho.semiring();
        let coarse = [Dfa::universal(&ab())];
        let fine = [k.clone(), k.complement()];
        let i_coarse = rho.imprint_of_cover(&coarse).unwrap();
        let i_fine = rho.imprint_of_cover(&fine).unwrap();
        prop_assert!(i_fine.is_subset(s, &i_coarse));
    }

    #[test]
    fn tlx_lower_within_upper(d in small_dfa(3), q in prop::collection::vec(1u64..u64::MAX, 1..4)) {
        let a = transition_monoid(&d).unwrap();
        let s = PowersetSemiring::new(a.monoid_arc().clone()).unwrap();
        let full = if a.monoid().size() == 64 { u64::MAX } else { (1u64 << a.monoid().size()) - 1 };
        let q: Vec<u64> = q.iter().map(|x| x & full).filter(|&x| x != 0).collect();
        prop_assume!(!q.is_empty());
        let b = tlx_imprint(&SemiringAlphabet::new(s.clone(), q));
        prop_assert!(b.lower.is_subset(&s, &b.upper));
    }

    #[test]
    fn saturation_order_does_not_matter(d in small_dfa(4), seed in any::<u64>(), first in any::<bool>()) {
        let rho = canonical_rating_map(&transition_monoid(&d).unwrap()).unwrap();
        let s = rho.semiring();
        let base = saturate(&rho, Mode::Lower).unwrap();
        let mut order: Vec<usize> = (0..4).collect();
        let mut x = seed;
        for i in (1..order.len()).rev() {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (x >> 33) as usize % (i + 1));
        }
        let mut opts = SaturationOptions::new(Mode::Lower);
        opts.row_order = Some(order);
        opts.tlx_first = first;
        let other = saturate_with(&rho, &opts).unwrap();
        prop_assert!(base.same_sets(s, &other));
    }

    #[test]
    fn saturation_sandwich_and_fixpoint(d in small_dfa(4)) {
        let rho = canonical_rating_map(&transition_monoid(&d).unwrap()).unwrap();
        let s = rho.semiring();
        let lower = saturate(&rho, Mode::Lower).unwrap();
        let upper = saturate(&rho, Mode::Upper).unwrap();
        for (l, u) in lower.rows.iter().zip(&upper.rows) {
            prop_assert!(l.is_subset(s, u));
        }
        prop_assert!(audit_fixpoint(&rho, &lower, &TlxBudget::default()).unwrap().is_none());
    }

    #[test]
    fn separation_from_complement_is_membership(d in small_dfa(4)) {
        let sep = decide_separation(&d, &d.complement()).unwrap().result;
        let member = verdict(&d, ClassName::Tl2St);
        match (sep, member) {
            (SeparationDecision::Unknown, _) | (_, Verdict::Unknown) => {}
            (s, m) => prop_assert_eq!(s == SeparationDecision::Separable, m == Verdict::True),
        }
    }

    #[test]
    fn extra_targets_keep_coverability(l0 in small_dfa(3), l1 in small_dfa(3), l2 in small_dfa(3)) {
        // a block only has to avoid one target, so more targets never hurt
        let one = decide_covering(&l0, std::slice::from_ref(&l1));
        let two = decide_covering(&l0, &[l1, l2]);
        if let (Ok(one), Ok(two)) = (one, two) {
            if one.result == CoverDecision::Coverable {
                prop_assert_ne!(two.result, CoverDecision::NotCoverable);
            }
            if two.result == CoverDecision::NotCoverable {
                prop_assert_ne!(one.result, CoverDecision::Coverable);
            }
        }
    }
}

fn regex_u(k: usize) -> String {
    let mut u = "~".to_string();
    let mut v = "<l0>+".to_string();
    for i in 1..=k {
        let lp = format!("(<l{i}>({v}))*");
        let next_v = format!("{lp}<l{i}>({u}){lp}");
        u = lp;
        v = next_v;
    }
    u
}

#[test]
fn uv_match_regex_builds() {
    for k in 0..=2 {
        let al = uv_alphabet(k).unwrap();
        let (u, _) = uv_languages(k).unwrap();
        assert!(u.equivalent(&regex_dfa(&regex_u(k), &al).unwrap()).unwrap(), "k = {k}");
    }
}

#[test]
fn beta_commutes_with_regex_build() {
    for k in 0..=2 {
        let al = uv_alphabet(k).unwrap();
        let built = regex_dfa(&regex_u(k), &al).unwrap();
        // β_k(l_i) = a^i b a^(k-i), substituted into the regex text
        let mut text = regex_u(k);
        for i in 0..=k {
            let img = format!("({}b{})", "a".repeat(i), "a".repeat(k - i));
            text = text.replace(&format!("<l{i}>"), &img);
        }
        let direct = regex_dfa(&text, &ab()).unwrap();
        assert!(encode_beta(k, &built).unwrap().equivalent(&direct).unwrap(), "k = {k}");
    }
}

#[test]
fn uv_in_tl2_and_separable() {
    for k in 0..=2 {
        let (u, v) = uv_languages(k).unwrap();
        assert_eq!(verdict(&u, ClassName::Tl2St), Verdict::True, "U_{k}");
        assert_eq!(verdict(&v, ClassName::Tl2St), Verdict::True, "V_{k}");
        assert_eq!(decide_separation(&u, &v).unwrap().result, SeparationDecision::Separable, "k = {k}");
    }
}

#[test]
fn canonical_morphism_is_surjective() {
    let d = regex_dfa("(ab)*", &ab()).unwrap();
    let a: Morphism = transition_monoid(&d).unwrap();
    assert!(a.is_surjective());
}
