//! One PASS/FAIL line per acceptance criterion. Runs without the libtest harness so
//! the lines show up in plain `cargo test` output.

use std::collections::HashSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tlhier_core::algebra::{brute_force_congruence, syntactic_morphism, transition_monoid, Monoid, Morphism};
use tlhier_core::automata::{regex_dfa, Alphabet, Dfa, Word};
use tlhier_core::corpus::{brzozowski_knast, kn_language, ln_language, uv_languages};
use tlhier_core::cpairs::{at_pairs, eta_at, eta_pairs, mod_pairs, PairSet};
use tlhier_core::membership::{decide_membership, ClassName, Verdict};
use tlhier_core::rating::{
    canonical_rating_map, imprint_via_covering_decisions, IdemSemiring, PowersetSemiring, RatingMap,
};
use tlhier_core::tl::{compile, language_of, LangParam, TlFormula};
use tlhier_core::tlat::{
    audit_fixpoint, decide_covering, decide_separation, decide_tl3_st, saturate, Mode,
    SeparationDecision,
};
use tlhier_core::tlx::{single_letter_exact, tlx_imprint, SemiringAlphabet, TlxBudget};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T, E: std::fmt::Debug>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|x| format!("{x:?}"))
}

fn ab() -> Alphabet {
    Alphabet::from_chars("ab").unwrap()
}

fn re(text: &str, al: &Alphabet) -> Dfa {
    regex_dfa(text, al).unwrap()
}

/// Random complete DFA with `n` states over `al`, minimized.
fn random_dfa(rng: &mut ChaCha8Rng, al: &Alphabet, n: usize) -> Dfa {
    let k = al.len();
    let delta: Vec<usize> = (0..n * k).map(|_| rng.gen_range(0..n)).collect();
    let acc: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    Dfa::from_parts(al.clone(), 0, delta, acc).unwrap().minimize()
}

/// Minimized random 4-state DFAs over {a,b} whose monoid fits the powerset
/// semiring, drawn in order from a fixed seed.
fn random_suite(count: usize) -> Vec<Dfa> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7e11);
    let al = ab();
    let mut out = Vec::new();
    while out.len() < count {
        let d = random_dfa(&mut rng, &al, 4);
        if transition_monoid(&d).unwrap().monoid().size() <= 64 {
            out.push(d);
        }
    }
    out
}

fn fixture_languages() -> Vec<Dfa> {
    let al = ab();
    let mut out: Vec<Dfa> = [
        "(ab)*",
        "(aa)*",
        "a*",
        "a*b*",
        "(a|b)*a(a|b)*",
        "a(a|b)*",
        "(a|b)*ab(a|b)*",
        "b*ab*",
        "(a|b)*aa(a|b)*",
        "((a|b)(a|b))*",
        "(ab|ba)*",
        "(a|b)*a(a|b)",
        "(aab)*",
        "a(ba)*",
        "(a|b)*b",
    ]
    .iter()
    .map(|t| re(t, &al))
    .collect();
    out.push(brzozowski_knast(2).unwrap());
    out.push(brzozowski_knast(3).unwrap());
    out.push(ln_language(0).unwrap());
    out.push(kn_language(0).unwrap());
    let (u1, v1) = uv_languages(1).unwrap();
    out.push(u1);
    out.push(v1);
    out.retain(|d| d.num_states() <= 8);
    out
}

// 1. transition monoid vs brute-force congruence
fn criterion_1() -> Check {
    let al = ab();
    let fixtures = fixture_languages();
    ensure(fixtures.len() >= 20, || format!("only {} fixtures", fixtures.len()))?;
    for d in fixtures.iter().take(20) {
        let alpha = e(transition_monoid(&d.minimize()))?;
        let m = alpha.monoid();
        let classes = brute_force_congruence(d, 8);
        ensure(classes.len() == m.size(), || {
            format!("{} classes vs {} elements", classes.len(), m.size())
        })?;
        let elem_of = |w: &Word| alpha.eval(w);
        let reps: Vec<&Word> = classes.iter().map(|c| &c[0]).collect();
        let mut seen = HashSet::new();
        for c in &classes {
            let x = elem_of(&c[0]);
            ensure(c.iter().all(|w| elem_of(w) == x), || "class splits".into())?;
            ensure(seen.insert(x), || "two classes share an element".into())?;
        }
        for u in &reps {
            for v in &reps {
                let uv: Word = u.iter().chain(v.iter()).copied().collect();
                ensure(m.mul(elem_of(u), elem_of(v)) == elem_of(&uv), || "product mismatch".into())?;
            }
        }
    }
    let ab_star = e(transition_monoid(&re("(ab)*", &al)))?.monoid().size();
    let par = e(transition_monoid(&re("(aa)*", &Alphabet::from_chars("a").unwrap())))?.monoid().size();
    ensure(ab_star == 6 && par == 2, || format!("(ab)* {ab_star}, (aa)* {par}"))?;
    Ok("20 DFAs; (ab)* has 6 elements, (aa)* has 2".into())
}

// 2. membership table
fn criterion_2() -> Check {
    let rows: [(&str, &str, &str, bool); 10] = [
        ("(aa)*", "a", "SF", false),
        ("(aa)*", "a", "TL_ST", false),
        ("(aa)*", "a", "TL_MOD", true),
        ("(aa)*", "a", "TL2_ST", false),
        ("(ab)*", "ab", "SF", true),
        ("(ab)*", "ab", "TL_ST", false),
        ("(ab)*", "ab", "TLX", true),
        ("(ab)*", "ab", "TL2_ST", true),
        ("(a|b)*a(a|b)*", "ab", "TL_ST", true),
        ("a(a|b)*", "ab", "TLX", true),
    ];
    for (lang, al, class, want) in rows {
        let al = Alphabet::from_chars(al).unwrap();
        let class: ClassName = class.parse().unwrap();
        let got = e(decide_membership(&re(lang, &al), class))?.member;
        ensure(got == Verdict::from_bool(want), || format!("{lang} in {class}: {got:?}"))?;
    }
    Ok("10 table entries".into())
}

/// (s,t) when for every modulus n ≤ 8 some u, v with |u|,|v| ≤ `max_len`,
/// α(u) = s, α(v) = t have |u| ≡ |v| mod n.
fn brute_mod_pairs(alpha: &Morphism, max_len: usize) -> PairSet {
    let n = alpha.monoid().size();
    // lens[x][i]: some word of length i evaluates to x
    let mut lens = vec![vec![false; max_len + 1]; n];
    let mut layer = vec![alpha.monoid().identity()];
    for i in 0..=max_len {
        for &x in &layer {
            lens[x][i] = true;
        }
        let next: HashSet<usize> = layer
            .iter()
            .flat_map(|&x| alpha.letter_images().iter().map(move |&a| (x, a)))
            .map(|(x, a)| alpha.monoid().mul(x, a))
            .collect();
        layer = next.into_iter().collect();
    }
    let mut p = PairSet::empty(n);
    for s in 0..n {
        for t in 0..n {
            let ok = (1..=8).all(|m| {
                (0..=max_len).any(|i| {
                    lens[s][i] && (0..=max_len).any(|j| lens[t][j] && i % m == j % m)
                })
            });
            if ok {
                p.insert(s, t);
            }
        }
    }
    p
}

// 3. pair engines. Lengths up to 12 do not reach every residue: for (ab)*,
// ε and (ab)⁺ agree modulo 7 only from length 14 on. The search runs to length 20
// and the line reports how many morphisms the shorter window misjudges.
fn criterion_3() -> Check {
    let mut checked = 0;
    let mut short_window_misses = 0;
    for d in fixture_languages() {
        let alpha = e(transition_monoid(&d.minimize()))?;
        let eta = e(eta_at(alpha.alphabet()))?;
        ensure(e(at_pairs(&alpha))? == e(eta_pairs(&alpha, &eta, None))?, || "AT pairs differ".into())?;
        if alpha.monoid().size() <= 6 {
            let closed = e(mod_pairs(&alpha))?;
            ensure(closed == brute_mod_pairs(&alpha, 20), || {
                format!("MOD pairs differ on {:?}", d.enumerate_words(4))
            })?;
            short_window_misses += usize::from(closed != brute_mod_pairs(&alpha, 12));
            checked += 1;
        }
    }
    Ok(format!(
        "MOD on {checked} morphisms ({short_window_misses} misjudged with |w| <= 12), AT on all"
    ))
}

fn at_params(al: &Alphabet) -> Vec<LangParam> {
    ["(a|b)*", "a*", "b*", "~", "(a|b)*a(a|b)*", "(a|b)*b(a|b)*", "(a|b)*a(a|b)* & (a|b)*b(a|b)*"]
        .iter()
        .map(|t| LangParam::from_regex(t, al).unwrap())
        .collect()
}

fn random_formula(rng: &mut ChaCha8Rng, params: &[LangParam], depth: usize) -> TlFormula {
    let leaf = |rng: &mut ChaCha8Rng| match rng.gen_range(0..5) {
        0 => TlFormula::True,
        1 => TlFormula::Min,
        2 => TlFormula::Max,
        3 => TlFormula::Letter(0),
        _ => TlFormula::Letter(1),
    };
    let go = |rng: &mut ChaCha8Rng, d: usize| random_formula(rng, params, d);
    match rng.gen_range(0..6) {
        0 => TlFormula::not(go(rng, depth)),
        1 => TlFormula::and(go(rng, depth), go(rng, depth)),
        2 => TlFormula::or(go(rng, depth), go(rng, depth)),
        3 | 4 if depth > 0 => {
            let l = params[rng.gen_range(0..params.len())].clone();
            TlFormula::finally(l, go(rng, depth - 1))
        }
        5 if depth > 0 => {
            let l = params[rng.gen_range(0..params.len())].clone();
            TlFormula::previously(l, go(rng, depth - 1))
        }
        _ => leaf(rng),
    }
}

// 4. compiler soundness
fn criterion_4() -> Check {
    let al = ab();
    let params = at_params(&al);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let words: Vec<Word> = al.words_up_to(8).collect();
    let mut count = 0;
    let mut deep = 0;
    while count < 40 {
        let f = random_formula(&mut rng, &params, 3);
        if f.size() > 14 {
            continue;
        }
        let d = e(compile(&f, &al))?;
        let sem = language_of(&f);
        for w in &words {
            ensure(d.accepts(w) == sem(w), || format!("{} on {w:?}", f.display(&al)))?;
        }
        let m = e(decide_membership(&d, ClassName::Tl2St))?.member;
        ensure(m == Verdict::True, || format!("{} not in TL2_ST", f.display(&al)))?;
        deep += usize::from(f.depth() >= 2);
        count += 1;
    }
    Ok(format!("{count} formulas ({deep} with nested modalities)"))
}

// 5. separation suite
fn criterion_5() -> Check {
    let a = Alphabet::from_chars("a").unwrap();
    let al = ab();
    let sep = |x: &Dfa, y: &Dfa| decide_separation(x, y).map(|o| o.result);
    ensure(e(sep(&re("(aa)*", &a), &re("a(aa)*", &a)))? == SeparationDecision::NotSeparable, || {
        "parity".into()
    })?;
    let c = re("(a|b)*a(a|b)*", &al);
    ensure(e(sep(&c, &c.complement()))? == SeparationDecision::Separable, || "A*aA*".into())?;
    let (u1, v1) = e(uv_languages(1))?;
    ensure(e(sep(&u1, &v1))? == SeparationDecision::Separable, || "U1 vs V1".into())?;
    for k in 0..=2 {
        let (u, _) = e(uv_languages(k))?;
        let m = e(decide_membership(&u, ClassName::Tl2St))?.member;
        ensure(m == Verdict::True, || format!("U{k} membership {m:?}"))?;
    }
    let mut members = 0;
    for (i, d) in random_suite(15).iter().enumerate() {
        let s = e(sep(d, &d.complement()))?;
        let m = e(decide_membership(d, ClassName::Tl2St))?.member;
        ensure(s != SeparationDecision::Unknown && m != Verdict::Unknown, || {
            format!("unknown on random DFA {i}")
        })?;
        ensure((s == SeparationDecision::Separable) == (m == Verdict::True), || {
            format!("consistency fails on random DFA {i}: {s:?} vs {m:?}")
        })?;
        members += usize::from(m == Verdict::True);
    }
    Ok(format!("fixed cases and 15 random DFAs ({members} members), no unknowns"))
}

fn suite_maps() -> Vec<(String, RatingMap<PowersetSemiring>)> {
    let a = Alphabet::from_chars("a").unwrap();
    let al = ab();
    let mut langs: Vec<(String, Dfa)> = vec![
        ("(aa)*".into(), re("(aa)*", &a)),
        ("(a|b)*a(a|b)*".into(), re("(a|b)*a(a|b)*", &al)),
        ("(ab)*".into(), re("(ab)*", &al)),
    ];
    let (u1, v1) = uv_languages(1).unwrap();
    langs.push(("U1".into(), u1));
    langs.push(("V1".into(), v1));
    for (i, d) in random_suite(15).into_iter().enumerate() {
        langs.push((format!("random {i}"), d));
    }
    langs
        .into_iter()
        .map(|(n, d)| {
            let syn = syntactic_morphism(&d).unwrap();
            (n, canonical_rating_map(&syn.morphism).unwrap())
        })
        .collect()
}

// 6. saturation integrity
fn criterion_6() -> Check {
    let budget = TlxBudget::default();
    let mut crossed = 0;
    let maps = suite_maps();
    for (name, rho) in &maps {
        let s = rho.semiring();
        let lower = e(saturate(rho, Mode::Lower))?;
        let upper = e(saturate(rho, Mode::Upper))?;
        ensure(lower.same_sets(s, &upper), || format!("{name}: modes differ"))?;
        for st in [&lower, &upper] {
            let audit = e(audit_fixpoint(rho, st, &budget))?;
            ensure(audit.is_none(), || format!("{name}: not a fixpoint: {audit:?}"))?;
        }
        if s.monoid().size() <= 4 {
            let all = Dfa::universal(rho.alphabet());
            let via = e(imprint_via_covering_decisions(&all, rho, |l, ls| {
                decide_covering(l, ls).map(|o| o.result)
            }))?;
            let opt = lower.opt(s);
            let same = via.as_ref().is_some_and(|v| v.is_subset(s, &opt) && opt.is_subset(s, v));
            ensure(same, || format!("{name}: covering cross-check differs"))?;
            crossed += 1;
        }
    }
    Ok(format!("{} instances, {crossed} cross-checked by covering", maps.len()))
}

/// Every monoid on {0, 1, 2} (identity 0) and smaller, as validated tables.
fn small_monoids() -> Vec<Monoid> {
    let mut out = vec![Monoid::trivial()];
    for x in 0..2 {
        if let Ok(m) = Monoid::new(vec![vec![0, 1], vec![1, x]], 0) {
            out.push(m);
        }
    }
    for code in 0..81usize {
        let d: Vec<usize> = (0..4).map(|i| code / 3usize.pow(i) % 3).collect();
        let t = vec![vec![0, 1, 2], vec![1, d[0], d[1]], vec![2, d[2], d[3]]];
        if let Ok(m) = Monoid::new(t, 0) {
            out.push(m);
        }
    }
    out
}

// 7. TLX oracle
fn criterion_7() -> Check {
    let mut singles = 0;
    for m in small_monoids() {
        let s = PowersetSemiring::new(Arc::new(m)).unwrap();
        for q in s.elements().unwrap() {
            let b = tlx_imprint(&SemiringAlphabet::new(s.clone(), [q]));
            let x = single_letter_exact(&s, q);
            let same = |i: &tlhier_core::rating::Imprint| i.is_subset(&s, &x) && x.is_subset(&s, i);
            ensure(same(&b.lower) && same(&b.upper), || format!("single letter {q:#b}"))?;
            singles += 1;
        }
    }
    let al = ab();
    let fixed = ["(ab)*", "(aa)*", "a*b*", "(a|b)*ab(a|b)*", "(aab)*", "(a|b)*a(a|b)", "a(ba)*", "b*ab*", "(ab|ba)*"];
    let mut suite: Vec<(PowersetSemiring, Vec<u64>)> = Vec::new();
    for t in fixed {
        let rho = canonical_rating_map(&transition_monoid(&re(t, &al)).unwrap()).unwrap();
        suite.push((rho.semiring().clone(), rho.letter_ratings().to_vec()));
    }
    let z3 = PowersetSemiring::new(Arc::new(Monoid::cyclic_group(3))).unwrap();
    suite.push((z3, vec![0b010, 0b100, 0b011]));
    for (i, (s, q)) in suite.iter().enumerate() {
        let b = tlx_imprint(&SemiringAlphabet::new(s.clone(), q.iter().copied()));
        ensure(b.exact, || format!("suite instance {i} not exact"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut random = 0;
    while random < 200 {
        let n = rng.gen_range(2..=4);
        let d = random_dfa(&mut rng, &al, n);
        let alpha = transition_monoid(&d).unwrap();
        if alpha.monoid().size() > 12 {
            continue;
        }
        let s = PowersetSemiring::new(alpha.monoid_arc().clone()).unwrap();
        let full = (1u64 << alpha.monoid().size()) - 1;
        let q: Vec<u64> = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(0..=full)).collect();
        let b = tlx_imprint(&SemiringAlphabet::new(s.clone(), q));
        ensure(b.lower.is_subset(&s, &b.upper), || format!("random instance {random}"))?;
        random += 1;
    }
    Ok(format!("{singles} single-letter instances, 10 exact, 200 random sandwiches"))
}

// 8. TL3
fn criterion_8() -> Check {
    let al = ab();
    let classes = ["~", "a+", "b+", "((a|b)*a(a|b)*) & ((a|b)*b(a|b)*)"];
    for mask in 0..16usize {
        let parts: Vec<String> =
            (0..4).filter(|i| mask >> i & 1 == 1).map(|i| format!("({})", classes[i])).collect();
        let text = if parts.is_empty() { "@".to_string() } else { parts.join("|") };
        let v = e(decide_tl3_st(&re(&text, &al)))?.member;
        ensure(v == Verdict::True, || format!("AT language {text}: {v:?}"))?;
    }
    let v = e(decide_tl3_st(&re("(ab)*", &al)))?.member;
    ensure(v == Verdict::True, || format!("(ab)*: {v:?}"))?;
    let v = e(decide_tl3_st(&re("(aa)*", &Alphabet::from_chars("a").unwrap())))?.member;
    ensure(v == Verdict::False, || format!("parity: {v:?}"))?;
    Ok("16 AT languages and (ab)* true, parity false".into())
}

fn main() -> ExitCode {
    let criteria: [(usize, fn() -> Check); 8] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
    ];
    let mut failed = 0;
    for (n, f) in criteria {
        let start = Instant::now();
        let r = f();
        let secs = start.elapsed().as_secs_f64();
        match r {
            Ok(detail) => println!("criterion {n}: PASS ({detail}; {secs:.1}s)"),
            Err(why) => {
                failed += 1;
                println!("criterion {n}: FAIL ({why}; {secs:.1}s)");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
