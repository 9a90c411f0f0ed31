//! `tlhier`: JSON front end for tlhier-core.
//!
//! Exit codes: 0 answered, 2 unknown, 3 unsupported base, 4 input error,
//! 5 resource limit.

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use tlhier_core::algebra::{syntactic_morphism, transition_monoid};
use tlhier_core::automata::{regex_dfa, Alphabet, AutomatonJson, Dfa};
use tlhier_core::corpus::{CorpusSpec, Family};
use tlhier_core::cpairs::{BaseClass, PairSet};
use tlhier_core::membership::{decide_membership, ClassName, Verdict};
use tlhier_core::rating::{
    canonical_rating_map, CoverDecision, IdemSemiring, Imprint, RatingMap, RatingMapJson,
};
use tlhier_core::tl::{compile, parse_formula, satisfaction, FormulaAst, TlFormula};
use tlhier_core::tlat::{
    decide_covering, decide_separation, saturate, synthesize_cover, tlat_pairs, Mode,
    SeparationDecision, SynthesisBudget,
};
use tlhier_core::tlx::{tlx_imprint_with, SemiringAlphabet, TlxBudget};
use tlhier_core::Error;

const FORMAT: &str = "tlhier/1";

#[derive(Parser)]
#[command(name = "tlhier", version, about = "Membership, separation and covering for unary temporal logic hierarchies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct AlphabetArg {
    /// Letters, e.g. `ab` or `l0,l1`.
    #[arg(long)]
    alphabet: String,
}

#[derive(Subcommand)]
enum Command {
    /// Syntactic monoid of a language.
    Monoid {
        #[command(flatten)]
        al: AlphabetArg,
        /// Regex, or `@file.json` for an automaton.
        #[arg(long)]
        lang: String,
        /// Transition monoid of the minimal DFA, without an accepting set.
        #[arg(long)]
        transition: bool,
    },
    /// C-pairs of the syntactic morphism.
    Pairs {
        #[command(flatten)]
        al: AlphabetArg,
        #[arg(long)]
        lang: String,
        /// ST, DD, MOD, AT or TL-AT.
        #[arg(long)]
        base: String,
    },
    /// Membership of a language in a class.
    Member {
        #[command(flatten)]
        al: AlphabetArg,
        #[arg(long)]
        class: String,
        #[arg(long)]
        lang: String,
    },
    /// Separation of two languages by the class.
    Separate {
        #[command(flatten)]
        al: AlphabetArg,
        #[arg(long, default_value = "tl2-st")]
        class: String,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// Covering of a language with respect to languages to avoid.
    Cover {
        #[command(flatten)]
        al: AlphabetArg,
        #[arg(long, default_value = "tl2-st")]
        class: String,
        #[arg(long)]
        target: String,
        #[arg(long, required = true, num_args = 1..)]
        avoid: Vec<String>,
        /// Also search for formulas defining a separating cover.
        #[arg(long)]
        synthesize: bool,
    },
    /// Optimal TL(AT) imprint of a rating map: saturation rows in both modes.
    Imprint {
        /// Rating map JSON; defaults to the canonical map of `--lang`.
        #[arg(long)]
        rating: Option<String>,
        #[arg(long)]
        alphabet: Option<String>,
        #[arg(long)]
        lang: Option<String>,
    },
    /// Minimal DFA of a formula.
    CompileFormula {
        #[command(flatten)]
        al: AlphabetArg,
        /// Formula text, or `@file.json` for the JSON syntax tree.
        #[arg(long)]
        formula: String,
    },
    /// Truth value of a formula on a word.
    EvalFormula {
        #[command(flatten)]
        al: AlphabetArg,
        #[arg(long)]
        formula: String,
        /// Concatenated letter names; `~` is the empty word.
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 0)]
        position: usize,
    },
    /// Witness languages.
    Corpus {
        /// H, K, L, U, V, betaU or deltaGammaU.
        #[arg(long)]
        family: String,
        #[arg(long, visible_alias = "n")]
        k: usize,
        /// Write the automaton here instead of embedding it in the response.
        #[arg(long)]
        out: Option<String>,
    },
    /// TLX imprint bounds of Q⁺ for letters rated by semiring elements.
    TlxImprint {
        /// Semiring JSON (letter ratings, if any, are ignored).
        #[arg(long)]
        semiring: String,
        /// Comma separated element indices.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        q: Vec<usize>,
        #[arg(long, default_value_t = 2)]
        max_k: usize,
    },
}

struct Response {
    body: Map<String, Value>,
    unknown: bool,
}

impl Response {
    fn answered(body: Value) -> Self {
        Response::new(body, false)
    }

    fn new(body: Value, unknown: bool) -> Self {
        let body = match body {
            Value::Object(m) => m,
            other => Map::from_iter([("value".to_string(), other)]),
        };
        Response { body, unknown }
    }
}

type Outcome = Result<Response, Error>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 4,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let name = command_name(&cli.command);
    match run(cli.command) {
        Ok(resp) => {
            let mut out = envelope(name);
            out.extend(resp.body);
            emit(out);
            ExitCode::from(if resp.unknown { 2 } else { 0 })
        }
        Err(e) => {
            let (code, kind) = classify(&e);
            let mut out = envelope(name);
            out.insert("error".into(), json!({ "kind": kind, "message": e.to_string() }));
            emit(out);
            ExitCode::from(code)
        }
    }
}

fn emit(out: Map<String, Value>) {
    use std::io::Write;
    let text = serde_json::to_string_pretty(&Value::Object(out)).expect("response serializes");
    // a closed pipe is not an error worth reporting
    let _ = writeln!(std::io::stdout(), "{text}");
}

fn envelope(command: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("format".into(), json!(FORMAT));
    m.insert("command".into(), json!(command));
    m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    m
}

fn classify(e: &Error) -> (u8, &'static str) {
    match e {
        Error::UnsupportedBase(_) => (3, "unsupported"),
        Error::Resource(_) => (5, "resource"),
        Error::ExactnessRequired(_) => (2, "exactness_required"),
        _ => (4, "input"),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Monoid { .. } => "monoid",
        Command::Pairs { .. } => "pairs",
        Command::Member { .. } => "member",
        Command::Separate { .. } => "separate",
        Command::Cover { .. } => "cover",
        Command::Imprint { .. } => "imprint",
        Command::CompileFormula { .. } => "compile-formula",
        Command::EvalFormula { .. } => "eval-formula",
        Command::Corpus { .. } => "corpus",
        Command::TlxImprint { .. } => "tlx-imprint",
    }
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Monoid { al, lang, transition } => {
            let al = alphabet(&al.alphabet)?;
            let d = language(&lang, &al)?;
            let v = if transition {
                let m = transition_monoid(&d.minimize())?;
                let lang = tlhier_core::algebra::RecognizedLanguage {
                    accepting: vec![false; m.monoid().size()],
                    morphism: m,
                };
                serde_json::to_value(lang.to_json())
            } else {
                serde_json::to_value(syntactic_morphism(&d)?.to_json())
            };
            Ok(Response::answered(v.expect("monoid serializes")))
        }
        Command::Pairs { al, lang, base } => {
            let al = alphabet(&al.alphabet)?;
            let syn = syntactic_morphism(&language(&lang, &al)?)?;
            let alpha = &syn.morphism;
            let norm: String = base.chars().filter(|c| !matches!(c, '-' | '_')).collect();
            if norm.eq_ignore_ascii_case("tlat") {
                let p = tlat_pairs(alpha)?;
                let exact = p.is_exact();
                return Ok(Response::new(
                    json!({
                        "base": "TL_AT",
                        "monoid_size": alpha.monoid().size(),
                        "exact": exact,
                        "pairs": pair_list(&p.lower),
                        "possible_pairs": pair_list(&p.upper),
                    }),
                    !exact,
                ));
            }
            let b: BaseClass = base.parse()?;
            let p = b.pairs(alpha)?;
            Ok(Response::answered(json!({
                "base": b.name(),
                "monoid_size": alpha.monoid().size(),
                "pairs": pair_list(&p),
            })))
        }
        Command::Member { al, class, lang } => {
            let al = alphabet(&al.alphabet)?;
            let class: ClassName = class.parse()?;
            let out = decide_membership(&language(&lang, &al)?, class)?;
            let member = match out.member.as_bool() {
                Some(b) => json!(b),
                None => json!("unknown"),
            };
            Ok(Response::new(
                json!({
                    "class": out.class,
                    "member": member,
                    "monoid_size": out.monoid_size,
                    "certificate": out.certificate,
                }),
                out.member == Verdict::Unknown,
            ))
        }
        Command::Separate { al, class, lhs, rhs } => {
            check_tlat_class(&class)?;
            let al = alphabet(&al.alphabet)?;
            let out = decide_separation(&language(&lhs, &al)?, &language(&rhs, &al)?)?;
            let unknown = out.result == SeparationDecision::Unknown;
            Ok(Response::new(serde_json::to_value(out).unwrap(), unknown))
        }
        Command::Cover { al, class, target, avoid, synthesize } => {
            check_tlat_class(&class)?;
            let al = alphabet(&al.alphabet)?;
            let l0 = language(&target, &al)?;
            let ls = avoid.iter().map(|a| language(a, &al)).collect::<Result<Vec<_>, _>>()?;
            let out = decide_covering(&l0, &ls)?;
            let mut body = json!({ "result": out.result, "mode_detail": out });
            if synthesize && out.result == CoverDecision::Coverable {
                let fs = synthesize_cover(&l0, &ls, &SynthesisBudget::default())?;
                let texts: Vec<String> = fs.iter().map(|f| f.display(&al).to_string()).collect();
                body["cover"] = json!(texts);
            }
            Ok(Response::new(body, out.result == CoverDecision::Unknown))
        }
        Command::Imprint { rating, alphabet: al, lang } => match (rating, lang) {
            (Some(path), None) => {
                let j: RatingMapJson = read_json(&path)?;
                imprint_response(&j.to_rating_map()?)
            }
            (None, Some(lang)) => {
                let al = alphabet(al.as_deref().ok_or_else(|| {
                    Error::Invalid("--alphabet is required with --lang".into())
                })?)?;
                let syn = syntactic_morphism(&language(&lang, &al)?)?;
                imprint_response(&canonical_rating_map(&syn.morphism)?)
            }
            _ => Err(Error::Invalid("give exactly one of --rating and --lang".into())),
        },
        Command::CompileFormula { al, formula } => {
            let al = alphabet(&al.alphabet)?;
            let f = formula_arg(&formula, &al)?;
            let d = compile(&f, &al)?;
            let mut body = serde_json::to_value(d.to_json()).unwrap();
            body["formula"] = json!(f.display(&al).to_string());
            Ok(Response::answered(body))
        }
        Command::EvalFormula { al, formula, word, position } => {
            let al = alphabet(&al.alphabet)?;
            let f = formula_arg(&formula, &al)?;
            let w = al.parse_word(&word)?;
            let value = tlhier_core::tl::eval(&f, &w, position)?;
            Ok(Response::answered(json!({
                "formula": f.display(&al).to_string(),
                "word": al.format_word(&w),
                "position": position,
                "value": value,
                "in_language": satisfaction(&f, &w)[0],
            })))
        }
        Command::Corpus { family, k, out } => {
            let spec = CorpusSpec::new(Family::parse(&family)?, k);
            let d = spec.build()?;
            let mut aut = d.to_json();
            aut.format = Some(FORMAT.into());
            let mut body = json!({
                "family": spec.family,
                "index": spec.index,
                "alphabet": spec.alphabet()?.letters(),
                "states": d.num_states(),
                "unchecked_claims": spec.unchecked_claims(),
            });
            match out {
                Some(path) => {
                    fs::write(&path, aut.to_json_string() + "\n")
                        .map_err(|e| Error::Invalid(format!("{path}: {e}")))?;
                    body["out"] = json!(path);
                }
                None => body["automaton"] = serde_json::to_value(&aut).unwrap(),
            }
            Ok(Response::answered(body))
        }
        Command::TlxImprint { semiring, q, max_k } => {
            let j: RatingMapJson = read_json(&semiring)?;
            let s = j.semiring()?;
            if let Some(&x) = q.iter().find(|&&x| x >= s.size()) {
                return Err(Error::Invalid(format!("element {x} outside the semiring")));
            }
            let alpha = SemiringAlphabet::new(s, q.iter().map(|&x| x as u64));
            let budget = TlxBudget { max_k, ..TlxBudget::default() };
            let b = tlx_imprint_with(&alpha, &budget);
            Ok(Response::new(
                json!({ "q": q, "lower": b.lower, "upper": b.upper, "exact": b.exact }),
                !b.exact,
            ))
        }
    }
}

fn alphabet(text: &str) -> Result<Alphabet, Error> {
    Alphabet::parse_list(text)
}

/// Regex text, or `@path` to an automaton JSON file over the same alphabet.
fn language(arg: &str, al: &Alphabet) -> Result<Dfa, Error> {
    match arg.strip_prefix('@') {
        Some(path) => {
            let j: AutomatonJson = read_json(path)?;
            let d = j.to_dfa()?;
            if d.alphabet() != al {
                return Err(Error::AlphabetMismatch);
            }
            Ok(d)
        }
        None => regex_dfa(arg, al),
    }
}

fn formula_arg(arg: &str, al: &Alphabet) -> Result<TlFormula, Error> {
    match arg.strip_prefix('@') {
        Some(path) => read_json::<FormulaAst>(path)?.to_formula(al),
        None => parse_formula(arg, al),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &str) -> Result<T, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Error::Invalid(format!("{path}: {e}")))
}

fn check_tlat_class(class: &str) -> Result<(), Error> {
    match class.parse::<ClassName>()? {
        ClassName::Tl2St => Ok(()),
        other => Err(Error::UnsupportedBase(format!("covering for {other}"))),
    }
}

fn pair_list(p: &PairSet) -> Value {
    json!(p.to_vec())
}

fn imprint_response<S: IdemSemiring>(rho: &RatingMap<S>) -> Outcome {
    let s = rho.semiring();
    let lower = saturate(rho, Mode::Lower)?;
    let upper = saturate(rho, Mode::Upper)?;
    let exact = lower.same_sets(s, &upper);
    let al = rho.alphabet();
    let rows = |st: &tlhier_core::tlat::SaturationState| -> Value {
        let mut m = Map::new();
        for (b, row) in st.rows.iter().enumerate() {
            let content: String = (0..al.len())
                .filter(|a| b >> a & 1 == 1)
                .map(|a| al.name(a).to_string())
                .collect::<Vec<_>>()
                .join(",");
            m.insert(format!("{{{content}}}"), describe(s, row));
        }
        Value::Object(m)
    };
    Ok(Response::new(
        json!({
            "exact": exact,
            "opt": describe(s, &lower.opt(s)),
            "opt_upper": describe(s, &upper.opt(s)),
            "rows": rows(&lower),
            "rows_upper": rows(&upper),
        }),
        !exact,
    ))
}

/// Maximal elements of an imprint, as the semiring prints them.
fn describe<S: IdemSemiring>(s: &S, imp: &Imprint) -> Value {
    json!(imp.generators().iter().map(|&r| s.describe(r)).collect::<Vec<_>>())
}
