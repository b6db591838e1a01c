//! Fixtures, reference values and randomized generators shared by the
//! integration tests and the acceptance harness.
//!
//! Every expected number below was computed outside this crate with exact
//! rational arithmetic (or plain float arithmetic in a different order) and
//! pasted in as a literal.
#![allow(dead_code)]

use std::collections::BTreeMap;

use codemix_tagger::corpus::{BroadPos, Dictionary, Sentence, TaggedToken};
use codemix_tagger::decoder::{brute_force_decode, viterbi};
use codemix_tagger::features::{make_pseudo_word, MetaTag, Mode, ObservationKey};
use codemix_tagger::model::{
    deleted_interpolation, train, EmissionVariant, ModelConfig, TagSet, TrainedModel,
};
use rand::seq::SliceRandom;
use rand::Rng;

pub type Check = Result<(), String>;

pub const FIXTURE_TOL: f64 = 1e-12;
pub const SUM_TOL: f64 = 1e-9;

pub fn close(what: &str, got: f64, want: f64, tol: f64) -> Check {
    if (got - want).abs() <= tol {
        Ok(())
    } else {
        Err(format!("{what}: got {got:e}, want {want:e} (tol {tol:e})"))
    }
}

pub fn equal<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Check {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

/// `"w/lang/TAG w/lang/TAG"` to a sentence.
pub fn sentence(spec: &str) -> Sentence {
    let tokens = spec
        .split_whitespace()
        .map(|t| {
            let parts: Vec<&str> = t.split('/').collect();
            TaggedToken::tagged(parts[0], parts[1], parts[2])
        })
        .collect();
    Sentence::new(tokens).unwrap()
}

pub fn corpus(specs: &[&str]) -> Vec<Sentence> {
    specs.iter().map(|s| sentence(s)).collect()
}

// ---------------------------------------------------------------------------
// Hand fixtures

/// One sentence, ten tokens alternating X and Y.
pub fn xy_corpus() -> Vec<Sentence> {
    let spec: Vec<String> = (0..10)
        .map(|i| format!("w{i}/en/{}", if i % 2 == 0 { "X" } else { "Y" }))
        .collect();
    vec![sentence(&spec.join(" "))]
}

pub fn three_tag_corpus() -> Vec<Sentence> {
    corpus(&[
        "ami/bn/PR_PRP khabo/bn/V_VM bhat/bn/N_NN",
        "ami/bn/PR_PRP bhat/bn/N_NN khabo/bn/V_VM",
        "i/en/PR_PRP eat/en/V_VM rice/en/N_NN",
        "khabo/bn/N_NN",
        "rice/en/N_NN eat/en/V_VM",
    ])
}

pub fn dictionary_corpus() -> Vec<Sentence> {
    corpus(&[
        "eat/en/Y rice/en/Z",
        "#fun/en/X eat/en/Y",
        "go/en/Y #life/en/Z",
        "run/en/X the/en/X",
        "the/en/X go/en/Y",
        "the/en/X rice/en/Z",
    ])
}

pub fn verb_dictionary() -> Dictionary {
    ["eat", "go", "run", "jump"]
        .into_iter()
        .map(|w| (w.to_owned(), BroadPos::Verb))
        .collect()
}

pub fn dictionary_config() -> ModelConfig {
    ModelConfig {
        mode: Mode::Unconstrained,
        max_suffix_len: 2,
        ..ModelConfig::default()
    }
}

fn id(model: &TrainedModel, name: &str) -> codemix_tagger::model::TagId {
    model
        .tag_set()
        .id(name)
        .unwrap_or_else(|| panic!("tag {name}"))
}

fn named_counts<const N: usize>(
    tags: &TagSet,
    entries: impl Iterator<Item = ([codemix_tagger::model::TagId; N], u64)>,
) -> BTreeMap<Vec<String>, u64> {
    entries
        .map(|(ids, n)| (ids.iter().map(|&t| tags.name(t).to_owned()).collect(), n))
        .collect()
}

fn table(rows: &[(&[&str], u64)]) -> BTreeMap<Vec<String>, u64> {
    rows.iter()
        .map(|(k, n)| (k.iter().map(|s| s.to_string()).collect(), *n))
        .collect()
}

const B1: &str = "<BOS1>";
const B2: &str = "<BOS2>";
const EOS: &str = "<EOS>";

pub fn check_xy_interpolation() -> Check {
    let model = train(&xy_corpus(), None, ModelConfig::default()).map_err(|e| e.to_string())?;
    let di = deleted_interpolation(model.counts());
    equal("accumulators", di.accumulators, [1, 1, 9])?;
    let l = model.lambdas();
    close("lambda1", l.unigram, 1.0 / 11.0, FIXTURE_TOL)?;
    close("lambda2", l.bigram, 1.0 / 11.0, FIXTURE_TOL)?;
    close("lambda3", l.trigram, 9.0 / 11.0, FIXTURE_TOL)
}

pub fn check_three_tag_counts() -> Check {
    let model =
        train(&three_tag_corpus(), None, ModelConfig::default()).map_err(|e| e.to_string())?;
    let tags = model.tag_set();
    let c = model.counts();
    equal(
        "tag order",
        tags.names().to_vec(),
        vec!["PR_PRP".to_owned(), "V_VM".into(), "N_NN".into()],
    )?;
    equal("token total", c.token_total(), 12)?;
    let unigram: BTreeMap<String, u64> = tags
        .all_ids()
        .map(|t| (tags.name(t).to_owned(), c.unigram(t)))
        .collect();
    let want_uni: BTreeMap<String, u64> = [
        (B1, 5),
        (B2, 5),
        ("PR_PRP", 3),
        ("V_VM", 4),
        ("N_NN", 5),
        (EOS, 0),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_owned(), v))
    .collect();
    equal("unigram", unigram, want_uni)?;
    let bigram = named_counts(tags, c.bigrams().map(|((a, b), n)| ([a, b], n)));
    equal(
        "bigram",
        bigram,
        table(&[
            (&[B1, B2], 5),
            (&[B2, "PR_PRP"], 3),
            (&["PR_PRP", "V_VM"], 2),
            (&["V_VM", "N_NN"], 2),
            (&["N_NN", EOS], 3),
            (&["PR_PRP", "N_NN"], 1),
            (&["N_NN", "V_VM"], 2),
            (&["V_VM", EOS], 2),
            (&[B2, "N_NN"], 2),
        ]),
    )?;
    let trigram = named_counts(tags, c.trigrams().map(|((a, b, d), n)| ([a, b, d], n)));
    equal(
        "trigram",
        trigram,
        table(&[
            (&[B1, B2, "PR_PRP"], 3),
            (&[B2, "PR_PRP", "V_VM"], 2),
            (&["PR_PRP", "V_VM", "N_NN"], 2),
            (&["V_VM", "N_NN", EOS], 2),
            (&[B2, "PR_PRP", "N_NN"], 1),
            (&["PR_PRP", "N_NN", "V_VM"], 1),
            (&["N_NN", "V_VM", EOS], 2),
            (&[B1, B2, "N_NN"], 2),
            (&[B2, "N_NN", EOS], 1),
            (&[B2, "N_NN", "V_VM"], 1),
        ]),
    )
}

pub fn check_three_tag_interpolation() -> Check {
    let model =
        train(&three_tag_corpus(), None, ModelConfig::default()).map_err(|e| e.to_string())?;
    equal(
        "accumulators",
        deleted_interpolation(model.counts()).accumulators,
        [5, 1, 11],
    )?;
    let l = model.lambdas();
    close("lambda1", l.unigram, 5.0 / 17.0, FIXTURE_TOL)?;
    close("lambda2", l.bigram, 1.0 / 17.0, FIXTURE_TOL)?;
    close("lambda3", l.trigram, 11.0 / 17.0, FIXTURE_TOL)
}

pub fn check_three_tag_transitions() -> Check {
    let model =
        train(&three_tag_corpus(), None, ModelConfig::default()).map_err(|e| e.to_string())?;
    let cases: [([&str; 3], f64); 8] = [
        ([B1, B2, "PR_PRP"], 169.0 / 340.0),
        ([B1, B2, "N_NN"], 413.0 / 1020.0),
        (["PR_PRP", "V_VM", "N_NN"], 163.0 / 204.0),
        ([B2, "PR_PRP", "V_VM"], 29.0 / 51.0),
        (["V_VM", "N_NN", EOS], 58.0 / 85.0),
        (["N_NN", "V_VM", EOS], 23.0 / 34.0),
        (["PR_PRP", "N_NN", "V_VM"], 196.0 / 255.0),
        (["V_VM", "PR_PRP", "N_NN"], 29.0 / 204.0),
    ];
    for ([a, b, c], want) in cases {
        let got = model.transition_prob(a, b, c).map_err(|e| e.to_string())?;
        close(&format!("P({c} | {a}, {b})"), got, want, FIXTURE_TOL)?;
    }
    Ok(())
}

pub fn check_three_tag_emissions() -> Check {
    let key = ObservationKey::new("khabo", MetaTag::Default, "bn");
    let model =
        train(&three_tag_corpus(), None, ModelConfig::default()).map_err(|e| e.to_string())?;
    for (tag, want) in [("PR_PRP", 0.0), ("V_VM", 2.0 / 3.0), ("N_NN", 1.0 / 3.0)] {
        let got = model.emission_prob(&key, tag).map_err(|e| e.to_string())?;
        close(&format!("e(khabo, {tag})"), got, want, FIXTURE_TOL)?;
    }
    let config = ModelConfig {
        emission_variant: EmissionVariant::Conditional,
        ..ModelConfig::default()
    };
    let model = train(&three_tag_corpus(), None, config).map_err(|e| e.to_string())?;
    for (tag, want) in [("PR_PRP", 0.0), ("V_VM", 0.5), ("N_NN", 0.2)] {
        let got = model.emission_prob(&key, tag).map_err(|e| e.to_string())?;
        close(
            &format!("conditional e(khabo, {tag})"),
            got,
            want,
            FIXTURE_TOL,
        )?;
    }
    Ok(())
}

pub fn check_three_tag_unknown() -> Check {
    let model =
        train(&three_tag_corpus(), None, ModelConfig::default()).map_err(|e| e.to_string())?;
    close(
        "theta",
        model.suffix_model().theta(),
        0.08333333333333334,
        FIXTURE_TOL,
    )?;
    let key = ObservationKey::new("kheyechi", MetaTag::Default, "bn");
    let levels = model
        .suffix_model()
        .abstraction_levels(&make_pseudo_word(&key));
    let last = levels.last().ok_or("no abstraction levels")?;
    equal(
        "deepest suffix",
        last.suffix.as_str(),
        "i\u{1f}bn\u{1f}YYYY",
    )?;
    equal("level count", levels.len(), 10)?;
    let want_dist = [
        0.961462600515855,
        0.00010114803014211302,
        0.038436251454002944,
    ];
    let want_scores = [3.84585040206342, 0.0003034440904263391, 0.09224700348960706];
    for (i, tag) in ["PR_PRP", "V_VM", "N_NN"].into_iter().enumerate() {
        close(
            &format!("P({tag} | s)"),
            last.distribution[id(&model, tag).index()],
            want_dist[i],
            FIXTURE_TOL,
        )?;
        let got = model.unknown_prob(&key, tag).map_err(|e| e.to_string())?;
        close(
            &format!("unknown score {tag}"),
            got,
            want_scores[i],
            FIXTURE_TOL,
        )?;
    }
    Ok(())
}

pub fn check_dictionary_unknown() -> Check {
    let model = train(
        &dictionary_corpus(),
        Some(verb_dictionary()),
        dictionary_config(),
    )
    .map_err(|e| e.to_string())?;
    let l = model.lambdas();
    close("lambda1", l.unigram, 2.0 / 9.0, FIXTURE_TOL)?;
    close("lambda2", l.bigram, 1.0 / 18.0, FIXTURE_TOL)?;
    close("lambda3", l.trigram, 13.0 / 18.0, FIXTURE_TOL)?;
    let suffixes = model.suffix_model();
    for (s, n) in [("", 9), ("B", 7), ("RB", 5), ("Y", 2), ("YY", 2), ("HB", 2)] {
        equal(&format!("suffix total {s:?}"), suffixes.suffix_total(s), n)?;
    }
    equal("suffix count", suffixes.num_suffixes(), 6)?;
    close("theta", suffixes.theta(), 0.08333333333333334, FIXTURE_TOL)?;

    let key = ObservationKey::new("jump", MetaTag::Verb, "en");
    let levels = suffixes.abstraction_levels(&make_pseudo_word(&key));
    let want: [(&str, [f64; 3]); 3] = [
        ("", [4.0 / 9.0, 3.0 / 9.0, 2.0 / 9.0]),
        (
            "B",
            [0.5616605616605617, 0.15750915750915753, 0.28083028083028083],
        ),
        (
            "RB",
            [
                0.7816661970508125,
                0.012116089039165966,
                0.20621771391002164,
            ],
        ),
    ];
    equal("level count", levels.len(), want.len())?;
    for (level, (suffix, dist)) in levels.iter().zip(want) {
        equal("level suffix", level.suffix.as_str(), suffix)?;
        for (tag, p) in ["Y", "Z", "X"].into_iter().zip(dist) {
            close(
                &format!("P({tag} | {suffix:?})"),
                level.distribution[id(&model, tag).index()],
                p,
                FIXTURE_TOL,
            )?;
        }
    }
    for (tag, want) in [
        ("Y", 2.3449985911524376),
        ("Z", 0.04846435615666386),
        ("X", 0.4949225133840519),
    ] {
        let got = model.unknown_prob(&key, tag).map_err(|e| e.to_string())?;
        close(&format!("unknown score {tag}"), got, want, FIXTURE_TOL)?;
    }
    Ok(())
}

pub type NamedCheck = (&'static str, fn() -> Check);

pub const FIXTURE_CHECKS: &[NamedCheck] = &[
    ("alternating X/Y interpolation", check_xy_interpolation),
    ("three-tag count tables", check_three_tag_counts),
    ("three-tag interpolation", check_three_tag_interpolation),
    ("three-tag transitions", check_three_tag_transitions),
    ("three-tag emissions", check_three_tag_emissions),
    ("three-tag unknown word", check_three_tag_unknown),
    ("dictionary-mode unknown word", check_dictionary_unknown),
];

// ---------------------------------------------------------------------------
// Naive count oracle: string keys, padded sequences, no shared code.

pub struct NaiveCounts {
    pub unigram: BTreeMap<String, u64>,
    pub bigram: BTreeMap<(String, String), u64>,
    pub trigram: BTreeMap<(String, String, String), u64>,
    pub tokens: u64,
}

pub fn naive_counts(corpus: &[Sentence]) -> NaiveCounts {
    let mut out = NaiveCounts {
        unigram: BTreeMap::new(),
        bigram: BTreeMap::new(),
        trigram: BTreeMap::new(),
        tokens: 0,
    };
    for s in corpus {
        let mut padded = vec![B1.to_owned(), B2.to_owned()];
        padded.extend(s.iter().map(|t| t.pos_tag.clone().unwrap()));
        padded.push(EOS.to_owned());
        out.tokens += s.len() as u64;
        for t in &padded[..padded.len() - 1] {
            *out.unigram.entry(t.clone()).or_default() += 1;
        }
        for w in padded.windows(2) {
            *out.bigram.entry((w[0].clone(), w[1].clone())).or_default() += 1;
        }
        for w in padded.windows(3) {
            *out.trigram
                .entry((w[0].clone(), w[1].clone(), w[2].clone()))
                .or_default() += 1;
        }
    }
    out
}

pub fn check_counts_against_naive(corpus: &[Sentence], model: &TrainedModel) -> Check {
    let naive = naive_counts(corpus);
    let tags = model.tag_set();
    let c = model.counts();
    equal("token total", c.token_total(), naive.tokens)?;
    for a in tags.all_ids() {
        let na = tags.name(a).to_owned();
        equal(
            &format!("unigram {na}"),
            c.unigram(a),
            naive.unigram.get(&na).copied().unwrap_or(0),
        )?;
        for b in tags.all_ids() {
            let nb = tags.name(b).to_owned();
            let want = naive
                .bigram
                .get(&(na.clone(), nb.clone()))
                .copied()
                .unwrap_or(0);
            equal(&format!("bigram {na} {nb}"), c.bigram(a, b), want)?;
            for d in tags.all_ids() {
                let nd = tags.name(d).to_owned();
                let want = naive
                    .trigram
                    .get(&(na.clone(), nb.clone(), nd))
                    .copied()
                    .unwrap_or(0);
                equal("trigram", c.trigram(a, b, d), want)?;
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Normalization

pub fn check_normalization(model: &TrainedModel, probes: &[ObservationKey]) -> Check {
    close("lambda sum", model.lambdas().sum(), 1.0, FIXTURE_TOL)?;
    let tags = model.tag_set();
    let counts = model.counts();

    if model.config().emission_variant == EmissionVariant::Observation {
        for (o, _) in counts.observations() {
            let sum: f64 = model.emission_scores(o).iter().sum();
            close(&format!("sum_t e({o}, t)"), sum, 1.0, SUM_TOL)?;
        }
    }

    let targets: Vec<_> = tags.real_ids().chain([tags.eos()]).collect();
    for a in tags.all_ids() {
        for b in tags.all_ids() {
            if b == tags.eos() || counts.bigram(a, b) == 0 {
                continue;
            }
            let sum: f64 = targets
                .iter()
                .map(|&c| model.transition_prob_ids(a, b, c))
                .sum();
            close(
                &format!("sum_t P(t | {}, {})", tags.name(a), tags.name(b)),
                sum,
                1.0,
                SUM_TOL,
            )?;
        }
    }

    let seen = counts.observations().map(|(o, _)| o.clone());
    for o in seen.chain(probes.iter().cloned()) {
        for level in model
            .suffix_model()
            .abstraction_levels(&make_pseudo_word(&o))
        {
            let sum: f64 = level.distribution.iter().sum();
            close(
                &format!("sum_t P(t | {:?})", level.suffix),
                sum,
                1.0,
                SUM_TOL,
            )?;
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Random micro-models

const WORDS: &[&str] = &["a", "b", "c", "dd", "#e", "f#g", "খা", "h", "ab"];
const UNSEEN: &[&str] = &["zz", "#new", "q#r", "খাবো", "cab", "x"];
const LANGS: &[&str] = &["en", "bn"];

pub struct MicroModel {
    pub corpus: Vec<Sentence>,
    pub model: TrainedModel,
}

pub fn random_config<R: Rng>(rng: &mut R) -> (ModelConfig, Option<Dictionary>) {
    let unconstrained = rng.gen_bool(0.3);
    let dict = unconstrained.then(|| {
        [
            ("a", BroadPos::Verb),
            ("b", BroadPos::Pronoun),
            ("x", BroadPos::Conjunction),
        ]
        .into_iter()
        .map(|(w, p)| (w.to_owned(), p))
        .collect()
    });
    let config = ModelConfig {
        mode: if unconstrained {
            Mode::Unconstrained
        } else {
            Mode::Constrained
        },
        emission_variant: if rng.gen_bool(0.5) {
            EmissionVariant::Observation
        } else {
            EmissionVariant::Conditional
        },
        max_suffix_len: rng.gen_range(0..=6),
        rare_threshold: rng.gen_range(0..=3),
    };
    (config, dict)
}

pub fn random_corpus<R: Rng>(rng: &mut R, max_tags: usize, max_len: usize) -> Vec<Sentence> {
    let num_tags = rng.gen_range(1..=max_tags);
    let tag_names: Vec<String> = (0..num_tags).map(|i| format!("T{i}")).collect();
    let sentences = rng.gen_range(1..=10);
    (0..sentences)
        .map(|_| {
            let len = rng.gen_range(1..=max_len);
            let tokens = (0..len)
                .map(|_| {
                    TaggedToken::tagged(
                        *WORDS.choose(rng).unwrap(),
                        *LANGS.choose(rng).unwrap(),
                        tag_names.choose(rng).unwrap().as_str(),
                    )
                })
                .collect();
            Sentence::new(tokens).unwrap()
        })
        .collect()
}

pub fn random_micro_model<R: Rng>(rng: &mut R, max_tags: usize, max_len: usize) -> MicroModel {
    let corpus = random_corpus(rng, max_tags, max_len);
    let (config, dict) = random_config(rng);
    let model = train(&corpus, dict, config).expect("random corpora are valid");
    MicroModel { corpus, model }
}

pub fn random_input<R: Rng>(
    rng: &mut R,
    model: &TrainedModel,
    max_len: usize,
) -> Vec<ObservationKey> {
    let len = rng.gen_range(1..=max_len);
    (0..len)
        .map(|_| {
            let pool = if rng.gen_bool(0.7) { WORDS } else { UNSEEN };
            let token =
                TaggedToken::untagged(*pool.choose(rng).unwrap(), *LANGS.choose(rng).unwrap());
            model.observation(&token)
        })
        .collect()
}

/// Viterbi against exhaustive search on one input: scores must be identical
/// and sequences must match under the shared tie-break.
pub fn check_oracle_equivalence(model: &TrainedModel, obs: &[ObservationKey]) -> Check {
    let fast = viterbi(model, obs).map_err(|e| e.to_string())?;
    let slow = brute_force_decode(model, obs).map_err(|e| e.to_string())?;
    if fast.log_score.to_bits() != slow.log_score.to_bits() && fast.log_score != slow.log_score {
        return Err(format!(
            "score mismatch: viterbi {:e}, brute force {:e}",
            fast.log_score, slow.log_score
        ));
    }
    equal("sequence", fast.tag_names(model), slow.tag_names(model))?;
    equal("fallback flag", fast.fallback_used, slow.fallback_used)
}

// ---------------------------------------------------------------------------
// Meta-tags

/// Reference rule written against byte offsets: `#` at offset 0 is a
/// hash-begin, anywhere else hash-embedded.
pub fn reference_meta(word: &str, mode: Mode, dict: &Dictionary) -> &'static str {
    match word.find('#') {
        Some(0) => "HB",
        Some(_) => "HE",
        None => match (mode, dict.get(word)) {
            (Mode::Unconstrained, Some(BroadPos::Verb)) => "VERB",
            (Mode::Unconstrained, Some(BroadPos::Pronoun)) => "PNON",
            (Mode::Unconstrained, Some(BroadPos::Conjunction)) => "CONJ",
            _ => "YYYY",
        },
    }
}

const META_ALPHABET: &[char] = &['#', 'a', 'Z', 'ক', 'ো', 'ह', '😀', '\u{301}', '_'];

/// Every word of length 1..=3 over a mixed-script alphabet, plus a seeded
/// sample of longer ones.
pub fn meta_tag_corpus() -> Vec<String> {
    let mut words: Vec<String> = META_ALPHABET.iter().map(|c| c.to_string()).collect();
    for _ in 0..2 {
        let longer: Vec<String> = words
            .iter()
            .filter(|w| w.chars().count() == words.last().unwrap().chars().count())
            .flat_map(|w| META_ALPHABET.iter().map(move |c| format!("{w}{c}")))
            .collect();
        words.extend(longer);
    }
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(4);
    for _ in 0..5000 {
        let len = rng.gen_range(4..=12);
        words.push(
            (0..len)
                .map(|_| *META_ALPHABET.choose(&mut rng).unwrap())
                .collect(),
        );
    }
    words
}

pub fn check_meta_tag_conformance() -> Check {
    use codemix_tagger::features::assign_meta_tag;

    let words = meta_tag_corpus();
    // Every other word goes into the dictionary, cycling through the three
    // broad categories, so hash words in the dictionary test precedence.
    let dict: Dictionary = words
        .iter()
        .enumerate()
        .filter(|(i, _)| i % 2 == 0)
        .map(|(i, w)| {
            let pos = [BroadPos::Verb, BroadPos::Pronoun, BroadPos::Conjunction][(i / 2) % 3];
            (w.clone(), pos)
        })
        .collect();
    let empty = Dictionary::new();
    for word in &words {
        let constrained = assign_meta_tag(word, Mode::Constrained, None);
        equal(
            &format!("constrained {word:?}"),
            constrained.as_str(),
            reference_meta(word, Mode::Constrained, &empty),
        )?;
        if !matches!(
            constrained,
            MetaTag::Default | MetaTag::HashBegin | MetaTag::HashEmbedded
        ) {
            return Err(format!(
                "constrained mode produced {constrained} for {word:?}"
            ));
        }
        let unconstrained = assign_meta_tag(word, Mode::Unconstrained, Some(&dict));
        equal(
            &format!("unconstrained {word:?}"),
            unconstrained.as_str(),
            reference_meta(word, Mode::Unconstrained, &dict),
        )?;
        equal(
            &format!("repeat {word:?}"),
            assign_meta_tag(word, Mode::Unconstrained, Some(&dict)),
            unconstrained,
        )?;
        // A dictionary is ignored in constrained mode even if one is passed.
        equal(
            &format!("constrained+dict {word:?}"),
            assign_meta_tag(word, Mode::Constrained, Some(&dict)),
            constrained,
        )?;
    }
    for (word, want) in [
        ("#win", "HB"),
        ("win#day", "HE"),
        ("plain", "YYYY"),
        ("#", "HB"),
        ("a#", "HE"),
    ] {
        equal(
            word,
            assign_meta_tag(word, Mode::Constrained, None).as_str(),
            want,
        )?;
    }
    let khabo: Dictionary = [("khabo".to_owned(), BroadPos::Verb)].into_iter().collect();
    equal(
        "khabo",
        assign_meta_tag("khabo", Mode::Unconstrained, Some(&khabo)).as_str(),
        "VERB",
    )?;
    Ok(())
}

// ---------------------------------------------------------------------------
// Round-trips

pub fn check_corpus_roundtrip(text: &str) -> Check {
    use codemix_tagger::corpus::{parse_training_file, write_tagged_file};
    let parsed = parse_training_file(text).map_err(|e| e.to_string())?;
    let written = write_tagged_file(&parsed).map_err(|e| e.to_string())?;
    let reparsed = parse_training_file(&written).map_err(|e| e.to_string())?;
    equal("reparsed sentences", &reparsed, &parsed)?;
    let rewritten = write_tagged_file(&reparsed).map_err(|e| e.to_string())?;
    if rewritten != written {
        return Err("second write differs from the first".into());
    }
    Ok(())
}

/// Saves and reloads `model`, then compares every transition, the emission
/// scores of every seen observation plus `probes`, the interpolation weights,
/// the suffix tables and the re-serialized bytes.
pub fn check_model_roundtrip(model: &TrainedModel, probes: &[ObservationKey]) -> Check {
    use codemix_tagger::model::{read_model, write_model};
    let text = write_model(model);
    let loaded = read_model(&text).map_err(|e| e.to_string())?;
    if write_model(&loaded) != text {
        return Err("re-serialized model differs".into());
    }
    equal("config", loaded.config(), model.config())?;
    equal("tags", loaded.tag_set().names(), model.tag_set().names())?;
    equal("lambdas", loaded.lambdas(), model.lambdas())?;
    equal(
        "theta",
        loaded.suffix_model().theta().to_bits(),
        model.suffix_model().theta().to_bits(),
    )?;
    equal(
        "suffixes",
        loaded.suffix_model().sorted_entries(),
        model.suffix_model().sorted_entries(),
    )?;
    equal("majority tag", loaded.majority_tag(), model.majority_tag())?;
    let tags = model.tag_set();
    for a in tags.all_ids() {
        for b in tags.all_ids() {
            for c in tags.all_ids() {
                let (x, y) = (
                    model.transition_prob_ids(a, b, c),
                    loaded.transition_prob_ids(a, b, c),
                );
                if x.to_bits() != y.to_bits() {
                    return Err(format!("transition {a:?} {b:?} {c:?}: {x:e} vs {y:e}"));
                }
            }
        }
    }
    let seen: Vec<ObservationKey> = model
        .counts()
        .observations()
        .map(|(o, _)| o.clone())
        .collect();
    for o in seen.iter().chain(probes) {
        let (x, y) = (model.emission_scores(o), loaded.emission_scores(o));
        let same = x.len() == y.len() && x.iter().zip(&y).all(|(p, q)| p.to_bits() == q.to_bits());
        if !same {
            return Err(format!("emission scores for {o} differ: {x:?} vs {y:?}"));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Pipeline

pub fn bundled_corpus_text() -> &'static str {
    include_str!("../../data/synthetic_corpus.tsv")
}

pub fn bundled_dict_text() -> &'static str {
    include_str!("../../data/synthetic_dict.tsv")
}

pub const TRAIN_SENTENCES: usize = 160;

/// Writes the train split, a raw held-out file and the gold held-out file
/// into `dir`; returns `(train, raw, gold)` paths.
pub fn write_split(
    dir: &std::path::Path,
) -> (std::path::PathBuf, std::path::PathBuf, std::path::PathBuf) {
    use codemix_tagger::corpus::{parse_training_file, write_tagged_file};
    let corpus = parse_training_file(bundled_corpus_text()).unwrap();
    let (train_set, held_out) = corpus.split_at(TRAIN_SENTENCES);
    let raw: String = held_out
        .iter()
        .map(|s| {
            let mut block: String = s
                .iter()
                .map(|t| format!("{}\t{}\n", t.word, t.lang_tag))
                .collect();
            block.push('\n');
            block
        })
        .collect();
    let paths = (
        dir.join("train.tsv"),
        dir.join("raw.tsv"),
        dir.join("gold.tsv"),
    );
    std::fs::write(&paths.0, write_tagged_file(train_set).unwrap()).unwrap();
    std::fs::write(&paths.1, raw).unwrap();
    std::fs::write(&paths.2, write_tagged_file(held_out).unwrap()).unwrap();
    paths
}

/// Runs the command line in-process; returns `(exit code, stdout, stderr)`.
pub fn run_cli(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("codemix-tagger").chain(args.iter().copied());
    let code = codemix_tagger::cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

pub struct PipelineRun {
    pub model: Vec<u8>,
    pub tagged: Vec<u8>,
    pub report: String,
    pub tsv: String,
}

/// train → tag → eval through the command line in a fresh directory.
pub fn run_pipeline(extra_train_args: &[&str]) -> Result<PipelineRun, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let (train_path, raw_path, gold_path) = write_split(dir.path());
    let model_path = dir.path().join("model.hmm");
    let pred_path = dir.path().join("pred.tsv");
    let s = |p: &std::path::Path| p.to_str().unwrap().to_owned();

    let mut args = vec![
        "train".to_owned(),
        "--input".into(),
        s(&train_path),
        "--model".into(),
        s(&model_path),
    ];
    args.extend(extra_train_args.iter().map(|a| a.to_string()));
    let argv: Vec<&str> = args.iter().map(String::as_str).collect();
    let (code, _, err) = run_cli(&argv);
    if code != 0 {
        return Err(format!("train exited {code}: {err}"));
    }
    let (code, _, err) = run_cli(&[
        "tag",
        "--model",
        &s(&model_path),
        "--input",
        &s(&raw_path),
        "--output",
        &s(&pred_path),
    ]);
    if code != 0 {
        return Err(format!("tag exited {code}: {err}"));
    }
    let (code, report, err) = run_cli(&[
        "eval",
        "--gold",
        &s(&gold_path),
        "--pred",
        &s(&pred_path),
        "--per-tag",
    ]);
    if code != 0 {
        return Err(format!("eval exited {code}: {err}"));
    }
    let (code, tsv, err) = run_cli(&[
        "eval",
        "--gold",
        &s(&gold_path),
        "--pred",
        &s(&pred_path),
        "--tsv",
    ]);
    if code != 0 {
        return Err(format!("eval --tsv exited {code}: {err}"));
    }
    Ok(PipelineRun {
        model: std::fs::read(&model_path).map_err(|e| e.to_string())?,
        tagged: std::fs::read(&pred_path).map_err(|e| e.to_string())?,
        report,
        tsv,
    })
}

// ---------------------------------------------------------------------------
// A larger synthetic corpus with 40 tags, for throughput.

/// Sentences from a sparse tag Markov chain where each tag emits mostly its
/// own Zipf-distributed vocabulary plus some words shared with other tags.
pub fn forty_tag_corpus(seed: u64, sentences: usize) -> Vec<Sentence> {
    use rand::distributions::{Distribution, WeightedIndex};
    const TAGS: usize = 40;
    const VOCAB: usize = 80;
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(0xF0F7);
    // The grammar is fixed; only the sampled sentences depend on `seed`.
    let successors: Vec<[usize; 4]> = (0..TAGS)
        .map(|_| {
            [
                rng.gen_range(0..TAGS),
                rng.gen_range(0..TAGS),
                rng.gen_range(0..TAGS),
                rng.gen_range(0..TAGS),
            ]
        })
        .collect();
    let zipf = WeightedIndex::new((0..VOCAB).map(|r| 1.0 / (r as f64 + 1.0))).unwrap();
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
    (0..sentences)
        .map(|_| {
            let len = rng.gen_range(6..=24);
            let mut tag = rng.gen_range(0..TAGS);
            let tokens = (0..len)
                .map(|_| {
                    tag = if rng.gen_bool(0.85) {
                        successors[tag][rng.gen_range(0..4)]
                    } else {
                        rng.gen_range(0..TAGS)
                    };
                    let rank = zipf.sample(&mut rng);
                    let word = if rng.gen_bool(0.1) {
                        format!("shared{}", (tag / 3) * 10 + rank % 10)
                    } else {
                        format!("w{tag}x{rank}")
                    };
                    let lang = if tag % 2 == 0 { "bn" } else { "en" };
                    TaggedToken::tagged(word, lang, format!("T{tag:02}"))
                })
                .collect();
            Sentence::new(tokens).unwrap()
        })
        .collect()
}
