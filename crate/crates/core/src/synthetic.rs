//! Deterministic generator for a small Latin-like inflected corpus.
//!
//! Every word form is built from a root and one or two suffix morphemes, so
//! gold segmentations are known by construction. The generator deliberately
//! plants the ambiguities the contextual presegmenter has to resolve:
//!
//! * adjective vs. verb readings (`R+ar` + `i` against `R` + `ari`),
//! * noun vs. participle readings (`R+at` + `us` against `R` + `at` + `us`),
//! * same-tag readings with different piece counts (`R` + `ato` against
//!   `R` + `at` + `o`),
//!
//! with the analyses of each word listed in a random order. Function words
//! and pronouns are unsegmented lexicon entries; proper names and punctuation
//! are absent from the lexicon.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use rand::distributions::WeightedIndex;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::corpus::{Corpus, GoldItem, GoldSegmentationSet, SuffixList, TaggedCorpus};
use crate::error::{Error, Result};
use crate::lexicon::{MorphAnalysis, MorphLexicon};
use crate::morph::{acontextual_choice, disambiguate};
use crate::pos::{AnalyzerPos, PosMapping, UdPos};
use crate::segmentation::{Segmentation, DEFAULT_DELIMITER};

#[derive(Debug, Clone, PartialEq)]
pub struct MiniCorpusConfig {
    pub seed: u64,
    /// Running words in the training corpus.
    pub train_words: usize,
    /// Running words in the held-out text the gold sets are drawn from.
    pub test_words: usize,
}

impl Default for MiniCorpusConfig {
    fn default() -> Self {
        Self {
            seed: 20_250_101,
            train_words: 50_000,
            test_words: 6_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct MiniCorpus {
    pub tagged: TaggedCorpus,
    pub test: TaggedCorpus,
    pub lexicon: MorphLexicon,
    pub suffixes: SuffixList,
    /// Unique (word, tag) pairs of the test text, resolved with their tags.
    pub gold_contextual: GoldSegmentationSet,
    /// Unique words of the test text with their first analysis.
    pub gold_acontextual: GoldSegmentationSet,
}

impl MiniCorpus {
    pub fn corpus(&self) -> Corpus {
        self.tagged.to_corpus()
    }

    /// Writes the standard file set into `dir`.
    pub fn write_to_dir(&self, dir: impl AsRef<Path>) -> Result<()> {
        let dir = dir.as_ref();
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let d = DEFAULT_DELIMITER;
        let files = [
            (MINI_FILES.corpus, self.corpus().to_text()),
            (MINI_FILES.tagged, self.tagged.to_text()),
            (MINI_FILES.test, self.test.to_text()),
            (MINI_FILES.lexicon, self.lexicon.to_text(d)),
            (MINI_FILES.suffixes, self.suffixes.to_text()),
            (MINI_FILES.gold_contextual, self.gold_contextual.to_text(d)),
            (MINI_FILES.gold_acontextual, self.gold_acontextual.to_text(d)),
        ];
        for (name, text) in files {
            let path = dir.join(name);
            fs::write(&path, text).map_err(|e| Error::io(&path, e))?;
        }
        Ok(())
    }
}

/// File names used by [`MiniCorpus::write_to_dir`].
pub struct MiniFiles {
    pub corpus: &'static str,
    pub tagged: &'static str,
    pub test: &'static str,
    pub lexicon: &'static str,
    pub suffixes: &'static str,
    pub gold_contextual: &'static str,
    pub gold_acontextual: &'static str,
}

pub const MINI_FILES: MiniFiles = MiniFiles {
    corpus: "corpus.txt",
    tagged: "tagged.tsv",
    test: "test_tagged.tsv",
    lexicon: "lexicon.tsv",
    suffixes: "suffixes.txt",
    gold_contextual: "gold_contextual.tsv",
    gold_acontextual: "gold_acontextual.tsv",
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Class {
    Noun1,
    Noun2,
    Noun3,
    Adj,
    Verb,
}

impl Class {
    fn paradigm(self) -> &'static [&'static [&'static str]] {
        match self {
            Class::Noun1 => &[&["a"], &["ae"], &["am"], &["arum"], &["is"], &["as"]],
            Class::Noun2 => &[&["us"], &["i"], &["o"], &["um"], &["orum"], &["os"], &["is"]],
            Class::Noun3 => &[&["is"], &["em"], &["e"], &["es"], &["ibus"], &["um"]],
            Class::Adj => &[
                &["us"], &["a"], &["um"], &["i"], &["ae"], &["o"],
                &["am"], &["os"], &["as"], &["orum"], &["arum"], &["is"],
            ],
            Class::Verb => &[
                &["o"], &["as"], &["at"], &["amus"], &["atis"], &["ant"], &["are"],
                &["ari"], &["aris"], &["atur"], &["abat"], &["abant"], &["avit"], &["ato"],
                &["at", "us"], &["at", "um"], &["at", "o"], &["at", "a"], &["at", "i"],
                &["at", "is"], &["at", "ae"],
            ],
        }
    }

    fn analyzer_pos(self) -> AnalyzerPos {
        match self {
            Class::Noun1 | Class::Noun2 | Class::Noun3 => AnalyzerPos::Noun,
            Class::Adj => AnalyzerPos::Adjective,
            Class::Verb => AnalyzerPos::Verb,
        }
    }

    fn ud(self) -> UdPos {
        match self {
            Class::Noun1 | Class::Noun2 | Class::Noun3 => UdPos::Noun,
            Class::Adj => UdPos::Adj,
            Class::Verb => UdPos::Verb,
        }
    }
}

#[derive(Debug, Clone)]
struct Lexeme {
    root: String,
    class: Class,
}

impl Lexeme {
    fn forms(&self) -> impl Iterator<Item = (String, Segmentation)> + '_ {
        self.class.paradigm().iter().map(|suffix| {
            let mut pieces = vec![self.root.clone()];
            pieces.extend(suffix.iter().map(|s| s.to_string()));
            let seg = Segmentation::new(pieces).expect("non-empty pieces");
            (seg.word(), seg)
        })
    }
}

/// Unsegmented closed-class words.
const FUNCTION_WORDS: &[(&str, UdPos, AnalyzerPos)] = &[
    ("et", UdPos::Cconj, AnalyzerPos::Conjunction),
    ("sed", UdPos::Cconj, AnalyzerPos::Conjunction),
    ("nec", UdPos::Cconj, AnalyzerPos::Conjunction),
    ("in", UdPos::Adp, AnalyzerPos::Preposition),
    ("ad", UdPos::Adp, AnalyzerPos::Preposition),
    ("cum", UdPos::Adp, AnalyzerPos::Preposition),
    ("per", UdPos::Adp, AnalyzerPos::Preposition),
    ("ex", UdPos::Adp, AnalyzerPos::Preposition),
    ("de", UdPos::Adp, AnalyzerPos::Preposition),
    ("non", UdPos::Adv, AnalyzerPos::Invariable),
    ("iam", UdPos::Adv, AnalyzerPos::Invariable),
    ("tum", UdPos::Adv, AnalyzerPos::Invariable),
    ("sic", UdPos::Adv, AnalyzerPos::Invariable),
    ("ut", UdPos::Sconj, AnalyzerPos::Conjunction),
    ("si", UdPos::Sconj, AnalyzerPos::Conjunction),
    ("quod", UdPos::Sconj, AnalyzerPos::Conjunction),
    ("ego", UdPos::Pron, AnalyzerPos::Pronoun),
    ("tu", UdPos::Pron, AnalyzerPos::Pronoun),
    ("nos", UdPos::Pron, AnalyzerPos::Pronoun),
    ("qui", UdPos::Pron, AnalyzerPos::Pronoun),
    ("quae", UdPos::Pron, AnalyzerPos::Pronoun),
];

const ONSETS: &[&str] = &["b", "c", "d", "f", "g", "l", "m", "n", "p", "r", "s", "t", "v", "qu", "pr", "tr", "fl"];
const VOWELS: &[&str] = &["a", "e", "i", "o", "u"];
const CODAS: &[&str] = &["r", "n", "s", "t", "l", "c", "m", "d", "nt", "rm", "rt", "st", "rb", "nd", "lc"];

fn make_root(rng: &mut ChaCha8Rng) -> String {
    let mut root = String::new();
    let syllables = if rng.gen_bool(0.55) { 1 } else { 2 };
    for i in 0..syllables {
        if i > 0 || rng.gen_bool(0.8) {
            root.push_str(ONSETS.choose(rng).expect("non-empty"));
        }
        root.push_str(VOWELS.choose(rng).expect("non-empty"));
    }
    root.push_str(CODAS.choose(rng).expect("non-empty"));
    root
}

struct Generator {
    rng: ChaCha8Rng,
    nouns: Vec<Lexeme>,
    adjectives: Vec<Lexeme>,
    verbs: Vec<Lexeme>,
    names: Vec<String>,
}

fn zipf(n: usize, s: f64) -> WeightedIndex<f64> {
    WeightedIndex::new((1..=n).map(|r| 1.0 / (r as f64).powf(s))).expect("positive weights")
}

impl Generator {
    fn new(seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut used: BTreeSet<String> = FUNCTION_WORDS.iter().map(|(w, _, _)| w.to_string()).collect();
        let fresh = |rng: &mut ChaCha8Rng, used: &mut BTreeSet<String>| loop {
            let r = make_root(rng);
            // Keep derived stems (`R+at`, `R+ar`) from colliding with plain roots.
            let derived = [format!("{r}at"), format!("{r}ar")];
            if !used.contains(&r) && derived.iter().all(|d| !used.contains(d)) {
                used.insert(r.clone());
                used.extend(derived);
                return r;
            }
        };

        let mut nouns = Vec::new();
        let mut adjectives = Vec::new();
        let mut verbs = Vec::new();
        for (class, n) in [(Class::Noun1, 80), (Class::Noun2, 90), (Class::Noun3, 60)] {
            for _ in 0..n {
                nouns.push(Lexeme { root: fresh(&mut rng, &mut used), class });
            }
        }
        for _ in 0..70 {
            adjectives.push(Lexeme { root: fresh(&mut rng, &mut used), class: Class::Adj });
        }
        for _ in 0..120 {
            let root = fresh(&mut rng, &mut used);
            let roll: f64 = rng.gen();
            if roll < 0.3 {
                adjectives.push(Lexeme { root: format!("{root}ar"), class: Class::Adj });
            } else if roll < 0.5 {
                nouns.push(Lexeme { root: format!("{root}at"), class: Class::Noun2 });
            }
            verbs.push(Lexeme { root, class: Class::Verb });
        }
        let names = (0..40).map(|_| format!("{}ius", fresh(&mut rng, &mut used))).collect();

        // Frequency rank is independent of creation order.
        nouns.shuffle(&mut rng);
        adjectives.shuffle(&mut rng);
        verbs.shuffle(&mut rng);
        Self { rng, nouns, adjectives, verbs, names }
    }

    fn lexicon(&mut self) -> MorphLexicon {
        let mut readings: BTreeMap<String, Vec<MorphAnalysis>> = BTreeMap::new();
        for lex in self.nouns.iter().chain(&self.adjectives).chain(&self.verbs) {
            for (word, seg) in lex.forms() {
                let a = MorphAnalysis { morphemes: seg, pos: lex.class.analyzer_pos() };
                let list = readings.entry(word).or_default();
                if !list.contains(&a) {
                    list.push(a);
                }
            }
        }
        for &(w, _, pos) in FUNCTION_WORDS {
            readings.entry(w.to_string()).or_default().push(MorphAnalysis { morphemes: Segmentation::whole(w), pos });
        }
        let mut lexicon = MorphLexicon::default();
        for (word, mut list) in readings {
            list.shuffle(&mut self.rng);
            for a in list {
                lexicon.insert(&word, a).expect("forms spell their word");
            }
        }
        lexicon
    }

    fn text(&mut self, words: usize) -> TaggedCorpus {
        let categories = WeightedIndex::new([0.22, 0.30, 0.13, 0.25, 0.03]).expect("weights");
        let nouns = zipf(self.nouns.len(), 1.0);
        let adjectives = zipf(self.adjectives.len(), 1.0);
        let verbs = zipf(self.verbs.len(), 1.0);
        let function = zipf(FUNCTION_WORDS.len(), 0.8);
        let names = zipf(self.names.len(), 1.0);

        let mut sentences = Vec::new();
        let mut total = 0;
        while total < words {
            let len = self.rng.gen_range(5..=12);
            let mut sentence = Vec::with_capacity(len + 1);
            for i in 0..len {
                let rng = &mut self.rng;
                let lexeme = match categories.sample(rng) {
                    0 => {
                        let (w, tag, _) = FUNCTION_WORDS[function.sample(rng)];
                        sentence.push((w.to_string(), tag));
                        continue;
                    }
                    1 => &self.nouns[nouns.sample(rng)],
                    2 => &self.adjectives[adjectives.sample(rng)],
                    3 => &self.verbs[verbs.sample(rng)],
                    _ => {
                        sentence.push((self.names[names.sample(rng)].clone(), UdPos::Propn));
                        continue;
                    }
                };
                let suffix = lexeme.class.paradigm().choose(rng).expect("non-empty paradigm");
                let word = format!("{}{}", lexeme.root, suffix.concat());
                sentence.push((word, lexeme.class.ud()));
                if i + 1 < len && rng.gen_bool(0.05) {
                    sentence.push((",".to_string(), UdPos::Punct));
                }
            }
            sentence.push((".".to_string(), UdPos::Punct));
            total += sentence.len();
            sentences.push(sentence);
        }
        TaggedCorpus::new(sentences)
    }
}

pub fn generate(cfg: &MiniCorpusConfig) -> MiniCorpus {
    let mut g = Generator::new(cfg.seed);
    let lexicon = g.lexicon();
    let tagged = g.text(cfg.train_words);
    let test = g.text(cfg.test_words);
    let mapping = PosMapping::default();

    let suffixes = SuffixList::new(
        lexicon
            .iter()
            .flat_map(|(_, analyses)| analyses.iter().flat_map(|a| a.morphemes.pieces()[1..].iter().cloned()))
            .collect::<BTreeSet<_>>(),
    )
    .expect("non-empty suffixes");

    let mut seen_ctx = BTreeSet::new();
    let mut seen_actx = BTreeSet::new();
    let mut contextual = Vec::new();
    let mut acontextual = Vec::new();
    for (word, tag) in test.sentences().iter().flatten() {
        let Some(analyses) = lexicon.get(word) else { continue };
        if seen_ctx.insert((word.clone(), *tag)) {
            let gold = disambiguate(analyses, *tag, &mapping)
                .chosen
                .unwrap_or_else(|| Segmentation::whole(word.as_str()));
            contextual.push(GoldItem { word: word.clone(), pos: Some(*tag), gold });
        }
        if seen_actx.insert(word.clone()) {
            acontextual.push(GoldItem { word: word.clone(), pos: None, gold: acontextual_choice(analyses) });
        }
    }

    MiniCorpus {
        tagged,
        test,
        lexicon,
        suffixes,
        gold_contextual: GoldSegmentationSet::new(contextual).expect("gold spells words"),
        gold_acontextual: GoldSegmentationSet::new(acontextual).expect("gold spells words"),
    }
}
