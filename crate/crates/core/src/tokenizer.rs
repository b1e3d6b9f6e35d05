//! Trained tokenizers and the training pipeline that produces them.

use std::fmt;
use std::str::FromStr;

use crate::corpus::{Corpus, SuffixList, TaggedCorpus};
use crate::error::{Error, Result};
use crate::lexicon::MorphLexicon;
use crate::pos::{PosMapping, UdPos};
use crate::presegment::{presegment_acontextual, presegment_contextual, PresegMode, PresegStats, Presegmenter};
use crate::segmentation::{MarkerStyle, Segmentation, DEFAULT_DELIMITER, UNK_TOKEN};
use crate::training::{sample_sentences, WordTable};
use crate::unigram::{self, UlmTrainerConfig, UlmVocabulary};
use crate::wordpiece::{self, WpTrainerConfig, WpVocabulary};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    WordPiece,
    Unigram,
}

impl Algorithm {
    pub const ALL: [Algorithm; 2] = [Algorithm::WordPiece, Algorithm::Unigram];

    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::WordPiece => "wordpiece",
            Algorithm::Unigram => "ulm",
        }
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "wordpiece" | "wp" => Ok(Algorithm::WordPiece),
            "ulm" | "unigram" => Ok(Algorithm::Unigram),
            other => Err(Error::Config(format!("unknown algorithm `{other}`"))),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Kind of morphological guidance applied during training.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Guidance {
    Baseline,
    MorphSeed,
    MorphPreTokAcontextual,
    MorphPreTokContextual,
}

impl Guidance {
    pub const ALL: [Guidance; 4] = [
        Guidance::Baseline,
        Guidance::MorphSeed,
        Guidance::MorphPreTokAcontextual,
        Guidance::MorphPreTokContextual,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Guidance::Baseline => "baseline",
            Guidance::MorphSeed => "morphseed",
            Guidance::MorphPreTokAcontextual => "morphpretok-acontextual",
            Guidance::MorphPreTokContextual => "morphpretok-contextual",
        }
    }

    /// Presegmentation mode, for the pretokenization variants.
    pub fn preseg_mode(self) -> Option<PresegMode> {
        match self {
            Guidance::MorphPreTokAcontextual => Some(PresegMode::Acontextual),
            Guidance::MorphPreTokContextual => Some(PresegMode::Contextual),
            _ => None,
        }
    }
}

impl FromStr for Guidance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Guidance::ALL
            .into_iter()
            .find(|g| g.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown guidance `{s}`")))
    }
}

impl fmt::Display for Guidance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Model {
    WordPiece(WpVocabulary),
    Unigram(UlmVocabulary),
}

/// A trained tokenizer with the settings it was trained under.
#[derive(Debug, Clone, PartialEq)]
pub struct Tokenizer {
    pub model: Model,
    pub guidance: Guidance,
    pub delimiter: char,
    /// Training settings, recorded in the artifact header.
    pub config: Vec<(String, String)>,
}

impl Tokenizer {
    pub fn algorithm(&self) -> Algorithm {
        match self.model {
            Model::WordPiece(_) => Algorithm::WordPiece,
            Model::Unigram(_) => Algorithm::Unigram,
        }
    }

    pub fn vocab_len(&self) -> usize {
        match &self.model {
            Model::WordPiece(v) => v.len(),
            Model::Unigram(v) => v.len(),
        }
    }

    /// `None` means the word maps to `[UNK]`.
    pub fn encode_word(&self, word: &str) -> Option<Segmentation> {
        match &self.model {
            Model::WordPiece(v) => v.encode(word),
            Model::Unigram(v) => v.encode(word),
        }
    }

    /// Encodes a presegmented word; pieces never cross morpheme boundaries.
    pub fn encode_morphemes(&self, morphemes: &Segmentation) -> Option<Segmentation> {
        match &self.model {
            Model::WordPiece(v) => v.encode_morphemes(morphemes),
            Model::Unigram(v) => v.encode_morphemes(morphemes),
        }
    }

    pub fn marker_style(&self) -> MarkerStyle {
        match self.algorithm() {
            Algorithm::WordPiece => MarkerStyle::Continuation,
            Algorithm::Unigram => MarkerStyle::WordInitial,
        }
    }

    /// Marked tokens for output; `[UNK]` for uncovered words.
    pub fn render(&self, seg: Option<&Segmentation>) -> Vec<String> {
        match seg {
            Some(s) => s.render(self.marker_style()),
            None => vec![UNK_TOKEN.to_string()],
        }
    }

    pub fn config_value(&self, key: &str) -> Option<&str> {
        self.config.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

/// Anything that maps a (word, optional tag) to a segmentation.
pub trait WordSegmenter {
    /// `None` means the word is unknown to the segmenter.
    fn segment(&self, word: &str, pos: Option<UdPos>) -> Option<Segmentation>;
}

impl WordSegmenter for Tokenizer {
    fn segment(&self, word: &str, _pos: Option<UdPos>) -> Option<Segmentation> {
        self.encode_word(word)
    }
}

/// A tokenizer plus the presegmenter its guidance mode calls for.
#[derive(Debug, Clone, Copy)]
pub struct Pipeline<'a> {
    pub tokenizer: &'a Tokenizer,
    pub presegmenter: Option<Presegmenter<'a>>,
}

impl<'a> Pipeline<'a> {
    /// Without a lexicon, pretokenization artifacts encode raw words.
    pub fn new(tokenizer: &'a Tokenizer, lexicon: Option<&'a MorphLexicon>, mapping: &'a PosMapping) -> Self {
        let presegmenter = match (tokenizer.guidance.preseg_mode(), lexicon) {
            (Some(mode), Some(lex)) => Some(Presegmenter::new(lex, mapping, mode)),
            _ => None,
        };
        Self { tokenizer, presegmenter }
    }
}

impl WordSegmenter for Pipeline<'_> {
    fn segment(&self, word: &str, pos: Option<UdPos>) -> Option<Segmentation> {
        match &self.presegmenter {
            Some(p) => self.tokenizer.encode_morphemes(&p.segment(word, pos).0),
            None => self.tokenizer.encode_word(word),
        }
    }
}

/// Inputs available to [`train_tokenizer`]. Which ones are required depends
/// on the guidance mode.
#[derive(Debug, Clone, Copy)]
pub struct TrainInputs<'a> {
    pub corpus: Option<&'a Corpus>,
    pub tagged: Option<&'a TaggedCorpus>,
    pub lexicon: Option<&'a MorphLexicon>,
    pub mapping: &'a PosMapping,
    pub suffixes: Option<&'a SuffixList>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainOptions {
    pub algorithm: Algorithm,
    pub guidance: Guidance,
    /// Shared by both trainers.
    pub vocab_size: usize,
    pub min_pair_frequency: u64,
    pub shrinking_factor: f64,
    pub seed_weight: f64,
    pub seed_size: usize,
    pub max_piece_length: usize,
    pub em_iterations_per_round: usize,
    pub prune_utility: unigram::PruneUtility,
    /// Share of sentences used for training, in (0, 1].
    pub sample_fraction: f64,
    pub seed: u64,
    pub delimiter: char,
}

impl Default for TrainOptions {
    fn default() -> Self {
        let ulm = UlmTrainerConfig::default();
        Self {
            algorithm: Algorithm::WordPiece,
            guidance: Guidance::Baseline,
            vocab_size: 30_000,
            min_pair_frequency: WpTrainerConfig::default().min_pair_frequency,
            shrinking_factor: ulm.shrinking_factor,
            seed_weight: ulm.seed_weight,
            seed_size: ulm.seed_size,
            max_piece_length: ulm.max_piece_length,
            em_iterations_per_round: ulm.em_iterations_per_round,
            prune_utility: ulm.prune_utility,
            sample_fraction: 1.0,
            seed: 0,
            delimiter: DEFAULT_DELIMITER,
        }
    }
}

impl TrainOptions {
    /// Settings written to the artifact header, in a fixed order.
    pub fn config_entries(&self) -> Vec<(String, String)> {
        let mut kv = vec![
            ("vocab_size", self.vocab_size.to_string()),
            ("sample_fraction", self.sample_fraction.to_string()),
            ("seed", self.seed.to_string()),
        ];
        match self.algorithm {
            Algorithm::WordPiece => {
                kv.push(("min_pair_frequency", self.min_pair_frequency.to_string()));
            }
            Algorithm::Unigram => {
                kv.push(("shrinking_factor", self.shrinking_factor.to_string()));
                kv.push(("seed_weight", self.seed_weight.to_string()));
                kv.push(("seed_size", self.seed_size.to_string()));
                kv.push(("max_piece_length", self.max_piece_length.to_string()));
                kv.push(("em_iterations_per_round", self.em_iterations_per_round.to_string()));
                let utility = match self.prune_utility {
                    unigram::PruneUtility::Approximate => "approximate",
                    unigram::PruneUtility::Exact => "exact",
                };
                kv.push(("prune_utility", utility.to_string()));
            }
        }
        kv.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
    }
}

#[derive(Debug, Clone)]
pub struct TrainOutput {
    pub tokenizer: Tokenizer,
    pub preseg_stats: Option<PresegStats>,
    pub training_words: WordTable,
    pub warnings: Vec<String>,
}

/// Checks that the inputs required by `guidance` are present.
pub fn check_inputs(inputs: &TrainInputs<'_>, guidance: Guidance) -> Result<Vec<String>> {
    let mut warnings = Vec::new();
    match guidance {
        Guidance::MorphPreTokContextual => {
            if inputs.tagged.is_none() {
                return Err(Error::Config("morphpretok-contextual requires a tagged corpus".into()));
            }
            if inputs.lexicon.is_none() {
                return Err(Error::Config("morphpretok-contextual requires a lexicon".into()));
            }
        }
        Guidance::MorphPreTokAcontextual => {
            if inputs.lexicon.is_none() {
                return Err(Error::Config("morphpretok-acontextual requires a lexicon".into()));
            }
        }
        Guidance::MorphSeed => {
            if inputs.suffixes.is_none() {
                return Err(Error::Config("morphseed requires a suffix list".into()));
            }
        }
        Guidance::Baseline => {}
    }
    if inputs.corpus.is_none() && inputs.tagged.is_none() {
        return Err(Error::Config("a corpus or tagged corpus is required".into()));
    }
    if inputs.suffixes.is_some() && guidance != Guidance::MorphSeed {
        warnings.push(format!("suffix list ignored for guidance {guidance}"));
    }
    if inputs.lexicon.is_some() && guidance.preseg_mode().is_none() {
        warnings.push(format!("lexicon ignored for guidance {guidance}"));
    }
    Ok(warnings)
}

/// Presegments (when required), samples, and trains.
pub fn train_tokenizer(inputs: &TrainInputs<'_>, opts: &TrainOptions) -> Result<TrainOutput> {
    let warnings = check_inputs(inputs, opts.guidance)?;
    for w in &warnings {
        log::warn!("{w}");
    }
    if !(opts.sample_fraction > 0.0 && opts.sample_fraction <= 1.0) {
        return Err(Error::Config(format!(
            "sample fraction must lie in (0, 1], got {}",
            opts.sample_fraction
        )));
    }

    let (training_words, preseg_stats) = match opts.guidance {
        Guidance::MorphPreTokContextual => {
            let tagged = inputs.tagged.expect("checked");
            let sampled = TaggedCorpus::new(sample_sentences(tagged.sentences(), opts.sample_fraction, opts.seed));
            let p = presegment_contextual(&sampled, inputs.lexicon.expect("checked"), inputs.mapping);
            (WordTable::from_presegmented(&p), Some(p.stats))
        }
        Guidance::MorphPreTokAcontextual => {
            let corpus = corpus_of(inputs);
            let sampled = Corpus::from_sentences(sample_sentences(corpus.sentences(), opts.sample_fraction, opts.seed));
            let p = presegment_acontextual(&sampled, inputs.lexicon.expect("checked"));
            (WordTable::from_presegmented(&p), Some(p.stats))
        }
        Guidance::Baseline | Guidance::MorphSeed => {
            let corpus = corpus_of(inputs);
            let sampled = Corpus::from_sentences(sample_sentences(corpus.sentences(), opts.sample_fraction, opts.seed));
            (WordTable::from_corpus(&sampled), None)
        }
    };
    if training_words.is_empty() {
        return Err(Error::EmptyCorpus);
    }

    let seeding = match opts.guidance {
        Guidance::MorphSeed => inputs.suffixes.cloned(),
        _ => None,
    };
    let model = match opts.algorithm {
        Algorithm::WordPiece => Model::WordPiece(wordpiece::train(
            &training_words,
            &WpTrainerConfig {
                vocab_size: opts.vocab_size,
                min_pair_frequency: opts.min_pair_frequency,
                seeding,
            },
        )?),
        Algorithm::Unigram => Model::Unigram(unigram::train(
            &training_words,
            &UlmTrainerConfig {
                vocab_size: opts.vocab_size,
                shrinking_factor: opts.shrinking_factor,
                seed_size: opts.seed_size,
                max_piece_length: opts.max_piece_length,
                em_iterations_per_round: opts.em_iterations_per_round,
                seeding,
                seed_weight: opts.seed_weight,
                prune_utility: opts.prune_utility,
            },
        )?),
    };

    Ok(TrainOutput {
        tokenizer: Tokenizer {
            model,
            guidance: opts.guidance,
            delimiter: opts.delimiter,
            config: opts.config_entries(),
        },
        preseg_stats,
        training_words,
        warnings,
    })
}

fn corpus_of<'a>(inputs: &TrainInputs<'a>) -> std::borrow::Cow<'a, Corpus> {
    match (inputs.corpus, inputs.tagged) {
        (Some(c), _) => std::borrow::Cow::Borrowed(c),
        (None, Some(t)) => std::borrow::Cow::Owned(t.to_corpus()),
        (None, None) => unreachable!("checked by check_inputs"),
    }
}
