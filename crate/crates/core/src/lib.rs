//! Morphologically guided subword tokenization.
//!
//! Two trainers — WordPiece ([`wordpiece`]) and Unigram LM ([`unigram`]) —
//! each usable with three kinds of guidance:
//!
//! * **baseline**: plain training on whitespace-split words;
//! * **morph seeding**: a suffix list is planted in the initial vocabulary
//!   (and, for Unigram LM, protected from pruning and boosted at decode time);
//! * **morph pretokenization**: words are split into morphemes with a
//!   lexicon before training, either taking each word's first analysis or
//!   disambiguating analyses with part-of-speech tags ([`morph`],
//!   [`presegment`]).
//!
//! [`eval`] scores any tokenizer against gold segmentations.

pub mod artifact;
pub mod corpus;
pub mod error;
pub mod eval;
pub mod lexicon;
pub mod morph;
pub mod pos;
pub mod presegment;
pub mod report;
pub mod segmentation;
pub mod synthetic;
pub mod tokenizer;
pub mod training;
pub mod unigram;
pub mod wordpiece;

pub use artifact::{load_tokenizer, save_tokenizer};
pub use corpus::{
    load_corpus, load_gold, load_suffixes, load_tagged_corpus, Corpus, CorpusOptions, GoldItem, GoldSegmentationSet,
    SuffixList, TaggedCorpus,
};
pub use error::{Error, Result};
pub use eval::{boundary_prf, evaluate, exact_match, fertility, morphscore, EvalMode, EvalReport, Overlap};
pub use lexicon::{load_lexicon, MorphAnalysis, MorphLexicon};
pub use morph::{disambiguate, Rule};
pub use pos::{map_pos, AnalyzerPos, PosMapping, UdPos};
pub use presegment::{
    presegment_acontextual, presegment_contextual, strip_delimiters, PresegMode, PresegStats, PresegmentedCorpus,
};
pub use segmentation::{MarkerStyle, Segmentation};
pub use tokenizer::{train_tokenizer, Algorithm, Guidance, Pipeline, Tokenizer, TrainInputs, TrainOptions, WordSegmenter};
pub use training::WordTable;
