//! Morpheme-boundary presegmentation of a corpus.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::corpus::{Corpus, TaggedCorpus};
use crate::lexicon::MorphLexicon;
use crate::morph::{acontextual_choice, disambiguate, Rule};
use crate::pos::{PosMapping, UdPos};
use crate::segmentation::Segmentation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PresegMode {
    Acontextual,
    Contextual,
}

impl PresegMode {
    pub fn as_str(self) -> &'static str {
        match self {
            PresegMode::Acontextual => "acontextual",
            PresegMode::Contextual => "contextual",
        }
    }
}

/// How one token was resolved.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WordOutcome {
    OutOfLexicon,
    FirstAnalysis,
    Rule(Rule),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PresegStats {
    pub total_words: u64,
    pub out_of_lexicon: u64,
    /// Acontextual resolutions.
    pub first_analysis: u64,
    /// Contextual resolutions, indexed like [`Rule::ALL`].
    pub rule_counts: [u64; 5],
    /// Distinct (word, tag) pairs resolved by a same-POS tie rule.
    pub conflict_types: u64,
    /// Analyses belonging to those pairs.
    pub conflict_analyses: u64,
    /// Distinct in-lexicon (word, tag) pairs seen in contextual mode.
    pub lexicon_types: u64,
    /// Analyses belonging to those pairs.
    pub lexicon_analyses: u64,
}

impl PresegStats {
    fn record(&mut self, outcome: WordOutcome) {
        self.total_words += 1;
        match outcome {
            WordOutcome::OutOfLexicon => self.out_of_lexicon += 1,
            WordOutcome::FirstAnalysis => self.first_analysis += 1,
            WordOutcome::Rule(r) => self.rule_counts[rule_index(r)] += 1,
        }
    }

    /// Associative merge of token-level counts.
    pub fn merge(&mut self, other: &PresegStats) {
        self.total_words += other.total_words;
        self.out_of_lexicon += other.out_of_lexicon;
        self.first_analysis += other.first_analysis;
        for (a, b) in self.rule_counts.iter_mut().zip(other.rule_counts) {
            *a += b;
        }
        self.conflict_types += other.conflict_types;
        self.conflict_analyses += other.conflict_analyses;
        self.lexicon_types += other.lexicon_types;
        self.lexicon_analyses += other.lexicon_analyses;
    }

    pub fn rule_count(&self, rule: Rule) -> u64 {
        self.rule_counts[rule_index(rule)]
    }

    /// Every token lands in exactly one bucket.
    pub fn is_consistent(&self) -> bool {
        self.out_of_lexicon + self.first_analysis + self.rule_counts.iter().sum::<u64>() == self.total_words
    }

    fn rate(num: u64, den: u64) -> f64 {
        if den == 0 {
            0.0
        } else {
            num as f64 / den as f64
        }
    }

    pub fn to_kv(&self) -> Vec<(String, String)> {
        let mut kv = vec![
            ("total_words".to_string(), self.total_words.to_string()),
            ("out_of_lexicon".to_string(), self.out_of_lexicon.to_string()),
            ("first_analysis".to_string(), self.first_analysis.to_string()),
        ];
        for rule in Rule::ALL {
            kv.push((rule.as_str().to_string(), self.rule_count(rule).to_string()));
        }
        kv.push(("conflict_types".into(), self.conflict_types.to_string()));
        kv.push(("lexicon_types".into(), self.lexicon_types.to_string()));
        kv.push((
            "conflict_rate_per_type".into(),
            format!("{:.6}", Self::rate(self.conflict_types, self.lexicon_types)),
        ));
        kv.push(("conflict_analyses".into(), self.conflict_analyses.to_string()));
        kv.push(("lexicon_analyses".into(), self.lexicon_analyses.to_string()));
        kv.push((
            "conflict_rate_per_analysis".into(),
            format!("{:.6}", Self::rate(self.conflict_analyses, self.lexicon_analyses)),
        ));
        kv
    }

    pub fn to_kv_text(&self) -> String {
        self.to_kv().into_iter().map(|(k, v)| format!("{k}={v}\n")).collect()
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let total = self.total_words;
        let _ = writeln!(out, "{:<24} {:>10} {:>8}", "outcome", "words", "share");
        let mut row = |name: &str, n: u64| {
            let _ = writeln!(out, "{name:<24} {n:>10} {:>7.3}%", 100.0 * Self::rate(n, total));
        };
        row("out_of_lexicon", self.out_of_lexicon);
        row("first_analysis", self.first_analysis);
        for rule in Rule::ALL {
            row(rule.as_str(), self.rule_count(rule));
        }
        row("total", total);
        out
    }
}

fn rule_index(rule: Rule) -> usize {
    Rule::ALL.iter().position(|&r| r == rule).expect("listed")
}

/// Resolves single words against a lexicon.
#[derive(Debug, Clone, Copy)]
pub struct Presegmenter<'a> {
    pub lexicon: &'a MorphLexicon,
    pub mapping: &'a PosMapping,
    pub mode: PresegMode,
}

impl<'a> Presegmenter<'a> {
    pub fn new(lexicon: &'a MorphLexicon, mapping: &'a PosMapping, mode: PresegMode) -> Self {
        Self { lexicon, mapping, mode }
    }

    /// Contextual mode without a tag falls back to the first analysis.
    pub fn segment(&self, word: &str, tag: Option<UdPos>) -> (Segmentation, WordOutcome) {
        let Some(analyses) = self.lexicon.get(word).filter(|a| !a.is_empty()) else {
            return (Segmentation::whole(word), WordOutcome::OutOfLexicon);
        };
        match (self.mode, tag) {
            (PresegMode::Contextual, Some(tag)) => {
                let outcome = disambiguate(analyses, tag, self.mapping);
                let seg = outcome.chosen.unwrap_or_else(|| Segmentation::whole(word));
                (seg, WordOutcome::Rule(outcome.rule))
            }
            _ => (acontextual_choice(analyses), WordOutcome::FirstAnalysis),
        }
    }
}

/// Corpus whose words carry morpheme boundaries.
#[derive(Debug, Clone, PartialEq)]
pub struct PresegmentedCorpus {
    pub sentences: Vec<Vec<Segmentation>>,
    pub mode: PresegMode,
    pub stats: PresegStats,
}

impl PresegmentedCorpus {
    /// Words written as `advers@ari`, literal delimiters escaped.
    pub fn to_text(&self, delimiter: char) -> String {
        let mut out = String::new();
        for s in &self.sentences {
            let words: Vec<String> = s.iter().map(|w| w.to_delimited(delimiter)).collect();
            out.push_str(&words.join(" "));
            out.push('\n');
        }
        out
    }

    /// Reads text produced by [`PresegmentedCorpus::to_text`]. Stats are not
    /// recoverable from text and come back zeroed except the word total.
    pub fn parse(text: &str, delimiter: char, mode: PresegMode) -> crate::Result<Self> {
        let sentences = text
            .lines()
            .map(|line| {
                line.split_whitespace()
                    .map(|w| Segmentation::parse_delimited(w, delimiter))
                    .collect::<crate::Result<Vec<_>>>()
            })
            .collect::<crate::Result<Vec<_>>>()?;
        let total_words = sentences.iter().map(Vec::len).sum::<usize>() as u64;
        Ok(Self {
            sentences,
            mode,
            stats: PresegStats {
                total_words,
                ..Default::default()
            },
        })
    }

    pub fn num_words(&self) -> usize {
        self.sentences.iter().map(Vec::len).sum()
    }
}

pub fn presegment_acontextual(corpus: &Corpus, lexicon: &MorphLexicon) -> PresegmentedCorpus {
    let mapping = PosMapping::default();
    let seg = Presegmenter::new(lexicon, &mapping, PresegMode::Acontextual);
    let per_sentence: Vec<(Vec<Segmentation>, PresegStats)> = corpus
        .sentences()
        .par_iter()
        .map(|sentence| {
            let mut stats = PresegStats::default();
            let words = sentence
                .iter()
                .map(|w| {
                    let (s, outcome) = seg.segment(w, None);
                    stats.record(outcome);
                    s
                })
                .collect();
            (words, stats)
        })
        .collect();
    assemble(per_sentence, PresegMode::Acontextual)
}

pub fn presegment_contextual(
    tagged: &TaggedCorpus,
    lexicon: &MorphLexicon,
    mapping: &PosMapping,
) -> PresegmentedCorpus {
    let seg = Presegmenter::new(lexicon, mapping, PresegMode::Contextual);
    let per_sentence: Vec<(Vec<Segmentation>, PresegStats)> = tagged
        .sentences()
        .par_iter()
        .map(|sentence| {
            let mut stats = PresegStats::default();
            let words = sentence
                .iter()
                .map(|(w, tag)| {
                    let (s, outcome) = seg.segment(w, Some(*tag));
                    stats.record(outcome);
                    s
                })
                .collect();
            (words, stats)
        })
        .collect();
    let mut out = assemble(per_sentence, PresegMode::Contextual);

    // Type-level conflict rates over distinct (word, tag) pairs.
    let pairs: BTreeSet<(&str, UdPos)> = tagged
        .sentences()
        .iter()
        .flatten()
        .map(|(w, t)| (w.as_str(), *t))
        .collect();
    for (word, tag) in pairs {
        let Some(analyses) = lexicon.get(word) else { continue };
        out.stats.lexicon_types += 1;
        out.stats.lexicon_analyses += analyses.len() as u64;
        let outcome = disambiguate(analyses, tag, mapping);
        if matches!(outcome.rule, Rule::TieLongerSuffix | Rule::TieMoreSubwords) {
            out.stats.conflict_types += 1;
            out.stats.conflict_analyses += analyses.len() as u64;
        }
    }
    out
}

fn assemble(per_sentence: Vec<(Vec<Segmentation>, PresegStats)>, mode: PresegMode) -> PresegmentedCorpus {
    let mut stats = PresegStats::default();
    let mut sentences = Vec::with_capacity(per_sentence.len());
    for (words, s) in per_sentence {
        stats.merge(&s);
        sentences.push(words);
    }
    PresegmentedCorpus { sentences, mode, stats }
}

/// Removes all morpheme boundaries.
pub fn strip_delimiters(p: &PresegmentedCorpus) -> Corpus {
    Corpus::from_sentences(p.sentences.iter().map(|s| s.iter().map(Segmentation::word).collect::<Vec<_>>()))
}
