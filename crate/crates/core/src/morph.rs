//! Choosing one segmentation from a word's analyzer readings.
//!
//! Acontextual choice takes the first reading. Contextual choice filters the
//! readings by the word's predicted UD tag:
//!
//! 1. one distinct segmentation across all readings: use it;
//! 2. walk the mapped analyzer tags in order; the first tag with at least one
//!    reading forms the candidate bucket;
//! 3. no tag matches: leave the word unsegmented;
//! 4. bucket candidates with different piece counts: keep the most pieces;
//! 5. remaining candidates with equal piece counts: keep the longest final
//!    morpheme, then the earliest reading.

use crate::lexicon::MorphAnalysis;
use crate::pos::{PosMapping, UdPos};
use crate::segmentation::Segmentation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    SingleAnalysis,
    PosMatched,
    NoMatchUnsegmented,
    TieLongerSuffix,
    TieMoreSubwords,
}

impl Rule {
    pub const ALL: [Rule; 5] = [
        Rule::SingleAnalysis,
        Rule::PosMatched,
        Rule::NoMatchUnsegmented,
        Rule::TieLongerSuffix,
        Rule::TieMoreSubwords,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Rule::SingleAnalysis => "single_analysis",
            Rule::PosMatched => "pos_matched",
            Rule::NoMatchUnsegmented => "no_match_unsegmented",
            Rule::TieLongerSuffix => "tie_longer_suffix",
            Rule::TieMoreSubwords => "tie_more_subwords",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisambiguationOutcome {
    /// `None` exactly when `rule` is [`Rule::NoMatchUnsegmented`].
    pub chosen: Option<Segmentation>,
    pub rule: Rule,
    /// Distinct segmentations considered by the deciding rule.
    pub candidate_count: usize,
}

/// Distinct segmentations in first-seen order.
fn distinct<'a>(analyses: impl IntoIterator<Item = &'a MorphAnalysis>) -> Vec<&'a Segmentation> {
    let mut out: Vec<&Segmentation> = Vec::new();
    for a in analyses {
        if !out.contains(&&a.morphemes) {
            out.push(&a.morphemes);
        }
    }
    out
}

/// Segmentation of the first reading.
///
/// # Panics
/// If `analyses` is empty.
pub fn acontextual_choice(analyses: &[MorphAnalysis]) -> Segmentation {
    analyses[0].morphemes.clone()
}

/// Applies the contextual protocol. `analyses` must be non-empty.
pub fn disambiguate(analyses: &[MorphAnalysis], ud_tag: UdPos, mapping: &PosMapping) -> DisambiguationOutcome {
    assert!(!analyses.is_empty(), "disambiguate needs at least one analysis");

    let all = distinct(analyses);
    if all.len() == 1 {
        return DisambiguationOutcome {
            chosen: Some(all[0].clone()),
            rule: Rule::SingleAnalysis,
            candidate_count: 1,
        };
    }

    let bucket = mapping.get(ud_tag).iter().find_map(|&tag| {
        let hits = distinct(analyses.iter().filter(|a| a.pos == tag));
        (!hits.is_empty()).then_some(hits)
    });
    let Some(bucket) = bucket else {
        return DisambiguationOutcome {
            chosen: None,
            rule: Rule::NoMatchUnsegmented,
            candidate_count: all.len(),
        };
    };

    let candidate_count = bucket.len();
    if candidate_count == 1 {
        return DisambiguationOutcome {
            chosen: Some(bucket[0].clone()),
            rule: Rule::PosMatched,
            candidate_count,
        };
    }

    let max_pieces = bucket.iter().map(|s| s.len()).max().unwrap_or(0);
    let counts_differ = bucket.iter().any(|s| s.len() != max_pieces);
    let finalists = bucket.iter().filter(|s| s.len() == max_pieces);
    // max_by_key keeps the last maximum; reversing keeps the earliest reading.
    let chosen = finalists
        .rev()
        .max_by_key(|s| s.last_piece().chars().count())
        .copied()
        .cloned();

    DisambiguationOutcome {
        chosen,
        rule: if counts_differ {
            Rule::TieMoreSubwords
        } else {
            Rule::TieLongerSuffix
        },
        candidate_count,
    }
}
