//! Morphological-alignment and efficiency metrics.
//!
//! Segmentations carry no markers, so WordPiece `##`, word-initial `▁` and
//! morpheme delimiters are already normalized away before comparison.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::corpus::GoldSegmentationSet;
use crate::error::{Error, Result};
use crate::segmentation::Segmentation;
use crate::tokenizer::WordSegmenter;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalMode {
    Acontextual,
    Contextual,
}

impl EvalMode {
    pub fn as_str(self) -> &'static str {
        match self {
            EvalMode::Acontextual => "acontextual",
            EvalMode::Contextual => "contextual",
        }
    }
}

impl FromStr for EvalMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "acontextual" => Ok(EvalMode::Acontextual),
            "contextual" => Ok(EvalMode::Contextual),
            _ => Err(Error::Config(format!("unknown evaluation mode `{s}`"))),
        }
    }
}

impl fmt::Display for EvalMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// What precision/recall count as a hit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Overlap {
    /// Internal split positions.
    #[default]
    Boundary,
    /// Pieces, compared as multisets.
    PieceMultiset,
}

impl Overlap {
    pub fn as_str(self) -> &'static str {
        match self {
            Overlap::Boundary => "boundary",
            Overlap::PieceMultiset => "piece-multiset",
        }
    }
}

impl FromStr for Overlap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "boundary" => Ok(Overlap::Boundary),
            "piece-multiset" => Ok(Overlap::PieceMultiset),
            _ => Err(Error::Config(format!("unknown overlap `{s}`"))),
        }
    }
}

fn same_word(pred: &Segmentation, gold: &Segmentation) -> Result<()> {
    let (p, g) = (pred.word(), gold.word());
    if p == g {
        Ok(())
    } else {
        Err(Error::WordMismatch { pred: p, gold: g })
    }
}

pub fn exact_match(pred: &Segmentation, gold: &Segmentation) -> Result<bool> {
    same_word(pred, gold)?;
    Ok(pred.pieces() == gold.pieces())
}

/// Hit / predicted / gold tallies; sums of these give micro-pooled scores.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct OverlapCounts {
    pub hits: u64,
    pub predicted: u64,
    pub gold: u64,
}

impl OverlapCounts {
    pub fn pooled(self, o: OverlapCounts) -> OverlapCounts {
        OverlapCounts {
            hits: self.hits + o.hits,
            predicted: self.predicted + o.predicted,
            gold: self.gold + o.gold,
        }
    }

    /// Empty prediction scores 1 only against an empty reference.
    pub fn prf(self) -> Prf {
        let precision = if self.predicted > 0 {
            self.hits as f64 / self.predicted as f64
        } else if self.gold == 0 {
            1.0
        } else {
            0.0
        };
        let recall = if self.gold > 0 {
            self.hits as f64 / self.gold as f64
        } else if self.predicted == 0 {
            1.0
        } else {
            0.0
        };
        Prf::new(precision, recall)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prf {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl Prf {
    pub fn new(precision: f64, recall: f64) -> Self {
        let f1 = if precision + recall > 0.0 {
            2.0 * precision * recall / (precision + recall)
        } else {
            0.0
        };
        Self { precision, recall, f1 }
    }
}

pub fn boundary_counts(pred: &Segmentation, gold: &Segmentation) -> Result<OverlapCounts> {
    same_word(pred, gold)?;
    let p: BTreeSet<usize> = pred.boundaries().into_iter().collect();
    let g: BTreeSet<usize> = gold.boundaries().into_iter().collect();
    Ok(OverlapCounts {
        hits: p.intersection(&g).count() as u64,
        predicted: p.len() as u64,
        gold: g.len() as u64,
    })
}

pub fn boundary_prf(pred: &Segmentation, gold: &Segmentation) -> Result<Prf> {
    Ok(boundary_counts(pred, gold)?.prf())
}

pub fn piece_overlap_counts(pred: &Segmentation, gold: &Segmentation) -> Result<OverlapCounts> {
    same_word(pred, gold)?;
    let mut bag: BTreeMap<&str, u64> = BTreeMap::new();
    for p in gold.pieces() {
        *bag.entry(p).or_default() += 1;
    }
    let mut hits = 0;
    for p in pred.pieces() {
        if let Some(n) = bag.get_mut(p.as_str()) {
            if *n > 0 {
                *n -= 1;
                hits += 1;
            }
        }
    }
    Ok(OverlapCounts {
        hits,
        predicted: pred.len() as u64,
        gold: gold.len() as u64,
    })
}

/// Pieces per word.
pub fn fertility(segs: &[Segmentation]) -> Result<f64> {
    if segs.is_empty() {
        return Err(Error::EmptyInput);
    }
    let pieces: usize = segs.iter().map(Segmentation::len).sum();
    Ok(pieces as f64 / segs.len() as f64)
}

/// `None` when the prediction is unsegmented; otherwise whether
/// `gold_boundary` is one of its split points.
pub fn morphscore(pred: &Segmentation, gold_boundary: usize) -> Result<Option<bool>> {
    let len = pred.char_len();
    if gold_boundary == 0 || gold_boundary >= len {
        return Err(Error::BoundaryOutOfRange { boundary: gold_boundary, len });
    }
    let b = pred.boundaries();
    Ok(if b.is_empty() { None } else { Some(b.contains(&gold_boundary)) })
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub mode: EvalMode,
    pub overlap: Overlap,
    /// Unique (word, tag) items scored; unique words in acontextual mode.
    pub n_words: usize,
    pub exact_match: f64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub fertility: f64,
    pub gold_fertility: f64,
    pub morphscore: Option<f64>,
    /// Items included in the MorphScore average.
    pub morphscore_n: usize,
    /// Items the tokenizer could not cover.
    pub unk_words: usize,
}

impl EvalReport {
    pub fn to_kv(&self) -> Vec<(String, String)> {
        let mut kv = vec![
            ("mode", self.mode.as_str().to_string()),
            ("overlap", self.overlap.as_str().to_string()),
            ("n_words", self.n_words.to_string()),
            ("exact_match", self.exact_match.to_string()),
            ("precision", self.precision.to_string()),
            ("recall", self.recall.to_string()),
            ("f1", self.f1.to_string()),
            ("fertility", self.fertility.to_string()),
            ("gold_fertility", self.gold_fertility.to_string()),
        ];
        kv.push((
            "morphscore",
            self.morphscore.map_or_else(|| "none".to_string(), |m| m.to_string()),
        ));
        kv.push(("morphscore_n", self.morphscore_n.to_string()));
        kv.push(("unk_words", self.unk_words.to_string()));
        kv.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
    }
}

struct ItemScore {
    exact: bool,
    counts: OverlapCounts,
    pieces: usize,
    gold_pieces: usize,
    morph: Option<bool>,
    unk: bool,
}

/// Scores `segmenter` on the unique (word, tag) items of `gold`.
///
/// Exact match is averaged per item; precision/recall are micro-pooled.
/// A word the segmenter cannot cover counts as one unsegmented, non-matching
/// `[UNK]` piece. In acontextual mode tags are ignored and items are unique
/// per word (first occurrence wins).
pub fn evaluate(
    segmenter: &(dyn WordSegmenter + Sync),
    gold: &GoldSegmentationSet,
    mode: EvalMode,
    overlap: Overlap,
) -> Result<EvalReport> {
    let mut seen = BTreeSet::new();
    let mut items = Vec::new();
    for item in gold.items() {
        let pos = match mode {
            EvalMode::Contextual => Some(item.pos.ok_or_else(|| Error::MissingPos(item.word.clone()))?),
            EvalMode::Acontextual => None,
        };
        if seen.insert((item.word.as_str(), pos)) {
            items.push((item, pos));
        }
    }
    if items.is_empty() {
        return Err(Error::EmptyInput);
    }

    let scores: Vec<ItemScore> = items
        .par_iter()
        .map(|&(item, pos)| -> Result<ItemScore> {
            let g = &item.gold;
            let first_gold = g.boundaries().first().copied();
            match segmenter.segment(&item.word, pos) {
                Some(p) => {
                    let counts = match overlap {
                        Overlap::Boundary => boundary_counts(&p, g)?,
                        Overlap::PieceMultiset => piece_overlap_counts(&p, g)?,
                    };
                    Ok(ItemScore {
                        exact: exact_match(&p, g)?,
                        counts,
                        pieces: p.len(),
                        gold_pieces: g.len(),
                        morph: first_gold.map(|b| morphscore(&p, b)).transpose()?.flatten(),
                        unk: false,
                    })
                }
                None => {
                    let gold_units = match overlap {
                        Overlap::Boundary => g.boundaries().len(),
                        Overlap::PieceMultiset => g.len(),
                    };
                    let predicted = match overlap {
                        Overlap::Boundary => 0,
                        Overlap::PieceMultiset => 1,
                    };
                    Ok(ItemScore {
                        exact: false,
                        counts: OverlapCounts { hits: 0, predicted, gold: gold_units as u64 },
                        pieces: 1,
                        gold_pieces: g.len(),
                        morph: None,
                        unk: true,
                    })
                }
            }
        })
        .collect::<Result<_>>()?;

    let n = scores.len();
    let mut exact = 0usize;
    let mut counts = OverlapCounts::default();
    let (mut pieces, mut gold_pieces) = (0usize, 0usize);
    let (mut morph_hits, mut morph_n) = (0usize, 0usize);
    let mut unk_words = 0;
    for s in &scores {
        exact += usize::from(s.exact);
        counts = counts.pooled(s.counts);
        pieces += s.pieces;
        gold_pieces += s.gold_pieces;
        if let Some(hit) = s.morph {
            morph_n += 1;
            morph_hits += usize::from(hit);
        }
        unk_words += usize::from(s.unk);
    }
    let prf = counts.prf();
    Ok(EvalReport {
        mode,
        overlap,
        n_words: n,
        exact_match: exact as f64 / n as f64,
        precision: prf.precision,
        recall: prf.recall,
        f1: prf.f1,
        fertility: pieces as f64 / n as f64,
        gold_fertility: gold_pieces as f64 / n as f64,
        morphscore: (morph_n > 0).then(|| morph_hits as f64 / morph_n as f64),
        morphscore_n: morph_n,
        unk_words,
    })
}
