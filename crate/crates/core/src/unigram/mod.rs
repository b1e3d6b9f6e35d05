//! Unigram language model: EM-fitted piece probabilities, likelihood-based
//! pruning, and Viterbi decoding.

mod lattice;
mod trainer;

use std::collections::HashMap;

use rayon::prelude::*;

pub use lattice::{Edge, Lattice};
pub use trainer::{em_step, log_likelihood, train, PruneUtility, UlmTrainerConfig};

use crate::error::{Error, Result};
use crate::segmentation::Segmentation;

#[derive(Debug, Clone, PartialEq)]
pub struct UlmPiece {
    pub piece: String,
    pub log_prob: f64,
    /// Never pruned; receives the decode-time boost.
    pub protected: bool,
}

#[derive(Debug, Clone)]
pub struct UlmVocabulary {
    pieces: Vec<UlmPiece>,
    index: HashMap<String, usize>,
    /// Added to protected pieces' log-probabilities when decoding.
    boost: f64,
    max_chars: usize,
}

impl PartialEq for UlmVocabulary {
    fn eq(&self, other: &Self) -> bool {
        self.pieces == other.pieces && self.boost == other.boost
    }
}

impl UlmVocabulary {
    pub fn new(pieces: Vec<UlmPiece>, boost: f64) -> Result<Self> {
        if boost < 0.0 || !boost.is_finite() {
            return Err(Error::Config(format!("boost must be a non-negative number, got {boost}")));
        }
        let mut index = HashMap::with_capacity(pieces.len());
        let mut max_chars = 0;
        for (i, p) in pieces.iter().enumerate() {
            if p.piece.is_empty() {
                return Err(Error::Config("empty unigram piece".into()));
            }
            if p.log_prob.is_nan() || p.log_prob > 0.0 {
                return Err(Error::Config(format!(
                    "piece `{}` has invalid log-probability {}",
                    p.piece, p.log_prob
                )));
            }
            if index.insert(p.piece.clone(), i).is_some() {
                return Err(Error::Config(format!("duplicate piece `{}`", p.piece)));
            }
            max_chars = max_chars.max(p.piece.chars().count());
        }
        Ok(Self {
            pieces,
            index,
            boost,
            max_chars,
        })
    }

    /// Convenience constructor from (piece, log-prob) pairs, none protected.
    pub fn from_log_probs<S: Into<String>>(entries: impl IntoIterator<Item = (S, f64)>) -> Result<Self> {
        Self::new(
            entries
                .into_iter()
                .map(|(piece, log_prob)| UlmPiece {
                    piece: piece.into(),
                    log_prob,
                    protected: false,
                })
                .collect(),
            0.0,
        )
    }

    pub fn pieces(&self) -> &[UlmPiece] {
        &self.pieces
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn boost(&self) -> f64 {
        self.boost
    }

    pub fn with_boost(mut self, boost: f64) -> Self {
        self.boost = boost;
        self
    }

    pub fn max_chars(&self) -> usize {
        self.max_chars
    }

    pub fn id(&self, piece: &str) -> Option<usize> {
        self.index.get(piece).copied()
    }

    pub fn piece(&self, id: usize) -> &str {
        &self.pieces[id].piece
    }

    pub fn get(&self, piece: &str) -> Option<&UlmPiece> {
        self.id(piece).map(|i| &self.pieces[i])
    }

    pub fn log_prob(&self, id: usize) -> f64 {
        self.pieces[id].log_prob
    }

    /// Lattice edge weight used for decoding.
    pub fn decode_weight(&self, id: usize) -> f64 {
        let p = &self.pieces[id];
        if p.protected {
            p.log_prob + self.boost
        } else {
            p.log_prob
        }
    }

    /// Sum of unboosted probabilities.
    pub fn total_probability(&self) -> f64 {
        self.pieces.iter().map(|p| p.log_prob.exp()).sum()
    }

    /// Maximum-probability segmentation; `None` when some character cannot
    /// be covered (the word maps to `[UNK]`).
    pub fn encode(&self, word: &str) -> Option<Segmentation> {
        let lattice = Lattice::build(word, self);
        let (path, _) = lattice.viterbi(self, |id| self.decode_weight(id))?;
        Segmentation::new(path.into_iter().map(|id| self.piece(id).to_string())).ok()
    }

    /// Decodes each morpheme on its own lattice.
    pub fn encode_morphemes(&self, morphemes: &Segmentation) -> Option<Segmentation> {
        let parts = morphemes
            .pieces()
            .iter()
            .map(|m| self.encode(m))
            .collect::<Option<Vec<_>>>()?;
        Segmentation::concat(parts)
    }

    /// Viterbi path ids and score under unboosted log-probabilities.
    pub(crate) fn viterbi_plain(&self, text: &str, exclude: Option<usize>) -> Option<(Vec<usize>, f64)> {
        Lattice::build_excluding(text, self, exclude).viterbi(self, |id| self.log_prob(id))
    }
}

type UnitMarginals = (f64, Vec<(usize, f64)>);

/// Frequency-weighted expected piece counts.
#[derive(Debug, Clone, PartialEq)]
pub struct MarginalCounts {
    /// Indexed by piece id.
    pub counts: Vec<f64>,
    /// Sum over latticizable units of `count * log Z`.
    pub log_likelihood: f64,
    /// Token count of units with no complete path.
    pub unk_tokens: u64,
}

/// Forward-backward expected counts of every piece over `units`. Units with
/// no path are tallied in `unk_tokens` and contribute nothing else.
pub fn marginal_counts(units: &[(String, u64)], vocab: &UlmVocabulary) -> MarginalCounts {
    // Per unit: weighted log Z and weighted (piece, posterior) pairs.
    let per_unit: Vec<Option<UnitMarginals>> = units
        .par_iter()
        .map(|(text, count)| {
            let lattice = Lattice::build(text, vocab);
            let (log_z, post) = lattice.marginals(|id| vocab.log_prob(id))?;
            let w = *count as f64;
            let sparse = lattice
                .edges()
                .iter()
                .zip(post)
                .map(|(e, p)| (e.piece, p * w))
                .collect();
            Some((log_z * w, sparse))
        })
        .collect();

    let mut out = MarginalCounts {
        counts: vec![0.0; vocab.len()],
        log_likelihood: 0.0,
        unk_tokens: 0,
    };
    for (r, (_, count)) in per_unit.into_iter().zip(units) {
        match r {
            Some((ll, sparse)) => {
                out.log_likelihood += ll;
                for (id, c) in sparse {
                    out.counts[id] += c;
                }
            }
            None => out.unk_tokens += count,
        }
    }
    out
}
