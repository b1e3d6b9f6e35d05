use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;

use crate::corpus::SuffixList;
use crate::error::{Error, Result};
use crate::training::WordTable;

use super::{marginal_counts, UlmPiece, UlmVocabulary};

/// How the loss of removing a piece is estimated during pruning.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PruneUtility {
    /// Every Viterbi use of the piece is replaced by the best segmentation of
    /// its own text without it; probabilities held fixed.
    #[default]
    Approximate,
    /// Full marginal likelihood recomputed without the piece. Cost grows with
    /// vocabulary × corpus; meant for small corpora.
    Exact,
}

#[derive(Debug, Clone, PartialEq)]
pub struct UlmTrainerConfig {
    pub vocab_size: usize,
    /// Fraction of the vocabulary kept per pruning round.
    pub shrinking_factor: f64,
    /// Cap on the initial substring inventory.
    pub seed_size: usize,
    pub max_piece_length: usize,
    pub em_iterations_per_round: usize,
    /// Suffixes protected from pruning and boosted when decoding.
    pub seeding: Option<SuffixList>,
    /// Decode-time log-probability boost for seeded suffixes.
    pub seed_weight: f64,
    pub prune_utility: PruneUtility,
}

impl Default for UlmTrainerConfig {
    fn default() -> Self {
        Self {
            vocab_size: 30_000,
            shrinking_factor: 0.75,
            seed_size: 1_000_000,
            max_piece_length: 16,
            em_iterations_per_round: 2,
            seeding: None,
            seed_weight: 0.5,
            prune_utility: PruneUtility::Approximate,
        }
    }
}

impl UlmTrainerConfig {
    fn validate(&self) -> Result<()> {
        if !(self.shrinking_factor > 0.0 && self.shrinking_factor < 1.0) {
            return Err(Error::Config(format!(
                "shrinking factor must lie in (0, 1), got {}",
                self.shrinking_factor
            )));
        }
        if self.max_piece_length == 0 {
            return Err(Error::Config("max piece length must be positive".into()));
        }
        if self.em_iterations_per_round == 0 {
            return Err(Error::Config("at least one EM iteration per round is required".into()));
        }
        if !(self.seed_weight >= 0.0 && self.seed_weight.is_finite()) {
            return Err(Error::Config(format!("seed weight must be non-negative, got {}", self.seed_weight)));
        }
        Ok(())
    }
}

/// Training units: morphemes decoded on independent lattices.
fn units_of(words: &WordTable) -> Vec<(String, u64)> {
    let mut agg: BTreeMap<String, u64> = BTreeMap::new();
    for ((m, _), n) in words.morpheme_units() {
        *agg.entry(m).or_insert(0) += n;
    }
    agg.into_iter().collect()
}

fn is_single_char(s: &str) -> bool {
    let mut it = s.chars();
    it.next().is_some() && it.next().is_none()
}

/// Pieces that pruning may never remove.
fn exempt(p: &UlmPiece) -> bool {
    p.protected || is_single_char(&p.piece)
}

/// Learns a unigram vocabulary from words whose morphemes are independent
/// pre-tokens.
pub fn train(words: &WordTable, cfg: &UlmTrainerConfig) -> Result<UlmVocabulary> {
    cfg.validate()?;
    if words.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let units = units_of(words);
    let mut vocab = seed_vocabulary(&units, cfg)?;
    log::debug!("unigram seed vocabulary: {} pieces", vocab.len());

    loop {
        for _ in 0..cfg.em_iterations_per_round {
            let (next, ll) = em_step(&vocab, &units);
            log::debug!("em: log-likelihood {ll:.6}, {} pieces", next.len());
            vocab = next;
        }
        if vocab.len() <= cfg.vocab_size {
            break;
        }
        let before = vocab.len();
        vocab = prune(&vocab, &units, cfg);
        log::debug!("pruned {before} -> {}", vocab.len());
        if vocab.len() == before {
            break;
        }
    }
    Ok(vocab)
}

/// Initial inventory: all characters, all seeded suffixes, and the most
/// frequent substrings up to `max_piece_length`, capped at `seed_size`.
fn seed_vocabulary(units: &[(String, u64)], cfg: &UlmTrainerConfig) -> Result<UlmVocabulary> {
    let mut freq: HashMap<String, u64> = HashMap::new();
    let mut chars: BTreeSet<char> = BTreeSet::new();
    for (text, n) in units {
        let cs: Vec<char> = text.chars().collect();
        chars.extend(cs.iter().copied());
        for start in 0..cs.len() {
            let mut s = String::new();
            for end in start + 1..=cs.len().min(start + cfg.max_piece_length) {
                s.push(cs[end - 1]);
                *freq.entry(s.clone()).or_insert(0) += n;
            }
        }
    }

    let mut seeded: Vec<(String, u64, bool)> = Vec::new();
    let mut taken: BTreeSet<String> = BTreeSet::new();
    for c in &chars {
        let s = c.to_string();
        let n = freq[&s];
        taken.insert(s.clone());
        seeded.push((s, n, false));
    }
    if let Some(suffixes) = &cfg.seeding {
        for s in suffixes.iter() {
            let n = freq.get(s).copied().unwrap_or(0).max(1);
            if taken.insert(s.to_string()) {
                seeded.push((s.to_string(), n, true));
            } else if let Some(entry) = seeded.iter_mut().find(|e| e.0 == s) {
                entry.2 = true;
            }
        }
    }
    if cfg.vocab_size < seeded.len() {
        return Err(Error::VocabTooSmall {
            requested: cfg.vocab_size,
            required: seeded.len(),
        });
    }

    let mut rest: Vec<(String, u64)> = freq.into_iter().filter(|(s, _)| !taken.contains(s)).collect();
    rest.sort_unstable_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    let room = cfg.seed_size.saturating_sub(seeded.len());
    seeded.extend(rest.into_iter().take(room).map(|(s, n)| (s, n, false)));

    // Initial scores weight frequency by length.
    let score = |piece: &str, n: u64| n as f64 * piece.chars().count() as f64;
    let total: f64 = seeded.iter().map(|e| score(&e.0, e.1)).sum();
    let log_total = total.ln();
    UlmVocabulary::new(
        seeded
            .into_iter()
            .map(|(piece, n, protected)| UlmPiece {
                log_prob: score(&piece, n).ln() - log_total,
                piece,
                protected,
            })
            .collect(),
        cfg.seeding.as_ref().map_or(0.0, |_| cfg.seed_weight),
    )
}

/// Corpus log-likelihood under unboosted probabilities.
pub fn log_likelihood(vocab: &UlmVocabulary, units: &[(String, u64)]) -> f64 {
    marginal_counts(units, vocab).log_likelihood
}

/// One EM iteration. Returns the re-estimated vocabulary and the
/// log-likelihood of `units` under the input vocabulary.
///
/// The M-step is the maximum-likelihood update `p_i ∝ E[count_i]`. Pieces
/// with zero expected count are dropped, except characters and protected
/// pieces, which keep their previous probability; the remaining mass is
/// shared by the pieces that were used.
pub fn em_step(vocab: &UlmVocabulary, units: &[(String, u64)]) -> (UlmVocabulary, f64) {
    let marg = marginal_counts(units, vocab);
    let mut frozen_mass = 0.0;
    let mut used = 0.0;
    for (p, &c) in vocab.pieces().iter().zip(&marg.counts) {
        if c > 0.0 {
            used += c;
        } else if exempt(p) {
            frozen_mass += p.log_prob.exp();
        }
    }
    let scale = ((1.0 - frozen_mass).max(f64::MIN_POSITIVE) / used).ln();
    let pieces: Vec<UlmPiece> = vocab
        .pieces()
        .iter()
        .zip(&marg.counts)
        .filter_map(|(p, &c)| {
            if c > 0.0 {
                Some(UlmPiece {
                    log_prob: c.ln() + scale,
                    ..p.clone()
                })
            } else if exempt(p) {
                Some(p.clone())
            } else {
                None
            }
        })
        .collect();
    let next = UlmVocabulary::new(pieces, vocab.boost()).expect("re-estimated pieces stay valid");
    (next, marg.log_likelihood)
}

/// Removes the lowest-utility `(1 - shrinking_factor)` share of prunable
/// pieces, never going below `vocab_size`, and renormalizes.
fn prune(vocab: &UlmVocabulary, units: &[(String, u64)], cfg: &UlmTrainerConfig) -> UlmVocabulary {
    let prunable: Vec<usize> = (0..vocab.len()).filter(|&i| !exempt(&vocab.pieces()[i])).collect();
    let utilities = match cfg.prune_utility {
        PruneUtility::Approximate => approximate_utilities(vocab, units, &prunable),
        PruneUtility::Exact => exact_utilities(vocab, units, &prunable),
    };
    let mut ranked: Vec<(usize, f64)> = prunable.into_iter().zip(utilities).collect();
    ranked.sort_by(|a, b| {
        a.1.total_cmp(&b.1)
            .then_with(|| vocab.piece(b.0).chars().count().cmp(&vocab.piece(a.0).chars().count()))
            .then_with(|| vocab.piece(a.0).cmp(vocab.piece(b.0)))
    });

    let share = ((1.0 - cfg.shrinking_factor) * ranked.len() as f64).ceil() as usize;
    let n_remove = share.max(1).min(vocab.len().saturating_sub(cfg.vocab_size)).min(ranked.len());
    let mut removed = vec![false; vocab.len()];
    for &(id, _) in &ranked[..n_remove] {
        removed[id] = true;
    }
    renormalized(vocab, |id| !removed[id])
}

fn renormalized(vocab: &UlmVocabulary, keep: impl Fn(usize) -> bool) -> UlmVocabulary {
    let kept: Vec<&UlmPiece> = (0..vocab.len()).filter(|&i| keep(i)).map(|i| &vocab.pieces()[i]).collect();
    let log_mass = kept.iter().map(|p| p.log_prob.exp()).sum::<f64>().ln();
    UlmVocabulary::new(
        kept.into_iter()
            .map(|p| UlmPiece {
                log_prob: (p.log_prob - log_mass).min(0.0),
                ..p.clone()
            })
            .collect(),
        vocab.boost(),
    )
    .expect("subset of a valid vocabulary")
}

fn approximate_utilities(vocab: &UlmVocabulary, units: &[(String, u64)], prunable: &[usize]) -> Vec<f64> {
    let paths: Vec<Option<Vec<usize>>> = units
        .par_iter()
        .map(|(text, _)| vocab.viterbi_plain(text, None).map(|(p, _)| p))
        .collect();
    let mut uses = vec![0.0f64; vocab.len()];
    for (path, (_, n)) in paths.iter().zip(units) {
        for &id in path.iter().flatten() {
            uses[id] += *n as f64;
        }
    }
    prunable
        .par_iter()
        .map(|&id| {
            if uses[id] == 0.0 {
                return 0.0;
            }
            match vocab.viterbi_plain(vocab.piece(id), Some(id)) {
                Some((_, alt)) => uses[id] * (vocab.log_prob(id) - alt).max(0.0),
                None => f64::INFINITY,
            }
        })
        .collect()
}

fn exact_utilities(vocab: &UlmVocabulary, units: &[(String, u64)], prunable: &[usize]) -> Vec<f64> {
    let base = log_likelihood(vocab, units);
    prunable
        .iter()
        .map(|&id| {
            let without = renormalized(vocab, |i| i != id);
            let m = marginal_counts(units, &without);
            if m.unk_tokens > 0 {
                f64::INFINITY
            } else {
                base - m.log_likelihood
            }
        })
        .collect()
}
