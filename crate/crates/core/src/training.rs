//! Trainer input: word types with morpheme boundaries and token counts, and
//! sentence sampling.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::Corpus;
use crate::presegment::PresegmentedCorpus;
use crate::segmentation::Segmentation;

/// Word types with frequencies, sorted by morpheme sequence. A plain corpus
/// yields single-morpheme words.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WordTable {
    entries: Vec<(Segmentation, u64)>,
}

impl WordTable {
    pub fn from_counts(counts: impl IntoIterator<Item = (Segmentation, u64)>) -> Self {
        let mut merged: BTreeMap<Segmentation, u64> = BTreeMap::new();
        for (seg, n) in counts {
            if n > 0 {
                *merged.entry(seg).or_insert(0) += n;
            }
        }
        Self {
            entries: merged.into_iter().collect(),
        }
    }

    pub fn from_corpus(corpus: &Corpus) -> Self {
        Self::from_counts(corpus.word_counts().into_iter().map(|(w, n)| (Segmentation::whole(w), n)))
    }

    pub fn from_presegmented(corpus: &PresegmentedCorpus) -> Self {
        Self::from_counts(corpus.sentences.iter().flatten().map(|s| (s.clone(), 1)))
    }

    pub fn entries(&self) -> &[(Segmentation, u64)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_tokens(&self) -> u64 {
        self.entries.iter().map(|(_, n)| n).sum()
    }

    /// Morphemes as independent units with aggregated counts. The flag marks
    /// word-initial morphemes.
    pub fn morpheme_units(&self) -> BTreeMap<(String, bool), u64> {
        let mut out = BTreeMap::new();
        for (seg, n) in &self.entries {
            for (i, m) in seg.pieces().iter().enumerate() {
                *out.entry((m.clone(), i == 0)).or_insert(0) += n;
            }
        }
        out
    }
}

/// Keeps `round(fraction * n)` sentences chosen by reservoir sampling with
/// `seed`; survivors keep their original order. Fractions ≥ 1 return a copy.
pub fn sample_sentences<T: Clone>(sentences: &[T], fraction: f64, seed: u64) -> Vec<T> {
    if fraction >= 1.0 {
        return sentences.to_vec();
    }
    let k = ((sentences.len() as f64) * fraction.max(0.0)).round() as usize;
    if k == 0 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut reservoir: Vec<usize> = (0..k).collect();
    for i in k..sentences.len() {
        let j = rng.gen_range(0..=i);
        if j < k {
            reservoir[j] = i;
        }
    }
    reservoir.sort_unstable();
    reservoir.into_iter().map(|i| sentences[i].clone()).collect()
}
