//! Brute-force reference implementations shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

/// Every way of cutting `word` into non-empty pieces.
pub fn all_segmentations(word: &str) -> Vec<Vec<String>> {
    let chars: Vec<char> = word.chars().collect();
    let n = chars.len();
    if n == 0 {
        return vec![];
    }
    (0u32..1 << (n - 1))
        .map(|mask| {
            let mut pieces = Vec::new();
            let mut cur = String::new();
            for (i, c) in chars.iter().enumerate() {
                cur.push(*c);
                if i + 1 < n && mask & (1 << i) != 0 {
                    pieces.push(std::mem::take(&mut cur));
                }
            }
            pieces.push(cur);
            pieces
        })
        .collect()
}

/// Best segmentation by exhaustive search: highest summed weight (summed left
/// to right), then fewest pieces, then lexicographically smallest sequence.
pub fn ulm_oracle(word: &str, weights: &BTreeMap<String, f64>) -> Option<Vec<String>> {
    let mut best: Option<(f64, Vec<String>)> = None;
    for seg in all_segmentations(word) {
        let Some(score) = seg
            .iter()
            .try_fold(0.0f64, |acc, p| weights.get(p).map(|w| acc + w))
        else {
            continue;
        };
        let better = match &best {
            None => true,
            Some((s, b)) => score > *s || (score == *s && (seg.len() < b.len() || (seg.len() == b.len() && seg < *b))),
        };
        if better {
            best = Some((score, seg));
        }
    }
    best.map(|(_, s)| s)
}

/// Greedy longest-prefix matching with `##` continuation entries.
pub fn wp_oracle(word: &str, vocab: &BTreeSet<String>) -> Option<Vec<String>> {
    let mut rest = word;
    let mut out = Vec::new();
    while !rest.is_empty() {
        let cuts: Vec<usize> = rest.char_indices().map(|(i, _)| i).skip(1).chain([rest.len()]).collect();
        let mut found = None;
        for &cut in cuts.iter().rev() {
            let piece = &rest[..cut];
            let key = if out.is_empty() { piece.to_string() } else { format!("##{piece}") };
            if vocab.contains(&key) {
                found = Some(cut);
                break;
            }
        }
        let cut = found?;
        out.push(rest[..cut].to_string());
        rest = &rest[cut..];
    }
    Some(out)
}

/// Character offsets after which a split occurs.
pub fn split_points(pieces: &[String]) -> BTreeSet<usize> {
    let mut acc = 0;
    let mut out = BTreeSet::new();
    for p in &pieces[..pieces.len() - 1] {
        acc += p.chars().count();
        out.insert(acc);
    }
    out
}

/// (hits, predicted, gold) boundary tallies.
pub fn boundary_tally(pred: &[String], gold: &[String]) -> (u64, u64, u64) {
    let p = split_points(pred);
    let g = split_points(gold);
    let hits = p.iter().filter(|b| g.contains(b)).count();
    (hits as u64, p.len() as u64, g.len() as u64)
}

/// Precision and recall as exact (numerator, denominator) pairs.
pub fn prf_rational(hits: u64, pred: u64, gold: u64) -> ((u64, u64), (u64, u64)) {
    let precision = if pred > 0 { (hits, pred) } else if gold == 0 { (1, 1) } else { (0, 1) };
    let recall = if gold > 0 { (hits, gold) } else if pred == 0 { (1, 1) } else { (0, 1) };
    (precision, recall)
}

pub fn ratio((n, d): (u64, u64)) -> f64 {
    n as f64 / d as f64
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_word(rng: &mut impl Rng, alphabet: &[char], min: usize, max: usize) -> String {
    let n = rng.gen_range(min..=max);
    (0..n).map(|_| *alphabet.choose(rng).expect("alphabet")).collect()
}

/// Random cut of `word` into pieces.
pub fn random_cut(rng: &mut impl Rng, word: &str) -> Vec<String> {
    let segs = all_segmentations(word);
    segs.choose(rng).expect("non-empty word").clone()
}
