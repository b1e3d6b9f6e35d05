//! Segmentation lattice over the characters of one word.

use std::cmp::Ordering;

use super::UlmVocabulary;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub start: usize,
    pub end: usize,
    pub piece: usize,
}

/// Nodes are character positions `0..=len`; each edge is a vocabulary entry
/// spanning `[start, end)`. Every start-to-end path spells the word.
#[derive(Debug, Clone)]
pub struct Lattice {
    len: usize,
    edges: Vec<Edge>,
    /// Edge indices grouped by end position.
    by_end: Vec<Vec<usize>>,
    /// Edge indices grouped by start position.
    by_start: Vec<Vec<usize>>,
}

impl Lattice {
    pub fn build(text: &str, vocab: &UlmVocabulary) -> Self {
        Self::build_excluding(text, vocab, None)
    }

    pub(crate) fn build_excluding(text: &str, vocab: &UlmVocabulary, exclude: Option<usize>) -> Self {
        let chars: Vec<char> = text.chars().collect();
        let len = chars.len();
        let mut edges = Vec::new();
        let mut by_end = vec![Vec::new(); len + 1];
        let mut by_start = vec![Vec::new(); len + 1];
        let mut key = String::new();
        for (start, starting) in by_start.iter_mut().enumerate().take(len) {
            key.clear();
            for end in start + 1..=len.min(start + vocab.max_chars()) {
                key.push(chars[end - 1]);
                if let Some(piece) = vocab.id(&key) {
                    if Some(piece) == exclude {
                        continue;
                    }
                    by_end[end].push(edges.len());
                    starting.push(edges.len());
                    edges.push(Edge { start, end, piece });
                }
            }
        }
        Self {
            len,
            edges,
            by_end,
            by_start,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Highest-scoring path under `weight`, as piece ids. Ties go to fewer
    /// pieces, then to the lexicographically smallest piece sequence.
    pub fn viterbi(&self, vocab: &UlmVocabulary, weight: impl Fn(usize) -> f64) -> Option<(Vec<usize>, f64)> {
        if self.len == 0 {
            return None;
        }
        // (score, pieces, incoming edge)
        let mut best: Vec<Option<(f64, usize, usize)>> = vec![None; self.len + 1];
        best[0] = Some((0.0, 0, usize::MAX));
        for end in 1..=self.len {
            for &e in &self.by_end[end] {
                let edge = self.edges[e];
                let Some((score, n, _)) = best[edge.start] else { continue };
                let cand = (score + weight(edge.piece), n + 1, e);
                let replace = match best[end] {
                    None => true,
                    Some(cur) => match cand.0.total_cmp(&cur.0) {
                        Ordering::Greater => true,
                        Ordering::Less => false,
                        Ordering::Equal => match cand.1.cmp(&cur.1) {
                            Ordering::Less => true,
                            Ordering::Greater => false,
                            Ordering::Equal => {
                                let a = self.path_through(&best, e);
                                let b = self.path_through(&best, cur.2);
                                let names = |p: &[usize]| p.iter().map(|&i| vocab.piece(i)).collect::<Vec<_>>();
                                names(&a) < names(&b)
                            }
                        },
                    },
                };
                if replace {
                    best[end] = Some(cand);
                }
            }
        }
        let (score, _, last) = best[self.len]?;
        Some((self.path_through(&best, last), score))
    }

    fn path_through(&self, best: &[Option<(f64, usize, usize)>], last_edge: usize) -> Vec<usize> {
        let mut path = Vec::new();
        let mut e = last_edge;
        loop {
            let edge = self.edges[e];
            path.push(edge.piece);
            if edge.start == 0 {
                break;
            }
            e = best[edge.start].expect("reachable").2;
        }
        path.reverse();
        path
    }

    /// Forward-backward under `log_prob`: returns `log Z` and the posterior
    /// expected count of every edge. `None` when no path exists.
    pub fn marginals(&self, log_prob: impl Fn(usize) -> f64) -> Option<(f64, Vec<f64>)> {
        if self.len == 0 {
            return None;
        }
        let mut alpha = vec![f64::NEG_INFINITY; self.len + 1];
        alpha[0] = 0.0;
        for end in 1..=self.len {
            alpha[end] = log_sum_exp(self.by_end[end].iter().map(|&e| {
                let edge = self.edges[e];
                alpha[edge.start] + log_prob(edge.piece)
            }));
        }
        let log_z = alpha[self.len];
        if log_z == f64::NEG_INFINITY {
            return None;
        }
        let mut beta = vec![f64::NEG_INFINITY; self.len + 1];
        beta[self.len] = 0.0;
        for start in (0..self.len).rev() {
            beta[start] = log_sum_exp(self.by_start[start].iter().map(|&e| {
                let edge = self.edges[e];
                log_prob(edge.piece) + beta[edge.end]
            }));
        }
        let posteriors = self
            .edges
            .iter()
            .map(|edge| (alpha[edge.start] + log_prob(edge.piece) + beta[edge.end] - log_z).exp())
            .collect();
        Some((log_z, posteriors))
    }
}

pub(crate) fn log_sum_exp(values: impl Iterator<Item = f64>) -> f64 {
    let values: Vec<f64> = values.collect();
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + values.iter().map(|v| (v - max).exp()).sum::<f64>().ln()
}
