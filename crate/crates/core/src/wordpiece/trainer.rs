use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet};

use crate::corpus::SuffixList;
use crate::error::{Error, Result};
use crate::segmentation::CONTINUATION_PREFIX;
use crate::training::WordTable;

use super::WpVocabulary;

#[derive(Debug, Clone, PartialEq)]
pub struct WpTrainerConfig {
    pub vocab_size: usize,
    /// Pairs seen fewer times than this are never merged.
    pub min_pair_frequency: u64,
    /// Suffixes added as `##` entries before any merge.
    pub seeding: Option<SuffixList>,
}

impl Default for WpTrainerConfig {
    fn default() -> Self {
        Self {
            vocab_size: 30_000,
            min_pair_frequency: 2,
            seeding: None,
        }
    }
}

type Pair = (u32, u32);

struct Symbols {
    names: Vec<String>,
    ids: HashMap<String, u32>,
}

impl Symbols {
    fn intern(&mut self, name: String) -> u32 {
        if let Some(&id) = self.ids.get(&name) {
            return id;
        }
        let id = self.names.len() as u32;
        self.ids.insert(name.clone(), id);
        self.names.push(name);
        id
    }
}

struct Unit {
    symbols: Vec<u32>,
    count: u64,
}

/// Learns a WordPiece vocabulary.
///
/// Every morpheme of every word is an independent merge domain, so no piece
/// ever spans a morpheme boundary. Morphemes after the first start with a
/// continuation symbol. Each step merges the adjacent pair maximising
/// `count(ab) / (count(a) * count(b))`; exact ties go to the higher pair count
/// and then to the lexicographically smallest `(left, right)`.
pub fn train(words: &WordTable, cfg: &WpTrainerConfig) -> Result<WpVocabulary> {
    if words.is_empty() {
        return Err(Error::EmptyCorpus);
    }

    let units = words.morpheme_units();
    let alphabet: BTreeSet<char> = units.keys().flat_map(|(m, _)| m.chars()).collect();

    let mut vocab = WpVocabulary::new(Vec::<String>::new());
    for c in &alphabet {
        vocab.push(c.to_string());
        vocab.push(format!("{CONTINUATION_PREFIX}{c}"));
    }
    if let Some(seeds) = &cfg.seeding {
        for s in seeds.iter() {
            vocab.push(format!("{CONTINUATION_PREFIX}{s}"));
        }
    }
    if cfg.vocab_size < vocab.len() {
        return Err(Error::VocabTooSmall {
            requested: cfg.vocab_size,
            required: vocab.len(),
        });
    }

    let mut symbols = Symbols {
        names: Vec::new(),
        ids: HashMap::new(),
    };
    let mut units: Vec<Unit> = units
        .into_iter()
        .map(|((morpheme, initial), count)| {
            let symbols = morpheme
                .chars()
                .enumerate()
                .map(|(i, c)| {
                    if i == 0 && initial {
                        symbols.intern(c.to_string())
                    } else {
                        symbols.intern(format!("{CONTINUATION_PREFIX}{c}"))
                    }
                })
                .collect();
            Unit { symbols, count }
        })
        .collect();

    let mut symbol_counts: Vec<u64> = vec![0; symbols.names.len()];
    let mut pair_counts: HashMap<Pair, u64> = HashMap::new();
    let mut pair_units: HashMap<Pair, HashSet<usize>> = HashMap::new();
    for (idx, unit) in units.iter().enumerate() {
        for &s in &unit.symbols {
            symbol_counts[s as usize] += unit.count;
        }
        for w in unit.symbols.windows(2) {
            let p = (w[0], w[1]);
            *pair_counts.entry(p).or_insert(0) += unit.count;
            pair_units.entry(p).or_default().insert(idx);
        }
    }

    while vocab.len() < cfg.vocab_size {
        let Some(best) = best_pair(&pair_counts, &symbol_counts, &symbols.names, cfg.min_pair_frequency) else {
            break;
        };
        let (a, b) = best;
        let right = &symbols.names[b as usize];
        let merged_name = format!(
            "{}{}",
            symbols.names[a as usize],
            right.strip_prefix(CONTINUATION_PREFIX).unwrap_or(right)
        );
        let merged = symbols.intern(merged_name.clone());
        if symbol_counts.len() < symbols.names.len() {
            symbol_counts.resize(symbols.names.len(), 0);
        }
        vocab.push(merged_name);

        let mut touched: Vec<usize> = pair_units
            .remove(&best)
            .map(|s| s.into_iter().collect())
            .unwrap_or_default();
        touched.sort_unstable();
        for idx in touched {
            let unit = &mut units[idx];
            let count = unit.count;
            for w in unit.symbols.windows(2) {
                let p = (w[0], w[1]);
                if let Some(c) = pair_counts.get_mut(&p) {
                    *c -= count;
                    if *c == 0 {
                        pair_counts.remove(&p);
                    }
                }
                if let Some(set) = pair_units.get_mut(&p) {
                    set.remove(&idx);
                    if set.is_empty() {
                        pair_units.remove(&p);
                    }
                }
            }
            for &s in &unit.symbols {
                symbol_counts[s as usize] -= count;
            }

            let mut next = Vec::with_capacity(unit.symbols.len());
            let mut i = 0;
            while i < unit.symbols.len() {
                if i + 1 < unit.symbols.len() && (unit.symbols[i], unit.symbols[i + 1]) == best {
                    next.push(merged);
                    i += 2;
                } else {
                    next.push(unit.symbols[i]);
                    i += 1;
                }
            }
            unit.symbols = next;

            for &s in &unit.symbols {
                symbol_counts[s as usize] += count;
            }
            for w in unit.symbols.windows(2) {
                let p = (w[0], w[1]);
                *pair_counts.entry(p).or_insert(0) += count;
                pair_units.entry(p).or_default().insert(idx);
            }
        }
        log::trace!("merge {:?} -> vocab {}", best, vocab.len());
    }

    Ok(vocab)
}

fn best_pair(
    pair_counts: &HashMap<Pair, u64>,
    symbol_counts: &[u64],
    names: &[String],
    min_freq: u64,
) -> Option<Pair> {
    let mut best: Option<(Pair, u64)> = None;
    for (&pair, &count) in pair_counts {
        if count < min_freq.max(1) {
            continue;
        }
        let better = match best {
            None => true,
            Some((cur, cur_count)) => {
                compare_pairs((pair, count), (cur, cur_count), symbol_counts, names) == Ordering::Greater
            }
        };
        if better {
            best = Some((pair, count));
        }
    }
    best.map(|(p, _)| p)
}

/// Greater means `x` should be merged before `y`.
fn compare_pairs(x: (Pair, u64), y: (Pair, u64), symbol_counts: &[u64], names: &[String]) -> Ordering {
    let denom = |p: Pair| symbol_counts[p.0 as usize] as u128 * symbol_counts[p.1 as usize] as u128;
    // count_x / denom_x vs count_y / denom_y, cross-multiplied
    let lhs = x.1 as u128 * denom(y.0);
    let rhs = y.1 as u128 * denom(x.0);
    lhs.cmp(&rhs).then(x.1.cmp(&y.1)).then_with(|| {
        let key = |p: Pair| (&names[p.0 as usize], &names[p.1 as usize]);
        key(y.0).cmp(&key(x.0))
    })
}
