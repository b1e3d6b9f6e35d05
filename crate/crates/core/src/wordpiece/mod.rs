//! WordPiece: PMI-driven merge training and greedy longest-match encoding.

mod trainer;

use std::collections::HashSet;

pub use trainer::{train, WpTrainerConfig};

use crate::segmentation::{Segmentation, CONTINUATION_PREFIX, UNK_TOKEN};

/// Learned WordPiece inventory. Continuation entries carry the `##` prefix.
/// Entry order is insertion order and is preserved by serialization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WpVocabulary {
    entries: Vec<String>,
    lookup: HashSet<String>,
    max_chars: usize,
}

impl WpVocabulary {
    /// Builds a vocabulary from entries, dropping duplicates. The unknown
    /// token is always present as the first entry.
    pub fn new<I, S>(entries: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut vocab = Self {
            entries: Vec::new(),
            lookup: HashSet::new(),
            max_chars: 0,
        };
        vocab.push(UNK_TOKEN.to_string());
        for e in entries {
            vocab.push(e.into());
        }
        vocab
    }

    /// Returns true when the entry was new.
    pub(crate) fn push(&mut self, entry: String) -> bool {
        if self.lookup.contains(&entry) {
            return false;
        }
        let surface = entry.strip_prefix(CONTINUATION_PREFIX).unwrap_or(&entry);
        self.max_chars = self.max_chars.max(surface.chars().count());
        self.lookup.insert(entry.clone());
        self.entries.push(entry);
        true
    }

    pub fn entries(&self) -> &[String] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, entry: &str) -> bool {
        self.lookup.contains(entry)
    }

    /// Greedy longest match; `None` means the word maps to `[UNK]`.
    pub fn encode(&self, word: &str) -> Option<Segmentation> {
        let mut pieces = Vec::new();
        self.encode_span(word, true, &mut pieces)?;
        Segmentation::new(pieces).ok()
    }

    /// Encodes each morpheme separately; later morphemes use continuation
    /// entries. Any uncovered morpheme makes the whole word `[UNK]`.
    pub fn encode_morphemes(&self, morphemes: &Segmentation) -> Option<Segmentation> {
        let mut pieces = Vec::new();
        for (i, m) in morphemes.pieces().iter().enumerate() {
            self.encode_span(m, i == 0, &mut pieces)?;
        }
        Segmentation::new(pieces).ok()
    }

    fn encode_span(&self, text: &str, word_initial: bool, out: &mut Vec<String>) -> Option<()> {
        let chars: Vec<char> = text.chars().collect();
        let mut key = String::new();
        let mut start = 0;
        while start < chars.len() {
            let longest = (chars.len() - start).min(self.max_chars);
            let end = (start + 1..=start + longest).rev().find(|&end| {
                key.clear();
                if start > 0 || !word_initial {
                    key.push_str(CONTINUATION_PREFIX);
                }
                key.extend(&chars[start..end]);
                self.lookup.contains(&key)
            })?;
            out.push(chars[start..end].iter().collect());
            start = end;
        }
        Some(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vocab(entries: &[&str]) -> WpVocabulary {
        WpVocabulary::new(entries.iter().copied())
    }

    #[test]
    fn longest_match_first() {
        let v = vocab(&["c", "a", "n", "o", "##a", "##n", "##o", "can", "##no"]);
        let s = v.encode("cano").unwrap();
        assert_eq!(s.pieces(), ["can", "o"]);
        assert_eq!(s.render(crate::MarkerStyle::Continuation), ["can", "##o"]);
    }

    #[test]
    fn single_character_word() {
        let v = vocab(&["a", "##a"]);
        assert_eq!(v.encode("a").unwrap().pieces(), ["a"]);
    }

    #[test]
    fn missing_character_is_unknown() {
        let v = vocab(&["c", "##a", "##n"]);
        assert_eq!(v.encode("cano"), None);
        // a continuation-only character cannot start a word
        assert_eq!(v.encode("a"), None);
    }

    #[test]
    fn morphemes_never_share_a_piece() {
        let v = vocab(&["c", "##a", "##n", "##o", "can", "cano", "##o"]);
        let m = Segmentation::new(["can", "o"]).unwrap();
        assert_eq!(v.encode("cano").unwrap().pieces(), ["cano"]);
        assert_eq!(v.encode_morphemes(&m).unwrap().pieces(), ["can", "o"]);
    }

    #[test]
    fn unknown_token_is_first_entry() {
        let v = vocab(&["a", "[UNK]", "a"]);
        assert_eq!(v.entries(), ["[UNK]", "a"]);
    }
}
