//! Readers for the plain-text inputs: raw corpus, POS-tagged corpus, suffix
//! list and gold segmentation sets.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use crate::error::{Error, Result};
use crate::pos::UdPos;
use crate::segmentation::Segmentation;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CorpusOptions {
    pub lowercase: bool,
}

/// Sentences of whitespace-free, non-empty surface words.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Corpus {
    sentences: Vec<Vec<String>>,
}

impl Corpus {
    /// Words are split on any whitespace; empty tokens are dropped.
    pub fn from_sentences<I, S, W>(sentences: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = W>,
        W: AsRef<str>,
    {
        Self {
            sentences: sentences
                .into_iter()
                .map(|s| {
                    s.into_iter()
                        .flat_map(|w| {
                            w.as_ref()
                                .split_whitespace()
                                .map(str::to_string)
                                .collect::<Vec<_>>()
                        })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn parse(text: &str, opts: CorpusOptions) -> Self {
        Self {
            sentences: text
                .lines()
                .map(|line| {
                    line.split_whitespace()
                        .map(|w| {
                            if opts.lowercase {
                                w.to_lowercase()
                            } else {
                                w.to_string()
                            }
                        })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn sentences(&self) -> &[Vec<String>] {
        &self.sentences
    }

    pub fn num_words(&self) -> usize {
        self.sentences.iter().map(Vec::len).sum()
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.sentences.iter().flatten().map(String::as_str)
    }

    /// Token frequency per word type.
    pub fn word_counts(&self) -> BTreeMap<String, u64> {
        let mut counts = BTreeMap::new();
        for w in self.words() {
            *counts.entry(w.to_string()).or_insert(0) += 1;
        }
        counts
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.sentences {
            out.push_str(&s.join(" "));
            out.push('\n');
        }
        out
    }
}

/// One sentence per line, words separated by spaces.
pub fn load_corpus(path: impl AsRef<Path>, opts: CorpusOptions) -> Result<Corpus> {
    let path = path.as_ref();
    let text = read_utf8(path)?;
    Ok(Corpus::parse(&text, opts))
}

/// Reads a file, reporting the first line with invalid UTF-8.
pub(crate) fn read_utf8(path: &Path) -> Result<String> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    match String::from_utf8(bytes) {
        Ok(text) => Ok(text),
        Err(e) => {
            let bytes = e.as_bytes();
            let valid = e.utf8_error().valid_up_to();
            let line = bytes[..valid].iter().filter(|&&b| b == b'\n').count() + 1;
            Err(Error::InvalidUtf8 {
                path: path.display().to_string(),
                line,
            })
        }
    }
}

/// Sentences of (word, UD tag) pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TaggedCorpus {
    sentences: Vec<Vec<(String, UdPos)>>,
}

impl TaggedCorpus {
    pub fn new(sentences: Vec<Vec<(String, UdPos)>>) -> Self {
        Self { sentences }
    }

    /// `word<TAB>UD_POS` lines, blank line between sentences.
    pub fn parse(text: &str, source: &str, opts: CorpusOptions) -> Result<Self> {
        let mut sentences = Vec::new();
        let mut current = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() {
                if !current.is_empty() {
                    sentences.push(std::mem::take(&mut current));
                }
                continue;
            }
            let (word, tag) = line
                .split_once('\t')
                .ok_or_else(|| Error::parse(source, idx + 1, "expected `word<TAB>UD_POS`"))?;
            let word = word.trim();
            if word.is_empty() || word.contains(char::is_whitespace) {
                return Err(Error::parse(source, idx + 1, "word must be non-empty without whitespace"));
            }
            let tag: UdPos = tag
                .trim()
                .parse()
                .map_err(|e: Error| Error::parse(source, idx + 1, e.to_string()))?;
            let word = if opts.lowercase {
                word.to_lowercase()
            } else {
                word.to_string()
            };
            current.push((word, tag));
        }
        if !current.is_empty() {
            sentences.push(current);
        }
        Ok(Self { sentences })
    }

    pub fn sentences(&self) -> &[Vec<(String, UdPos)>] {
        &self.sentences
    }

    /// Drops the tags.
    pub fn to_corpus(&self) -> Corpus {
        Corpus {
            sentences: self
                .sentences
                .iter()
                .map(|s| s.iter().map(|(w, _)| w.clone()).collect())
                .collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.sentences {
            for (w, t) in s {
                out.push_str(w);
                out.push('\t');
                out.push_str(t.as_str());
                out.push('\n');
            }
            out.push('\n');
        }
        out
    }
}

pub fn load_tagged_corpus(path: impl AsRef<Path>, opts: CorpusOptions) -> Result<TaggedCorpus> {
    let path = path.as_ref();
    let text = read_utf8(path)?;
    TaggedCorpus::parse(&text, &path.display().to_string(), opts)
}

/// Suffix strings used for vocabulary seeding. Order of first appearance is kept.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SuffixList {
    suffixes: Vec<String>,
}

impl SuffixList {
    /// Blank lines and exact duplicates are skipped.
    pub fn new<I, S>(suffixes: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for s in suffixes {
            let s: String = s.into();
            if s.contains(char::is_whitespace) {
                return Err(Error::Config(format!("suffix `{s}` contains whitespace")));
            }
            if !s.is_empty() && seen.insert(s.clone()) {
                out.push(s);
            }
        }
        Ok(Self { suffixes: out })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(text.lines().map(str::trim))
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.suffixes.iter().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.suffixes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.suffixes.is_empty()
    }

    pub fn contains(&self, s: &str) -> bool {
        self.suffixes.iter().any(|x| x == s)
    }

    pub fn to_text(&self) -> String {
        self.suffixes.iter().map(|s| format!("{s}\n")).collect()
    }
}

pub fn load_suffixes(path: impl AsRef<Path>) -> Result<SuffixList> {
    let path = path.as_ref();
    SuffixList::parse(&read_utf8(path)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldItem {
    pub word: String,
    pub pos: Option<UdPos>,
    pub gold: Segmentation,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GoldSegmentationSet {
    items: Vec<GoldItem>,
}

impl GoldSegmentationSet {
    pub fn new(items: Vec<GoldItem>) -> Result<Self> {
        for item in &items {
            if item.gold.word() != item.word {
                return Err(Error::WordMismatch {
                    pred: item.gold.word(),
                    gold: item.word.clone(),
                });
            }
        }
        Ok(Self { items })
    }

    /// `word<TAB>pos_or_dash<TAB>seg`, morphemes in `seg` joined by `delimiter`.
    pub fn parse(text: &str, source: &str, delimiter: char) -> Result<Self> {
        let mut items = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').collect();
            let [word, pos, seg] = cols[..] else {
                return Err(Error::parse(source, idx + 1, "expected 3 tab-separated columns"));
            };
            let pos = match pos.trim() {
                "-" | "" => None,
                tag => Some(
                    tag.parse()
                        .map_err(|e: Error| Error::parse(source, idx + 1, e.to_string()))?,
                ),
            };
            let gold = Segmentation::parse_delimited(seg.trim(), delimiter)
                .map_err(|e| Error::parse(source, idx + 1, e.to_string()))?;
            if gold.word() != word {
                return Err(Error::parse(
                    source,
                    idx + 1,
                    format!("gold `{}` does not spell `{word}`", seg.trim()),
                ));
            }
            items.push(GoldItem {
                word: word.to_string(),
                pos,
                gold,
            });
        }
        Ok(Self { items })
    }

    pub fn items(&self) -> &[GoldItem] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn to_text(&self, delimiter: char) -> String {
        let mut out = String::new();
        for item in &self.items {
            let pos = item.pos.map_or("-", UdPos::as_str);
            out.push_str(&format!(
                "{}\t{}\t{}\n",
                item.word,
                pos,
                item.gold.to_delimited(delimiter)
            ));
        }
        out
    }
}

pub fn load_gold(path: impl AsRef<Path>, delimiter: char) -> Result<GoldSegmentationSet> {
    let path = path.as_ref();
    let text = read_utf8(path)?;
    GoldSegmentationSet::parse(&text, &path.display().to_string(), delimiter)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn single_sentence() {
        let c = Corpus::parse("arma virumque cano\n", CorpusOptions::default());
        assert_eq!(c.sentences().len(), 1);
        assert_eq!(c.sentences()[0], ["arma", "virumque", "cano"]);
    }

    #[test]
    fn empty_file_has_no_sentences() {
        let c = Corpus::parse("", CorpusOptions::default());
        assert_eq!(c.sentences().len(), 0);
        assert_eq!(c.num_words(), 0);
    }

    #[test]
    fn double_space_drops_empty_tokens() {
        let c = Corpus::parse("a  b", CorpusOptions::default());
        // matches the usual whitespace-split semantics
        let reference: Vec<&str> = "a  b".split(' ').filter(|w| !w.is_empty()).collect();
        assert_eq!(c.sentences()[0], reference);
        assert_eq!(c.sentences()[0], ["a", "b"]);
    }

    #[test]
    fn lowercase_is_opt_in() {
        let c = Corpus::parse("Roma", CorpusOptions::default());
        assert_eq!(c.sentences()[0], ["Roma"]);
        let c = Corpus::parse("Roma", CorpusOptions { lowercase: true });
        assert_eq!(c.sentences()[0], ["roma"]);
    }

    #[test]
    fn invalid_utf8_reports_line() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(b"arma\nvirum\xff\n").unwrap();
        match load_corpus(f.path(), CorpusOptions::default()) {
            Err(Error::InvalidUtf8 { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn missing_file_is_io_error() {
        let err = load_corpus("/nonexistent/corpus.txt", CorpusOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Io { .. }));
        assert!(err.is_input_error());
    }

    #[test]
    fn tagged_corpus_sentences() {
        let t = TaggedCorpus::parse("arma\tNOUN\ncano\tVERB\n\n.\tPUNCT\n", "t", CorpusOptions::default())
            .unwrap();
        assert_eq!(t.sentences().len(), 2);
        assert_eq!(t.sentences()[0][1], ("cano".to_string(), UdPos::Verb));
        assert!(TaggedCorpus::parse("arma\tSYM\n", "t", CorpusOptions::default()).is_err());
    }

    #[test]
    fn suffix_list_dedups() {
        let s = SuffixList::parse("o\nari\n\no\n").unwrap();
        assert_eq!(s.iter().collect::<Vec<_>>(), ["o", "ari"]);
    }

    #[test]
    fn gold_set_parses_and_checks_spelling() {
        let g = GoldSegmentationSet::parse("cano\tVERB\tcan@o\nrosa\t-\trosa\n", "g", '@').unwrap();
        assert_eq!(g.items()[0].gold.pieces(), ["can", "o"]);
        assert_eq!(g.items()[1].pos, None);
        assert!(GoldSegmentationSet::parse("cano\t-\tcan@a\n", "g", '@').is_err());
        let back = GoldSegmentationSet::parse(&g.to_text('@'), "g", '@').unwrap();
        assert_eq!(back, g);
    }
}
