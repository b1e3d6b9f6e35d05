//! Morphological lexicon: analyzer readings per surface word.

use std::collections::BTreeMap;
use std::path::Path;

use crate::corpus::{read_utf8, CorpusOptions};
use crate::error::{Error, Result};
use crate::pos::AnalyzerPos;
use crate::segmentation::{Segmentation, DEFAULT_DELIMITER};

/// One analyzer reading: morphemes (root first) and the analyzer POS.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MorphAnalysis {
    pub morphemes: Segmentation,
    pub pos: AnalyzerPos,
}

impl MorphAnalysis {
    pub fn new<S: Into<String>>(morphemes: impl IntoIterator<Item = S>, pos: AnalyzerPos) -> Result<Self> {
        Ok(Self {
            morphemes: Segmentation::new(morphemes)?,
            pos,
        })
    }
}

/// A row the loader refused, with its reason.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RejectedRow {
    pub line: usize,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MorphLexicon {
    entries: BTreeMap<String, Vec<MorphAnalysis>>,
}

impl MorphLexicon {
    /// Appends an analysis, checking that the morphemes spell `word`.
    pub fn insert(&mut self, word: &str, analysis: MorphAnalysis) -> Result<()> {
        let spelled = analysis.morphemes.word();
        if spelled != word {
            return Err(Error::WordMismatch {
                pred: spelled,
                gold: word.to_string(),
            });
        }
        self.entries.entry(word.to_string()).or_default().push(analysis);
        Ok(())
    }

    pub fn get(&self, word: &str) -> Option<&[MorphAnalysis]> {
        self.entries.get(word).map(Vec::as_slice)
    }

    pub fn contains(&self, word: &str) -> bool {
        self.entries.contains_key(word)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &[MorphAnalysis])> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v.as_slice()))
    }

    /// Parses `word<TAB>index<TAB>pos<TAB>seg` rows. Bad rows are returned
    /// alongside the lexicon rather than aborting the load.
    pub fn parse(text: &str, delimiter: char, opts: CorpusOptions) -> (Self, Vec<RejectedRow>) {
        let mut lexicon = Self::default();
        let mut rejected = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let reject = |reason: String| RejectedRow {
                line: idx + 1,
                reason,
            };
            let cols: Vec<&str> = line.split('\t').collect();
            let [word, index, pos, seg] = cols[..] else {
                rejected.push(reject(format!("expected 4 columns, found {}", cols.len())));
                continue;
            };
            if index.trim().parse::<u32>().is_err() {
                rejected.push(reject(format!("analysis index `{index}` is not an integer")));
                continue;
            }
            let pos: AnalyzerPos = match pos.trim().parse() {
                Ok(p) => p,
                Err(e) => {
                    rejected.push(reject(e.to_string()));
                    continue;
                }
            };
            let (word, seg) = if opts.lowercase {
                (word.to_lowercase(), seg.to_lowercase())
            } else {
                (word.to_string(), seg.to_string())
            };
            let analysis = match Segmentation::parse_delimited(seg.trim(), delimiter) {
                Ok(morphemes) => MorphAnalysis { morphemes, pos },
                Err(e) => {
                    rejected.push(reject(e.to_string()));
                    continue;
                }
            };
            if let Err(e) = lexicon.insert(word.trim(), analysis) {
                rejected.push(reject(format!("concatenation mismatch: {e}")));
            }
        }
        (lexicon, rejected)
    }

    pub fn to_text(&self, delimiter: char) -> String {
        let mut out = String::new();
        for (word, analyses) in &self.entries {
            for (i, a) in analyses.iter().enumerate() {
                out.push_str(&format!(
                    "{word}\t{}\t{}\t{}\n",
                    i + 1,
                    a.pos,
                    a.morphemes.to_delimited(delimiter)
                ));
            }
        }
        out
    }
}

/// Result of [`load_lexicon`].
#[derive(Debug, Clone)]
pub struct LexiconLoad {
    pub lexicon: MorphLexicon,
    pub rejected: Vec<RejectedRow>,
}

pub fn load_lexicon(path: impl AsRef<Path>, opts: CorpusOptions) -> Result<LexiconLoad> {
    load_lexicon_with(path, DEFAULT_DELIMITER, opts)
}

pub fn load_lexicon_with(path: impl AsRef<Path>, delimiter: char, opts: CorpusOptions) -> Result<LexiconLoad> {
    let path = path.as_ref();
    let text = read_utf8(path)?;
    let (lexicon, rejected) = MorphLexicon::parse(&text, delimiter, opts);
    for r in &rejected {
        log::warn!("{}:{}: rejected lexicon row: {}", path.display(), r.line, r.reason);
    }
    Ok(LexiconLoad { lexicon, rejected })
}
