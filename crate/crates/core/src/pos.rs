//! Part-of-speech inventories and the UD → analyzer tag mapping.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Universal Dependencies coarse tags accepted by the tagged-corpus reader.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum UdPos {
    Noun,
    Propn,
    Verb,
    Adj,
    Pron,
    Adv,
    Adp,
    Cconj,
    Sconj,
    Part,
    Intj,
    Det,
    X,
    Aux,
    Punct,
    Num,
}

impl UdPos {
    pub const ALL: [UdPos; 16] = [
        UdPos::Noun,
        UdPos::Propn,
        UdPos::Verb,
        UdPos::Adj,
        UdPos::Pron,
        UdPos::Adv,
        UdPos::Adp,
        UdPos::Cconj,
        UdPos::Sconj,
        UdPos::Part,
        UdPos::Intj,
        UdPos::Det,
        UdPos::X,
        UdPos::Aux,
        UdPos::Punct,
        UdPos::Num,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            UdPos::Noun => "NOUN",
            UdPos::Propn => "PROPN",
            UdPos::Verb => "VERB",
            UdPos::Adj => "ADJ",
            UdPos::Pron => "PRON",
            UdPos::Adv => "ADV",
            UdPos::Adp => "ADP",
            UdPos::Cconj => "CCONJ",
            UdPos::Sconj => "SCONJ",
            UdPos::Part => "PART",
            UdPos::Intj => "INTJ",
            UdPos::Det => "DET",
            UdPos::X => "X",
            UdPos::Aux => "AUX",
            UdPos::Punct => "PUNCT",
            UdPos::Num => "NUM",
        }
    }
}

impl FromStr for UdPos {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        UdPos::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::UnknownUdTag(s.to_string()))
    }
}

impl fmt::Display for UdPos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Part-of-speech labels produced by the morphological analyzer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AnalyzerPos {
    Noun,
    Adjective,
    Verb,
    Pronoun,
    Invariable,
    Preposition,
    Conjunction,
    Interjection,
    Other,
}

impl AnalyzerPos {
    pub const ALL: [AnalyzerPos; 9] = [
        AnalyzerPos::Noun,
        AnalyzerPos::Adjective,
        AnalyzerPos::Verb,
        AnalyzerPos::Pronoun,
        AnalyzerPos::Invariable,
        AnalyzerPos::Preposition,
        AnalyzerPos::Conjunction,
        AnalyzerPos::Interjection,
        AnalyzerPos::Other,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            AnalyzerPos::Noun => "Noun",
            AnalyzerPos::Adjective => "Adjective",
            AnalyzerPos::Verb => "Verb",
            AnalyzerPos::Pronoun => "Pronoun",
            AnalyzerPos::Invariable => "Invariable",
            AnalyzerPos::Preposition => "Preposition",
            AnalyzerPos::Conjunction => "Conjunction",
            AnalyzerPos::Interjection => "Interjection",
            AnalyzerPos::Other => "Other",
        }
    }
}

impl FromStr for AnalyzerPos {
    type Err = Error;

    /// Case-insensitive.
    fn from_str(s: &str) -> Result<Self> {
        AnalyzerPos::ALL
            .into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownAnalyzerTag(s.to_string()))
    }
}

impl fmt::Display for AnalyzerPos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Ordered UD → analyzer tag lists. Analyzer tags are tried in list order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosMapping {
    rows: BTreeMap<UdPos, Vec<AnalyzerPos>>,
}

impl Default for PosMapping {
    fn default() -> Self {
        use AnalyzerPos::*;
        let table: [(UdPos, &[AnalyzerPos]); 16] = [
            (UdPos::Noun, &[Noun, Adjective]),
            (UdPos::Propn, &[Noun, Adjective]),
            (UdPos::Verb, &[Verb]),
            (UdPos::Adj, &[Adjective, Noun]),
            (UdPos::Pron, &[Pronoun, Noun, Invariable]),
            (UdPos::Adv, &[Invariable]),
            (UdPos::Adp, &[Preposition, Invariable]),
            (UdPos::Cconj, &[Conjunction, Invariable]),
            (UdPos::Sconj, &[Conjunction, Invariable]),
            (UdPos::Part, &[Interjection, Invariable]),
            (UdPos::Intj, &[Interjection, Invariable]),
            (UdPos::Det, &[Pronoun, Adjective]),
            (UdPos::X, &[Invariable, Other]),
            (UdPos::Aux, &[Verb]),
            (UdPos::Punct, &[Invariable]),
            (UdPos::Num, &[Noun, Adjective, Invariable]),
        ];
        Self {
            rows: table.into_iter().map(|(k, v)| (k, v.to_vec())).collect(),
        }
    }
}

impl PosMapping {
    pub fn get(&self, ud: UdPos) -> &[AnalyzerPos] {
        self.rows.get(&ud).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Looks up a tag given as text; unknown tags are an error naming the tag.
    pub fn map_str(&self, ud: &str) -> Result<&[AnalyzerPos]> {
        Ok(self.get(ud.parse()?))
    }

    /// Reads `ud_tag<TAB>analyzer_tag_csv` lines. Rows replace the built-in
    /// entries for their tag; tags not mentioned keep the default row.
    pub fn parse_overrides(text: &str, source: &str) -> Result<Self> {
        let mut mapping = Self::default();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (ud, tags) = line
                .split_once('\t')
                .ok_or_else(|| Error::parse(source, idx + 1, "expected `ud_tag<TAB>tags`"))?;
            let ud: UdPos = ud.trim().parse()?;
            let tags = tags
                .split(',')
                .map(|t| t.trim().parse())
                .collect::<Result<Vec<AnalyzerPos>>>()?;
            if tags.is_empty() {
                return Err(Error::parse(source, idx + 1, "empty analyzer tag list"));
            }
            mapping.rows.insert(ud, tags);
        }
        Ok(mapping)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse_overrides(&text, &path.display().to_string())
    }
}

/// Convenience wrapper over the built-in table.
pub fn map_pos(ud_tag: &str) -> Result<Vec<AnalyzerPos>> {
    Ok(PosMapping::default().map_str(ud_tag)?.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use AnalyzerPos::*;

    #[test]
    fn table_rows() {
        assert_eq!(map_pos("NOUN").unwrap(), vec![Noun, Adjective]);
        assert_eq!(map_pos("PRON").unwrap(), vec![Pronoun, Noun, Invariable]);
        assert_eq!(map_pos("PUNCT").unwrap(), vec![Invariable]);
        assert_eq!(map_pos("NUM").unwrap(), vec![Noun, Adjective, Invariable]);
        assert_eq!(map_pos("DET").unwrap(), vec![Pronoun, Adjective]);
    }

    #[test]
    fn covers_all_sixteen_tags() {
        let m = PosMapping::default();
        for tag in UdPos::ALL {
            assert!(!m.get(tag).is_empty(), "{tag}");
        }
    }

    #[test]
    fn unknown_tag_is_named() {
        let err = map_pos("SYM").unwrap_err();
        assert!(err.to_string().contains("SYM"));
    }

    #[test]
    fn override_replaces_one_row() {
        let m = PosMapping::parse_overrides("VERB\tVerb,Adjective\n", "t").unwrap();
        assert_eq!(m.get(UdPos::Verb), &[Verb, Adjective]);
        assert_eq!(m.get(UdPos::Noun), &[Noun, Adjective]);
        assert!(PosMapping::parse_overrides("VERB\tVerbish\n", "t").is_err());
    }
}
