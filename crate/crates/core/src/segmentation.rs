//! Ordered subword pieces for a single word.
//!
//! A [`Segmentation`] stores surface text only. The first piece is
//! word-initial, every later piece is a continuation; markers such as the
//! WordPiece `##` prefix are applied by [`Segmentation::render`] and removed
//! by [`Segmentation::from_marked`].

use std::fmt;

use crate::error::{Error, Result};

/// WordPiece continuation prefix.
pub const CONTINUATION_PREFIX: &str = "##";
/// Word-initial marker used when unigram pieces are rendered as a stream.
pub const WORD_INITIAL_MARKER: char = '\u{2581}';
/// Token emitted for words the vocabulary cannot cover.
pub const UNK_TOKEN: &str = "[UNK]";
/// Default morpheme delimiter in presegmented text.
pub const DEFAULT_DELIMITER: char = '@';

/// How pieces are marked when written out as tokens.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarkerStyle {
    /// `can ##o`
    Continuation,
    /// `▁can o`
    WordInitial,
    /// `can o`
    Bare,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segmentation {
    pieces: Vec<String>,
}

impl Segmentation {
    pub fn new<I, S>(pieces: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let pieces: Vec<String> = pieces.into_iter().map(Into::into).collect();
        if pieces.is_empty() {
            return Err(Error::InvalidSegmentation("no pieces".into()));
        }
        if pieces.iter().any(|p| p.is_empty()) {
            return Err(Error::InvalidSegmentation(format!(
                "empty piece in {pieces:?}"
            )));
        }
        Ok(Self { pieces })
    }

    /// Single-piece segmentation covering the whole word.
    pub fn whole(word: impl Into<String>) -> Self {
        let word = word.into();
        assert!(!word.is_empty(), "cannot segment an empty word");
        Self { pieces: vec![word] }
    }

    /// Strips `##`, `▁` and delimiter markers from tokenizer output.
    pub fn from_marked<S: AsRef<str>>(tokens: &[S], delimiter: char) -> Result<Self> {
        Self::new(tokens.iter().map(|t| {
            let t = t.as_ref();
            let t = t.strip_prefix(CONTINUATION_PREFIX).unwrap_or(t);
            let t = t.strip_prefix(WORD_INITIAL_MARKER).unwrap_or(t);
            let t = t.strip_prefix(delimiter).unwrap_or(t);
            t.to_string()
        }))
    }

    /// Parses `advers@ari`. A backslash escapes a literal delimiter or backslash.
    pub fn parse_delimited(text: &str, delimiter: char) -> Result<Self> {
        Self::new(split_escaped(text, delimiter))
    }

    /// Inverse of [`Segmentation::parse_delimited`].
    pub fn to_delimited(&self, delimiter: char) -> String {
        let mut out = String::new();
        for (i, piece) in self.pieces.iter().enumerate() {
            if i > 0 {
                out.push(delimiter);
            }
            out.push_str(&escape(piece, delimiter));
        }
        out
    }

    pub fn pieces(&self) -> &[String] {
        &self.pieces
    }

    pub fn into_pieces(self) -> Vec<String> {
        self.pieces
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn word(&self) -> String {
        self.pieces.concat()
    }

    pub fn char_len(&self) -> usize {
        self.pieces.iter().map(|p| p.chars().count()).sum()
    }

    /// Internal split positions, as character offsets into the word.
    pub fn boundaries(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.pieces.len().saturating_sub(1));
        let mut pos = 0;
        for piece in &self.pieces[..self.pieces.len() - 1] {
            pos += piece.chars().count();
            out.push(pos);
        }
        out
    }

    pub fn last_piece(&self) -> &str {
        self.pieces.last().expect("non-empty")
    }

    /// Concatenates segmentations of consecutive morphemes.
    pub fn concat(parts: impl IntoIterator<Item = Segmentation>) -> Option<Self> {
        let pieces: Vec<String> = parts.into_iter().flat_map(|s| s.pieces).collect();
        (!pieces.is_empty()).then_some(Self { pieces })
    }

    pub fn render(&self, style: MarkerStyle) -> Vec<String> {
        self.pieces
            .iter()
            .enumerate()
            .map(|(i, p)| match (style, i) {
                (MarkerStyle::Continuation, i) if i > 0 => format!("{CONTINUATION_PREFIX}{p}"),
                (MarkerStyle::WordInitial, 0) => format!("{WORD_INITIAL_MARKER}{p}"),
                _ => p.clone(),
            })
            .collect()
    }
}

impl fmt::Display for Segmentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pieces.join(" "))
    }
}

/// Escapes literal delimiters and backslashes with a backslash.
pub fn escape(text: &str, delimiter: char) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        if c == delimiter || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out
}

/// Splits on unescaped delimiters and unescapes each part.
pub fn split_escaped(text: &str, delimiter: char) -> Vec<String> {
    let mut parts = Vec::new();
    let mut cur = String::new();
    let mut chars = text.chars();
    while let Some(c) = chars.next() {
        if c == '\\' {
            match chars.next() {
                Some(next) => cur.push(next),
                None => cur.push('\\'),
            }
        } else if c == delimiter {
            parts.push(std::mem::take(&mut cur));
        } else {
            cur.push(c);
        }
    }
    parts.push(cur);
    parts
}

/// Removes unescaped delimiters and unescapes the rest.
pub fn strip_delimited(text: &str, delimiter: char) -> String {
    split_escaped(text, delimiter).concat()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundaries_are_char_offsets() {
        let s = Segmentation::new(["can", "t", "o"]).unwrap();
        assert_eq!(s.boundaries(), vec![3, 4]);
        let s = Segmentation::new(["mā", "lum"]).unwrap();
        assert_eq!(s.boundaries(), vec![2]);
        assert!(Segmentation::whole("cano").boundaries().is_empty());
    }

    #[test]
    fn rejects_empty_pieces() {
        assert!(Segmentation::new(Vec::<String>::new()).is_err());
        assert!(Segmentation::new(["a", ""]).is_err());
        assert!(Segmentation::parse_delimited("a@@b", '@').is_err());
        assert!(Segmentation::parse_delimited("@b", '@').is_err());
    }

    #[test]
    fn render_and_strip_markers() {
        let s = Segmentation::new(["can", "o"]).unwrap();
        assert_eq!(s.render(MarkerStyle::Continuation), ["can", "##o"]);
        assert_eq!(s.render(MarkerStyle::WordInitial), ["\u{2581}can", "o"]);
        let back = Segmentation::from_marked(&s.render(MarkerStyle::Continuation), '@').unwrap();
        assert_eq!(back, s);
        let back = Segmentation::from_marked(&["can", "@o"], '@').unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn escaped_delimiter_survives() {
        let s = Segmentation::parse_delimited(r"a\@b@c", '@').unwrap();
        assert_eq!(s.pieces(), ["a@b", "c"]);
        assert_eq!(s.to_delimited('@'), r"a\@b@c");
        assert_eq!(strip_delimited(r"a\@b@c", '@'), "a@bc");
        assert_eq!(strip_delimited(r"x\\y@z", '@'), r"x\yz");
    }
}
