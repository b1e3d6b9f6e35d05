//! Versioned plain-text tokenizer artifacts.
//!
//! ```text
//! # morphtok-tokenizer v1
//! # algorithm=ulm
//! # guidance=morphseed
//! # delimiter=@
//! # boost=0.5
//! # config.vocab_size=30000
//! # config_digest=<sha256 of the config lines>
//! # entries=3
//! a<TAB>-1.2<TAB>0
//! ...
//! ```
//!
//! WordPiece entries are one vocabulary string per line (`##` marks
//! continuation). Unigram entries are `piece<TAB>log_prob<TAB>protected`;
//! log-probs use the shortest decimal form that parses back to the same bits.

use std::fmt::Write as _;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::corpus::read_utf8;
use crate::error::{Error, Result};
use crate::tokenizer::{Algorithm, Guidance, Model, Tokenizer};
use crate::unigram::{UlmPiece, UlmVocabulary};
use crate::wordpiece::WpVocabulary;

pub const FORMAT_NAME: &str = "morphtok-tokenizer";
pub const FORMAT_VERSION: &str = "v1";

/// Hex SHA-256 over the `key=value` lines of a config.
pub fn config_digest(config: &[(String, String)]) -> String {
    let mut hasher = Sha256::new();
    for (k, v) in config {
        hasher.update(k.as_bytes());
        hasher.update(b"=");
        hasher.update(v.as_bytes());
        hasher.update(b"\n");
    }
    hex::encode(hasher.finalize())
}

pub fn to_text(tok: &Tokenizer) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {FORMAT_NAME} {FORMAT_VERSION}");
    let _ = writeln!(out, "# algorithm={}", tok.algorithm());
    let _ = writeln!(out, "# guidance={}", tok.guidance);
    let _ = writeln!(out, "# delimiter={}", tok.delimiter);
    if let Model::Unigram(v) = &tok.model {
        let _ = writeln!(out, "# boost={}", v.boost());
    }
    for (k, v) in &tok.config {
        let _ = writeln!(out, "# config.{k}={v}");
    }
    let _ = writeln!(out, "# config_digest={}", config_digest(&tok.config));
    let _ = writeln!(out, "# entries={}", tok.vocab_len());
    match &tok.model {
        Model::WordPiece(v) => {
            for e in v.entries() {
                out.push_str(e);
                out.push('\n');
            }
        }
        Model::Unigram(v) => {
            for p in v.pieces() {
                let _ = writeln!(out, "{}\t{}\t{}", p.piece, p.log_prob, u8::from(p.protected));
            }
        }
    }
    out
}

pub fn save_tokenizer(tok: &Tokenizer, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, to_text(tok)).map_err(|e| Error::io(path, e))
}

pub fn load_tokenizer(path: impl AsRef<Path>) -> Result<Tokenizer> {
    let path = path.as_ref();
    let text = read_utf8(path)?;
    from_text(&text, &path.display().to_string())
}

pub fn from_text(text: &str, source: &str) -> Result<Tokenizer> {
    let mut lines = text.lines().enumerate().peekable();
    let perr = |line: usize, msg: String| Error::parse(source, line + 1, msg);

    match lines.next() {
        Some((_, first)) => {
            let Some(rest) = first.strip_prefix("# ").and_then(|r| r.strip_prefix(FORMAT_NAME)) else {
                return Err(perr(0, "not a tokenizer artifact".into()));
            };
            let version = rest.trim();
            if version != FORMAT_VERSION {
                return Err(Error::UnsupportedVersion(version.to_string()));
            }
        }
        None => return Err(Error::Truncated { expected: 1, found: 0 }),
    }

    let mut algorithm = None;
    let mut guidance = None;
    let mut delimiter = None;
    let mut boost = 0.0;
    let mut config = Vec::new();
    let mut digest = None;
    let mut entries = None;
    while let Some(&(no, line)) = lines.peek() {
        let Some(header) = line.strip_prefix("# ") else { break };
        lines.next();
        let (key, value) = header
            .split_once('=')
            .ok_or_else(|| perr(no, format!("malformed header line `{line}`")))?;
        match key {
            "algorithm" => algorithm = Some(value.parse::<Algorithm>().map_err(|e| perr(no, e.to_string()))?),
            "guidance" => guidance = Some(value.parse::<Guidance>().map_err(|e| perr(no, e.to_string()))?),
            "delimiter" => {
                let mut chars = value.chars();
                match (chars.next(), chars.next()) {
                    (Some(c), None) => delimiter = Some(c),
                    _ => return Err(perr(no, format!("delimiter must be one character, got `{value}`"))),
                }
            }
            "boost" => boost = value.parse::<f64>().map_err(|e| perr(no, format!("bad boost: {e}")))?,
            "config_digest" => digest = Some(value.to_string()),
            "entries" => entries = Some(value.parse::<usize>().map_err(|e| perr(no, format!("bad entry count: {e}")))?),
            k => match k.strip_prefix("config.") {
                Some(k) => config.push((k.to_string(), value.to_string())),
                None => return Err(perr(no, format!("unknown header key `{k}`"))),
            },
        }
    }
    let algorithm = algorithm.ok_or_else(|| perr(0, "missing algorithm".into()))?;
    let guidance = guidance.ok_or_else(|| perr(0, "missing guidance".into()))?;
    let delimiter = delimiter.ok_or_else(|| perr(0, "missing delimiter".into()))?;
    let expected = entries.ok_or(Error::Truncated { expected: 1, found: 0 })?;
    if let Some(d) = digest {
        if d != config_digest(&config) {
            return Err(perr(0, "config digest does not match config lines".into()));
        }
    }

    let body: Vec<(usize, &str)> = lines.collect();
    if body.len() < expected {
        return Err(Error::Truncated { expected, found: body.len() });
    }
    if body.len() > expected {
        return Err(perr(body[expected].0, format!("more entries than the declared {expected}")));
    }

    let model = match algorithm {
        Algorithm::WordPiece => {
            for &(no, e) in &body {
                if e.is_empty() || e.chars().any(char::is_whitespace) {
                    return Err(perr(no, format!("invalid vocabulary entry `{e}`")));
                }
            }
            let vocab = WpVocabulary::new(body.iter().map(|&(_, e)| e));
            if vocab.len() != expected {
                return Err(perr(0, "duplicate or misplaced vocabulary entries".into()));
            }
            Model::WordPiece(vocab)
        }
        Algorithm::Unigram => {
            let mut pieces = Vec::with_capacity(expected);
            for &(no, line) in &body {
                let cols: Vec<&str> = line.split('\t').collect();
                let [piece, lp, prot] = cols[..] else {
                    return Err(perr(no, "expected piece<TAB>log_prob<TAB>protected".into()));
                };
                let log_prob = lp.parse::<f64>().map_err(|e| perr(no, format!("bad log-prob: {e}")))?;
                let protected = match prot {
                    "0" => false,
                    "1" => true,
                    other => return Err(perr(no, format!("protected flag must be 0 or 1, got `{other}`"))),
                };
                pieces.push(UlmPiece { piece: piece.to_string(), log_prob, protected });
            }
            Model::Unigram(UlmVocabulary::new(pieces, boost)?)
        }
    };

    Ok(Tokenizer { model, guidance, delimiter, config })
}
