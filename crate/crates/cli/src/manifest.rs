//! Run manifest written next to every trained artifact.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};

use morphtok::artifact::config_digest;
use morphtok::tokenizer::TrainOutput;

#[derive(Debug, Serialize)]
pub struct InputFile {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Serialize)]
pub struct Manifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub algorithm: String,
    pub guidance: String,
    pub morph_delimiter: String,
    pub config: BTreeMap<String, String>,
    pub config_digest: String,
    pub inputs: BTreeMap<String, InputFile>,
    pub artifact: InputFile,
    pub stats: BTreeMap<String, String>,
}

pub fn sha256_file(path: &Path) -> Result<String> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

impl Manifest {
    pub fn build(out: &TrainOutput, artifact: &Path, inputs: &[(&str, &Path)]) -> Result<Self> {
        let tok = &out.tokenizer;
        let mut stats = BTreeMap::new();
        stats.insert("vocab_entries".to_string(), tok.vocab_len().to_string());
        stats.insert("training_word_types".to_string(), out.training_words.entries().len().to_string());
        stats.insert("training_tokens".to_string(), out.training_words.total_tokens().to_string());
        if let Some(p) = &out.preseg_stats {
            for (k, v) in p.to_kv() {
                stats.insert(format!("presegment.{k}"), v);
            }
        }
        let inputs = inputs
            .iter()
            .map(|(k, p)| {
                Ok((
                    k.to_string(),
                    InputFile { path: p.display().to_string(), sha256: sha256_file(p)? },
                ))
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            tool: "morphtok",
            version: env!("CARGO_PKG_VERSION"),
            algorithm: tok.algorithm().to_string(),
            guidance: tok.guidance.to_string(),
            morph_delimiter: tok.delimiter.to_string(),
            config: tok.config.iter().cloned().collect(),
            config_digest: config_digest(&tok.config),
            inputs,
            artifact: InputFile { path: artifact.display().to_string(), sha256: sha256_file(artifact)? },
            stats,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}
