//! Flat key/value config file; command-line flags take precedence.

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Deserialize;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub algorithm: Option<String>,
    pub guidance: Option<String>,
    pub corpus: Option<PathBuf>,
    pub tagged: Option<PathBuf>,
    pub lexicon: Option<PathBuf>,
    pub suffixes: Option<PathBuf>,
    pub pos_mapping: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub manifest: Option<PathBuf>,
    pub vocab_size: Option<usize>,
    pub shrinking_factor: Option<f64>,
    pub seed_weight: Option<f64>,
    pub min_pair_frequency: Option<u64>,
    pub seed_size: Option<usize>,
    pub max_piece_length: Option<usize>,
    pub em_iterations: Option<usize>,
    pub prune_utility: Option<String>,
    pub morph_delimiter: Option<char>,
    pub sample_fraction: Option<f64>,
    pub seed: Option<u64>,
    pub lowercase: Option<bool>,
}

impl FileConfig {
    /// Keys may be written with hyphens, as on the command line, or with
    /// underscores. Relative paths resolve against the file's directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        let mut cfg = Self::parse(&text).with_context(|| format!("parsing config {}", path.display()))?;
        let base = path.parent().unwrap_or(Path::new(""));
        for p in [
            &mut cfg.corpus,
            &mut cfg.tagged,
            &mut cfg.lexicon,
            &mut cfg.suffixes,
            &mut cfg.pos_mapping,
            &mut cfg.output,
            &mut cfg.manifest,
        ]
        .into_iter()
        .flatten()
        {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(cfg)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let table: toml::Table = text.parse()?;
        let normalized: toml::Table = table.into_iter().map(|(k, v)| (k.replace('-', "_"), v)).collect();
        Ok(toml::Value::Table(normalized).try_into()?)
    }
}
