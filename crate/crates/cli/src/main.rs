mod config;
mod manifest;

use std::fmt;
use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use morphtok::artifact::{load_tokenizer, save_tokenizer};
use morphtok::corpus::{load_corpus, load_gold, load_suffixes, load_tagged_corpus, Corpus, CorpusOptions, TaggedCorpus};
use morphtok::eval::{evaluate, EvalMode, Overlap};
use morphtok::lexicon::{load_lexicon_with, MorphLexicon};
use morphtok::pos::{PosMapping, UdPos};
use morphtok::presegment::{presegment_acontextual, presegment_contextual, PresegMode};
use morphtok::report::{Comparison, TableShape};
use morphtok::synthetic::{generate, MiniCorpusConfig};
use morphtok::tokenizer::{train_tokenizer, Algorithm, Guidance, Pipeline, TrainInputs, TrainOptions, WordSegmenter};
use morphtok::unigram::PruneUtility;

use config::FileConfig;

const EXIT_INPUT: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

/// Problem with the user's inputs or flags (exit code 2).
#[derive(Debug)]
struct InputError(String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

fn input_error(msg: impl Into<String>) -> anyhow::Error {
    InputError(msg.into()).into()
}

#[derive(Parser)]
#[command(name = "morphtok", version, about = "Morphologically guided WordPiece and Unigram-LM tokenizers")]
struct Cli {
    /// Log verbosity (repeat for more).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Split corpus words into morphemes using a lexicon.
    Presegment(PresegmentArgs),
    /// Train a tokenizer and write the artifact plus a run manifest.
    Train(Box<TrainArgs>),
    /// Tokenize text with a trained artifact.
    Encode(EncodeArgs),
    /// Score one or more artifacts against a gold segmentation set.
    #[command(visible_alias = "compare")]
    Evaluate(EvaluateArgs),
    /// Write the synthetic mini-corpus, lexicon, suffix list and gold sets.
    Synth(SynthArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Kv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Acontextual,
    Contextual,
}

#[derive(Clone, Copy, ValueEnum)]
enum OverlapArg {
    Boundary,
    PieceMultiset,
}

#[derive(Args)]
struct PresegmentArgs {
    #[arg(long, value_enum)]
    mode: ModeArg,
    #[arg(long)]
    lexicon: PathBuf,
    /// Raw corpus (acontextual mode).
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// POS-tagged corpus (required in contextual mode).
    #[arg(long)]
    tagged: Option<PathBuf>,
    #[arg(long)]
    pos_mapping: Option<PathBuf>,
    #[arg(long, default_value_t = '@')]
    morph_delimiter: char,
    #[arg(long)]
    lowercase: bool,
    /// Presegmented corpus; stdout if omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Where to write statistics; stderr if omitted.
    #[arg(long)]
    stats: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

#[derive(Args)]
struct TrainArgs {
    /// TOML file of flag defaults (`vocab-size = 30000`, ...).
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    algorithm: Option<String>,
    #[arg(long)]
    guidance: Option<String>,
    #[arg(long)]
    corpus: Option<PathBuf>,
    #[arg(long)]
    tagged: Option<PathBuf>,
    #[arg(long)]
    lexicon: Option<PathBuf>,
    #[arg(long)]
    suffixes: Option<PathBuf>,
    #[arg(long)]
    pos_mapping: Option<PathBuf>,
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Defaults to `<output>.manifest.json`.
    #[arg(long)]
    manifest: Option<PathBuf>,
    #[arg(long)]
    vocab_size: Option<usize>,
    #[arg(long)]
    shrinking_factor: Option<f64>,
    #[arg(long)]
    seed_weight: Option<f64>,
    #[arg(long)]
    min_pair_frequency: Option<u64>,
    #[arg(long)]
    seed_size: Option<usize>,
    #[arg(long)]
    max_piece_length: Option<usize>,
    #[arg(long)]
    em_iterations: Option<usize>,
    /// `approximate` or `exact`.
    #[arg(long)]
    prune_utility: Option<String>,
    #[arg(long)]
    morph_delimiter: Option<char>,
    #[arg(long)]
    sample_fraction: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    lowercase: bool,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

#[derive(Args)]
struct EncodeArgs {
    #[arg(long)]
    artifact: PathBuf,
    /// Text to encode, one sentence per line; stdin if omitted.
    #[arg(short, long)]
    input: Option<PathBuf>,
    /// Input is `word<TAB>UD_POS` lines with blank lines between sentences.
    #[arg(long)]
    tagged_input: bool,
    /// Lexicon for presegmenting input to morph-pretokenized artifacts.
    #[arg(long)]
    lexicon: Option<PathBuf>,
    #[arg(long)]
    pos_mapping: Option<PathBuf>,
    /// Encode raw words even when a lexicon is given.
    #[arg(long)]
    no_presegment: bool,
    /// One output line per sentence instead of per word.
    #[arg(long)]
    per_sentence: bool,
    /// Print words re-assembled from their pieces instead of the pieces.
    #[arg(long)]
    strip_markers: bool,
    #[arg(long)]
    lowercase: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct EvaluateArgs {
    /// One or more artifacts; each becomes a table row.
    #[arg(long = "artifact", required = true, num_args = 1..)]
    artifacts: Vec<PathBuf>,
    #[arg(long)]
    gold: PathBuf,
    #[arg(long, value_enum)]
    mode: ModeArg,
    /// Lexicon for presegmenting gold words for morph-pretokenized artifacts.
    #[arg(long)]
    lexicon: Option<PathBuf>,
    #[arg(long)]
    pos_mapping: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "boundary")]
    overlap: OverlapArg,
    /// EM, recall, precision, F1 and fertility columns.
    #[arg(long)]
    extended: bool,
    #[arg(long, default_value_t = '@')]
    morph_delimiter: char,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SynthArgs {
    #[arg(short, long)]
    output: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    train_words: Option<usize>,
    #[arg(long)]
    test_words: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if cause.is::<InputError>() {
            return EXIT_INPUT;
        }
        if let Some(err) = cause.downcast_ref::<morphtok::Error>() {
            return if err.is_input_error() { EXIT_INPUT } else { EXIT_INTERNAL };
        }
    }
    EXIT_INTERNAL
}

fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Presegment(a) => cmd_presegment(a),
        Command::Train(a) => cmd_train(*a),
        Command::Encode(a) => cmd_encode(a),
        Command::Evaluate(a) => cmd_evaluate(a),
        Command::Synth(a) => cmd_synth(a),
    }
}

fn require_file(path: &Path, what: &str) -> Result<()> {
    if path.is_file() {
        Ok(())
    } else {
        Err(input_error(format!("{what} not found: {}", path.display())))
    }
}

fn load_mapping(path: Option<&Path>) -> Result<PosMapping> {
    match path {
        Some(p) => Ok(PosMapping::load(p)?),
        None => Ok(PosMapping::default()),
    }
}

fn load_lexicon(path: &Path, delimiter: char, opts: CorpusOptions) -> Result<MorphLexicon> {
    let load = load_lexicon_with(path, delimiter, opts)?;
    if !load.rejected.is_empty() {
        log::warn!("{}: {} lexicon rows rejected", path.display(), load.rejected.len());
    }
    Ok(load.lexicon)
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn cmd_presegment(a: PresegmentArgs) -> Result<()> {
    require_file(&a.lexicon, "lexicon")?;
    let opts = CorpusOptions { lowercase: a.lowercase };
    let mapping = load_mapping(a.pos_mapping.as_deref())?;
    let presegmented = match a.mode {
        ModeArg::Contextual => {
            let tagged = a
                .tagged
                .as_deref()
                .ok_or_else(|| input_error("contextual presegmentation requires --tagged"))?;
            require_file(tagged, "tagged corpus")?;
            let lexicon = load_lexicon(&a.lexicon, a.morph_delimiter, opts)?;
            presegment_contextual(&load_tagged_corpus(tagged, opts)?, &lexicon, &mapping)
        }
        ModeArg::Acontextual => {
            let corpus = match (&a.corpus, &a.tagged) {
                (Some(c), _) => {
                    require_file(c, "corpus")?;
                    load_corpus(c, opts)?
                }
                (None, Some(t)) => {
                    require_file(t, "tagged corpus")?;
                    load_tagged_corpus(t, opts)?.to_corpus()
                }
                (None, None) => return Err(input_error("presegment requires --corpus or --tagged")),
            };
            let lexicon = load_lexicon(&a.lexicon, a.morph_delimiter, opts)?;
            presegment_acontextual(&corpus, &lexicon)
        }
    };
    write_output(a.output.as_deref(), &presegmented.to_text(a.morph_delimiter))?;
    let stats = match a.format {
        Format::Table => presegmented.stats.to_table(),
        Format::Kv => presegmented.stats.to_kv_text(),
    };
    match &a.stats {
        Some(p) => fs::write(p, stats).with_context(|| format!("writing {}", p.display()))?,
        None => eprint!("{stats}"),
    }
    Ok(())
}

/// Fully resolved training settings: flags over config file over defaults.
struct TrainPlan {
    opts: TrainOptions,
    corpus: Option<PathBuf>,
    tagged: Option<PathBuf>,
    lexicon: Option<PathBuf>,
    suffixes: Option<PathBuf>,
    pos_mapping: Option<PathBuf>,
    output: PathBuf,
    manifest: PathBuf,
    lowercase: bool,
}

fn parse_arg<T>(value: &str) -> Result<T>
where
    T: std::str::FromStr<Err = morphtok::Error>,
{
    value.parse::<T>().map_err(|e| input_error(e.to_string()))
}

fn plan_train(a: &TrainArgs) -> Result<TrainPlan> {
    let file = match &a.config {
        Some(p) => {
            require_file(p, "config file")?;
            FileConfig::load(p).map_err(|e| input_error(format!("{e:#}")))?
        }
        None => FileConfig::default(),
    };
    let d = TrainOptions::default();
    let algorithm = a
        .algorithm
        .clone()
        .or(file.algorithm)
        .ok_or_else(|| input_error("--algorithm is required"))?;
    let guidance = a
        .guidance
        .clone()
        .or(file.guidance)
        .ok_or_else(|| input_error("--guidance is required"))?;
    let prune_utility = match a.prune_utility.clone().or(file.prune_utility).as_deref() {
        None | Some("approximate") => PruneUtility::Approximate,
        Some("exact") => PruneUtility::Exact,
        Some(other) => return Err(input_error(format!("unknown prune utility `{other}`"))),
    };
    let opts = TrainOptions {
        algorithm: parse_arg::<Algorithm>(&algorithm)?,
        guidance: parse_arg::<Guidance>(&guidance)?,
        vocab_size: a.vocab_size.or(file.vocab_size).unwrap_or(d.vocab_size),
        min_pair_frequency: a.min_pair_frequency.or(file.min_pair_frequency).unwrap_or(d.min_pair_frequency),
        shrinking_factor: a.shrinking_factor.or(file.shrinking_factor).unwrap_or(d.shrinking_factor),
        seed_weight: a.seed_weight.or(file.seed_weight).unwrap_or(d.seed_weight),
        seed_size: a.seed_size.or(file.seed_size).unwrap_or(d.seed_size),
        max_piece_length: a.max_piece_length.or(file.max_piece_length).unwrap_or(d.max_piece_length),
        em_iterations_per_round: a.em_iterations.or(file.em_iterations).unwrap_or(d.em_iterations_per_round),
        prune_utility,
        sample_fraction: a.sample_fraction.or(file.sample_fraction).unwrap_or(d.sample_fraction),
        seed: a.seed.or(file.seed).unwrap_or(d.seed),
        delimiter: a.morph_delimiter.or(file.morph_delimiter).unwrap_or(d.delimiter),
    };
    let output = a
        .output
        .clone()
        .or(file.output)
        .ok_or_else(|| input_error("--output is required"))?;
    let manifest = a.manifest.clone().or(file.manifest).unwrap_or_else(|| {
        let mut name = output.clone().into_os_string();
        name.push(".manifest.json");
        PathBuf::from(name)
    });
    Ok(TrainPlan {
        opts,
        corpus: a.corpus.clone().or(file.corpus),
        tagged: a.tagged.clone().or(file.tagged),
        lexicon: a.lexicon.clone().or(file.lexicon),
        suffixes: a.suffixes.clone().or(file.suffixes),
        pos_mapping: a.pos_mapping.clone().or(file.pos_mapping),
        output,
        manifest,
        lowercase: a.lowercase || file.lowercase.unwrap_or(false),
    })
}

/// Rejects missing or contradictory inputs before anything is loaded.
fn validate_plan(plan: &TrainPlan) -> Result<()> {
    let g = plan.opts.guidance;
    let need = |present: bool, what: &str| {
        if present {
            Ok(())
        } else {
            Err(input_error(format!("guidance {g} requires {what}")))
        }
    };
    match g {
        Guidance::MorphPreTokContextual => {
            need(plan.tagged.is_some(), "--tagged")?;
            need(plan.lexicon.is_some(), "--lexicon")?;
        }
        Guidance::MorphPreTokAcontextual => {
            need(plan.lexicon.is_some(), "--lexicon")?;
            need(plan.corpus.is_some() || plan.tagged.is_some(), "--corpus or --tagged")?;
        }
        Guidance::MorphSeed => {
            need(plan.suffixes.is_some(), "--suffixes")?;
            need(plan.corpus.is_some() || plan.tagged.is_some(), "--corpus or --tagged")?;
        }
        Guidance::Baseline => need(plan.corpus.is_some() || plan.tagged.is_some(), "--corpus or --tagged")?,
    }
    for (path, what) in [
        (&plan.corpus, "corpus"),
        (&plan.tagged, "tagged corpus"),
        (&plan.lexicon, "lexicon"),
        (&plan.suffixes, "suffix list"),
        (&plan.pos_mapping, "POS mapping"),
    ] {
        if let Some(p) = path {
            require_file(p, what)?;
        }
    }
    let o = &plan.opts;
    if o.vocab_size == 0 {
        return Err(input_error("--vocab-size must be positive"));
    }
    if !(o.sample_fraction > 0.0 && o.sample_fraction <= 1.0) {
        return Err(input_error("--sample-fraction must lie in (0, 1]"));
    }
    if !(o.shrinking_factor > 0.0 && o.shrinking_factor < 1.0) {
        return Err(input_error("--shrinking-factor must lie in (0, 1)"));
    }
    if !o.seed_weight.is_finite() || o.seed_weight < 0.0 {
        return Err(input_error("--seed-weight must be a finite non-negative number"));
    }
    Ok(())
}

fn cmd_train(a: TrainArgs) -> Result<()> {
    let plan = plan_train(&a)?;
    validate_plan(&plan)?;
    let g = plan.opts.guidance;
    let opts = CorpusOptions { lowercase: plan.lowercase };

    // Only what the guidance mode uses is loaded; the rest is reported.
    let tagged: Option<TaggedCorpus> = match (&plan.tagged, g, &plan.corpus) {
        (Some(p), Guidance::MorphPreTokContextual, _) | (Some(p), _, None) => Some(load_tagged_corpus(p, opts)?),
        (Some(_), _, Some(_)) => {
            log::warn!("--tagged ignored: guidance {g} trains on --corpus");
            None
        }
        (None, ..) => None,
    };
    let corpus: Option<Corpus> = match &plan.corpus {
        Some(p) if g != Guidance::MorphPreTokContextual => Some(load_corpus(p, opts)?),
        Some(_) => {
            log::warn!("--corpus ignored: guidance {g} trains on --tagged");
            None
        }
        None => None,
    };
    let lexicon = match &plan.lexicon {
        Some(p) if g.preseg_mode().is_some() => Some(load_lexicon(p, plan.opts.delimiter, opts)?),
        _ => None,
    };
    let suffixes = match &plan.suffixes {
        Some(p) if g == Guidance::MorphSeed => Some(load_suffixes(p)?),
        _ => None,
    };
    if plan.lexicon.is_some() && lexicon.is_none() {
        log::warn!("--lexicon ignored for guidance {g}");
    }
    if plan.suffixes.is_some() && suffixes.is_none() {
        log::warn!("--suffixes ignored for guidance {g}");
    }
    let mapping = load_mapping(plan.pos_mapping.as_deref())?;

    let inputs = TrainInputs {
        corpus: corpus.as_ref(),
        tagged: tagged.as_ref(),
        lexicon: lexicon.as_ref(),
        mapping: &mapping,
        suffixes: suffixes.as_ref(),
    };
    let out = train_tokenizer(&inputs, &plan.opts)?;
    save_tokenizer(&out.tokenizer, &plan.output)?;

    let inputs_used: Vec<(&str, &Path)> = [
        ("corpus", corpus.as_ref().and(plan.corpus.as_deref())),
        ("tagged", tagged.as_ref().and(plan.tagged.as_deref())),
        ("lexicon", lexicon.as_ref().and(plan.lexicon.as_deref())),
        ("suffixes", suffixes.as_ref().and(plan.suffixes.as_deref())),
        ("pos_mapping", plan.pos_mapping.as_deref()),
    ]
    .into_iter()
    .filter_map(|(k, p)| p.map(|p| (k, p)))
    .collect();
    let m = manifest::Manifest::build(&out, &plan.output, &inputs_used)?;
    fs::write(&plan.manifest, m.to_json()?).with_context(|| format!("writing {}", plan.manifest.display()))?;

    if let Some(stats) = &out.preseg_stats {
        match a.format {
            Format::Table => eprint!("{}", stats.to_table()),
            Format::Kv => eprint!("{}", stats.to_kv_text()),
        }
    }
    log::info!(
        "wrote {} ({} entries) and {}",
        plan.output.display(),
        out.tokenizer.vocab_len(),
        plan.manifest.display()
    );
    Ok(())
}

fn read_input(path: Option<&Path>) -> Result<String> {
    match path {
        Some(p) => {
            require_file(p, "input")?;
            let bytes = fs::read(p).with_context(|| format!("reading {}", p.display()))?;
            String::from_utf8(bytes).map_err(|_| input_error(format!("{}: input is not valid UTF-8", p.display())))
        }
        None => {
            let mut buf = Vec::new();
            io::stdin().read_to_end(&mut buf)?;
            String::from_utf8(buf).map_err(|_| input_error("stdin is not valid UTF-8"))
        }
    }
}

fn cmd_encode(a: EncodeArgs) -> Result<()> {
    require_file(&a.artifact, "artifact")?;
    let tokenizer = load_tokenizer(&a.artifact)?;
    let preseg = tokenizer.guidance.preseg_mode();
    if a.lexicon.is_some() && preseg.is_none() {
        return Err(input_error(format!(
            "--lexicon given but artifact guidance {} does not presegment",
            tokenizer.guidance
        )));
    }
    let opts = CorpusOptions { lowercase: a.lowercase };
    let lexicon = match (&a.lexicon, a.no_presegment) {
        (Some(p), false) => {
            require_file(p, "lexicon")?;
            Some(load_lexicon(p, tokenizer.delimiter, opts)?)
        }
        _ => None,
    };
    if preseg.is_some() && lexicon.is_none() {
        log::warn!(
            "artifact was trained on presegmented text ({}) but input is encoded without presegmentation; \
             pieces may cross morpheme boundaries",
            tokenizer.guidance
        );
    }
    if preseg == Some(PresegMode::Contextual) && lexicon.is_some() && !a.tagged_input {
        log::warn!("contextual artifact without --tagged-input: ambiguous words use their first analysis");
    }
    let mapping = load_mapping(a.pos_mapping.as_deref())?;
    let pipeline = Pipeline::new(&tokenizer, lexicon.as_ref(), &mapping);

    let text = read_input(a.input.as_deref())?;
    let source = a.input.as_ref().map_or("<stdin>".to_string(), |p| p.display().to_string());
    let sentences: Vec<Vec<(String, Option<UdPos>)>> = if a.tagged_input {
        TaggedCorpus::parse(&text, &source, opts)?
            .sentences()
            .iter()
            .map(|s| s.iter().map(|(w, t)| (w.clone(), Some(*t))).collect())
            .collect()
    } else {
        Corpus::parse(&text, opts)
            .sentences()
            .iter()
            .map(|s| s.iter().map(|w| (w.clone(), None)).collect())
            .collect()
    };

    let mut out: Box<dyn Write> = match &a.output {
        Some(p) => Box::new(BufWriter::new(
            fs::File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    for sentence in &sentences {
        let mut line: Vec<String> = Vec::new();
        for (word, tag) in sentence {
            let seg = pipeline.segment(word, *tag);
            let tokens = match (&seg, a.strip_markers) {
                (Some(s), true) => vec![s.word()],
                _ => tokenizer.render(seg.as_ref()),
            };
            if a.per_sentence {
                line.extend(tokens);
            } else {
                writeln!(out, "{}", tokens.join(" "))?;
            }
        }
        if a.per_sentence {
            writeln!(out, "{}", line.join(" "))?;
        }
    }
    out.flush()?;
    Ok(())
}

fn cmd_evaluate(a: EvaluateArgs) -> Result<()> {
    require_file(&a.gold, "gold set")?;
    for p in &a.artifacts {
        require_file(p, "artifact")?;
    }
    let gold = load_gold(&a.gold, a.morph_delimiter)?;
    let mode = match a.mode {
        ModeArg::Acontextual => EvalMode::Acontextual,
        ModeArg::Contextual => EvalMode::Contextual,
    };
    if mode == EvalMode::Contextual {
        if let Some(item) = gold.items().iter().find(|i| i.pos.is_none()) {
            return Err(input_error(format!(
                "contextual evaluation needs a POS tag on every gold item; `{}` has none",
                item.word
            )));
        }
    }
    let overlap = match a.overlap {
        OverlapArg::Boundary => Overlap::Boundary,
        OverlapArg::PieceMultiset => Overlap::PieceMultiset,
    };
    let lexicon = match &a.lexicon {
        Some(p) => {
            require_file(p, "lexicon")?;
            Some(load_lexicon(p, a.morph_delimiter, CorpusOptions::default())?)
        }
        None => None,
    };
    let mapping = load_mapping(a.pos_mapping.as_deref())?;

    let mut comparison = Comparison::new(a.gold.display().to_string());
    for path in &a.artifacts {
        let tokenizer = load_tokenizer(path)?;
        if tokenizer.guidance.preseg_mode().is_some() && lexicon.is_none() {
            log::warn!(
                "{}: presegmenting artifact evaluated without --lexicon; gold words are encoded unsegmented",
                path.display()
            );
        }
        let pipeline = Pipeline::new(&tokenizer, lexicon.as_ref(), &mapping);
        let report = evaluate(&pipeline, &gold, mode, overlap)?;
        comparison.push(row_name(path), report);
    }
    let text = match a.format {
        Format::Table => comparison.to_table(if a.extended { TableShape::Extended } else { TableShape::Compact }),
        Format::Kv => comparison.to_kv(),
    };
    write_output(a.output.as_deref(), &text)
}

fn row_name(path: &Path) -> String {
    let name = path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned());
    name.strip_suffix(".tok").map(str::to_string).unwrap_or(name)
}

fn cmd_synth(a: SynthArgs) -> Result<()> {
    let d = MiniCorpusConfig::default();
    let cfg = MiniCorpusConfig {
        seed: a.seed.unwrap_or(d.seed),
        train_words: a.train_words.unwrap_or(d.train_words),
        test_words: a.test_words.unwrap_or(d.test_words),
    };
    if cfg.train_words == 0 || cfg.test_words == 0 {
        bail!(InputError("word counts must be positive".into()));
    }
    let mini = generate(&cfg);
    mini.write_to_dir(&a.output)?;
    log::info!("wrote mini-corpus to {}", a.output.display());
    Ok(())
}
