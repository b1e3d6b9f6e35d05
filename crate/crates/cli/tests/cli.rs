use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use morphtok::artifact::{load_tokenizer, save_tokenizer};
use morphtok::corpus::load_gold;
use morphtok::eval::{evaluate, EvalMode, Overlap};
use morphtok::lexicon::load_lexicon;
use morphtok::pos::PosMapping;
use morphtok::tokenizer::{Guidance, Model, Pipeline, Tokenizer};
use morphtok::wordpiece::WpVocabulary;
use morphtok::CorpusOptions;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_morphtok"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn morphtok")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn morphtok");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "failed: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn mini() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/mini")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn cano_artifact(dir: &Path) -> PathBuf {
    let tok = Tokenizer {
        model: Model::WordPiece(WpVocabulary::new(["can", "##o", "et", "c", "a", "n", "o", "e", "t"])),
        guidance: Guidance::Baseline,
        delimiter: '@',
        config: vec![],
    };
    let path = dir.join("cano.tok");
    save_tokenizer(&tok, &path).unwrap();
    path
}

#[test]
fn encode_uses_continuation_markers() {
    let dir = tempfile::tempdir().unwrap();
    let art = cano_artifact(dir.path());
    let out = run_stdin(&["encode", "--artifact", p(&art)], "cano et\n");
    assert_eq!(stdout(&out), "can ##o\net\n");
    let out = run_stdin(&["encode", "--artifact", p(&art), "--per-sentence"], "cano et\ncano\n");
    assert_eq!(stdout(&out), "can ##o et\ncan ##o\n");
}

#[test]
fn encode_empty_input_gives_empty_output() {
    let dir = tempfile::tempdir().unwrap();
    let art = cano_artifact(dir.path());
    assert_eq!(stdout(&run_stdin(&["encode", "--artifact", p(&art)], "")), "");
}

#[test]
fn strip_markers_reproduces_input() {
    let dir = tempfile::tempdir().unwrap();
    let art = cano_artifact(dir.path());
    let text = "cano et cano\net\n";
    let out = run_stdin(&["encode", "--artifact", p(&art), "--per-sentence", "--strip-markers"], text);
    assert_eq!(stdout(&out), text);
}

#[test]
fn lexicon_with_baseline_artifact_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let art = cano_artifact(dir.path());
    let lex = mini().join("lexicon.tsv");
    let out = run_stdin(&["encode", "--artifact", p(&art), "--lexicon", p(&lex)], "cano\n");
    assert_eq!(out.status.code(), Some(2));
}

fn train(dir: &Path, name: &str, extra: &[&str]) -> (Output, PathBuf) {
    let out_path = dir.join(format!("{name}.tok"));
    let m = mini();
    let (corpus, tagged, lexicon, suffixes) =
        (m.join("corpus.txt"), m.join("tagged.tsv"), m.join("lexicon.tsv"), m.join("suffixes.txt"));
    let mut args = vec![
        "train",
        "--corpus",
        p(&corpus),
        "--tagged",
        p(&tagged),
        "--lexicon",
        p(&lexicon),
        "--suffixes",
        p(&suffixes),
        "--output",
        p(&out_path),
    ];
    args.extend_from_slice(extra);
    (run(&args), out_path)
}

#[test]
fn train_baseline_writes_artifact_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let (out, art) = train(dir.path(), "wp", &["--algorithm", "wordpiece", "--guidance", "baseline", "--vocab-size", "500"]);
    stdout(&out);
    let tok = load_tokenizer(&art).unwrap();
    assert!(tok.vocab_len() <= 500);
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("wp.tok.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["algorithm"], "wordpiece");
    assert_eq!(manifest["inputs"]["corpus"]["sha256"].as_str().unwrap().len(), 64);
    assert_eq!(manifest["config"]["vocab_size"], "500");
    assert!(manifest["inputs"].get("suffixes").is_none());
}

#[test]
fn contextual_without_tags_fails_before_work() {
    let dir = tempfile::tempdir().unwrap();
    let art = dir.path().join("x.tok");
    let lex = mini().join("lexicon.tsv");
    let corpus = mini().join("corpus.txt");
    let out = run(&[
        "train",
        "--algorithm",
        "ulm",
        "--guidance",
        "morphpretok-contextual",
        "--corpus",
        p(&corpus),
        "--lexicon",
        p(&lex),
        "--output",
        p(&art),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--tagged"));
    assert!(!art.exists());
}

#[test]
fn identical_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--algorithm", "ulm", "--guidance", "morphseed", "--vocab-size", "800", "--sample-fraction", "0.5", "--seed", "3"];
    let (a, pa) = train(dir.path(), "a", &args);
    let (b, pb) = train(dir.path(), "b", &args);
    stdout(&a);
    stdout(&b);
    assert_eq!(fs::read(pa).unwrap(), fs::read(pb).unwrap());
}

#[test]
fn config_file_values_are_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    fs::write(&cfg, "algorithm = 'wordpiece'\nguidance = 'baseline'\nvocab-size = 300\nseed = 9\n").unwrap();
    let (out, art) = train(dir.path(), "c", &["--config", p(&cfg), "--vocab-size", "400"]);
    stdout(&out);
    let tok = load_tokenizer(&art).unwrap();
    assert_eq!(tok.config_value("vocab_size"), Some("400"));
    assert_eq!(tok.config_value("seed"), Some("9"));
}

#[test]
fn missing_input_and_bad_artifact_are_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["encode", "--artifact", p(&dir.path().join("missing.tok"))]);
    assert_eq!(out.status.code(), Some(2));
    let bad = dir.path().join("bad.tok");
    fs::write(&bad, "# morphtok-tokenizer v7\n").unwrap();
    let out = run_stdin(&["encode", "--artifact", p(&bad)], "cano\n");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("v7"));
}

#[test]
fn perfect_artifact_scores_full_exact_match() {
    let dir = tempfile::tempdir().unwrap();
    let art = cano_artifact(dir.path());
    let gold = dir.path().join("gold.tsv");
    fs::write(&gold, "cano\tVERB\tcan@o\net\tCCONJ\tet\n").unwrap();
    let out = stdout(&run(&["evaluate", "--artifact", p(&art), "--gold", p(&gold), "--mode", "contextual"]));
    let row = out.lines().find(|l| l.starts_with("cano")).unwrap();
    assert!(row.contains("100.00"), "{out}");
}

#[test]
fn contextual_evaluation_needs_tags() {
    let dir = tempfile::tempdir().unwrap();
    let art = cano_artifact(dir.path());
    let gold = dir.path().join("gold.tsv");
    fs::write(&gold, "cano\t-\tcan@o\n").unwrap();
    let out = run(&["evaluate", "--artifact", p(&art), "--gold", p(&gold), "--mode", "contextual"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["evaluate", "--artifact", p(&art), "--gold", p(&gold), "--mode", "acontextual"]);
    stdout(&out);
}

#[test]
fn presegment_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("pre.txt");
    let stats = dir.path().join("stats.kv");
    let m = mini();
    let (tagged, lexicon) = (m.join("test_tagged.tsv"), m.join("lexicon.tsv"));
    stdout(&run(&[
        "presegment",
        "--mode",
        "contextual",
        "--tagged",
        p(&tagged),
        "--lexicon",
        p(&lexicon),
        "--output",
        p(&out_path),
        "--stats",
        p(&stats),
        "--format",
        "kv",
    ]));
    let lex = load_lexicon(&lexicon, CorpusOptions::default()).unwrap().lexicon;
    let t = morphtok::load_tagged_corpus(&tagged, CorpusOptions::default()).unwrap();
    let expected = morphtok::presegment_contextual(&t, &lex, &PosMapping::default());
    assert_eq!(fs::read_to_string(&out_path).unwrap(), expected.to_text('@'));
    assert_eq!(fs::read_to_string(&stats).unwrap(), expected.stats.to_kv_text());
}

/// Trains all eight configurations through the CLI on a small generated
/// corpus and checks the comparison report against library evaluation.
#[test]
fn eight_tokenizer_comparison_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("data");
    stdout(&run(&["synth", "--output", p(&data), "--seed", "5", "--train-words", "6000", "--test-words", "1500"]));
    let (corpus, tagged, lexicon, suffixes, gold) = (
        data.join("corpus.txt"),
        data.join("tagged.tsv"),
        data.join("lexicon.tsv"),
        data.join("suffixes.txt"),
        data.join("gold_contextual.tsv"),
    );
    let mut artifacts = Vec::new();
    for alg in ["wordpiece", "ulm"] {
        for g in ["baseline", "morphseed", "morphpretok-acontextual", "morphpretok-contextual"] {
            let art = dir.path().join(format!("{alg}-{g}.tok"));
            stdout(&run(&[
                "train", "--algorithm", alg, "--guidance", g, "--vocab-size", "600",
                "--corpus", p(&corpus), "--tagged", p(&tagged), "--lexicon", p(&lexicon),
                "--suffixes", p(&suffixes), "--output", p(&art),
            ]));
            artifacts.push(art);
        }
    }
    let mut args = vec!["compare", "--gold", p(&gold), "--mode", "contextual", "--lexicon", p(&lexicon), "--format", "kv"];
    for a in &artifacts {
        args.push("--artifact");
        args.push(p(a));
    }
    let kv = stdout(&run(&args));

    let lex = load_lexicon(&lexicon, CorpusOptions::default()).unwrap().lexicon;
    let gold_set = load_gold(&gold, '@').unwrap();
    let mapping = PosMapping::default();
    for a in &artifacts {
        let tok = load_tokenizer(a).unwrap();
        let pipeline = Pipeline::new(&tok, Some(&lex), &mapping);
        let r = evaluate(&pipeline, &gold_set, EvalMode::Contextual, Overlap::Boundary).unwrap();
        let name = a.file_stem().unwrap().to_str().unwrap();
        for (k, v) in r.to_kv() {
            assert!(kv.contains(&format!("{name}.{k}={v}\n")), "{name}.{k}={v} missing from\n{kv}");
        }
    }

    args.retain(|a| *a != "kv" && *a != "--format");
    args.push("--extended");
    let table = stdout(&run(&args));
    let rows: Vec<&str> = table.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 9);
    assert!(rows[0].contains("Recall") && rows[0].contains("Fertility"));
}
