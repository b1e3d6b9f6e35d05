mod common;

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use morphtok::artifact::{from_text, to_text};
use morphtok::corpus::{Corpus, CorpusOptions};
use morphtok::eval::{boundary_prf, exact_match, morphscore};
use morphtok::segmentation::{escape, split_escaped};
use morphtok::tokenizer::{Guidance, Model, Tokenizer};
use morphtok::training::{sample_sentences, WordTable};
use morphtok::unigram::{self, UlmPiece, UlmTrainerConfig, UlmVocabulary};
use morphtok::wordpiece::{self, WpTrainerConfig, WpVocabulary};
use morphtok::{MarkerStyle, Segmentation};

fn word(max: usize) -> impl Strategy<Value = String> {
    proptest::collection::vec(prop::sample::select(vec!['a', 'b', 'c', 'd']), 1..=max)
        .prop_map(|cs| cs.into_iter().collect())
}

/// A word with a random cut into pieces.
fn segmented(max: usize) -> impl Strategy<Value = Segmentation> {
    (word(max), any::<u32>()).prop_map(|(w, mask)| {
        let chars: Vec<char> = w.chars().collect();
        let mut pieces = vec![String::new()];
        for (i, c) in chars.iter().enumerate() {
            if i > 0 && mask & (1 << (i % 32)) != 0 {
                pieces.push(String::new());
            }
            pieces.last_mut().unwrap().push(*c);
        }
        Segmentation::new(pieces).unwrap()
    })
}

/// Unigram vocabulary whose weights are multiples of 1/4, so path sums are
/// exact and ties are genuinely tied.
fn ulm_vocab() -> impl Strategy<Value = (Vec<(String, i32, bool)>, u8)> {
    (
        proptest::collection::btree_map(word(4), (1i32..40, any::<bool>()), 1..50),
        0u8..3,
    )
        .prop_map(|(m, b)| (m.into_iter().map(|(p, (q, prot))| (p, q, prot)).collect(), b))
}

fn build_ulm(entries: &[(String, i32, bool)], boost_quarters: u8) -> UlmVocabulary {
    let pieces = entries
        .iter()
        .map(|(p, q, prot)| UlmPiece { piece: p.clone(), log_prob: -0.25 * f64::from(*q), protected: *prot })
        .collect();
    UlmVocabulary::new(pieces, 0.25 * f64::from(boost_quarters)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn ulm_encode_matches_enumeration((entries, boost) in ulm_vocab(), w in word(10)) {
        let vocab = build_ulm(&entries, boost);
        let weights: BTreeMap<String, f64> = vocab
            .pieces()
            .iter()
            .enumerate()
            .map(|(i, p)| (p.piece.clone(), vocab.decode_weight(i)))
            .collect();
        let got = vocab.encode(&w).map(Segmentation::into_pieces);
        prop_assert_eq!(got, common::ulm_oracle(&w, &weights));
    }

    #[test]
    fn wp_encode_matches_greedy(entries in proptest::collection::btree_set((word(4), any::<bool>()), 1..50), w in word(10)) {
        let strings: Vec<String> = entries
            .into_iter()
            .map(|(p, cont)| if cont { format!("##{p}") } else { p })
            .collect();
        let vocab = WpVocabulary::new(&strings);
        let set: BTreeSet<String> = vocab.entries().iter().cloned().collect();
        prop_assert_eq!(vocab.encode(&w).map(Segmentation::into_pieces), common::wp_oracle(&w, &set));
    }

    #[test]
    fn ulm_artifact_round_trip(
        entries in proptest::collection::btree_map(word(3), (-30.0f64..0.0, any::<bool>()), 1..40),
        boost in 0.0f64..2.0,
        words in proptest::collection::vec(word(8), 1..20),
    ) {
        let pieces = entries
            .into_iter()
            .map(|(piece, (log_prob, protected))| UlmPiece { piece, log_prob, protected })
            .collect();
        let tok = Tokenizer {
            model: Model::Unigram(UlmVocabulary::new(pieces, boost).unwrap()),
            guidance: Guidance::MorphSeed,
            delimiter: '@',
            config: vec![("seed".into(), "1".into())],
        };
        let text = to_text(&tok);
        let back = from_text(&text, "mem").unwrap();
        prop_assert_eq!(&back, &tok);
        prop_assert_eq!(to_text(&back), text);
        for w in &words {
            prop_assert_eq!(back.encode_word(w), tok.encode_word(w));
        }
    }

    #[test]
    fn wp_artifact_round_trip(entries in proptest::collection::btree_set(word(3), 1..40), words in proptest::collection::vec(word(8), 1..20)) {
        let strings: Vec<String> = entries.iter().flat_map(|e| [e.clone(), format!("##{e}")]).collect();
        let tok = Tokenizer {
            model: Model::WordPiece(WpVocabulary::new(&strings)),
            guidance: Guidance::Baseline,
            delimiter: '@',
            config: vec![],
        };
        let back = from_text(&to_text(&tok), "mem").unwrap();
        for w in &words {
            prop_assert_eq!(back.encode_word(w), tok.encode_word(w));
        }
    }

    #[test]
    fn boundary_prf_swaps_precision_and_recall(a in segmented(10), mask in any::<u32>()) {
        let w = a.word();
        let chars: Vec<char> = w.chars().collect();
        let mut pieces = vec![String::new()];
        for (i, c) in chars.iter().enumerate() {
            if i > 0 && mask & (1 << (i % 32)) != 0 {
                pieces.push(String::new());
            }
            pieces.last_mut().unwrap().push(*c);
        }
        let b = Segmentation::new(pieces).unwrap();
        let ab = boundary_prf(&a, &b).unwrap();
        let ba = boundary_prf(&b, &a).unwrap();
        prop_assert_eq!(ab.precision, ba.recall);
        prop_assert_eq!(ab.recall, ba.precision);
        prop_assert_eq!(ab.f1, ba.f1);
        for v in [ab.precision, ab.recall, ab.f1] {
            prop_assert!((0.0..=1.0).contains(&v));
        }
    }

    #[test]
    fn self_comparison_is_perfect(s in segmented(12)) {
        prop_assert!(exact_match(&s, &s).unwrap());
        let prf = boundary_prf(&s, &s).unwrap();
        prop_assert_eq!((prf.precision, prf.recall, prf.f1), (1.0, 1.0, 1.0));
        for b in s.boundaries() {
            prop_assert_eq!(morphscore(&s, b).unwrap(), Some(true));
        }
    }

    #[test]
    fn rendering_strips_back_to_the_word(s in segmented(12)) {
        for style in [MarkerStyle::Continuation, MarkerStyle::WordInitial, MarkerStyle::Bare] {
            let tokens = s.render(style);
            let stripped: String = tokens
                .iter()
                .map(|t| t.trim_start_matches("##").trim_start_matches('\u{2581}'))
                .collect();
            prop_assert_eq!(&stripped, &s.word());
        }
    }

    #[test]
    fn escaping_round_trips(parts in proptest::collection::vec("[a-c@\\\\]{1,4}", 1..5)) {
        let joined = parts.iter().map(|p| escape(p, '@')).collect::<Vec<_>>().join("@");
        prop_assert_eq!(split_escaped(&joined, '@'), parts.clone());
        let seg = Segmentation::new(parts.clone()).unwrap();
        prop_assert_eq!(Segmentation::parse_delimited(&seg.to_delimited('@'), '@').unwrap(), seg);
    }

    #[test]
    fn sampling_keeps_order_and_size(n in 0usize..200, fraction in 0.01f64..1.0, seed in any::<u64>()) {
        let items: Vec<usize> = (0..n).collect();
        let s = sample_sentences(&items, fraction, seed);
        prop_assert_eq!(s.len(), (n as f64 * fraction).round() as usize);
        prop_assert!(s.windows(2).all(|w| w[0] < w[1]));
        prop_assert_eq!(s, sample_sentences(&items, fraction, seed));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn trained_wordpiece_respects_size_and_covers_training_words(
        sentences in proptest::collection::vec(proptest::collection::vec(word(7), 1..6), 1..12),
        extra in 0usize..40,
    ) {
        let corpus = Corpus::from_sentences(sentences);
        let table = WordTable::from_corpus(&corpus);
        let alphabet: BTreeSet<char> = corpus.words().flat_map(str::chars).collect();
        let size = 1 + 2 * alphabet.len() + extra;
        let vocab = wordpiece::train(&table, &WpTrainerConfig { vocab_size: size, ..Default::default() }).unwrap();
        prop_assert!(vocab.len() <= size);
        for w in corpus.words() {
            prop_assert_eq!(vocab.encode(w).map(|s| s.word()), Some(w.to_string()));
        }
    }

    #[test]
    fn trained_ulm_respects_size_and_normalizes(
        sentences in proptest::collection::vec(proptest::collection::vec(word(7), 1..6), 1..12),
        size in 5usize..40,
    ) {
        let corpus = Corpus::from_sentences(sentences);
        let table = WordTable::from_corpus(&corpus);
        let cfg = UlmTrainerConfig { vocab_size: size, ..Default::default() };
        let vocab = unigram::train(&table, &cfg).unwrap();
        let chars: BTreeSet<char> = corpus.words().flat_map(str::chars).collect();
        prop_assert!(vocab.len() <= size.max(chars.len()));
        prop_assert!((vocab.total_probability() - 1.0).abs() < 1e-9);
        for w in corpus.words() {
            prop_assert_eq!(vocab.encode(w).map(|s| s.word()), Some(w.to_string()));
        }
    }

    #[test]
    fn lowercase_option_only_folds_case(words in proptest::collection::vec("[a-zA-Z]{1,6}", 1..10)) {
        let text = words.join(" ");
        let c = Corpus::parse(&text, CorpusOptions { lowercase: true });
        let expected: Vec<String> = words.iter().map(|w| w.to_lowercase()).collect();
        prop_assert_eq!(c.sentences()[0].clone(), expected);
    }
}
