//! Property tests: oracle agreement and structural invariants.

use proptest::prelude::*;

use figbench::corpus::{
    IdiomLexicon, SplitRatios, detect_explicit_simile, match_expressions, split_assignment,
    to_implicit,
};
use figbench::decoding::{nucleus_filter, softmax, top_k_filter};
use figbench::eval::{lcs_length, rouge_tokenize};
use figbench::scoring::choose_index;
use figbench::tagger::{RuleTagger, TaggedSentence};
use figbench::text::{detokenize, segment_sentences, token_strings};

// ---------------------------------------------------------------------------
// idiom matching vs a brute-force scan
// ---------------------------------------------------------------------------

/// O(|lexicon| * |sentence| * len) reference scan.
fn brute_force_matches(tokens: &[String], lexicon: &IdiomLexicon) -> Vec<(usize, usize, usize)> {
    let lowered: Vec<String> = tokens.iter().map(|t| t.to_lowercase()).collect();
    let mut out = Vec::new();
    for start in 0..lowered.len() {
        for (entry_index, entry) in lexicon.entries().iter().enumerate() {
            let end = start + entry.expression.len();
            if end <= lowered.len() && lowered[start..end] == entry.expression[..] {
                out.push((start, end, entry_index));
            }
        }
    }
    out.sort();
    out
}

fn word() -> impl Strategy<Value = String> {
    prop::sample::select(vec![
        "run", "the", "feed", "chicken", "walk", "plank", "cold", "turkey", "storm", "port",
        "any", "in", "a",
    ])
    .prop_map(String::from)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn matching_agrees_with_brute_force(tokens in prop::collection::vec(word(), 0..24)) {
        let lexicon = IdiomLexicon::from_tsv_str(
            "chicken feed\td1\nwalk the plank\td2\ncold turkey\td3\nany port in a storm\td4\nthe chicken\td5\n",
        ).unwrap();
        let sentence = TaggedSentence::from_tokens(tokens.clone(), &RuleTagger);
        let got: Vec<(usize, usize, usize)> = match_expressions(&sentence, &lexicon)
            .into_iter()
            .map(|m| (m.span.start, m.span.end, m.entry_index))
            .collect();
        let mut sorted = got.clone();
        sorted.sort();
        prop_assert_eq!(&sorted, &brute_force_matches(&tokens, &lexicon));
        // sorted by start position
        let starts: Vec<usize> = got.iter().map(|(s, ..)| *s).collect();
        prop_assert!(starts.windows(2).all(|w| w[0] <= w[1]));
    }
}

// ---------------------------------------------------------------------------
// simile round trip
// ---------------------------------------------------------------------------

fn simile_sentence() -> impl Strategy<Value = String> {
    let topic = prop::sample::select(vec!["He", "She", "The boy", "Maria"]);
    let verb = prop::sample::select(vec!["felt", "was", "seemed"]);
    let prop_word = prop::sample::select(vec!["calm", "cold", "fierce", "pale", "sodden"]);
    let det = prop::sample::select(vec!["a", "the"]);
    let noun = prop::sample::select(vec!["lake", "statue", "swan", "furnace", "whirlpool"]);
    let tail = prop::sample::select(vec!["", " without a wind", " of melting snow"]);
    (topic, verb, prop_word, det, noun, tail, prop::bool::ANY, prop::bool::ANY).prop_map(
        |(topic, verb, prop_word, det, noun, tail, as_form, comma)| {
            if as_form {
                format!("{topic} {verb} as {prop_word} as {det} {noun}{tail}.")
            } else if comma {
                format!("{topic} {verb} {prop_word}, like {det} {noun}{tail}.")
            } else {
                format!("{topic} {verb} {prop_word} like {det} {noun}{tail}.")
            }
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn simile_round_trip(sentence in simile_sentence()) {
        let tagged = TaggedSentence::from_tokens(token_strings(&sentence), &RuleTagger);
        let simile = detect_explicit_simile(&tagged);
        prop_assert!(simile.is_some(), "no simile in {sentence}");
        let simile = simile.unwrap();
        let property = tagged.tokens[simile.property.start].clone();
        let vehicle = detokenize(&tagged.tokens[simile.vehicle.start..simile.vehicle.end]);
        let implicit = to_implicit(&simile, &tagged).unwrap();
        prop_assert!(implicit.contains("like"), "{implicit}");
        prop_assert!(!implicit.contains(&property), "{implicit} still has {property}");
        prop_assert!(implicit.contains(&vehicle), "{implicit} lost {vehicle}");
    }
}

// ---------------------------------------------------------------------------
// sampling filters
// ---------------------------------------------------------------------------

fn logits() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-8.0f64..8.0, 2..16)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn top_k_support_and_normalization(logits in logits(), k_frac in 0.0f64..1.0) {
        let k = 1 + ((logits.len() - 1) as f64 * k_frac) as usize;
        let probs = top_k_filter(&logits, k).unwrap();
        prop_assert_eq!(probs.iter().filter(|&&p| p > 0.0).count(), k);
        prop_assert!((probs.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        // every kept logit is >= every dropped logit
        let kept_min = probs
            .iter()
            .zip(&logits)
            .filter(|(p, _)| **p > 0.0)
            .map(|(_, z)| *z)
            .fold(f64::INFINITY, f64::min);
        let dropped_max = probs
            .iter()
            .zip(&logits)
            .filter(|(p, _)| **p == 0.0)
            .map(|(_, z)| *z)
            .fold(f64::NEG_INFINITY, f64::max);
        prop_assert!(kept_min >= dropped_max);
    }

    #[test]
    fn nucleus_minimal_prefix(logits in logits(), p in 0.05f64..1.0) {
        let probs = nucleus_filter(&logits, p).unwrap();
        prop_assert!((probs.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        let full = softmax(&logits);
        let kept_mass: f64 = full
            .iter()
            .zip(&probs)
            .filter(|(_, q)| **q > 0.0)
            .map(|(f, _)| *f)
            .sum();
        // retained set reaches p...
        prop_assert!(kept_mass >= p - 1e-6, "mass {kept_mass} < {p}");
        // ...and is minimal: dropping its smallest member dips below p
        let smallest_kept = full
            .iter()
            .zip(&probs)
            .filter(|(_, q)| **q > 0.0)
            .map(|(f, _)| *f)
            .fold(f64::INFINITY, f64::min);
        let support = probs.iter().filter(|&&q| q > 0.0).count();
        if support > 1 {
            prop_assert!(kept_mass - smallest_kept < p + 1e-6);
        }
    }

    #[test]
    fn argmax_invariant_under_constant_shift(s0 in -5.0f64..5.0, s1 in -5.0f64..5.0, c in -100.0f64..100.0) {
        prop_assert_eq!(choose_index(s0, s1), choose_index(s0 + c, s1 + c));
    }
}

// ---------------------------------------------------------------------------
// Rouge-L LCS vs exhaustive subsequence enumeration
// ---------------------------------------------------------------------------

fn is_subsequence(needle: &[String], haystack: &[String]) -> bool {
    let mut it = haystack.iter();
    needle.iter().all(|t| it.any(|h| h == t))
}

/// Exhaustive oracle: longest subset of `a` (by bitmask) that is also a
/// subsequence of `b`. Exponential, so lengths stay small.
fn brute_force_lcs(a: &[String], b: &[String]) -> usize {
    let mut best = 0usize;
    for mask in 0u32..(1 << a.len()) {
        let count = mask.count_ones() as usize;
        if count <= best {
            continue;
        }
        let subset: Vec<String> = a
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, t)| t.clone())
            .collect();
        if is_subsequence(&subset, b) {
            best = count;
        }
    }
    best
}

fn metric_token() -> impl Strategy<Value = String> {
    prop::sample::select(vec!["a", "b", "c", "d", "cat", "sat", "dog", "ran"])
        .prop_map(String::from)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lcs_agrees_with_exhaustive_enumeration(
        a in prop::collection::vec(metric_token(), 1..10),
        b in prop::collection::vec(metric_token(), 1..10),
    ) {
        prop_assert_eq!(lcs_length(&a, &b), brute_force_lcs(&a, &b));
    }
}

// ---------------------------------------------------------------------------
// split disjointness
// ---------------------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn splits_are_disjoint_and_near_target(
        sizes in prop::collection::vec(1usize..12, 3..30),
        seed in 0u64..1000,
    ) {
        let expressions: Vec<String> = sizes
            .iter()
            .enumerate()
            .flat_map(|(i, n)| std::iter::repeat_n(format!("expr {i}"), *n))
            .collect();
        let ratios = SplitRatios::default();
        let assignment = split_assignment(&expressions, &ratios, seed).unwrap();

        use figbench::corpus::Split;
        use std::collections::HashSet;
        let mut sets: [HashSet<&str>; 3] = Default::default();
        let mut counts = [0usize; 3];
        for (expr, split) in expressions.iter().zip(&assignment) {
            let k = match split { Split::Train => 0, Split::Validation => 1, Split::Test => 2 };
            sets[k].insert(expr);
            counts[k] += 1;
        }
        for i in 0..3 {
            for j in (i + 1)..3 {
                prop_assert!(sets[i].is_disjoint(&sets[j]));
            }
        }
        let total = expressions.len() as f64;
        let max_group = *sizes.iter().max().unwrap() as f64;
        let targets = [ratios.train * total, ratios.validation * total, ratios.test * total];
        for k in 0..3 {
            prop_assert!(
                (counts[k] as f64 - targets[k]).abs() <= max_group,
                "split {k}: {} instances vs target {:.1} (max group {max_group})",
                counts[k],
                targets[k]
            );
        }
    }
}

// ---------------------------------------------------------------------------
// segmentation & tokenization glue
// ---------------------------------------------------------------------------

fn sentence_text() -> impl Strategy<Value = String> {
    prop::sample::select(vec![
        "He ran home.",
        "Dr. Smith left!",
        "Was it chicken feed?",
        "The lake was calm.",
        "Mrs. Jones knew better.",
    ])
    .prop_map(String::from)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn segmentation_preserves_content(sentences in prop::collection::vec(sentence_text(), 0..8)) {
        let text = sentences.join(" ");
        let segmented = segment_sentences(&text);
        let norm = |s: &str| s.split_whitespace().collect::<Vec<_>>().join(" ");
        prop_assert_eq!(norm(&segmented.join(" ")), norm(&text));
    }

    #[test]
    fn rouge_tokenize_is_lowercase_alnum(s in "[ -~]{0,40}") {
        for token in rouge_tokenize(&s) {
            prop_assert!(token.chars().all(|c| c.is_alphanumeric()));
            prop_assert_eq!(token.to_lowercase(), token);
        }
    }
}
