//! Coarse part-of-speech tagging behind an abstract interface.
//!
//! The simile mining patterns only need to distinguish adjectives/adverbs,
//! nouns, pronouns, and determiners. The bundled [`RuleTagger`] covers that
//! with closed-class word lists and a handful of suffix rules; a real tagger
//! can be plugged in through [`PosTagger`] without touching the pipeline.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PosTag {
    #[serde(rename = "NOUN")]
    Noun,
    #[serde(rename = "ADJ")]
    Adj,
    #[serde(rename = "ADV")]
    Adv,
    #[serde(rename = "PRON")]
    Pron,
    #[serde(rename = "DET")]
    Det,
    #[serde(rename = "OTHER")]
    Other,
}

/// A sentence as parallel token and tag sequences.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaggedSentence {
    pub tokens: Vec<String>,
    pub tags: Vec<PosTag>,
}

impl TaggedSentence {
    /// Tags `tokens` with `tagger`; the two sequences always have equal length.
    pub fn from_tokens(tokens: Vec<String>, tagger: &dyn PosTagger) -> Self {
        let tags = tagger.tag_tokens(&tokens);
        debug_assert_eq!(tags.len(), tokens.len());
        Self { tokens, tags }
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

pub trait PosTagger: Send + Sync {
    /// Returns one tag per token.
    fn tag_tokens(&self, tokens: &[String]) -> Vec<PosTag>;
}

const PRONOUNS: &[&str] = &[
    "i", "you", "he", "she", "it", "we", "they", "me", "him", "her", "us", "them", "myself",
    "yourself", "himself", "herself", "itself", "ourselves", "yourselves", "themselves", "who",
    "whom", "someone", "anyone", "everyone", "nobody", "somebody", "anybody", "everybody",
    "something", "anything", "everything", "nothing",
];

const DETERMINERS: &[&str] = &[
    "the", "a", "an", "this", "these", "those", "my", "your", "his", "its", "our", "their",
    "some", "any", "no", "each", "every", "all", "both", "few", "many", "much", "several",
    "either", "neither", "another",
];

const PREPOSITIONS: &[&str] = &[
    "of", "in", "on", "at", "by", "with", "without", "from", "to", "for", "over", "under",
    "about", "into", "onto", "through", "during", "against", "between", "among", "across",
    "behind", "beyond", "near", "off", "around", "upon", "within", "toward", "towards", "after",
    "before", "above", "below", "beneath", "beside", "besides", "along", "amid", "despite",
    "except", "per", "via",
];

// Relative markers cut an NP head search the same way a preposition does.
const RELATIVE_MARKERS: &[&str] = &["that", "which", "whose", "where", "when", "while"];

const FUNCTION_WORDS: &[&str] = &[
    "and", "or", "but", "so", "because", "if", "then", "than", "as", "is", "are", "was", "were",
    "be", "been", "being", "am", "do", "does", "did", "doing", "have", "has", "had", "having",
    "will", "would", "can", "could", "shall", "should", "may", "might", "must", "not", "there",
    "here", "yes", "what", "how", "why",
];

const COMMON_VERBS: &[&str] = &[
    "feel", "feels", "felt", "feeling", "run", "ran", "runs", "go", "went", "gone", "goes",
    "walk", "walks", "walked", "look", "looks", "looked", "seem", "seems", "seemed", "sound",
    "sounds", "sounded", "taste", "tastes", "smell", "smells", "say", "says", "said", "stand",
    "stands", "stood", "sit", "sits", "sat", "come", "came", "comes", "get", "got", "gets",
    "make", "made", "makes", "know", "knew", "knows", "think", "thought", "thinks", "see", "saw",
    "sees", "want", "wants", "wanted", "work", "works",
];

const ADJECTIVES: &[&str] = &[
    "calm", "cold", "hot", "warm", "cool", "big", "small", "large", "little", "long", "short",
    "tall", "high", "low", "wide", "narrow", "thick", "thin", "heavy", "light", "fast", "slow",
    "quick", "hard", "soft", "loud", "quiet", "dark", "bright", "pale", "pure", "white", "black",
    "red", "blue", "green", "yellow", "brown", "grey", "gray", "old", "young", "new", "fresh",
    "clean", "dirty", "dry", "wet", "smooth", "rough", "sharp", "dull", "strong", "weak", "rich",
    "poor", "cheap", "fake", "real", "deep", "shallow", "empty", "full", "open", "free", "busy",
    "happy", "sad", "angry", "glad", "proud", "tired", "sleepy", "hungry", "thirsty", "sick",
    "healthy", "dead", "alive", "safe", "easy", "simple", "wild", "tame", "gentle", "fierce",
    "brave", "timid", "shy", "bold", "clever", "smart", "wise", "kind", "cruel", "mean", "nice",
    "sweet", "sour", "bitter", "salty", "plain", "fancy", "clear", "cloudy", "sunny", "rainy",
    "windy", "icy", "frozen", "solid", "liquid", "hollow", "dense", "tight", "loose", "firm",
    "steady", "still", "silent", "crowded", "ancient", "modern", "early", "late", "ready",
    "perfect", "broken", "whole", "flat", "round", "square", "straight", "crooked", "blunt",
    "keen", "stale", "crisp", "stiff", "limp", "slick", "fuzzy", "furry", "hairy", "bald",
    "naked", "bare", "sodden", "moldy", "endless", "smug", "grim", "stern", "fat", "lean",
    "silly", "ugly", "lovely", "friendly", "lonely", "deadly", "lively", "slimy", "smelly",
];

// -ly words that are not adverbs.
const LY_NOUNS: &[&str] = &[
    "family", "belly", "jelly", "folly", "bully", "ally", "rally", "tally", "lily", "assembly",
    "butterfly", "firefly", "supply", "reply", "monopoly",
];

const ADVERBS: &[&str] = &[
    "well", "soon", "often", "never", "always", "almost", "nearly", "very", "too", "quite",
    "rather", "really", "far", "away", "back", "again", "once", "twice",
];

const ADJ_SUFFIXES: &[&str] = &[
    "ous", "ful", "ive", "less", "able", "ible", "ish", "ic", "ical",
];

/// Closed-class lexicon plus suffix-rule tagger.
///
/// Unknown words default to NOUN, which is the right call for the vehicle
/// head test: novel simile vehicles ("whirlpool", "Rolex") are nouns far
/// more often than not.
#[derive(Debug, Default, Clone, Copy)]
pub struct RuleTagger;

impl RuleTagger {
    fn tag_word(&self, token: &str) -> PosTag {
        if token.chars().all(|c| !c.is_alphanumeric()) {
            return PosTag::Other;
        }
        if token.chars().all(|c| c.is_ascii_digit()) {
            return PosTag::Other;
        }
        let lower = token.to_lowercase();
        let w = lower.as_str();
        if PRONOUNS.contains(&w) {
            return PosTag::Pron;
        }
        if DETERMINERS.contains(&w) {
            return PosTag::Det;
        }
        if PREPOSITIONS.contains(&w)
            || RELATIVE_MARKERS.contains(&w)
            || FUNCTION_WORDS.contains(&w)
            || COMMON_VERBS.contains(&w)
        {
            return PosTag::Other;
        }
        if ADJECTIVES.contains(&w) {
            return PosTag::Adj;
        }
        if ADVERBS.contains(&w) {
            return PosTag::Adv;
        }
        if w.len() > 3 && w.ends_with("ly") && !LY_NOUNS.contains(&w) {
            return PosTag::Adv;
        }
        if ADJ_SUFFIXES.iter().any(|s| w.len() > s.len() + 1 && w.ends_with(s)) {
            return PosTag::Adj;
        }
        if w.len() >= 5 && (w.ends_with("ing") || w.ends_with("ed")) {
            return PosTag::Other;
        }
        PosTag::Noun
    }
}

impl PosTagger for RuleTagger {
    fn tag_tokens(&self, tokens: &[String]) -> Vec<PosTag> {
        tokens.iter().map(|t| self.tag_word(t)).collect()
    }
}

/// True for words that terminate the core noun phrase of a vehicle span
/// (prepositions and relative markers introduce modifiers, not heads).
pub fn cuts_noun_phrase(token: &str) -> bool {
    let lower = token.to_lowercase();
    PREPOSITIONS.contains(&lower.as_str()) || RELATIVE_MARKERS.contains(&lower.as_str())
}

/// True for determiners, used when stripping a vehicle phrase for
/// knowledge queries.
pub fn is_determiner(token: &str) -> bool {
    DETERMINERS.contains(&token.to_lowercase().as_str())
}
