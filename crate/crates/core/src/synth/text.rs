use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

const ONSETS: [&str; 18] = ["b", "c", "d", "f", "g", "h", "l", "m", "n", "p", "r", "s", "t", "v", "w", "st", "tr", "pl"];
const VOWELS: [&str; 7] = ["a", "e", "i", "o", "u", "ea", "ou"];
const CODAS: [&str; 6] = ["", "", "n", "r", "s", "t"];

pub(super) fn pseudo_word(rng: &mut ChaCha8Rng, syllables: usize) -> String {
    let mut w = String::new();
    for _ in 0..syllables {
        w.push_str(ONSETS.choose(rng).expect("non-empty"));
        w.push_str(VOWELS.choose(rng).expect("non-empty"));
        w.push_str(CODAS.choose(rng).expect("non-empty"));
    }
    w
}

pub(super) fn capitalize(w: &str) -> String {
    let mut c = w.chars();
    match c.next() {
        Some(f) => f.to_uppercase().chain(c).collect(),
        None => String::new(),
    }
}

/// A vocabulary of distinct pseudo-words with Zipfian sampling weights.
pub(super) struct Vocabulary {
    pub words: Vec<String>,
    zipf: WeightedIndex<f64>,
}

impl Vocabulary {
    pub fn new(rng: &mut ChaCha8Rng, size: usize) -> Self {
        let mut seen = std::collections::HashSet::new();
        let mut words = Vec::with_capacity(size);
        while words.len() < size {
            let syllables = rng.gen_range(1..=3);
            let w = pseudo_word(rng, syllables);
            if w.len() >= 2 && seen.insert(w.clone()) {
                words.push(w);
            }
        }
        let zipf = WeightedIndex::new((0..size).map(|r| 1.0 / (r as f64 + 2.0))).expect("positive weights");
        Self { words, zipf }
    }

    pub fn word(&self, rng: &mut ChaCha8Rng) -> &str {
        &self.words[self.zipf.sample(rng)]
    }

    /// Frequency rank stand-in for the dictionary file.
    pub fn frequency(&self, rank: usize) -> u64 {
        (1_000_000.0 / (rank as f64 + 2.0)) as u64
    }
}

/// A token with its NER tag.
#[derive(Debug, Clone)]
pub(super) struct Token {
    pub text: String,
    pub label: &'static str,
}

pub(super) fn plain(text: impl Into<String>) -> Token {
    Token { text: text.into(), label: "O" }
}

/// A run of tokens tagged as one entity.
pub(super) fn entity(words: &[String], kind: &str) -> Vec<Token> {
    let (b, i) = match kind {
        "PER" => ("B-PER", "I-PER"),
        "LOC" => ("B-LOC", "I-LOC"),
        "ORG" => ("B-ORG", "I-ORG"),
        _ => ("B-MISC", "I-MISC"),
    };
    words
        .iter()
        .enumerate()
        .map(|(k, w)| Token { text: w.clone(), label: if k == 0 { b } else { i } })
        .collect()
}

/// OCR-style corruption: each character is, with probability `rate`,
/// replaced, dropped or followed by a stray letter. Tokens never become
/// empty and never gain whitespace.
pub(super) fn corrupt(token: &str, rate: f64, rng: &mut ChaCha8Rng) -> String {
    if rate <= 0.0 {
        return token.to_string();
    }
    let chars: Vec<char> = token.chars().collect();
    let mut out = String::with_capacity(token.len() + 2);
    for (k, &c) in chars.iter().enumerate() {
        if !rng.gen_bool(rate) {
            out.push(c);
            continue;
        }
        let stray = (b'a' + rng.gen_range(0..26u8)) as char;
        match rng.gen_range(0..10) {
            0..=5 => out.push(stray),
            6 | 7 if chars.len() > 1 && !(k + 1 == chars.len() && out.is_empty()) => {}
            _ => {
                out.push(c);
                out.push(stray);
            }
        }
    }
    if out.is_empty() {
        out.push(chars[0]);
    }
    out
}
