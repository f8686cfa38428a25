use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::ingest::{name_key, Gazetteer};

/// Longest n-gram looked up against the gazetteer.
pub const MAX_NGRAM: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatchPass {
    Capitalized,
    Fallback,
    None,
}

/// Place names found in one article's byline. Cities are lookup keys
/// (see [`name_key`]); states and countries are canonical names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidates {
    pub cities: BTreeSet<String>,
    pub states: BTreeSet<String>,
    pub countries: BTreeSet<String>,
    pub pass: MatchPass,
}

impl Candidates {
    pub fn empty() -> Self {
        Self {
            cities: BTreeSet::new(),
            states: BTreeSet::new(),
            countries: BTreeSet::new(),
            pass: MatchPass::None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.cities.is_empty() && self.states.is_empty() && self.countries.is_empty()
    }
}

struct Word {
    key: String,
    capitalized: bool,
}

fn words(byline: &str) -> Vec<Word> {
    byline
        .split_whitespace()
        .filter_map(|raw| {
            let key = name_key(raw);
            if key.is_empty() {
                return None;
            }
            let capitalized = raw
                .chars()
                .find(|c| c.is_alphabetic())
                .is_some_and(char::is_uppercase);
            Some(Word { key, capitalized })
        })
        .collect()
}

#[derive(Debug)]
struct Hit {
    start: usize,
    end: usize,
    name: String,
}

fn scan(words: &[Word], gazetteer: &Gazetteer, capitalized_only: bool) -> Candidates {
    let mut cities: Vec<Hit> = Vec::new();
    let mut states: Vec<Hit> = Vec::new();
    let mut countries: Vec<Hit> = Vec::new();
    for start in 0..words.len() {
        for end in start + 1..=(start + MAX_NGRAM).min(words.len()) {
            let span = &words[start..end];
            if capitalized_only && !span.iter().all(|w| w.capitalized) {
                continue;
            }
            let key = span.iter().map(|w| w.key.as_str()).collect::<Vec<_>>().join(" ");
            if gazetteer.is_city(&key) {
                cities.push(Hit { start, end, name: key.clone() });
            }
            if let Some(s) = gazetteer.state(&key) {
                states.push(Hit { start, end, name: s.to_string() });
            }
            if let Some(c) = gazetteer.country(&key) {
                countries.push(Hit { start, end, name: c.to_string() });
            }
        }
    }

    // Datelines lead with the city. The longest city match at the earliest
    // position is the city slot; a state or country read from that same span
    // ("Washington", "New York") is not counted as a state or country.
    let primary = cities
        .iter()
        .min_by_key(|h| (h.start, std::cmp::Reverse(h.end)))
        .map(|h| (h.start, h.end));
    let outside = |h: &Hit| primary.map_or(true, |(s, e)| h.end <= s || h.start >= e);

    Candidates {
        cities: cities.into_iter().map(|h| h.name).collect(),
        states: states.into_iter().filter(|h| outside(h)).map(|h| h.name).collect(),
        countries: countries.into_iter().filter(|h| outside(h)).map(|h| h.name).collect(),
        pass: MatchPass::None,
    }
}

/// Matches byline n-grams (up to [`MAX_NGRAM`] words) against city, state and
/// country names. Fully capitalized n-grams are tried first; all n-grams are
/// tried only when that pass finds nothing.
pub fn candidate_locations(byline: &str, gazetteer: &Gazetteer) -> Candidates {
    let words = words(byline);
    let mut found = scan(&words, gazetteer, true);
    if !found.is_empty() {
        found.pass = MatchPass::Capitalized;
        return found;
    }
    let mut found = scan(&words, gazetteer, false);
    found.pass = if found.is_empty() {
        MatchPass::None
    } else {
        MatchPass::Fallback
    };
    found
}
