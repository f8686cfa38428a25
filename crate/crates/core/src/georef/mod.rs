//! Dateline georeferencing for article clusters.
//!
//! Each article contributes the place names found in its byline. The cluster
//! keeps a name only if it shows up in at least `support` of its articles
//! (15% by default). Cities are scored by count × name length, so "New York"
//! beats the "York" inside it. Stylebook cities that stand alone get their
//! state and country from [`ApCityTable`]. Non-city datelines are reported
//! through `location_notes` instead of coordinates.

mod byline;
mod candidates;
mod tables;

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::corpus::{ArticleRecord, ClusterRecord};
use crate::error::{Error, Result};
use crate::ingest::{name_key, Gazetteer, GazetteerEntry};

pub use byline::{extract_byline, rule_byline, BYLINE_SCAN_CHARS};
pub use candidates::{candidate_locations, Candidates, MatchPass, MAX_NGRAM};
pub use tables::{ApCity, ApCityTable, LocationNotePatterns, AP_CITY_COUNT, LOCATION_NOTES};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GeorefConfig {
    /// Minimum share of a cluster's articles a tentative match must appear in.
    pub support: f64,
}

impl Default for GeorefConfig {
    fn default() -> Self {
        Self { support: 0.15 }
    }
}

impl GeorefConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.support) {
            return Err(Error::Config("georef.support must lie in [0, 1]".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct DatelineResult {
    pub city: Option<String>,
    pub state: Option<String>,
    pub country: Option<String>,
    pub coordinates: Option<(f64, f64)>,
    pub location_notes: Option<String>,
    /// Why coordinates are missing, when they are.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unresolved: Option<String>,
}

impl DatelineResult {
    pub fn check_invariants(&self) -> Result<()> {
        if self.coordinates.is_some() && (self.city.is_none() || self.country.is_none()) {
            return Err(Error::Config("coordinates without city and country".into()));
        }
        if let Some(note) = &self.location_notes {
            if self.coordinates.is_some() {
                return Err(Error::Config("location note with coordinates".into()));
            }
            if !LOCATION_NOTES.contains(&note.as_str()) {
                return Err(Error::Config(format!("unknown location note {note:?}")));
            }
        }
        Ok(())
    }
}

/// Byline-level evidence for one article.
#[derive(Debug, Clone)]
pub struct ArticleEvidence {
    pub candidates: Candidates,
    pub note: Option<&'static str>,
}

pub fn article_evidence(byline: &str, gazetteer: &Gazetteer, notes: &LocationNotePatterns) -> ArticleEvidence {
    ArticleEvidence {
        candidates: candidate_locations(byline, gazetteer),
        note: notes.matching(byline),
    }
}

fn supported(count: usize, total: usize, support: f64) -> bool {
    count as f64 + 1e-9 >= support * total as f64
}

fn tally<'a, S: AsRef<str> + 'a>(
    items: impl Iterator<Item = &'a S>,
    total: usize,
    support: f64,
) -> BTreeMap<String, usize> {
    let mut m: BTreeMap<String, usize> = BTreeMap::new();
    for s in items {
        *m.entry(s.as_ref().to_string()).or_insert(0) += 1;
    }
    m.retain(|_, c| supported(*c, total, support));
    m
}

/// Most common value; ties go to the lexicographically smaller one.
fn most_common(counts: &BTreeMap<String, usize>) -> Option<String> {
    counts
        .iter()
        .max_by(|a, b| a.1.cmp(b.1).then_with(|| b.0.cmp(a.0)))
        .map(|(k, _)| k.clone())
}

/// Matches that clear the support threshold, with the number of articles
/// each appears in.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TentativeMatches {
    pub cities: BTreeMap<String, usize>,
    pub states: BTreeMap<String, usize>,
    pub countries: BTreeMap<String, usize>,
    pub notes: BTreeMap<String, usize>,
}

pub fn tentative_matches(evidence: &[ArticleEvidence], config: &GeorefConfig) -> TentativeMatches {
    let n = evidence.len();
    let s = config.support;
    TentativeMatches {
        cities: tally(evidence.iter().flat_map(|e| e.candidates.cities.iter()), n, s),
        states: tally(evidence.iter().flat_map(|e| e.candidates.states.iter()), n, s),
        countries: tally(evidence.iter().flat_map(|e| e.candidates.countries.iter()), n, s),
        notes: tally(evidence.iter().filter_map(|e| e.note.as_ref()), n, s),
    }
}

/// Tentative city, state, country and note for a cluster, before the
/// gazetteer merge. The returned city is a lookup key.
pub fn aggregate_dateline(
    evidence: &[ArticleEvidence],
    ap_table: &ApCityTable,
    notes: &LocationNotePatterns,
    config: &GeorefConfig,
) -> DatelineResult {
    let total = evidence.len();
    if total == 0 {
        return DatelineResult::default();
    }

    let t = tentative_matches(evidence, config);
    if let Some(note) = t
        .notes
        .iter()
        .max_by(|a, b| a.1.cmp(b.1).then_with(|| notes.rank(b.0).cmp(&notes.rank(a.0))))
        .map(|(n, _)| n.to_string())
    {
        return DatelineResult {
            location_notes: Some(note),
            ..Default::default()
        };
    }

    let city = t
        .cities
        .iter()
        .map(|(k, c)| (k, *c, c * k.chars().count()))
        .max_by(|a, b| a.2.cmp(&b.2).then_with(|| a.1.cmp(&b.1)).then_with(|| b.0.cmp(a.0)))
        .map(|(k, _, _)| k.clone());
    let mut state = most_common(&t.states);
    let mut country = most_common(&t.countries);

    if let Some(ap) = city.as_deref().and_then(|c| ap_table.get(c)) {
        if state.is_none() && country.is_none() {
            state = ap.state.clone();
            country = Some(ap.country.clone());
        }
    }

    DatelineResult {
        city,
        state,
        country,
        ..Default::default()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Resolution<'g> {
    Match(&'g GazetteerEntry),
    NoMatch(String),
}

/// Merges a tentative dateline with the gazetteer: entries named `city`,
/// restricted to `state` and then `country` when given, largest population wins.
pub fn resolve_coordinates<'g>(
    city: &str,
    state: Option<&str>,
    country: Option<&str>,
    gazetteer: &'g Gazetteer,
) -> Resolution<'g> {
    let mut survivors = gazetteer.lookup(city);
    if survivors.is_empty() {
        return Resolution::NoMatch(format!("no gazetteer entry named {city:?}"));
    }
    if let Some(state) = state {
        let key = name_key(state);
        survivors.retain(|e| name_key(&e.admin1) == key || name_key(&e.admin1_code) == key);
        if survivors.is_empty() {
            return Resolution::NoMatch(format!("no {city:?} in state {state:?}"));
        }
    }
    if let Some(country) = country {
        let key = name_key(country);
        survivors.retain(|e| name_key(&e.country) == key || name_key(&e.country_code) == key);
        if survivors.is_empty() {
            return Resolution::NoMatch(format!("no {city:?} in country {country:?}"));
        }
    }
    let best = survivors
        .into_iter()
        .max_by(|a, b| a.population.cmp(&b.population).then_with(|| b.geoname_id.cmp(&a.geoname_id)))
        .expect("non-empty");
    Resolution::Match(best)
}

/// Display name for a city key: the name of its most populous entry.
fn display_city(key: &str, gazetteer: &Gazetteer) -> String {
    gazetteer
        .lookup(key)
        .into_iter()
        .max_by(|a, b| a.population.cmp(&b.population).then_with(|| b.geoname_id.cmp(&a.geoname_id)))
        .map(|e| e.name.clone())
        .unwrap_or_else(|| key.to_string())
}

/// Aggregation followed by the gazetteer merge. Missing state and country are
/// filled from the resolved entry.
pub fn resolve_dateline(
    evidence: &[ArticleEvidence],
    gazetteer: &Gazetteer,
    ap_table: &ApCityTable,
    notes: &LocationNotePatterns,
    config: &GeorefConfig,
) -> DatelineResult {
    let mut result = aggregate_dateline(evidence, ap_table, notes, config);
    let Some(city_key) = result.city.clone() else {
        return result;
    };
    match resolve_coordinates(&city_key, result.state.as_deref(), result.country.as_deref(), gazetteer) {
        Resolution::Match(entry) => {
            result.city = Some(entry.name.clone());
            result.coordinates = Some((entry.latitude, entry.longitude));
            if result.state.is_none() && !entry.admin1.is_empty() {
                result.state = Some(entry.admin1.clone());
            }
            if result.country.is_none() {
                result.country = Some(entry.country.clone());
            }
        }
        Resolution::NoMatch(reason) => {
            result.city = Some(display_city(&city_key, gazetteer));
            result.unresolved = Some(reason);
        }
    }
    result
}

/// Everything georeferencing reads besides the cluster itself.
pub struct GeorefContext<'a> {
    pub gazetteer: &'a Gazetteer,
    pub ap_table: &'a ApCityTable,
    pub notes: &'a LocationNotePatterns,
    pub bylines: &'a HashMap<String, String>,
    pub config: GeorefConfig,
}

pub fn georef_cluster(
    cluster: &ClusterRecord,
    articles: &HashMap<&str, &ArticleRecord>,
    ctx: &GeorefContext<'_>,
) -> Result<DatelineResult> {
    let evidence = cluster
        .member_ids
        .iter()
        .map(|id| {
            let article = articles
                .get(id.as_str())
                .ok_or_else(|| Error::Config(format!("unknown article {id} in cluster {}", cluster.cluster_id)))?;
            let byline = extract_byline(article, ctx.bylines.get(id).map(String::as_str));
            Ok(article_evidence(&byline, ctx.gazetteer, ctx.notes))
        })
        .collect::<Result<Vec<_>>>()?;
    let result = resolve_dateline(&evidence, ctx.gazetteer, ctx.ap_table, ctx.notes, &ctx.config);
    result.check_invariants()?;
    Ok(result)
}

/// One line of `datelines.jsonl`, using the dataset's field names. Absent
/// strings are empty, absent coordinates are null.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatelineRecord {
    pub cluster_id: String,
    pub wire_city: String,
    pub wire_state: String,
    pub wire_country: String,
    pub wire_coordinates: Option<[f64; 2]>,
    pub wire_location_notes: String,
}

impl DatelineRecord {
    pub fn new(cluster_id: &str, r: &DatelineResult) -> Self {
        Self {
            cluster_id: cluster_id.to_string(),
            wire_city: r.city.clone().unwrap_or_default(),
            wire_state: r.state.clone().unwrap_or_default(),
            wire_country: r.country.clone().unwrap_or_default(),
            wire_coordinates: r.coordinates.map(|(a, b)| [a, b]),
            wire_location_notes: r.location_notes.clone().unwrap_or_default(),
        }
    }

    /// The location label used in reports: city, state, country, or note.
    pub fn location_label(&self) -> String {
        if !self.wire_location_notes.is_empty() {
            return self.wire_location_notes.clone();
        }
        if self.wire_city.is_empty() {
            return String::new();
        }
        [&self.wire_city, &self.wire_state, &self.wire_country]
            .iter()
            .filter(|s| !s.is_empty())
            .map(|s| s.as_str())
            .collect::<Vec<_>>()
            .join(", ")
    }
}
