use std::collections::HashMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::ingest::{name_key, read_lines};

/// Size of the stylebook list of cities that may appear without a state or country.
pub const AP_CITY_COUNT: usize = 56;

/// The only values `wire_location_notes` may take.
pub const LOCATION_NOTES: [&str; 6] = [
    "Pacific Ocean (WWII)",
    "Supreme Headquarters Allied Expeditionary Force (WWII)",
    "North Africa",
    "War Front (WWI)",
    "War Front (WWII)",
    "Johnson Space Center",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApCity {
    pub city: String,
    pub state: Option<String>,
    pub country: String,
}

/// Standalone dateline cities: `city<TAB>state<TAB>country`, state may be empty.
#[derive(Debug, Clone, Default)]
pub struct ApCityTable {
    rows: Vec<ApCity>,
    index: HashMap<String, usize>,
}

impl ApCityTable {
    pub fn from_rows(rows: Vec<ApCity>) -> Self {
        let index = rows
            .iter()
            .enumerate()
            .map(|(i, r)| (name_key(&r.city), i))
            .collect();
        Self { rows, index }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let mut rows = Vec::new();
        for (line_no, line) in read_lines(path)? {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').map(str::trim).collect();
            if cols.len() != 3 || cols[0].is_empty() || cols[2].is_empty() {
                return Err(Error::Config(format!(
                    "{}:{line_no}: expected city<TAB>state<TAB>country",
                    path.display()
                )));
            }
            rows.push(ApCity {
                city: cols[0].to_string(),
                state: (!cols[1].is_empty()).then(|| cols[1].to_string()),
                country: cols[2].to_string(),
            });
        }
        Ok(Self::from_rows(rows))
    }

    pub fn get(&self, city: &str) -> Option<&ApCity> {
        self.index.get(&name_key(city)).map(|&i| &self.rows[i])
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// Byline substrings marking non-city datelines, checked in file order.
/// Format: `pattern<TAB>note`, with `note` one of [`LOCATION_NOTES`].
#[derive(Debug, Clone, Default)]
pub struct LocationNotePatterns {
    patterns: Vec<(String, &'static str)>,
}

impl LocationNotePatterns {
    pub fn new(pairs: &[(&str, &str)]) -> Result<Self> {
        let mut patterns = Vec::new();
        for (pattern, note) in pairs {
            let note = LOCATION_NOTES
                .iter()
                .find(|n| **n == *note)
                .ok_or_else(|| Error::Config(format!("unknown location note {note:?}")))?;
            if pattern.trim().is_empty() {
                return Err(Error::Config("empty location-note pattern".into()));
            }
            patterns.push((pattern.to_lowercase(), *note));
        }
        Ok(Self { patterns })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let mut pairs = Vec::new();
        for (line_no, line) in read_lines(path)? {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (p, n) = line.split_once('\t').ok_or_else(|| {
                Error::Config(format!("{}:{line_no}: expected pattern<TAB>note", path.display()))
            })?;
            pairs.push((p.to_string(), n.trim().to_string()));
        }
        let refs: Vec<(&str, &str)> = pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        Self::new(&refs)
    }

    /// First note whose pattern occurs in `byline`, case-insensitively.
    pub fn matching(&self, byline: &str) -> Option<&'static str> {
        let lower = byline.to_lowercase();
        self.patterns
            .iter()
            .find(|(p, _)| lower.contains(p.as_str()))
            .map(|(_, n)| *n)
    }

    /// Position of `note` in pattern-file order, used to break ties.
    pub(crate) fn rank(&self, note: &str) -> usize {
        self.patterns
            .iter()
            .position(|(_, n)| *n == note)
            .unwrap_or(usize::MAX)
    }
}
