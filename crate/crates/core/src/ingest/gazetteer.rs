use std::collections::HashMap;
use std::path::Path;

use serde::Serialize;

use super::{read_lines, Rejection};
use crate::error::Result;

/// Populated places below this size are dropped on load.
pub const MIN_POPULATION: u64 = 500;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GazetteerEntry {
    pub geoname_id: u64,
    pub name: String,
    pub ascii_name: String,
    pub alternate_names: Vec<String>,
    pub latitude: f64,
    pub longitude: f64,
    pub country_code: String,
    /// Country display name, from the region table when known.
    pub country: String,
    pub admin1_code: String,
    /// State / first-level division display name, from the region table when known.
    pub admin1: String,
    pub population: u64,
}

impl GazetteerEntry {
    pub fn names(&self) -> impl Iterator<Item = &str> {
        std::iter::once(self.name.as_str())
            .chain(std::iter::once(self.ascii_name.as_str()))
            .chain(self.alternate_names.iter().map(String::as_str))
            .filter(|n| !n.trim().is_empty())
    }
}

#[derive(Debug, Clone)]
struct Country {
    name: String,
    aliases: Vec<String>,
}

#[derive(Debug, Clone)]
struct State {
    name: String,
    abbreviations: Vec<String>,
}

/// Country and first-level division names, keyed by GeoNames codes.
///
/// `countries.tsv`: `code<TAB>name[<TAB>alias,alias...]`
/// `states.tsv`: `country_code<TAB>admin1_code<TAB>name[<TAB>abbrev,abbrev...]`
#[derive(Debug, Clone, Default)]
pub struct Regions {
    countries: HashMap<String, Country>,
    states: HashMap<(String, String), State>,
    pub rejections: Vec<Rejection>,
}

fn split_list(s: Option<&str>) -> Vec<String> {
    s.map(|s| {
        s.split(',')
            .map(str::trim)
            .filter(|x| !x.is_empty())
            .map(str::to_string)
            .collect()
    })
    .unwrap_or_default()
}

impl Regions {
    /// Builds region tables in memory: `(code, name, aliases)` countries and
    /// `(country_code, admin1_code, name, abbreviations)` states.
    pub fn from_tables(countries: &[(&str, &str, &[&str])], states: &[(&str, &str, &str, &[&str])]) -> Self {
        let own = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        Self {
            countries: countries
                .iter()
                .map(|(code, name, aliases)| {
                    (
                        code.to_uppercase(),
                        Country {
                            name: name.to_string(),
                            aliases: own(aliases),
                        },
                    )
                })
                .collect(),
            states: states
                .iter()
                .map(|(cc, a1, name, abbrevs)| {
                    (
                        (cc.to_uppercase(), a1.to_uppercase()),
                        State {
                            name: name.to_string(),
                            abbreviations: own(abbrevs),
                        },
                    )
                })
                .collect(),
            rejections: Vec::new(),
        }
    }

    pub fn country_name(&self, code: &str) -> Option<&str> {
        self.countries.get(&code.to_uppercase()).map(|c| c.name.as_str())
    }

    pub fn state_name(&self, country_code: &str, admin1_code: &str) -> Option<&str> {
        self.states
            .get(&(country_code.to_uppercase(), admin1_code.to_uppercase()))
            .map(|s| s.name.as_str())
    }
}

pub fn load_regions(countries: &Path, states: &Path) -> Result<Regions> {
    let mut regions = Regions::default();
    for (line_no, line) in read_lines(countries)? {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() < 2 || cols[0].trim().is_empty() || cols[1].trim().is_empty() {
            regions.rejections.push(Rejection {
                line: line_no,
                reason: "country row needs code and name".into(),
            });
            continue;
        }
        regions.countries.insert(
            cols[0].trim().to_uppercase(),
            Country {
                name: cols[1].trim().to_string(),
                aliases: split_list(cols.get(2).copied()),
            },
        );
    }
    for (line_no, line) in read_lines(states)? {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() < 3 || cols[2].trim().is_empty() {
            regions.rejections.push(Rejection {
                line: line_no,
                reason: "state row needs country code, admin1 code and name".into(),
            });
            continue;
        }
        regions.states.insert(
            (cols[0].trim().to_uppercase(), cols[1].trim().to_uppercase()),
            State {
                name: cols[2].trim().to_string(),
                abbreviations: split_list(cols.get(3).copied()),
            },
        );
    }
    Ok(regions)
}

/// Lookup key for place names: whitespace tokens stripped of surrounding
/// punctuation, lowercased, single-space joined (`"St. Louis"` → `"st louis"`,
/// `"N.Y.,"` → `"n.y"`).
pub fn name_key(s: &str) -> String {
    s.split_whitespace()
        .map(|t| t.trim_matches(|c: char| !c.is_alphanumeric()))
        .filter(|t| !t.is_empty())
        .collect::<Vec<_>>()
        .join(" ")
        .to_lowercase()
}

/// Populated places indexed by every name and alternate name, plus state and
/// country name indexes built from the region tables.
#[derive(Debug, Clone, Default)]
pub struct Gazetteer {
    entries: Vec<GazetteerEntry>,
    by_name: HashMap<String, Vec<usize>>,
    states: HashMap<String, String>,
    countries: HashMap<String, String>,
    pub rejections: Vec<Rejection>,
    pub dropped_small: usize,
}

impl Gazetteer {
    pub fn from_entries(entries: Vec<GazetteerEntry>, regions: &Regions) -> Self {
        let mut g = Gazetteer::default();
        for e in entries {
            g.push(e);
        }
        g.index_regions(regions);
        g
    }

    fn push(&mut self, e: GazetteerEntry) {
        if e.population < MIN_POPULATION {
            self.dropped_small += 1;
            return;
        }
        let idx = self.entries.len();
        let mut keys: Vec<String> = e.names().map(name_key).collect();
        keys.sort();
        keys.dedup();
        for k in keys {
            self.by_name.entry(k).or_default().push(idx);
        }
        self.entries.push(e);
    }

    fn index_regions(&mut self, regions: &Regions) {
        let mut countries: Vec<_> = regions.countries.iter().collect();
        countries.sort_by(|a, b| a.0.cmp(b.0));
        for (_, c) in countries {
            for n in std::iter::once(&c.name).chain(&c.aliases) {
                self.countries.entry(name_key(n)).or_insert_with(|| c.name.clone());
            }
        }
        let mut states: Vec<_> = regions.states.iter().collect();
        states.sort_by(|a, b| a.0.cmp(b.0));
        for (_, s) in states {
            for n in std::iter::once(&s.name).chain(&s.abbreviations) {
                self.states.entry(name_key(n)).or_insert_with(|| s.name.clone());
            }
        }
    }

    pub fn entries(&self) -> &[GazetteerEntry] {
        &self.entries
    }

    /// All entries carrying `name` as a name or alternate name (case-insensitive).
    pub fn lookup(&self, name: &str) -> Vec<&GazetteerEntry> {
        self.by_name
            .get(&name_key(name))
            .map(|ix| ix.iter().map(|&i| &self.entries[i]).collect())
            .unwrap_or_default()
    }

    pub fn is_city(&self, name: &str) -> bool {
        self.by_name.contains_key(&name_key(name))
    }

    /// Canonical state name for a state name or abbreviation.
    pub fn state(&self, name: &str) -> Option<&str> {
        self.states.get(&name_key(name)).map(String::as_str)
    }

    pub fn country(&self, name: &str) -> Option<&str> {
        self.countries.get(&name_key(name)).map(String::as_str)
    }
}

/// Loads a GeoNames-style TSV (19 columns; the first 15 are read).
pub fn load_gazetteer(path: &Path, regions: &Regions) -> Result<Gazetteer> {
    let mut g = Gazetteer::default();
    for (line_no, line) in read_lines(path)? {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        match parse_row(&line, regions) {
            Ok(e) => g.push(e),
            Err(reason) => g.rejections.push(Rejection {
                line: line_no,
                reason,
            }),
        }
    }
    g.index_regions(regions);
    Ok(g)
}

fn parse_row(line: &str, regions: &Regions) -> Result<GazetteerEntry, String> {
    let cols: Vec<&str> = line.split('\t').collect();
    if cols.len() < 15 {
        return Err(format!("expected at least 15 columns, found {}", cols.len()));
    }
    let num = |i: usize, what: &str| -> Result<f64, String> {
        cols[i]
            .trim()
            .parse::<f64>()
            .map_err(|_| format!("bad {what} {:?}", cols[i]))
    };
    let latitude = num(4, "latitude")?;
    let longitude = num(5, "longitude")?;
    if !(-90.0..=90.0).contains(&latitude) {
        return Err(format!("latitude {latitude} out of range"));
    }
    if !(-180.0..=180.0).contains(&longitude) {
        return Err(format!("longitude {longitude} out of range"));
    }
    let geoname_id = cols[0]
        .trim()
        .parse()
        .map_err(|_| format!("bad geonameid {:?}", cols[0]))?;
    let population = if cols[14].trim().is_empty() {
        0
    } else {
        cols[14]
            .trim()
            .parse()
            .map_err(|_| format!("bad population {:?}", cols[14]))?
    };
    let name = cols[1].trim().to_string();
    if name.is_empty() {
        return Err("empty name".into());
    }
    let country_code = cols[8].trim().to_uppercase();
    let admin1_code = cols[10].trim().to_uppercase();
    let country = regions
        .countries
        .get(&country_code)
        .map(|c| c.name.clone())
        .unwrap_or_else(|| country_code.clone());
    let admin1 = regions
        .states
        .get(&(country_code.clone(), admin1_code.clone()))
        .map(|s| s.name.clone())
        .unwrap_or_else(|| admin1_code.clone());
    Ok(GazetteerEntry {
        geoname_id,
        name,
        ascii_name: cols[2].trim().to_string(),
        alternate_names: split_list(Some(cols[3])),
        latitude,
        longitude,
        country_code,
        country,
        admin1_code,
        admin1,
        population,
    })
}
