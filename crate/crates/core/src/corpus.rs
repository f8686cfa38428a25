//! Domain types shared by every pipeline stage, plus the small text primitives
//! (date parsing, tokenization, paragraph counting) the stages agree on.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use chrono::{Datelike, NaiveDate};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

const MONTHS: [&str; 12] = [
    "Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug", "Sep", "Oct", "Nov", "Dec",
];

/// Parses a `mmm-DD-YYYY` date such as `Feb-23-1880`.
pub fn parse_date(text: &str) -> Result<NaiveDate> {
    let err = |field| Error::Date {
        input: text.to_string(),
        field,
    };
    if text.len() != 11 || !text.is_ascii() {
        return Err(err("length"));
    }
    let (month, rest) = text.split_at(3);
    let month = MONTHS
        .iter()
        .position(|m| *m == month)
        .ok_or_else(|| err("month"))? as u32
        + 1;
    let bytes = rest.as_bytes();
    if bytes[0] != b'-' || bytes[3] != b'-' {
        return Err(err("separator"));
    }
    let day: u32 = digits(&rest[1..3]).ok_or_else(|| err("day"))?;
    let year: i32 = digits(&rest[4..8]).ok_or_else(|| err("year"))? as i32;
    if day == 0 || day > 31 {
        return Err(err("day"));
    }
    NaiveDate::from_ymd_opt(year, month, day).ok_or_else(|| err("day"))
}

fn digits(s: &str) -> Option<u32> {
    if s.bytes().all(|b| b.is_ascii_digit()) {
        s.parse().ok()
    } else {
        None
    }
}

/// Formats a date as `mmm-DD-YYYY`; the inverse of [`parse_date`].
pub fn format_date(date: NaiveDate) -> String {
    format!(
        "{}-{:02}-{:04}",
        MONTHS[date.month0() as usize],
        date.day(),
        date.year()
    )
}

/// Lowercased maximal runs of alphabetic characters. Everything else separates.
pub fn normalize_tokens(text: &str) -> Vec<String> {
    text.to_lowercase()
        .split(|c: char| !c.is_alphabetic())
        .filter(|t| !t.is_empty())
        .map(str::to_string)
        .collect()
}

/// Number of newline-separated segments holding at least one non-whitespace char.
pub fn count_paragraphs(text: &str) -> usize {
    text.split('\n').filter(|p| !p.trim().is_empty()).count()
}

/// Trimmed, lowercased form used for all newspaper metadata comparisons.
pub fn normalize_meta(s: &str) -> String {
    s.trim().to_lowercase()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EntityType {
    #[serde(rename = "PER")]
    Person,
    #[serde(rename = "LOC")]
    Location,
    #[serde(rename = "ORG")]
    Organization,
    #[serde(rename = "MISC")]
    Misc,
}

impl EntityType {
    pub const ALL: [EntityType; 4] = [
        EntityType::Person,
        EntityType::Location,
        EntityType::Organization,
        EntityType::Misc,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            EntityType::Person => "PER",
            EntityType::Location => "LOC",
            EntityType::Organization => "ORG",
            EntityType::Misc => "MISC",
        }
    }
}

/// One of the nine BIO labels carried in `ner_labels`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BioLabel {
    Outside,
    Begin(EntityType),
    Inside(EntityType),
}

impl BioLabel {
    pub fn entity(self) -> Option<EntityType> {
        match self {
            BioLabel::Outside => None,
            BioLabel::Begin(t) | BioLabel::Inside(t) => Some(t),
        }
    }
}

impl FromStr for BioLabel {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "O" {
            return Ok(BioLabel::Outside);
        }
        let (prefix, kind) = s.split_once('-').ok_or_else(|| format!("bad label {s:?}"))?;
        let kind = match kind {
            "PER" => EntityType::Person,
            "LOC" => EntityType::Location,
            "ORG" => EntityType::Organization,
            "MISC" => EntityType::Misc,
            _ => return Err(format!("bad label {s:?}")),
        };
        match prefix {
            "B" => Ok(BioLabel::Begin(kind)),
            "I" => Ok(BioLabel::Inside(kind)),
            _ => Err(format!("bad label {s:?}")),
        }
    }
}

impl fmt::Display for BioLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BioLabel::Outside => f.write_str("O"),
            BioLabel::Begin(t) => write!(f, "B-{}", t.as_str()),
            BioLabel::Inside(t) => write!(f, "I-{}", t.as_str()),
        }
    }
}

impl Serialize for BioLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BioLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub(crate) mod date_serde {
    use chrono::NaiveDate;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &NaiveDate, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format_date(*d))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<NaiveDate, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_date(&s).map_err(serde::de::Error::custom)
    }
}

pub(crate) mod dates_serde {
    use chrono::NaiveDate;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[NaiveDate], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for d in v {
            seq.serialize_element(&super::format_date(*d))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<NaiveDate>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| super::parse_date(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewspaperMeta {
    pub lccn: String,
    pub title: String,
    pub city: String,
    pub state: String,
}

impl NewspaperMeta {
    pub fn new(lccn: &str, title: &str, city: &str, state: &str) -> Result<Self> {
        let lccn = normalize_meta(lccn);
        if lccn.is_empty() {
            return Err(Error::Config("newspaper lccn is empty".into()));
        }
        Ok(Self {
            lccn,
            title: normalize_meta(title),
            city: normalize_meta(city),
            state: normalize_meta(state),
        })
    }
}

/// One digitized front-page article.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArticleRecord {
    pub article_id: String,
    pub newspaper_lccn: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub newspaper: Option<NewspaperMeta>,
    #[serde(with = "date_serde")]
    pub date: NaiveDate,
    pub text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub byline_raw: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ner_words: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ner_labels: Option<Vec<BioLabel>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub topic: Option<String>,
}

impl ArticleRecord {
    pub fn validate(&self) -> Result<()> {
        if self.article_id.is_empty() {
            return Err(Error::Config("empty article_id".into()));
        }
        match (&self.ner_words, &self.ner_labels) {
            (Some(w), Some(l)) if w.len() != l.len() => Err(Error::Config(format!(
                "ner_words has {} tokens but ner_labels has {}",
                w.len(),
                l.len()
            ))),
            (Some(_), None) | (None, Some(_)) => Err(Error::Config(
                "ner_words and ner_labels must be present together".into(),
            )),
            _ => Ok(()),
        }
    }
}

/// A clustering of ids into disjoint, exhaustive groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    groups: Vec<Vec<String>>,
    membership: HashMap<String, usize>,
}

impl Partition {
    pub fn from_groups(groups: Vec<Vec<String>>) -> Result<Self> {
        let mut membership = HashMap::new();
        for (g, members) in groups.iter().enumerate() {
            if members.is_empty() {
                return Err(Error::InvalidPartition(format!("group {g} is empty")));
            }
            for id in members {
                if membership.insert(id.clone(), g).is_some() {
                    return Err(Error::InvalidPartition(format!(
                        "id {id:?} appears in more than one group"
                    )));
                }
            }
        }
        Ok(Self { groups, membership })
    }

    /// Groups ids by label; groups are ordered by the first id carrying each label.
    pub fn from_labels<L: Eq + std::hash::Hash>(ids: &[String], labels: &[L]) -> Result<Self> {
        if ids.len() != labels.len() {
            return Err(Error::InvalidPartition(format!(
                "{} ids but {} labels",
                ids.len(),
                labels.len()
            )));
        }
        let mut slot: HashMap<&L, usize> = HashMap::new();
        let mut groups: Vec<Vec<String>> = Vec::new();
        for (id, label) in ids.iter().zip(labels) {
            let g = *slot.entry(label).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[g].push(id.clone());
        }
        Self::from_groups(groups)
    }

    pub fn singletons(ids: &[String]) -> Result<Self> {
        Self::from_groups(ids.iter().map(|id| vec![id.clone()]).collect())
    }

    pub fn groups(&self) -> &[Vec<String>] {
        &self.groups
    }

    pub fn group_of(&self, id: &str) -> Option<usize> {
        self.membership.get(id).copied()
    }

    pub fn num_ids(&self) -> usize {
        self.membership.len()
    }

    pub fn num_groups(&self) -> usize {
        self.groups.len()
    }

    pub fn ids(&self) -> impl Iterator<Item = &String> {
        self.groups.iter().flatten()
    }

    pub fn same_group(&self, a: &str, b: &str) -> bool {
        matches!((self.group_of(a), self.group_of(b)), (Some(x), Some(y)) if x == y)
    }

    /// Labeling-independent form: members sorted within groups, groups sorted.
    pub fn canonical(&self) -> Vec<Vec<String>> {
        let mut out: Vec<Vec<String>> = self
            .groups
            .iter()
            .map(|g| {
                let mut g = g.clone();
                g.sort();
                g
            })
            .collect();
        out.sort();
        out
    }

    /// Checks disjointness and that the ids cover exactly `universe`.
    pub fn validate(&self, universe: &[String]) -> Result<()> {
        let total: usize = self.groups.iter().map(Vec::len).sum();
        if total != self.membership.len() {
            return Err(Error::InvalidPartition("groups overlap".into()));
        }
        let uni: HashSet<&str> = universe.iter().map(String::as_str).collect();
        let diff = symmetric_difference(&uni, self.membership.keys().map(String::as_str));
        if diff.is_empty() && uni.len() == universe.len() {
            Ok(())
        } else {
            Err(Error::UniverseMismatch(diff))
        }
    }
}

pub(crate) fn symmetric_difference<'a>(
    left: &HashSet<&'a str>,
    right: impl Iterator<Item = &'a str>,
) -> Vec<String> {
    let right: HashSet<&str> = right.collect();
    let mut diff: Vec<String> = left
        .symmetric_difference(&right)
        .map(|s| s.to_string())
        .collect();
    diff.sort();
    diff
}

/// A group of article copies treated as reproductions of one underlying article.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterRecord {
    pub cluster_id: String,
    pub member_ids: Vec<String>,
    #[serde(with = "dates_serde")]
    pub dates: Vec<NaiveDate>,
    pub lccns: Vec<String>,
    pub size: usize,
}

impl ClusterRecord {
    /// Builds a cluster from member articles, sorted by article id.
    pub fn from_members(cluster_id: impl Into<String>, members: &[&ArticleRecord]) -> Self {
        let mut members = members.to_vec();
        members.sort_by(|a, b| a.article_id.cmp(&b.article_id));
        Self {
            cluster_id: cluster_id.into(),
            member_ids: members.iter().map(|a| a.article_id.clone()).collect(),
            dates: members.iter().map(|a| a.date).collect(),
            lccns: members.iter().map(|a| a.newspaper_lccn.clone()).collect(),
            size: members.len(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.size == 0
            || self.size != self.member_ids.len()
            || self.size != self.dates.len()
            || self.size != self.lccns.len()
        {
            return Err(Error::InvalidPartition(format!(
                "cluster {} has inconsistent sizes",
                self.cluster_id
            )));
        }
        Ok(())
    }
}
