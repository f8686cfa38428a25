use std::collections::{HashMap, HashSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{read_lines, Loaded, Rejection};
use crate::error::{Error, Result};

/// Rank score returned for qids absent from the rank table.
pub const MIN_RANK_SCORE: f64 = 0.0;

/// A knowledge-base person entry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KbRecord {
    pub qid: String,
    pub label: String,
    #[serde(default)]
    pub aliases: Vec<String>,
    #[serde(default)]
    pub occupations: Vec<String>,
    #[serde(default)]
    pub birth_year: Option<i32>,
    #[serde(default)]
    pub death_year: Option<i32>,
    #[serde(default)]
    pub wikipedia_title: String,
    #[serde(default)]
    pub first_paragraph: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gender: Option<String>,
    /// Text embedded for retrieval; filled in on load.
    #[serde(default)]
    pub template: String,
}

fn join_series(items: &[String]) -> String {
    match items {
        [] => String::new(),
        [one] => one.clone(),
        [a, b] => format!("{a} and {b}"),
        [init @ .., last] => format!("{}, and {last}", init.join(", ")),
    }
}

impl KbRecord {
    /// `<label> is of type human. Also known as <aliases>. Has worked as
    /// <occupations>.` followed by the first Wikipedia paragraph. Empty alias
    /// or occupation lists drop their sentence.
    pub fn build_template(&self) -> String {
        let mut t = format!("{} is of type human.", self.label);
        if !self.aliases.is_empty() {
            t.push_str(&format!(" Also known as {}.", join_series(&self.aliases)));
        }
        if !self.occupations.is_empty() {
            t.push_str(&format!(" Has worked as {}.", self.occupations.join(", ")));
        }
        if !self.first_paragraph.trim().is_empty() {
            t.push(' ');
            t.push_str(self.first_paragraph.trim());
        }
        t
    }

    /// Name shown in `people_mentioned`: the Wikipedia title, else the label.
    pub fn display_name(&self) -> &str {
        if self.wikipedia_title.trim().is_empty() {
            &self.label
        } else {
            &self.wikipedia_title
        }
    }
}

pub fn load_kb(path: &Path) -> Result<Loaded<KbRecord>> {
    let mut out = Loaded::default();
    let mut seen = HashSet::new();
    for (line_no, line) in read_lines(path)? {
        if line.trim().is_empty() {
            continue;
        }
        let reject = |reason: String| Rejection {
            line: line_no,
            reason,
        };
        let mut rec: KbRecord = match serde_json::from_str(&line) {
            Ok(r) => r,
            Err(e) => {
                out.rejections.push(reject(format!("json: {e}")));
                continue;
            }
        };
        if rec.qid.trim().is_empty() {
            out.rejections.push(reject("missing qid".into()));
            continue;
        }
        if rec.label.trim().is_empty() {
            out.rejections.push(reject("missing label".into()));
            continue;
        }
        if !seen.insert(rec.qid.clone()) {
            log::warn!("{}:{line_no}: duplicate qid {}, keeping first", path.display(), rec.qid);
            out.rejections.push(reject(format!("duplicate qid {}", rec.qid)));
            continue;
        }
        rec.template = rec.build_template();
        out.items.push(rec);
    }
    Ok(out)
}

/// Entity popularity scores; higher is more popular.
#[derive(Debug, Clone, Default)]
pub struct RankTable {
    scores: HashMap<String, f64>,
}

impl RankTable {
    pub fn from_pairs<I: IntoIterator<Item = (String, f64)>>(pairs: I) -> Self {
        Self {
            scores: pairs.into_iter().collect(),
        }
    }

    pub fn score(&self, qid: &str) -> f64 {
        self.scores.get(qid).copied().unwrap_or(MIN_RANK_SCORE)
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }
}

/// Loads `qid,score` rows. A non-numeric first row is taken as a header.
pub fn load_qrank(path: &Path) -> Result<(RankTable, Vec<Rejection>)> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(super::open(path)?);
    let mut table = RankTable::default();
    let mut rejections = Vec::new();
    for (i, row) in reader.records().enumerate() {
        let row = row.map_err(|e| Error::csv(path, e))?;
        let line = i + 1;
        let parsed = (row.len() == 2)
            .then(|| row[1].trim().parse::<f64>().ok())
            .flatten();
        match parsed {
            Some(score) if score.is_finite() => {
                table.scores.entry(row[0].trim().to_string()).or_insert(score);
            }
            _ if line == 1 => {}
            _ => rejections.push(Rejection {
                line,
                reason: "expected qid,score".into(),
            }),
        }
    }
    Ok((table, rejections))
}
