use std::collections::{HashMap, HashSet};
use std::path::Path;

use super::{read_lines, Rejection};
use crate::error::{Error, Result};

/// Classifier output: id → score in [0, 1].
#[derive(Debug, Clone, Default)]
pub struct ScoreFile {
    scores: HashMap<String, f64>,
    pub rejections: Vec<Rejection>,
}

impl ScoreFile {
    pub fn from_pairs<I: IntoIterator<Item = (String, f64)>>(pairs: I) -> Self {
        Self {
            scores: pairs.into_iter().collect(),
            rejections: Vec::new(),
        }
    }

    pub fn get(&self, id: &str) -> Option<f64> {
        self.scores.get(id).copied()
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.scores.keys().map(String::as_str)
    }
}

fn csv_rows(path: &Path) -> Result<Vec<(usize, csv::StringRecord)>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(super::open(path)?);
    reader
        .records()
        .enumerate()
        .map(|(i, r)| r.map(|r| (i + 1, r)).map_err(|e| Error::csv(path, e)))
        .collect()
}

/// Loads an `id,score` CSV. A first row whose score does not parse is a header.
pub fn load_scores(path: &Path) -> Result<ScoreFile> {
    let mut out = ScoreFile::default();
    for (line, row) in csv_rows(path)? {
        let score = (row.len() == 2)
            .then(|| row[1].trim().parse::<f64>().ok())
            .flatten();
        match score {
            Some(s) if (0.0..=1.0).contains(&s) => {
                out.scores.insert(row[0].trim().to_string(), s);
            }
            None if line == 1 => {}
            Some(s) => out.rejections.push(Rejection {
                line,
                reason: format!("score {s} outside [0, 1]"),
            }),
            None => out.rejections.push(Rejection {
                line,
                reason: "expected id,score".into(),
            }),
        }
    }
    Ok(out)
}

/// Loads detected byline spans: `article_id,byline`, with an optional
/// `article_id,byline` header row.
pub fn load_bylines(path: &Path) -> Result<HashMap<String, String>> {
    let mut out = HashMap::new();
    for (line, row) in csv_rows(path)? {
        if row.len() != 2 || (line == 1 && &row[0] == "article_id") {
            continue;
        }
        out.insert(row[0].trim().to_string(), row[1].to_string());
    }
    Ok(out)
}

/// Loads a `word<space>frequency` dictionary into a lowercase word set.
pub fn load_dictionary(path: &Path) -> Result<HashSet<String>> {
    Ok(read_lines(path)?
        .into_iter()
        .filter_map(|(_, line)| line.split_whitespace().next().map(str::to_lowercase))
        .collect())
}
