//! File IO for every pipeline input: article records, embeddings, gazetteer,
//! knowledge base, rank table, score files and dictionaries.
//!
//! Line-oriented loaders never abort on a malformed line. They return a
//! [`Rejection`] for it and keep going, so `loaded + rejected == lines`.

mod articles;
mod embeddings;
mod gazetteer;
mod kb;
mod tables;

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use articles::{load_articles, parse_article_line, write_articles, LoadedArticles};
pub use embeddings::{read_embeddings, write_embeddings, EMBEDDING_MAGIC};
pub use gazetteer::{load_gazetteer, load_regions, name_key, Gazetteer, GazetteerEntry, Regions};
pub use kb::{load_kb, load_qrank, KbRecord, RankTable, MIN_RANK_SCORE};
pub use tables::{load_bylines, load_dictionary, load_scores, ScoreFile};

/// A line that could not be turned into a record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rejection {
    /// 1-based line number.
    pub line: usize,
    pub reason: String,
}

#[derive(Debug, Clone)]
pub struct Loaded<T> {
    pub items: Vec<T>,
    pub rejections: Vec<Rejection>,
}

impl<T> Default for Loaded<T> {
    fn default() -> Self {
        Self {
            items: Vec::new(),
            rejections: Vec::new(),
        }
    }
}

pub(crate) fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Error::io(path, e))
}

/// Yields `(line_number, line)` pairs; IO failures mid-file are fatal.
pub(crate) fn read_lines(path: &Path) -> Result<Vec<(usize, String)>> {
    let reader = open(path)?;
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        out.push((i + 1, line.map_err(|e| Error::io(path, e))?));
    }
    Ok(out)
}
