use std::collections::HashSet;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::Deserialize;

use super::{read_lines, Rejection};
use crate::corpus::{parse_date, ArticleRecord, BioLabel, NewspaperMeta};
use crate::error::{Error, Result};

#[derive(Debug, Default)]
pub struct LoadedArticles {
    pub articles: Vec<ArticleRecord>,
    pub rejections: Vec<Rejection>,
}

/// Accepts both the dataset field names (`article`, `dates`, `byline`,
/// `newspaper_metadata`, `ca_topic`) and the normalized names this crate writes.
#[derive(Debug, Deserialize)]
struct RawArticle {
    article_id: Option<String>,
    date: Option<String>,
    dates: Option<Vec<String>>,
    text: Option<String>,
    article: Option<String>,
    byline_raw: Option<String>,
    byline: Option<String>,
    newspaper_lccn: Option<String>,
    lccn: Option<String>,
    newspaper: Option<NewspaperMeta>,
    newspaper_metadata: Option<Vec<RawNewspaper>>,
    ner_words: Option<Vec<String>>,
    ner_labels: Option<Vec<String>>,
    topic: Option<String>,
    ca_topic: Option<String>,
}

#[derive(Debug, Deserialize)]
struct RawNewspaper {
    lccn: String,
    #[serde(default)]
    newspaper_title: String,
    #[serde(default)]
    newspaper_city: String,
    #[serde(default)]
    newspaper_state: String,
}

/// Parses one JSON line. `fallback_id` is used when the record carries no id.
pub fn parse_article_line(line: &str, fallback_id: &str) -> Result<ArticleRecord, String> {
    let raw: RawArticle = serde_json::from_str(line).map_err(|e| format!("json: {e}"))?;

    let date_text = raw
        .date
        .or_else(|| raw.dates.and_then(|d| d.into_iter().next()))
        .ok_or("missing date")?;
    let date = parse_date(date_text.trim()).map_err(|e| e.to_string())?;

    let text = raw.text.or(raw.article).ok_or("missing article text")?;

    let newspaper = match (raw.newspaper, raw.newspaper_metadata) {
        (Some(n), _) => Some(NewspaperMeta::new(&n.lccn, &n.title, &n.city, &n.state)),
        (None, Some(list)) => list.into_iter().next().map(|n| {
            NewspaperMeta::new(
                &n.lccn,
                &n.newspaper_title,
                &n.newspaper_city,
                &n.newspaper_state,
            )
        }),
        (None, None) => None,
    }
    .transpose()
    .map_err(|e| e.to_string())?;

    let lccn = raw
        .newspaper_lccn
        .or(raw.lccn)
        .map(|l| crate::corpus::normalize_meta(&l))
        .or_else(|| newspaper.as_ref().map(|n| n.lccn.clone()))
        .filter(|l| !l.is_empty())
        .ok_or("missing newspaper lccn")?;

    let ner_labels = raw
        .ner_labels
        .map(|labels| {
            labels
                .iter()
                .map(|l| l.parse::<BioLabel>())
                .collect::<Result<Vec<_>, _>>()
        })
        .transpose()?;

    let record = ArticleRecord {
        article_id: raw
            .article_id
            .filter(|id| !id.is_empty())
            .unwrap_or_else(|| fallback_id.to_string()),
        newspaper_lccn: lccn,
        newspaper,
        date,
        text,
        byline_raw: raw.byline_raw.or(raw.byline).filter(|b| !b.trim().is_empty()),
        ner_words: raw.ner_words,
        ner_labels,
        topic: raw.topic.or(raw.ca_topic).filter(|t| !t.is_empty()),
    };
    record.validate().map_err(|e| e.to_string())?;
    Ok(record)
}

/// Loads JSON Lines article records. Ids default to `<file name>:<line>`.
pub fn load_articles(path: &Path) -> Result<LoadedArticles> {
    let stem = path
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let mut out = LoadedArticles::default();
    let mut seen = HashSet::new();
    for (line_no, line) in read_lines(path)? {
        if line.trim().is_empty() {
            out.rejections.push(Rejection {
                line: line_no,
                reason: "blank line".into(),
            });
            continue;
        }
        match parse_article_line(&line, &format!("{stem}:{line_no}")) {
            Ok(rec) if !seen.insert(rec.article_id.clone()) => out.rejections.push(Rejection {
                line: line_no,
                reason: format!("duplicate article_id {:?}", rec.article_id),
            }),
            Ok(rec) => out.articles.push(rec),
            Err(reason) => out.rejections.push(Rejection {
                line: line_no,
                reason,
            }),
        }
    }
    Ok(out)
}

pub fn write_articles(path: &Path, articles: &[ArticleRecord]) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    for a in articles {
        serde_json::to_writer(&mut w, a)?;
        w.write_all(b"\n").map_err(|e| Error::io(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use chrono::NaiveDate;

    const EXAMPLE: &str = r#"{"year": 1880, "dates": ["Feb-23-1880"],
        "article": "SENATE Washington, Feb. 23.--Bayard moved that in respect of the memory of George Washington the senate adjourn",
        "byline": "",
        "newspaper_metadata": [{"lccn": "sn92053943", "newspaper_title": "the rock island argus",
            "newspaper_city": "rock island", "newspaper_state": " illinois "}],
        "ca_topic": "Federal Government Operations",
        "ner_words": ["SENATE", "Washington", "Feb", "23", "Bayard", "moved", "that", "in", "respect", "of", "the", "memory", "of", "George", "Washington", "the", "senate", "adjourn"],
        "ner_labels": ["B-ORG", "B-LOC", "O", "B-PER", "B-PER", "O", "O", "O", "O", "O", "O", "O", "O", "B-PER", "I-PER", "O", "B-ORG", "O"],
        "wire_city": "Washington", "cluster_size": 8}"#;

    #[test]
    fn parses_dataset_example_record() {
        let line = EXAMPLE.replace('\n', " ");
        let rec = parse_article_line(&line, "f:1").unwrap();
        assert_eq!(rec.date, NaiveDate::from_ymd_opt(1880, 2, 23).unwrap());
        assert_eq!(rec.article_id, "f:1");
        assert_eq!(rec.newspaper_lccn, "sn92053943");
        let meta = rec.newspaper.as_ref().unwrap();
        assert_eq!(meta.state, "illinois");
        assert_eq!(rec.byline_raw, None);
        assert_eq!(rec.topic.as_deref(), Some("Federal Government Operations"));
        assert_eq!(rec.ner_words.as_ref().unwrap().len(), 18);
    }

    #[test]
    fn rejects_misaligned_tags_and_counts_lines() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("a.jsonl");
        let good = EXAMPLE.replace('\n', " ");
        let bad = r#"{"date":"Feb-23-1880","text":"x","lccn":"sn1","ner_words":["a","b"],"ner_labels":["O"]}"#;
        let bad_date = r#"{"date":"Fbr-23-1880","text":"x","lccn":"sn1"}"#;
        std::fs::write(&path, format!("{good}\n{bad}\n{bad_date}\n\n")).unwrap();
        let loaded = load_articles(&path).unwrap();
        assert_eq!(loaded.articles.len(), 1);
        assert_eq!(loaded.rejections.len(), 3);
        assert_eq!(loaded.rejections[0].line, 2);
        assert!(loaded.rejections[1].reason.contains("month"));
    }

    #[test]
    fn empty_file_loads_nothing() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("e.jsonl");
        std::fs::write(&path, "").unwrap();
        let loaded = load_articles(&path).unwrap();
        assert!(loaded.articles.is_empty() && loaded.rejections.is_empty());
    }

    #[test]
    fn missing_file_is_fatal() {
        assert!(matches!(
            load_articles(Path::new("/nonexistent/x.jsonl")),
            Err(Error::Io { .. })
        ));
    }

    #[test]
    fn normalized_output_reloads_identically() {
        let dir = tempfile::tempdir().unwrap();
        let rec = parse_article_line(&EXAMPLE.replace('\n', " "), "f:1").unwrap();
        let path = dir.path().join("out.jsonl");
        write_articles(&path, std::slice::from_ref(&rec)).unwrap();
        let back = load_articles(&path).unwrap();
        assert_eq!(back.articles, vec![rec]);
    }
}
