use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::corpus::{date_serde, ArticleRecord, BioLabel, EntityType};
use crate::embed::decorate_tokens;
use crate::error::Result;

/// A maximal BIO run of one entity type over `ner_words[start..end]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EntitySpan {
    pub entity: EntityType,
    pub start: usize,
    pub end: usize,
}

/// Decodes BIO labels into spans. An `I-X` that does not continue an `X`
/// run opens a new span, as if it were `B-X`.
pub fn decode_bio(labels: &[BioLabel]) -> Vec<EntitySpan> {
    let mut spans: Vec<EntitySpan> = Vec::new();
    let mut open: Option<EntitySpan> = None;
    for (i, label) in labels.iter().enumerate() {
        match *label {
            BioLabel::Inside(t) if open.is_some_and(|s| s.entity == t) => {
                if let Some(s) = open.as_mut() {
                    s.end = i + 1;
                }
            }
            BioLabel::Begin(t) | BioLabel::Inside(t) => {
                spans.extend(open.take());
                open = Some(EntitySpan { entity: t, start: i, end: i + 1 });
            }
            BioLabel::Outside => spans.extend(open.take()),
        }
    }
    spans.extend(open);
    spans
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PersonMention {
    pub mention_id: String,
    pub article_id: String,
    #[serde(with = "date_serde")]
    pub date: NaiveDate,
    pub surface: String,
    /// Article tokens with the mention wrapped in `[M]` / `[\M]`.
    pub context: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ArticleMentions {
    pub mentions: Vec<PersonMention>,
    /// The article carries no NER tags.
    pub untagged: bool,
}

pub fn extract_person_mentions(article: &ArticleRecord) -> Result<ArticleMentions> {
    let (Some(words), Some(labels)) = (&article.ner_words, &article.ner_labels) else {
        return Ok(ArticleMentions { mentions: Vec::new(), untagged: true });
    };
    article.validate()?;
    let mut mentions = Vec::new();
    for span in decode_bio(labels).into_iter().filter(|s| s.entity == EntityType::Person) {
        mentions.push(PersonMention {
            mention_id: format!("{}#m{}", article.article_id, mentions.len()),
            article_id: article.article_id.clone(),
            date: article.date,
            surface: words[span.start..span.end].join(" "),
            context: decorate_tokens(words, span.start, span.end)?,
        });
    }
    Ok(ArticleMentions { mentions, untagged: false })
}

/// Number of entity spans of each type in the article, in [`EntityType::ALL`] order.
pub fn entity_counts(article: &ArticleRecord) -> [usize; 4] {
    let mut counts = [0; 4];
    if let Some(labels) = &article.ner_labels {
        for span in decode_bio(labels) {
            let k = EntityType::ALL.iter().position(|t| *t == span.entity).expect("listed");
            counts[k] += 1;
        }
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::parse_date;

    fn labels(s: &str) -> Vec<BioLabel> {
        s.split_whitespace().map(|l| l.parse().unwrap()).collect()
    }

    fn article(words: &str, tags: &str) -> ArticleRecord {
        ArticleRecord {
            article_id: "a1".into(),
            newspaper_lccn: "sn1".into(),
            newspaper: None,
            date: parse_date("Feb-23-1880").unwrap(),
            text: words.into(),
            byline_raw: None,
            ner_words: Some(words.split_whitespace().map(String::from).collect()),
            ner_labels: Some(labels(tags)),
            topic: None,
        }
    }

    #[test]
    fn adjacent_begins_are_separate_mentions() {
        let a = article("moved Feb Bayard that", "O B-PER B-PER O");
        let m = extract_person_mentions(&a).unwrap().mentions;
        assert_eq!(m.len(), 2);
        assert_eq!(m[0].surface, "Feb");
        assert_eq!(m[1].surface, "Bayard");
        assert_eq!(m[1].mention_id, "a1#m1");
        assert_eq!(m[1].context, "moved Feb [M] Bayard [\\M] that");
    }

    #[test]
    fn begin_inside_is_one_mention() {
        let a = article("George Washington spoke", "B-PER I-PER O");
        let m = extract_person_mentions(&a).unwrap().mentions;
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].surface, "George Washington");
    }

    #[test]
    fn stray_inside_is_recovered() {
        assert_eq!(
            decode_bio(&labels("I-PER")),
            vec![EntitySpan { entity: EntityType::Person, start: 0, end: 1 }]
        );
        let spans = decode_bio(&labels("B-LOC I-PER I-PER O I-ORG"));
        assert_eq!(spans.len(), 3);
        assert_eq!((spans[1].start, spans[1].end), (1, 3));
    }

    #[test]
    fn untagged_articles_are_flagged() {
        let mut a = article("x", "O");
        a.ner_words = None;
        a.ner_labels = None;
        let m = extract_person_mentions(&a).unwrap();
        assert!(m.untagged && m.mentions.is_empty());
    }

    #[test]
    fn entity_counts_by_type() {
        let a = article("a b c d e f", "B-PER I-PER B-LOC O B-ORG B-PER");
        assert_eq!(entity_counts(&a), [2, 1, 1, 0]);
    }
}
