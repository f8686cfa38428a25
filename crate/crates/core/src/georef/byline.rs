use crate::corpus::ArticleRecord;

/// How far into the first paragraph the dateline dash may start.
pub const BYLINE_SCAN_CHARS: usize = 120;

/// Rule-based byline: the first paragraph up to the first `--` or `—`,
/// provided the dash starts within [`BYLINE_SCAN_CHARS`] characters.
pub fn rule_byline(text: &str) -> String {
    let first = text.split('\n').find(|p| !p.trim().is_empty()).unwrap_or("");
    let chars: Vec<(usize, char)> = first.char_indices().take(BYLINE_SCAN_CHARS + 1).collect();
    for (k, &(byte, c)) in chars.iter().enumerate().take(BYLINE_SCAN_CHARS) {
        let dash = c == '—' || (c == '-' && chars.get(k + 1).is_some_and(|(_, n)| *n == '-'));
        if dash {
            return first[..byte].trim().to_string();
        }
    }
    String::new()
}

/// Byline for an article: a detected span from a byline file wins, then a
/// non-empty `byline` field from the record, then the dash rule.
pub fn extract_byline(article: &ArticleRecord, detected: Option<&str>) -> String {
    if let Some(span) = detected {
        return span.to_string();
    }
    if let Some(raw) = article.byline_raw.as_deref().filter(|b| !b.trim().is_empty()) {
        return raw.trim().to_string();
    }
    rule_byline(&article.text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dataset_example() {
        assert_eq!(
            rule_byline("SENATE Washington, Feb. 23.--Bayard moved that in respect of the memory"),
            "SENATE Washington, Feb. 23."
        );
        assert_eq!(rule_byline("LONDON, March 3 — The cabinet met"), "LONDON, March 3");
    }

    #[test]
    fn dash_must_start_early() {
        let late = format!("{}--rest", "x".repeat(130));
        assert_eq!(rule_byline(&late), "");
        let edge = format!("{}--rest", "x".repeat(119));
        assert_eq!(rule_byline(&edge), "x".repeat(119));
        let past = format!("{}--rest", "x".repeat(120));
        assert_eq!(rule_byline(&past), "");
        assert_eq!(rule_byline("no dash here at all"), "");
        assert_eq!(rule_byline("single - dash"), "");
    }

    #[test]
    fn only_first_paragraph_is_scanned() {
        assert_eq!(rule_byline("no dateline\nPARIS, May 1.--text"), "");
        assert_eq!(rule_byline("\n\nPARIS, May 1.--text"), "PARIS, May 1.");
    }
}
