use std::path::Path;

use newswire::synth::{files, generate, SynthConfig};

use crate::error::{CliError, CliResult};
use crate::manifest::io_err;

pub const CONFIG_FILE: &str = "config.toml";

/// Config for a corpus written by [`write_corpus`]; paths are relative to
/// the corpus directory.
pub fn corpus_config() -> String {
    format!(
        r#"# Pipeline configuration for a generated corpus.
# Relative paths resolve against this file's directory.

[paths]
articles = "{}"
output_dir = "out"
gazetteer = "{}"
countries = "{}"
states = "{}"
ap_cities = "{}"
location_notes = "{}"
kb = "{}"
qrank = "{}"
dictionary = "{}"
weather_scores = "{}"
nonwire_scores = "{}"
labeled_pairs = "{}"
gold_groups = "{}"
gold_links = "{}"

[embeddings]
provider = "baseline"

[tune]
# The bundled corpus carries OCR-style noise that keeps copy-to-copy cosine
# below the default dedup.sim_threshold; tune it from the labeled pairs.
auto_dedup = true
"#,
        files::ARTICLES,
        files::GAZETTEER,
        files::COUNTRIES,
        files::STATES,
        files::AP_CITIES,
        files::LOCATION_NOTES,
        files::KB,
        files::QRANK,
        files::DICTIONARY,
        files::WEATHER_SCORES,
        files::NONWIRE_SCORES,
        files::LABELED_PAIRS,
        files::GOLD_GROUPS,
        files::GOLD_LINKS,
    )
}

/// Generates a synthetic corpus into `dir` along with a ready-to-run config.
pub fn write_corpus(dir: &Path, config: &SynthConfig) -> CliResult<()> {
    config.validate().map_err(|e| CliError::Config(e.to_string()))?;
    let corpus = generate(config)?;
    corpus.write(dir)?;
    let path = dir.join(CONFIG_FILE);
    std::fs::write(&path, corpus_config()).map_err(|e| io_err(&path, e))?;
    log::info!(
        "wrote {} articles, {} gold groups to {}",
        corpus.articles.len(),
        corpus.groups.len(),
        dir.display()
    );
    Ok(())
}
