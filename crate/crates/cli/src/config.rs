use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use newswire::dedup::DedupConfig;
use newswire::embed::NgramConfig;
use newswire::entitylink::LinkConfig;
use newswire::georef::GeorefConfig;
use newswire::wirefilter::FilterConfig;

use crate::error::CliError;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Paths {
    pub articles: Option<PathBuf>,
    pub output_dir: Option<PathBuf>,
    pub gazetteer: Option<PathBuf>,
    pub countries: Option<PathBuf>,
    pub states: Option<PathBuf>,
    pub ap_cities: Option<PathBuf>,
    pub location_notes: Option<PathBuf>,
    pub kb: Option<PathBuf>,
    pub qrank: Option<PathBuf>,
    pub dictionary: Option<PathBuf>,
    pub weather_scores: Option<PathBuf>,
    pub nonwire_scores: Option<PathBuf>,
    pub bylines: Option<PathBuf>,
    pub labeled_pairs: Option<PathBuf>,
    pub gold_groups: Option<PathBuf>,
    pub gold_links: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EmbeddingsConfig {
    /// `baseline` or `file:<path>`.
    pub provider: String,
    pub ngram: NgramConfig,
}

impl Default for EmbeddingsConfig {
    fn default() -> Self {
        Self {
            provider: "baseline".into(),
            ngram: NgramConfig::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TuneConfig {
    /// Run `tune-dedup` before `dedup` in `pipeline` and use its threshold.
    pub auto_dedup: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    /// Worker threads; 0 means available parallelism.
    pub workers: usize,
    pub paths: Paths,
    pub embeddings: EmbeddingsConfig,
    pub dedup: DedupConfig,
    pub filter: FilterConfig,
    pub georef: GeorefConfig,
    pub link: LinkConfig,
    pub tune: TuneConfig,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provider {
    Baseline,
    File(PathBuf),
}

/// Splits `a.b.c=value`; the value is read as a TOML literal when it parses
/// as one, else as a bare string.
fn parse_override(spec: &str) -> Result<(Vec<String>, toml::Value), CliError> {
    let (key, raw) = spec
        .split_once('=')
        .ok_or_else(|| CliError::Config(format!("--set {spec:?}: expected dotted.key=value")))?;
    let path: Vec<String> = key.trim().split('.').map(str::to_string).collect();
    if path.iter().any(|p| p.is_empty()) {
        return Err(CliError::Config(format!("--set {spec:?}: empty key segment")));
    }
    let value = toml::from_str::<toml::Table>(&format!("v = {raw}"))
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| toml::Value::String(raw.to_string()));
    Ok((path, value))
}

fn apply_override(root: &mut toml::Table, path: &[String], value: toml::Value) -> Result<(), CliError> {
    let (last, parents) = path.split_last().expect("non-empty");
    let mut table = root;
    for p in parents {
        let entry = table
            .entry(p.clone())
            .or_insert_with(|| toml::Value::Table(toml::Table::new()));
        table = entry
            .as_table_mut()
            .ok_or_else(|| CliError::Config(format!("--set: {p} is not a table")))?;
    }
    table.insert(last.clone(), value);
    Ok(())
}

impl PipelineConfig {
    /// Reads the config file (if any), applies `--set` overrides, and
    /// resolves relative paths against the config file's directory.
    pub fn load(path: Option<&Path>, overrides: &[String]) -> Result<Self, CliError> {
        let (mut table, base) = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", p.display())))?;
                let table: toml::Table = toml::from_str(&text)
                    .map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?;
                (table, p.parent().map(Path::to_path_buf).unwrap_or_default())
            }
            None => (toml::Table::new(), PathBuf::new()),
        };
        for spec in overrides {
            let (key, value) = parse_override(spec)?;
            apply_override(&mut table, &key, value)?;
        }
        let mut cfg: PipelineConfig = toml::Value::Table(table)
            .try_into()
            .map_err(|e: toml::de::Error| CliError::Config(e.to_string()))?;
        cfg.paths.resolve(&base);
        if let Some(rest) = cfg.embeddings.provider.strip_prefix("file:") {
            let p = base.join(rest);
            cfg.embeddings.provider = format!("file:{}", p.display());
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let wrap = |field: &str, r: newswire::Result<()>| r.map_err(|e| CliError::Config(format!("{field}: {e}")));
        wrap("dedup", self.dedup.validate())?;
        wrap("filter", self.filter.validate())?;
        wrap("georef", self.georef.validate())?;
        wrap("link", self.link.validate())?;
        wrap("embeddings.ngram", self.embeddings.ngram.validate())?;
        self.provider()?;
        Ok(())
    }

    pub fn provider(&self) -> Result<Provider, CliError> {
        match self.embeddings.provider.as_str() {
            "baseline" => Ok(Provider::Baseline),
            p => match p.strip_prefix("file:") {
                Some(path) if !path.is_empty() => Ok(Provider::File(PathBuf::from(path))),
                _ => Err(CliError::Config(format!(
                    "embeddings.provider: expected `baseline` or `file:<path>`, got {p:?}"
                ))),
            },
        }
    }

    /// Hash of every result-affecting parameter. Paths and worker count are
    /// excluded so relocated reruns hash the same.
    pub fn parameter_hash(&self) -> String {
        let provider = match self.provider() {
            Ok(Provider::File(p)) => format!(
                "file:{}",
                p.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
            ),
            _ => self.embeddings.provider.clone(),
        };
        let view = serde_json::json!({
            "embeddings": { "provider": provider, "ngram": self.embeddings.ngram },
            "dedup": self.dedup,
            "filter": self.filter,
            "georef": self.georef,
            "link": self.link,
            "tune": self.tune,
        });
        hex::encode(Sha256::digest(view.to_string().as_bytes()))
    }

    pub fn output_dir(&self) -> Result<&Path, CliError> {
        self.paths
            .output_dir
            .as_deref()
            .ok_or_else(|| CliError::Config("paths.output_dir: not set".into()))
    }
}

impl Paths {
    fn resolve(&mut self, base: &Path) {
        for p in self.all_mut().into_iter().map(|(_, p)| p).flatten() {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
    }

    fn all_mut(&mut self) -> Vec<(&'static str, &mut Option<PathBuf>)> {
        vec![
            ("articles", &mut self.articles),
            ("output_dir", &mut self.output_dir),
            ("gazetteer", &mut self.gazetteer),
            ("countries", &mut self.countries),
            ("states", &mut self.states),
            ("ap_cities", &mut self.ap_cities),
            ("location_notes", &mut self.location_notes),
            ("kb", &mut self.kb),
            ("qrank", &mut self.qrank),
            ("dictionary", &mut self.dictionary),
            ("weather_scores", &mut self.weather_scores),
            ("nonwire_scores", &mut self.nonwire_scores),
            ("bylines", &mut self.bylines),
            ("labeled_pairs", &mut self.labeled_pairs),
            ("gold_groups", &mut self.gold_groups),
            ("gold_links", &mut self.gold_links),
        ]
    }
}

/// A path a stage cannot run without: it must be configured and exist.
pub fn required<'a>(field: &str, value: &'a Option<PathBuf>) -> Result<&'a Path, CliError> {
    let p = value
        .as_deref()
        .ok_or_else(|| CliError::Config(format!("paths.{field}: not set")))?;
    if !p.exists() {
        return Err(CliError::Config(format!("paths.{field}: file not found: {}", p.display())));
    }
    Ok(p)
}

/// A path a stage uses if configured; configured but missing is an error.
pub fn optional<'a>(field: &str, value: &'a Option<PathBuf>) -> Result<Option<&'a Path>, CliError> {
    match value {
        None => Ok(None),
        Some(_) => required(field, value).map(Some),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_are_typed_and_nested() {
        let cfg = PipelineConfig::load(
            None,
            &[
                "dedup.sim_threshold=0.8".into(),
                "dedup.method=lsh".into(),
                "dedup.lsh.bands=32".into(),
                "dedup.lsh.rows=4".into(),
                "paths.output_dir=out".into(),
            ],
        )
        .unwrap();
        assert_eq!(cfg.dedup.sim_threshold, 0.8);
        assert_eq!(cfg.dedup.lsh.bands, 32);
        assert_eq!(cfg.paths.output_dir.as_deref(), Some(Path::new("out")));
    }

    #[test]
    fn bad_overrides_are_config_errors() {
        for bad in ["dedup.sim_threshold", "dedup.sim_threshold=1.5", "nosuch.key=1", "embeddings.provider=gpu"] {
            assert!(matches!(PipelineConfig::load(None, &[bad.into()]), Err(CliError::Config(_))), "{bad}");
        }
    }

    #[test]
    fn parameter_hash_ignores_paths_and_workers() {
        let a = PipelineConfig::load(None, &["paths.output_dir=a".into(), "workers=2".into()]).unwrap();
        let b = PipelineConfig::load(None, &["paths.output_dir=b".into()]).unwrap();
        assert_eq!(a.parameter_hash(), b.parameter_hash());
        let c = PipelineConfig::load(None, &["dedup.sim_threshold=0.5".into()]).unwrap();
        assert_ne!(a.parameter_hash(), c.parameter_hash());
    }
}
