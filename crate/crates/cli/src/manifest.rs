use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileDigest {
    pub name: String,
    pub sha256: String,
}

/// `<stage>.manifest.json`: what a stage read, what it wrote, and how much.
/// Holds no timestamps or absolute paths, so reruns are byte-identical.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub stage: String,
    pub config_hash: String,
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
    pub counts: BTreeMap<String, u64>,
    /// Parameter values in effect that the config alone does not show.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, String>,
}

impl Manifest {
    pub fn file_name(stage: &str) -> String {
        format!("{stage}.manifest.json")
    }

    pub fn read(dir: &Path, stage: &str) -> CliResult<Self> {
        let path = dir.join(Self::file_name(stage));
        let text = std::fs::read_to_string(&path).map_err(|e| io_err(&path, e))?;
        Ok(serde_json::from_str(&text)?)
    }
}

pub struct ManifestBuilder {
    stage: String,
    config_hash: String,
    inputs: Vec<PathBuf>,
    outputs: Vec<PathBuf>,
    counts: BTreeMap<String, u64>,
    params: BTreeMap<String, String>,
}

impl ManifestBuilder {
    pub fn new(stage: &str, config_hash: &str) -> Self {
        Self {
            stage: stage.into(),
            config_hash: config_hash.into(),
            inputs: Vec::new(),
            outputs: Vec::new(),
            counts: BTreeMap::new(),
            params: BTreeMap::new(),
        }
    }

    pub fn input(&mut self, path: &Path) -> &mut Self {
        self.inputs.push(path.to_path_buf());
        self
    }

    pub fn output(&mut self, path: &Path) -> &mut Self {
        self.outputs.push(path.to_path_buf());
        self
    }

    pub fn count(&mut self, key: &str, value: usize) -> &mut Self {
        self.counts.insert(key.into(), value as u64);
        self
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.params.insert(key.into(), value.to_string());
        self
    }

    fn digests(paths: &[PathBuf]) -> CliResult<Vec<FileDigest>> {
        let mut out: Vec<FileDigest> = paths
            .iter()
            .map(|p| {
                Ok(FileDigest {
                    name: p.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default(),
                    sha256: sha256_file(p)?,
                })
            })
            .collect::<CliResult<_>>()?;
        out.sort_by(|a, b| a.name.cmp(&b.name));
        Ok(out)
    }

    pub fn write(&self, dir: &Path) -> CliResult<Manifest> {
        let manifest = Manifest {
            stage: self.stage.clone(),
            config_hash: self.config_hash.clone(),
            inputs: Self::digests(&self.inputs)?,
            outputs: Self::digests(&self.outputs)?,
            counts: self.counts.clone(),
            params: self.params.clone(),
        };
        let path = dir.join(Manifest::file_name(&self.stage));
        let mut text = serde_json::to_string_pretty(&manifest).map_err(|e| CliError::Internal(e.to_string()))?;
        text.push('\n');
        std::fs::write(&path, text).map_err(|e| io_err(&path, e))?;
        Ok(manifest)
    }
}

pub fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::Input(format!("{}: {e}", path.display()))
}

pub fn sha256_file(path: &Path) -> CliResult<String> {
    let mut f = File::open(path).map_err(|e| io_err(path, e))?;
    let mut hasher = Sha256::new();
    let mut buf = [0u8; 1 << 16];
    loop {
        let n = f.read(&mut buf).map_err(|e| io_err(path, e))?;
        if n == 0 {
            break;
        }
        hasher.update(&buf[..n]);
    }
    Ok(hex::encode(hasher.finalize()))
}

pub fn write_jsonl<T: Serialize>(path: &Path, rows: impl IntoIterator<Item = T>) -> CliResult<usize> {
    let f = File::create(path).map_err(|e| io_err(path, e))?;
    let mut w = BufWriter::new(f);
    let mut n = 0;
    for row in rows {
        serde_json::to_writer(&mut w, &row).map_err(|e| CliError::Internal(e.to_string()))?;
        w.write_all(b"\n").map_err(|e| io_err(path, e))?;
        n += 1;
    }
    w.flush().map_err(|e| io_err(path, e))?;
    Ok(n)
}

pub fn read_jsonl<T: DeserializeOwned>(path: &Path) -> CliResult<Vec<T>> {
    let f = File::open(path).map_err(|e| io_err(path, e))?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(f).lines().enumerate() {
        let line = line.map_err(|e| io_err(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(
            serde_json::from_str(&line)
                .map_err(|e| CliError::Input(format!("{}:{}: {e}", path.display(), i + 1)))?,
        );
    }
    Ok(out)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::Internal(e.to_string()))?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| io_err(path, e))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}
