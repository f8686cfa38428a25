//! Embedding providers and vector math.
//!
//! The built-in [`HashedNgramEmbedder`] projects character n-grams of the
//! normalized text into a fixed number of buckets with a published seed
//! ([`EMBED_SEED`]), so identical text and config give bit-identical vectors on
//! every platform. Precomputed vectors (for example from a neural encoder) plug
//! in through [`FileProvider`].

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::corpus::normalize_tokens;
use crate::error::{Error, Result};

pub const UNIT_NORM_TOLERANCE: f32 = 1e-4;

/// Seed mixed into every n-gram hash of the baseline embedder.
pub const EMBED_SEED: u64 = 0x4e57_454d_4231_0001;

/// Decorated contexts are cut to this many whitespace tokens, markers included.
pub const MAX_CONTEXT_TOKENS: usize = 256;

pub const MENTION_OPEN: &str = "[M]";
pub const MENTION_CLOSE: &str = "[\\M]";

pub fn dot(u: &[f32], v: &[f32]) -> f32 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

pub fn l2_norm(v: &[f32]) -> f32 {
    (v.iter().map(|x| (*x as f64) * (*x as f64)).sum::<f64>()).sqrt() as f32
}

/// Cosine similarity, clamped to [-1, 1]. Zero vectors have similarity 0.
pub fn cosine(u: &[f32], v: &[f32]) -> Result<f32> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch {
            expected: u.len(),
            actual: v.len(),
        });
    }
    let mut uv = 0f64;
    let mut uu = 0f64;
    let mut vv = 0f64;
    for (a, b) in u.iter().zip(v) {
        let (a, b) = (*a as f64, *b as f64);
        uv += a * b;
        uu += a * a;
        vv += b * b;
    }
    let denom = (uu * vv).sqrt();
    if denom == 0.0 {
        return Ok(0.0);
    }
    Ok((uv / denom).clamp(-1.0, 1.0) as f32)
}

/// Scales `v` to unit length in place; returns the original norm.
pub fn normalize(v: &mut [f32]) -> f32 {
    let n = l2_norm(v);
    if n > 0.0 {
        v.iter_mut().for_each(|x| *x /= n);
    }
    n
}

/// Renormalized mean of equal-length vectors.
pub fn mean_direction<'a>(vectors: impl IntoIterator<Item = &'a [f32]>, dim: usize) -> Vec<f32> {
    let mut acc = vec![0f64; dim];
    for v in vectors {
        for (a, x) in acc.iter_mut().zip(v) {
            *a += *x as f64;
        }
    }
    let mut out: Vec<f32> = acc.into_iter().map(|x| x as f32).collect();
    normalize(&mut out);
    out
}

/// Dense vectors keyed by id, all of one dimension, kept in insertion order.
#[derive(Debug, Clone)]
pub struct EmbeddingTable {
    dim: usize,
    normalized: bool,
    ids: Vec<String>,
    data: Vec<f32>,
    index: HashMap<String, usize>,
}

impl EmbeddingTable {
    pub fn new(dim: usize, normalized: bool) -> Self {
        Self {
            dim,
            normalized,
            ids: Vec::new(),
            data: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn insert(&mut self, id: String, values: &[f32]) -> Result<()> {
        if values.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: values.len(),
            });
        }
        if self.index.contains_key(&id) {
            return Err(Error::Config(format!("duplicate embedding id {id:?}")));
        }
        self.index.insert(id.clone(), self.ids.len());
        self.ids.push(id);
        self.data.extend_from_slice(values);
        Ok(())
    }

    pub fn get(&self, id: &str) -> Option<&[f32]> {
        self.index
            .get(id)
            .map(|&i| &self.data[i * self.dim..(i + 1) * self.dim])
    }

    pub fn require(&self, id: &str) -> Result<&[f32]> {
        self.get(id).ok_or_else(|| Error::MissingEmbedding(id.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &[f32])> {
        self.ids
            .iter()
            .zip(self.data.chunks_exact(self.dim.max(1)))
            .map(|(id, v)| (id.as_str(), v))
    }
}

/// Source of vectors for ids (articles, mentions, KB entries).
pub trait EmbeddingProvider: Sync {
    fn dim(&self) -> usize;

    /// Vector for `id`, whose text is `text`. Returned vectors are unit norm.
    fn embed(&self, id: &str, text: &str) -> Result<Vec<f32>>;

    fn name(&self) -> String;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NgramConfig {
    pub dim: usize,
    pub min_n: usize,
    pub max_n: usize,
}

impl Default for NgramConfig {
    fn default() -> Self {
        Self {
            dim: 1024,
            min_n: 3,
            max_n: 5,
        }
    }
}

impl NgramConfig {
    pub fn validate(&self) -> Result<()> {
        if self.dim < 64 || !self.dim.is_power_of_two() {
            return Err(Error::Config(format!(
                "embedding dim must be a power of two >= 64, got {}",
                self.dim
            )));
        }
        if self.min_n == 0 || self.min_n > self.max_n {
            return Err(Error::Config(format!(
                "bad n-gram range [{}, {}]",
                self.min_n, self.max_n
            )));
        }
        Ok(())
    }
}

/// 64-bit FNV-1a with a seeded offset basis.
fn fnv1a(seed: u64, bytes: &[u8]) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64 ^ seed;
    for b in bytes {
        h ^= *b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

/// Deterministic signed feature hashing of character n-grams with
/// log-scaled counts.
#[derive(Debug, Clone)]
pub struct HashedNgramEmbedder {
    config: NgramConfig,
}

impl HashedNgramEmbedder {
    pub fn new(config: NgramConfig) -> Result<Self> {
        config.validate()?;
        Ok(Self { config })
    }

    pub fn config(&self) -> NgramConfig {
        self.config
    }

    pub fn embed_text(&self, text: &str) -> Result<Vec<f32>> {
        let tokens = normalize_tokens(text);
        if tokens.is_empty() {
            return Err(Error::EmptyText);
        }
        let padded: Vec<char> = format!(" {} ", tokens.join(" ")).chars().collect();
        let mut counts: HashMap<u64, u32> = HashMap::new();
        let mut buf = String::new();
        for n in self.config.min_n..=self.config.max_n {
            for window in padded.windows(n) {
                buf.clear();
                buf.extend(window);
                *counts.entry(fnv1a(EMBED_SEED, buf.as_bytes())).or_default() += 1;
            }
        }
        if counts.is_empty() {
            // Shorter than the smallest n-gram: hash the whole padded string.
            let whole: String = padded.iter().collect();
            counts.insert(fnv1a(EMBED_SEED, whole.as_bytes()), 1);
        }
        let mut grams: Vec<(u64, u32)> = counts.into_iter().collect();
        grams.sort_unstable();
        let mask = (self.config.dim - 1) as u64;
        let mut v = vec![0f32; self.config.dim];
        for (h, c) in grams {
            let weight = 1.0 + (c as f32).ln();
            let sign = if (h >> 63) & 1 == 1 { -1.0 } else { 1.0 };
            v[(h & mask) as usize] += sign * weight;
        }
        if normalize(&mut v) == 0.0 {
            return Err(Error::EmptyText);
        }
        Ok(v)
    }
}

impl EmbeddingProvider for HashedNgramEmbedder {
    fn dim(&self) -> usize {
        self.config.dim
    }

    fn embed(&self, _id: &str, text: &str) -> Result<Vec<f32>> {
        self.embed_text(text)
    }

    fn name(&self) -> String {
        format!(
            "baseline(dim={},ngrams={}..={})",
            self.config.dim, self.config.min_n, self.config.max_n
        )
    }
}

/// Vectors precomputed elsewhere and loaded from an `NWEMB1` file.
#[derive(Debug, Clone)]
pub struct FileProvider {
    table: EmbeddingTable,
    source: String,
}

impl FileProvider {
    pub fn open(path: &Path) -> Result<Self> {
        Ok(Self {
            table: crate::ingest::read_embeddings(path)?,
            source: path.display().to_string(),
        })
    }

    pub fn from_table(table: EmbeddingTable) -> Self {
        Self {
            table,
            source: "memory".into(),
        }
    }
}

impl EmbeddingProvider for FileProvider {
    fn dim(&self) -> usize {
        self.table.dim()
    }

    fn embed(&self, id: &str, _text: &str) -> Result<Vec<f32>> {
        let mut v = self.table.require(id)?.to_vec();
        normalize(&mut v);
        Ok(v)
    }

    fn name(&self) -> String {
        format!("file:{}", self.source)
    }
}

/// Wraps tokens `[start, end)` of the whitespace-tokenized `context` in
/// `[M]` / `[\M]`, keeping at most [`MAX_CONTEXT_TOKENS`] tokens centered on
/// the mention. The mention itself is never cut.
pub fn decorate_mention(context: &str, start: usize, end: usize) -> Result<String> {
    let tokens: Vec<&str> = context.split_whitespace().collect();
    decorate_tokens(&tokens, start, end)
}

pub fn decorate_tokens<S: AsRef<str>>(tokens: &[S], start: usize, end: usize) -> Result<String> {
    if start >= end || end > tokens.len() {
        return Err(Error::SpanOutOfBounds {
            start,
            end,
            len: tokens.len(),
        });
    }
    let budget = MAX_CONTEXT_TOKENS.saturating_sub(2 + (end - start));
    let before = start;
    let after = tokens.len() - end;
    let mut left = before.min(budget / 2);
    let right = after.min(budget - left);
    left = before.min(budget - right);

    let mut out: Vec<&str> = Vec::with_capacity(left + right + end - start + 2);
    out.extend(tokens[start - left..start].iter().map(AsRef::as_ref));
    out.push(MENTION_OPEN);
    out.extend(tokens[start..end].iter().map(AsRef::as_ref));
    out.push(MENTION_CLOSE);
    out.extend(tokens[end..end + right].iter().map(AsRef::as_ref));
    Ok(out.join(" "))
}
