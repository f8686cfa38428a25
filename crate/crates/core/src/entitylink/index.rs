use std::cmp::Ordering;

use crate::embed::{dot, l2_norm, EmbeddingTable, UNIT_NORM_TOLERANCE};
use crate::error::{Error, Result};

/// Exact inner-product index over unit vectors.
#[derive(Debug, Clone)]
pub struct FlatIndex {
    dim: usize,
    ids: Vec<String>,
    data: Vec<f32>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Neighbor {
    pub id: String,
    pub similarity: f32,
}

impl FlatIndex {
    pub fn new(dim: usize) -> Self {
        Self { dim, ids: Vec::new(), data: Vec::new() }
    }

    pub fn add(&mut self, id: impl Into<String>, v: &[f32]) -> Result<()> {
        let id = id.into();
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, actual: v.len() });
        }
        let norm = l2_norm(v);
        if (norm - 1.0).abs() > UNIT_NORM_TOLERANCE {
            return Err(Error::NotUnitNorm { id, norm });
        }
        self.ids.push(id);
        self.data.extend_from_slice(v);
        Ok(())
    }

    /// Index over the table rows whose id passes `keep`, in table order.
    pub fn from_table(table: &EmbeddingTable, keep: impl Fn(&str) -> bool) -> Result<Self> {
        let mut index = Self::new(table.dim());
        for (id, v) in table.iter().filter(|(id, _)| keep(id)) {
            index.add(id, v)?;
        }
        Ok(index)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// The `k` most similar entries, by descending inner product, ties by id.
    pub fn search(&self, query: &[f32], k: usize) -> Result<Vec<Neighbor>> {
        if query.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, actual: query.len() });
        }
        let mut scored: Vec<(f32, usize)> = self
            .data
            .chunks_exact(self.dim.max(1))
            .map(|row| dot(row, query))
            .zip(0..)
            .collect();
        let order = |a: &(f32, usize), b: &(f32, usize)| -> Ordering {
            b.0.total_cmp(&a.0).then_with(|| self.ids[a.1].cmp(&self.ids[b.1]))
        };
        let k = k.min(scored.len());
        if k == 0 {
            return Ok(Vec::new());
        }
        if k < scored.len() {
            scored.select_nth_unstable_by(k - 1, order);
            scored.truncate(k);
        }
        scored.sort_by(order);
        Ok(scored
            .into_iter()
            .map(|(similarity, i)| Neighbor { id: self.ids[i].clone(), similarity })
            .collect())
    }
}
