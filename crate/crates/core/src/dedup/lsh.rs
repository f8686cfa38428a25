//! MinHash signatures over word shingles with banded LSH bucketing.

use std::collections::{HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::normalize_tokens;
use crate::error::{Error, Result};

const MERSENNE_61: u64 = (1 << 61) - 1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LshConfig {
    pub shingle_len: usize,
    pub num_hashes: usize,
    pub bands: usize,
    pub rows: usize,
    /// Bucketed pairs are kept only if their estimated Jaccard reaches this.
    pub jaccard_floor: f64,
    pub seed: u64,
}

impl Default for LshConfig {
    fn default() -> Self {
        Self {
            shingle_len: 5,
            num_hashes: 128,
            bands: 16,
            rows: 8,
            jaccard_floor: 0.5,
            seed: 0x4c53_4831,
        }
    }
}

impl LshConfig {
    pub fn validate(&self) -> Result<()> {
        if self.bands * self.rows != self.num_hashes || self.num_hashes == 0 {
            return Err(Error::Config(format!(
                "lsh bands ({}) x rows ({}) must equal num_hashes ({})",
                self.bands, self.rows, self.num_hashes
            )));
        }
        if self.shingle_len == 0 {
            return Err(Error::Config("lsh shingle_len must be positive".into()));
        }
        if !(0.0..=1.0).contains(&self.jaccard_floor) {
            return Err(Error::Config("lsh jaccard_floor must lie in [0, 1]".into()));
        }
        Ok(())
    }
}

fn hash_str(s: &str) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for b in s.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

/// Hashed word shingles of `shingle_len` consecutive normalized tokens.
/// Texts shorter than one shingle yield a single shingle of all tokens.
pub fn shingles(text: &str, shingle_len: usize) -> Vec<u64> {
    let tokens = normalize_tokens(text);
    if tokens.is_empty() {
        return Vec::new();
    }
    let mut out: Vec<u64> = if tokens.len() < shingle_len {
        vec![hash_str(&tokens.join(" "))]
    } else {
        tokens
            .windows(shingle_len)
            .map(|w| hash_str(&w.join(" ")))
            .collect()
    };
    out.sort_unstable();
    out.dedup();
    out
}

#[derive(Debug, Clone)]
pub struct MinHasher {
    config: LshConfig,
    coeffs: Vec<(u64, u64)>,
}

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MERSENNE_61 as u128) as u64
}

impl MinHasher {
    pub fn new(config: LshConfig) -> Result<Self> {
        config.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let coeffs = (0..config.num_hashes)
            .map(|_| (rng.gen_range(1..MERSENNE_61), rng.gen_range(0..MERSENNE_61)))
            .collect();
        Ok(Self { config, coeffs })
    }

    pub fn config(&self) -> &LshConfig {
        &self.config
    }

    /// Signature of a hashed shingle set; `None` for an empty set.
    pub fn signature_of_set(&self, set: &[u64]) -> Option<Vec<u64>> {
        if set.is_empty() {
            return None;
        }
        Some(
            self.coeffs
                .iter()
                .map(|&(a, b)| {
                    set.iter()
                        .map(|&x| (mul_mod(a, x % MERSENNE_61) + b) % MERSENNE_61)
                        .min()
                        .unwrap()
                })
                .collect(),
        )
    }

    pub fn signature(&self, text: &str) -> Option<Vec<u64>> {
        self.signature_of_set(&shingles(text, self.config.shingle_len))
    }

    /// Per-band bucket keys of a signature.
    pub fn band_keys(&self, sig: &[u64]) -> Vec<u64> {
        sig.chunks_exact(self.config.rows)
            .enumerate()
            .map(|(band, rows)| {
                let mut h = 0xcbf2_9ce4_8422_2325u64 ^ (band as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
                for r in rows {
                    for b in r.to_le_bytes() {
                        h ^= b as u64;
                        h = h.wrapping_mul(0x0100_0000_01b3);
                    }
                }
                h
            })
            .collect()
    }

    pub fn co_bucketed(&self, a: &[u64], b: &[u64]) -> bool {
        self.band_keys(a)
            .iter()
            .zip(self.band_keys(b))
            .any(|(x, y)| *x == y)
    }
}

/// Fraction of signature positions that agree.
pub fn estimated_jaccard(a: &[u64], b: &[u64]) -> f64 {
    let same = a.iter().zip(b).filter(|(x, y)| x == y).count();
    same as f64 / a.len().max(1) as f64
}

/// Pairs among `members` sharing at least one band bucket. Only pairs for
/// which `keep(i, j)` holds are returned, each once, as positions into
/// `members`, in ascending order.
pub(crate) fn bucket_pairs(
    hasher: &MinHasher,
    members: &[Option<&[u64]>],
    keep: impl Fn(usize, usize) -> bool,
) -> Vec<(usize, usize)> {
    let mut buckets: HashMap<(usize, u64), Vec<usize>> = HashMap::new();
    for (pos, sig) in members.iter().enumerate() {
        if let Some(sig) = sig {
            for (band, key) in hasher.band_keys(sig).into_iter().enumerate() {
                buckets.entry((band, key)).or_default().push(pos);
            }
        }
    }
    let mut pairs = HashSet::new();
    for list in buckets.values() {
        for (i, &a) in list.iter().enumerate() {
            for &b in &list[i + 1..] {
                let (x, y) = (a.min(b), a.max(b));
                if keep(x, y) {
                    pairs.insert((x, y));
                }
            }
        }
    }
    let mut pairs: Vec<_> = pairs.into_iter().collect();
    pairs.sort_unstable();
    pairs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_inconsistent_banding() {
        let c = LshConfig {
            bands: 10,
            ..Default::default()
        };
        assert!(MinHasher::new(c).is_err());
    }

    #[test]
    fn identical_texts_share_signatures() {
        let h = MinHasher::new(LshConfig::default()).unwrap();
        let t = "the president met the senate leaders today in the capitol building";
        let a = h.signature(t).unwrap();
        let b = h.signature(t).unwrap();
        assert_eq!(a, b);
        assert!(h.co_bucketed(&a, &b));
        assert!(h.signature("").is_none());
    }

    #[test]
    fn disjoint_vocabularies_almost_never_collide() {
        let mut hits = 0;
        for seed in 0..200u64 {
            let h = MinHasher::new(LshConfig {
                seed,
                ..Default::default()
            })
            .unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed + 1000);
            let mut words = |letters: &[u8]| -> String {
                use rand::Rng;
                (0..60)
                    .map(|_| {
                        (0..6)
                            .map(|_| letters[rng.gen_range(0..letters.len())] as char)
                            .collect::<String>()
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            let a = words(b"abcdefghijklm");
            let b = words(b"nopqrstuvwxyz");
            let sa = h.signature(&a).unwrap();
            let sb = h.signature(&b).unwrap();
            if h.co_bucketed(&sa, &sb) {
                hits += 1;
            }
        }
        assert!((hits as f64) / 200.0 < 0.01, "{hits} collisions");
    }

    #[test]
    fn high_jaccard_sets_are_co_bucketed() {
        use rand::Rng;
        let h = MinHasher::new(LshConfig::default()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut hits = 0;
        for _ in 0..500 {
            let shared: Vec<u64> = (0..190).map(|_| rng.gen()).collect();
            let mut a = shared.clone();
            let mut b = shared;
            a.extend((0..10).map(|_| rng.gen::<u64>()));
            b.extend((0..10).map(|_| rng.gen::<u64>()));
            let (sa, sb) = (h.signature_of_set(&a).unwrap(), h.signature_of_set(&b).unwrap());
            if h.co_bucketed(&sa, &sb) {
                hits += 1;
            }
        }
        assert!(hits as f64 / 500.0 >= 0.95, "{hits} / 500");
    }

    #[test]
    fn estimated_jaccard_tracks_true_jaccard() {
        use rand::Rng;
        let h = MinHasher::new(LshConfig::default()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let shared: Vec<u64> = (0..100).map(|_| rng.gen()).collect();
        let mut a = shared.clone();
        let mut b = shared;
        a.extend((0..50).map(|_| rng.gen::<u64>()));
        b.extend((0..50).map(|_| rng.gen::<u64>()));
        let est = estimated_jaccard(&h.signature_of_set(&a).unwrap(), &h.signature_of_set(&b).unwrap());
        assert!((est - 0.5).abs() < 0.15, "{est}");
    }
}
