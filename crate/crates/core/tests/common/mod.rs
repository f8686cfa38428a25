#![allow(dead_code)]

pub mod criteria;
pub mod oracles;

use std::path::PathBuf;

/// Fixture root; resolves the same way from either crate's test targets.
pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures")
}
