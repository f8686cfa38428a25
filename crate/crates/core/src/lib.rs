//! Reconstruction of a deduplicated newswire archive from noisy reproduced
//! article records.

pub mod corpus;
pub mod dedup;
pub mod embed;
pub mod entitylink;
pub mod error;
pub mod eval;
pub mod georef;
pub mod ingest;
pub mod synth;
pub mod wirefilter;

pub use error::{Error, Result};
