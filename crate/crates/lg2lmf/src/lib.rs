//! Compiler from Lexicon-Grammar verb tables to an LMF XML lexicon.
//!
//! The pipeline reads per-class feature tables and the table of classes,
//! merges them into per-entry feature assignments, builds a structured
//! intermediate lexicon, compiles fully specified subcategorization frames
//! with global deduplication and set grouping, and emits a deterministic
//! LMF document. A validator and a statistics reporter work on emitted
//! documents.

pub mod catalog;
pub mod convert;
pub mod error;
pub mod frames;
pub mod lexicon;
pub mod lmf;
pub mod mnemonic;
pub mod report;
pub mod stats;
pub mod table;
pub mod validate;

pub use error::{Error, Result};
