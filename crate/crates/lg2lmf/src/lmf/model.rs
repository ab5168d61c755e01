//! Document-side model of the emitted lexicon.
//!
//! Identifiers and the status attribute stay raw strings here: a document
//! must be readable even when those values are invalid, so the validator can
//! report them instead of the reader refusing the file.

use crate::catalog::MwePatternDef;
use crate::frames::{Argument, FrameSet, LexemeProps};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Metadata {
    pub language: String,
    pub category: String,
    pub tool_version: String,
    /// Provenance lines, one per source table (name plus checksum).
    pub sources: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MweRef {
    pub pattern_id: String,
    /// Component pseudo-entry ids, e.g. `PRO_en`, `V_coûter`.
    pub components: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexicalEntryOut {
    pub id: String,
    pub status: String,
    pub part_of_speech: String,
    pub lemma: String,
    pub translation: Option<String>,
    pub example: Option<String>,
    /// Frame-set ids in first-occurrence order; empty when the entry
    /// licenses no construction.
    pub frame_set_refs: Vec<String>,
    pub mwe: Option<MweRef>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameOut {
    pub id: String,
    pub props: LexemeProps,
    pub arguments: Vec<Argument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LmfDocument {
    pub metadata: Metadata,
    pub entries: Vec<LexicalEntryOut>,
    pub frame_sets: Vec<FrameSet>,
    pub frames: Vec<FrameOut>,
    pub mwe_patterns: Vec<MwePatternDef>,
}

impl LmfDocument {
    pub fn frame_set(&self, id: &str) -> Option<&FrameSet> {
        self.frame_sets.iter().find(|s| s.id == id)
    }

    pub fn frame(&self, id: &str) -> Option<&FrameOut> {
        self.frames.iter().find(|f| f.id == id)
    }

    pub fn mwe_pattern(&self, id: &str) -> Option<&MwePatternDef> {
        self.mwe_patterns.iter().find(|p| p.pattern_id == id)
    }

    pub fn entry(&self, id: &str) -> Option<&LexicalEntryOut> {
        self.entries.iter().find(|e| e.id == id)
    }
}
