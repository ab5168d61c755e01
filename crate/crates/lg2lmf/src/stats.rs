//! Output statistics over an LMF document.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::lmf::LmfDocument;

/// Counts reported by `stats`. The JSON rendering is schema-versioned.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StatsReport {
    pub schema: u32,
    pub entries: usize,
    pub distinct_lemmas: usize,
    pub frames: usize,
    pub frame_sets: usize,
    pub set_size_histogram: BTreeMap<usize, usize>,
    pub status_histogram: BTreeMap<String, usize>,
    pub mwe_entries: usize,
    pub warnings: usize,
}

pub fn compute_stats(doc: &LmfDocument, warnings: usize) -> StatsReport {
    let lemmas: BTreeSet<&str> = doc.entries.iter().map(|e| e.lemma.as_str()).collect();
    let mut set_size_histogram = BTreeMap::new();
    for set in &doc.frame_sets {
        *set_size_histogram.entry(set.frame_ids.len()).or_insert(0) += 1;
    }
    let mut status_histogram = BTreeMap::new();
    for entry in &doc.entries {
        *status_histogram.entry(entry.status.clone()).or_insert(0) += 1;
    }
    StatsReport {
        schema: 1,
        entries: doc.entries.len(),
        distinct_lemmas: lemmas.len(),
        frames: doc.frames.len(),
        frame_sets: doc.frame_sets.len(),
        set_size_histogram,
        status_histogram,
        mwe_entries: doc.entries.iter().filter(|e| e.mwe.is_some()).count(),
        warnings,
    }
}

pub fn render_text(report: &StatsReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "entries:         {}", report.entries);
    let _ = writeln!(out, "distinct lemmas: {}", report.distinct_lemmas);
    let _ = writeln!(out, "frames:          {}", report.frames);
    let _ = writeln!(out, "frame sets:      {}", report.frame_sets);
    let sizes = if report.set_size_histogram.is_empty() {
        "-".to_string()
    } else {
        report
            .set_size_histogram
            .iter()
            .map(|(size, count)| format!("{size}x{count}"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let _ = writeln!(out, "set sizes:       {sizes}");
    let statuses = if report.status_histogram.is_empty() {
        "-".to_string()
    } else {
        report
            .status_histogram
            .iter()
            .map(|(status, count)| format!("{status}: {count}"))
            .collect::<Vec<_>>()
            .join(", ")
    };
    let _ = writeln!(out, "statuses:        {statuses}");
    let _ = writeln!(out, "mwe entries:     {}", report.mwe_entries);
    let _ = writeln!(out, "warnings:        {}", report.warnings);
    out
}

pub fn render_json(report: &StatsReport) -> String {
    serde_json::to_string_pretty(report).expect("report serializes")
}
