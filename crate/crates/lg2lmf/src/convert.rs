//! The fused pipeline: tables plus table of classes plus catalog in, LMF
//! document out.
//!
//! Per-table work (parse, merge, entry construction, frame compilation) is
//! pure and runs on worker threads when the `parallel` feature is enabled;
//! a deterministic sequential merge then interns frames and sets and
//! assembles the document, so output bytes never depend on the job count.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::catalog::{load_catalog, FeatureCatalog};
use crate::error::{Error, Result};
use crate::frames::{compile_frames, detect_frozen_clitic, group_entry_sets, Frame, FrameStore, SetStore};
use crate::lexicon::{build_lglex_entry, LgLexEntry, Status};
use crate::lmf::{FrameOut, LexicalEntryOut, LmfDocument, Metadata, MweRef};
use crate::report::{Code, Finding};
use crate::table::{merge_features, parse_class_table, parse_table_of_classes, Category};

#[derive(Debug, Clone)]
pub struct ConvertOptions {
    pub category: Category,
    pub delimiter: u8,
    /// Worker count; `None` uses the default pool, `Some(1)` forces the
    /// sequential path. Ignored without the `parallel` feature.
    pub jobs: Option<usize>,
    pub exclude_statuses: Vec<Status>,
}

impl Default for ConvertOptions {
    fn default() -> Self {
        ConvertOptions {
            category: Category::Verb,
            delimiter: b';',
            jobs: None,
            exclude_statuses: Vec::new(),
        }
    }
}

#[derive(Debug)]
pub struct Conversion {
    pub document: LmfDocument,
    pub findings: Vec<Finding>,
    /// Intermediate structured entries, in document order (excluded
    /// statuses filtered out), for the debug dump.
    pub intermediate: Vec<LgLexEntry>,
}

struct EntryOutput {
    entry: LgLexEntry,
    frames: Vec<Frame>,
    mwe: Option<(String, Vec<String>)>,
}

struct TableOutput {
    entries: Vec<EntryOutput>,
    findings: Vec<Finding>,
}

fn process_table(
    class_id: &str,
    bytes: &[u8],
    matrix: &crate::table::ClassFeatureMatrix,
    catalog: &FeatureCatalog,
    options: &ConvertOptions,
) -> Result<TableOutput> {
    let table = parse_class_table(bytes, class_id, options.category, options.delimiter)?;
    let (records, mut findings) = merge_features(&table, matrix)?;
    let mut entries = Vec::new();
    for record in &records {
        let (entry, entry_findings) = build_lglex_entry(record, catalog);
        findings.extend(entry_findings);
        let (frames, frame_findings) = compile_frames(&entry, catalog)?;
        findings.extend(frame_findings);
        let (mwe, mwe_findings) = detect_frozen_clitic(&entry, catalog)?;
        findings.extend(mwe_findings);
        entries.push(EntryOutput { entry, frames, mwe });
    }
    Ok(TableOutput { entries, findings })
}

#[cfg(feature = "parallel")]
fn run_tables(
    tables: &[(String, Vec<u8>)],
    matrix: &crate::table::ClassFeatureMatrix,
    catalog: &FeatureCatalog,
    options: &ConvertOptions,
) -> Result<Vec<TableOutput>> {
    use rayon::prelude::*;
    let work = || {
        tables
            .par_iter()
            .map(|(class_id, bytes)| process_table(class_id, bytes, matrix, catalog, options))
            .collect::<Result<Vec<_>>>()
    };
    match options.jobs {
        Some(1) => tables
            .iter()
            .map(|(class_id, bytes)| process_table(class_id, bytes, matrix, catalog, options))
            .collect(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Usage(format!("cannot build a {n}-thread pool: {e}")))?
            .install(work),
        None => work(),
    }
}

#[cfg(not(feature = "parallel"))]
fn run_tables(
    tables: &[(String, Vec<u8>)],
    matrix: &crate::table::ClassFeatureMatrix,
    catalog: &FeatureCatalog,
    options: &ConvertOptions,
) -> Result<Vec<TableOutput>> {
    tables
        .iter()
        .map(|(class_id, bytes)| process_table(class_id, bytes, matrix, catalog, options))
        .collect()
}

fn entry_sort_key(entry: &LgLexEntry) -> (String, usize) {
    (entry.class_id.clone(), entry.row_index)
}

/// Convert in-memory tables. `tables` pairs each class id with the table
/// bytes; the caller fixes the table order (the directory front end sorts
/// by class id).
pub fn convert_tables(
    tables: &[(String, Vec<u8>)],
    classes_bytes: &[u8],
    catalog_bytes: &[u8],
    options: &ConvertOptions,
) -> Result<Conversion> {
    let catalog = load_catalog(catalog_bytes)?;
    let matrix = parse_table_of_classes(classes_bytes, options.category, options.delimiter)?;

    let mut findings = Vec::new();
    // Catalog totality over the matrix's feature inventory, warned once per
    // run in feature-id order.
    let mut missing: Vec<&String> = matrix
        .features
        .iter()
        .filter(|f| catalog.get(f).is_none())
        .collect();
    missing.sort();
    for feature in missing {
        findings.push(Finding::warning(
            Code::UnknownFeature,
            format!("catalog[{}]", options.category),
            format!("feature {feature:?} is not declared in the catalog; treated as ignore"),
        ));
    }

    let outputs = run_tables(tables, &matrix, &catalog, options)?;

    // Deterministic sequential merge.
    let mut frame_store = FrameStore::new();
    let mut set_store = SetStore::new();
    let mut entries_out: Vec<(LgLexEntry, LexicalEntryOut)> = Vec::new();
    let mut used_patterns: BTreeSet<String> = BTreeSet::new();
    for output in outputs {
        findings.extend(output.findings);
        for item in output.entries {
            let status = item.entry.status();
            if options.exclude_statuses.contains(&status) {
                continue;
            }
            for frame in &item.frames {
                frame_store.insert(frame.clone(), &item.entry.entry_id)?;
            }
            let mut set_refs = Vec::new();
            for set in group_entry_sets(&item.frames) {
                set_refs.push(set_store.insert(set));
            }
            if set_refs.is_empty() {
                // Warned at compile time (NO_FRAMES); the entry is still
                // emitted, without a SyntacticBehaviour element.
            }
            let mwe = item.mwe.as_ref().map(|(pattern_id, components)| {
                used_patterns.insert(pattern_id.clone());
                MweRef {
                    pattern_id: pattern_id.clone(),
                    components: components.clone(),
                }
            });
            let out = LexicalEntryOut {
                id: item.entry.entry_id.clone(),
                status: status.as_str().to_string(),
                part_of_speech: options.category.name().to_string(),
                lemma: item.entry.lemma.clone(),
                translation: item.entry.translation.clone(),
                example: item.entry.example.clone(),
                frame_set_refs: set_refs,
                mwe,
            };
            entries_out.push((item.entry, out));
        }
    }
    entries_out.sort_by_key(|(entry, _)| entry_sort_key(entry));

    let mut sources = Vec::new();
    for (class_id, bytes) in tables {
        let digest = Sha256::digest(bytes);
        let mut hex = String::with_capacity(64);
        for byte in digest {
            hex.push_str(&format!("{byte:02x}"));
        }
        sources.push(format!("{class_id}.csv sha256:{hex}"));
    }
    sources.sort();

    let document = LmfDocument {
        metadata: Metadata {
            language: "fra".to_string(),
            category: options.category.name().to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            sources,
        },
        frames: frame_store
            .iter()
            .map(|f| FrameOut {
                id: f.id(),
                props: f.props.clone(),
                arguments: f.arguments.clone(),
            })
            .collect(),
        frame_sets: set_store.iter().cloned().collect(),
        mwe_patterns: used_patterns
            .iter()
            .map(|id| {
                catalog
                    .mwe_pattern(id)
                    .cloned()
                    .expect("pattern checked at detection time")
            })
            .collect(),
        entries: entries_out.iter().map(|(_, out)| out.clone()).collect(),
    };

    Ok(Conversion {
        document,
        findings,
        intermediate: entries_out.into_iter().map(|(entry, _)| entry).collect(),
    })
}

/// Read one directory of `<class_id>.csv` tables plus the table of classes
/// and the catalog, and convert. Tables are processed in class-id order.
pub fn convert_dir(
    tables_dir: &Path,
    classes_path: &Path,
    catalog_path: &Path,
    options: &ConvertOptions,
) -> Result<Conversion> {
    let mut tables = Vec::new();
    let entries = fs::read_dir(tables_dir).map_err(|e| Error::io(tables_dir, e))?;
    for entry in entries {
        let entry = entry.map_err(|e| Error::io(tables_dir, e))?;
        let path = entry.path();
        if path.extension().and_then(|e| e.to_str()) != Some("csv") {
            continue;
        }
        let class_id = path
            .file_stem()
            .and_then(|s| s.to_str())
            .ok_or_else(|| Error::Usage(format!("unusable table file name {path:?}")))?
            .to_string();
        let bytes = fs::read(&path).map_err(|e| Error::io(&path, e))?;
        tables.push((class_id, bytes));
    }
    if tables.is_empty() {
        return Err(Error::Usage(format!(
            "no .csv tables found in {}",
            tables_dir.display()
        )));
    }
    tables.sort_by(|a, b| a.0.cmp(&b.0));
    let classes_bytes = fs::read(classes_path).map_err(|e| Error::io(classes_path, e))?;
    let catalog_bytes = fs::read(catalog_path).map_err(|e| Error::io(catalog_path, e))?;
    convert_tables(&tables, &classes_bytes, &catalog_bytes, options)
}

#[cfg(test)]
mod tests {
    use super::*;

    const CATALOG: &str = "\
[feature] feat-a
kind = lexeme-property
name = auxiliary
value = avoir

[feature] feat-c1
kind = construction
pattern = G1

[feature] feat-c2
kind = construction
pattern = G2

[construction] G1
arg = 0 Suj cln

[construction] G2
arg = 0 Suj cln
";

    #[test]
    fn matrix_features_missing_from_the_catalog_warn_once_in_id_order() {
        let tables = vec![(
            "T".to_string(),
            b"feat-a;zz-unknown;aa-unknown;<ENT>\n+;+;+;geler\n".to_vec(),
        )];
        let classes = b"<CLASS>;feat-a;zz-unknown;aa-unknown;feat-c1\nT;o;o;o;+\n";
        let conversion = convert_tables(
            &tables,
            classes,
            CATALOG.as_bytes(),
            &ConvertOptions::default(),
        )
        .unwrap();
        let unknown: Vec<&str> = conversion
            .findings
            .iter()
            .filter(|f| f.code == Code::UnknownFeature)
            .map(|f| f.message.as_str())
            .collect();
        assert_eq!(unknown.len(), 2);
        assert!(unknown[0].contains("aa-unknown"), "{unknown:?}");
        assert!(unknown[1].contains("zz-unknown"), "{unknown:?}");
        assert_eq!(conversion.document.entries.len(), 1);
    }

    #[test]
    fn identical_mnemonics_with_diverging_content_abort_the_merge() {
        // Two constructions print the same identifier, but one entry adds
        // an introducer, which lives outside the identifier: the interner
        // must refuse the collision.
        let catalog = "\
[feature] feat-c1
kind = construction
pattern = G1

[feature] feat-c2
kind = construction
pattern = G2

[feature] feat-intro
kind = introducer
slot = 0
prepositions = dans

[construction] G1
arg = 0 Suj cln

[construction] G2
arg = 0 Suj cln
";
        let tables = vec![
            ("A".to_string(), b"feat-c1;feat-intro;<ENT>\n+;+;geler\n".to_vec()),
            ("B".to_string(), b"feat-c2;<ENT>\n+;fondre\n".to_vec()),
        ];
        let classes = b"<CLASS>;feat-c1;feat-c2;feat-intro\nA;o;?;o\nB;?;o;?\n";
        let err = convert_tables(
            &tables,
            classes,
            catalog.as_bytes(),
            &ConvertOptions::default(),
        )
        .unwrap_err();
        assert!(
            matches!(err, Error::InternMismatch { .. }),
            "unexpected error {err}"
        );
    }

    #[test]
    fn excluded_statuses_keep_shared_frames_of_remaining_entries() {
        let tables = vec![(
            "T".to_string(),
            b"feat-c1;<ENT>\n+;geler\n~;fondre\n".to_vec(),
        )];
        // feat-a is entry-coded but not listed in the table: unencoded for
        // both rows; fondre ends fully unencoded.
        let classes = b"<CLASS>;feat-a;feat-c1\nT;o;o\n";
        let options = ConvertOptions {
            exclude_statuses: vec![Status::ToBeEncoded],
            ..Default::default()
        };
        let conversion =
            convert_tables(&tables, classes, CATALOG.as_bytes(), &options).unwrap();
        // fondre (unencoded) is dropped; geler and its frame remain.
        assert_eq!(conversion.document.entries.len(), 1);
        assert_eq!(conversion.document.entries[0].lemma, "geler");
        assert_eq!(conversion.document.frames.len(), 1);
    }
}
