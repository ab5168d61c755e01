//! Document validator: every structural invariant of the compiled lexicon
//! becomes a finding with a specific code.

use std::collections::BTreeSet;

use crate::error::Result;
use crate::frames::Constituent;
use crate::lexicon::Status;
use crate::lmf::{dangling_references, read_lmf_lenient, LmfDocument};
use crate::mnemonic::parse_mnemonic;
use crate::report::{Code, Finding, ValidationReport};

fn check_duplicate_ids<'a>(
    ids: impl Iterator<Item = &'a str>,
    what: &str,
    report: &mut ValidationReport,
) {
    let mut seen = BTreeSet::new();
    for id in ids {
        if !seen.insert(id) {
            report.push(Finding::error(
                Code::DuplicateId,
                format!("Lexicon/{what}[{id}]"),
                format!("duplicate {what} id {id:?}"),
            ));
        }
    }
}

fn check_entries(doc: &LmfDocument, report: &mut ValidationReport) {
    for entry in &doc.entries {
        let path = format!("Lexicon/LexicalEntry[{}]", entry.id);
        if Status::from_str_opt(&entry.status).is_none() {
            report.push(Finding::error(
                Code::StatusValue,
                path.clone(),
                format!(
                    "status {:?} is not one of completed / to be completed / to be encoded",
                    entry.status
                ),
            ));
        }
        if let Some(mwe) = &entry.mwe {
            if mwe.components.len() < 2 {
                report.push(Finding::error(
                    Code::MweComponents,
                    path.clone(),
                    format!(
                        "multiword entry lists {} component(s); at least the clitic and the \
                         verb are required",
                        mwe.components.len()
                    ),
                ));
            }
        }
        if entry.frame_set_refs.is_empty() {
            report.push(Finding::warning(
                Code::NoFrames,
                path,
                "entry has no SyntacticBehaviour",
            ));
        }
    }
}

fn check_sets(doc: &LmfDocument, report: &mut ValidationReport) {
    for set in &doc.frame_sets {
        let path = format!("Lexicon/SubcategorizationFrameSet[{}]", set.id);
        if set.frame_ids.is_empty() || set.frame_ids.len() > 4 {
            report.push(Finding::error(
                Code::SetSize,
                path.clone(),
                format!("set has {} members, outside 1..4", set.frame_ids.len()),
            ));
        }
        let set_stem = match parse_mnemonic(&set.id) {
            Ok(m) => m.stem(),
            Err(e) => {
                report.push(Finding::error(
                    Code::MnemonicParse,
                    path.clone(),
                    format!("set id does not parse: {e}"),
                ));
                continue;
            }
        };
        for frame_id in &set.frame_ids {
            match parse_mnemonic(frame_id) {
                Ok(member) => {
                    if member.stem() != set_stem {
                        report.push(Finding::error(
                            Code::SetHeterogeneous,
                            path.clone(),
                            format!(
                                "member {frame_id:?} does not share the set's argument and \
                                 @-feature sections"
                            ),
                        ));
                    }
                }
                Err(e) => report.push(Finding::error(
                    Code::MnemonicParse,
                    path.clone(),
                    format!("member id does not parse: {e}"),
                )),
            }
        }
    }
}

fn check_frames(doc: &LmfDocument, report: &mut ValidationReport) {
    for frame in &doc.frames {
        let path = format!("Lexicon/SubcategorizationFrame[{}]", frame.id);
        if let Err(e) = parse_mnemonic(&frame.id) {
            report.push(Finding::error(
                Code::MnemonicParse,
                path.clone(),
                format!("frame id does not parse: {e}"),
            ));
        }
        let n = frame.arguments.len();
        let mut ids: Vec<usize> = frame.arguments.iter().map(|a| a.id).collect();
        ids.sort_unstable();
        if ids != (0..n).collect::<Vec<_>>() {
            report.push(Finding::error(
                Code::ArgIdContiguity,
                path.clone(),
                format!("argument ids {ids:?} are not exactly 0..{n}"),
            ));
        }
        for arg in &frame.arguments {
            let arg_path = format!("{path}/SyntacticArgument[{}]", arg.id);
            for &c in &arg.control {
                if c >= n {
                    report.push(Finding::error(
                        Code::ControlOutOfRange,
                        arg_path.clone(),
                        format!("control references argument {c} in a {n}-argument frame"),
                    ));
                } else if c == arg.id {
                    report.push(Finding::error(
                        Code::ControlSelf,
                        arg_path.clone(),
                        "argument controls itself",
                    ));
                }
            }
            if arg.mood.is_some()
                && !arg.constituents.iter().any(|c| {
                    matches!(
                        c,
                        Constituent::CompletiveClause | Constituent::WhCompletiveClause
                    )
                })
            {
                report.push(Finding::warning(
                    Code::MoodWithoutClause,
                    arg_path,
                    "mood set on an argument without a completive-clause constituent",
                ));
            }
        }
    }
}

/// Validate a document. `compat_warnings` are read-time findings (e.g. the
/// `attr=` spelling) folded into the report.
pub fn validate_document(doc: &LmfDocument, compat_warnings: &[Finding]) -> ValidationReport {
    let mut report = ValidationReport::default();
    report.findings.extend(compat_warnings.iter().cloned());
    check_duplicate_ids(
        doc.entries.iter().map(|e| e.id.as_str()),
        "LexicalEntry",
        &mut report,
    );
    check_duplicate_ids(
        doc.frame_sets.iter().map(|s| s.id.as_str()),
        "SubcategorizationFrameSet",
        &mut report,
    );
    check_duplicate_ids(
        doc.frames.iter().map(|f| f.id.as_str()),
        "SubcategorizationFrame",
        &mut report,
    );
    check_duplicate_ids(
        doc.mwe_patterns.iter().map(|p| p.pattern_id.as_str()),
        "MWEPattern",
        &mut report,
    );
    for finding in dangling_references(doc) {
        report.push(finding);
    }
    check_entries(doc, &mut report);
    check_sets(doc, &mut report);
    check_frames(doc, &mut report);
    report
}

/// Read a file's bytes and validate; `strict` escalates compatibility
/// warnings to errors.
pub fn validate_bytes(bytes: &[u8], strict: bool) -> Result<ValidationReport> {
    let (doc, warnings) = read_lmf_lenient(bytes)?;
    let mut report = validate_document(&doc, &warnings);
    if strict {
        report.escalate_compat();
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::FrameSet;
    use crate::lmf::{emit_lmf, LexicalEntryOut, Metadata};

    fn valid_doc() -> LmfDocument {
        let frame_id = "[Suj:cln|sn];@avoir;%actif".to_string();
        LmfDocument {
            metadata: Metadata {
                language: "fra".into(),
                category: "verb".into(),
                tool_version: "test".into(),
                sources: Vec::new(),
            },
            entries: vec![LexicalEntryOut {
                id: "V_31R_1".into(),
                status: "completed".into(),
                part_of_speech: "verb".into(),
                lemma: "barboter".into(),
                translation: None,
                example: None,
                frame_set_refs: vec![frame_id.clone()],
                mwe: None,
            }],
            frame_sets: vec![FrameSet {
                id: frame_id.clone(),
                frame_ids: vec![frame_id.clone()],
            }],
            frames: vec![crate::lmf::FrameOut {
                id: frame_id,
                props: Default::default(),
                arguments: vec![crate::frames::Argument {
                    id: 0,
                    function: crate::frames::SyntacticFunction::Subject,
                    constituents: vec![Constituent::CliticNominative, Constituent::Np],
                    introducers: None,
                    restriction: vec![],
                    optional: false,
                    mood: None,
                    control: vec![],
                    role: None,
                }],
            }],
            mwe_patterns: Vec::new(),
        }
    }

    #[test]
    fn valid_document_passes() {
        let report = validate_document(&valid_doc(), &[]);
        assert!(report.passed(), "{report}");
        assert_eq!(report.warning_count(), 0);
    }

    #[test]
    fn each_injected_violation_gets_its_code() {
        // Dangling reference.
        let mut doc = valid_doc();
        doc.frame_sets.clear();
        assert!(validate_document(&doc, &[]).has_code(Code::DanglingRef));

        // Non-contiguous argument ids.
        let mut doc = valid_doc();
        doc.frames[0].arguments[0].id = 2;
        assert!(validate_document(&doc, &[]).has_code(Code::ArgIdContiguity));

        // Out-of-range control.
        let mut doc = valid_doc();
        doc.frames[0].arguments[0].control = vec![7];
        assert!(validate_document(&doc, &[]).has_code(Code::ControlOutOfRange));

        // Self control.
        let mut doc = valid_doc();
        doc.frames[0].arguments[0].constituents.push(Constituent::InfinitiveClause);
        doc.frames[0].arguments[0].control = vec![0];
        assert!(validate_document(&doc, &[]).has_code(Code::ControlSelf));

        // Oversized set.
        let mut doc = valid_doc();
        doc.frame_sets[0].frame_ids =
            vec![doc.frames[0].id.clone(); 5];
        assert!(validate_document(&doc, &[]).has_code(Code::SetSize));

        // Heterogeneous set.
        let mut doc = valid_doc();
        doc.frames.push(crate::lmf::FrameOut {
            id: "[Obj:sn];@être;%actif".into(),
            props: Default::default(),
            arguments: vec![],
        });
        doc.frame_sets[0].frame_ids.push("[Obj:sn];@être;%actif".into());
        assert!(validate_document(&doc, &[]).has_code(Code::SetHeterogeneous));

        // Illegal status.
        let mut doc = valid_doc();
        doc.entries[0].status = "half done".into();
        assert!(validate_document(&doc, &[]).has_code(Code::StatusValue));
    }

    #[test]
    fn unparseable_ids_and_duplicates_are_flagged() {
        let mut doc = valid_doc();
        doc.frames.push(crate::lmf::FrameOut {
            id: "not a mnemonic".into(),
            props: Default::default(),
            arguments: vec![],
        });
        let report = validate_document(&doc, &[]);
        assert!(report.has_code(Code::MnemonicParse));

        let mut doc = valid_doc();
        let copy = doc.entries[0].clone();
        doc.entries.push(copy);
        assert!(validate_document(&doc, &[]).has_code(Code::DuplicateId));
    }

    #[test]
    fn mwe_component_count_is_checked() {
        let mut doc = valid_doc();
        doc.mwe_patterns.push(crate::catalog::MwePatternDef {
            pattern_id: "en-V_y-V".into(),
            components: vec![],
        });
        doc.entries[0].mwe = Some(crate::lmf::MweRef {
            pattern_id: "en-V_y-V".into(),
            components: vec!["PRO_en".into()],
        });
        assert!(validate_document(&doc, &[]).has_code(Code::MweComponents));
    }

    #[test]
    fn strict_mode_escalates_compat_warnings() {
        let doc = valid_doc();
        let text = String::from_utf8(emit_lmf(&doc)).unwrap();
        let patched = text.replace(
            "<feat att=\"voice\"",
            "<feat attr=\"voice\"",
        );
        let lenient = validate_bytes(patched.as_bytes(), false).unwrap();
        assert!(lenient.passed());
        assert!(lenient.has_code(Code::AttrCompat));
        let strict = validate_bytes(patched.as_bytes(), true).unwrap();
        assert!(!strict.passed());
    }

    #[test]
    fn entry_without_behaviour_is_a_warning_only() {
        let mut doc = valid_doc();
        doc.entries[0].frame_set_refs.clear();
        let report = validate_document(&doc, &[]);
        assert!(report.passed());
        assert!(report.has_code(Code::NoFrames));
    }
}
