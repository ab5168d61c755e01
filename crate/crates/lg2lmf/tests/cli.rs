//! End-to-end checks of the command-line interface: exit codes, the
//! determinism contract across `--jobs`, and the validate/stats/extract
//! subcommands.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn lg2lmf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lg2lmf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn convert_corpus(out: &Path, extra: &[&str]) -> Output {
    let root = fixtures().join("corpus");
    let tables = root.join("tables");
    let classes = root.join("classes-verb.csv");
    let catalog = root.join("catalog-verb.cfg");
    let mut args: Vec<&str> = vec![
        "convert",
        "--tables",
        tables.to_str().unwrap(),
        "--classes",
        classes.to_str().unwrap(),
        "--catalog",
        catalog.to_str().unwrap(),
        "--category",
        "verb",
        "--out",
        out.to_str().unwrap(),
    ];
    args.extend(extra);
    lg2lmf(&args)
}

#[test]
fn convert_writes_the_document_and_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("lexicon.xml");
    let result = convert_corpus(&out, &[]);
    assert!(result.status.success(), "{result:?}");
    let stdout = String::from_utf8(result.stdout).unwrap();
    assert!(stdout.contains("entries:         125"), "{stdout}");
    assert!(stdout.contains("warnings:        0"), "{stdout}");
    let xml = fs::read_to_string(&out).unwrap();
    assert!(xml.starts_with("<?xml version=\"1.0\" encoding=\"UTF-8\"?>"));
    assert!(xml.contains("id=\"V_32RA_96\""));
}

#[test]
fn convert_is_byte_identical_across_job_counts() {
    let dir = tempfile::tempdir().unwrap();
    let reference = dir.path().join("jobs1.xml");
    assert!(convert_corpus(&reference, &["--jobs", "1"]).status.success());
    let reference_bytes = fs::read(&reference).unwrap();
    for jobs in ["4", "8"] {
        let out = dir.path().join(format!("jobs{jobs}.xml"));
        assert!(convert_corpus(&out, &["--jobs", jobs]).status.success());
        assert_eq!(
            fs::read(&out).unwrap(),
            reference_bytes,
            "--jobs {jobs} changed the output"
        );
    }
}

#[test]
fn convert_exclude_status_filters_entries() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("filtered.xml");
    let result = convert_corpus(&out, &["--exclude-status", "to-be-encoded"]);
    assert!(result.status.success(), "{result:?}");
    let stdout = String::from_utf8(result.stdout).unwrap();
    // 125 entries minus the 118 unencoded fillers.
    assert!(stdout.contains("entries:         7"), "{stdout}");
}

#[test]
fn convert_dump_intermediate_writes_the_tree() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("lexicon.xml");
    let dump = dir.path().join("lglex.txt");
    let result = convert_corpus(&out, &["--dump-intermediate", dump.to_str().unwrap()]);
    assert!(result.status.success(), "{result:?}");
    let text = fs::read_to_string(&dump).unwrap();
    assert!(text.contains("entry V_32RA_96"), "{text}");
    assert!(text.contains("  lemma: confirmer"));
    assert!(text.contains("    constructions:\n"));
}

#[test]
fn convert_on_malformed_table_names_file_and_row() {
    let dir = tempfile::tempdir().unwrap();
    let tables = dir.path().join("tables");
    fs::create_dir(&tables).unwrap();
    fs::write(tables.join("9Z.csv"), "N0 =: Nhum;<ENT>\n+;casser\n+\n").unwrap();
    let classes = dir.path().join("classes.csv");
    fs::write(&classes, "<CLASS>;N0 =: Nhum\n9Z;o\n").unwrap();
    let catalog = dir.path().join("catalog.cfg");
    fs::write(&catalog, "").unwrap();
    let out = dir.path().join("out.xml");
    let result = lg2lmf(&[
        "convert",
        "--tables",
        tables.to_str().unwrap(),
        "--classes",
        classes.to_str().unwrap(),
        "--catalog",
        catalog.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(1));
    let stderr = String::from_utf8(result.stderr).unwrap();
    assert!(stderr.contains("9Z"), "{stderr}");
    assert!(stderr.contains("row 2"), "{stderr}");
}

#[test]
fn convert_honours_the_delimiter_flag() {
    let dir = tempfile::tempdir().unwrap();
    let tables = dir.path().join("tables");
    fs::create_dir(&tables).unwrap();
    fs::write(tables.join("7T.csv"), "N0 =: Nhum\tC1\t<ENT>\n+\t+\tglisser\n").unwrap();
    let classes = dir.path().join("classes.csv");
    fs::write(&classes, "<CLASS>\tN0 =: Nhum\tC1\n7T\to\to\n").unwrap();
    let catalog = dir.path().join("catalog.cfg");
    fs::write(
        &catalog,
        "[feature] N0 =: Nhum\nkind = restriction\nslot = 0\nvalue = human\n\n\
         [feature] C1\nkind = construction\npattern = G\n\n\
         [construction] G\narg = 0 Suj cln\n",
    )
    .unwrap();
    let out = dir.path().join("out.xml");
    let result = lg2lmf(&[
        "convert",
        "--tables",
        tables.to_str().unwrap(),
        "--classes",
        classes.to_str().unwrap(),
        "--catalog",
        catalog.to_str().unwrap(),
        "--delimiter",
        "\t",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(result.status.success(), "{result:?}");
    let xml = fs::read_to_string(&out).unwrap();
    assert!(xml.contains("glisser"), "{xml}");
    assert!(xml.contains("[Suj:cln|sn];@SujNhum;%actif"), "{xml}");
}

#[test]
fn empty_tables_directory_is_a_usage_fault() {
    let dir = tempfile::tempdir().unwrap();
    let tables = dir.path().join("tables");
    fs::create_dir(&tables).unwrap();
    let classes = dir.path().join("classes.csv");
    fs::write(&classes, "<CLASS>;f\nT;o\n").unwrap();
    let catalog = dir.path().join("catalog.cfg");
    fs::write(&catalog, "").unwrap();
    let out = dir.path().join("out.xml");
    let result = lg2lmf(&[
        "convert",
        "--tables",
        tables.to_str().unwrap(),
        "--classes",
        classes.to_str().unwrap(),
        "--catalog",
        catalog.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(2));
}

#[test]
fn usage_faults_exit_2() {
    let result = lg2lmf(&["convert", "--tables"]);
    assert_eq!(result.status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.xml");
    let result = convert_corpus(&out, &["--delimiter", "ab"]);
    assert_eq!(result.status.code(), Some(2));
    let result = convert_corpus(&out, &["--jobs", "0"]);
    assert_eq!(result.status.code(), Some(2));
}

#[test]
fn validate_passes_emitted_documents_and_flags_faults() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("lexicon.xml");
    assert!(convert_corpus(&out, &[]).status.success());

    let result = lg2lmf(&["validate", out.to_str().unwrap()]);
    assert!(result.status.success(), "{result:?}");
    let stdout = String::from_utf8(result.stdout).unwrap();
    assert!(stdout.contains("pass: 0 error(s)"), "{stdout}");

    // Inject an out-of-range control.
    let xml = fs::read_to_string(&out).unwrap();
    let needle = "<feat att=\"control\" val=\"1\"/>";
    assert!(xml.contains(needle));
    let broken = dir.path().join("broken.xml");
    fs::write(&broken, xml.replace(needle, "<feat att=\"control\" val=\"7\"/>")).unwrap();
    let result = lg2lmf(&["validate", broken.to_str().unwrap()]);
    assert_eq!(result.status.code(), Some(1));
    let stdout = String::from_utf8(result.stdout).unwrap();
    assert!(stdout.contains("CONTROL_OUT_OF_RANGE"), "{stdout}");
}

#[test]
fn validate_strict_escalates_attr_compat() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("lexicon.xml");
    assert!(convert_corpus(&out, &[]).status.success());
    let xml = fs::read_to_string(&out).unwrap();
    let patched = dir.path().join("legacy.xml");
    fs::write(
        &patched,
        xml.replace(
            "<feat att=\"function\" val=\"adjunct\"/>",
            "<feat attr=\"function\" val=\"adjunct\"/>",
        ),
    )
    .unwrap();
    assert!(lg2lmf(&["validate", patched.to_str().unwrap()])
        .status
        .success());
    let strict = lg2lmf(&["validate", patched.to_str().unwrap(), "--strict"]);
    assert_eq!(strict.status.code(), Some(1));
}

#[test]
fn stats_renders_text_and_versioned_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("lexicon.xml");
    assert!(convert_corpus(&out, &[]).status.success());

    let result = lg2lmf(&["stats", out.to_str().unwrap(), "--format", "text"]);
    assert!(result.status.success());
    let text = String::from_utf8(result.stdout).unwrap();
    assert!(text.contains("frames:          11"), "{text}");
    assert!(text.contains("set sizes:       1x5 2x3"), "{text}");

    let result = lg2lmf(&["stats", out.to_str().unwrap(), "--format", "json"]);
    assert!(result.status.success());
    let json: serde_json::Value =
        serde_json::from_slice(&result.stdout).expect("stats json parses");
    assert_eq!(json["schema"], 1);
    assert_eq!(json["entries"], 125);
    assert_eq!(json["distinct_lemmas"], 124);
    assert_eq!(json["frames"], 11);
    assert_eq!(json["frame_sets"], 8);
    assert_eq!(json["set_size_histogram"]["1"], 5);
    assert_eq!(json["set_size_histogram"]["2"], 3);
    assert_eq!(json["mwe_entries"], 2);
}

#[test]
fn stats_aborts_on_invalid_documents() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("lexicon.xml");
    assert!(convert_corpus(&out, &[]).status.success());
    let xml = fs::read_to_string(&out).unwrap();
    let broken = dir.path().join("broken.xml");
    fs::write(
        &broken,
        xml.replace("status=\"completed\"", "status=\"finished\""),
    )
    .unwrap();
    let result = lg2lmf(&["stats", broken.to_str().unwrap()]);
    assert_eq!(result.status.code(), Some(1));
}

#[test]
fn extract_prints_one_entry_in_canonical_form() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("lexicon.xml");
    assert!(convert_corpus(&out, &[]).status.success());
    let result = lg2lmf(&["extract", out.to_str().unwrap(), "--entry", "V_5_25"]);
    assert!(result.status.success());
    let xml = String::from_utf8(result.stdout).unwrap();
    assert!(xml.starts_with("<LexicalEntry id=\"V_5_25\""), "{xml}");
    assert!(xml.contains("PRO_en"));

    let missing = lg2lmf(&["extract", out.to_str().unwrap(), "--entry", "V_99_1"]);
    assert_eq!(missing.status.code(), Some(1));
}
