//! Reading LMF XML back into the document model.
//!
//! Structural faults (malformed XML, unknown elements, missing required
//! feats) are hard errors carrying the element path. Semantic faults
//! (dangling references, bad ids, illegal status values) are left for the
//! validator, except in [`read_lmf`] which also enforces referential
//! closure.

use super::model::{FrameOut, LexicalEntryOut, LmfDocument, Metadata, MweRef};
use super::xml::{parse_xml, XmlNode};
use crate::catalog::{Mood, MweComponentRole, MwePatternDef, Restriction};
use crate::error::{Error, Result};
use crate::frames::{
    Argument, Constituent, FrameSet, Introducers, LexemeProps, NonArgumentalClitic,
    SyntacticFunction, Voice,
};
use crate::report::{Code, Finding};

fn fail(path: &str, message: impl Into<String>) -> Error {
    Error::Document {
        path: path.to_string(),
        message: message.into(),
    }
}

/// Collect the `feat` children of a node as (att, val) pairs. The legacy
/// `attr=` spelling is accepted with a compatibility warning.
fn feats(node: &XmlNode, path: &str, warnings: &mut Vec<Finding>) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for child in node.children_named("feat") {
        let att = match (child.get_attr("att"), child.get_attr("attr")) {
            (Some(att), _) => att.to_string(),
            (None, Some(att)) => {
                warnings.push(Finding::warning(
                    Code::AttrCompat,
                    path.to_string(),
                    "feat uses attr= instead of att=",
                ));
                att.to_string()
            }
            (None, None) => return Err(fail(path, "feat without an att attribute")),
        };
        let val = child
            .get_attr("val")
            .ok_or_else(|| fail(path, format!("feat {att:?} without a val attribute")))?;
        out.push((att, val.to_string()));
    }
    Ok(out)
}

fn required<'a>(feats: &'a [(String, String)], att: &str, path: &str) -> Result<&'a str> {
    optional(feats, att).ok_or_else(|| fail(path, format!("missing required feat {att:?}")))
}

fn optional<'a>(feats: &'a [(String, String)], att: &str) -> Option<&'a str> {
    feats
        .iter()
        .find(|(a, _)| a == att)
        .map(|(_, v)| v.as_str())
}

fn expect_children(node: &XmlNode, path: &str, allowed: &[&str]) -> Result<()> {
    for child in &node.children {
        if !allowed.contains(&child.name.as_str()) {
            return Err(fail(path, format!("unknown element <{}>", child.name)));
        }
    }
    Ok(())
}

fn read_metadata(node: &XmlNode, warnings: &mut Vec<Finding>) -> Result<Metadata> {
    let path = "LexicalResource/GlobalInformation";
    expect_children(node, path, &["feat"])?;
    let feats = feats(node, path, warnings)?;
    let mut metadata = Metadata::default();
    for (att, val) in feats {
        match att.as_str() {
            "language" => metadata.language = val,
            "category" => metadata.category = val,
            "toolVersion" => metadata.tool_version = val,
            "source" => metadata.sources.push(val),
            other => return Err(fail(path, format!("unknown feat {other:?}"))),
        }
    }
    Ok(metadata)
}

fn read_entry(node: &XmlNode, warnings: &mut Vec<Finding>) -> Result<LexicalEntryOut> {
    let id = node
        .get_attr("id")
        .ok_or_else(|| fail("Lexicon/LexicalEntry", "missing id attribute"))?
        .to_string();
    let path = format!("Lexicon/LexicalEntry[{id}]");
    let status = node
        .get_attr("status")
        .ok_or_else(|| fail(&path, "missing status attribute"))?
        .to_string();
    for (attr, _) in &node.attrs {
        if !matches!(attr.as_str(), "id" | "status" | "mwePattern") {
            return Err(fail(&path, format!("unknown attribute {attr:?}")));
        }
    }
    expect_children(
        node,
        &path,
        &["feat", "Lemma", "ListOfComponents", "SyntacticBehaviour"],
    )?;

    let entry_feats = feats(node, &path, warnings)?;
    let part_of_speech = required(&entry_feats, "partOfSpeech", &path)?.to_string();

    let lemma_node = node
        .find_child("Lemma")
        .ok_or_else(|| fail(&path, "missing <Lemma>"))?;
    let lemma_path = format!("{path}/Lemma");
    expect_children(lemma_node, &lemma_path, &["feat"])?;
    let lemma_feats = feats(lemma_node, &lemma_path, warnings)?;
    let lemma = required(&lemma_feats, "writtenForm", &lemma_path)?.to_string();
    let translation = optional(&lemma_feats, "translation").map(String::from);
    let example = optional(&lemma_feats, "example").map(String::from);

    let mwe = match node.get_attr("mwePattern") {
        Some(pattern_id) => {
            let components = match node.find_child("ListOfComponents") {
                Some(list) => {
                    let list_path = format!("{path}/ListOfComponents");
                    expect_children(list, &list_path, &["Component"])?;
                    list.children_named("Component")
                        .map(|c| {
                            c.get_attr("entry")
                                .map(String::from)
                                .ok_or_else(|| fail(&list_path, "Component without entry"))
                        })
                        .collect::<Result<Vec<_>>>()?
                }
                None => Vec::new(),
            };
            Some(MweRef {
                pattern_id: pattern_id.to_string(),
                components,
            })
        }
        None => {
            if node.find_child("ListOfComponents").is_some() {
                return Err(fail(&path, "ListOfComponents without a mwePattern attribute"));
            }
            None
        }
    };

    let frame_set_refs = match node.find_child("SyntacticBehaviour") {
        Some(sb) => sb
            .get_attr("subcategorizationFrameSets")
            .ok_or_else(|| {
                fail(
                    &format!("{path}/SyntacticBehaviour"),
                    "missing subcategorizationFrameSets attribute",
                )
            })?
            .split_whitespace()
            .map(String::from)
            .collect(),
        None => Vec::new(),
    };

    Ok(LexicalEntryOut {
        id,
        status,
        part_of_speech,
        lemma,
        translation,
        example,
        frame_set_refs,
        mwe,
    })
}

fn read_frame_set(node: &XmlNode) -> Result<FrameSet> {
    let id = node
        .get_attr("id")
        .ok_or_else(|| fail("Lexicon/SubcategorizationFrameSet", "missing id attribute"))?
        .to_string();
    let path = format!("Lexicon/SubcategorizationFrameSet[{id}]");
    expect_children(node, &path, &[])?;
    let frame_ids = node
        .get_attr("subcategorizationFrames")
        .ok_or_else(|| fail(&path, "missing subcategorizationFrames attribute"))?
        .split_whitespace()
        .map(String::from)
        .collect();
    Ok(FrameSet { id, frame_ids })
}

fn parse_usize(value: &str, path: &str, what: &str) -> Result<usize> {
    value
        .parse()
        .map_err(|_| fail(path, format!("{what} {value:?} is not a number")))
}

fn read_argument(node: &XmlNode, path: &str, warnings: &mut Vec<Finding>) -> Result<Argument> {
    expect_children(node, path, &["feat"])?;
    let feats = feats(node, path, warnings)?;
    let id = parse_usize(required(&feats, "id", path)?, path, "argument id")?;
    let function_str = required(&feats, "syntacticFunction", path)?;
    let function = SyntacticFunction::from_str_opt(function_str)
        .ok_or_else(|| fail(path, format!("unknown syntacticFunction {function_str:?}")))?;
    let mut argument = Argument {
        id,
        function,
        constituents: Vec::new(),
        introducers: None,
        restriction: Vec::new(),
        optional: false,
        mood: None,
        control: Vec::new(),
        role: None,
    };
    for (att, val) in &feats {
        match att.as_str() {
            "id" | "syntacticFunction" => {}
            "syntacticConstituent" => {
                for token in val.split_whitespace() {
                    let c = Constituent::from_str_opt(token).ok_or_else(|| {
                        fail(path, format!("unknown syntacticConstituent {token:?}"))
                    })?;
                    argument.constituents.push(c);
                }
            }
            "introducer" => {
                let mut tokens: Vec<String> =
                    val.split_whitespace().map(String::from).collect();
                let locative = tokens.last().map(|t| t == "loc").unwrap_or(false);
                if locative {
                    tokens.pop();
                }
                argument.introducers = Some(Introducers {
                    prepositions: tokens,
                    locative,
                });
            }
            "optionality" => {
                if val != "optional" {
                    return Err(fail(path, format!("unknown optionality {val:?}")));
                }
                argument.optional = true;
            }
            "restriction" => {
                for token in val.split_whitespace() {
                    let r = Restriction::from_str_opt(token)
                        .ok_or_else(|| fail(path, format!("unknown restriction {token:?}")))?;
                    argument.restriction.push(r);
                }
            }
            "mood" => {
                argument.mood = Some(
                    Mood::from_str_opt(val)
                        .ok_or_else(|| fail(path, format!("unknown mood {val:?}")))?,
                );
            }
            "control" => {
                for token in val.split_whitespace() {
                    argument
                        .control
                        .push(parse_usize(token, path, "control id")?);
                }
            }
            "role" => argument.role = Some(val.clone()),
            other => return Err(fail(path, format!("unknown feat {other:?}"))),
        }
    }
    Ok(argument)
}

fn read_frame(node: &XmlNode, warnings: &mut Vec<Finding>) -> Result<FrameOut> {
    let id = node
        .get_attr("id")
        .ok_or_else(|| fail("Lexicon/SubcategorizationFrame", "missing id attribute"))?
        .to_string();
    let path = format!("Lexicon/SubcategorizationFrame[{id}]");
    expect_children(node, &path, &["LexemeProperty", "SyntacticArgument"])?;

    let props_node = node
        .find_child("LexemeProperty")
        .ok_or_else(|| fail(&path, "missing <LexemeProperty>"))?;
    let props_path = format!("{path}/LexemeProperty");
    expect_children(props_node, &props_path, &["feat"])?;
    let props_feats = feats(props_node, &props_path, warnings)?;
    let voice_str = required(&props_feats, "voice", &props_path)?;
    let mut props = LexemeProps {
        voice: Voice::from_str_opt(voice_str)
            .ok_or_else(|| fail(&props_path, format!("unknown voice {voice_str:?}")))?,
        auxiliary: required(&props_feats, "auxiliary", &props_path)?.to_string(),
        negation: None,
        non_argumental_clitic: None,
    };
    for (att, val) in &props_feats {
        match att.as_str() {
            "voice" | "auxiliary" => {}
            "negation" => props.negation = Some(val.clone()),
            "non-argumental-clitic" => {
                props.non_argumental_clitic =
                    Some(NonArgumentalClitic::from_str_opt(val).ok_or_else(|| {
                        fail(&props_path, format!("unknown non-argumental-clitic {val:?}"))
                    })?);
            }
            other => return Err(fail(&props_path, format!("unknown feat {other:?}"))),
        }
    }

    let mut arguments = Vec::new();
    for (i, arg_node) in node.children_named("SyntacticArgument").enumerate() {
        let arg_path = format!("{path}/SyntacticArgument[{i}]");
        arguments.push(read_argument(arg_node, &arg_path, warnings)?);
    }
    Ok(FrameOut {
        id,
        props,
        arguments,
    })
}

fn read_pattern(node: &XmlNode, warnings: &mut Vec<Finding>) -> Result<MwePatternDef> {
    let id = node
        .get_attr("id")
        .ok_or_else(|| fail("Lexicon/MWEPattern", "missing id attribute"))?
        .to_string();
    let path = format!("Lexicon/MWEPattern[{id}]");
    expect_children(node, &path, &["MWENode"])?;
    let root = node
        .find_child("MWENode")
        .ok_or_else(|| fail(&path, "missing root <MWENode>"))?;
    expect_children(root, &path, &["MWEEdge", "MWELex", "feat"])?;

    let rank_of = |lex: &XmlNode, lex_path: &str, warnings: &mut Vec<Finding>| -> Result<usize> {
        let feats = feats(lex, lex_path, warnings)?;
        parse_usize(
            required(&feats, "componentRank", lex_path)?,
            lex_path,
            "componentRank",
        )
    };

    let mut components = Vec::new();
    for child in &root.children {
        match child.name.as_str() {
            "MWELex" => {
                let rank = rank_of(child, &format!("{path}/MWELex"), warnings)?;
                components.push(MweComponentRole {
                    rank,
                    function: None,
                    constituent: None,
                });
            }
            "MWEEdge" => {
                let edge_path = format!("{path}/MWEEdge");
                expect_children(child, &edge_path, &["feat", "MWENode"])?;
                let edge_feats = feats(child, &edge_path, warnings)?;
                let function = required(&edge_feats, "function", &edge_path)?.to_string();
                let inner = child
                    .find_child("MWENode")
                    .ok_or_else(|| fail(&edge_path, "missing <MWENode>"))?;
                let inner_path = format!("{edge_path}/MWENode");
                expect_children(inner, &inner_path, &["feat", "MWELex"])?;
                let inner_feats = feats(inner, &inner_path, warnings)?;
                let constituent =
                    optional(&inner_feats, "syntacticConstituent").map(String::from);
                let lex = inner
                    .find_child("MWELex")
                    .ok_or_else(|| fail(&inner_path, "missing <MWELex>"))?;
                let rank = rank_of(lex, &format!("{inner_path}/MWELex"), warnings)?;
                components.push(MweComponentRole {
                    rank,
                    function: Some(function),
                    constituent,
                });
            }
            "feat" => {}
            other => return Err(fail(&path, format!("unknown element <{other}>"))),
        }
    }
    Ok(MwePatternDef {
        pattern_id: id,
        components,
    })
}

/// Structural read: parse the XML and build the document without semantic
/// checks. Returns compatibility warnings alongside.
pub fn read_lmf_lenient(bytes: &[u8]) -> Result<(LmfDocument, Vec<Finding>)> {
    let root = parse_xml(bytes)?;
    if root.name != "LexicalResource" {
        return Err(fail(
            &root.name,
            format!("expected <LexicalResource> root, found <{}>", root.name),
        ));
    }
    expect_children(&root, "LexicalResource", &["GlobalInformation", "Lexicon"])?;
    let mut warnings = Vec::new();

    let metadata = match root.find_child("GlobalInformation") {
        Some(node) => read_metadata(node, &mut warnings)?,
        None => Metadata::default(),
    };
    let lexicon = root
        .find_child("Lexicon")
        .ok_or_else(|| fail("LexicalResource", "missing <Lexicon>"))?;
    expect_children(
        lexicon,
        "LexicalResource/Lexicon",
        &[
            "LexicalEntry",
            "SubcategorizationFrameSet",
            "SubcategorizationFrame",
            "MWEPattern",
        ],
    )?;

    let mut doc = LmfDocument {
        metadata,
        ..Default::default()
    };
    for child in &lexicon.children {
        match child.name.as_str() {
            "LexicalEntry" => doc.entries.push(read_entry(child, &mut warnings)?),
            "SubcategorizationFrameSet" => doc.frame_sets.push(read_frame_set(child)?),
            "SubcategorizationFrame" => doc.frames.push(read_frame(child, &mut warnings)?),
            "MWEPattern" => doc.mwe_patterns.push(read_pattern(child, &mut warnings)?),
            _ => unreachable!("filtered by expect_children"),
        }
    }
    Ok((doc, warnings))
}

/// Every dangling reference in the document: entry to frame set, frame set
/// to frame, entry to MWE pattern. Component pseudo-entries (`PRO_en`,
/// `V_coûter`) are referenced by design without being entries and are not
/// checked.
pub fn dangling_references(doc: &LmfDocument) -> Vec<Finding> {
    let mut findings = Vec::new();
    for entry in &doc.entries {
        let path = format!("Lexicon/LexicalEntry[{}]", entry.id);
        for set_id in &entry.frame_set_refs {
            if doc.frame_set(set_id).is_none() {
                findings.push(Finding::error(
                    Code::DanglingRef,
                    path.clone(),
                    format!("entry {} references missing frame set {set_id:?}", entry.id),
                ));
            }
        }
        if let Some(mwe) = &entry.mwe {
            if doc.mwe_pattern(&mwe.pattern_id).is_none() {
                findings.push(Finding::error(
                    Code::DanglingRef,
                    path.clone(),
                    format!(
                        "entry {} references missing MWE pattern {:?}",
                        entry.id, mwe.pattern_id
                    ),
                ));
            }
        }
    }
    for set in &doc.frame_sets {
        let path = format!("Lexicon/SubcategorizationFrameSet[{}]", set.id);
        for frame_id in &set.frame_ids {
            if doc.frame(frame_id).is_none() {
                findings.push(Finding::error(
                    Code::DanglingRef,
                    path.clone(),
                    format!("set {:?} references missing frame {frame_id:?}", set.id),
                ));
            }
        }
    }
    findings
}

/// Read a document and enforce referential closure: the first dangling
/// reference is an error naming both ids.
pub fn read_lmf(bytes: &[u8]) -> Result<(LmfDocument, Vec<Finding>)> {
    let (doc, warnings) = read_lmf_lenient(bytes)?;
    if let Some(finding) = dangling_references(&doc).into_iter().next() {
        return Err(Error::Document {
            path: finding.location,
            message: finding.message,
        });
    }
    Ok((doc, warnings))
}
