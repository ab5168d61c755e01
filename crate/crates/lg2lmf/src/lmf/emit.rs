//! Serialization of the document to LMF XML.
//!
//! Data rides in `<feat att="..." val="..."/>` children; multi-valued
//! attributes are space-separated inside `val`. Output is byte-deterministic:
//! canonical layout, blocks in a fixed order, each block sorted by id by the
//! producer.

use super::model::{FrameOut, LexicalEntryOut, LmfDocument, Metadata};
use super::xml::{render, render_document, XmlNode};
use crate::catalog::MwePatternDef;
use crate::frames::{Argument, FrameSet, LexemeProps};

fn feat(att: &str, val: impl Into<String>) -> XmlNode {
    XmlNode::new("feat").attr("att", att).attr("val", val)
}

fn metadata_node(metadata: &Metadata) -> XmlNode {
    let mut node = XmlNode::new("GlobalInformation")
        .child(feat("language", &metadata.language))
        .child(feat("category", &metadata.category))
        .child(feat("toolVersion", &metadata.tool_version));
    for source in &metadata.sources {
        node = node.child(feat("source", source));
    }
    node
}

fn entry_node(entry: &LexicalEntryOut) -> XmlNode {
    let mut node = XmlNode::new("LexicalEntry")
        .attr("id", &entry.id)
        .attr("status", &entry.status);
    if let Some(mwe) = &entry.mwe {
        node = node.attr("mwePattern", &mwe.pattern_id);
    }
    node = node.child(feat("partOfSpeech", &entry.part_of_speech));
    let mut lemma = XmlNode::new("Lemma").child(feat("writtenForm", &entry.lemma));
    if let Some(translation) = &entry.translation {
        lemma = lemma.child(feat("translation", translation));
    }
    if let Some(example) = &entry.example {
        lemma = lemma.child(feat("example", example));
    }
    node = node.child(lemma);
    if let Some(mwe) = &entry.mwe {
        let mut components = XmlNode::new("ListOfComponents");
        for component in &mwe.components {
            components = components.child(XmlNode::new("Component").attr("entry", component));
        }
        node = node.child(components);
    }
    if !entry.frame_set_refs.is_empty() {
        node = node.child(
            XmlNode::new("SyntacticBehaviour")
                .attr("subcategorizationFrameSets", entry.frame_set_refs.join(" ")),
        );
    }
    node
}

fn frame_set_node(set: &FrameSet) -> XmlNode {
    XmlNode::new("SubcategorizationFrameSet")
        .attr("id", &set.id)
        .attr("subcategorizationFrames", set.frame_ids.join(" "))
}

fn props_node(props: &LexemeProps) -> XmlNode {
    let mut node = XmlNode::new("LexemeProperty")
        .child(feat("voice", props.voice.as_str()))
        .child(feat("auxiliary", &props.auxiliary));
    if let Some(negation) = &props.negation {
        node = node.child(feat("negation", negation));
    }
    if let Some(clitic) = &props.non_argumental_clitic {
        node = node.child(feat("non-argumental-clitic", clitic.as_str()));
    }
    node
}

fn argument_node(arg: &Argument) -> XmlNode {
    let mut node = XmlNode::new("SyntacticArgument")
        .child(feat("id", arg.id.to_string()))
        .child(feat("syntacticFunction", arg.function.as_str()));
    if !arg.constituents.is_empty() {
        let val = arg
            .constituents
            .iter()
            .map(|c| c.as_str())
            .collect::<Vec<_>>()
            .join(" ");
        node = node.child(feat("syntacticConstituent", val));
    }
    if let Some(intro) = &arg.introducers {
        let mut tokens = intro.prepositions.clone();
        if intro.locative {
            tokens.push("loc".to_string());
        }
        node = node.child(feat("introducer", tokens.join(" ")));
    }
    if arg.optional {
        node = node.child(feat("optionality", "optional"));
    }
    if !arg.restriction.is_empty() {
        let val = arg
            .restriction
            .iter()
            .map(|r| r.as_str())
            .collect::<Vec<_>>()
            .join(" ");
        node = node.child(feat("restriction", val));
    }
    if let Some(mood) = &arg.mood {
        node = node.child(feat("mood", mood.as_str()));
    }
    if !arg.control.is_empty() {
        let val = arg
            .control
            .iter()
            .map(|id| id.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        node = node.child(feat("control", val));
    }
    if let Some(role) = &arg.role {
        node = node.child(feat("role", role));
    }
    node
}

fn frame_node(frame: &FrameOut) -> XmlNode {
    let mut node = XmlNode::new("SubcategorizationFrame")
        .attr("id", &frame.id)
        .child(props_node(&frame.props));
    for arg in &frame.arguments {
        node = node.child(argument_node(arg));
    }
    node
}

fn pattern_node(pattern: &MwePatternDef) -> XmlNode {
    let mut root = XmlNode::new("MWENode");
    for component in &pattern.components {
        let lex = XmlNode::new("MWELex").child(feat("componentRank", component.rank.to_string()));
        match &component.function {
            Some(function) => {
                let mut inner = XmlNode::new("MWENode");
                if let Some(constituent) = &component.constituent {
                    inner = inner.child(feat("syntacticConstituent", constituent));
                }
                inner = inner.child(lex);
                root = root.child(
                    XmlNode::new("MWEEdge")
                        .child(feat("function", function))
                        .child(inner),
                );
            }
            None => root = root.child(lex),
        }
    }
    XmlNode::new("MWEPattern")
        .attr("id", &pattern.pattern_id)
        .child(root)
}

fn document_node(doc: &LmfDocument) -> XmlNode {
    let mut lexicon = XmlNode::new("Lexicon");
    for entry in &doc.entries {
        lexicon = lexicon.child(entry_node(entry));
    }
    for set in &doc.frame_sets {
        lexicon = lexicon.child(frame_set_node(set));
    }
    for frame in &doc.frames {
        lexicon = lexicon.child(frame_node(frame));
    }
    for pattern in &doc.mwe_patterns {
        lexicon = lexicon.child(pattern_node(pattern));
    }
    XmlNode::new("LexicalResource")
        .child(metadata_node(&doc.metadata))
        .child(lexicon)
}

/// Emit the document as UTF-8 XML bytes; pure function of the document.
pub fn emit_lmf(doc: &LmfDocument) -> Vec<u8> {
    render_document(&document_node(doc)).into_bytes()
}

/// Canonical XML of one element of the emitted document, located by element
/// name and `id` attribute (entries, frames, sets, patterns).
pub fn emit_element(doc: &LmfDocument, name: &str, id: &str) -> Option<String> {
    let root = document_node(doc);
    fn find<'a>(node: &'a XmlNode, name: &str, id: &str) -> Option<&'a XmlNode> {
        if node.name == name && node.get_attr("id") == Some(id) {
            return Some(node);
        }
        node.children.iter().find_map(|c| find(c, name, id))
    }
    find(&root, name, id).map(render)
}

/// Canonical XML of one entry's SyntacticBehaviour element.
pub fn emit_behaviour(doc: &LmfDocument, entry_id: &str) -> Option<String> {
    let entry = doc.entry(entry_id)?;
    if entry.frame_set_refs.is_empty() {
        return None;
    }
    let node = entry_node(entry);
    node.find_child("SyntacticBehaviour").map(render)
}
