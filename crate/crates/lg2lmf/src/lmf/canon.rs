//! Canonical form for golden-file comparison.
//!
//! Canonicalization parses any well-formed document of the dialect and
//! re-emits it with normalized whitespace and indentation, a fixed attribute
//! order (id, status, then others alphabetically), the legacy `attr=`
//! spelling rewritten to `att=`, and whitespace runs inside attribute values
//! collapsed to single spaces. Child order is preserved. The result carries
//! no XML declaration and the function is idempotent.

use super::xml::{parse_xml, render, XmlNode};
use crate::error::Result;

fn attr_rank(name: &str) -> (u8, &str) {
    match name {
        "id" => (0, name),
        "status" => (1, name),
        _ => (2, name),
    }
}

fn collapse_whitespace(value: &str) -> String {
    value.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn normalize(node: &mut XmlNode) {
    for (name, value) in &mut node.attrs {
        if node.name == "feat" && name == "attr" {
            *name = "att".to_string();
        }
        *value = collapse_whitespace(value);
    }
    node.attrs
        .sort_by(|(a, _), (b, _)| attr_rank(a).cmp(&attr_rank(b)));
    for child in &mut node.children {
        normalize(child);
    }
}

/// Canonicalize one document or fragment.
pub fn canonicalize(bytes: &[u8]) -> Result<Vec<u8>> {
    let mut root = parse_xml(bytes)?;
    normalize(&mut root);
    Ok(render(&root).into_bytes())
}
