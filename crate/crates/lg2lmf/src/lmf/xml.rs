//! Minimal XML reader/writer for the lexicon dialect.
//!
//! The dialect is a pure element/attribute tree: all data rides in
//! attributes (`<feat att="..." val="..."/>`), elements never carry text.
//! The reader accepts an XML declaration, comments and both quote styles;
//! the writer produces the canonical form: LF line endings, two-space
//! indentation, one element per line, self-closed empty elements.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XmlNode {
    pub name: String,
    pub attrs: Vec<(String, String)>,
    pub children: Vec<XmlNode>,
}

impl XmlNode {
    pub fn new(name: impl Into<String>) -> Self {
        XmlNode {
            name: name.into(),
            attrs: Vec::new(),
            children: Vec::new(),
        }
    }

    pub fn attr(mut self, name: impl Into<String>, value: impl Into<String>) -> Self {
        self.attrs.push((name.into(), value.into()));
        self
    }

    pub fn child(mut self, child: XmlNode) -> Self {
        self.children.push(child);
        self
    }

    pub fn get_attr(&self, name: &str) -> Option<&str> {
        self.attrs
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v.as_str())
    }

    pub fn find_child(&self, name: &str) -> Option<&XmlNode> {
        self.children.iter().find(|c| c.name == name)
    }

    pub fn children_named<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a XmlNode> {
        self.children.iter().filter(move |c| c.name == name)
    }
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

struct Reader<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
    _input: &'a str,
}

impl<'a> Reader<'a> {
    fn new(input: &'a str) -> Self {
        Reader {
            chars: input.chars().collect(),
            pos: 0,
            line: 1,
            column: 1,
            _input: input,
        }
    }

    fn fail(&self, message: impl Into<String>) -> Error {
        Error::Xml {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, offset: usize) -> Option<char> {
        self.chars.get(self.pos + offset).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.bump() {
            Some(got) if got == c => Ok(()),
            Some(got) => Err(self.fail(format!("expected {c:?}, found {got:?}"))),
            None => Err(self.fail(format!("expected {c:?}, found end of input"))),
        }
    }

    fn starts_with(&self, s: &str) -> bool {
        s.chars()
            .enumerate()
            .all(|(i, c)| self.peek_at(i) == Some(c))
    }

    fn skip(&mut self, n: usize) {
        for _ in 0..n {
            self.bump();
        }
    }

    fn skip_whitespace(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn skip_misc(&mut self) -> Result<()> {
        loop {
            self.skip_whitespace();
            if self.starts_with("<!--") {
                self.skip(4);
                while !self.starts_with("-->") {
                    if self.bump().is_none() {
                        return Err(self.fail("unterminated comment"));
                    }
                }
                self.skip(3);
            } else if self.starts_with("<?") {
                self.skip(2);
                while !self.starts_with("?>") {
                    if self.bump().is_none() {
                        return Err(self.fail("unterminated processing instruction"));
                    }
                }
                self.skip(2);
            } else {
                return Ok(());
            }
        }
    }

    fn name(&mut self) -> Result<String> {
        let mut out = String::new();
        while let Some(c) = self.peek() {
            if c.is_alphanumeric() || matches!(c, '_' | '-' | '.') {
                out.push(c);
                self.bump();
            } else {
                break;
            }
        }
        if out.is_empty() {
            Err(self.fail("expected a name"))
        } else {
            Ok(out)
        }
    }

    fn entity(&mut self) -> Result<char> {
        // Called after consuming '&'.
        let mut entity = String::new();
        loop {
            match self.bump() {
                Some(';') => break,
                Some(c) => entity.push(c),
                None => return Err(self.fail("unterminated entity reference")),
            }
            if entity.len() > 8 {
                return Err(self.fail(format!("malformed entity reference &{entity}")));
            }
        }
        match entity.as_str() {
            "amp" => Ok('&'),
            "lt" => Ok('<'),
            "gt" => Ok('>'),
            "quot" => Ok('"'),
            "apos" => Ok('\''),
            _ => {
                let code = if let Some(hex) = entity.strip_prefix("#x") {
                    u32::from_str_radix(hex, 16).ok()
                } else if let Some(dec) = entity.strip_prefix('#') {
                    dec.parse().ok()
                } else {
                    None
                };
                code.and_then(char::from_u32)
                    .ok_or_else(|| self.fail(format!("unknown entity &{entity};")))
            }
        }
    }

    fn attr_value(&mut self) -> Result<String> {
        let quote = match self.bump() {
            Some(c @ ('"' | '\'')) => c,
            _ => return Err(self.fail("expected a quoted attribute value")),
        };
        let mut out = String::new();
        loop {
            match self.bump() {
                Some(c) if c == quote => break,
                Some('&') => out.push(self.entity()?),
                Some('<') => return Err(self.fail("'<' inside attribute value")),
                Some(c) => out.push(c),
                None => return Err(self.fail("unterminated attribute value")),
            }
        }
        Ok(out)
    }

    fn element(&mut self) -> Result<XmlNode> {
        self.expect('<')?;
        let name = self.name()?;
        let mut node = XmlNode::new(name);
        loop {
            self.skip_whitespace();
            match self.peek() {
                Some('/') => {
                    self.bump();
                    self.expect('>')?;
                    return Ok(node);
                }
                Some('>') => {
                    self.bump();
                    break;
                }
                Some(_) => {
                    let attr_name = self.name()?;
                    if node.attrs.iter().any(|(n, _)| *n == attr_name) {
                        return Err(self.fail(format!("duplicate attribute {attr_name:?}")));
                    }
                    self.skip_whitespace();
                    self.expect('=')?;
                    self.skip_whitespace();
                    let value = self.attr_value()?;
                    node.attrs.push((attr_name, value));
                }
                None => return Err(self.fail("unterminated start tag")),
            }
        }
        // Children until the matching end tag. The dialect has no text
        // content.
        loop {
            self.skip_misc()?;
            if self.starts_with("</") {
                self.skip(2);
                let end = self.name()?;
                if end != node.name {
                    return Err(self.fail(format!(
                        "end tag </{end}> does not match <{}>",
                        node.name
                    )));
                }
                self.skip_whitespace();
                self.expect('>')?;
                return Ok(node);
            }
            match self.peek() {
                Some('<') => node.children.push(self.element()?),
                Some(c) => {
                    return Err(self.fail(format!(
                        "unexpected text content starting with {c:?} inside <{}>",
                        node.name
                    )))
                }
                None => {
                    return Err(self.fail(format!("missing end tag for <{}>", node.name)))
                }
            }
        }
    }
}

/// Parse one document (or fragment) into its root element.
pub fn parse_xml(bytes: &[u8]) -> Result<XmlNode> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::Xml {
        line: 0,
        column: 0,
        message: format!("not valid UTF-8: {e}"),
    })?;
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let mut reader = Reader::new(text);
    reader.skip_misc()?;
    let root = reader.element()?;
    reader.skip_misc()?;
    if reader.peek().is_some() {
        return Err(reader.fail("content after the root element"));
    }
    Ok(root)
}

// ---------------------------------------------------------------------------
// Writing
// ---------------------------------------------------------------------------

fn escape_attr(value: &str, out: &mut String) {
    for c in value.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            _ => out.push(c),
        }
    }
}

fn write_node(node: &XmlNode, depth: usize, out: &mut String) {
    for _ in 0..depth {
        out.push_str("  ");
    }
    out.push('<');
    out.push_str(&node.name);
    for (name, value) in &node.attrs {
        out.push(' ');
        out.push_str(name);
        out.push_str("=\"");
        escape_attr(value, out);
        out.push('"');
    }
    if node.children.is_empty() {
        out.push_str("/>\n");
        return;
    }
    out.push_str(">\n");
    for child in &node.children {
        write_node(child, depth + 1, out);
    }
    for _ in 0..depth {
        out.push_str("  ");
    }
    out.push_str("</");
    out.push_str(&node.name);
    out.push_str(">\n");
}

/// Render a node in canonical layout, without an XML declaration.
pub fn render(node: &XmlNode) -> String {
    let mut out = String::new();
    write_node(node, 0, &mut out);
    out
}

/// Render a full document: XML declaration plus the canonical layout.
pub fn render_document(root: &XmlNode) -> String {
    let mut out = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    write_node(root, 0, &mut out);
    out
}
