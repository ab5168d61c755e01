//! Feature identifiers and the catalog mapping each feature to a
//! compilation action.
//!
//! The catalog is data, not code: a line-oriented configuration file declares
//! what every feature means for the compiler (`[feature]` blocks), the
//! argument shape of each construction (`[construction]` blocks) and the
//! multiword-expression patterns (`[pattern]` blocks). Declaration order
//! matters: @-labels appear in mnemonics in the order of their contributing
//! features.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::report::{Code, Finding};
use crate::table::Category;

/// Normalize a feature identifier: collapse whitespace and spell the
/// assignment operator `=:` (the source tables mix `=` and `=:`).
pub fn normalize_feature_id(raw: &str) -> String {
    raw.split_whitespace()
        .map(|token| if token == "=" { "=:" } else { token })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Argument slot of a distributional feature: the n of `Nn`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArgSlot(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FeatureParse {
    /// `N0 =: Nhum`-style distributional feature.
    Distribution { slot: ArgSlot, shape: String },
    /// `N0 V de N2`-style construction feature.
    Construction { pattern: String },
    /// `Ppv =: en figé`-style clitic feature.
    CliticSpec { value: String, frozen: bool },
    /// No grammar rule matched.
    Opaque,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureExpr {
    /// Verbatim identifier as read from the source.
    pub raw: String,
    pub parsed: FeatureParse,
}

impl FeatureExpr {
    /// Canonical rendering of the parsed form; equals the normalized raw id
    /// for every variant except `Opaque`.
    pub fn render(&self) -> String {
        match &self.parsed {
            FeatureParse::Distribution { slot, shape } => format!("N{} =: {shape}", slot.0),
            FeatureParse::Construction { pattern } => pattern.clone(),
            FeatureParse::CliticSpec { value, frozen } => {
                if *frozen {
                    format!("Ppv =: {value} figé")
                } else {
                    format!("Ppv =: {value}")
                }
            }
            FeatureParse::Opaque => self.raw.clone(),
        }
    }
}

/// Classify a feature identifier. Total: anything unrecognized is `Opaque`.
pub fn parse_feature_id(raw: &str) -> FeatureExpr {
    let normalized = normalize_feature_id(raw);
    let tokens: Vec<&str> = normalized.split(' ').collect();

    let parsed = if tokens.len() >= 3 && tokens[0] == "Ppv" && tokens[1] == "=:" {
        let frozen = tokens.last() == Some(&"figé");
        let value_tokens = if frozen {
            &tokens[2..tokens.len() - 1]
        } else {
            &tokens[2..]
        };
        if value_tokens.is_empty() {
            FeatureParse::Opaque
        } else {
            FeatureParse::CliticSpec {
                value: value_tokens.join(" "),
                frozen,
            }
        }
    } else if tokens.len() >= 3 && tokens[1] == "=:" && is_slot_token(tokens[0]) {
        FeatureParse::Distribution {
            slot: ArgSlot(tokens[0][1..].parse().expect("checked digits")),
            shape: tokens[2..].join(" "),
        }
    } else if tokens.len() >= 2 && tokens.contains(&"V") {
        FeatureParse::Construction {
            pattern: normalized.clone(),
        }
    } else {
        FeatureParse::Opaque
    };

    FeatureExpr {
        raw: raw.to_string(),
        parsed,
    }
}

fn is_slot_token(token: &str) -> bool {
    token.len() >= 2
        && token.starts_with('N')
        && token[1..].chars().all(|c| c.is_ascii_digit())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Restriction {
    Human,
    NonHuman,
}

impl Restriction {
    pub fn as_str(&self) -> &'static str {
        match self {
            Restriction::Human => "human",
            Restriction::NonHuman => "non-human",
        }
    }

    pub fn from_str_opt(s: &str) -> Option<Restriction> {
        match s {
            "human" => Some(Restriction::Human),
            "non-human" => Some(Restriction::NonHuman),
            _ => None,
        }
    }

    /// Suffix used when deriving the mnemonic @-label.
    pub fn label_suffix(&self) -> &'static str {
        match self {
            Restriction::Human => "Nhum",
            Restriction::NonHuman => "N-hum",
        }
    }
}

impl fmt::Display for Restriction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mood {
    Indicative,
    Subjunctive,
}

impl Mood {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mood::Indicative => "indicative",
            Mood::Subjunctive => "subjunctive",
        }
    }

    pub fn from_str_opt(s: &str) -> Option<Mood> {
        match s {
            "indicative" => Some(Mood::Indicative),
            "subjunctive" => Some(Mood::Subjunctive),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LexemePropertyName {
    Voice,
    Auxiliary,
    Negation,
    NonArgumentalClitic,
}

impl LexemePropertyName {
    pub fn as_str(&self) -> &'static str {
        match self {
            LexemePropertyName::Voice => "voice",
            LexemePropertyName::Auxiliary => "auxiliary",
            LexemePropertyName::Negation => "negation",
            LexemePropertyName::NonArgumentalClitic => "non-argumental-clitic",
        }
    }

    fn from_str_opt(s: &str) -> Option<Self> {
        match s {
            "voice" => Some(Self::Voice),
            "auxiliary" => Some(Self::Auxiliary),
            "negation" => Some(Self::Negation),
            "non-argumental-clitic" => Some(Self::NonArgumentalClitic),
            _ => None,
        }
    }
}

/// What the compiler does with a feature that resolved positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FeatureAction {
    Constituent {
        slot: usize,
        token: String,
        mood: Option<Mood>,
    },
    Introducer {
        slot: usize,
        prepositions: Vec<String>,
        locative: bool,
    },
    Restriction {
        slot: usize,
        value: Restriction,
    },
    LexemeProperty {
        name: LexemePropertyName,
        value: String,
    },
    Redistribution {
        label: String,
    },
    Construction {
        pattern: String,
    },
    MweTrigger {
        pattern: String,
        component: String,
    },
    Ignore,
}

impl FeatureAction {
    /// Mnemonic @-label contributed by a lexeme property, derived from the
    /// (name, value) pair: auxiliaries label as themselves, the reflexive
    /// clitic as `pron`, obligatory negation as `nég`.
    pub fn lexeme_property_label(name: LexemePropertyName, value: &str) -> String {
        match (name, value) {
            (LexemePropertyName::NonArgumentalClitic, "reflexive") => "pron".into(),
            (LexemePropertyName::Negation, _) => "nég".into(),
            _ => value.to_string(),
        }
    }
}

/// One argument of a construction pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionArg {
    pub slot: usize,
    pub function_label: String,
    /// Realizations the construction itself provides (distributional
    /// features add more).
    pub base_realizations: Vec<String>,
    pub optional: bool,
}

/// Controller declaration: the argument at `controlled_slot` hosts a clause
/// whose implicit subject is one of the `controller_slots` arguments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ControlSpec {
    pub controlled_slot: usize,
    pub controller_slots: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionDef {
    pub id: String,
    pub args: Vec<ConstructionArg>,
    pub controls: Vec<ControlSpec>,
    /// Optional @-label advertising the control in the mnemonic.
    pub control_label: Option<String>,
}

/// One component of a multiword-expression pattern, by rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MweComponentRole {
    pub rank: usize,
    /// Edge function, e.g. `adjunct`; `None` marks the head component.
    pub function: Option<String>,
    pub constituent: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MwePatternDef {
    pub pattern_id: String,
    pub components: Vec<MweComponentRole>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    /// Declaration position; orders @-labels inside mnemonics.
    pub seq: usize,
    pub action: FeatureAction,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureCatalog {
    pub category: Category,
    pub version: String,
    features: BTreeMap<String, CatalogEntry>,
    pub constructions: BTreeMap<String, ConstructionDef>,
    pub mwe_patterns: BTreeMap<String, MwePatternDef>,
}

impl FeatureCatalog {
    pub fn empty(category: Category) -> Self {
        FeatureCatalog {
            category,
            version: String::new(),
            features: BTreeMap::new(),
            constructions: BTreeMap::new(),
            mwe_patterns: BTreeMap::new(),
        }
    }

    pub fn get(&self, feature_id: &str) -> Option<&CatalogEntry> {
        self.features.get(&normalize_feature_id(feature_id))
    }

    pub fn len(&self) -> usize {
        self.features.len()
    }

    pub fn is_empty(&self) -> bool {
        self.features.is_empty()
    }

    pub fn construction(&self, id: &str) -> Option<&ConstructionDef> {
        self.constructions.get(id)
    }

    pub fn mwe_pattern(&self, id: &str) -> Option<&MwePatternDef> {
        self.mwe_patterns.get(id)
    }
}

/// Look a feature up in the catalog. A miss degrades to `Ignore` with a
/// warning; the conversion never aborts on unknown features.
pub fn classify_feature<'c>(
    expr: &FeatureExpr,
    catalog: &'c FeatureCatalog,
) -> (&'c CatalogEntry, Option<Finding>) {
    static MISS: CatalogEntry = CatalogEntry {
        seq: usize::MAX,
        action: FeatureAction::Ignore,
    };
    match catalog.get(&expr.raw) {
        Some(entry) => (entry, None),
        None => (
            &MISS,
            Some(Finding::warning(
                Code::UnknownFeature,
                format!("catalog[{}]", catalog.category),
                format!(
                    "feature {:?} is not declared in the catalog; treated as ignore",
                    expr.raw
                ),
            )),
        ),
    }
}

// ---------------------------------------------------------------------------
// Catalog file loading
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum BlockKind {
    Feature,
    Construction,
    Pattern,
}

struct Block {
    kind: BlockKind,
    id: String,
    line: usize,
    keys: Vec<(String, String, usize)>,
}

fn split_blocks(text: &str) -> Result<(Vec<(String, String)>, Vec<Block>)> {
    let mut top = Vec::new();
    let mut blocks: Vec<Block> = Vec::new();
    for (n, raw_line) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw_line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('[') {
            let (tag, id) = rest.split_once(']').ok_or_else(|| {
                Error::Catalog(format!("line {line_no}: malformed block header {line:?}"))
            })?;
            let kind = match tag {
                "feature" => BlockKind::Feature,
                "construction" => BlockKind::Construction,
                "pattern" => BlockKind::Pattern,
                other => {
                    return Err(Error::Catalog(format!(
                        "line {line_no}: unknown block type [{other}]"
                    )))
                }
            };
            let id = id.trim().to_string();
            if id.is_empty() {
                return Err(Error::Catalog(format!(
                    "line {line_no}: block header without an identifier"
                )));
            }
            blocks.push(Block {
                kind,
                id,
                line: line_no,
                keys: Vec::new(),
            });
        } else if let Some((key, value)) = line.split_once('=') {
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            match blocks.last_mut() {
                Some(block) => block.keys.push((key, value, line_no)),
                None => top.push((key, value)),
            }
        } else {
            return Err(Error::Catalog(format!(
                "line {line_no}: expected `key = value` or a block header, found {line:?}"
            )));
        }
    }
    Ok((top, blocks))
}

struct KeyBag {
    block_id: String,
    keys: Vec<(String, String, usize)>,
}

impl KeyBag {
    fn take(&mut self, key: &str) -> Option<String> {
        let pos = self.keys.iter().position(|(k, _, _)| k == key)?;
        Some(self.keys.remove(pos).1)
    }

    fn take_all(&mut self, key: &str) -> Vec<String> {
        let mut out = Vec::new();
        while let Some(v) = self.take(key) {
            out.push(v);
        }
        out
    }

    fn require(&mut self, key: &str) -> Result<String> {
        self.take(key).ok_or_else(|| {
            Error::Catalog(format!("[{}]: missing key {key:?}", self.block_id))
        })
    }

    fn finish(self) -> Result<()> {
        if let Some((key, _, line)) = self.keys.first() {
            return Err(Error::Catalog(format!(
                "[{}]: line {line}: key {key:?} is not allowed here",
                self.block_id
            )));
        }
        Ok(())
    }
}

fn parse_slot(block_id: &str, value: &str) -> Result<usize> {
    value
        .parse()
        .map_err(|_| Error::Catalog(format!("[{block_id}]: slot {value:?} is not a number")))
}

fn parse_yes_no(block_id: &str, value: &str) -> Result<bool> {
    match value {
        "yes" => Ok(true),
        "no" => Ok(false),
        _ => Err(Error::Catalog(format!(
            "[{block_id}]: expected yes/no, found {value:?}"
        ))),
    }
}

fn feature_action(id: &str, bag: &mut KeyBag) -> Result<FeatureAction> {
    let kind = bag.require("kind")?;
    let action = match kind.as_str() {
        "constituent" => FeatureAction::Constituent {
            slot: parse_slot(id, &bag.require("slot")?)?,
            token: bag.require("value")?,
            mood: match bag.take("mood") {
                Some(m) => Some(Mood::from_str_opt(&m).ok_or_else(|| {
                    Error::Catalog(format!("[{id}]: mood {m:?} is not indicative/subjunctive"))
                })?),
                None => None,
            },
        },
        "introducer" => FeatureAction::Introducer {
            slot: parse_slot(id, &bag.require("slot")?)?,
            prepositions: bag
                .require("prepositions")?
                .split_whitespace()
                .map(|s| s.to_string())
                .collect(),
            locative: match bag.take("locative") {
                Some(v) => parse_yes_no(id, &v)?,
                None => false,
            },
        },
        "restriction" => {
            let value = bag.require("value")?;
            FeatureAction::Restriction {
                slot: parse_slot(id, &bag.require("slot")?)?,
                value: Restriction::from_str_opt(&value).ok_or_else(|| {
                    Error::Catalog(format!(
                        "[{id}]: restriction value {value:?} outside {{human, non-human}}"
                    ))
                })?,
            }
        }
        "lexeme-property" => {
            let name = bag.require("name")?;
            FeatureAction::LexemeProperty {
                name: LexemePropertyName::from_str_opt(&name).ok_or_else(|| {
                    Error::Catalog(format!(
                        "[{id}]: lexeme property name {name:?} outside \
                         {{voice, auxiliary, negation, non-argumental-clitic}}"
                    ))
                })?,
                value: bag.require("value")?,
            }
        }
        "redistribution" => FeatureAction::Redistribution {
            label: bag.require("label")?,
        },
        "construction" => FeatureAction::Construction {
            pattern: bag.require("pattern")?,
        },
        "mwe-trigger" => FeatureAction::MweTrigger {
            pattern: bag.require("pattern")?,
            component: bag.require("component")?,
        },
        "ignore" => FeatureAction::Ignore,
        other => {
            return Err(Error::Catalog(format!(
                "[{id}]: unknown kind keyword {other:?}"
            )))
        }
    };
    Ok(action)
}

fn construction_def(id: &str, bag: &mut KeyBag) -> Result<ConstructionDef> {
    let mut args = Vec::new();
    for spec in bag.take_all("arg") {
        let tokens: Vec<&str> = spec.split_whitespace().collect();
        if tokens.len() < 3 {
            return Err(Error::Catalog(format!(
                "[{id}]: arg spec {spec:?} needs `<slot> <function-label> <realizations> [opt]`"
            )));
        }
        let optional = tokens.len() > 3 && tokens[3] == "opt";
        if tokens.len() > 4 || (tokens.len() == 4 && !optional) {
            return Err(Error::Catalog(format!("[{id}]: malformed arg spec {spec:?}")));
        }
        let base_realizations = if tokens[2] == "-" {
            Vec::new()
        } else {
            tokens[2].split('|').map(|s| s.to_string()).collect()
        };
        let slot = parse_slot(id, tokens[0])?;
        if args.iter().any(|a: &ConstructionArg| a.slot == slot) {
            return Err(Error::Catalog(format!("[{id}]: duplicate arg slot {slot}")));
        }
        args.push(ConstructionArg {
            slot,
            function_label: tokens[1].to_string(),
            base_realizations,
            optional,
        });
    }
    if args.is_empty() {
        return Err(Error::Catalog(format!("[{id}]: construction without args")));
    }
    let mut controls = Vec::new();
    for spec in bag.take_all("control") {
        let mut slots = Vec::new();
        for token in spec.split_whitespace() {
            slots.push(parse_slot(id, token)?);
        }
        if slots.len() < 2 {
            return Err(Error::Catalog(format!(
                "[{id}]: control spec {spec:?} needs `<controlled-slot> <controller-slot>...`"
            )));
        }
        let controlled_slot = slots.remove(0);
        for slot in std::iter::once(&controlled_slot).chain(slots.iter()) {
            if !args.iter().any(|a| a.slot == *slot) {
                return Err(Error::ControlSlot {
                    construction: id.to_string(),
                    slot: *slot,
                });
            }
        }
        if slots.contains(&controlled_slot) {
            return Err(Error::Catalog(format!(
                "[{id}]: slot {controlled_slot} cannot control itself"
            )));
        }
        controls.push(ControlSpec {
            controlled_slot,
            controller_slots: slots,
        });
    }
    Ok(ConstructionDef {
        id: id.to_string(),
        args,
        controls,
        control_label: bag.take("control-label"),
    })
}

fn pattern_def(id: &str, bag: &mut KeyBag) -> Result<MwePatternDef> {
    let mut components = Vec::new();
    for spec in bag.take_all("component") {
        let tokens: Vec<&str> = spec.split_whitespace().collect();
        if tokens.is_empty() || tokens.len() > 3 {
            return Err(Error::Catalog(format!(
                "[{id}]: component spec {spec:?} needs `<rank> <function>|head [<constituent>]`"
            )));
        }
        let rank = parse_slot(id, tokens[0])?;
        let (function, constituent) = match tokens.get(1).copied() {
            None | Some("head") => (None, None),
            Some(f) => (Some(f.to_string()), tokens.get(2).map(|s| s.to_string())),
        };
        components.push(MweComponentRole {
            rank,
            function,
            constituent,
        });
    }
    components.sort_by_key(|c| c.rank);
    for (i, c) in components.iter().enumerate() {
        if c.rank != i + 1 {
            return Err(Error::Catalog(format!(
                "[{id}]: component ranks must be 1..k contiguous, found rank {}",
                c.rank
            )));
        }
    }
    Ok(MwePatternDef {
        pattern_id: id.to_string(),
        components,
    })
}

/// Load a catalog from configuration text.
pub fn load_catalog(bytes: &[u8]) -> Result<FeatureCatalog> {
    let text = std::str::from_utf8(bytes)
        .map_err(|e| Error::Catalog(format!("not valid UTF-8: {e}")))?;
    let (top, blocks) = split_blocks(text)?;

    let mut version = String::new();
    let mut category = Category::Verb;
    for (key, value) in top {
        match key.as_str() {
            "version" => version = value,
            "category" => {
                category = Category::from_name(&value).ok_or_else(|| {
                    Error::Catalog(format!("unknown category {value:?}"))
                })?;
            }
            other => {
                return Err(Error::Catalog(format!(
                    "unknown top-level key {other:?}"
                )))
            }
        }
    }

    let mut catalog = FeatureCatalog::empty(category);
    catalog.version = version;
    let mut seq = 0;
    for block in blocks {
        let mut bag = KeyBag {
            block_id: block.id.clone(),
            keys: block.keys,
        };
        match block.kind {
            BlockKind::Feature => {
                let id = normalize_feature_id(&block.id);
                let action = feature_action(&id, &mut bag)?;
                bag.finish()?;
                if catalog
                    .features
                    .insert(id.clone(), CatalogEntry { seq, action })
                    .is_some()
                {
                    return Err(Error::Catalog(format!(
                        "line {}: duplicate feature id {id:?}",
                        block.line
                    )));
                }
                seq += 1;
            }
            BlockKind::Construction => {
                let def = construction_def(&block.id, &mut bag)?;
                bag.finish()?;
                if catalog.constructions.insert(block.id.clone(), def).is_some() {
                    return Err(Error::Catalog(format!(
                        "line {}: duplicate construction {:?}",
                        block.line, block.id
                    )));
                }
            }
            BlockKind::Pattern => {
                let def = pattern_def(&block.id, &mut bag)?;
                bag.finish()?;
                if catalog.mwe_patterns.insert(block.id.clone(), def).is_some() {
                    return Err(Error::Catalog(format!(
                        "line {}: duplicate pattern {:?}",
                        block.line, block.id
                    )));
                }
            }
        }
    }

    // A construction action must point at a declared construction.
    for (id, entry) in &catalog.features {
        if let FeatureAction::Construction { pattern } = &entry.action {
            if !catalog.constructions.contains_key(pattern) {
                return Err(Error::Catalog(format!(
                    "feature {id:?} references undeclared construction {pattern:?}"
                )));
            }
        }
    }

    Ok(catalog)
}
