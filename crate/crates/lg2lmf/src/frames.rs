//! Compilation of entries into fully specified subcategorization frames.
//!
//! Each licensed construction crossed with each licensed redistribution
//! yields one frame. Entry-level distributional features (restrictions,
//! constituents, introducers) are copied into every frame where the argument
//! appears, including when redistribution moves the argument. Frames are
//! interned globally by their printed mnemonic and grouped, per entry, into
//! sets of redistribution variants.

use std::collections::BTreeMap;
use std::fmt;

use crate::catalog::{
    ArgSlot, ControlSpec, FeatureAction, FeatureCatalog, Mood, Restriction,
};
use crate::error::{Error, Result};
use crate::lexicon::LgLexEntry;
use crate::mnemonic::{ArgSpec, MnemonicId};
use crate::report::{Code, Finding};

pub const ACTIVE_LABEL: &str = "actif";
pub const PASSIVE_LABEL: &str = "passif";
pub const IMPERSONAL_LABEL: &str = "actif_impersonnel";
pub const PASSIVE_IMPERSONAL_LABEL: &str = "passif_impersonnel";

/// The minimal grammatical-function inventory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SyntacticFunction {
    Subject,
    Object,
    Agent,
    InvertedSubject,
}

impl SyntacticFunction {
    pub fn as_str(&self) -> &'static str {
        match self {
            SyntacticFunction::Subject => "subject",
            SyntacticFunction::Object => "object",
            SyntacticFunction::Agent => "agent",
            SyntacticFunction::InvertedSubject => "inverted-subject",
        }
    }

    pub fn from_str_opt(s: &str) -> Option<Self> {
        match s {
            "subject" => Some(Self::Subject),
            "object" => Some(Self::Object),
            "agent" => Some(Self::Agent),
            "inverted-subject" => Some(Self::InvertedSubject),
            _ => None,
        }
    }
}

impl fmt::Display for SyntacticFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Syntactic category of an argument realization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Constituent {
    Np,
    Pp,
    InfinitiveClause,
    CompletiveClause,
    WhCompletiveClause,
    Adj,
    CliticNominative,
    CliticAccusative,
    CliticPronoun,
}

impl Constituent {
    pub fn as_str(&self) -> &'static str {
        match self {
            Constituent::Np => "NP",
            Constituent::Pp => "PP",
            Constituent::InfinitiveClause => "infinitive-clause",
            Constituent::CompletiveClause => "completive-clause",
            Constituent::WhCompletiveClause => "wh-completive-clause",
            Constituent::Adj => "adj",
            Constituent::CliticNominative => "clitic-nominative",
            Constituent::CliticAccusative => "clitic-accusative",
            Constituent::CliticPronoun => "clitic-pronoun",
        }
    }

    pub fn from_str_opt(s: &str) -> Option<Self> {
        match s {
            "NP" => Some(Self::Np),
            "PP" => Some(Self::Pp),
            "infinitive-clause" => Some(Self::InfinitiveClause),
            "completive-clause" => Some(Self::CompletiveClause),
            "wh-completive-clause" => Some(Self::WhCompletiveClause),
            "adj" => Some(Self::Adj),
            "clitic-nominative" => Some(Self::CliticNominative),
            "clitic-accusative" => Some(Self::CliticAccusative),
            "clitic-pronoun" => Some(Self::CliticPronoun),
            _ => None,
        }
    }

    pub fn is_clause(&self) -> bool {
        matches!(
            self,
            Constituent::InfinitiveClause
                | Constituent::CompletiveClause
                | Constituent::WhCompletiveClause
        )
    }
}

impl fmt::Display for Constituent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Prepositions introducing an argument, with the locative possibility.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Introducers {
    pub prepositions: Vec<String>,
    pub locative: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Argument {
    pub id: usize,
    pub function: SyntacticFunction,
    pub constituents: Vec<Constituent>,
    pub introducers: Option<Introducers>,
    pub restriction: Vec<Restriction>,
    pub optional: bool,
    pub mood: Option<Mood>,
    /// Ids of the arguments co-referent with this clause's implicit subject.
    pub control: Vec<usize>,
    pub role: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Voice {
    Active,
    Passive,
}

impl Voice {
    pub fn as_str(&self) -> &'static str {
        match self {
            Voice::Active => "active",
            Voice::Passive => "passive",
        }
    }

    pub fn from_str_opt(s: &str) -> Option<Voice> {
        match s {
            "active" => Some(Voice::Active),
            "passive" => Some(Voice::Passive),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NonArgumentalClitic {
    Reflexive,
    Impersonal,
}

impl NonArgumentalClitic {
    pub fn as_str(&self) -> &'static str {
        match self {
            NonArgumentalClitic::Reflexive => "reflexive",
            NonArgumentalClitic::Impersonal => "impersonal",
        }
    }

    pub fn from_str_opt(s: &str) -> Option<Self> {
        match s {
            "reflexive" => Some(Self::Reflexive),
            "impersonal" => Some(Self::Impersonal),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexemeProps {
    pub voice: Voice,
    pub auxiliary: String,
    pub negation: Option<String>,
    pub non_argumental_clitic: Option<NonArgumentalClitic>,
}

impl Default for LexemeProps {
    fn default() -> Self {
        LexemeProps {
            voice: Voice::Active,
            auxiliary: "avoir".to_string(),
            negation: None,
            non_argumental_clitic: None,
        }
    }
}

/// A fully specified construction. The printed mnemonic is the frame's
/// global identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    pub mnemonic: MnemonicId,
    pub props: LexemeProps,
    pub arguments: Vec<Argument>,
}

impl Frame {
    pub fn id(&self) -> String {
        self.mnemonic.to_string()
    }
}

// ---------------------------------------------------------------------------
// Realization tokens
// ---------------------------------------------------------------------------

/// Canonical order of realization tokens inside a mnemonic: nominative or
/// generic clitics, then preposition-introduced forms, then completive
/// clauses, infinitives, bare nominals, complement clitics; ties break
/// lexicographically.
fn token_class(token: &str) -> u8 {
    match token {
        "cln" | "cl" | "clr" => 0,
        "cla" | "cld" | "clg" | "cll" | "en" | "y" => 5,
        "sinf" => 3,
        "scompl" | "squi" | "ssi" => 2,
        _ if token.contains('-') => 1,
        _ => 4,
    }
}

fn order_tokens(tokens: &mut Vec<String>) {
    tokens.sort_by(|a, b| {
        token_class(a)
            .cmp(&token_class(b))
            .then_with(|| a.cmp(b))
    });
    tokens.dedup();
}

/// Syntactic category of a realization token; `None` for unknown tokens.
pub fn token_constituent(token: &str) -> Option<Constituent> {
    match token {
        "cln" | "cl" => return Some(Constituent::CliticNominative),
        "cla" | "cld" => return Some(Constituent::CliticAccusative),
        "en" | "y" | "clr" => return Some(Constituent::CliticPronoun),
        "scompl" => return Some(Constituent::CompletiveClause),
        "squi" | "ssi" => return Some(Constituent::WhCompletiveClause),
        "sinf" => return Some(Constituent::InfinitiveClause),
        "sn" => return Some(Constituent::Np),
        "adj" => return Some(Constituent::Adj),
        _ => {}
    }
    // Preposition-introduced form: `à-sn`, `de-sinf`, `dans-sn`...
    let (_, base) = token.rsplit_once('-')?;
    match base {
        "sn" => Some(Constituent::Pp),
        "sinf" => Some(Constituent::InfinitiveClause),
        "scompl" => Some(Constituent::CompletiveClause),
        "ssi" => Some(Constituent::WhCompletiveClause),
        _ => None,
    }
}

// ---------------------------------------------------------------------------
// Function deduction and control
// ---------------------------------------------------------------------------

/// Grammatical function of the argument at `slot` (its position in the
/// construction, subject first) under a redistribution.
pub fn deduce_function(slot: ArgSlot, redistribution: &str) -> Result<SyntacticFunction> {
    let f = match redistribution {
        ACTIVE_LABEL => match slot.0 {
            0 => SyntacticFunction::Subject,
            _ => SyntacticFunction::Object,
        },
        PASSIVE_LABEL => match slot.0 {
            0 => SyntacticFunction::Agent,
            1 => SyntacticFunction::Subject,
            _ => SyntacticFunction::Object,
        },
        IMPERSONAL_LABEL => match slot.0 {
            0 => SyntacticFunction::InvertedSubject,
            _ => SyntacticFunction::Object,
        },
        PASSIVE_IMPERSONAL_LABEL => match slot.0 {
            0 => SyntacticFunction::Agent,
            1 => SyntacticFunction::InvertedSubject,
            _ => SyntacticFunction::Object,
        },
        other => return Err(Error::UnknownRedistribution(other.to_string())),
    };
    Ok(f)
}

fn redistribution_rank(label: &str) -> (u8, &str) {
    let class = match label {
        ACTIVE_LABEL => 0,
        PASSIVE_LABEL => 1,
        IMPERSONAL_LABEL => 2,
        PASSIVE_IMPERSONAL_LABEL => 3,
        _ => 4,
    };
    (class, label)
}

/// Order redistribution labels for frame lists and set ids: actif, passif,
/// actif_impersonnel, passif_impersonnel, then lexicographic.
pub fn order_redistributions(labels: &mut Vec<String>) {
    labels.sort_by(|a, b| redistribution_rank(a).cmp(&redistribution_rank(b)));
    labels.dedup();
}

/// Attach `controllers` to the argument with id `controlled` when that
/// argument hosts a clause; no-op (returns false) otherwise.
pub fn assign_control(frame: &mut Frame, controlled: usize, controllers: &[usize]) -> Result<bool> {
    let n = frame.arguments.len();
    let arg = frame
        .arguments
        .iter_mut()
        .find(|a| a.id == controlled)
        .ok_or_else(|| Error::ControlSlot {
            construction: frame.mnemonic.to_string(),
            slot: controlled,
        })?;
    if !arg.constituents.iter().any(|c| c.is_clause()) {
        return Ok(false);
    }
    let mut ids = Vec::new();
    for &c in controllers {
        if c >= n || c == controlled {
            return Err(Error::ControlSlot {
                construction: frame.mnemonic.to_string(),
                slot: c,
            });
        }
        ids.push(c);
    }
    ids.sort_unstable();
    ids.dedup();
    arg.control = ids;
    Ok(true)
}

// ---------------------------------------------------------------------------
// Frame compilation
// ---------------------------------------------------------------------------

#[derive(Default)]
struct SlotData {
    tokens: Vec<String>,
    restrictions: Vec<(usize, Restriction)>,
    introducers: Option<Introducers>,
    moods: Vec<Mood>,
}

/// Compile every frame an entry licenses: one per construction per
/// redistribution, in catalog order then redistribution order, deduplicated
/// by mnemonic within the entry.
pub fn compile_frames(
    entry: &LgLexEntry,
    catalog: &FeatureCatalog,
) -> Result<(Vec<Frame>, Vec<Finding>)> {
    let mut findings = Vec::new();
    let location = format!("entry[{}]", entry.entry_id);

    // Gather actions of the entry's positive features in catalog order.
    let mut positives: Vec<(usize, &str, &FeatureAction)> = Vec::new();
    for leaf in entry.positive_features.iter() {
        // Lexical cells carry free text, not a truth value; they never
        // trigger actions.
        if leaf.value.is_some() {
            continue;
        }
        if let Some(cat) = catalog.get(&leaf.id) {
            positives.push((cat.seq, leaf.id.as_str(), &cat.action));
        }
    }
    positives.sort_by_key(|(seq, id, _)| (*seq, id.to_string()));

    let mut slots: BTreeMap<usize, SlotData> = BTreeMap::new();
    let mut props = LexemeProps::default();
    let mut aux_seen = false;
    let mut voice_seen = false;
    let mut prop_labels: Vec<(usize, String)> = Vec::new();
    let mut constructions: Vec<(usize, &str)> = Vec::new();
    let mut redistributions: Vec<String> = vec![ACTIVE_LABEL.to_string()];

    for (seq, _id, action) in &positives {
        match action {
            FeatureAction::Restriction { slot, value } => {
                let data = slots.entry(*slot).or_default();
                data.restrictions.push((*seq, *value));
                // A noun distribution implies the bare nominal realization.
                data.tokens.push("sn".to_string());
            }
            FeatureAction::Constituent { slot, token, mood } => {
                let data = slots.entry(*slot).or_default();
                data.tokens.push(token.clone());
                if let Some(m) = mood {
                    data.moods.push(*m);
                }
            }
            FeatureAction::Introducer {
                slot,
                prepositions,
                locative,
            } => {
                let intro = slots
                    .entry(*slot)
                    .or_default()
                    .introducers
                    .get_or_insert_with(Introducers::default);
                for p in prepositions {
                    if !intro.prepositions.contains(p) {
                        intro.prepositions.push(p.clone());
                    }
                }
                intro.locative |= locative;
            }
            FeatureAction::LexemeProperty { name, value } => {
                use crate::catalog::LexemePropertyName as P;
                let applied = match name {
                    P::Auxiliary => {
                        if aux_seen {
                            false
                        } else {
                            props.auxiliary = value.clone();
                            aux_seen = true;
                            true
                        }
                    }
                    P::Voice => {
                        if voice_seen {
                            false
                        } else if let Some(v) = Voice::from_str_opt(value) {
                            props.voice = v;
                            voice_seen = true;
                            true
                        } else {
                            false
                        }
                    }
                    P::Negation => {
                        props.negation = Some(value.clone());
                        true
                    }
                    P::NonArgumentalClitic => match NonArgumentalClitic::from_str_opt(value) {
                        Some(c) => {
                            props.non_argumental_clitic = Some(c);
                            true
                        }
                        None => false,
                    },
                };
                if applied {
                    prop_labels
                        .push((*seq, FeatureAction::lexeme_property_label(*name, value)));
                }
            }
            FeatureAction::Redistribution { label } => {
                if !redistributions.contains(label) {
                    redistributions.push(label.clone());
                }
            }
            FeatureAction::Construction { pattern } => constructions.push((*seq, pattern)),
            FeatureAction::MweTrigger { .. } | FeatureAction::Ignore => {}
        }
    }
    order_redistributions(&mut redistributions);

    if constructions.is_empty() {
        findings.push(Finding::warning(
            Code::NoFrames,
            location,
            "entry licenses no construction feature; no frames compiled",
        ));
        return Ok((Vec::new(), findings));
    }

    let mut frames = Vec::new();
    let mut seen_ids = Vec::new();
    for (cons_seq, pattern_id) in constructions {
        let def = catalog.construction(pattern_id).ok_or_else(|| {
            Error::Catalog(format!("undeclared construction {pattern_id:?}"))
        })?;

        // Realizations, constituents and the @-section are shared by every
        // redistribution of this construction.
        let mut arg_specs = Vec::new();
        let mut arg_constituents = Vec::new();
        for arg in &def.args {
            let data = slots.get(&arg.slot);
            let mut tokens = arg.base_realizations.clone();
            if let Some(data) = data {
                tokens.extend(data.tokens.iter().cloned());
            }
            order_tokens(&mut tokens);
            if tokens.is_empty() {
                findings.push(Finding::warning(
                    Code::EmptyRealizations,
                    format!("entry[{}]/construction[{}]", entry.entry_id, def.id),
                    format!(
                        "slot {} has no distributional features and the construction names \
                         no realization; defaulting to sn with an empty restriction",
                        arg.slot
                    ),
                ));
                tokens.push("sn".to_string());
            }
            let mut constituents = Vec::new();
            for token in &tokens {
                match token_constituent(token) {
                    Some(c) => {
                        if !constituents.contains(&c) {
                            constituents.push(c);
                        }
                    }
                    None => findings.push(Finding::warning(
                        Code::UnknownConstituent,
                        format!("entry[{}]/construction[{}]", entry.entry_id, def.id),
                        format!("realization token {token:?} maps to no known constituent"),
                    )),
                }
            }
            arg_specs.push(ArgSpec {
                function_label: arg.function_label.clone(),
                optional: arg.optional,
                realizations: tokens,
            });
            arg_constituents.push(constituents);
        }

        // @-section: lexeme-property labels, restriction labels prefixed by
        // the construction's function label, then the control label; ordered
        // by contributing-feature declaration.
        let mut labeled: Vec<(usize, String)> = prop_labels.clone();
        for arg in &def.args {
            if let Some(data) = slots.get(&arg.slot) {
                for (seq, r) in &data.restrictions {
                    labeled.push((*seq, format!("{}{}", arg.function_label, r.label_suffix())));
                }
            }
        }
        // Control specs apply only when the controlled argument can host a
        // clause; the label rides along with them.
        let control_applies: Vec<&ControlSpec> = def
            .controls
            .iter()
            .filter(|spec| {
                def.args
                    .iter()
                    .position(|a| a.slot == spec.controlled_slot)
                    .is_some_and(|pos| arg_constituents[pos].iter().any(|c| c.is_clause()))
            })
            .collect();
        if !control_applies.is_empty() {
            if let Some(label) = &def.control_label {
                labeled.push((cons_seq, label.clone()));
            }
        }
        labeled.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
        let mut at_features = Vec::new();
        for (_, label) in labeled {
            if !at_features.contains(&label) {
                at_features.push(label);
            }
        }

        for red in &redistributions {
            // Check the label is known before any frame is built.
            deduce_function(ArgSlot(0), red)?;
            let passive = red == PASSIVE_LABEL || red == PASSIVE_IMPERSONAL_LABEL;
            let impersonal = red == IMPERSONAL_LABEL || red == PASSIVE_IMPERSONAL_LABEL;
            if passive && def.args.len() < 2 {
                findings.push(Finding::warning(
                    Code::EmptyRealizations,
                    format!("entry[{}]/construction[{}]", entry.entry_id, def.id),
                    format!("%{red} needs an object to promote; frame skipped"),
                ));
                continue;
            }

            // Argument order in the frame: the promoted object leads a
            // passive frame and the demoted subject becomes its last
            // argument; other redistributions keep construction order.
            let order: Vec<usize> = if passive {
                let mut order: Vec<usize> = (1..def.args.len()).collect();
                order.push(0);
                order
            } else {
                (0..def.args.len()).collect()
            };

            let mut arguments = Vec::new();
            let mut id_of_position = vec![0usize; def.args.len()];
            for (id, &pos) in order.iter().enumerate() {
                id_of_position[pos] = id;
            }
            for (id, &pos) in order.iter().enumerate() {
                let arg = &def.args[pos];
                let data = slots.get(&arg.slot);
                let mut restriction: Vec<Restriction> = data
                    .map(|d| d.restrictions.iter().map(|(_, r)| *r).collect())
                    .unwrap_or_default();
                restriction.sort();
                restriction.dedup();
                let constituents = arg_constituents[pos].clone();
                // Mood attaches to argument clauses (completives) only.
                let mood = data.and_then(|d| {
                    if constituents.iter().any(|c| {
                        matches!(
                            c,
                            Constituent::CompletiveClause | Constituent::WhCompletiveClause
                        )
                    }) {
                        d.moods.first().copied()
                    } else {
                        None
                    }
                });
                let introducers = data.and_then(|d| d.introducers.clone());
                let role = introducers
                    .as_ref()
                    .filter(|i| i.locative && constituents.contains(&Constituent::Pp))
                    .map(|_| "location".to_string());
                arguments.push(Argument {
                    id,
                    function: deduce_function(ArgSlot(pos), red)?,
                    constituents,
                    introducers,
                    restriction,
                    optional: arg.optional,
                    mood,
                    control: Vec::new(),
                    role,
                });
            }

            let mut frame_props = props.clone();
            if passive {
                frame_props.voice = Voice::Passive;
            }
            if impersonal {
                frame_props.non_argumental_clitic = Some(NonArgumentalClitic::Impersonal);
            }

            let mut frame = Frame {
                mnemonic: MnemonicId {
                    args: arg_specs.clone(),
                    at_features: at_features.clone(),
                    redistributions: vec![red.clone()],
                },
                props: frame_props,
                arguments,
            };

            for spec in &control_applies {
                let controlled_pos = def
                    .args
                    .iter()
                    .position(|a| a.slot == spec.controlled_slot)
                    .expect("checked at catalog load");
                let controllers: Vec<usize> = spec
                    .controller_slots
                    .iter()
                    .map(|slot| {
                        def.args
                            .iter()
                            .position(|a| a.slot == *slot)
                            .map(|pos| id_of_position[pos])
                            .expect("checked at catalog load")
                    })
                    .collect();
                assign_control(&mut frame, id_of_position[controlled_pos], &controllers)?;
            }

            let id = frame.id();
            if !seen_ids.contains(&id) {
                seen_ids.push(id);
                frames.push(frame);
            }
        }
    }

    Ok((frames, findings))
}

// ---------------------------------------------------------------------------
// Interning and set grouping
// ---------------------------------------------------------------------------

/// Global store of distinct frames, keyed by printed mnemonic.
/// Iteration is lexicographic by id.
#[derive(Debug, Default)]
pub struct FrameStore {
    frames: BTreeMap<String, (Frame, String)>,
}

impl FrameStore {
    pub fn new() -> Self {
        Self::default()
    }

    /// Insert a compiled frame; equal mnemonics must carry structurally
    /// equal content.
    pub fn insert(&mut self, frame: Frame, origin: &str) -> Result<String> {
        let id = frame.id();
        match self.frames.get(&id) {
            Some((stored, first_origin)) => {
                if stored.props != frame.props || stored.arguments != frame.arguments {
                    return Err(Error::InternMismatch {
                        mnemonic: id,
                        first: first_origin.clone(),
                        second: origin.to_string(),
                    });
                }
            }
            None => {
                self.frames.insert(id.clone(), (frame, origin.to_string()));
            }
        }
        Ok(id)
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&Frame> {
        self.frames.get(id).map(|(f, _)| f)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Frame> {
        self.frames.values().map(|(f, _)| f)
    }
}

/// Intern all frames of all entries; entries keep references only.
pub fn intern_frames<'a>(
    compiled: impl IntoIterator<Item = (&'a str, &'a [Frame])>,
) -> Result<FrameStore> {
    let mut store = FrameStore::new();
    for (origin, frames) in compiled {
        for frame in frames {
            store.insert(frame.clone(), origin)?;
        }
    }
    Ok(store)
}

/// A group of closely related frames: same construction, different
/// redistributions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameSet {
    pub id: String,
    pub frame_ids: Vec<String>,
}

/// Group one entry's frames into sets: frames sharing the args and @
/// sections of their mnemonic merge, in first-occurrence order.
pub fn group_entry_sets(frames: &[Frame]) -> Vec<FrameSet> {
    let mut stems: Vec<(String, Vec<String>)> = Vec::new();
    for frame in frames {
        let stem = frame.mnemonic.stem();
        let label = frame
            .mnemonic
            .redistributions
            .first()
            .cloned()
            .unwrap_or_default();
        match stems.iter_mut().find(|(s, _)| *s == stem) {
            Some((_, labels)) => {
                if !labels.contains(&label) {
                    labels.push(label);
                }
            }
            None => stems.push((stem, vec![label])),
        }
    }
    stems
        .into_iter()
        .map(|(stem, labels)| {
            let id = format!(
                "{stem};{}",
                labels
                    .iter()
                    .map(|l| format!("%{l}"))
                    .collect::<Vec<_>>()
                    .join(",")
            );
            let frame_ids = labels.iter().map(|l| format!("{stem};%{l}")).collect();
            FrameSet { id, frame_ids }
        })
        .collect()
}

/// Global store of frame sets, keyed by set id.
#[derive(Debug, Default)]
pub struct SetStore {
    sets: BTreeMap<String, FrameSet>,
}

impl SetStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, set: FrameSet) -> String {
        let id = set.id.clone();
        self.sets.entry(id.clone()).or_insert(set);
        id
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &FrameSet> {
        self.sets.values()
    }
}

// ---------------------------------------------------------------------------
// Frozen-clitic multiword expressions
// ---------------------------------------------------------------------------

/// When a frozen-clitic trigger feature holds, the entry is a multiword
/// expression: the configured pattern plus the clitic and verb
/// pseudo-entries.
pub fn detect_frozen_clitic(
    entry: &LgLexEntry,
    catalog: &FeatureCatalog,
) -> Result<(Option<(String, Vec<String>)>, Vec<Finding>)> {
    let mut findings = Vec::new();
    let mut triggers: Vec<(usize, &str, &str, &str)> = Vec::new();
    for leaf in entry.positive_features.iter() {
        if leaf.value.is_some() {
            continue;
        }
        if let Some(cat) = catalog.get(&leaf.id) {
            if let FeatureAction::MweTrigger { pattern, component } = &cat.action {
                triggers.push((cat.seq, leaf.id.as_str(), pattern, component));
            }
        }
    }
    triggers.sort_by_key(|(seq, ..)| *seq);
    let Some((_, feature, pattern, component)) = triggers.first().copied() else {
        return Ok((None, findings));
    };
    if triggers.len() > 1 {
        findings.push(Finding::warning(
            Code::MultipleMweTriggers,
            format!("entry[{}]", entry.entry_id),
            format!(
                "{} frozen-clitic triggers hold; keeping the first ({feature:?})",
                triggers.len()
            ),
        ));
    }
    if catalog.mwe_pattern(pattern).is_none() {
        return Err(Error::UndeclaredMwePattern {
            entry_id: entry.entry_id.clone(),
            feature: feature.to_string(),
            pattern: pattern.to_string(),
        });
    }
    let components = vec![component.to_string(), format!("V_{}", entry.lemma)];
    Ok((Some((pattern.to_string(), components)), findings))
}
