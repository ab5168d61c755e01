//! Property test: reading an emitted document reproduces it exactly, for
//! randomly generated small documents.

use lg2lmf::catalog::{Mood, MweComponentRole, MwePatternDef, Restriction};
use lg2lmf::frames::{
    Argument, Constituent, FrameSet, Introducers, LexemeProps, NonArgumentalClitic,
    SyntacticFunction, Voice,
};
use lg2lmf::lmf::{
    emit_lmf, read_lmf_lenient, FrameOut, LexicalEntryOut, LmfDocument, Metadata, MweRef,
};
use proptest::prelude::*;

fn word() -> impl Strategy<Value = String> {
    "[a-zàéèûç]{1,10}".prop_map(|s| s)
}

fn id_string() -> impl Strategy<Value = String> {
    // Identifiers are space-free (they travel in space-separated lists).
    "[A-Za-z0-9_|;:%@()\\[\\],-]{1,24}".prop_map(|s| s)
}

fn free_text() -> impl Strategy<Value = String> {
    // Attribute text with the characters that need escaping.
    "[ a-zA-Zàéè'&<>\"+,()-]{1,30}"
        .prop_filter("trimmed text reads back identically", |s| {
            s.trim() == s && !s.is_empty() && s.split_whitespace().collect::<Vec<_>>().join(" ") == *s
        })
}

fn constituent() -> impl Strategy<Value = Constituent> {
    prop::sample::select(vec![
        Constituent::Np,
        Constituent::Pp,
        Constituent::InfinitiveClause,
        Constituent::CompletiveClause,
        Constituent::WhCompletiveClause,
        Constituent::Adj,
        Constituent::CliticNominative,
        Constituent::CliticAccusative,
        Constituent::CliticPronoun,
    ])
}

fn argument() -> impl Strategy<Value = Argument> {
    (
        0usize..6,
        prop::sample::select(vec![
            SyntacticFunction::Subject,
            SyntacticFunction::Object,
            SyntacticFunction::Agent,
            SyntacticFunction::InvertedSubject,
        ]),
        prop::collection::vec(constituent(), 0..4),
        prop::option::of((
            prop::collection::vec(
                prop::sample::select(vec!["dans", "sur", "sous", "vers", "à", "de"]),
                1..3,
            ),
            any::<bool>(),
        )),
        prop::collection::vec(
            prop::sample::select(vec![Restriction::Human, Restriction::NonHuman]),
            0..2,
        ),
        any::<bool>(),
        prop::option::of(prop::sample::select(vec![
            Mood::Indicative,
            Mood::Subjunctive,
        ])),
        prop::collection::vec(0usize..6, 0..3),
        prop::option::of(prop::sample::select(vec![
            "location".to_string(),
            "source".to_string(),
            "destination".to_string(),
        ])),
    )
        .prop_map(
            |(id, function, mut constituents, introducers, mut restriction, optional, mood, mut control, role)| {
                constituents.sort();
                constituents.dedup();
                restriction.sort();
                restriction.dedup();
                control.sort_unstable();
                control.dedup();
                Argument {
                    id,
                    function,
                    constituents,
                    introducers: introducers.map(|(preps, locative)| Introducers {
                        prepositions: preps.into_iter().map(String::from).collect(),
                        locative,
                    }),
                    restriction,
                    optional,
                    mood,
                    control,
                    role,
                }
            },
        )
}

fn frame() -> impl Strategy<Value = FrameOut> {
    (
        id_string(),
        prop::sample::select(vec![Voice::Active, Voice::Passive]),
        prop::sample::select(vec!["avoir".to_string(), "être".to_string()]),
        prop::option::of(Just("obligatory".to_string())),
        prop::option::of(prop::sample::select(vec![
            NonArgumentalClitic::Reflexive,
            NonArgumentalClitic::Impersonal,
        ])),
        prop::collection::vec(argument(), 0..3),
    )
        .prop_map(|(id, voice, auxiliary, negation, clitic, arguments)| FrameOut {
            id,
            props: LexemeProps {
                voice,
                auxiliary,
                negation,
                non_argumental_clitic: clitic,
            },
            arguments,
        })
}

fn entry() -> impl Strategy<Value = LexicalEntryOut> {
    (
        id_string(),
        prop::sample::select(vec!["completed", "to be completed", "to be encoded"]),
        word(),
        prop::option::of(free_text()),
        prop::option::of(free_text()),
        prop::collection::vec(id_string(), 0..3),
        prop::option::of((id_string(), prop::collection::vec(id_string(), 0..3))),
    )
        .prop_map(
            |(id, status, lemma, translation, example, frame_set_refs, mwe)| LexicalEntryOut {
                id,
                status: status.to_string(),
                part_of_speech: "verb".to_string(),
                lemma,
                translation,
                example,
                frame_set_refs,
                mwe: mwe.map(|(pattern_id, components)| MweRef {
                    pattern_id,
                    components,
                }),
            },
        )
}

fn pattern() -> impl Strategy<Value = MwePatternDef> {
    (
        id_string(),
        prop::collection::vec(
            (
                1usize..5,
                prop::option::of((word(), prop::option::of(word()))),
            ),
            0..3,
        ),
    )
        .prop_map(|(pattern_id, components)| MwePatternDef {
            pattern_id,
            components: components
                .into_iter()
                .map(|(rank, edge)| match edge {
                    Some((function, constituent)) => MweComponentRole {
                        rank,
                        function: Some(function),
                        constituent,
                    },
                    None => MweComponentRole {
                        rank,
                        function: None,
                        constituent: None,
                    },
                })
                .collect(),
        })
}

fn document() -> impl Strategy<Value = LmfDocument> {
    (
        prop::collection::vec(entry(), 0..4),
        prop::collection::vec(
            (id_string(), prop::collection::vec(id_string(), 1..4)),
            0..3,
        ),
        prop::collection::vec(frame(), 0..3),
        prop::collection::vec(pattern(), 0..2),
        prop::collection::vec(word(), 0..3),
    )
        .prop_map(|(entries, sets, frames, mwe_patterns, sources)| LmfDocument {
            metadata: Metadata {
                language: "fra".to_string(),
                category: "verb".to_string(),
                tool_version: "test".to_string(),
                sources,
            },
            entries,
            frame_sets: sets
                .into_iter()
                .map(|(id, frame_ids)| FrameSet { id, frame_ids })
                .collect(),
            frames,
            mwe_patterns,
        })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 300, ..ProptestConfig::default() })]
    #[test]
    fn read_inverts_emit_on_random_documents(doc in document()) {
        let bytes = emit_lmf(&doc);
        let (back, _) = read_lmf_lenient(&bytes).expect("emitted documents read back");
        prop_assert_eq!(back, doc);
    }

    #[test]
    fn emit_is_a_pure_function(doc in document()) {
        prop_assert_eq!(emit_lmf(&doc), emit_lmf(&doc));
    }
}
