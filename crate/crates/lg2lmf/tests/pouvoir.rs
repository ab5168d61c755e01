//! Modal-type conformance: a verb taking a bare infinitive complement with
//! subject control compiles into the expected frame element.

use lg2lmf::convert::{convert_tables, ConvertOptions};
use lg2lmf::lmf::{canonicalize, emit_element};

const CATALOG: &str = "\
[feature] Aux =: avoir
kind = lexeme-property
name = auxiliary
value = avoir

[feature] N0 =: N-hum
kind = restriction
slot = 0
value = non-human

[feature] N0 =: Nhum
kind = restriction
slot = 0
value = human

[feature] N0 V V0-inf
kind = construction
pattern = N0 V V0-inf

[construction] N0 V V0-inf
arg = 0 Suj cl
arg = 1 Obl sinf
control = 1 0
control-label = CtrlSujObl
";

const EXPECTED: &str = r#"<SubcategorizationFrame
  id="[Suj:cl|sn,Obl:sinf];@avoir,@SujN-hum,@SujNhum,@CtrlSujObl;%actif">
  <LexemeProperty>
    <feat att="voice" val="active"/>
    <feat att="auxiliary" val="avoir"/>
  </LexemeProperty>
  <SyntacticArgument>
    <feat att="id" val="0"/>
    <feat att="syntacticFunction" val="subject"/>
    <feat att="syntacticConstituent" val="clitic-nominative NP"/>
    <feat att="restriction" val="human non-human"/>
  </SyntacticArgument>
  <SyntacticArgument>
    <feat att="id" val="1"/>
    <feat att="syntacticFunction" val="object"/>
    <feat att="syntacticConstituent" val="infinitive-clause"/>
    <feat att="control" val="0"/>
  </SyntacticArgument>
</SubcategorizationFrame>
"#;

#[test]
fn modal_control_frame_matches_the_expected_element() {
    let table = "N0 =: Nhum;N0 =: N-hum;<ENT>\n+;+;pouvoir\n";
    let classes = "<CLASS>;Aux =: avoir;N0 =: Nhum;N0 =: N-hum;N0 V V0-inf\n3;+;o;o;+\n";
    let conversion = convert_tables(
        &[("3".to_string(), table.as_bytes().to_vec())],
        classes.as_bytes(),
        CATALOG.as_bytes(),
        &ConvertOptions::default(),
    )
    .unwrap();
    let emitted = emit_element(
        &conversion.document,
        "SubcategorizationFrame",
        "[Suj:cl|sn,Obl:sinf];@avoir,@SujN-hum,@SujNhum,@CtrlSujObl;%actif",
    )
    .expect("the modal frame is in the document");
    assert_eq!(
        canonicalize(emitted.as_bytes()).unwrap(),
        canonicalize(EXPECTED.as_bytes()).unwrap()
    );
}
