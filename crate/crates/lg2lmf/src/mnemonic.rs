//! The three-section frame identifier `[args];@features;%redistributions`.
//!
//! Identifiers double as frame identities: the printed form is the interning
//! key, so parse and print must be exact inverses. The grammar is
//!
//! ```text
//! mnemonic := "[" [arg ("," arg)*] "]" ";" [at ("," at)*] ";" red ("," red)*
//! arg      := label ":" reals | label ":(" reals ")"
//! reals    := token ("|" token)*
//! at       := "@" label
//! red      := "%" label
//! ```
//!
//! Labels and tokens are any non-empty run of characters outside the
//! structural set `[](),|;:@%` and whitespace; the format carries no spaces.
//! Function labels (Suj, Obj, Obl, ...), @-labels and %-labels are open
//! vocabularies.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ArgSpec {
    pub function_label: String,
    pub optional: bool,
    pub realizations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MnemonicId {
    pub args: Vec<ArgSpec>,
    pub at_features: Vec<String>,
    pub redistributions: Vec<String>,
}

impl MnemonicId {
    /// The id with the %-section removed: `[args];@features` — the part all
    /// members of a frame set share.
    pub fn stem(&self) -> String {
        let full = self.to_string();
        match full.rfind(';') {
            Some(pos) => full[..pos].to_string(),
            None => full,
        }
    }

    /// Replace the redistribution list, keeping args and @-features.
    pub fn with_redistributions(&self, labels: Vec<String>) -> MnemonicId {
        MnemonicId {
            args: self.args.clone(),
            at_features: self.at_features.clone(),
            redistributions: labels,
        }
    }
}

impl fmt::Display for MnemonicId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, arg) in self.args.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}:", arg.function_label)?;
            if arg.optional {
                f.write_str("(")?;
            }
            for (j, token) in arg.realizations.iter().enumerate() {
                if j > 0 {
                    f.write_str("|")?;
                }
                f.write_str(token)?;
            }
            if arg.optional {
                f.write_str(")")?;
            }
        }
        f.write_str("];")?;
        for (i, at) in self.at_features.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "@{at}")?;
        }
        f.write_str(";")?;
        for (i, red) in self.redistributions.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "%{red}")?;
        }
        Ok(())
    }
}

fn is_structural(c: char) -> bool {
    matches!(c, '[' | ']' | '(' | ')' | ',' | '|' | ';' | ':' | '@' | '%') || c.is_whitespace()
}

struct Parser<'a> {
    input: &'a str,
    rest: std::iter::Peekable<std::str::Chars<'a>>,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str) -> Self {
        Parser {
            input,
            rest: input.chars().peekable(),
        }
    }

    fn fail(&self, message: impl Into<String>) -> Error {
        Error::Mnemonic {
            input: self.input.to_string(),
            message: message.into(),
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.rest.next() {
            Some(got) if got == c => Ok(()),
            Some(got) => Err(self.fail(format!("expected '{c}', found '{got}'"))),
            None => Err(self.fail(format!("expected '{c}', found end of input"))),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.rest.peek() == Some(&c) {
            self.rest.next();
            true
        } else {
            false
        }
    }

    fn token(&mut self, what: &str) -> Result<String> {
        let mut out = String::new();
        while let Some(&c) = self.rest.peek() {
            if is_structural(c) {
                break;
            }
            out.push(c);
            self.rest.next();
        }
        if out.is_empty() {
            Err(self.fail(format!("empty {what}")))
        } else {
            Ok(out)
        }
    }

    fn arg(&mut self) -> Result<ArgSpec> {
        let function_label = self.token("function label")?;
        self.expect(':')?;
        let optional = self.eat('(');
        let mut realizations = vec![self.token("realization")?];
        while self.eat('|') {
            realizations.push(self.token("realization")?);
        }
        if optional {
            self.expect(')')?;
        }
        Ok(ArgSpec {
            function_label,
            optional,
            realizations,
        })
    }

    fn mnemonic(&mut self) -> Result<MnemonicId> {
        self.expect('[')?;
        let mut args = Vec::new();
        if !self.eat(']') {
            args.push(self.arg()?);
            while self.eat(',') {
                args.push(self.arg()?);
            }
            self.expect(']')?;
        }
        self.expect(';')?;
        let mut at_features = Vec::new();
        if self.rest.peek() == Some(&'@') {
            loop {
                self.expect('@')?;
                at_features.push(self.token("@-label")?);
                if !self.eat(',') {
                    break;
                }
            }
        }
        self.expect(';')?;
        let mut redistributions = Vec::new();
        loop {
            self.expect('%')?;
            redistributions.push(self.token("%-label")?);
            if !self.eat(',') {
                break;
            }
        }
        if self.rest.peek().is_some() {
            let tail: String = self.rest.clone().collect();
            return Err(self.fail(format!("trailing input {tail:?}")));
        }
        Ok(MnemonicId {
            args,
            at_features,
            redistributions,
        })
    }
}

pub fn parse_mnemonic(input: &str) -> Result<MnemonicId> {
    Parser::new(input).mnemonic()
}

pub fn print_mnemonic(m: &MnemonicId) -> String {
    m.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roundtrip(s: &str) {
        let parsed = parse_mnemonic(s).unwrap();
        assert_eq!(parsed.to_string(), s, "print . parse should be identity");
        assert_eq!(parse_mnemonic(&parsed.to_string()).unwrap(), parsed);
    }

    #[test]
    fn literal_identifiers_roundtrip() {
        roundtrip("[Suj:cln|sn,Obl:(de-sinf)];@pron,@être,@SujNhum,@CtrlSujObl;%actif");
        roundtrip("[Suj:cln|sn,Obl:dans-sn];@pron,@être,@SujNhum;%actif");
        roundtrip(
            "[Suj:cln|scompl|sinf|sn,Obl:(à-sn|sn)];@avoir,@SujN-hum,@OblNhum;%actif,%actif_impersonnel",
        );
        roundtrip("[Suj:cl|sn,Obl:sinf];@avoir,@SujN-hum,@SujNhum,@CtrlSujObl;%actif");
        roundtrip("[Suj:cln|sn,Obj:sn];@être,@ObjN-hum,@SujNhum;%actif,%passif");
        roundtrip(
            "[Suj:cln|scompl|sinf|sn,Obj:sn|cla];@avoir,@ObjN-hum,@SujN-hum,@SujNhum;%actif,%passif",
        );
        roundtrip("[Suj:cln|scompl|sinf|sn,Obj:(à-sn|sn|cla)];@être,@SujN-hum,@ObjNhum;%actif");
    }

    #[test]
    fn minimal_forms() {
        roundtrip("[Suj:sn];;%actif");
        roundtrip("[];;%actif");
        let m = parse_mnemonic("[Suj:sn];;%actif").unwrap();
        assert!(m.at_features.is_empty());
        assert_eq!(m.args.len(), 1);
        assert!(!m.args[0].optional);
    }

    #[test]
    fn stem_drops_redistribution_section() {
        let m = parse_mnemonic("[Suj:cln|sn,Obj:sn];@être;%actif,%passif").unwrap();
        assert_eq!(m.stem(), "[Suj:cln|sn,Obj:sn];@être");
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            "",
            "[Suj:sn];;",
            "[Suj:sn];%actif",
            "[Suj:sn];;actif",
            "[Suj:];;%actif",
            "[Suj:()];;%actif",
            "[Suj:(sn];;%actif",
            "Suj:sn];;%actif",
            "[Suj:sn];;%actif;%passif",
            "[Suj:sn];;%actif trailing",
            "[Suj:sn|];;%actif",
            "[:sn];;%actif",
            "[Suj:sn];@;%actif",
        ] {
            assert!(parse_mnemonic(bad).is_err(), "should reject {bad:?}");
        }
    }

    #[test]
    fn parse_keeps_section_content() {
        let m = parse_mnemonic(
            "[Suj:cln|scompl|sinf|sn,Obl:(à-sn|sn)];@avoir,@SujN-hum,@OblNhum;%actif,%actif_impersonnel",
        )
        .unwrap();
        assert_eq!(m.args[0].function_label, "Suj");
        assert_eq!(m.args[0].realizations, ["cln", "scompl", "sinf", "sn"]);
        assert!(!m.args[0].optional);
        assert!(m.args[1].optional);
        assert_eq!(m.args[1].realizations, ["à-sn", "sn"]);
        assert_eq!(m.at_features, ["avoir", "SujN-hum", "OblNhum"]);
        assert_eq!(m.redistributions, ["actif", "actif_impersonnel"]);
    }
}
