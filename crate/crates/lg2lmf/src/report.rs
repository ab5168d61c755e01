//! Findings shared by the validator and by conversion-time warnings.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Warning,
    Error,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Severity::Warning => write!(f, "warning"),
            Severity::Error => write!(f, "error"),
        }
    }
}

/// Finding codes. Each document invariant checked by the validator has one;
/// conversion warnings reuse the same currency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Code {
    DanglingRef,
    ArgIdContiguity,
    ControlOutOfRange,
    ControlSelf,
    SetSize,
    SetHeterogeneous,
    MnemonicParse,
    StatusValue,
    MweComponents,
    MoodWithoutClause,
    AttrCompat,
    NoFrames,
    DuplicateId,
    UnknownFeature,
    OpaqueFeature,
    ConflictingCell,
    UnlistedColumn,
    DegenerateClass,
    MultipleMweTriggers,
    EmptyRealizations,
    UnknownConstituent,
}

impl Code {
    pub fn as_str(&self) -> &'static str {
        match self {
            Code::DanglingRef => "DANGLING_REF",
            Code::ArgIdContiguity => "ARG_ID_CONTIGUITY",
            Code::ControlOutOfRange => "CONTROL_OUT_OF_RANGE",
            Code::ControlSelf => "CONTROL_SELF",
            Code::SetSize => "SET_SIZE",
            Code::SetHeterogeneous => "SET_HETEROGENEOUS",
            Code::MnemonicParse => "MNEMONIC_PARSE",
            Code::StatusValue => "STATUS_VALUE",
            Code::MweComponents => "MWE_COMPONENTS",
            Code::MoodWithoutClause => "MOOD_WITHOUT_CLAUSE",
            Code::AttrCompat => "ATTR_COMPAT",
            Code::NoFrames => "NO_FRAMES",
            Code::DuplicateId => "DUPLICATE_ID",
            Code::UnknownFeature => "UNKNOWN_FEATURE",
            Code::OpaqueFeature => "OPAQUE_FEATURE",
            Code::ConflictingCell => "CONFLICTING_CELL",
            Code::UnlistedColumn => "UNLISTED_COLUMN",
            Code::DegenerateClass => "DEGENERATE_CLASS",
            Code::MultipleMweTriggers => "MULTIPLE_MWE_TRIGGERS",
            Code::EmptyRealizations => "EMPTY_REALIZATIONS",
            Code::UnknownConstituent => "UNKNOWN_CONSTITUENT",
        }
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    pub severity: Severity,
    pub code: Code,
    pub message: String,
    /// Slash path locating the fault, e.g. `Lexicon/LexicalEntry[V_5_25]`.
    pub location: String,
}

impl Finding {
    pub fn error(code: Code, location: impl Into<String>, message: impl Into<String>) -> Self {
        Finding {
            severity: Severity::Error,
            code,
            message: message.into(),
            location: location.into(),
        }
    }

    pub fn warning(code: Code, location: impl Into<String>, message: impl Into<String>) -> Self {
        Finding {
            severity: Severity::Warning,
            code,
            message: message.into(),
            location: location.into(),
        }
    }
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} at {}: {}",
            self.severity, self.code, self.location, self.message
        )
    }
}

/// Outcome of a validation run: ordered findings plus the pass verdict.
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub findings: Vec<Finding>,
}

impl ValidationReport {
    pub fn push(&mut self, finding: Finding) {
        self.findings.push(finding);
    }

    pub fn error_count(&self) -> usize {
        self.findings
            .iter()
            .filter(|f| f.severity == Severity::Error)
            .count()
    }

    pub fn warning_count(&self) -> usize {
        self.findings
            .iter()
            .filter(|f| f.severity == Severity::Warning)
            .count()
    }

    /// Pass iff zero errors.
    pub fn passed(&self) -> bool {
        self.error_count() == 0
    }

    pub fn has_code(&self, code: Code) -> bool {
        self.findings.iter().any(|f| f.code == code)
    }

    /// Escalate compatibility warnings to errors (the `--strict` mode).
    pub fn escalate_compat(&mut self) {
        for f in &mut self.findings {
            if f.code == Code::AttrCompat {
                f.severity = Severity::Error;
            }
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for finding in &self.findings {
            writeln!(f, "{finding}")?;
        }
        write!(
            f,
            "{}: {} error(s), {} warning(s)",
            if self.passed() { "pass" } else { "fail" },
            self.error_count(),
            self.warning_count()
        )
    }
}
