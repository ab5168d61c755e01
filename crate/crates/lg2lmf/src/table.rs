//! Ingestion of Lexicon-Grammar class tables and the table of classes.
//!
//! A class table is a delimited matrix: one row per lexical item, one column
//! per feature, plus the reserved columns `<ENT>` (lemma), `<OPT>` (example
//! sentence) and `<TRAD>` (gloss). The table of classes states, per
//! (class, feature), whether the feature holds class-wide (`+`/`-`), is coded
//! entry by entry (`o`), should be coded but is not yet listed (`O`), or is
//! undecided (`?`). Merging the two yields one resolved feature map per entry.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::catalog::normalize_feature_id;
use crate::error::{Error, Result};
use crate::report::{Code, Finding};

pub const LEMMA_COLUMN: &str = "<ENT>";
pub const EXAMPLE_COLUMN: &str = "<OPT>";
pub const TRANSLATION_COLUMN: &str = "<TRAD>";
/// Cell marking an empty lexical element (e.g. no clitic, no gloss).
pub const EMPTY_ELEMENT: &str = "<E>";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Category {
    Verb,
}

impl Category {
    /// One-letter code used in entry identifiers.
    pub fn code(&self) -> &'static str {
        match self {
            Category::Verb => "V",
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Category::Verb => "verb",
        }
    }

    pub fn from_name(name: &str) -> Option<Category> {
        match name {
            "verb" => Some(Category::Verb),
            _ => None,
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One decoded table cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CellValue {
    Plus,
    Minus,
    /// The `~` code: the feature applies to the class but was not encoded
    /// for this entry.
    Unencoded,
    /// Free text, including `<E>`; never empty, never `+`/`-`/`~`.
    Lexical(String),
}

/// Decode one trimmed cell string.
pub fn cell_decode(text: &str) -> Result<CellValue> {
    match text {
        "+" => Ok(CellValue::Plus),
        "-" => Ok(CellValue::Minus),
        "~" => Ok(CellValue::Unencoded),
        "" => Err(Error::Table {
            class_id: String::new(),
            message: "empty cell".into(),
        }),
        other => Ok(CellValue::Lexical(other.to_string())),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryRow {
    /// 1-based position in the table.
    pub index: usize,
    pub lemma: String,
    pub cells: BTreeMap<String, CellValue>,
    pub example: Option<String>,
    pub translation: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassTable {
    pub class_id: String,
    pub category: Category,
    /// Feature columns in file order (reserved columns excluded).
    pub columns: Vec<String>,
    pub rows: Vec<EntryRow>,
}

fn read_records(bytes: &[u8], delimiter: u8, context: &str) -> Result<Vec<Vec<String>>> {
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(delimiter)
        .has_headers(false)
        .flexible(true)
        .from_reader(bytes);
    let mut records = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Table {
            class_id: context.to_string(),
            message: format!("record {}: {e}", i + 1),
        })?;
        records.push(record.iter().map(|s| s.to_string()).collect());
    }
    Ok(records)
}

/// Parse one class table from delimited UTF-8 text.
pub fn parse_class_table(
    bytes: &[u8],
    class_id: &str,
    category: Category,
    delimiter: u8,
) -> Result<ClassTable> {
    let records = read_records(bytes, delimiter, class_id)?;
    let mut records = records.into_iter();
    let header: Vec<String> = records
        .next()
        .ok_or_else(|| Error::Table {
            class_id: class_id.to_string(),
            message: "empty file, expected a header of feature identifiers".into(),
        })?
        .into_iter()
        .map(|c| c.trim().to_string())
        .collect();

    let mut lemma_col = None;
    let mut example_col = None;
    let mut translation_col = None;
    let mut columns = Vec::new();
    let mut column_of = Vec::new(); // header position -> feature id (or None for reserved)
    let mut seen = BTreeSet::new();
    for (i, raw) in header.iter().enumerate() {
        match raw.as_str() {
            LEMMA_COLUMN => {
                if lemma_col.replace(i).is_some() {
                    return Err(Error::Table {
                        class_id: class_id.to_string(),
                        message: format!("duplicate {LEMMA_COLUMN} column"),
                    });
                }
                column_of.push(None);
            }
            EXAMPLE_COLUMN => {
                example_col = Some(i);
                column_of.push(None);
            }
            TRANSLATION_COLUMN => {
                translation_col = Some(i);
                column_of.push(None);
            }
            _ => {
                let id = normalize_feature_id(raw);
                if id.is_empty() {
                    return Err(Error::Table {
                        class_id: class_id.to_string(),
                        message: format!("empty feature identifier in header column {}", i + 1),
                    });
                }
                if !seen.insert(id.clone()) {
                    return Err(Error::Table {
                        class_id: class_id.to_string(),
                        message: format!("duplicate feature identifier {id:?} in header"),
                    });
                }
                columns.push(id.clone());
                column_of.push(Some(id));
            }
        }
    }
    let lemma_col = lemma_col.ok_or_else(|| Error::Table {
        class_id: class_id.to_string(),
        message: format!("missing {LEMMA_COLUMN} header"),
    })?;

    let mut rows = Vec::new();
    for (n, record) in records.enumerate() {
        let index = n + 1;
        if record.len() != header.len() {
            return Err(Error::Table {
                class_id: class_id.to_string(),
                message: format!(
                    "row {index} has {} cells under a {}-column header",
                    record.len(),
                    header.len()
                ),
            });
        }
        let mut cells = BTreeMap::new();
        let mut lemma = String::new();
        let mut example = None;
        let mut translation = None;
        for (i, raw) in record.iter().enumerate() {
            let text = raw.trim();
            if i == lemma_col {
                if text.is_empty() {
                    return Err(Error::Cell {
                        class_id: class_id.to_string(),
                        row: index,
                        column: LEMMA_COLUMN.to_string(),
                        message: "empty lemma".into(),
                    });
                }
                lemma = text.to_string();
            } else if Some(i) == example_col {
                example = free_text(text, class_id, index, EXAMPLE_COLUMN)?;
            } else if Some(i) == translation_col {
                translation = free_text(text, class_id, index, TRANSLATION_COLUMN)?;
            } else if let Some(feature) = &column_of[i] {
                let value = cell_decode(text).map_err(|_| Error::Cell {
                    class_id: class_id.to_string(),
                    row: index,
                    column: feature.clone(),
                    message: "empty cell (tables must be dense)".into(),
                })?;
                cells.insert(feature.clone(), value);
            }
        }
        rows.push(EntryRow {
            index,
            lemma,
            cells,
            example,
            translation,
        });
    }

    Ok(ClassTable {
        class_id: class_id.to_string(),
        category,
        columns,
        rows,
    })
}

fn free_text(text: &str, class_id: &str, row: usize, column: &str) -> Result<Option<String>> {
    if text.is_empty() {
        return Err(Error::Cell {
            class_id: class_id.to_string(),
            row,
            column: column.to_string(),
            message: format!("empty cell (use {EMPTY_ELEMENT} for no value)"),
        });
    }
    if text == EMPTY_ELEMENT {
        Ok(None)
    } else {
        Ok(Some(text.to_string()))
    }
}

/// Symbol of the table of classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassSymbol {
    Plus,
    Minus,
    /// Feature explicitly coded in the class table.
    LowerO,
    /// Feature should be coded but is not yet listed in the table.
    UpperO,
    /// Cell not filled in yet.
    Question,
}

impl ClassSymbol {
    fn decode(text: &str) -> Option<ClassSymbol> {
        match text {
            "+" => Some(ClassSymbol::Plus),
            "-" => Some(ClassSymbol::Minus),
            "o" => Some(ClassSymbol::LowerO),
            "O" => Some(ClassSymbol::UpperO),
            "?" => Some(ClassSymbol::Question),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassFeatureMatrix {
    pub category: Category,
    pub classes: Vec<String>,
    pub features: Vec<String>,
    cells: BTreeMap<(String, String), ClassSymbol>,
}

impl ClassFeatureMatrix {
    pub fn symbol(&self, class_id: &str, feature: &str) -> Option<ClassSymbol> {
        self.cells
            .get(&(class_id.to_string(), feature.to_string()))
            .copied()
    }

    pub fn has_class(&self, class_id: &str) -> bool {
        self.classes.iter().any(|c| c == class_id)
    }
}

/// Parse the table of classes: rows are classes, columns are features, the
/// first column holds class ids.
pub fn parse_table_of_classes(
    bytes: &[u8],
    category: Category,
    delimiter: u8,
) -> Result<ClassFeatureMatrix> {
    let records = read_records(bytes, delimiter, "table of classes")
        .map_err(|e| Error::Matrix(e.to_string()))?;
    let mut records = records.into_iter();
    let header: Vec<String> = records
        .next()
        .ok_or_else(|| Error::Matrix("empty file".into()))?
        .into_iter()
        .map(|c| c.trim().to_string())
        .collect();
    if header.len() < 2 {
        return Err(Error::Matrix(
            "header must list the class-id column followed by feature identifiers".into(),
        ));
    }

    let mut features = Vec::new();
    let mut seen = BTreeSet::new();
    for raw in &header[1..] {
        let id = normalize_feature_id(raw);
        if id.is_empty() {
            return Err(Error::Matrix("empty feature identifier in header".into()));
        }
        if !seen.insert(id.clone()) {
            return Err(Error::Matrix(format!(
                "duplicate feature identifier {id:?} in header"
            )));
        }
        features.push(id);
    }

    let mut classes = Vec::new();
    let mut cells = BTreeMap::new();
    for (n, record) in records.enumerate() {
        if record.len() != header.len() {
            return Err(Error::Matrix(format!(
                "row {} has {} cells under a {}-column header",
                n + 2,
                record.len(),
                header.len()
            )));
        }
        let class_id = record[0].trim().to_string();
        if class_id.is_empty() {
            return Err(Error::Matrix(format!("row {}: empty class id", n + 2)));
        }
        if classes.contains(&class_id) {
            return Err(Error::Matrix(format!("duplicate class row {class_id:?}")));
        }
        for (feature, raw) in features.iter().zip(record[1..].iter()) {
            let text = raw.trim();
            let symbol = ClassSymbol::decode(text).ok_or_else(|| {
                Error::Matrix(format!(
                    "class {class_id}, feature {feature:?}: symbol {text:?} outside {{+,-,o,O,?}}"
                ))
            })?;
            cells.insert((class_id.clone(), feature.clone()), symbol);
        }
        classes.push(class_id);
    }

    Ok(ClassFeatureMatrix {
        category,
        classes,
        features,
        cells,
    })
}

/// Per-entry resolution of a feature after merging table and matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResolvedValue {
    True,
    False,
    Unencoded,
    Lexical(String),
}

impl ResolvedValue {
    pub fn is_encoded(&self) -> bool {
        !matches!(self, ResolvedValue::Unencoded)
    }

    /// Positive information: the feature contributes to the entry.
    pub fn is_positive(&self) -> bool {
        matches!(self, ResolvedValue::True | ResolvedValue::Lexical(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryRecord {
    pub class_id: String,
    pub row_index: usize,
    pub lemma: String,
    pub example: Option<String>,
    pub translation: Option<String>,
    pub resolved: BTreeMap<String, ResolvedValue>,
    pub encoded_count: usize,
    pub unencoded_count: usize,
}

/// Merge one class table with the table of classes into per-entry records.
///
/// Matrix `+`/`-` apply class-wide; `o` defers to the entry's own cell
/// (a missing column counts as unencoded — tables lag behind the class
/// inventory); `O` and `?` features are omitted from the resolved map and
/// from both counts. Conflicts between a class-wide symbol and an explicit
/// contradicting table cell are surfaced as warnings, the class level wins.
pub fn merge_features(
    table: &ClassTable,
    matrix: &ClassFeatureMatrix,
) -> Result<(Vec<EntryRecord>, Vec<Finding>)> {
    if !matrix.has_class(&table.class_id) {
        return Err(Error::ClassNotInMatrix {
            class_id: table.class_id.clone(),
        });
    }
    let mut findings = Vec::new();
    for column in &table.columns {
        if !matrix.features.iter().any(|f| f == column) {
            findings.push(Finding::warning(
                Code::UnlistedColumn,
                format!("table[{}]", table.class_id),
                format!("column {column:?} is not a feature of the table of classes; ignored"),
            ));
        }
    }

    let mut records = Vec::new();
    for row in &table.rows {
        let mut resolved = BTreeMap::new();
        for feature in &matrix.features {
            let symbol = matrix
                .symbol(&table.class_id, feature)
                .expect("grid is total over (class, feature)");
            let value = match symbol {
                ClassSymbol::Plus | ClassSymbol::Minus => {
                    let class_value = if symbol == ClassSymbol::Plus {
                        ResolvedValue::True
                    } else {
                        ResolvedValue::False
                    };
                    if let Some(cell) = row.cells.get(feature) {
                        let contradicts = matches!(
                            (symbol, cell),
                            (ClassSymbol::Plus, CellValue::Minus)
                                | (ClassSymbol::Minus, CellValue::Plus)
                        );
                        if contradicts {
                            findings.push(Finding::warning(
                                Code::ConflictingCell,
                                format!("table[{}]/row[{}]", table.class_id, row.index),
                                format!(
                                    "feature {feature:?}: table cell contradicts the class-wide \
                                     symbol; class level wins"
                                ),
                            ));
                        }
                    }
                    Some(class_value)
                }
                ClassSymbol::LowerO => Some(match row.cells.get(feature) {
                    Some(CellValue::Plus) => ResolvedValue::True,
                    Some(CellValue::Minus) => ResolvedValue::False,
                    Some(CellValue::Unencoded) => ResolvedValue::Unencoded,
                    Some(CellValue::Lexical(text)) => ResolvedValue::Lexical(text.clone()),
                    None => ResolvedValue::Unencoded,
                }),
                ClassSymbol::UpperO | ClassSymbol::Question => None,
            };
            if let Some(value) = value {
                resolved.insert(feature.clone(), value);
            }
        }
        let encoded_count = resolved.values().filter(|v| v.is_encoded()).count();
        let unencoded_count = resolved.len() - encoded_count;
        records.push(EntryRecord {
            class_id: table.class_id.clone(),
            row_index: row.index,
            lemma: row.lemma.clone(),
            example: row.example.clone(),
            translation: row.translation.clone(),
            resolved,
            encoded_count,
            unencoded_count,
        });
    }
    Ok((records, findings))
}
