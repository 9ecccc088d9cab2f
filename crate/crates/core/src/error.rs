use std::path::PathBuf;

use thiserror::Error;

/// Failure to load one of the rule databases or configuration files.
#[derive(Debug, Error)]
pub enum LoadError {
    #[error("{source_name}: malformed XML at line {line}, column {column}: {message}")]
    Xml {
        source_name: String,
        line: u32,
        column: u32,
        message: String,
    },
    #[error("{source_name}: expected root element <{expected}>, found <{found}>")]
    WrongRoot {
        source_name: String,
        expected: String,
        found: String,
    },
    #[error("empty lexicon")]
    EmptyLexicon,
    #[error("lexicon line {line}: element <{element}> must hold exactly one word, found {found:?}")]
    LeafWordCount {
        element: String,
        line: u32,
        found: String,
    },
    #[error("structure rule {rule:?} references unknown category {name:?}")]
    UnknownCategory { rule: String, name: String },
    #[error("{source_name} line {line}: unexpected element <{element}>")]
    UnexpectedElement {
        source_name: String,
        element: String,
        line: u32,
    },
    #[error("structure rules line {line}: {message}")]
    InvalidRule { line: u32, message: String },
    #[error("{0}: rule set is empty")]
    EmptyRuleSet(String),
    #[error("conjugation rules line {line}: duplicate entry for subject {key} in {tense}")]
    DuplicateConjugation { key: String, tense: String, line: u32 },
    #[error("conjugation rules line {line}: {key} / {tense} is missing <{element}>")]
    MissingAffix {
        key: String,
        tense: String,
        element: String,
        line: u32,
    },
    #[error("conjugation rules line {line}: {message}")]
    Conjugation { line: u32, message: String },
    #[error("affix inventory line {line}: {message}")]
    Affixes { line: usize, message: String },
    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl LoadError {
    pub(crate) fn from_xml(source_name: &str, err: roxmltree::Error) -> Self {
        let pos = err.pos();
        LoadError::Xml {
            source_name: source_name.to_owned(),
            line: pos.row,
            column: pos.col,
            message: err.to_string(),
        }
    }
}

/// A pipeline stage received input that an earlier stage should have filtered.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ContractError {
    #[error("token {surface:?} has no lexical analysis and cannot be labelled")]
    UnanalyzedToken { surface: String },
}
