//! Sentence structure rules: category sequences a correct sentence starts with.

use serde::{Deserialize, Serialize};

use crate::error::LoadError;
use crate::lexicon::Lexicon;
use crate::tagging::SentenceStructure;

pub const STRUCTURE_ROOT: &str = "ReglesApplicables";
pub const VERB_CATEGORY: &str = "Verbe";
/// Rule files spell the verb label in lower case.
pub const VERB_LITERAL: &str = "verbe";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RuleKind {
    Verbal,
    Nominal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatchMode {
    /// The pattern must be a prefix of the sentence labels.
    #[default]
    Prefix,
    /// The pattern must equal the sentence labels.
    Exact,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureRule {
    /// Rule text with surrounding whitespace trimmed.
    pub id: String,
    pub kind: RuleKind,
    /// Category names; the verb literal is stored as [`VERB_CATEGORY`].
    pub pattern: Vec<String>,
    pub mode: MatchMode,
}

impl StructureRule {
    pub fn new(kind: RuleKind, pattern: &[&str], mode: MatchMode) -> Self {
        let pattern: Vec<String> = pattern.iter().map(|p| canonical_label(p).to_owned()).collect();
        Self {
            id: pattern_id(&pattern),
            kind,
            pattern,
            mode,
        }
    }

    pub fn matches<S: AsRef<str>>(&self, labels: &[S]) -> bool {
        let fits = match self.mode {
            MatchMode::Prefix => self.pattern.len() <= labels.len(),
            MatchMode::Exact => self.pattern.len() == labels.len(),
        };
        fits && self.pattern.iter().zip(labels).all(|(p, l)| p == l.as_ref())
    }
}

fn canonical_label(name: &str) -> &str {
    if name == VERB_LITERAL {
        VERB_CATEGORY
    } else {
        name
    }
}

fn pattern_id(pattern: &[String]) -> String {
    pattern
        .iter()
        .map(|p| if p == VERB_CATEGORY { VERB_LITERAL } else { p.as_str() })
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "rule", rename_all = "lowercase")]
pub enum MatchOutcome {
    Matched(String),
    /// Nothing to match: every remaining word was skipped or unknown.
    Vacuous,
    Unmatched,
}

impl MatchOutcome {
    pub fn is_match(&self) -> bool {
        !matches!(self, MatchOutcome::Unmatched)
    }

    pub fn rule_id(&self) -> Option<&str> {
        match self {
            MatchOutcome::Matched(id) => Some(id),
            _ => None,
        }
    }
}

/// Loads a `<ReglesApplicables>` document, validating every category name
/// against the lexicon taxonomy.
pub fn load_structure_rules(xml: &str, lexicon: &Lexicon) -> Result<Vec<StructureRule>, LoadError> {
    let doc = roxmltree::Document::parse(xml).map_err(|e| LoadError::from_xml("structure rules", e))?;
    let root = doc.root_element();
    if root.tag_name().name() != STRUCTURE_ROOT {
        return Err(LoadError::WrongRoot {
            source_name: "structure rules".into(),
            expected: STRUCTURE_ROOT.into(),
            found: root.tag_name().name().into(),
        });
    }
    let line_of = |n: roxmltree::Node<'_, '_>| doc.text_pos_at(n.range().start).row;
    let unexpected = |n: roxmltree::Node<'_, '_>| LoadError::UnexpectedElement {
        source_name: "structure rules".into(),
        element: n.tag_name().name().into(),
        line: line_of(n),
    };

    let mut rules = Vec::new();
    for group in root.children().filter(|n| n.is_element()) {
        let kind = match group.tag_name().name() {
            "ReglesPhrasesVerbales" => RuleKind::Verbal,
            "ReglesPhrasesNominales" => RuleKind::Nominal,
            _ => return Err(unexpected(group)),
        };
        for node in group.children().filter(|n| n.is_element()) {
            if node.tag_name().name() != "regle" {
                return Err(unexpected(node));
            }
            let text = node.text().unwrap_or("");
            let pattern: Vec<&str> = text.split_whitespace().collect();
            if pattern.is_empty() {
                return Err(LoadError::InvalidRule {
                    line: line_of(node),
                    message: "empty <regle>".into(),
                });
            }
            let mode = match node.attribute("mode") {
                None | Some("prefix") => MatchMode::Prefix,
                Some("exact") => MatchMode::Exact,
                Some(other) => {
                    return Err(LoadError::InvalidRule {
                        line: line_of(node),
                        message: format!("unknown match mode {other:?}"),
                    })
                }
            };
            let rule = StructureRule::new(kind, &pattern, mode);
            if let Some(name) = pattern
                .iter()
                .find(|&&n| n != VERB_LITERAL && lexicon.category_id(n).is_none())
            {
                return Err(LoadError::UnknownCategory {
                    rule: rule.id,
                    name: (*name).to_owned(),
                });
            }
            rules.push(rule);
        }
    }
    if rules.is_empty() {
        return Err(LoadError::EmptyRuleSet("structure rules".into()));
    }
    Ok(rules)
}

/// Finds the first rule, in file order, that the labels satisfy.
pub fn match_structure(structure: &SentenceStructure, rules: &[StructureRule]) -> MatchOutcome {
    match_labels(&structure.labels, rules)
}

pub(crate) fn match_labels<S: AsRef<str>>(labels: &[S], rules: &[StructureRule]) -> MatchOutcome {
    if labels.is_empty() {
        return MatchOutcome::Vacuous;
    }
    rules
        .iter()
        .find(|r| r.matches(labels))
        .map(|r| MatchOutcome::Matched(r.id.clone()))
        .unwrap_or(MatchOutcome::Unmatched)
}
