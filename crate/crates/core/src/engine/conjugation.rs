//! Verb agreement: the prebase/postbase a present-tense verb must carry for
//! its subject and tense context.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::engine::report::{Fault, FaultKind};
use crate::engine::structure::VERB_CATEGORY;
use crate::error::LoadError;
use crate::lexicon::Lexicon;
use crate::segmentation::{normalize_word, NormalizationOptions, Sentence};
use crate::tagging::{SentenceStructure, TaggedToken};

pub const PRONOUN_CATEGORY: &str = "PronomPersonnel";
/// Particles that put the following verb in the negated present.
pub const NEGATION_PARTICLES: [&str; 2] = ["لم", "لن"];

const PRONOUN_ELEMENT: &str = "PronomPersonnel";
const SUBJECT_ELEMENT: &str = "Sujet";
const NO_SUBJECT_ELEMENT: &str = "SansSujet";
const WILDCARD: &str = "*";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TenseContext {
    PresentSimple,
    PresentNegation,
}

impl fmt::Display for TenseContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TenseContext::PresentSimple => "PresentSimple",
            TenseContext::PresentNegation => "PresentNegation",
        })
    }
}

impl FromStr for TenseContext {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "PresentSimple" => Ok(TenseContext::PresentSimple),
            "PresentNegation" => Ok(TenseContext::PresentNegation),
            other => Err(format!("unknown tense element <{other}>")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Gender {
    Masculine,
    Feminine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Number {
    Singular,
    Dual,
    Plural,
}

/// Gender and number of a nominal subject, written `feminine-singular` etc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SubjectFeature {
    pub gender: Gender,
    pub number: Number,
}

impl SubjectFeature {
    pub const fn new(gender: Gender, number: Number) -> Self {
        Self { gender, number }
    }
}

impl fmt::Display for SubjectFeature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = match self.gender {
            Gender::Masculine => "masculine",
            Gender::Feminine => "feminine",
        };
        let n = match self.number {
            Number::Singular => "singular",
            Number::Dual => "dual",
            Number::Plural => "plural",
        };
        write!(f, "{g}-{n}")
    }
}

impl FromStr for SubjectFeature {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (g, n) = s.split_once('-').ok_or_else(|| format!("bad subject feature {s:?}"))?;
        let gender = match g {
            "masculine" => Gender::Masculine,
            "feminine" => Gender::Feminine,
            _ => return Err(format!("bad gender in {s:?}")),
        };
        let number = match n {
            "singular" => Number::Singular,
            "dual" => Number::Dual,
            "plural" => Number::Plural,
            _ => return Err(format!("bad number in {s:?}")),
        };
        Ok(SubjectFeature { gender, number })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AgreementKey {
    /// A personal pronoun, normalized.
    Pronoun(String),
    Subject(SubjectFeature),
    NoExplicitSubject,
}

impl fmt::Display for AgreementKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AgreementKey::Pronoun(p) => f.write_str(p),
            AgreementKey::Subject(s) => s.fmt(f),
            AgreementKey::NoExplicitSubject => f.write_str("no-explicit-subject"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum AffixRequirement {
    Any,
    Exact(String),
}

impl AffixRequirement {
    fn parse(text: &str, options: NormalizationOptions) -> Self {
        let text = text.trim();
        if text == WILDCARD {
            AffixRequirement::Any
        } else {
            AffixRequirement::Exact(normalize_word(text, options))
        }
    }

    pub fn accepts(&self, affix: &str) -> bool {
        match self {
            AffixRequirement::Any => true,
            AffixRequirement::Exact(a) => a == affix,
        }
    }
}

impl fmt::Display for AffixRequirement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AffixRequirement::Any => f.write_str(WILDCARD),
            AffixRequirement::Exact(a) => f.write_str(display_affix(a)),
        }
    }
}

fn display_affix(a: &str) -> &str {
    if a.is_empty() {
        "∅"
    } else {
        a
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugationRule {
    pub agreement_key: AgreementKey,
    pub tense_context: TenseContext,
    pub required_prebase: AffixRequirement,
    pub required_postbase: AffixRequirement,
}

impl ConjugationRule {
    pub fn id(&self) -> String {
        format!("{}/{}", self.agreement_key, self.tense_context)
    }
}

/// Loads the conjugation database.
///
/// The document is either a single `<PronomPersonnel valeur="...">` entry or
/// a wrapper element holding any number of entries. Besides pronoun entries,
/// `<Sujet valeur="feminine-singular">` keys a rule on the features of a
/// nominal subject and `<SansSujet>` applies when no subject is found. Each
/// entry holds `<PresentSimple>` and/or `<PresentNegation>` with a
/// `<prebase>` and a `<PostBase>`; `*` accepts any affix.
pub fn load_conjugation_rules(
    xml: &str,
    options: NormalizationOptions,
) -> Result<Vec<ConjugationRule>, LoadError> {
    let doc = roxmltree::Document::parse(xml).map_err(|e| LoadError::from_xml("conjugation rules", e))?;
    let line_of = |n: roxmltree::Node<'_, '_>| doc.text_pos_at(n.range().start).row;
    let root = doc.root_element();
    let entries: Vec<roxmltree::Node<'_, '_>> = if is_entry(root) {
        vec![root]
    } else {
        root.children().filter(|n| n.is_element()).collect()
    };

    let mut rules = Vec::new();
    let mut seen: HashMap<(AgreementKey, TenseContext), ()> = HashMap::new();
    for entry in entries {
        let line = line_of(entry);
        let valeur = || {
            entry.attribute("valeur").ok_or_else(|| LoadError::Conjugation {
                line,
                message: format!("<{}> needs a valeur attribute", entry.tag_name().name()),
            })
        };
        let key = match entry.tag_name().name() {
            PRONOUN_ELEMENT => AgreementKey::Pronoun(normalize_word(valeur()?.trim(), options)),
            SUBJECT_ELEMENT => AgreementKey::Subject(
                valeur()?
                    .trim()
                    .parse()
                    .map_err(|message| LoadError::Conjugation { line, message })?,
            ),
            NO_SUBJECT_ELEMENT => AgreementKey::NoExplicitSubject,
            other => {
                return Err(LoadError::UnexpectedElement {
                    source_name: "conjugation rules".into(),
                    element: other.into(),
                    line,
                })
            }
        };

        for tense_node in entry.children().filter(|n| n.is_element()) {
            let tense_line = line_of(tense_node);
            let tense: TenseContext = tense_node
                .tag_name()
                .name()
                .parse()
                .map_err(|message| LoadError::Conjugation {
                    line: tense_line,
                    message,
                })?;
            if seen.insert((key.clone(), tense), ()).is_some() {
                return Err(LoadError::DuplicateConjugation {
                    key: key.to_string(),
                    tense: tense.to_string(),
                    line: tense_line,
                });
            }
            let affix = |element: &str| {
                tense_node
                    .children()
                    .find(|n| n.is_element() && n.tag_name().name() == element)
                    .map(|n| AffixRequirement::parse(n.text().unwrap_or(""), options))
                    .ok_or_else(|| LoadError::MissingAffix {
                        key: key.to_string(),
                        tense: tense.to_string(),
                        element: element.into(),
                        line: tense_line,
                    })
            };
            rules.push(ConjugationRule {
                agreement_key: key.clone(),
                tense_context: tense,
                required_prebase: affix("prebase")?,
                required_postbase: affix("PostBase")?,
            });
        }
    }
    if rules.is_empty() {
        return Err(LoadError::EmptyRuleSet("conjugation rules".into()));
    }
    Ok(rules)
}

fn is_entry(node: roxmltree::Node<'_, '_>) -> bool {
    matches!(
        node.tag_name().name(),
        PRONOUN_ELEMENT | SUBJECT_ELEMENT | NO_SUBJECT_ELEMENT
    )
}

/// Conjugation rules indexed by `(agreement key, tense)`.
#[derive(Debug, Clone)]
pub struct ConjugationTable {
    rules: Vec<ConjugationRule>,
    index: HashMap<(AgreementKey, TenseContext), usize>,
}

impl ConjugationTable {
    pub fn new(rules: Vec<ConjugationRule>) -> Self {
        let index = rules
            .iter()
            .enumerate()
            .map(|(i, r)| ((r.agreement_key.clone(), r.tense_context), i))
            .collect();
        Self { rules, index }
    }

    pub fn lookup(&self, key: &AgreementKey, tense: TenseContext) -> Option<&ConjugationRule> {
        self.index.get(&(key.clone(), tense)).map(|&i| &self.rules[i])
    }

    pub fn rules(&self) -> &[ConjugationRule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }
}

/// Subject features carried by nominal categories.
fn category_feature(name: &str) -> Option<SubjectFeature> {
    match name {
        "NomPropreFeminin" => Some(SubjectFeature::new(Gender::Feminine, Number::Singular)),
        "NomPropreMasculin" => Some(SubjectFeature::new(Gender::Masculine, Number::Singular)),
        "NomPluriel" => Some(SubjectFeature::new(Gender::Masculine, Number::Plural)),
        _ => None,
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConjugationOutcome {
    pub faults: Vec<Fault>,
    /// Resolved (subject, tense) pairs without a rule.
    pub warnings: Vec<String>,
}

/// Checks every verb of a disambiguated sentence against the table.
///
/// The tense is negated when the word right before the verb is a negation
/// particle. The subject is the nearest non-function word before the verb
/// when it is a personal pronoun, a proper noun or a plural noun; otherwise
/// a proper noun right after the verb; otherwise there is no explicit
/// subject.
pub fn check_conjugation(
    sentence: &Sentence,
    tagged: &[TaggedToken],
    structure: &SentenceStructure,
    lexicon: &Lexicon,
    table: &ConjugationTable,
) -> ConjugationOutcome {
    let mut outcome = ConjugationOutcome::default();
    if !structure.contains(VERB_CATEGORY) {
        return outcome;
    }

    let category_of = |t: &TaggedToken| {
        t.chosen_analysis()
            .map(|a| lexicon.category_name(a.category))
            .unwrap_or("")
    };
    let mut skipped = vec![false; tagged.len()];
    for &i in &structure.skipped {
        skipped[i] = true;
    }
    let content: Vec<usize> = (0..tagged.len()).filter(|&i| !skipped[i]).collect();

    for (pos, &ti) in content.iter().enumerate() {
        let verb = &tagged[ti];
        if category_of(verb) != VERB_CATEGORY {
            continue;
        }
        let analysis = verb.chosen_analysis().expect("disambiguated token");

        let negated = verb.ordinal > 0
            && NEGATION_PARTICLES.contains(&sentence.tokens[verb.ordinal - 1].surface.as_str());
        let tense = if negated {
            TenseContext::PresentNegation
        } else {
            TenseContext::PresentSimple
        };

        let before = pos.checked_sub(1).map(|p| &tagged[content[p]]);
        let after = content.get(pos + 1).map(|&i| &tagged[i]);
        let key = subject_key(before, after, &category_of);

        let Some(rule) = table.lookup(&key, tense) else {
            outcome
                .warnings
                .push(format!("no conjugation rule for subject {key} in {tense}"));
            continue;
        };
        if rule.required_prebase.accepts(&analysis.prefix) && rule.required_postbase.accepts(&analysis.suffix) {
            continue;
        }
        outcome.faults.push(Fault {
            kind: FaultKind::Conjugation,
            sentence_index: sentence.index,
            spans: vec![verb.token.span],
            ordinal: verb.ordinal,
            message: format!(
                "{} ({}) expects prebase {} and postbase {}, found {} and {}",
                key,
                tense,
                rule.required_prebase,
                rule.required_postbase,
                display_affix(&analysis.prefix),
                display_affix(&analysis.suffix),
            ),
            rule_id: Some(rule.id()),
        });
    }
    outcome
}

fn subject_key<'t>(
    before: Option<&'t TaggedToken>,
    after: Option<&'t TaggedToken>,
    category_of: &dyn Fn(&'t TaggedToken) -> &'t str,
) -> AgreementKey {
    if let Some(t) = before {
        let cat = category_of(t);
        if cat == PRONOUN_CATEGORY {
            let base = t.chosen_analysis().map(|a| a.base.clone()).unwrap_or_default();
            return AgreementKey::Pronoun(base);
        }
        if let Some(f) = category_feature(cat) {
            return AgreementKey::Subject(f);
        }
    }
    // a verb placed before its subject stays singular
    if let Some(f) = after.and_then(|t| category_feature(category_of(t))) {
        if f.number == Number::Singular {
            return AgreementKey::Subject(f);
        }
    }
    AgreementKey::NoExplicitSubject
}
