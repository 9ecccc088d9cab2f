//! The fault-detection pipeline.
//!
//! For each sentence: unknown words become spelling faults and leave the
//! pipeline; the rest are labelled and disambiguated against the structure
//! rules; a sentence without a matching rule gets a structure fault; finally
//! verbs are checked against the conjugation table.

pub mod conjugation;
pub mod report;
pub mod structure;

use rayon::prelude::*;

use crate::error::LoadError;
use crate::lexicon::{analyze_word, AffixInventory, Lexicon};
use crate::segmentation::{normalize, split_sentences, NormalizationOptions, Sentence, Span};
use crate::tagging::{disambiguate, SentenceStructure, TaggedToken};

use conjugation::{check_conjugation, load_conjugation_rules, ConjugationTable};
use report::{Fault, FaultKind, Report, SentenceReport};
use structure::{load_structure_rules, MatchOutcome, StructureRule};

/// Raw contents of the four data files.
#[derive(Debug, Clone, Copy)]
pub struct EngineSources<'a> {
    pub lexicon: &'a str,
    pub affixes: &'a str,
    pub structure_rules: &'a str,
    pub conjugation_rules: &'a str,
}

/// Lexicon and rule sets, immutable once loaded.
#[derive(Debug, Clone)]
pub struct Engine {
    options: NormalizationOptions,
    lexicon: Lexicon,
    affixes: AffixInventory,
    structure_rules: Vec<StructureRule>,
    conjugation: ConjugationTable,
}

/// Everything the pipeline derived for one sentence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentenceAnalysis {
    /// Spelling, then structure, then conjugation faults.
    pub faults: Vec<Fault>,
    pub tagged: Vec<TaggedToken>,
    pub structure: SentenceStructure,
    pub outcome: MatchOutcome,
    pub warnings: Vec<String>,
}

impl Engine {
    pub fn new(
        options: NormalizationOptions,
        lexicon: Lexicon,
        affixes: AffixInventory,
        structure_rules: Vec<StructureRule>,
        conjugation: ConjugationTable,
    ) -> Self {
        Self {
            options,
            lexicon,
            affixes,
            structure_rules,
            conjugation,
        }
    }

    pub fn from_sources(sources: EngineSources<'_>, options: NormalizationOptions) -> Result<Self, LoadError> {
        let lexicon = Lexicon::from_xml(sources.lexicon, options)?;
        let affixes = AffixInventory::parse(sources.affixes, options)?;
        let structure_rules = load_structure_rules(sources.structure_rules, &lexicon)?;
        let conjugation = ConjugationTable::new(load_conjugation_rules(sources.conjugation_rules, options)?);
        Ok(Self::new(options, lexicon, affixes, structure_rules, conjugation))
    }

    /// The engine over the bundled demo lexicon and rule files.
    pub fn builtin(options: NormalizationOptions) -> Self {
        Self::from_sources(crate::config::BUILTIN_SOURCES, options).expect("bundled data files load")
    }

    pub fn options(&self) -> NormalizationOptions {
        self.options
    }

    pub fn lexicon(&self) -> &Lexicon {
        &self.lexicon
    }

    pub fn affixes(&self) -> &AffixInventory {
        &self.affixes
    }

    pub fn structure_rules(&self) -> &[StructureRule] {
        &self.structure_rules
    }

    pub fn conjugation(&self) -> &ConjugationTable {
        &self.conjugation
    }

    pub fn split(&self, text: &str) -> Vec<Sentence> {
        split_sentences(&normalize(text, self.options))
    }

    pub fn analyze_sentence(&self, sentence: &Sentence) -> SentenceAnalysis {
        let mut faults = Vec::new();
        let mut tagged = Vec::with_capacity(sentence.tokens.len());
        for (ordinal, token) in sentence.tokens.iter().enumerate() {
            // an empty analysis list is the Unknown spelling verdict
            let candidates = analyze_word(&token.surface, &self.lexicon, &self.affixes);
            if candidates.is_empty() {
                faults.push(Fault {
                    kind: FaultKind::Spelling,
                    sentence_index: sentence.index,
                    spans: vec![token.span],
                    ordinal,
                    message: format!("{} is not a known word", token.surface),
                    rule_id: None,
                });
            } else {
                tagged.push(TaggedToken {
                    token: token.clone(),
                    ordinal,
                    candidates,
                    chosen: None,
                });
            }
        }

        let (structure, outcome) = disambiguate(&mut tagged, &self.structure_rules, &self.lexicon);

        if outcome == MatchOutcome::Unmatched {
            let span = sentence.span().expect("sentences are never empty");
            faults.push(Fault {
                kind: FaultKind::Structure,
                sentence_index: sentence.index,
                spans: vec![span],
                ordinal: 0,
                message: format!("sentence structure [{}] matches no rule", structure.labels.join(" ")),
                rule_id: None,
            });
        }

        let conj = check_conjugation(sentence, &tagged, &structure, &self.lexicon, &self.conjugation);
        faults.extend(conj.faults);

        SentenceAnalysis {
            faults,
            tagged,
            structure,
            outcome,
            warnings: conj.warnings,
        }
    }

    pub fn analyze_text(&self, text: &str) -> Report {
        let sentences = self.split(text);
        let analyses: Vec<SentenceAnalysis> = sentences.iter().map(|s| self.analyze_sentence(s)).collect();
        assemble(&sentences, analyses)
    }

    /// Same result as [`Engine::analyze_text`], with sentences analyzed on
    /// the rayon pool.
    pub fn analyze_text_parallel(&self, text: &str) -> Report {
        let sentences = self.split(text);
        let analyses: Vec<SentenceAnalysis> = sentences.par_iter().map(|s| self.analyze_sentence(s)).collect();
        assemble(&sentences, analyses)
    }
}

fn assemble(sentences: &[Sentence], analyses: Vec<SentenceAnalysis>) -> Report {
    let mut faults = Vec::new();
    let mut reports = Vec::with_capacity(sentences.len());
    let mut warnings = Vec::new();
    for (sentence, analysis) in sentences.iter().zip(analyses) {
        faults.extend(analysis.faults);
        warnings.extend(analysis.warnings);
        reports.push(SentenceReport {
            index: sentence.index,
            span: sentence.span().unwrap_or(Span::new(0, 0)),
            token_count: sentence.tokens.len(),
            structure: analysis.structure,
            outcome: analysis.outcome,
        });
    }
    Report::new(faults, reports, warnings)
}
