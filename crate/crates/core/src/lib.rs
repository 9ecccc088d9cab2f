//! Rule-based fault detection for non-vowelized Arabic text.
//!
//! Text goes through five phases: segmentation into sentences and words,
//! lexical lookup of each word's base, labelling with every possible
//! category, disambiguation against sentence structure rules, and fault
//! detection. Three kinds of faults are reported: unknown words (spelling),
//! sentences whose label sequence matches no structure rule (structure), and
//! verbs whose prebase/postbase disagree with their subject (conjugation).
//!
//! ```
//! use arabiclint::{Engine, FaultKind};
//!
//! let engine = Engine::builtin(Default::default());
//! let report = engine.analyze_text("أنتم لم تذهبون");
//! assert_eq!(report.faults.len(), 1);
//! assert_eq!(report.faults[0].kind, FaultKind::Conjugation);
//! ```

pub mod config;
pub mod engine;
pub mod error;
pub mod evaluation;
pub mod lexicon;
pub mod render;
pub mod segmentation;
pub mod tagging;

pub use config::EngineConfig;
pub use engine::conjugation::{
    check_conjugation, load_conjugation_rules, AgreementKey, ConjugationRule, ConjugationTable, TenseContext,
};
pub use engine::report::{Fault, FaultKind, FaultStats, Report, SentenceReport};
pub use engine::structure::{load_structure_rules, match_structure, MatchMode, MatchOutcome, RuleKind, StructureRule};
pub use engine::{Engine, EngineSources, SentenceAnalysis};
pub use error::{ContractError, LoadError};
pub use evaluation::{detection_precision, run_corpus, EvalKey, EvalSets, GoldAnnotation, PrecisionResult};
pub use lexicon::{
    analyze_word, check_spelling, load_lexicon, AffixInventory, Category, CategoryId, LexicalEntry, Lexicon,
    MorphAnalysis, SpellingVerdict,
};
pub use segmentation::{normalize, split_sentences, tokenize, NormalizationOptions, NormalizedText, Sentence, Span, Token};
pub use tagging::{disambiguate, tag_sentence, SentenceStructure, TaggedToken};
