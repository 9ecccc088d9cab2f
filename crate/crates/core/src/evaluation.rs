//! Detection precision over annotated corpora.
//!
//! Every word of the corpus is keyed by `(entry, ordinal)`. Gold annotations
//! name the truly faulty words (D⁺) per fault kind; the engine's faults form
//! the detected set R under the same keying. Structure faults are keyed to
//! the first word of their sentence. Precision is |D⁺ ∩ R| / |R|.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::report::{FaultKind, Report};
use crate::engine::Engine;

/// Marker in an entry's note that keeps it out of strict verdict checking.
pub const STRICT_EXCLUSION_MARKER: &str = "excluded-from-strict";

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("corpus line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("corpus line {line}: ordinal {ordinal} is out of range for {tokens} tokens")]
    Ordinal { line: usize, ordinal: usize, tokens: usize },
    #[error("corpus is empty")]
    Empty,
    #[error("cannot read corpus: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldFault {
    pub kind: FaultKind,
    pub ordinal: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldAnnotation {
    pub text: String,
    #[serde(default)]
    pub gold: Vec<GoldFault>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// 1-based line in the corpus file.
    #[serde(skip)]
    pub line: usize,
}

impl GoldAnnotation {
    pub fn excluded_from_strict(&self) -> bool {
        self.note.as_deref().is_some_and(|n| n.contains(STRICT_EXCLUSION_MARKER))
    }
}

/// Parses a JSON-lines corpus. Blank lines are ignored.
pub fn parse_corpus(text: &str) -> Result<Vec<GoldAnnotation>, CorpusError> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut entry: GoldAnnotation = serde_json::from_str(line).map_err(|e| CorpusError::Parse {
            line: idx + 1,
            message: e.to_string(),
        })?;
        entry.line = idx + 1;
        out.push(entry);
    }
    Ok(out)
}

pub fn load_corpus(path: &Path) -> Result<Vec<GoldAnnotation>, CorpusError> {
    parse_corpus(&std::fs::read_to_string(path)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EvalKey {
    pub entry: usize,
    pub ordinal: usize,
    pub kind: FaultKind,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EvalSets {
    pub d_plus: BTreeSet<EvalKey>,
    pub r: BTreeSet<EvalKey>,
}

impl EvalSets {
    pub fn for_kind(&self, kind: FaultKind) -> EvalSets {
        let keep = |s: &BTreeSet<EvalKey>| s.iter().filter(|k| k.kind == kind).copied().collect();
        EvalSets {
            d_plus: keep(&self.d_plus),
            r: keep(&self.r),
        }
    }
}

/// An exact ratio of counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ratio {
    pub numerator: u64,
    pub denominator: u64,
}

impl Ratio {
    pub fn new(numerator: u64, denominator: u64) -> Option<Self> {
        (denominator > 0).then_some(Ratio {
            numerator,
            denominator,
        })
    }

    pub fn value(&self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.2}", self.value())
    }
}

fn render(r: Option<Ratio>) -> String {
    r.map_or_else(|| "n/a".to_owned(), |r| r.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecisionResult {
    /// |R|
    pub detected: usize,
    /// |D⁺ ∩ R|
    pub correct: usize,
    /// |D⁺|
    pub gold: usize,
    /// Absent when nothing was detected.
    pub precision: Option<Ratio>,
    pub recall: Option<Ratio>,
}

impl PrecisionResult {
    pub fn precision_text(&self) -> String {
        render(self.precision)
    }

    pub fn recall_text(&self) -> String {
        render(self.recall)
    }
}

pub fn detection_precision(sets: &EvalSets) -> PrecisionResult {
    let detected = sets.r.len();
    let correct = sets.r.intersection(&sets.d_plus).count();
    let gold = sets.d_plus.len();
    PrecisionResult {
        detected,
        correct,
        gold,
        precision: Ratio::new(correct as u64, detected as u64),
        recall: Ratio::new(correct as u64, gold as u64),
    }
}

/// Whether each fault kind was flagged at least once.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    pub spelling: bool,
    pub structure: bool,
    pub conjugation: bool,
}

impl Verdicts {
    fn from_kinds(kinds: impl IntoIterator<Item = FaultKind>) -> Self {
        let mut v = Verdicts::default();
        for k in kinds {
            match k {
                FaultKind::Spelling => v.spelling = true,
                FaultKind::Structure => v.structure = true,
                FaultKind::Conjugation => v.conjugation = true,
            }
        }
        v
    }

    pub fn get(&self, kind: FaultKind) -> bool {
        match kind {
            FaultKind::Spelling => self.spelling,
            FaultKind::Structure => self.structure,
            FaultKind::Conjugation => self.conjugation,
        }
    }
}

impl fmt::Display for Verdicts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |b: bool| if b { "(+)" } else { "(-)" };
        write!(f, "{} {} {}", mark(self.spelling), mark(self.structure), mark(self.conjugation))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowResult {
    pub line: usize,
    pub text: String,
    pub expected: Verdicts,
    pub actual: Verdicts,
    pub excluded: bool,
    /// Gold faults the engine did not report.
    pub missed: Vec<EvalKey>,
    /// Reported faults absent from the gold set.
    pub spurious: Vec<EvalKey>,
}

impl RowResult {
    pub fn differs(&self) -> bool {
        self.expected != self.actual
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusEvaluation {
    pub per_kind: Vec<(FaultKind, PrecisionResult)>,
    pub overall: PrecisionResult,
    pub rows: Vec<RowResult>,
    pub sets: EvalSets,
}

impl CorpusEvaluation {
    pub fn kind(&self, kind: FaultKind) -> &PrecisionResult {
        &self.per_kind.iter().find(|(k, _)| *k == kind).expect("all kinds present").1
    }

    /// Rows whose verdicts differ and that are not excluded.
    pub fn strict_failures(&self) -> impl Iterator<Item = &RowResult> {
        self.rows.iter().filter(|r| r.differs() && !r.excluded)
    }

    pub fn render_text(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let _ = writeln!(out, "{:<12} {:>9} {:>5} {:>5} {:>5} {:>18}", "kind", "precision", "|R|", "hit", "|D+|", "recall (extension)");
        let mut line = |name: &str, p: &PrecisionResult| {
            let _ = writeln!(
                out,
                "{:<12} {:>9} {:>5} {:>5} {:>5} {:>18}",
                name,
                p.precision_text(),
                p.detected,
                p.correct,
                p.gold,
                p.recall_text()
            );
        };
        for (kind, p) in &self.per_kind {
            line(kind.as_str(), p);
        }
        line("all", &self.overall);

        let diffs: Vec<&RowResult> = self.rows.iter().filter(|r| r.differs()).collect();
        if diffs.is_empty() {
            out.push_str("\nall row verdicts match\n");
        } else {
            out.push_str("\nverdict differences (spelling structure conjugation):\n");
            for r in diffs {
                let _ = writeln!(
                    out,
                    "  line {}{}: expected {} actual {}  {}",
                    r.line,
                    if r.excluded { " [excluded]" } else { "" },
                    r.expected,
                    r.actual,
                    r.text
                );
            }
        }
        out
    }
}

fn keys_for(entry: usize, report: &Report) -> BTreeSet<EvalKey> {
    let mut offsets = Vec::with_capacity(report.sentences.len());
    let mut acc = 0;
    for s in &report.sentences {
        offsets.push(acc);
        acc += s.token_count;
    }
    report
        .faults
        .iter()
        .map(|f| EvalKey {
            entry,
            ordinal: offsets[f.sentence_index] + f.ordinal,
            kind: f.kind,
        })
        .collect()
}

/// Runs the engine over every entry and compares against the gold marks.
pub fn run_corpus(corpus: &[GoldAnnotation], engine: &Engine) -> Result<CorpusEvaluation, CorpusError> {
    if corpus.is_empty() {
        return Err(CorpusError::Empty);
    }
    let per_entry: Vec<(BTreeSet<EvalKey>, BTreeSet<EvalKey>)> = corpus
        .par_iter()
        .enumerate()
        .map(|(entry, ann)| {
            let report = engine.analyze_text(&ann.text);
            let tokens: usize = report.sentences.iter().map(|s| s.token_count).sum();
            let mut gold = BTreeSet::new();
            for g in &ann.gold {
                if g.ordinal >= tokens {
                    return Err(CorpusError::Ordinal {
                        line: ann.line,
                        ordinal: g.ordinal,
                        tokens,
                    });
                }
                gold.insert(EvalKey {
                    entry,
                    ordinal: g.ordinal,
                    kind: g.kind,
                });
            }
            Ok((gold, keys_for(entry, &report)))
        })
        .collect::<Result<_, _>>()?;

    let mut sets = EvalSets::default();
    let mut rows = Vec::with_capacity(corpus.len());
    for (ann, (gold, detected)) in corpus.iter().zip(per_entry) {
        rows.push(RowResult {
            line: ann.line,
            text: ann.text.clone(),
            expected: Verdicts::from_kinds(gold.iter().map(|k| k.kind)),
            actual: Verdicts::from_kinds(detected.iter().map(|k| k.kind)),
            excluded: ann.excluded_from_strict(),
            missed: gold.difference(&detected).copied().collect(),
            spurious: detected.difference(&gold).copied().collect(),
        });
        sets.d_plus.extend(gold);
        sets.r.extend(detected);
    }

    let per_kind = FaultKind::ALL
        .iter()
        .map(|&k| (k, detection_precision(&sets.for_kind(k))))
        .collect();
    Ok(CorpusEvaluation {
        per_kind,
        overall: detection_precision(&sets),
        rows,
        sets,
    })
}
