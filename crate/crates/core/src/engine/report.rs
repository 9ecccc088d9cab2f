use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::engine::structure::MatchOutcome;
use crate::segmentation::Span;
use crate::tagging::SentenceStructure;

/// Fault kinds, in the order they are reported within a sentence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FaultKind {
    Spelling,
    Structure,
    Conjugation,
}

impl FaultKind {
    pub const ALL: [FaultKind; 3] = [FaultKind::Spelling, FaultKind::Structure, FaultKind::Conjugation];

    pub fn as_str(&self) -> &'static str {
        match self {
            FaultKind::Spelling => "spelling",
            FaultKind::Structure => "structure",
            FaultKind::Conjugation => "conjugation",
        }
    }
}

impl fmt::Display for FaultKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FaultKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "spelling" => Ok(FaultKind::Spelling),
            "structure" => Ok(FaultKind::Structure),
            "conjugation" => Ok(FaultKind::Conjugation),
            other => Err(format!("unknown fault kind {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fault {
    pub kind: FaultKind,
    pub sentence_index: usize,
    /// Character ranges in the original text. Word faults carry one span,
    /// structure faults the span of the whole sentence.
    pub spans: Vec<Span>,
    /// Ordinal of the anchoring token in its sentence; 0 for structure faults.
    pub ordinal: usize,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rule_id: Option<String>,
}

impl Fault {
    fn sort_key(&self) -> (usize, usize, FaultKind) {
        let start = self.spans.first().map_or(0, |s| s.start);
        (self.sentence_index, start, self.kind)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SentenceReport {
    pub index: usize,
    pub span: Span,
    pub token_count: usize,
    pub structure: SentenceStructure,
    pub outcome: MatchOutcome,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaultStats {
    pub spelling: usize,
    pub structure: usize,
    pub conjugation: usize,
}

impl FaultStats {
    pub fn count(&self, kind: FaultKind) -> usize {
        match kind {
            FaultKind::Spelling => self.spelling,
            FaultKind::Structure => self.structure,
            FaultKind::Conjugation => self.conjugation,
        }
    }

    pub fn total(&self) -> usize {
        self.spelling + self.structure + self.conjugation
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub faults: Vec<Fault>,
    pub sentences: Vec<SentenceReport>,
    pub stats: FaultStats,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl Report {
    /// Builds a report, ordering faults by sentence, span start and kind.
    pub fn new(mut faults: Vec<Fault>, sentences: Vec<SentenceReport>, mut warnings: Vec<String>) -> Self {
        faults.sort_by_key(Fault::sort_key);
        let mut stats = FaultStats::default();
        for f in &faults {
            match f.kind {
                FaultKind::Spelling => stats.spelling += 1,
                FaultKind::Structure => stats.structure += 1,
                FaultKind::Conjugation => stats.conjugation += 1,
            }
        }
        warnings.dedup();
        Report {
            faults,
            sentences,
            stats,
            warnings,
        }
    }

    pub fn is_clean(&self) -> bool {
        self.faults.is_empty()
    }

    pub fn faults_of(&self, kind: FaultKind) -> impl Iterator<Item = &Fault> {
        self.faults.iter().filter(move |f| f.kind == kind)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(json: &str) -> serde_json::Result<Self> {
        serde_json::from_str(json)
    }
}
