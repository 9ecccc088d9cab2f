//! Engine configuration: data file locations and normalization options.

use std::fs;
use std::path::{Path, PathBuf};

use crate::engine::{Engine, EngineSources};
use crate::error::LoadError;
use crate::segmentation::NormalizationOptions;

pub const BUILTIN_LEXICON: &str = include_str!("../data/lexicon.xml");
pub const BUILTIN_AFFIXES: &str = include_str!("../data/affixes.conf");
pub const BUILTIN_STRUCTURE_RULES: &str = include_str!("../data/structure_rules.xml");
pub const BUILTIN_CONJUGATION_RULES: &str = include_str!("../data/conjugation_rules.xml");
pub const BUILTIN_CORPUS: &str = include_str!("../corpus/golden.jsonl");

pub const BUILTIN_SOURCES: EngineSources<'static> = EngineSources {
    lexicon: BUILTIN_LEXICON,
    affixes: BUILTIN_AFFIXES,
    structure_rules: BUILTIN_STRUCTURE_RULES,
    conjugation_rules: BUILTIN_CONJUGATION_RULES,
};

/// Name of the environment variable pointing at a default config file.
pub const CONFIG_ENV: &str = "ARABICLINT_CONFIG";

/// Where to load each database from. A missing path selects the bundled file.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EngineConfig {
    pub lexicon: Option<PathBuf>,
    pub affixes: Option<PathBuf>,
    pub structure_rules: Option<PathBuf>,
    pub conjugation_rules: Option<PathBuf>,
    pub normalization: NormalizationOptions,
}

impl EngineConfig {
    /// Parses a `key = value` config file. Relative paths are resolved
    /// against `base_dir`.
    pub fn parse(text: &str, base_dir: &Path) -> Result<Self, LoadError> {
        let mut config = EngineConfig::default();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| LoadError::Config { line: line_no, message };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected `key = value`, found {line:?}")))?;
            let value = value.trim();
            let path = || Some(base_dir.join(value));
            match key.trim() {
                "lexicon" => config.lexicon = path(),
                "affixes" => config.affixes = path(),
                "structure_rules" => config.structure_rules = path(),
                "conjugation_rules" => config.conjugation_rules = path(),
                "fold_hamza" => config.normalization.fold_hamza = parse_bool(value).map_err(err)?,
                "keep_diacritics" => config.normalization.keep_diacritics = parse_bool(value).map_err(err)?,
                other => return Err(err(format!("unknown key {other:?}"))),
            }
        }
        Ok(config)
    }

    pub fn from_file(path: &Path) -> Result<Self, LoadError> {
        let text = read(path)?;
        let base = path.parent().unwrap_or(Path::new("."));
        Self::parse(&text, base)
    }

    /// Reads every configured file and builds the engine.
    pub fn load_engine(&self) -> Result<Engine, LoadError> {
        let lexicon = read_or(&self.lexicon, BUILTIN_LEXICON)?;
        let affixes = read_or(&self.affixes, BUILTIN_AFFIXES)?;
        let structure_rules = read_or(&self.structure_rules, BUILTIN_STRUCTURE_RULES)?;
        let conjugation_rules = read_or(&self.conjugation_rules, BUILTIN_CONJUGATION_RULES)?;
        Engine::from_sources(
            EngineSources {
                lexicon: &lexicon,
                affixes: &affixes,
                structure_rules: &structure_rules,
                conjugation_rules: &conjugation_rules,
            },
            self.normalization,
        )
    }
}

pub fn parse_bool(value: &str) -> Result<bool, String> {
    match value.trim().to_ascii_lowercase().as_str() {
        "true" | "yes" | "on" | "1" => Ok(true),
        "false" | "no" | "off" | "0" => Ok(false),
        other => Err(format!("expected a boolean, found {other:?}")),
    }
}

pub(crate) fn read(path: &Path) -> Result<String, LoadError> {
    fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.to_owned(),
        source,
    })
}

fn read_or(path: &Option<PathBuf>, builtin: &str) -> Result<String, LoadError> {
    match path {
        Some(p) => read(p),
        None => Ok(builtin.to_owned()),
    }
}
