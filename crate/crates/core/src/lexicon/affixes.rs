use std::collections::BTreeSet;

use crate::error::LoadError;
use crate::segmentation::{is_terminator, normalize_word, NormalizationOptions};

/// Closed sets of proclitics and enclitics used to split a surface form.
///
/// The empty string is always a member of `prefixes` and `suffixes`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffixInventory {
    prefixes: BTreeSet<String>,
    suffixes: BTreeSet<String>,
    verb_prebases: BTreeSet<String>,
    verb_postbases: BTreeSet<String>,
    // unions, longest first
    all_prefixes: Vec<String>,
    all_suffixes: Vec<String>,
}

impl AffixInventory {
    pub fn new<I, S>(prefixes: I, suffixes: I, verb_prebases: I, verb_postbases: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let collect = |it: I| it.into_iter().map(Into::into).collect::<BTreeSet<String>>();
        let mut prefixes = collect(prefixes);
        let mut suffixes = collect(suffixes);
        prefixes.insert(String::new());
        suffixes.insert(String::new());
        let verb_prebases = collect(verb_prebases);
        let verb_postbases = collect(verb_postbases);

        let union = |a: &BTreeSet<String>, b: &BTreeSet<String>| {
            let mut v: Vec<String> = a.union(b).cloned().collect();
            v.sort_by(|x, y| y.len().cmp(&x.len()).then_with(|| x.cmp(y)));
            v
        };
        let all_prefixes = union(&prefixes, &verb_prebases);
        let all_suffixes = union(&suffixes, &verb_postbases);
        Self {
            prefixes,
            suffixes,
            verb_prebases,
            verb_postbases,
            all_prefixes,
            all_suffixes,
        }
    }

    /// Parses the `key = value value ...` inventory format.
    ///
    /// Recognized keys are `prefixes`, `suffixes`, `verb_prebases` and
    /// `verb_postbases`. Values are separated by whitespace or commas and are
    /// normalized with `options`. `#` starts a comment.
    pub fn parse(text: &str, options: NormalizationOptions) -> Result<Self, LoadError> {
        let mut sets: [Vec<String>; 4] = Default::default();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| LoadError::Affixes {
                line: line_no,
                message: format!("expected `key = values`, found {line:?}"),
            })?;
            let slot = match key.trim() {
                "prefixes" => 0,
                "suffixes" => 1,
                "verb_prebases" => 2,
                "verb_postbases" => 3,
                other => {
                    return Err(LoadError::Affixes {
                        line: line_no,
                        message: format!("unknown key {other:?}"),
                    })
                }
            };
            for affix in value.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()) {
                if affix.chars().any(is_terminator) {
                    return Err(LoadError::Affixes {
                        line: line_no,
                        message: format!("affix {affix:?} contains a sentence terminator"),
                    });
                }
                sets[slot].push(normalize_word(affix, options));
            }
        }
        let [prefixes, suffixes, prebases, postbases] = sets;
        Ok(Self::new(prefixes, suffixes, prebases, postbases))
    }

    pub fn prefixes(&self) -> &BTreeSet<String> {
        &self.prefixes
    }

    pub fn suffixes(&self) -> &BTreeSet<String> {
        &self.suffixes
    }

    pub fn verb_prebases(&self) -> &BTreeSet<String> {
        &self.verb_prebases
    }

    pub fn verb_postbases(&self) -> &BTreeSet<String> {
        &self.verb_postbases
    }

    /// Prefixes and verb prebases together, longest first.
    pub fn analysis_prefixes(&self) -> &[String] {
        &self.all_prefixes
    }

    /// Suffixes and verb postbases together, longest first.
    pub fn analysis_suffixes(&self) -> &[String] {
        &self.all_suffixes
    }
}
