//! Word database and concatenative `prefix + base + suffix` analysis.

mod affixes;

use std::collections::{HashMap, HashSet};

use log::warn;
use serde::{Deserialize, Serialize};

pub use affixes::AffixInventory;

use crate::error::LoadError;
use crate::segmentation::{normalize_word, NormalizationOptions};

pub const LEXICON_ROOT: &str = "MOTS";

/// Leaf categories whose words are excluded from structure matching.
pub const DEFAULT_FUNCTION_WORD_CATEGORIES: [&str; 2] = ["Particule", "Preposition"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CategoryId(pub usize);

/// A leaf label of the word database, with the grouping elements above it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Category {
    pub name: String,
    pub ancestry: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LexicalEntry {
    pub base: String,
    pub category: CategoryId,
}

/// One decomposition of a surface form against the lexicon.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MorphAnalysis {
    pub prefix: String,
    pub base: String,
    pub suffix: String,
    pub category: CategoryId,
    /// Index of the matched entry in lexicon file order.
    pub entry: usize,
}

impl MorphAnalysis {
    pub fn surface(&self) -> String {
        format!("{}{}{}", self.prefix, self.base, self.suffix)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpellingVerdict {
    Correct,
    Unknown,
}

#[derive(Debug, Clone)]
pub struct Lexicon {
    categories: Vec<Category>,
    by_name: HashMap<String, CategoryId>,
    entries: Vec<LexicalEntry>,
    index: HashMap<String, Vec<usize>>,
    function_words: HashSet<CategoryId>,
    warnings: Vec<String>,
}

impl Lexicon {
    /// Loads a `<MOTS>` document. Every element without element children is
    /// a leaf: its name is the category and its text is exactly one word.
    pub fn from_xml(xml: &str, options: NormalizationOptions) -> Result<Self, LoadError> {
        let doc = roxmltree::Document::parse(xml).map_err(|e| LoadError::from_xml("lexicon", e))?;
        let root = doc.root_element();
        if root.tag_name().name() != LEXICON_ROOT {
            return Err(LoadError::WrongRoot {
                source_name: "lexicon".into(),
                expected: LEXICON_ROOT.into(),
                found: root.tag_name().name().into(),
            });
        }

        let mut lexicon = Lexicon {
            categories: Vec::new(),
            by_name: HashMap::new(),
            entries: Vec::new(),
            index: HashMap::new(),
            function_words: HashSet::new(),
            warnings: Vec::new(),
        };
        let mut seen: HashSet<(String, CategoryId)> = HashSet::new();
        let mut ancestry = Vec::new();
        lexicon.walk(&doc, root, &mut ancestry, &mut seen, options)?;

        if lexicon.entries.is_empty() {
            return Err(LoadError::EmptyLexicon);
        }
        lexicon.set_function_word_categories(DEFAULT_FUNCTION_WORD_CATEGORIES);
        Ok(lexicon)
    }

    fn walk(
        &mut self,
        doc: &roxmltree::Document<'_>,
        node: roxmltree::Node<'_, '_>,
        ancestry: &mut Vec<String>,
        seen: &mut HashSet<(String, CategoryId)>,
        options: NormalizationOptions,
    ) -> Result<(), LoadError> {
        for child in node.children().filter(|n| n.is_element()) {
            let name = child.tag_name().name();
            if child.children().any(|n| n.is_element()) {
                ancestry.push(name.to_owned());
                self.walk(doc, child, ancestry, seen, options)?;
                ancestry.pop();
                continue;
            }

            let text = child.text().unwrap_or("").trim();
            let line = doc.text_pos_at(child.range().start).row;
            if text.is_empty() || text.split_whitespace().count() != 1 {
                return Err(LoadError::LeafWordCount {
                    element: name.to_owned(),
                    line,
                    found: text.to_owned(),
                });
            }

            let category = self.intern_category(name, ancestry);
            let base = normalize_word(text, options);
            if !seen.insert((base.clone(), category)) {
                let msg = format!("line {line}: duplicate word {base:?} in <{name}>");
                warn!("lexicon {msg}");
                self.warnings.push(msg);
                continue;
            }
            self.index.entry(base.clone()).or_default().push(self.entries.len());
            self.entries.push(LexicalEntry { base, category });
        }
        Ok(())
    }

    fn intern_category(&mut self, name: &str, ancestry: &[String]) -> CategoryId {
        if let Some(&id) = self.by_name.get(name) {
            if self.categories[id.0].ancestry != ancestry {
                let msg = format!(
                    "category <{name}> appears under {} and {}; keeping the first",
                    self.categories[id.0].ancestry.join("/"),
                    ancestry.join("/")
                );
                if !self.warnings.contains(&msg) {
                    warn!("lexicon {msg}");
                    self.warnings.push(msg);
                }
            }
            return id;
        }
        let id = CategoryId(self.categories.len());
        self.categories.push(Category {
            name: name.to_owned(),
            ancestry: ancestry.to_vec(),
        });
        self.by_name.insert(name.to_owned(), id);
        id
    }

    /// Replaces the set of categories treated as function words.
    ///
    /// Unknown names are ignored.
    pub fn set_function_word_categories<I, S>(&mut self, names: I)
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        self.function_words = names
            .into_iter()
            .filter_map(|n| self.by_name.get(n.as_ref()).copied())
            .collect();
    }

    pub fn is_function_word(&self, category: CategoryId) -> bool {
        self.function_words.contains(&category)
    }

    pub fn categories(&self) -> &[Category] {
        &self.categories
    }

    pub fn category(&self, id: CategoryId) -> &Category {
        &self.categories[id.0]
    }

    pub fn category_name(&self, id: CategoryId) -> &str {
        &self.categories[id.0].name
    }

    pub fn category_id(&self, name: &str) -> Option<CategoryId> {
        self.by_name.get(name).copied()
    }

    pub fn entries(&self) -> &[LexicalEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entry indices for a normalized base, in file order.
    pub fn lookup(&self, base: &str) -> &[usize] {
        self.index.get(base).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn contains_base(&self, base: &str) -> bool {
        self.index.contains_key(base)
    }

    /// Non-fatal issues found while loading, such as duplicate entries.
    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }
}

/// Loads the word database and returns its entries and category taxonomy.
pub fn load_lexicon(
    xml: &str,
    options: NormalizationOptions,
) -> Result<(Vec<LexicalEntry>, Vec<Category>), LoadError> {
    let lexicon = Lexicon::from_xml(xml, options)?;
    Ok((lexicon.entries, lexicon.categories))
}

/// Every split of `word` into an inventory prefix, a lexicon base and an
/// inventory suffix, once per category the base carries.
///
/// Longer bases come first, then shorter prefixes, then lexicon file order.
pub fn analyze_word(word: &str, lexicon: &Lexicon, affixes: &AffixInventory) -> Vec<MorphAnalysis> {
    let mut out = Vec::new();
    for prefix in affixes.analysis_prefixes() {
        let Some(rest) = word.strip_prefix(prefix.as_str()) else {
            continue;
        };
        for suffix in affixes.analysis_suffixes() {
            if rest.len() <= suffix.len() {
                continue;
            }
            let Some(base) = rest.strip_suffix(suffix.as_str()) else {
                continue;
            };
            for &entry in lexicon.lookup(base) {
                out.push(MorphAnalysis {
                    prefix: prefix.clone(),
                    base: base.to_owned(),
                    suffix: suffix.clone(),
                    category: lexicon.entries[entry].category,
                    entry,
                });
            }
        }
    }
    out.sort_by(|a, b| {
        let base_len = |m: &MorphAnalysis| m.base.chars().count();
        base_len(b)
            .cmp(&base_len(a))
            .then_with(|| a.prefix.chars().count().cmp(&b.prefix.chars().count()))
            .then_with(|| a.entry.cmp(&b.entry))
    });
    out
}

pub fn check_spelling(word: &str, lexicon: &Lexicon, affixes: &AffixInventory) -> SpellingVerdict {
    if analyze_word(word, lexicon, affixes).is_empty() {
        SpellingVerdict::Unknown
    } else {
        SpellingVerdict::Correct
    }
}
