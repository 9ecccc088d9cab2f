//! Labelling and disambiguation.
//!
//! Every known word receives all of its analyses as candidate labels. The
//! disambiguator then picks one candidate per word so that the sentence's
//! label sequence satisfies a structure rule, searching assignments in
//! lexicographic order of candidate indices (leftmost word varying slowest)
//! and stopping at the first match.

use serde::{Deserialize, Serialize};

use crate::engine::structure::{match_labels, MatchMode, MatchOutcome, StructureRule};
use crate::error::ContractError;
use crate::lexicon::{analyze_word, AffixInventory, Lexicon, MorphAnalysis};
use crate::segmentation::Token;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaggedToken {
    pub token: Token,
    /// Position of the token in its sentence, unknown words included.
    pub ordinal: usize,
    pub candidates: Vec<MorphAnalysis>,
    pub chosen: Option<usize>,
}

impl TaggedToken {
    pub fn chosen_analysis(&self) -> Option<&MorphAnalysis> {
        self.chosen.and_then(|i| self.candidates.get(i))
    }

    /// True when every candidate belongs to a function-word category.
    pub fn is_function_word(&self, lexicon: &Lexicon) -> bool {
        self.candidates.iter().all(|c| lexicon.is_function_word(c.category))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SentenceStructure {
    /// Category names of the non-skipped words, in order.
    pub labels: Vec<String>,
    /// Indices (into the tagged list) of function words left out of `labels`.
    pub skipped: Vec<usize>,
}

impl SentenceStructure {
    pub fn contains(&self, label: &str) -> bool {
        self.labels.iter().any(|l| l == label)
    }
}

/// Attaches every analysis of each token as a candidate label.
pub fn tag_sentence(
    tokens: &[Token],
    lexicon: &Lexicon,
    affixes: &AffixInventory,
) -> Result<Vec<TaggedToken>, ContractError> {
    tag_with_ordinals(tokens.iter().enumerate(), lexicon, affixes)
}

fn tag_with_ordinals<'a>(
    tokens: impl IntoIterator<Item = (usize, &'a Token)>,
    lexicon: &Lexicon,
    affixes: &AffixInventory,
) -> Result<Vec<TaggedToken>, ContractError> {
    tokens
        .into_iter()
        .map(|(ordinal, token)| {
            let candidates = analyze_word(&token.surface, lexicon, affixes);
            if candidates.is_empty() {
                return Err(ContractError::UnanalyzedToken {
                    surface: token.surface.clone(),
                });
            }
            Ok(TaggedToken {
                token: token.clone(),
                ordinal,
                candidates,
                chosen: None,
            })
        })
        .collect()
}

/// Chooses one candidate per token and reports which rule, if any, the
/// resulting structure satisfies.
///
/// Without a match the first candidate of every token is kept.
pub fn disambiguate(
    tagged: &mut [TaggedToken],
    rules: &[StructureRule],
    lexicon: &Lexicon,
) -> (SentenceStructure, MatchOutcome) {
    let mut skipped = Vec::new();
    let mut slots = Vec::new();
    for (i, t) in tagged.iter().enumerate() {
        if t.is_function_word(lexicon) {
            skipped.push(i);
        } else {
            slots.push(i);
        }
    }

    // Candidates with a label already offered at the same slot lead to an
    // identical subtree, so only the first of them is searched.
    let choices: Vec<Vec<(usize, &str)>> = slots
        .iter()
        .map(|&i| {
            let mut seen: Vec<(usize, &str)> = Vec::new();
            for (ci, c) in tagged[i].candidates.iter().enumerate() {
                let label = lexicon.category_name(c.category);
                if !seen.iter().any(|(_, l)| *l == label) {
                    seen.push((ci, label));
                }
            }
            seen
        })
        .collect();

    let search = Search {
        choices: &choices,
        rules,
    };
    let mut picks = Vec::with_capacity(slots.len());
    let all_rules: Vec<usize> = (0..rules.len()).collect();
    let found = !slots.is_empty() && search.first_match(&mut Vec::new(), &mut picks, &all_rules);
    if !found {
        picks.clear();
    }
    picks.resize(slots.len(), 0);

    for t in tagged.iter_mut() {
        t.chosen = Some(0);
    }
    for (&slot, &pick) in slots.iter().zip(&picks) {
        tagged[slot].chosen = Some(pick);
    }

    let labels: Vec<String> = slots
        .iter()
        .map(|&i| {
            let a = tagged[i].chosen_analysis().expect("chosen was just set");
            lexicon.category_name(a.category).to_owned()
        })
        .collect();
    let outcome = match_labels(&labels, rules);
    debug_assert_eq!(outcome.is_match(), found || labels.is_empty());
    (SentenceStructure { labels, skipped }, outcome)
}

struct Search<'a> {
    choices: &'a [Vec<(usize, &'a str)>],
    rules: &'a [StructureRule],
}

impl<'a> Search<'a> {
    /// Depth-first search in lexicographic order. `viable` holds the rules
    /// consistent with `labels` so far; subtrees without one are pruned.
    fn first_match(&self, labels: &mut Vec<&'a str>, picks: &mut Vec<usize>, viable: &[usize]) -> bool {
        let depth = labels.len();
        let total = self.choices.len();
        let satisfied = viable.iter().any(|&r| {
            let rule = &self.rules[r];
            match rule.mode {
                MatchMode::Prefix => rule.pattern.len() <= depth,
                MatchMode::Exact => depth == total,
            }
        });
        if satisfied {
            return true;
        }
        if viable.is_empty() || depth == total {
            return false;
        }
        for &(candidate, label) in &self.choices[depth] {
            let next: Vec<usize> = viable
                .iter()
                .copied()
                .filter(|&r| {
                    let rule = &self.rules[r];
                    let length_ok = match rule.mode {
                        MatchMode::Prefix => true,
                        MatchMode::Exact => rule.pattern.len() == total,
                    };
                    length_ok && rule.pattern.get(depth).is_some_and(|p| p == label)
                })
                .collect();
            labels.push(label);
            picks.push(candidate);
            if self.first_match(labels, picks, &next) {
                return true;
            }
            labels.pop();
            picks.pop();
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::structure::RuleKind;
    use crate::segmentation::{NormalizationOptions, Span};

    fn lexicon() -> Lexicon {
        Lexicon::from_xml(
            r#"<MOTS>
                <Noms>
                  <NomPropreFeminin>إيمان</NomPropreFeminin>
                  <NomPropreMasculin>أكرم</NomPropreMasculin>
                  <NomPluriel>قواعد</NomPluriel>
                </Noms>
                <Verbes><Verbe>ذهب</Verbe><Verbe>أكرم</Verbe></Verbes>
                <Particules><Particule>لم</Particule></Particules>
               </MOTS>"#,
            NormalizationOptions::default(),
        )
        .unwrap()
    }

    fn affixes() -> AffixInventory {
        AffixInventory::new(vec!["و"], vec![], vec!["ت", "ي"], vec!["ون", "وا"])
    }

    fn token(surface: &str, at: usize) -> Token {
        Token {
            surface: surface.into(),
            span: Span::new(at, at + surface.chars().count()),
            sentence_index: 0,
        }
    }

    fn tokens(words: &[&str]) -> Vec<Token> {
        let mut at = 0;
        words
            .iter()
            .map(|w| {
                let t = token(w, at);
                at = t.span.end + 1;
                t
            })
            .collect()
    }

    fn rule(pattern: &[&str]) -> StructureRule {
        StructureRule::new(RuleKind::Verbal, pattern, MatchMode::Prefix)
    }

    fn names(lex: &Lexicon, t: &TaggedToken) -> Vec<String> {
        t.candidates.iter().map(|c| lex.category_name(c.category).to_owned()).collect()
    }

    #[test]
    fn tags_verb_and_proper_noun() {
        let lex = lexicon();
        let tagged = tag_sentence(&tokens(&["تذهب", "ايمان"]), &lex, &affixes()).unwrap();
        assert_eq!(names(&lex, &tagged[0]), vec!["Verbe"]);
        assert_eq!(names(&lex, &tagged[1]), vec!["NomPropreFeminin"]);
        assert!(tagged.iter().all(|t| t.chosen.is_none()));
    }

    #[test]
    fn tags_empty_sentence() {
        assert!(tag_sentence(&[], &lexicon(), &affixes()).unwrap().is_empty());
    }

    #[test]
    fn ambiguous_word_gets_two_candidates() {
        let lex = lexicon();
        let tagged = tag_sentence(&tokens(&["اكرم"]), &lex, &affixes()).unwrap();
        assert_eq!(names(&lex, &tagged[0]), vec!["NomPropreMasculin", "Verbe"]);
    }

    #[test]
    fn unknown_token_is_a_contract_violation() {
        let err = tag_sentence(&tokens(&["الجمة"]), &lexicon(), &affixes()).unwrap_err();
        assert_eq!(
            err,
            ContractError::UnanalyzedToken {
                surface: "الجمة".into()
            }
        );
    }

    #[test]
    fn matches_verb_then_proper_noun() {
        let lex = lexicon();
        let mut tagged = tag_sentence(&tokens(&["تذهب", "ايمان"]), &lex, &affixes()).unwrap();
        let rules = vec![rule(&["verbe", "NomPropreFeminin"]), rule(&["NomPropreFeminin", "verbe"])];
        let (structure, outcome) = disambiguate(&mut tagged, &rules, &lex);
        assert_eq!(structure.labels, vec!["Verbe", "NomPropreFeminin"]);
        assert_eq!(outcome, MatchOutcome::Matched("verbe NomPropreFeminin".into()));
        assert!(tagged.iter().all(|t| t.chosen.is_some()));
    }

    #[test]
    fn single_token_without_short_rule_is_unmatched() {
        let lex = lexicon();
        let mut tagged = tag_sentence(&tokens(&["ايمان"]), &lex, &affixes()).unwrap();
        let (structure, outcome) = disambiguate(&mut tagged, &[rule(&["verbe", "NomPropreFeminin"])], &lex);
        assert_eq!(outcome, MatchOutcome::Unmatched);
        assert_eq!(structure.labels, vec!["NomPropreFeminin"]);
        assert_eq!(tagged[0].chosen, Some(0));
    }

    #[test]
    fn picks_the_reading_that_completes_a_rule() {
        let lex = lexicon();
        let mut tagged = tag_sentence(&tokens(&["ايمان", "اكرم"]), &lex, &affixes()).unwrap();
        let (structure, outcome) = disambiguate(&mut tagged, &[rule(&["NomPropreFeminin", "verbe"])], &lex);
        assert_eq!(structure.labels, vec!["NomPropreFeminin", "Verbe"]);
        assert_eq!(tagged[1].chosen, Some(1));
        assert_eq!(outcome, MatchOutcome::Matched("NomPropreFeminin verbe".into()));
    }

    #[test]
    fn function_words_are_skipped() {
        let lex = lexicon();
        let mut tagged = tag_sentence(&tokens(&["لم", "تذهبوا"]), &lex, &affixes()).unwrap();
        let (structure, outcome) = disambiguate(&mut tagged, &[rule(&["verbe"])], &lex);
        assert_eq!(structure.skipped, vec![0]);
        assert_eq!(structure.labels, vec!["Verbe"]);
        assert!(outcome.is_match());
    }

    #[test]
    fn all_skipped_is_vacuous() {
        let lex = lexicon();
        let mut tagged = tag_sentence(&tokens(&["لم"]), &lex, &affixes()).unwrap();
        let (structure, outcome) = disambiguate(&mut tagged, &[rule(&["verbe"])], &lex);
        assert!(structure.labels.is_empty());
        assert_eq!(outcome, MatchOutcome::Vacuous);
    }

    #[test]
    fn exact_rules_need_full_length() {
        let lex = lexicon();
        let exact = StructureRule::new(RuleKind::Verbal, &["verbe", "NomPropreMasculin"], MatchMode::Exact);
        let mut tagged = tag_sentence(&tokens(&["تذهب", "اكرم", "ايمان"]), &lex, &affixes()).unwrap();
        let (_, outcome) = disambiguate(&mut tagged, std::slice::from_ref(&exact), &lex);
        assert_eq!(outcome, MatchOutcome::Unmatched);
        let mut tagged = tag_sentence(&tokens(&["تذهب", "اكرم"]), &lex, &affixes()).unwrap();
        let (_, outcome) = disambiguate(&mut tagged, &[exact], &lex);
        assert!(outcome.is_match());
    }
}
