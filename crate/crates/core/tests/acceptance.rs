//! Acceptance suite. Each criterion prints one PASS/FAIL line; the process
//! exits non-zero if any criterion fails.
//!
//! Run with `cargo test -p arabiclint-core --test acceptance`.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use arabiclint::config::BUILTIN_CORPUS;
use arabiclint::evaluation::parse_corpus;
use arabiclint::segmentation::normalize_word;
use arabiclint::{
    analyze_word, check_spelling, detection_precision, disambiguate, normalize, run_corpus, Engine, EvalKey, EvalSets,
    FaultKind, Lexicon, MatchMode, MatchOutcome, MorphAnalysis, NormalizationOptions, RuleKind, Span,
    SpellingVerdict, StructureRule, TaggedToken, Token,
};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
type Sentence = [Vec<&'static str>];
type Criterion = (&'static str, fn() -> Outcome);

fn engine() -> Engine {
    Engine::builtin(NormalizationOptions::default())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn golden_table() -> Outcome {
    let start = Instant::now();
    let engine = engine();
    let corpus = parse_corpus(BUILTIN_CORPUS).map_err(|e| e.to_string())?;
    let eval = run_corpus(&corpus, &engine).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();

    let exact = eval.rows.iter().filter(|r| !r.differs()).count();
    let failures: Vec<usize> = eval.strict_failures().map(|r| r.line).collect();
    ensure(failures.is_empty(), || format!("non-excluded rows differ: {failures:?}"))?;
    ensure(exact >= 16, || format!("{exact}/17 rows exact"))?;

    let row2 = engine.analyze_text(&corpus[1].text);
    ensure(row2.stats.structure >= 1, || "row 2 has no structure fault".into())?;
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("{exact}/17 rows exact, row 15 excluded, {elapsed:.2?}"))
}

fn conjugation_pairs() -> Outcome {
    let engine = engine();
    let corpus = parse_corpus(BUILTIN_CORPUS).map_err(|e| e.to_string())?;
    let row = |n: usize| &corpus[n - 1];
    let faulty_rows = [(6, Some(7)), (8, Some(9)), (10, Some(11)), (13, Some(14)), (12, None)];
    for (faulty, correct) in faulty_rows {
        let ann = row(faulty);
        let verb = ann
            .gold
            .iter()
            .find(|g| g.kind == FaultKind::Conjugation)
            .ok_or_else(|| format!("row {faulty} has no conjugation gold mark"))?
            .ordinal;
        let sentences = engine.split(&ann.text);
        let verb_span = sentences[0].tokens[verb].span;
        let report = engine.analyze_text(&ann.text);
        let conj: Vec<_> = report.faults_of(FaultKind::Conjugation).collect();
        ensure(conj.len() == 1, || format!("row {faulty}: {} conjugation faults", conj.len()))?;
        ensure(conj[0].spans == vec![verb_span], || {
            format!("row {faulty}: fault spans {:?}, verb at {verb_span:?}", conj[0].spans)
        })?;
        if let Some(correct) = correct {
            let report = engine.analyze_text(&row(correct).text);
            ensure(report.stats.conjugation == 0, || format!("row {correct}: spurious conjugation fault"))?;
        }
    }
    Ok("rows 6/7, 8/9, 10/11, 13/14 and 12".into())
}

fn random_key(rng: &mut StdRng) -> EvalKey {
    EvalKey {
        entry: rng.gen_range(0..6),
        ordinal: rng.gen_range(0..6),
        kind: *FaultKind::ALL.choose(rng).unwrap(),
    }
}

fn precision_oracle() -> Outcome {
    let mut rng = StdRng::seed_from_u64(7);
    for trial in 0..1000 {
        let d: Vec<EvalKey> = (0..rng.gen_range(0..30)).map(|_| random_key(&mut rng)).collect();
        let r: Vec<EvalKey> = (0..rng.gen_range(0..30)).map(|_| random_key(&mut rng)).collect();
        let sets = EvalSets {
            d_plus: d.iter().copied().collect(),
            r: r.iter().copied().collect(),
        };
        // oracle: deduplicate by linear scan, count hits by linear scan
        let mut r_unique: Vec<EvalKey> = Vec::new();
        for k in &r {
            if !r_unique.contains(k) {
                r_unique.push(*k);
            }
        }
        let hits = r_unique.iter().filter(|k| d.contains(k)).count();
        let p = detection_precision(&sets);
        ensure(p.detected == r_unique.len() && p.correct == hits, || {
            format!("trial {trial}: {}/{} vs oracle {hits}/{}", p.correct, p.detected, r_unique.len())
        })?;
        if r_unique.is_empty() {
            ensure(p.precision.is_none() && p.precision_text() == "n/a", || "empty R is not n/a".into())?;
        } else {
            let ratio = p.precision.unwrap();
            ensure(ratio.numerator as usize == hits && ratio.denominator as usize == r_unique.len(), || {
                format!("trial {trial}: ratio {ratio:?}")
            })?;
        }
    }
    for _ in 0..200 {
        let d: BTreeSet<EvalKey> = (0..rng.gen_range(1..30)).map(|_| random_key(&mut rng)).collect();
        let r: BTreeSet<EvalKey> = d.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        if r.is_empty() {
            continue;
        }
        let p = detection_precision(&EvalSets { d_plus: d, r });
        ensure(p.precision.map(|x| x.value()) == Some(1.0), || "R within D+ is not 1.0".into())?;
    }

    let eval = run_corpus(&parse_corpus(BUILTIN_CORPUS).unwrap(), &engine()).map_err(|e| e.to_string())?;
    let shipped: Vec<String> = FaultKind::ALL
        .iter()
        .map(|&k| {
            let p = eval.kind(k);
            format!("{k} {}/{}={}", p.correct, p.detected, p.precision_text())
        })
        .collect();
    Ok(format!("1000 random pairs agree; shipped corpus: {}", shipped.join(", ")))
}

/// Every (prefix, base, suffix, entry) split over character boundaries.
fn all_splits(word: &str, engine: &Engine) -> BTreeSet<(String, String, String, usize)> {
    let chars: Vec<char> = word.chars().collect();
    let affixes = engine.affixes();
    let is_prefix = |s: &str| s.is_empty() || affixes.prefixes().contains(s) || affixes.verb_prebases().contains(s);
    let is_suffix = |s: &str| s.is_empty() || affixes.suffixes().contains(s) || affixes.verb_postbases().contains(s);
    let mut out = BTreeSet::new();
    for i in 0..chars.len() {
        for j in i + 1..=chars.len() {
            let p: String = chars[..i].iter().collect();
            let b: String = chars[i..j].iter().collect();
            let s: String = chars[j..].iter().collect();
            if !is_prefix(&p) || !is_suffix(&s) {
                continue;
            }
            for (entry, e) in engine.lexicon().entries().iter().enumerate() {
                if e.base == b {
                    out.insert((p.clone(), b.clone(), s.clone(), entry));
                }
            }
        }
    }
    out
}

fn splits_of(analyses: &[MorphAnalysis]) -> BTreeSet<(String, String, String, usize)> {
    analyses
        .iter()
        .map(|a| (a.prefix.clone(), a.base.clone(), a.suffix.clone(), a.entry))
        .collect()
}

fn lexical_oracle() -> Outcome {
    let engine = engine();
    let (lex, affixes) = (engine.lexicon(), engine.affixes());
    let mut rng = StdRng::seed_from_u64(11);
    let prefixes: Vec<&String> = affixes.prefixes().iter().chain(affixes.verb_prebases()).collect();
    let suffixes: Vec<&String> = affixes.suffixes().iter().chain(affixes.verb_postbases()).collect();
    let entries = lex.entries();

    for _ in 0..10_000 {
        let p = prefixes.choose(&mut rng).unwrap();
        let e = rng.gen_range(0..entries.len());
        let s = suffixes.choose(&mut rng).unwrap();
        let word = format!("{p}{}{s}", entries[e].base);
        let got = analyze_word(&word, lex, affixes);
        let key = (p.to_string(), entries[e].base.clone(), s.to_string(), e);
        let got = splits_of(&got);
        ensure(got.contains(&key), || format!("{word}: split {key:?} not found"))?;
        let oracle = all_splits(&word, &engine);
        ensure(got == oracle, || format!("{word}: {got:?} vs oracle {oracle:?}"))?;
    }

    let letters: Vec<char> = "ابتثجحخدذرزسشصضطظعغفقكلمنهوي".chars().collect();
    let mut unknown = 0;
    let mut tries = 0;
    while unknown < 10_000 {
        tries += 1;
        let len = rng.gen_range(1..8);
        let word: String = (0..len).map(|_| *letters.choose(&mut rng).unwrap()).collect();
        let oracle = all_splits(&word, &engine);
        let got = analyze_word(&word, lex, affixes);
        ensure(splits_of(&got) == oracle, || format!("{word}: analyses disagree with oracle"))?;
        if oracle.is_empty() {
            ensure(check_spelling(&word, lex, affixes) == SpellingVerdict::Unknown, || {
                format!("{word} has no split but is not Unknown")
            })?;
            unknown += 1;
        }
    }
    Ok(format!("10000 composed words found, 10000 unsplittable strings Unknown ({tries} random strings checked)"))
}

const SYNTHETIC_LEXICON: &str = "<MOTS><Verbe>a</Verbe><Nom>b</Nom><Particule>c</Particule></MOTS>";

fn synthetic_rules() -> Vec<StructureRule> {
    vec![
        StructureRule::new(RuleKind::Verbal, &["verbe", "Nom"], MatchMode::Prefix),
        StructureRule::new(RuleKind::Nominal, &["Nom", "Nom", "verbe"], MatchMode::Prefix),
        StructureRule::new(RuleKind::Nominal, &["Nom"], MatchMode::Exact),
        StructureRule::new(RuleKind::Verbal, &["verbe", "verbe", "Nom"], MatchMode::Exact),
        StructureRule::new(RuleKind::Nominal, &["Nom", "Particule", "Nom", "verbe"], MatchMode::Exact),
    ]
}

fn oracle_rule_matches(rule: &StructureRule, labels: &[&str]) -> bool {
    let n = rule.pattern.len();
    let long_enough = match rule.mode {
        MatchMode::Prefix => labels.len() >= n,
        MatchMode::Exact => labels.len() == n,
    };
    long_enough && (0..n).all(|i| rule.pattern[i] == labels[i])
}

/// First assignment, in lexicographic order of candidate indices over the
/// content tokens, whose labels satisfy a rule.
fn oracle_first_match(cands: &[Vec<&'static str>], rules: &[StructureRule]) -> Option<Vec<usize>> {
    let content: Vec<usize> = (0..cands.len()).filter(|&i| !cands[i].iter().all(|&l| l == "Particule")).collect();
    let radices: Vec<usize> = content.iter().map(|&i| cands[i].len()).collect();
    let total: usize = radices.iter().product();
    for mut n in 0..total {
        let mut digits = vec![0; content.len()];
        for d in (0..content.len()).rev() {
            digits[d] = n % radices[d];
            n /= radices[d];
        }
        let labels: Vec<&str> = content.iter().zip(&digits).map(|(&i, &d)| cands[i][d]).collect();
        if !labels.is_empty() && rules.iter().any(|r| oracle_rule_matches(r, &labels)) {
            let mut picks = vec![0; cands.len()];
            for (&i, &d) in content.iter().zip(&digits) {
                picks[i] = d;
            }
            return Some(picks);
        }
    }
    None
}

fn tagged_from(cands: &[Vec<&'static str>], lex: &Lexicon) -> Vec<TaggedToken> {
    cands
        .iter()
        .enumerate()
        .map(|(i, labels)| TaggedToken {
            token: Token {
                surface: format!("w{i}"),
                span: Span::new(i * 3, i * 3 + 2),
                sentence_index: 0,
            },
            ordinal: i,
            candidates: labels
                .iter()
                .map(|l| MorphAnalysis {
                    prefix: String::new(),
                    base: format!("w{i}"),
                    suffix: String::new(),
                    category: lex.category_id(l).unwrap(),
                    entry: 0,
                })
                .collect(),
            chosen: None,
        })
        .collect()
}

fn check_disambiguation(cands: &[Vec<&'static str>], rules: &[StructureRule], lex: &Lexicon) -> Result<(), String> {
    let mut tagged = tagged_from(cands, lex);
    let (structure, outcome) = disambiguate(&mut tagged, rules, lex);
    let chosen: Vec<usize> = tagged.iter().map(|t| t.chosen.unwrap()).collect();
    let all_skipped = cands.iter().all(|c| c.iter().all(|&l| l == "Particule"));
    match oracle_first_match(cands, rules) {
        Some(picks) => {
            ensure(outcome.is_match() && chosen == picks, || {
                format!("{cands:?}: got {outcome:?} {chosen:?}, oracle {picks:?}")
            })?;
            let rule = outcome.rule_id().unwrap();
            let first = rules.iter().find(|r| r.matches(&structure.labels)).unwrap();
            ensure(first.id == rule, || format!("{cands:?}: rule {rule} is not the first matching"))
        }
        None if all_skipped => ensure(outcome == MatchOutcome::Vacuous, || format!("{cands:?}: {outcome:?}")),
        None => ensure(outcome == MatchOutcome::Unmatched && chosen.iter().all(|&c| c == 0), || {
            format!("{cands:?}: got {outcome:?} {chosen:?}, oracle unmatched")
        }),
    }
}

fn disambiguation_soundness() -> Outcome {
    let lex = Lexicon::from_xml(SYNTHETIC_LEXICON, NormalizationOptions::default()).map_err(|e| e.to_string())?;
    let rules = synthetic_rules();
    let pool = ["Verbe", "Nom", "Particule"];

    // every ordered candidate list of 1..=3 distinct labels
    let mut lists: Vec<Vec<&'static str>> = Vec::new();
    for a in pool {
        lists.push(vec![a]);
        for b in pool.iter().filter(|&&b| b != a) {
            lists.push(vec![a, b]);
            for c in pool.iter().filter(|&&c| c != a && c != *b) {
                lists.push(vec![a, b, c]);
            }
        }
    }

    let mut checked = 0;
    let mut sentence: Vec<Vec<&'static str>> = Vec::new();
    fn walk(
        depth: usize,
        sentence: &mut Vec<Vec<&'static str>>,
        lists: &[Vec<&'static str>],
        f: &mut dyn FnMut(&Sentence) -> Result<(), String>,
    ) -> Result<(), String> {
        if !sentence.is_empty() {
            f(sentence)?;
        }
        if depth == 4 {
            return Ok(());
        }
        for l in lists {
            sentence.push(l.clone());
            walk(depth + 1, sentence, lists, f)?;
            sentence.pop();
        }
        Ok(())
    }
    walk(0, &mut sentence, &lists, &mut |s| {
        checked += 1;
        check_disambiguation(s, &rules, &lex)
    })?;

    // candidate lists with repeated labels
    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..20_000 {
        let n = rng.gen_range(1..=4);
        let s: Vec<Vec<&'static str>> = (0..n)
            .map(|_| (0..rng.gen_range(1..=3)).map(|_| *pool.choose(&mut rng).unwrap()).collect())
            .collect();
        check_disambiguation(&s, &rules, &lex)?;
        checked += 1;
    }
    Ok(format!("{checked} sentences agree with exhaustive enumeration"))
}

const WORDS: &[&str] = &[
    "يبحث", "في", "أصول", "تكوين", "الجملة", "وقواعد", "الإعراب", "أنتم", "لم", "تذهبون", "تذهبوا", "إيمان", "أيمن",
    "أقراص", "هم", "يكتبوا", "ذلك", "المكان", "هو", "العمليات", "والأنشطة", "الجمّة", "قـواعـد", "إِنسان", "محمد",
    "xyz", "42", "كتاب", "لن", "يذهبان", "هما", "تشبعوا",
];
const SEPARATORS: &[&str] = &[" ", " ", " ", "، ", ". ", "؟ ", "! ", ": ", "؛ ", "\n", "\n\n", " \n \n", "  ", "\t", "-"];

fn random_document(rng: &mut StdRng) -> String {
    let mut doc = String::new();
    for _ in 0..rng.gen_range(0..40) {
        if rng.gen_bool(0.15) {
            let len = rng.gen_range(1..6);
            let random: String = (0..len).map(|_| char::from_u32(rng.gen_range(0x0621..=0x0655)).unwrap()).collect();
            doc.push_str(&random);
        } else {
            doc.push_str(WORDS.choose(rng).unwrap());
        }
        doc.push_str(SEPARATORS.choose(rng).unwrap());
    }
    doc
}

fn pipeline_invariants() -> Outcome {
    let engine = engine();
    let opts = engine.options();
    let mut rng = StdRng::seed_from_u64(3);
    let mut faults = 0;
    for n in 0..1000 {
        let doc = random_document(&mut rng);
        let once = normalize(&doc, opts).normalized;
        ensure(normalize(&once, opts).normalized == once, || format!("doc {n}: normalization not idempotent"))?;

        let doc_len = doc.chars().count();
        let mut last_end = 0;
        for sentence in engine.split(&doc) {
            for t in &sentence.tokens {
                ensure(t.span.start >= last_end && t.span.end <= doc_len && !t.span.is_empty(), || {
                    format!("doc {n}: token span {:?} out of order", t.span)
                })?;
                last_end = t.span.end;
                let back = normalize_word(t.span.slice(&doc), opts);
                ensure(back == t.surface, || format!("doc {n}: {back:?} != {:?}", t.surface))?;
            }
        }

        let report = engine.analyze_text(&doc);
        for f in &report.faults {
            let s = &report.sentences[f.sentence_index];
            ensure(f.ordinal < s.token_count || (f.kind == FaultKind::Structure && f.ordinal == 0), || {
                format!("doc {n}: fault ordinal {} out of range", f.ordinal)
            })?;
            for span in &f.spans {
                ensure(span.start >= s.span.start && span.end <= s.span.end, || {
                    format!("doc {n}: fault span {span:?} outside sentence {:?}", s.span)
                })?;
            }
        }
        faults += report.faults.len();
        let json = report.to_json();
        ensure(engine.analyze_text(&doc).to_json() == json, || format!("doc {n}: not deterministic"))?;
        ensure(engine.analyze_text_parallel(&doc).to_json() == json, || format!("doc {n}: parallel differs"))?;
    }
    Ok(format!("1000 documents, {faults} faults, all invariants hold"))
}

fn throughput() -> Outcome {
    let engine = engine();
    let corpus = parse_corpus(BUILTIN_CORPUS).unwrap();
    let mut text = String::new();
    let mut i = 0;
    while text.len() < 1_000_000 {
        text.push_str(&corpus[i % corpus.len()].text);
        text.push_str(".\n");
        i += 1;
    }
    let start = Instant::now();
    let report = engine.analyze_text_parallel(&text);
    let elapsed = start.elapsed();
    let mb = text.len() as f64 / 1_000_000.0;
    let profile = if cfg!(debug_assertions) { "debug assertions on" } else { "release" };
    ensure(elapsed <= Duration::from_secs(2), || format!("{mb:.2} MB took {elapsed:.2?} ({profile})"))?;
    Ok(format!(
        "{mb:.2} MB, {} sentences, {} faults in {elapsed:.2?} ({profile})",
        report.sentences.len(),
        report.faults.len()
    ))
}

fn main() -> std::process::ExitCode {
    let criteria: [Criterion; 7] = [
        ("golden table", golden_table),
        ("conjugation contrast pairs", conjugation_pairs),
        ("precision against set oracle", precision_oracle),
        ("lexical lookup against split oracle", lexical_oracle),
        ("disambiguation soundness", disambiguation_soundness),
        ("pipeline invariants", pipeline_invariants),
        ("throughput", throughput),
    ];
    let mut failed = Vec::new();
    for (n, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {}. {name}: {detail}", n + 1),
            Err(why) => {
                println!("FAIL {}. {name}: {why}", n + 1);
                failed.push(*name);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", criteria.len());
        std::process::ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria: {failed:?}");
        std::process::ExitCode::FAILURE
    }
}
