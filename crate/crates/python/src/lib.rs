//! Python bindings: `import arabiclint_py`.

use std::path::PathBuf;

use arabiclint::config::{BUILTIN_CORPUS, CONFIG_ENV};
use arabiclint::evaluation::{load_corpus, parse_corpus};
use arabiclint::render::{render_html, render_text, Palette};
use arabiclint::segmentation::normalize_word;
use arabiclint::{
    analyze_word, check_spelling, normalize, run_corpus, EngineConfig, EvalKey, EvalSets, FaultKind, LoadError,
    SpellingVerdict,
};
use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;

fn load_err(e: LoadError) -> PyErr {
    match e {
        LoadError::Io { .. } => PyOSError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

/// One detected fault. Spans are `(start, end)` character offsets into the
/// checked text.
#[pyclass(frozen, get_all, skip_from_py_object, module = "arabiclint_py")]
#[derive(Clone)]
struct Fault {
    kind: String,
    sentence: usize,
    spans: Vec<(usize, usize)>,
    ordinal: usize,
    message: String,
    rule_id: Option<String>,
}

#[pymethods]
impl Fault {
    fn __repr__(&self) -> String {
        format!("Fault({}, sentence={}, spans={:?})", self.kind, self.sentence, self.spans)
    }
}

/// Loaded lexicon and rule sets. Without arguments the bundled data is used;
/// `config` names a config file, and the path arguments override it.
#[pyclass(frozen, module = "arabiclint_py")]
struct Engine {
    inner: arabiclint::Engine,
}

#[pymethods]
impl Engine {
    #[new]
    #[pyo3(signature = (config=None, *, lexicon=None, affixes=None, structure_rules=None, conjugation_rules=None, fold_hamza=None, keep_diacritics=None))]
    #[allow(clippy::too_many_arguments)]
    fn new(
        config: Option<PathBuf>,
        lexicon: Option<PathBuf>,
        affixes: Option<PathBuf>,
        structure_rules: Option<PathBuf>,
        conjugation_rules: Option<PathBuf>,
        fold_hamza: Option<bool>,
        keep_diacritics: Option<bool>,
    ) -> PyResult<Self> {
        let config_path = config.or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from));
        let mut cfg = match config_path {
            Some(p) => EngineConfig::from_file(&p).map_err(load_err)?,
            None => EngineConfig::default(),
        };
        cfg.lexicon = lexicon.or(cfg.lexicon);
        cfg.affixes = affixes.or(cfg.affixes);
        cfg.structure_rules = structure_rules.or(cfg.structure_rules);
        cfg.conjugation_rules = conjugation_rules.or(cfg.conjugation_rules);
        if let Some(v) = fold_hamza {
            cfg.normalization.fold_hamza = v;
        }
        if let Some(v) = keep_diacritics {
            cfg.normalization.keep_diacritics = v;
        }
        let inner = cfg.load_engine().map_err(load_err)?;
        Ok(Self { inner })
    }

    /// Full report as a JSON string.
    fn check(&self, py: Python<'_>, text: &str) -> String {
        py.detach(|| self.inner.analyze_text_parallel(text).to_json())
    }

    fn faults(&self, py: Python<'_>, text: &str) -> Vec<Fault> {
        let report = py.detach(|| self.inner.analyze_text_parallel(text));
        report
            .faults
            .into_iter()
            .map(|f| Fault {
                kind: f.kind.to_string(),
                sentence: f.sentence_index,
                spans: f.spans.iter().map(|s| (s.start, s.end)).collect(),
                ordinal: f.ordinal,
                message: f.message,
                rule_id: f.rule_id,
            })
            .collect()
    }

    #[pyo3(signature = (text, color=false))]
    fn render_text(&self, text: &str, color: bool) -> String {
        render_text(text, &self.inner.analyze_text(text), &Palette::default(), color)
    }

    fn render_html(&self, text: &str) -> String {
        render_html(text, &self.inner.analyze_text(text), &Palette::default())
    }

    /// Every `(prefix, base, suffix, category)` analysis of a word.
    fn analyze_word(&self, word: &str) -> Vec<(String, String, String, String)> {
        let lex = self.inner.lexicon();
        let word = normalize_word(word, self.inner.options());
        analyze_word(&word, lex, self.inner.affixes())
            .into_iter()
            .map(|a| {
                let cat = lex.category_name(a.category).to_owned();
                (a.prefix, a.base, a.suffix, cat)
            })
            .collect()
    }

    /// True when the word has at least one analysis.
    fn check_spelling(&self, word: &str) -> bool {
        let word = normalize_word(word, self.inner.options());
        check_spelling(&word, self.inner.lexicon(), self.inner.affixes()) == SpellingVerdict::Correct
    }

    fn normalize(&self, text: &str) -> String {
        normalize(text, self.inner.options()).normalized
    }

    /// Sentences as lists of normalized token surfaces.
    fn split(&self, text: &str) -> Vec<Vec<String>> {
        self.inner
            .split(text)
            .into_iter()
            .map(|s| s.tokens.into_iter().map(|t| t.surface).collect())
            .collect()
    }

    /// Evaluation table over a JSON-lines corpus, or the bundled one.
    #[pyo3(signature = (corpus=None))]
    fn evaluate(&self, corpus: Option<PathBuf>) -> PyResult<String> {
        let rows = match corpus {
            Some(p) => load_corpus(&p),
            None => parse_corpus(BUILTIN_CORPUS),
        }
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
        let eval = run_corpus(&rows, &self.inner).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(eval.render_text())
    }
}

fn keys(items: Vec<(usize, usize, String)>) -> PyResult<std::collections::BTreeSet<EvalKey>> {
    items
        .into_iter()
        .map(|(entry, ordinal, kind)| {
            let kind: FaultKind = kind.parse().map_err(PyValueError::new_err)?;
            Ok(EvalKey { entry, ordinal, kind })
        })
        .collect()
}

/// Precision of `detected` against `gold`, both lists of
/// `(entry, ordinal, kind)`. Returns `None` when nothing was detected.
#[pyfunction]
fn detection_precision(gold: Vec<(usize, usize, String)>, detected: Vec<(usize, usize, String)>) -> PyResult<Option<f64>> {
    let sets = EvalSets {
        d_plus: keys(gold)?,
        r: keys(detected)?,
    };
    Ok(arabiclint::detection_precision(&sets).precision.map(|r| r.value()))
}

#[pymodule]
fn arabiclint_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Engine>()?;
    m.add_class::<Fault>()?;
    m.add_function(wrap_pyfunction!(detection_precision, m)?)?;
    Ok(())
}
