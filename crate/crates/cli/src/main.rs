use std::io::{self, IsTerminal, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use arabiclint::config::{parse_bool, BUILTIN_CORPUS, CONFIG_ENV};
use arabiclint::evaluation::{load_corpus, parse_corpus};
use arabiclint::render::{render_html, render_text, Palette};
use arabiclint::segmentation::normalize_word;
use arabiclint::{analyze_word, run_corpus, Engine, EngineConfig, LoadError};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Rule-based spelling, structure and conjugation checker for
/// non-vowelized Arabic text.
#[derive(Debug, Parser)]
#[command(name = "arabiclint", version)]
struct Cli {
    #[command(flatten)]
    data: DataArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct DataArgs {
    /// Config file with data paths and normalization options
    #[arg(long, global = true, env = CONFIG_ENV)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    lexicon: Option<PathBuf>,
    #[arg(long, global = true)]
    affixes: Option<PathBuf>,
    #[arg(long, global = true)]
    structure_rules: Option<PathBuf>,
    #[arg(long, global = true)]
    conjugation_rules: Option<PathBuf>,
    /// Fold hamza-carrying alef variants to bare alef
    #[arg(long, global = true, value_parser = parse_bool)]
    fold_hamza: Option<bool>,
    /// Keep short-vowel diacritics instead of stripping them
    #[arg(long, global = true, value_parser = parse_bool)]
    keep_diacritics: Option<bool>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a text file, or standard input
    Check {
        /// Input file; `-` or nothing reads standard input
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, value_enum, default_value_t = ColorChoice::Auto)]
        color: ColorChoice,
        /// Color overrides, e.g. `spelling=cyan,conjugation=blue`
        #[arg(long, value_parser = |s: &str| s.parse::<Palette>())]
        palette: Option<Palette>,
    },
    /// Score the engine against a gold-annotated JSON-lines corpus
    Eval {
        /// Corpus file; the bundled golden corpus when omitted
        corpus: Option<PathBuf>,
        /// Fail when a row not marked excluded-from-strict differs
        #[arg(long)]
        strict: bool,
    },
    /// Inspect the rule databases
    Rules {
        #[command(subcommand)]
        action: RulesAction,
    },
    /// Inspect the lexicon
    Lexicon {
        #[command(subcommand)]
        action: LexiconAction,
    },
}

#[derive(Debug, Subcommand)]
enum RulesAction {
    /// Load every database and report problems
    Validate,
}

#[derive(Debug, Subcommand)]
enum LexiconAction {
    /// Show every analysis of a word
    Lookup { word: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Html,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ColorChoice {
    Auto,
    Always,
    Never,
}

impl DataArgs {
    fn engine_config(&self) -> Result<EngineConfig, LoadError> {
        let mut config = match &self.config {
            Some(path) => EngineConfig::from_file(path)?,
            None => EngineConfig::default(),
        };
        let set = |slot: &mut Option<PathBuf>, flag: &Option<PathBuf>| {
            if flag.is_some() {
                slot.clone_from(flag);
            }
        };
        set(&mut config.lexicon, &self.lexicon);
        set(&mut config.affixes, &self.affixes);
        set(&mut config.structure_rules, &self.structure_rules);
        set(&mut config.conjugation_rules, &self.conjugation_rules);
        if let Some(v) = self.fold_hamza {
            config.normalization.fold_hamza = v;
        }
        if let Some(v) = self.keep_diacritics {
            config.normalization.keep_diacritics = v;
        }
        Ok(config)
    }
}

fn read_input(input: Option<&Path>) -> Result<String> {
    match input {
        Some(p) if p != Path::new("-") => {
            std::fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))
        }
        _ => {
            let mut text = String::new();
            io::stdin().read_to_string(&mut text).context("cannot read standard input")?;
            Ok(text)
        }
    }
}

fn check(engine: &Engine, input: Option<&Path>, format: Format, color: ColorChoice, palette: Palette) -> Result<u8> {
    let text = read_input(input)?;
    let report = engine.analyze_text_parallel(&text);
    for w in &report.warnings {
        log::warn!("{w}");
    }
    let out = match format {
        Format::Json => report.to_json() + "\n",
        Format::Html => render_html(&text, &report, &palette),
        Format::Text => {
            let color = match color {
                ColorChoice::Always => true,
                ColorChoice::Never => false,
                ColorChoice::Auto => io::stdout().is_terminal() && std::env::var_os("NO_COLOR").is_none(),
            };
            render_text(&text, &report, &palette, color)
        }
    };
    print!("{out}");
    Ok(if report.is_clean() { 0 } else { 1 })
}

fn eval(engine: &Engine, corpus: Option<&Path>, strict: bool) -> Result<u8> {
    let corpus = match corpus {
        Some(p) => load_corpus(p).with_context(|| format!("cannot load corpus {}", p.display()))?,
        None => parse_corpus(BUILTIN_CORPUS)?,
    };
    let result = run_corpus(&corpus, engine)?;
    print!("{}", result.render_text());
    let failures = result.strict_failures().count();
    if strict && failures > 0 {
        println!("\nstrict: {failures} row(s) differ");
        return Ok(1);
    }
    Ok(0)
}

fn validate(engine: &Engine) -> u8 {
    let lex = engine.lexicon();
    println!("lexicon: {} entries in {} categories", lex.len(), lex.categories().len());
    let a = engine.affixes();
    println!(
        "affixes: {} prefixes, {} suffixes, {} verb prebases, {} verb postbases",
        a.prefixes().len() - 1,
        a.suffixes().len() - 1,
        a.verb_prebases().len(),
        a.verb_postbases().len()
    );
    println!("structure rules: {}", engine.structure_rules().len());
    println!("conjugation rules: {}", engine.conjugation().len());

    let mut warnings: Vec<String> = lex.warnings().to_vec();
    for rule in engine.conjugation().rules() {
        if let arabiclint::AgreementKey::Pronoun(p) = &rule.agreement_key {
            if !lex.contains_base(p) {
                warnings.push(format!("conjugation rule {} names a pronoun missing from the lexicon", rule.id()));
            }
        }
    }
    warnings.dedup();
    for w in &warnings {
        println!("warning: {w}");
    }
    if warnings.is_empty() {
        println!("ok");
        0
    } else {
        1
    }
}

fn lookup(engine: &Engine, word: &str) -> u8 {
    let normalized = normalize_word(word.trim(), engine.options());
    let analyses = analyze_word(&normalized, engine.lexicon(), engine.affixes());
    if analyses.is_empty() {
        println!("{normalized}: unknown");
        return 1;
    }
    for a in &analyses {
        println!(
            "{}+{}+{}\t{}",
            a.prefix,
            a.base,
            a.suffix,
            engine.lexicon().category_name(a.category)
        );
    }
    0
}

fn run(cli: Cli) -> Result<u8> {
    let engine = cli.data.engine_config()?.load_engine()?;
    for w in engine.lexicon().warnings() {
        log::warn!("{w}");
    }
    match cli.command {
        Command::Check {
            input,
            format,
            color,
            palette,
        } => check(&engine, input.as_deref(), format, color, palette.unwrap_or_default()),
        Command::Eval { corpus, strict } => eval(&engine, corpus.as_deref(), strict),
        Command::Rules {
            action: RulesAction::Validate,
        } => Ok(validate(&engine)),
        Command::Lexicon {
            action: LexiconAction::Lookup { word },
        } => Ok(lookup(&engine, &word)),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
