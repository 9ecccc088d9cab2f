//! Report rendering: colored terminal text and HTML.
//!
//! Text is emitted in logical order; right-to-left display is left to the
//! terminal or browser.

use std::fmt::Write;
use std::str::FromStr;

use crate::engine::report::{Fault, FaultKind, Report};
use crate::segmentation::Span;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Color {
    Red,
    Green,
    Yellow,
    Blue,
    Magenta,
    Cyan,
}

impl Color {
    fn ansi(self) -> &'static str {
        match self {
            Color::Red => "\x1b[31m",
            Color::Green => "\x1b[32m",
            Color::Yellow => "\x1b[33m",
            Color::Blue => "\x1b[34m",
            Color::Magenta => "\x1b[35m",
            Color::Cyan => "\x1b[36m",
        }
    }
}

impl FromStr for Color {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "red" => Ok(Color::Red),
            "green" => Ok(Color::Green),
            "yellow" => Ok(Color::Yellow),
            "blue" => Ok(Color::Blue),
            "magenta" => Ok(Color::Magenta),
            "cyan" => Ok(Color::Cyan),
            other => Err(format!("unknown color {other:?}")),
        }
    }
}

const UNDERLINE: &str = "\x1b[4m";
const BOLD: &str = "\x1b[1m";
const RESET: &str = "\x1b[0m";

/// Color class per fault kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Palette {
    pub spelling: Color,
    pub structure: Color,
    pub conjugation: Color,
}

impl Default for Palette {
    fn default() -> Self {
        Self {
            spelling: Color::Red,
            structure: Color::Yellow,
            conjugation: Color::Magenta,
        }
    }
}

impl Palette {
    pub fn color(&self, kind: FaultKind) -> Color {
        match kind {
            FaultKind::Spelling => self.spelling,
            FaultKind::Structure => self.structure,
            FaultKind::Conjugation => self.conjugation,
        }
    }
}

impl FromStr for Palette {
    type Err = String;

    /// Parses overrides such as `spelling=cyan,conjugation=blue`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut palette = Palette::default();
        for item in s.split(',').filter(|i| !i.trim().is_empty()) {
            let (kind, color) = item
                .split_once('=')
                .ok_or_else(|| format!("expected kind=color, found {item:?}"))?;
            let color: Color = color.parse()?;
            match kind.trim().parse::<FaultKind>()? {
                FaultKind::Spelling => palette.spelling = color,
                FaultKind::Structure => palette.structure = color,
                FaultKind::Conjugation => palette.conjugation = color,
            }
        }
        Ok(palette)
    }
}

/// Per-character fault class: word faults win over the sentence-wide
/// structure fault.
fn char_classes(len: usize, faults: &[&Fault]) -> Vec<Option<FaultKind>> {
    let mut classes = vec![None; len];
    for pass_structure in [true, false] {
        for f in faults.iter().filter(|f| (f.kind == FaultKind::Structure) == pass_structure) {
            for span in &f.spans {
                for c in classes.iter_mut().take(span.end.min(len)).skip(span.start) {
                    *c = Some(f.kind);
                }
            }
        }
    }
    classes
}

fn paint(text: &str, faults: &[&Fault], palette: &Palette) -> String {
    let chars: Vec<char> = text.chars().collect();
    let classes = char_classes(chars.len(), faults);
    let mut out = String::with_capacity(text.len() * 2);
    let mut current: Option<FaultKind> = None;
    for (c, class) in chars.iter().zip(classes) {
        if class != current {
            if current.is_some() {
                out.push_str(RESET);
            }
            if let Some(kind) = class {
                out.push_str(palette.color(kind).ansi());
                if kind == FaultKind::Structure {
                    out.push_str(UNDERLINE);
                } else {
                    out.push_str(BOLD);
                }
            }
            current = class;
        }
        out.push(*c);
    }
    if current.is_some() {
        out.push_str(RESET);
    }
    out
}

/// Lists faults per sentence, with the faulty spans colored when `color`
/// is set. Without color the output contains no escape sequences.
pub fn render_text(source: &str, report: &Report, palette: &Palette, color: bool) -> String {
    let mut out = String::new();
    for sentence in &report.sentences {
        let faults: Vec<&Fault> = report
            .faults
            .iter()
            .filter(|f| f.sentence_index == sentence.index)
            .collect();
        if faults.is_empty() {
            continue;
        }
        let text = sentence.span.slice(source);
        let shifted: Vec<Fault> = faults
            .iter()
            .map(|f| Fault {
                spans: f
                    .spans
                    .iter()
                    .map(|s| Span::new(s.start - sentence.span.start, s.end - sentence.span.start))
                    .collect(),
                ..(*f).clone()
            })
            .collect();
        let shifted_refs: Vec<&Fault> = shifted.iter().collect();
        let shown = if color {
            paint(text, &shifted_refs, palette)
        } else {
            text.to_owned()
        };
        let _ = writeln!(out, "sentence {}: {}", sentence.index + 1, shown);
        for f in faults {
            let span = f.spans[0];
            let label = if color {
                format!("{}{}{}", palette.color(f.kind).ansi(), f.kind, RESET)
            } else {
                f.kind.to_string()
            };
            let _ = writeln!(out, "  {label} [{}..{}]: {}", span.start, span.end, f.message);
        }
    }
    let s = &report.stats;
    if s.total() == 0 {
        out.push_str("no faults found\n");
    } else {
        let _ = writeln!(
            out,
            "{} fault(s): {} spelling, {} structure, {} conjugation",
            s.total(),
            s.spelling,
            s.structure,
            s.conjugation
        );
    }
    out
}

fn escape_html(c: char, out: &mut String) {
    match c {
        '&' => out.push_str("&amp;"),
        '<' => out.push_str("&lt;"),
        '>' => out.push_str("&gt;"),
        '"' => out.push_str("&quot;"),
        '\'' => out.push_str("&#39;"),
        _ => out.push(c),
    }
}

fn escape_attr(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        escape_html(c, &mut out);
    }
    out
}

/// A standalone HTML page showing the source with faults wrapped in
/// class-tagged elements: `fault-structure` around sentences,
/// `fault-spelling` / `fault-conjugation` marks around words.
pub fn render_html(source: &str, report: &Report, palette: &Palette) -> String {
    let css = |c: Color| match c {
        Color::Red => "#d32f2f",
        Color::Green => "#388e3c",
        Color::Yellow => "#f9a825",
        Color::Blue => "#1976d2",
        Color::Magenta => "#c2185b",
        Color::Cyan => "#0097a7",
    };
    let mut out = String::new();
    out.push_str("<!DOCTYPE html>\n<html lang=\"ar\" dir=\"rtl\">\n<head>\n<meta charset=\"utf-8\">\n<title>arabiclint report</title>\n<style>\n");
    let _ = writeln!(out, "body {{ white-space: pre-wrap; font-size: 1.3em; }}");
    let _ = writeln!(out, ".fault-spelling {{ background: none; color: {}; text-decoration: underline wavy; }}", css(palette.spelling));
    let _ = writeln!(out, ".fault-structure {{ text-decoration: underline {}; }}", css(palette.structure));
    let _ = writeln!(out, ".fault-conjugation {{ background: none; color: {}; text-decoration: underline wavy; }}", css(palette.conjugation));
    out.push_str("</style>\n</head>\n<body>\n");

    // word marks nest inside sentence spans
    let mut opens: Vec<(usize, u8, String)> = Vec::new();
    let mut closes: Vec<(usize, u8, &'static str)> = Vec::new();
    for f in &report.faults {
        let title = escape_attr(&f.message);
        for span in &f.spans {
            if f.kind == FaultKind::Structure {
                opens.push((span.start, 0, format!("<span class=\"fault fault-structure\" title=\"{title}\">")));
                closes.push((span.end, 1, "</span>"));
            } else {
                opens.push((span.start, 1, format!("<mark class=\"fault fault-{}\" title=\"{title}\">", f.kind)));
                closes.push((span.end, 0, "</mark>"));
            }
        }
    }
    opens.sort_by_key(|o| (o.0, o.1));
    closes.sort_by_key(|c| (c.0, c.1));

    let (mut oi, mut ci) = (0, 0);
    let count = source.chars().count();
    let mut chars = source.chars();
    for pos in 0..=count {
        while ci < closes.len() && closes[ci].0 == pos {
            out.push_str(closes[ci].2);
            ci += 1;
        }
        while oi < opens.len() && opens[oi].0 == pos {
            out.push_str(&opens[oi].2);
            oi += 1;
        }
        if let Some(c) = chars.next() {
            escape_html(c, &mut out);
        }
    }
    out.push_str("\n</body>\n</html>\n");
    out
}
