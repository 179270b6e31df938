//! Human-readable rendering of numbers, intervals and class labels.

use serde::Serialize;

use crate::algebra::{DomainScale, FuzzyInterval};
use crate::partition::{LevelPartition, SimilarityClass};

/// At most six decimals with trailing zeros trimmed: `7.35`, `100`, `0.5`.
pub fn format_number(x: f64) -> String {
    let s = format!("{x:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

/// Round to the printed precision, for machine-readable output.
pub fn round6(x: f64) -> f64 {
    let r = (x * 1e6).round() / 1e6;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// `[0, 7.35]` or `(7.35, 16.8]` in domain units.
pub fn format_interval(scale: &DomainScale, i: &FuzzyInterval) -> String {
    let (lo, hi) = scale.scale_interval(i);
    let open = if i.closed_lower { '[' } else { '(' };
    format!("{open}{}, {}]", format_number(lo), format_number(hi))
}

/// `S(Little short)`.
pub fn class_name(part: &LevelPartition, c: &SimilarityClass) -> String {
    format!("S({})", part.algebra().render_value(&c.label))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassRow {
    pub label: String,
    pub lower: f64,
    pub upper: f64,
    pub closed_lower: bool,
    pub ordinal: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapRow {
    pub lower: f64,
    pub upper: f64,
}

/// A partition's classes and gaps in domain units, rounded for output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartitionTable {
    pub attribute: String,
    pub level: usize,
    pub classes: Vec<ClassRow>,
    pub gaps: Vec<GapRow>,
}

impl PartitionTable {
    pub fn new(attribute: &str, scale: &DomainScale, part: &LevelPartition) -> Self {
        let classes = part
            .classes()
            .iter()
            .map(|c| {
                let (lower, upper) = scale.scale_interval(&c.interval);
                ClassRow {
                    label: class_name(part, c),
                    lower: round6(lower),
                    upper: round6(upper),
                    closed_lower: c.interval.closed_lower,
                    ordinal: c.ordinal,
                }
            })
            .collect();
        let gaps = part
            .gaps()
            .iter()
            .map(|g| {
                let (lower, upper) = scale.scale_interval(g);
                GapRow {
                    lower: round6(lower),
                    upper: round6(upper),
                }
            })
            .collect();
        Self {
            attribute: attribute.to_string(),
            level: part.level(),
            classes,
            gaps,
        }
    }

    /// Plain-text table: one row per class, then one per gap.
    pub fn to_text(&self) -> String {
        let mut out = format!("attribute {} level {}\n", self.attribute, self.level);
        let mut rows = vec![[
            "ordinal".to_string(),
            "class".to_string(),
            "lower".to_string(),
            "upper".to_string(),
        ]];
        for c in &self.classes {
            let open = if c.closed_lower { "[" } else { "(" };
            rows.push([
                c.ordinal.to_string(),
                c.label.clone(),
                format!("{open}{}", format_number(c.lower)),
                format!("{}]", format_number(c.upper)),
            ]);
        }
        for g in &self.gaps {
            rows.push([
                "-".to_string(),
                "gap".to_string(),
                format!("({}", format_number(g.lower)),
                format!("{}]", format_number(g.upper)),
            ]);
        }
        out.push_str(&render_table(&rows));
        out
    }
}

/// Left-aligned columns separated by two spaces.
pub fn render_table<R: AsRef<[String]>>(rows: &[R]) -> String {
    let cols = rows.iter().map(|r| r.as_ref().len()).max().unwrap_or(0);
    let mut widths = vec![0; cols];
    for r in rows {
        for (w, cell) in widths.iter_mut().zip(r.as_ref()) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r
            .as_ref()
            .iter()
            .zip(&widths)
            .map(|(cell, w)| format!("{cell:<w$}"))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}
