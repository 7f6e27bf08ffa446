//! DOT and ASCII renderings of complexes.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::complex::FilteredComplex;
use crate::involution::Involution;
use crate::matrix::PolyMatrix;

fn upower_label(a: i64) -> String {
    match a {
        0 => String::new(),
        1 => "U".into(),
        _ => format!("U^{a}"),
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz digraph with each generator pinned at its `(i, j)` level.
///
/// Generators sharing a level are nudged apart; `ι` terms, when given, are
/// drawn dashed.
pub fn dot(c: &FilteredComplex, iota: Option<&Involution>) -> String {
    let mut out = String::from("digraph cfk {\n  node [shape=point, width=0.08];\n  edge [arrowsize=0.5];\n");
    let mut seen: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    for g in c.gens() {
        let k = seen.entry((g.i, g.j)).or_insert(0);
        let (x, y) = (g.i as f64 + 0.18 * *k as f64, g.j as f64 - 0.12 * *k as f64);
        *k += 1;
        let _ = writeln!(
            out,
            "  {} [xlabel={}, pos=\"{x:.2},{y:.2}!\", tooltip=\"M={}\"];",
            quote(&g.id),
            quote(&g.id),
            g.maslov
        );
    }
    let ids: Vec<&str> = c.gens().iter().map(|g| g.id.as_str()).collect();
    for (t, s, v) in c.diff().entries() {
        for a in v.exponents() {
            let _ = writeln!(out, "  {} -> {} [label={}];", quote(ids[s]), quote(ids[t]), quote(&upower_label(a)));
        }
    }
    if let Some(i) = iota {
        for (t, s, v) in i.matrix.entries() {
            for a in v.exponents() {
                if s == t && a == 0 {
                    continue;
                }
                let _ = writeln!(
                    out,
                    "  {} -> {} [style=dashed, color=gray40, label={}];",
                    quote(ids[s]),
                    quote(ids[t]),
                    quote(&upower_label(a))
                );
            }
        }
    }
    out.push_str("}\n");
    out
}

/// DOT for a free `F₂[U]` complex given by labels and a matrix.
pub fn dot_module(labels: &[String], grading: &[i64], d: &PolyMatrix) -> String {
    let mut out = String::from("digraph module {\n  rankdir=TB;\n  node [shape=plaintext];\n");
    for (k, l) in labels.iter().enumerate() {
        let _ = writeln!(out, "  n{k} [label={}];", quote(&format!("{l} ({})", grading[k])));
    }
    for r in 0..d.rows() {
        for s in 0..d.cols() {
            let p = d.get(r, s);
            if !p.is_zero() {
                let _ = writeln!(out, "  n{s} -> n{r} [label={}];", quote(&p.to_string()));
            }
        }
    }
    out.push_str("}\n");
    out
}

/// Text grid over the `(i, j)` plane, `j` increasing upward.
///
/// Cells hold at most three characters; empty cells print `.`.
pub fn ascii_grid(cells: &BTreeMap<(i64, i64), String>) -> String {
    if cells.is_empty() {
        return "(empty)\n".into();
    }
    let imin = cells.keys().map(|k| k.0).min().unwrap_or(0).min(0);
    let imax = cells.keys().map(|k| k.0).max().unwrap_or(0).max(0);
    let jmin = cells.keys().map(|k| k.1).min().unwrap_or(0).min(0);
    let jmax = cells.keys().map(|k| k.1).max().unwrap_or(0).max(0);
    let mut out = String::new();
    for j in (jmin..=jmax).rev() {
        let _ = write!(out, "{j:>4} |");
        for i in imin..=imax {
            let cell = cells.get(&(i, j)).map(String::as_str).unwrap_or(".");
            let _ = write!(out, "{cell:>4}");
        }
        out.push('\n');
    }
    let _ = write!(out, "     +");
    for _ in imin..=imax {
        out.push_str("----");
    }
    out.push('\n');
    let _ = write!(out, "      ");
    for i in imin..=imax {
        let _ = write!(out, "{i:>4}");
    }
    out.push('\n');
    out
}

/// Number of generators at each filtration level.
pub fn generator_counts(c: &FilteredComplex) -> BTreeMap<(i64, i64), String> {
    let mut counts: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    for g in c.gens() {
        *counts.entry((g.i, g.j)).or_insert(0) += 1;
    }
    counts.into_iter().map(|(k, v)| (k, v.to_string())).collect()
}

pub fn ascii(c: &FilteredComplex) -> String {
    ascii_grid(&generator_counts(c))
}

/// Staircase generators as `o`, box corners as their multiplicity.
///
/// `staircase` holds the staircase levels and `boxes` the corner of each
/// box family; a level carrying both prints as `o3`.
pub fn ascii_with_boxes(staircase: &[(i64, i64)], boxes: &BTreeMap<(i64, i64), usize>) -> String {
    let mut cells: BTreeMap<(i64, i64), String> = BTreeMap::new();
    for &p in staircase {
        cells.insert(p, "o".into());
    }
    for (&p, &k) in boxes {
        let e = cells.entry(p).or_default();
        e.push_str(&k.to_string());
    }
    ascii_grid(&cells)
}

/// Table of generators with their gradings.
pub fn generator_table(c: &FilteredComplex) -> String {
    let w = c.gens().iter().map(|g| g.id.chars().count()).max().unwrap_or(2).max(2);
    let mut out = format!("{:<w$}  {:>4} {:>4} {:>4} {:>4}\n", "id", "M", "i", "j", "A");
    for g in c.gens() {
        let _ = writeln!(out, "{:<w$}  {:>4} {:>4} {:>4} {:>4}", g.id, g.maslov, g.i, g.j, g.alexander());
    }
    out
}

/// JSON form of a free `F₂[U]` complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleComplexJson {
    pub labels: Vec<String>,
    pub grading: Vec<i64>,
    pub differential: Vec<ModuleTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleTerm {
    pub target: usize,
    pub source: usize,
    /// Exponents of `U` present in the entry.
    pub upowers: Vec<usize>,
}

pub fn module_json(labels: &[String], grading: &[i64], d: &PolyMatrix) -> ModuleComplexJson {
    let mut differential = Vec::new();
    for s in 0..d.cols() {
        for t in 0..d.rows() {
            let p = d.get(t, s);
            if !p.is_zero() {
                differential.push(ModuleTerm { target: t, source: s, upowers: p.exponents().collect() });
            }
        }
    }
    ModuleComplexJson { labels: labels.to_vec(), grading: grading.to_vec(), differential }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::right_trefoil;
    use crate::involution::trefoil_involution;

    #[test]
    fn trefoil_dot_has_every_arrow() {
        let t = right_trefoil();
        let i = trefoil_involution(&t).unwrap();
        let d = dot(&t, Some(&i));
        assert!(d.starts_with("digraph"));
        assert_eq!(d.matches(" -> ").count(), 2 + 2);
        assert!(d.contains("\"a\" -> \"b\""));
    }

    #[test]
    fn grid_layout() {
        let g = ascii(&right_trefoil());
        let lines: Vec<&str> = g.lines().collect();
        // rows j = 0 and j = -1, then the axis
        assert!(lines[0].starts_with("   0 |"));
        assert!(lines[0].ends_with("   1   1"));
        assert!(lines[1].ends_with("   .   1"));
    }
}
