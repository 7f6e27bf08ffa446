use std::collections::BTreeMap;
use std::fmt::Write as _;

use anyhow::Context;
use log::{debug, info};
use rayon::prelude::*;
use serde_json::json;

use cfk_core::complex::{
    figure_eight, left_trefoil, lspace_staircase, parse_w_list, right_trefoil, FilteredComplex, Region,
};
use cfk_core::homology::{hfk_hat, Homology, HfkTable};
use cfk_core::invariants::{build_cone, involutive_vs, InvariantTriple};
use cfk_core::involution::{figure_eight_involution, staircase_involution, trefoil_involution, Involution};
use cfk_core::pretzel::{
    compute_invariants, expected_hfk, full_complex, mirror_table, model_complex, InvariantReport, Model,
    PretzelParams,
};
use cfk_core::render;

use crate::{Example, Failure, Format, Output, Which};

fn params(m: i64, n: i64) -> Result<PretzelParams, Failure> {
    Ok(PretzelParams::new(m, n)?)
}

fn unsupported(cmd: &str, format: Format) -> Failure {
    Failure::Usage(format!("`{cmd}` does not support --format {format:?}").to_lowercase())
}

fn verdict(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn knot_name(p: PretzelParams, mirror: bool) -> String {
    if mirror {
        format!("mirror of {p}")
    } else {
        p.to_string()
    }
}

fn report_table(r: &InvariantReport) -> String {
    let p = PretzelParams { m: r.m, n: r.n };
    let mut out = String::new();
    let _ = writeln!(out, "{}  family {}  v = {}  n(K) = {}", knot_name(p, r.mirrored), r.family, r.v, r.n_k);
    let boxes: Vec<String> = r.boxes.iter().map(|b| format!("{}:{}", b.diagonal, b.count)).collect();
    let _ = writeln!(out, "boxes by diagonal: {}", if boxes.is_empty() { "none".into() } else { boxes.join(" ") });
    let _ = writeln!(out, "{:<10} {:>9} {:>12}", "", "computed", "closed form");
    for (name, a, b) in [
        ("V0", r.computed.v0, r.expected.v0),
        ("V0_lower", r.computed.lower, r.expected.lower),
        ("V0_upper", r.computed.upper, r.expected.upper),
    ] {
        let _ = writeln!(out, "{name:<10} {a:>9} {b:>12}");
    }
    let c = r.checks;
    for (name, ok) in [
        ("theorem", c.theorem_match),
        ("hfk", c.hfk_match),
        ("alexander", c.alexander_match),
        ("genus", c.genus_match),
        ("generator count", c.count_match),
        ("involution", c.involution_valid),
    ] {
        let _ = writeln!(out, "  {name:<16} {}", if ok { "ok" } else { "FAILED" });
    }
    let _ = writeln!(out, "{}", if c.all() { "MATCH" } else { "MISMATCH" });
    out
}

pub fn invariants(m: i64, n: i64, mirror: bool, format: Format) -> Result<Output, Failure> {
    let p = params(m, n)?;
    let r = compute_invariants(p, mirror)?;
    let text = match format {
        Format::Table => report_table(&r),
        Format::Json => r.to_json() + "\n",
        f => return Err(unsupported("invariants", f)),
    };
    let verdict = verdict(r.checks.all(), || format!("MISMATCH for {}", knot_name(p, mirror)));
    Ok(Output { text, verdict })
}

pub fn verify(m_max: i64, n_max: Option<i64>, jobs: usize, format: Format) -> Result<Output, Failure> {
    if m_max < 3 || m_max % 2 == 0 {
        return Err(Failure::Usage(format!("--m-max must be odd and at least 3, got {m_max}")));
    }
    let n_max = n_max.unwrap_or(m_max);
    if n_max < 3 || n_max > m_max {
        return Err(Failure::Usage(format!("--n-max must satisfy 3 <= n_max <= m_max, got {n_max}")));
    }
    let mut cases = Vec::new();
    for m in (3..=m_max).step_by(2) {
        for n in (3..=m.min(n_max)).step_by(2) {
            for mirror in [false, true] {
                cases.push((params(m, n)?, mirror));
            }
        }
    }
    info!("verifying {} cases", cases.len());
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().context("starting worker pool")?;
    // collect keeps the input order whatever the scheduling
    let results: Vec<_> = pool.install(|| {
        cases
            .par_iter()
            .map(|&(p, mirror)| {
                debug!("case {p} mirror={mirror}");
                (p, mirror, compute_invariants(p, mirror))
            })
            .collect()
    });

    let mut failures = Vec::new();
    let mut text = String::new();
    let mut reports = Vec::new();
    if format == Format::Table {
        let _ = writeln!(text, "{:>4} {:>4} {:>6}  {:<12} {:<12} verdict", "m", "n", "mirror", "computed", "closed form");
    }
    for (p, mirror, r) in results {
        match r {
            Ok(r) => {
                if !r.checks.all() {
                    failures.push(format!("({}, {}, mirrored={mirror})", p.m, p.n));
                }
                if format == Format::Table {
                    let t = |x: &InvariantTriple| format!("({},{},{})", x.v0, x.lower, x.upper);
                    let _ = writeln!(
                        text,
                        "{:>4} {:>4} {:>6}  {:<12} {:<12} {}",
                        p.m,
                        p.n,
                        mirror,
                        t(&r.computed),
                        t(&r.expected),
                        if r.checks.all() { "MATCH" } else { "MISMATCH" }
                    );
                }
                reports.push(serde_json::to_value(&r).context("serialising report")?);
            }
            Err(e) => {
                failures.push(format!("({}, {}, mirrored={mirror}): {e}", p.m, p.n));
                if format == Format::Table {
                    let _ = writeln!(text, "{:>4} {:>4} {:>6}  error: {e}", p.m, p.n, mirror);
                }
            }
        }
    }
    let total = cases.len();
    match format {
        Format::Table => {
            let _ = writeln!(text, "{} cases, {} passed, {} failed", total, total - failures.len(), failures.len());
        }
        Format::Json => {
            let v = json!({ "cases": total, "failed": failures, "reports": reports });
            text = serde_json::to_string_pretty(&v).context("serialising summary")? + "\n";
        }
        f => return Err(unsupported("verify", f)),
    }
    let verdict = verdict(failures.is_empty(), || format!("failing cases:\n  {}", failures.join("\n  ")));
    Ok(Output { text, verdict })
}

fn hfk_grid(t: &HfkTable) -> String {
    if t.entries.is_empty() {
        return "(zero)\n".into();
    }
    let kmin = t.entries.keys().map(|k| k.1).min().unwrap_or(0);
    let kmax = t.entries.keys().map(|k| k.1).max().unwrap_or(0);
    let wmin = t.entries.keys().map(|k| k.0).min().unwrap_or(0);
    let wmax = t.entries.keys().map(|k| k.0).max().unwrap_or(0);
    let mut out = String::from(" A\\M |");
    for k in kmin..=kmax {
        let _ = write!(out, "{k:>4}");
    }
    out.push('\n');
    for w in (wmin..=wmax).rev() {
        let _ = write!(out, "{w:>4} |");
        for k in kmin..=kmax {
            match t.rank(w, k) {
                0 => out.push_str("   ."),
                r => {
                    let _ = write!(out, "{r:>4}");
                }
            }
        }
        out.push('\n');
    }
    out
}

pub fn hfk(m: i64, n: i64, mirror: bool, format: Format) -> Result<Output, Failure> {
    let p = params(m, n)?;
    let full = full_complex(p, mirror)?;
    let got = hfk_hat(&full.complex)?;
    let want = if mirror { mirror_table(&expected_hfk(p)) } else { expected_hfk(p) };
    let ok = got == want;
    let text = match format {
        Format::Table => format!(
            "{} ({} generators, total rank {})\n{}{}\n",
            knot_name(p, mirror),
            full.complex.len(),
            got.total_rank(),
            hfk_grid(&got),
            if ok { "MATCH" } else { "MISMATCH" }
        ),
        Format::Json => {
            let v = json!({
                "m": p.m,
                "n": p.n,
                "mirrored": mirror,
                "entries": got.to_entries(),
                "matches_expected": ok,
            });
            serde_json::to_string_pretty(&v).context("serialising table")? + "\n"
        }
        f => return Err(unsupported("hfk", f)),
    };
    Ok(Output { text, verdict: verdict(ok, || format!("HFK MISMATCH for {}", knot_name(p, mirror))) })
}

/// Staircase dots plus box multiplicities at each box corner.
fn boxes_ascii(c: &FilteredComplex) -> String {
    let stair: Vec<(i64, i64)> = c.gens().iter().filter(|g| g.id.starts_with('z')).map(|g| (g.i, g.j)).collect();
    let mut corners: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    for g in c.gens() {
        let is_corner = g.id == "a" || (g.id.starts_with('q') && g.id.ends_with(".a"));
        if is_corner {
            *corners.entry((g.i, g.j)).or_insert(0) += 1;
        }
    }
    render::ascii_with_boxes(&stair, &corners)
}

fn module_text(title: &str, labels: &[String], grading: &[i64], d: &cfk_core::matrix::PolyMatrix) -> String {
    let mut out = format!("{title}: {} generators\n", labels.len());
    let w = labels.iter().map(|l| l.chars().count()).max().unwrap_or(1);
    for s in 0..labels.len() {
        let terms: Vec<String> = (0..labels.len())
            .filter(|&t| !d.get(t, s).is_zero())
            .map(|t| {
                let p = d.get(t, s);
                if p.is_one() {
                    labels[t].clone()
                } else {
                    format!("({p}){}", labels[t])
                }
            })
            .collect();
        let image = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        let _ = writeln!(out, "  {:<w$} [{:>3}]  d = {image}", labels[s], grading[s]);
    }
    out
}

fn complex_json(model: &Model) -> anyhow::Result<String> {
    let v = json!({
        "complex": model.complex.to_json_value(),
        "involution": model.involution.to_json_value(&model.complex),
    });
    Ok(serde_json::to_string_pretty(&v)? + "\n")
}

pub fn show(m: i64, n: i64, mirror: bool, which: Which, format: Format) -> Result<Output, Failure> {
    let p = params(m, n)?;
    let model = match which {
        Which::Full => full_complex(p, mirror)?,
        _ => model_complex(p, mirror)?,
    };
    let text = match (which, format) {
        (Which::Full | Which::Model, Format::Dot) => render::dot(&model.complex, Some(&model.involution)),
        (Which::Full | Which::Model, Format::Json) => complex_json(&model)?,
        (Which::Full, Format::Ascii) => {
            format!("{}: staircase (o) and box multiplicities\n{}", knot_name(p, mirror), boxes_ascii(&model.complex))
        }
        (Which::Model, Format::Ascii) => format!(
            "{}: generators per level\n{}\n{}",
            knot_name(p, mirror),
            render::ascii(&model.complex),
            render::generator_table(&model.complex)
        ),
        (Which::A0, f) => {
            let sq = model.complex.subquotient(Region::A0Minus)?;
            let h = Homology::of(&sq)?.module;
            match f {
                Format::Dot => render::dot_module(&sq.labels, &sq.grading, &sq.diff),
                Format::Json => {
                    let v = json!({
                        "complex": render::module_json(&sq.labels, &sq.grading, &sq.diff),
                        "homology": h.summary(),
                    });
                    serde_json::to_string_pretty(&v).context("serialising A0")? + "\n"
                }
                Format::Ascii | Format::Table => {
                    format!("{}H = {h}\n", module_text("A0", &sq.labels, &sq.grading, &sq.diff))
                }
            }
        }
        (Which::Cone, f) => {
            let cone = build_cone(&model.complex, &model.involution)?;
            let comp = involutive_vs(&model.complex, &model.involution)?;
            match f {
                Format::Dot => render::dot_module(&cone.labels, &cone.grading, &cone.diff),
                Format::Json => {
                    let v = json!({
                        "complex": render::module_json(&cone.labels, &cone.grading, &cone.diff),
                        "homology": comp.cone.summary(),
                    });
                    serde_json::to_string_pretty(&v).context("serialising cone")? + "\n"
                }
                Format::Ascii | Format::Table => {
                    format!("{}H = {}\n", module_text("cone", &cone.labels, &cone.grading, &cone.diff), comp.cone)
                }
            }
        }
        (_, f) => return Err(unsupported("show", f)),
    };
    Ok(Output { text, verdict: Ok(()) })
}

fn example_model(name: Example, w: &[String]) -> Result<(String, Model), Failure> {
    if name != Example::Lspace && !w.is_empty() {
        return Err(Failure::Usage(format!("unexpected arguments {w:?}")));
    }
    let (title, complex, involution) = match name {
        Example::Trefoil => {
            let c = right_trefoil();
            let i = trefoil_involution(&c)?;
            ("right-handed trefoil".to_string(), c, i)
        }
        Example::LeftTrefoil => {
            let c = left_trefoil();
            let i = trefoil_involution(&c)?;
            ("left-handed trefoil".to_string(), c, i)
        }
        Example::FigureEight => {
            let c = figure_eight();
            let i = figure_eight_involution(&c)?;
            ("figure-eight knot".to_string(), c, i)
        }
        Example::Lspace => {
            if w.is_empty() {
                return Err(Failure::Usage("lspace needs the exponents w1 < w2 < ...".into()));
            }
            let ws = parse_w_list(&w.join(" "))?;
            let (c, nk) = lspace_staircase(&ws)?;
            let i = staircase_involution(&c)?;
            (format!("L-space staircase w = {ws:?}, n(K) = {nk}"), c, i)
        }
    };
    Ok((title, Model { complex, involution }))
}

fn involution_text(c: &FilteredComplex, i: &Involution) -> String {
    let mut images: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for (t, s, v) in i.matrix.entries() {
        for a in v.exponents() {
            let target = &c.gens()[t].id;
            let term = match a {
                0 => target.clone(),
                1 => format!("U {target}"),
                _ => format!("U^{a} {target}"),
            };
            images.entry(s).or_default().push(term);
        }
    }
    let mut out = String::new();
    for (k, g) in c.gens().iter().enumerate() {
        let img = images.get(&k).map(|v| v.join(" + ")).unwrap_or_else(|| "0".into());
        let _ = writeln!(out, "  iota({}) = {img}", g.id);
    }
    out
}

pub fn examples(name: Example, w: &[String], format: Format) -> Result<Output, Failure> {
    let (title, model) = example_model(name, w)?;
    let triple = involutive_vs(&model.complex, &model.involution)?.triple;
    let text = match format {
        Format::Table | Format::Ascii => {
            let mut out = format!("{title}\n\n{}\n", render::ascii(&model.complex));
            out.push_str(&render::generator_table(&model.complex));
            out.push_str("\ninvolution\n");
            out.push_str(&involution_text(&model.complex, &model.involution));
            let _ = writeln!(out, "\n{triple}");
            out
        }
        Format::Json => {
            let v = json!({
                "name": title,
                "complex": model.complex.to_json_value(),
                "involution": model.involution.to_json_value(&model.complex),
                "invariants": triple,
            });
            serde_json::to_string_pretty(&v).context("serialising example")? + "\n"
        }
        Format::Dot => render::dot(&model.complex, Some(&model.involution)),
    };
    Ok(Output { text, verdict: Ok(()) })
}
