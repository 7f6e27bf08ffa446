//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use cfk_core::complex::{figure_eight, left_trefoil, right_trefoil, square, unknot, FilteredComplex, Region};
use cfk_core::homology::{hfk_hat, GradedModule, Homology};
use cfk_core::invariants::{build_cone, cone_towers, involutive_vs, InvariantTriple};
use cfk_core::involution::{
    figure_eight_involution, square_pair_part, trefoil_involution, validate_involution, Involution,
};
use cfk_core::matrix::LaurentMatrix;
use cfk_core::pretzel::{
    box_corner, box_multiplicities, c1_model, compute_invariants, dual_c1_model, expected_alexander, expected_generator_count,
    expected_hfk, full_complex, gmm_ledger, mirror_table, model_complex, theorem_values, Model, PretzelParams,
};

const THEOREM_M_MAX: i64 = 21;
const THEOREM_TIME_LIMIT: Duration = Duration::from_secs(60);
const HFK_M_MAX: i64 = 15;
const ORACLE_CONE_LIMIT: usize = 60;

type Outcome = Result<String, String>;

fn pairs(m_max: i64) -> Vec<PretzelParams> {
    let mut out = Vec::new();
    for m in (3..=m_max).step_by(2) {
        for n in (3..=m).step_by(2) {
            out.push(PretzelParams::new(m, n).expect("odd, ordered"));
        }
    }
    out
}

fn triple(v0: i64, lower: i64, upper: i64) -> InvariantTriple {
    InvariantTriple { v0, lower, upper }
}

fn theorem_reproduction() -> Outcome {
    let start = Instant::now();
    let mut cases = 0;
    let mut bad = Vec::new();
    for p in pairs(THEOREM_M_MAX) {
        for mirrored in [false, true] {
            cases += 1;
            match compute_invariants(p, mirrored) {
                Ok(r) if r.computed == theorem_values(p, mirrored) => {}
                Ok(r) => bad.push(format!("{p} mirrored={mirrored}: got {}, want {}", r.computed, r.expected)),
                Err(e) => bad.push(format!("{p} mirrored={mirrored}: {e}")),
            }
        }
    }
    let took = start.elapsed();
    if !bad.is_empty() {
        return Err(format!("{} of {cases} cases differ; first: {}", bad.len(), bad[0]));
    }
    if took > THEOREM_TIME_LIMIT {
        return Err(format!("{cases} cases match but took {took:.1?} (limit {THEOREM_TIME_LIMIT:?})"));
    }
    Ok(format!("{cases} cases exact in {took:.2?}"))
}

fn worked_examples() -> Outcome {
    let rt = right_trefoil();
    let lt = left_trefoil();
    let f = figure_eight();
    let cases: [(&str, &FilteredComplex, Involution, InvariantTriple); 3] = [
        ("right trefoil", &rt, trefoil_involution(&rt).map_err(|e| e.to_string())?, triple(1, 1, 1)),
        ("left trefoil", &lt, trefoil_involution(&lt).map_err(|e| e.to_string())?, triple(0, 0, -1)),
        ("figure-eight", &f, figure_eight_involution(&f).map_err(|e| e.to_string())?, triple(0, 1, 0)),
    ];
    for (name, c, i, want) in cases {
        let got = involutive_vs(c, &i).map_err(|e| format!("{name}: {e}"))?.triple;
        if got != want {
            return Err(format!("{name}: got {got}, want {want}"));
        }
    }
    Ok("trefoils and figure-eight exact".into())
}

/// Tower gradings and sorted `(grading, order)` torsion summands.
type Shape = (Vec<i64>, Vec<(i64, usize)>);

fn module(towers: &[i64], torsion: &[(i64, usize)]) -> Shape {
    let mut t = torsion.to_vec();
    t.sort_unstable();
    (towers.to_vec(), t)
}

fn shape(m: &GradedModule) -> Shape {
    (m.tower_gradings(), m.torsion_summary())
}

fn a0_and_cone(model: &Model) -> Result<(GradedModule, GradedModule), String> {
    let a0 = Homology::of(&model.complex.subquotient(Region::A0Minus).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?
        .module;
    let cone = build_cone(&model.complex, &model.involution).map_err(|e| e.to_string())?;
    let (h, _) = cone_towers(&cone).map_err(|e| e.to_string())?;
    Ok((a0, h))
}

/// Reference decompositions, as (towers, torsion) with gradings in the cone
/// convention `gr(x) = gr_A(x) + 1`, `gr(Qx) = gr_A(x)`.
fn reference_c1(n: i64) -> [Shape; 2] {
    [
        module(&[0], &[(2 * n - 1, n as usize), (2 * n, 1)]),
        module(&[2 * n, 1], &[(2 * n, n as usize + 1), (2 * n, 1)]),
    ]
}

fn reference_dual_c1(n: i64) -> [Shape; 2] {
    [module(&[-2 * n], &[(-2 * n, 1)]), module(&[-2 * n, -2 * n - 1], &[(-2 * n, 1)])]
}

fn homology_structure() -> Outcome {
    let mut a0_ok = 0;
    let mut towers_ok = 0;
    let mut bad = Vec::new();
    for n in 1..=5i64 {
        for (name, model, reference) in [
            ("C1", c1_model(n), reference_c1(n)),
            ("dual C1", dual_c1_model(n), reference_dual_c1(n)),
        ] {
            let model = model.map_err(|e| e.to_string())?;
            let (a0, ai0) = a0_and_cone(&model)?;
            if shape(&a0) == reference[0] {
                a0_ok += 1;
            } else {
                bad.push(format!("{name} n={n}: H(A0) = {a0}"));
            }
            let orders = |t: &[(i64, usize)]| {
                let mut o: Vec<usize> = t.iter().map(|x| x.1).collect();
                o.sort_unstable();
                o
            };
            let got = shape(&ai0);
            if got.0 == reference[1].0 && orders(&got.1) == orders(&reference[1].1) {
                towers_ok += 1;
            }
            if got != reference[1] {
                bad.push(format!("{name} n={n}: H(AI0) = {ai0}, reference torsion at {:?}", reference[1].1));
            }
        }
    }
    if bad.is_empty() {
        return Ok("C1 and its dual match for n(K) = 1..5".into());
    }
    Err(format!(
        "H(A0) matches {a0_ok}/10; H(AI0) towers and torsion orders match {towers_ok}/10; {} mismatches, first: {}",
        bad.len(),
        bad[0]
    ))
}

fn hfk_oracle() -> Outcome {
    let mut count = 0;
    for p in pairs(HFK_M_MAX) {
        for mirrored in [false, true] {
            let full = full_complex(p, mirrored).map_err(|e| format!("{p}: {e}"))?;
            let got = hfk_hat(&full.complex).map_err(|e| e.to_string())?;
            let want = if mirrored { mirror_table(&expected_hfk(p)) } else { expected_hfk(p) };
            if got != want {
                return Err(format!("{p} mirrored={mirrored}: bigraded ranks differ"));
            }
            count += 1;
        }
    }
    let boxes = box_multiplicities(PretzelParams::new(9, 9).expect("valid")).map_err(|e| e.to_string())?;
    let want = BTreeMap::from([(-4, 1), (-2, 2), (0, 3), (2, 2), (4, 1)]);
    if boxes != want {
        return Err(format!("(9,9) boxes {boxes:?}"));
    }
    Ok(format!("{count} full complexes exact; (9,9) boxes {{±4:1, ±2:2, 0:3}}"))
}

fn alexander_and_genus() -> Outcome {
    let mut count = 0;
    for p in pairs(HFK_M_MAX) {
        let full = full_complex(p, false).map_err(|e| e.to_string())?;
        let table = hfk_hat(&full.complex).map_err(|e| e.to_string())?;
        let chi = table.euler_characteristic();
        let reference = expected_alexander(p);
        if chi != reference {
            return Err(format!("{p}: χ = {chi}, closed form {reference}"));
        }
        if chi.eval_one() != 1 || !chi.is_symmetric() {
            return Err(format!("{p}: Δ(1) = {}, symmetric = {}", chi.eval_one(), chi.is_symmetric()));
        }
        let genus = table.entries.keys().map(|(w, _)| *w).max();
        if genus != Some(p.genus()) {
            return Err(format!("{p}: genus {genus:?}"));
        }
        count += 1;
    }
    Ok(format!("{count} pairs: χ = Δ, Δ(1) = 1, symmetric, genus (m+n)/2"))
}

fn check_complex(name: &str, c: &FilteredComplex) -> Result<(), String> {
    let v = c.validate();
    if !v.is_empty() {
        return Err(format!("{name}: {}", v[0]));
    }
    if c.dualize().dualize() != *c {
        return Err(format!("{name}: dual of dual differs"));
    }
    Ok(())
}

fn check_involution(name: &str, c: &FilteredComplex, i: &Involution) -> Result<(), String> {
    match validate_involution(c, i, false).first() {
        None => Ok(()),
        Some(v) => Err(format!("{name}: {v}")),
    }
}

fn with_extra_pair(model: &Model, s: i64, g: i64) -> Result<Model, String> {
    let (i, j) = box_corner(s);
    let extra = [square("x.", (i, j), i + j + g - 1), square("y.", (j, i), i + j + g - 1)];
    let mut parts = vec![model.complex.clone()];
    parts.extend(extra);
    let c = cfk_core::complex::direct_sum(&parts).map_err(|e| e.to_string())?;
    let n = c.len();
    let mut m = LaurentMatrix::zeros(n, n);
    for (t, s, v) in model.involution.matrix.entries() {
        m.set(t, s, v.clone());
    }
    let m = m.add(&square_pair_part(&c, "x.", "y.").map_err(|e| e.to_string())?);
    Ok(Model { complex: c, involution: Involution { matrix: m } })
}

fn structural_suite() -> Outcome {
    let mut checked = 0;
    let rt = right_trefoil();
    let lt = left_trefoil();
    let f = figure_eight();
    for (name, c) in [("right trefoil", &rt), ("left trefoil", &lt), ("figure-eight", &f), ("unknot", &unknot())] {
        check_complex(name, c)?;
        checked += 1;
    }
    check_involution("right trefoil", &rt, &trefoil_involution(&rt).map_err(|e| e.to_string())?)?;
    check_involution("left trefoil", &lt, &trefoil_involution(&lt).map_err(|e| e.to_string())?)?;
    check_involution("figure-eight", &f, &figure_eight_involution(&f).map_err(|e| e.to_string())?)?;

    for s in -3..=3i64 {
        let b = square("", box_corner(s), 5);
        check_complex("box", &b)?;
        let h = Homology::of(&b.subquotient(Region::A0Minus).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        if b.localized_rank() != 0 || h.module.free_rank() != 0 {
            return Err(format!("box on diagonal {s} is not acyclic"));
        }
    }

    for n in 1..=5 {
        for (name, m) in [("C1", c1_model(n)), ("dual C1", dual_c1_model(n))] {
            let m = m.map_err(|e| e.to_string())?;
            check_complex(name, &m.complex)?;
            check_involution(name, &m.complex, &m.involution)?;
            checked += 1;
        }
    }

    for p in pairs(HFK_M_MAX) {
        let ledger = gmm_ledger(p);
        for mirrored in [false, true] {
            let tag = format!("{p} mirrored={mirrored}");
            let full = full_complex(p, mirrored).map_err(|e| format!("{tag}: {e}"))?;
            check_complex(&tag, &full.complex)?;
            check_involution(&tag, &full.complex, &full.involution)?;
            if full.complex.len() != expected_generator_count(p) || ledger.len() != full.complex.len() {
                return Err(format!("{tag}: {} generators, ledger {}", full.complex.len(), ledger.len()));
            }

            let model = model_complex(p, mirrored).map_err(|e| e.to_string())?;
            let base = involutive_vs(&model.complex, &model.involution).map_err(|e| e.to_string())?.triple;
            let split = with_extra_pair(&model, 2, p.genus())?;
            check_involution(&tag, &split.complex, &split.involution)?;
            let after = involutive_vs(&split.complex, &split.involution).map_err(|e| e.to_string())?.triple;
            if after != base {
                return Err(format!("{tag}: adding a box pair moved {base} to {after}"));
            }
            if p.m <= 9 {
                let whole = involutive_vs(&full.complex, &full.involution).map_err(|e| e.to_string())?.triple;
                if whole != base {
                    return Err(format!("{tag}: full complex gives {whole}, model {base}"));
                }
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} complexes: laws, duality, ι checks, pair splitting, counts"))
}

fn oracle_equivalence() -> Outcome {
    let mut models: Vec<(String, Model)> = Vec::new();
    let rt = right_trefoil();
    let lt = left_trefoil();
    let f = figure_eight();
    let id = Involution { matrix: LaurentMatrix::identity(1) };
    models.push(("right trefoil".into(), Model { involution: trefoil_involution(&rt).map_err(|e| e.to_string())?, complex: rt }));
    models.push(("left trefoil".into(), Model { involution: trefoil_involution(&lt).map_err(|e| e.to_string())?, complex: lt }));
    models.push(("figure-eight".into(), Model { involution: figure_eight_involution(&f).map_err(|e| e.to_string())?, complex: f }));
    models.push(("unknot".into(), Model { complex: unknot(), involution: id }));
    for n in 1..=8 {
        models.push((format!("C1 n={n}"), c1_model(n).map_err(|e| e.to_string())?));
        models.push((format!("dual C1 n={n}"), dual_c1_model(n).map_err(|e| e.to_string())?));
    }
    for p in pairs(THEOREM_M_MAX) {
        for mirrored in [false, true] {
            models.push((format!("{p} model {mirrored}"), model_complex(p, mirrored).map_err(|e| e.to_string())?));
            if expected_generator_count(p) * 2 <= ORACLE_CONE_LIMIT {
                models.push((format!("{p} full {mirrored}"), full_complex(p, mirrored).map_err(|e| e.to_string())?));
            }
        }
    }
    let mut compared = 0;
    for (name, m) in &models {
        let cone = build_cone(&m.complex, &m.involution).map_err(|e| format!("{name}: {e}"))?;
        if cone.len() > ORACLE_CONE_LIMIT {
            continue;
        }
        let fast = involutive_vs(&m.complex, &m.involution).map_err(|e| format!("{name}: {e}"))?.triple;
        let slow = common::brute_force_vs(&cone);
        if (fast.lower, fast.upper) != slow {
            return Err(format!("{name}: saturation ({}, {}), brute force {slow:?}", fast.lower, fast.upper));
        }
        compared += 1;
    }
    Ok(format!("{compared} complexes with at most {ORACLE_CONE_LIMIT} cone generators agree"))
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 7] = [
        ("1 theorem reproduction", theorem_reproduction),
        ("2 worked examples", worked_examples),
        ("3 homology structure", homology_structure),
        ("4 HFK oracle", hfk_oracle),
        ("5 Alexander and genus", alexander_and_genus),
        ("6 structural properties", structural_suite),
        ("7 oracle equivalence", oracle_equivalence),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(msg) => println!("PASS criterion {name}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 7 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
