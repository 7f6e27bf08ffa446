//! Models of `CFK∞` for the pretzel knots `P(−2, m, n)`, `m ≥ n ≥ 3` odd.
//!
//! The full complex is a negative staircase with top-half steps
//! `1, 2, 1, …, 1` plus boxes. Boxes off the main diagonal come in mirrored
//! pairs on which `ι` is the square map; they do not affect the involutive
//! invariants, so the model keeps only the staircase, and one main-diagonal
//! box when `m ≡ n ≡ 1 (mod 4)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::{direct_sum, relabel, square, staircase, FilteredComplex, Sign};
use crate::error::{Error, Result};
use crate::homology::{hfk_hat, AlexanderPoly, HfkTable, TorsionJson};
use crate::invariants::{involutive_vs, InvariantTriple};
use crate::involution::{
    c1_involution, checked, dual_c1_involution, square_pair_part, staircase_involution, validate_involution,
    Involution,
};
use crate::matrix::LaurentMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PretzelParams {
    pub m: i64,
    pub n: i64,
}

impl PretzelParams {
    pub fn new(m: i64, n: i64) -> Result<Self> {
        let bad = |reason: &str| Err(Error::InvalidParams { m, n, reason: reason.into() });
        if m.rem_euclid(2) == 0 {
            return bad("m must be odd");
        }
        if n.rem_euclid(2) == 0 {
            return bad("n must be odd");
        }
        if n < 3 {
            return bad("n must be at least 3");
        }
        if m < n {
            return bad("requires m >= n");
        }
        if m > 1001 {
            return bad("m is too large");
        }
        Ok(Self { m, n })
    }

    pub fn genus(&self) -> i64 {
        (self.m + self.n) / 2
    }

    pub fn m_prime(&self) -> i64 {
        (self.m - 3) / 2
    }

    pub fn n_prime(&self) -> i64 {
        (self.n - 3) / 2
    }

    pub fn gamma(&self) -> i64 {
        let g = self.genus();
        if g % 2 == 1 {
            1 - (g - 1) / 2
        } else {
            1 - g / 2
        }
    }

    pub fn delta(&self) -> i64 {
        let g = self.genus();
        if g % 2 == 1 {
            (g - 1) / 2
        } else {
            g / 2 - 1
        }
    }

    /// Number of staircase steps in the top half.
    pub fn v(&self) -> usize {
        (self.genus() - 1) as usize
    }

    pub fn congruent_mod4(&self) -> bool {
        (self.m - self.n).rem_euclid(4) == 0
    }

    pub fn n_of_k(&self) -> i64 {
        if self.congruent_mod4() {
            (self.m + self.n - 2) / 4
        } else {
            (self.m + self.n) / 4
        }
    }

    pub fn family(&self) -> Family {
        match (self.m.rem_euclid(4), self.n.rem_euclid(4)) {
            (1, 1) => Family::C1,
            (3, 1) => Family::C2,
            (3, 3) => Family::C3,
            _ => Family::C4,
        }
    }
}

impl fmt::Display for PretzelParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P(-2,{},{})", self.m, self.n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    C1,
    C2,
    C3,
    C4,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelSpec {
    pub family: Family,
    pub v: usize,
    pub n_of_k: i64,
    /// Main-diagonal boxes kept in the model (0 or 1).
    pub main_diag_boxes: usize,
    /// All boxes of the full complex, by diagonal `j − i` of the corner.
    pub boxes: BTreeMap<i64, usize>,
}

pub fn classify(p: PretzelParams) -> Result<ModelSpec> {
    let family = p.family();
    Ok(ModelSpec {
        family,
        v: p.v(),
        n_of_k: p.n_of_k(),
        main_diag_boxes: usize::from(family == Family::C1),
        boxes: box_multiplicities(p)?,
    })
}

/// Top-half step lengths, outermost first.
pub fn staircase_steps(v: usize) -> Vec<u32> {
    let mut steps = vec![1, 2];
    steps.resize(v.max(2), 1);
    steps
}

pub fn pretzel_staircase(p: PretzelParams) -> Result<FilteredComplex> {
    staircase(Sign::Negative, &staircase_steps(p.v()))
}

/// Corner of a box on diagonal `s`, as close to the origin as possible.
pub fn box_corner(s: i64) -> (i64, i64) {
    let i = -s.div_euclid(2);
    (i, s + i)
}

fn box_at(label: &str, s: i64, g: i64) -> FilteredComplex {
    let (i, j) = box_corner(s);
    square(label, (i, j), i + j + g - 1)
}

fn box_label(s: i64, k: usize) -> String {
    format!("q{s:+}.{k}.")
}

/// Box counts from the closed formula.
pub fn closed_form_boxes(p: PretzelParams) -> BTreeMap<i64, usize> {
    let (g, n) = (p.genus(), p.n);
    let mut out = BTreeMap::new();
    for k in 1..=(n - 5) / 2 {
        let s = g - 2 * k - 3;
        out.insert(s, k as usize);
        out.insert(-s, k as usize);
    }
    let mut s = -(g - n);
    while s <= g - n {
        if n > 3 {
            out.insert(s, ((n - 3) / 2) as usize);
        }
        s += 2;
    }
    out
}

/// Box counts solving `r(w) = b_{w−1} + 2b_w + b_{w+1}` against the
/// residual of the expected `ĤFK` ranks, from the top diagonal down.
///
/// Errors when the solution is negative, leaves a residual, or disagrees
/// with [`closed_form_boxes`].
pub fn box_multiplicities(p: PretzelParams) -> Result<BTreeMap<i64, usize>> {
    let g = p.genus();
    let expected = expected_hfk(p);
    let stair = hfk_hat(&pretzel_staircase(p)?)?;
    let residual = |w: i64| expected.rank_at(w) as i64 - stair.rank_at(w) as i64;
    let mut b: BTreeMap<i64, i64> = BTreeMap::new();
    let get = |b: &BTreeMap<i64, i64>, s: i64| b.get(&s).copied().unwrap_or(0);
    for w in (-g..=g + 1).rev() {
        let need = residual(w) - 2 * get(&b, w) - get(&b, w + 1);
        if need < 0 {
            return Err(Error::HfkMismatch(format!("negative box count on diagonal {}", w - 1)));
        }
        if need > 0 {
            b.insert(w - 1, need);
        }
    }
    if let Some((&s, _)) = b.iter().find(|(&s, _)| s < -g + 1) {
        return Err(Error::HfkMismatch(format!("box below the bottom diagonal at {s}")));
    }
    let out: BTreeMap<i64, usize> = b.into_iter().map(|(s, c)| (s, c as usize)).collect();
    if out != closed_form_boxes(p) {
        return Err(Error::HfkMismatch(format!(
            "solved {out:?}, closed form {:?}",
            closed_form_boxes(p)
        )));
    }
    Ok(out)
}

/// A complex together with its involution.
#[derive(Clone, Debug)]
pub struct Model {
    pub complex: FilteredComplex,
    pub involution: Involution,
}

fn strip_stars(c: &FilteredComplex, except: &[(&str, &str)]) -> FilteredComplex {
    let owned: Vec<(String, String)> = c
        .gens()
        .iter()
        .filter_map(|g| {
            if let Some(&(_, new)) = except.iter().find(|(old, _)| *old == g.id) {
                return Some((g.id.clone(), new.to_string()));
            }
            g.id.strip_suffix('*').map(|b| (g.id.clone(), b.to_string()))
        })
        .collect();
    let pairs: Vec<(&str, &str)> = owned.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    relabel(c, &pairs)
}

/// Negative staircase with `2·n_k` top-half steps `1, 2, 1, …, 1`, plus a
/// box at the origin.
fn c1_complex(n_k: i64) -> Result<FilteredComplex> {
    if n_k < 1 {
        return Err(Error::NonPositiveStep);
    }
    let v = 2 * n_k as usize;
    let stair = staircase(Sign::Negative, &staircase_steps(v))?;
    direct_sum(&[stair, square("", (0, 0), v as i64)])
}

/// The dual of the one-box model, relabelled so the box reads `∂a = b + c`.
fn dual_c1_complex(c1: &FilteredComplex) -> Result<FilteredComplex> {
    let d = strip_stars(&c1.dualize(), &[("e*", "a"), ("a*", "e")]);
    d.translate("b", 1)?.translate("c", 1)
}

/// The one-box model with `n(K) = n_k`.
///
/// For `n_k = 1` the innermost horizontal step has length two, so `ι`
/// is only skew-filtered rather than level-exact.
pub fn c1_model(n_k: i64) -> Result<Model> {
    let c = c1_complex(n_k)?;
    let i = c1_involution(&c)?;
    Ok(Model { involution: checked(&c, i, n_k >= 2)?, complex: c })
}

/// The dual of [`c1_model`].
pub fn dual_c1_model(n_k: i64) -> Result<Model> {
    let c = dual_c1_complex(&c1_complex(n_k)?)?;
    let i = dual_c1_involution(&c)?;
    Ok(Model { involution: checked(&c, i, n_k >= 2)?, complex: c })
}

/// Whether the model's `ι` maps generators exactly between mirrored levels.
fn model_exact(p: PretzelParams) -> bool {
    p.family() != Family::C1 || p.n_of_k() >= 2
}

/// Staircase, plus the main-diagonal box for `C1`, with its involution.
pub fn model_complex(p: PretzelParams, mirrored: bool) -> Result<Model> {
    match (p.family(), mirrored) {
        (Family::C1, false) => return c1_model(p.n_of_k()),
        (Family::C1, true) => return dual_c1_model(p.n_of_k()),
        _ => {}
    }
    let stair = pretzel_staircase(p)?;
    let complex = if mirrored { strip_stars(&stair.dualize(), &[]) } else { stair };
    let involution = checked(&complex, staircase_involution(&complex)?, true)?;
    Ok(Model { complex, involution })
}

/// Model plus every remaining box, paired under the square map.
pub fn full_complex(p: PretzelParams, mirrored: bool) -> Result<Model> {
    let model = model_complex(p, mirrored)?;
    let g = p.genus();
    let mut boxes = box_multiplicities(p)?;
    if p.family() == Family::C1 {
        *boxes.get_mut(&0).expect("C1 has a main-diagonal box") -= 1;
    }
    let mut parts = vec![model.complex.clone()];
    let mut pairs: Vec<(String, String)> = Vec::new();
    for (&s, &count) in &boxes {
        for k in 0..count {
            let b = box_at(&box_label(s, k), s, g);
            parts.push(if mirrored { mirror_box(&b, &box_label(-s, k)) } else { b });
            if s > 0 || (s == 0 && k % 2 == 1) {
                let partner = if s > 0 { box_label(-s, k) } else { box_label(0, k - 1) };
                pairs.push((box_label(s, k), partner));
            }
        }
    }
    let complex = direct_sum(&parts)?;
    let n = complex.len();
    let mut m = LaurentMatrix::zeros(n, n);
    for (t, s, v) in model.involution.matrix.entries() {
        m.set(t, s, v.clone());
    }
    for (a, b) in &pairs {
        m = m.add(&square_pair_part(&complex, a, b)?);
    }
    let involution = checked(&complex, Involution { matrix: m }, true)?;
    Ok(Model { complex, involution })
}

/// The dual of a box, written again as a box with corner `(−i, −j)`.
fn mirror_box(b: &FilteredComplex, label: &str) -> FilteredComplex {
    let a = &b.gens()[0];
    square(label, (-a.i, -a.j), -a.maslov)
}

/// The expected `ĤFK` ranks, extended to negative Alexander gradings by symmetry.
pub fn expected_hfk(p: PretzelParams) -> HfkTable {
    let (g, n) = (p.genus(), p.n);
    let mut t = HfkTable::default();
    let mut put = |w: i64, k: i64, r: i64| {
        if r > 0 {
            t.add(w, k, r as usize);
            if w != 0 {
                t.add(-w, k - 2 * w, r as usize);
            }
        }
    };
    for w in 0..=g {
        if w >= g - 1 {
            put(w, g + w, 1);
        } else if w == g - 2 {
        } else if w >= g - n {
            put(w, g - 1 + w, g - 2 - w);
        } else {
            put(w, g - 1 + w, n - 2);
        }
    }
    t
}

/// `ĤFK` of the mirror: `(w, k) ↦ (−w, −k)`.
pub fn mirror_table(t: &HfkTable) -> HfkTable {
    let mut out = HfkTable::default();
    for (&(w, k), &r) in &t.entries {
        out.add(-w, -k, r);
    }
    out
}

/// The closed-form Alexander polynomial, term by term.
pub fn expected_alexander(p: PretzelParams) -> AlexanderPoly {
    let (g, n) = (p.genus(), p.n);
    let sign = |e: i64| if e.rem_euclid(2) == 0 { 1 } else { -1 };
    let mut d = AlexanderPoly::default();
    d.add(g, 1);
    d.add(g - 1, -1);
    for k in 1..=n - 3 {
        d.add(g - k - 2, sign(k - 1) * k);
        d.add(k + 2 - g, sign(k - 1) * k);
    }
    for k in n - g..=g - n {
        d.add(k, sign(g - k - 1) * (n - 2));
    }
    d.add(1 - g, -1);
    d.add(-g, 1);
    d
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LedgerClass {
    Exceptional,
    Ordinary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub label: String,
    pub i: i64,
    pub j: i64,
    pub class: LedgerClass,
}

/// Generators from the Heegaard diagram, with their filtration levels.
pub fn gmm_ledger(p: PretzelParams) -> Vec<LedgerEntry> {
    let (ga, de) = (p.gamma(), p.delta());
    let (mp, np) = (p.m_prime(), p.n_prime());
    let mut out = Vec::new();
    let mut push = |label: String, i: i64, j: i64, class| out.push(LedgerEntry { label, i, j, class });
    push("y1".into(), ga - 1, de + 1, LedgerClass::Exceptional);
    push("y2".into(), ga - 1, de, LedgerClass::Exceptional);
    push("y3".into(), de, ga - 1, LedgerClass::Exceptional);
    push("y4".into(), de + 1, ga - 1, LedgerClass::Exceptional);
    for p_ in 0..=np {
        for q in 0..=mp {
            push(format!("x{},{}", 2 * p_ + 1, 2 * q + 1), ga + p_ + q + 1, de - p_ - q, LedgerClass::Ordinary);
        }
        for q in 1..=mp {
            push(format!("x{},{}", 2 * p_ + 1, 2 * q), ga + p_ + q, de - p_ - q, LedgerClass::Ordinary);
        }
    }
    for p_ in 1..=np {
        for q in 0..=mp {
            push(format!("x{},{}", 2 * p_, 2 * q + 1), ga + mp + p_ - q, de - mp - p_ - q, LedgerClass::Ordinary);
        }
        for q in 1..=mp {
            push(format!("x{},{}", 2 * p_, 2 * q), ga + mp + p_ - q, de - mp - p_ + q - 1, LedgerClass::Ordinary);
        }
    }
    out
}

pub fn expected_generator_count(p: PretzelParams) -> usize {
    (4 + (p.m - 2) * (p.n - 2)) as usize
}

/// The closed-form values of `(V₀, V̲₀, V̄₀)`.
pub fn theorem_values(p: PretzelParams, mirrored: bool) -> InvariantTriple {
    let s = p.m + p.n;
    let t = |v0, lower, upper| InvariantTriple { v0, lower, upper };
    match (mirrored, p.congruent_mod4()) {
        (false, false) => t(0, 0, -s / 4),
        (false, true) => t(0, 0, -(s - 2) / 4),
        (true, false) => t(s / 4, s / 4, s / 4),
        (true, true) if p.n.rem_euclid(4) == 3 => t((s - 2) / 4, (s - 2) / 4, (s - 2) / 4),
        (true, true) => t((s - 2) / 4, (s + 2) / 4, (s - 2) / 4),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoxCount {
    pub diagonal: i64,
    pub count: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checks {
    pub theorem_match: bool,
    pub hfk_match: bool,
    pub alexander_match: bool,
    pub genus_match: bool,
    pub count_match: bool,
    pub involution_valid: bool,
}

impl Checks {
    pub fn all(&self) -> bool {
        self.theorem_match
            && self.hfk_match
            && self.alexander_match
            && self.genus_match
            && self.count_match
            && self.involution_valid
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub m: i64,
    pub n: i64,
    pub mirrored: bool,
    pub family: Family,
    pub v: usize,
    #[serde(rename = "nK")]
    pub n_k: i64,
    pub boxes: Vec<BoxCount>,
    #[serde(flatten)]
    pub computed: InvariantTriple,
    pub expected: InvariantTriple,
    pub tower_gradings: Vec<i64>,
    pub torsion_summands: Vec<TorsionJson>,
    pub cone_tower_gradings: Vec<i64>,
    pub cone_torsion_summands: Vec<TorsionJson>,
    pub generators: usize,
    pub checks: Checks,
}

impl InvariantReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        if s.len() > 1 << 24 {
            return Err(Error::Parse("input too large".into()));
        }
        Ok(serde_json::from_str(s)?)
    }
}

/// Runs the whole pipeline for `K` or its mirror and checks it against
/// the closed forms.
pub fn compute_invariants(p: PretzelParams, mirrored: bool) -> Result<InvariantReport> {
    let spec = classify(p)?;
    let model = model_complex(p, mirrored)?;
    let comp = involutive_vs(&model.complex, &model.involution)?;
    let expected = theorem_values(p, mirrored);
    if comp.triple.upper > comp.triple.v0 || comp.triple.v0 > comp.triple.lower {
        return Err(Error::BadInvolution(format!("ordering fails for {p}: {}", comp.triple)));
    }

    let full = full_complex(p, mirrored)?;
    let hfk = hfk_hat(&full.complex)?;
    let want = if mirrored { mirror_table(&expected_hfk(p)) } else { expected_hfk(p) };
    let genus = hfk.entries.keys().map(|(w, _)| *w).max();
    let count = expected_generator_count(p);
    let checks = Checks {
        theorem_match: comp.triple == expected,
        hfk_match: hfk == want,
        alexander_match: hfk.euler_characteristic() == expected_alexander(p),
        genus_match: genus == Some(p.genus()),
        count_match: full.complex.len() == count && gmm_ledger(p).len() == count,
        involution_valid: validate_involution(&model.complex, &model.involution, model_exact(p)).is_empty()
            && validate_involution(&full.complex, &full.involution, true).is_empty(),
    };
    let a0 = comp.a0.summary();
    let cone = comp.cone.summary();
    Ok(InvariantReport {
        m: p.m,
        n: p.n,
        mirrored,
        family: spec.family,
        v: spec.v,
        n_k: spec.n_of_k,
        boxes: spec.boxes.iter().map(|(&diagonal, &count)| BoxCount { diagonal, count }).collect(),
        computed: comp.triple,
        expected,
        tower_gradings: a0.towers,
        torsion_summands: a0.torsion,
        cone_tower_gradings: cone.towers,
        cone_torsion_summands: cone.torsion,
        generators: full.complex.len(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(m: i64, n: i64) -> PretzelParams {
        PretzelParams::new(m, n).unwrap()
    }

    #[test]
    fn parameter_validation() {
        assert!(PretzelParams::new(3, 5).is_err());
        assert!(PretzelParams::new(4, 3).is_err());
        assert!(PretzelParams::new(1, 1).is_err());
        assert!(PretzelParams::new(5, 3).is_ok());
    }

    #[test]
    fn families_and_nk() {
        assert_eq!((pp(5, 5).family(), pp(5, 5).n_of_k()), (Family::C1, 2));
        assert_eq!((pp(7, 5).family(), pp(7, 5).n_of_k()), (Family::C2, 3));
        assert_eq!((pp(7, 7).family(), pp(7, 7).n_of_k()), (Family::C3, 3));
        assert_eq!((pp(9, 7).family(), pp(9, 7).n_of_k()), (Family::C4, 4));
        assert_eq!(pp(3, 3).v(), 2);
    }

    #[test]
    fn box_counts() {
        let b = box_multiplicities(pp(9, 9)).unwrap();
        assert_eq!(b, BTreeMap::from([(-4, 1), (-2, 2), (0, 3), (2, 2), (4, 1)]));
        assert_eq!(box_multiplicities(pp(5, 5)).unwrap(), BTreeMap::from([(0, 1)]));
        assert_eq!(box_multiplicities(pp(7, 5)).unwrap(), BTreeMap::from([(-1, 1), (1, 1)]));
        assert!(box_multiplicities(pp(3, 3)).unwrap().is_empty());
    }

    #[test]
    fn ledger_examples() {
        assert_eq!(gmm_ledger(pp(3, 3)).len(), 5);
        assert_eq!(gmm_ledger(pp(9, 9)).len(), 53);
        let l = gmm_ledger(pp(5, 5));
        let y2 = l.iter().find(|e| e.label == "y2").unwrap();
        assert_eq!((y2.i, y2.j), (-2, 2));
    }

    #[test]
    fn expected_tables() {
        let t = expected_hfk(pp(9, 9));
        assert_eq!(t.rank(4, 12), 3);
        assert_eq!(t.rank(9, 18), 1);
        assert_eq!(expected_alexander(pp(7, 5)).eval_one(), 1);
    }

    #[test]
    fn theorem_examples() {
        let t = |a, b, c| InvariantTriple { v0: a, lower: b, upper: c };
        assert_eq!(theorem_values(pp(5, 5), false), t(0, 0, -2));
        assert_eq!(theorem_values(pp(5, 5), true), t(2, 3, 2));
        assert_eq!(theorem_values(pp(7, 5), true), t(3, 3, 3));
        assert_eq!(theorem_values(pp(7, 7), true), t(3, 3, 3));
    }

    #[test]
    fn small_reports_pass() {
        for (m, n) in [(3, 3), (5, 3), (5, 5), (7, 5), (7, 7), (9, 7), (9, 9)] {
            for mirrored in [false, true] {
                let r = compute_invariants(pp(m, n), mirrored).unwrap();
                assert!(r.checks.all(), "{m},{n},{mirrored}: {r:?}");
            }
        }
    }

    #[test]
    fn report_round_trips() {
        let r = compute_invariants(pp(5, 5), true).unwrap();
        assert_eq!(InvariantReport::from_json(&r.to_json()).unwrap(), r);
    }
}
