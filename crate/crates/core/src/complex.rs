//! Filtered, graded chain complexes over `F₂[U, U⁻¹]`.
//!
//! A complex is a finite list of generators, each stored at its `U⁰`
//! representative, plus a sparse differential indexed `(target, source)`.
//! An entry `U^a` in position `(y, x)` means `∂x` contains `U^a·y`, which
//! sits at filtration level `(i_y − a, j_y − a)` and Maslov grading
//! `m_y − 2a`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2::{graded_homology_dims, F2Matrix};
use crate::matrix::{LaurentMatrix, PolyMatrix};
use crate::upoly::{ULaurent, UPoly};

/// Generous bound on parsed integers so grading arithmetic never overflows.
const PARSE_LIMIT: i64 = 1 << 24;
const MAX_PARSED_GENERATORS: usize = 1 << 12;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub id: String,
    pub maslov: i64,
    pub i: i64,
    pub j: i64,
}

impl Generator {
    pub fn new(id: impl Into<String>, maslov: i64, i: i64, j: i64) -> Self {
        Self { id: id.into(), maslov, i, j }
    }

    /// Alexander grading of the `U⁰` representative.
    pub fn alexander(&self) -> i64 {
        self.j - self.i
    }
}

/// A broken structural law, naming the offending entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DSquared { source: String, target: String },
    Maslov { source: String, target: String, upower: i64 },
    Filtration { source: String, target: String, upower: i64 },
    NonMonomial { source: String, target: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DSquared { source, target } => {
                write!(f, "∂² ≠ 0: ∂∂({source}) has a nonzero {target} component")
            }
            Violation::Maslov { source, target, upower } => {
                write!(f, "∂({source}) ∋ U^{upower}·{target} does not drop Maslov grading by one")
            }
            Violation::Filtration { source, target, upower } => {
                write!(f, "∂({source}) ∋ U^{upower}·{target} raises the filtration")
            }
            Violation::NonMonomial { source, target } => {
                write!(f, "entry ({target}, {source}) is not a single U-power")
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Positive,
    Negative,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Vertical,
    Horizontal,
}

/// Regions of the plane that give subquotient complexes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Region {
    /// `C{i ≤ 0, j ≤ 0}`, an `F₂[U]`-complex.
    A0Minus,
    /// `C{i ≤ 0}`, an `F₂[U]`-complex.
    B0Minus,
    /// `C{i = 0}`, an `F₂`-complex.
    IEquals0,
    /// `C{i = 0, j = w}`, an `F₂`-complex.
    I0J(i64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiltrationKind {
    Filtered,
    SkewFiltered,
}

/// A grading-homogeneous map `C → C` given by its matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub matrix: LaurentMatrix,
    pub kind: FiltrationKind,
    pub maslov_shift: i64,
}

/// The generator `gen` translated by `U^upower`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub gen: usize,
    pub upower: i64,
}

/// A subquotient of a [`FilteredComplex`] as a free complex over `F₂[U]`
/// (or over `F₂`, for the `i = 0` regions, where every entry is 0 or 1).
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub region: Region,
    pub basis: Vec<BasisElement>,
    pub labels: Vec<String>,
    pub grading: Vec<i64>,
    pub diff: PolyMatrix,
}

impl Subquotient {
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// The differential reduced mod `U`, for the `F₂` regions.
    pub fn f2_diff(&self) -> F2Matrix {
        let n = self.len();
        let mut m = F2Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                if self.diff.get(r, c).coeff(0) {
                    m.flip(r, c);
                }
            }
        }
        m
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredComplex {
    gens: Vec<Generator>,
    index: HashMap<String, usize>,
    diff: LaurentMatrix,
}

impl FilteredComplex {
    /// Assembles a complex without checking the structural laws; see [`validate`](Self::validate).
    pub fn new(gens: Vec<Generator>, diff: LaurentMatrix) -> Result<Self> {
        if diff.rows() != gens.len() || diff.cols() != gens.len() {
            return Err(Error::Parse(format!(
                "differential is {}x{} for {} generators",
                diff.rows(),
                diff.cols(),
                gens.len()
            )));
        }
        let mut index = HashMap::with_capacity(gens.len());
        for (k, g) in gens.iter().enumerate() {
            if index.insert(g.id.clone(), k).is_some() {
                return Err(Error::DuplicateGenerator(g.id.clone()));
            }
        }
        Ok(Self { gens, index, diff })
    }

    /// Builds from `(source, target, upower)` arrows; repeated arrows cancel.
    pub fn from_arrows(gens: Vec<Generator>, arrows: &[(&str, &str, i64)]) -> Result<Self> {
        let n = gens.len();
        let mut c = Self::new(gens, LaurentMatrix::zeros(n, n))?;
        for (s, t, a) in arrows {
            let (s, t) = (c.idx(s)?, c.idx(t)?);
            c.diff.add_to(t, s, &ULaurent::monomial(*a));
        }
        Ok(c)
    }

    pub fn empty() -> Self {
        Self { gens: Vec::new(), index: HashMap::new(), diff: LaurentMatrix::zeros(0, 0) }
    }

    pub fn gens(&self) -> &[Generator] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn diff(&self) -> &LaurentMatrix {
        &self.diff
    }

    pub fn idx(&self, id: &str) -> Result<usize> {
        self.index.get(id).copied().ok_or_else(|| Error::UnknownGenerator(id.to_string()))
    }

    pub fn gen(&self, id: &str) -> Result<&Generator> {
        Ok(&self.gens[self.idx(id)?])
    }

    /// Every violated law; empty means the complex is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (t, s, v) in self.diff.entries() {
            let (x, y) = (&self.gens[s], &self.gens[t]);
            let Some(a) = v.as_monomial() else {
                out.push(Violation::NonMonomial { source: x.id.clone(), target: y.id.clone() });
                continue;
            };
            if y.maslov - 2 * a != x.maslov - 1 {
                out.push(Violation::Maslov { source: x.id.clone(), target: y.id.clone(), upower: a });
            }
            if y.i - a > x.i || y.j - a > x.j {
                out.push(Violation::Filtration {
                    source: x.id.clone(),
                    target: y.id.clone(),
                    upower: a,
                });
            }
        }
        let d2 = self.diff.mul(&self.diff);
        for (t, s, _) in d2.entries() {
            out.push(Violation::DSquared {
                source: self.gens[s].id.clone(),
                target: self.gens[t].id.clone(),
            });
        }
        out
    }

    pub fn validated(self) -> Result<Self> {
        let v = self.validate();
        if v.is_empty() {
            Ok(self)
        } else {
            Err(Error::Invalid(v))
        }
    }

    /// True when no differential component preserves both filtrations.
    pub fn is_reduced(&self) -> bool {
        self.diff.entries().all(|(t, s, v)| {
            let (x, y) = (&self.gens[s], &self.gens[t]);
            v.exponents().all(|a| (y.i - a, y.j - a) != (x.i, x.j))
        })
    }

    // ---- constructions ------------------------------------------------

    /// Dual complex: `x*` at `(−i, −j)` with Maslov `−M`, arrows reversed.
    pub fn dualize(&self) -> FilteredComplex {
        let gens = self
            .gens
            .iter()
            .map(|g| Generator::new(dual_name(&g.id), -g.maslov, -g.i, -g.j))
            .collect();
        FilteredComplex::new(gens, self.diff.transpose()).expect("names stay unique")
    }

    /// Replaces generator `id` by `U^k·id`, keeping its name.
    pub fn translate(&self, id: &str, k: i64) -> Result<FilteredComplex> {
        let x = self.idx(id)?;
        let mut out = self.clone();
        let g = &mut out.gens[x];
        g.i -= k;
        g.j -= k;
        g.maslov -= 2 * k;
        let mut d = LaurentMatrix::zeros(self.len(), self.len());
        for (r, c, v) in self.diff.entries() {
            let mut e = 0;
            if c == x {
                e += k;
            }
            if r == x {
                e -= k;
            }
            d.set(r, c, v.shift(e));
        }
        out.diff = d;
        Ok(out)
    }

    pub fn rename(&self, old: &str, new: &str) -> Result<FilteredComplex> {
        let x = self.idx(old)?;
        let mut gens = self.gens.clone();
        gens[x].id = new.to_string();
        FilteredComplex::new(gens, self.diff.clone())
    }

    pub fn with_prefix(&self, prefix: &str) -> FilteredComplex {
        let gens =
            self.gens.iter().map(|g| Generator { id: format!("{prefix}{}", g.id), ..g.clone() }).collect();
        FilteredComplex::new(gens, self.diff.clone()).expect("prefixing keeps names unique")
    }

    /// Adds `k` to every Maslov grading.
    pub fn shift_maslov(&self, k: i64) -> FilteredComplex {
        let mut out = self.clone();
        for g in &mut out.gens {
            g.maslov += k;
        }
        out
    }

    /// Moves every generator by `(di, dj)` without touching the differential.
    pub fn shift_plane(&self, di: i64, dj: i64) -> FilteredComplex {
        let mut out = self.clone();
        for g in &mut out.gens {
            g.i += di;
            g.j += dj;
        }
        out
    }

    /// Shifts Maslov gradings so that the vertical homology sits in degree 0.
    pub fn normalize_maslov(&self) -> Result<FilteredComplex> {
        let h = self.axis_homology(Direction::Vertical);
        let total: usize = h.values().sum();
        if total != 1 {
            return Err(Error::VerticalRank(total));
        }
        let (&g, _) = h.iter().next().expect("rank one");
        Ok(self.shift_maslov(-g))
    }

    // ---- subquotients -------------------------------------------------

    /// U-power putting generator `x` at the boundary of `region`.
    fn anchor(&self, x: usize, region: Region) -> i64 {
        let g = &self.gens[x];
        match region {
            Region::A0Minus => g.i.max(g.j),
            Region::B0Minus | Region::IEquals0 | Region::I0J(_) => g.i,
        }
    }

    pub fn subquotient(&self, region: Region) -> Result<Subquotient> {
        let keep: Vec<usize> = (0..self.len())
            .filter(|&x| match region {
                Region::I0J(w) => self.gens[x].alexander() == w,
                _ => true,
            })
            .collect();
        let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(k, &x)| (x, k)).collect();
        let basis: Vec<BasisElement> =
            keep.iter().map(|&x| BasisElement { gen: x, upower: self.anchor(x, region) }).collect();
        let labels = basis.iter().map(|b| basis_label(&self.gens[b.gen].id, b.upower)).collect();
        let grading = basis.iter().map(|b| self.gens[b.gen].maslov - 2 * b.upower).collect();

        let n = basis.len();
        let mut diff = PolyMatrix::zeros(n, n);
        for (col, b) in basis.iter().enumerate() {
            for (t, v) in self.diff.column(b.gen) {
                let Some(&row) = pos.get(&t) else { continue };
                let shifted = v.shift(b.upower - basis[row].upower);
                let Some(p) = shifted.to_upoly() else {
                    return Err(Error::NegativePower {
                        source_gen: self.gens[b.gen].id.clone(),
                        target: self.gens[t].id.clone(),
                    });
                };
                let entry = match region {
                    Region::A0Minus | Region::B0Minus => p,
                    // quotient regions keep only the components that stay in the slice
                    Region::IEquals0 | Region::I0J(_) => {
                        if p.coeff(0) {
                            UPoly::one()
                        } else {
                            UPoly::zero()
                        }
                    }
                };
                diff.set(row, col, entry);
            }
        }
        Ok(Subquotient { region, basis, labels, grading, diff })
    }

    /// A map of `C` restricted to a region's `F₂[U]` basis.
    pub fn restrict_map(&self, map: &LaurentMatrix, region: Region) -> Result<PolyMatrix> {
        let n = self.len();
        let mut out = PolyMatrix::zeros(n, n);
        for (t, s, v) in map.entries() {
            let e = self.anchor(s, region) - self.anchor(t, region);
            let p = v.shift(e).to_upoly().ok_or_else(|| Error::NegativePower {
                source_gen: self.gens[s].id.clone(),
                target: self.gens[t].id.clone(),
            })?;
            out.set(t, s, p);
        }
        Ok(out)
    }

    /// The inclusion `A₀⁻ → B₀⁻` in the two anchored bases.
    pub fn inclusion_a0_b0(&self) -> PolyMatrix {
        let n = self.len();
        let mut m = PolyMatrix::zeros(n, n);
        for x in 0..n {
            let k = self.anchor(x, Region::A0Minus) - self.anchor(x, Region::B0Minus);
            m.set(x, x, UPoly::monomial(k as usize));
        }
        m
    }

    /// Per-Maslov ranks of vertical (`i` fixed) or horizontal (`j` fixed) homology.
    pub fn axis_homology(&self, dir: Direction) -> BTreeMap<i64, usize> {
        let n = self.len();
        let key = |g: &Generator| match dir {
            Direction::Vertical => g.i,
            Direction::Horizontal => g.j,
        };
        let grading: Vec<i64> = self.gens.iter().map(|g| g.maslov - 2 * key(g)).collect();
        let mut d = F2Matrix::zeros(n, n);
        for (t, s, v) in self.diff.entries() {
            let e = key(&self.gens[s]) - key(&self.gens[t]);
            if v.exponents().any(|a| a + e == 0) {
                d.flip(t, s);
            }
        }
        graded_homology_dims(&grading, &d)
    }

    /// Components of `∂` preserving `i` (vertical) or `j` (horizontal).
    pub fn directional_diff(&self, dir: Direction) -> ChainMap {
        let mut m = LaurentMatrix::zeros(self.len(), self.len());
        for (t, s, v) in self.diff.entries() {
            let (x, y) = (&self.gens[s], &self.gens[t]);
            for a in v.exponents() {
                let keep = match dir {
                    Direction::Vertical => y.i - a == x.i,
                    Direction::Horizontal => y.j - a == x.j,
                };
                if keep {
                    m.add_to(t, s, &ULaurent::monomial(a));
                }
            }
        }
        ChainMap { matrix: m, kind: FiltrationKind::Filtered, maslov_shift: -1 }
    }

    /// `(Φ, Ψ)`: components of `∂` with odd horizontal (resp. vertical) length.
    ///
    /// Entries keep the `U`-power of `∂`; the composite `U⁻¹·Φ·Ψ` is then a
    /// map of Maslov degree 0.
    pub fn phi_psi(&self) -> (LaurentMatrix, LaurentMatrix) {
        let n = self.len();
        let (mut phi, mut psi) = (LaurentMatrix::zeros(n, n), LaurentMatrix::zeros(n, n));
        for (t, s, v) in self.diff.entries() {
            let (x, y) = (&self.gens[s], &self.gens[t]);
            for a in v.exponents() {
                let term = ULaurent::monomial(a);
                if (x.i - (y.i - a)).rem_euclid(2) == 1 {
                    phi.add_to(t, s, &term);
                }
                if (x.j - (y.j - a)).rem_euclid(2) == 1 {
                    psi.add_to(t, s, &term);
                }
            }
        }
        (phi, psi)
    }

    /// `U⁻¹·Φ∘Ψ`.
    pub fn phi_psi_composite(&self) -> LaurentMatrix {
        let (phi, psi) = self.phi_psi();
        phi.mul(&psi).shift(-1)
    }

    /// The Sarkar map `σ = Id + U⁻¹·Φ∘Ψ`.
    pub fn sarkar(&self) -> ChainMap {
        let m = LaurentMatrix::identity(self.len()).add(&self.phi_psi_composite());
        ChainMap { matrix: m, kind: FiltrationKind::Filtered, maslov_shift: 0 }
    }

    /// True when `∂∘f = f∘∂`.
    pub fn commutes(&self, f: &LaurentMatrix) -> bool {
        self.diff.mul(f) == f.mul(&self.diff)
    }

    /// Entries of `f` breaking its filtration kind or Maslov shift, as `(target, source)` ids.
    pub fn map_violations(&self, f: &ChainMap) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for (t, s, v) in f.matrix.entries() {
            let (x, y) = (&self.gens[s], &self.gens[t]);
            let ok = v.exponents().all(|a| {
                let (yi, yj) = (y.i - a, y.j - a);
                let filt = match f.kind {
                    FiltrationKind::Filtered => yi <= x.i && yj <= x.j,
                    FiltrationKind::SkewFiltered => yi <= x.j && yj <= x.i,
                };
                filt && y.maslov - 2 * a == x.maslov + f.maslov_shift
            });
            if !ok {
                out.push((y.id.clone(), x.id.clone()));
            }
        }
        out
    }

    /// Rank of homology over `F₂[U, U⁻¹]`.
    pub fn localized_rank(&self) -> usize {
        self.len() - 2 * self.diff.rank()
    }

    // ---- JSON ---------------------------------------------------------

    pub fn to_json_value(&self) -> ComplexJson {
        let generators = self.gens.clone();
        let mut differential = Vec::new();
        for (t, s, v) in self.diff.entries() {
            for a in v.exponents() {
                differential.push(DiffTerm {
                    target: self.gens[t].id.clone(),
                    source: self.gens[s].id.clone(),
                    upower: a,
                });
            }
        }
        ComplexJson { generators, differential }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("plain data serializes")
    }

    /// Parses and validates a complex from its JSON form.
    pub fn from_json(s: &str) -> Result<FilteredComplex> {
        let raw: ComplexJson = serde_json::from_str(s)?;
        Self::from_json_value(raw)?.validated()
    }

    /// Builds from parsed JSON, checking bounds and names but not the laws.
    pub fn from_json_value(raw: ComplexJson) -> Result<FilteredComplex> {
        if raw.generators.len() > MAX_PARSED_GENERATORS {
            return Err(Error::Parse(format!("more than {MAX_PARSED_GENERATORS} generators")));
        }
        let in_range = |x: i64| x.abs() <= PARSE_LIMIT;
        for g in &raw.generators {
            if !(in_range(g.maslov) && in_range(g.i) && in_range(g.j)) {
                return Err(Error::Parse(format!("grading of `{}` out of range", g.id)));
            }
        }
        if let Some(t) = raw.differential.iter().find(|t| !in_range(t.upower)) {
            return Err(Error::Parse(format!("U-power {} out of range", t.upower)));
        }
        let arrows: Vec<(&str, &str, i64)> = raw
            .differential
            .iter()
            .map(|t| (t.source.as_str(), t.target.as_str(), t.upower))
            .collect();
        Self::from_arrows(raw.generators.clone(), &arrows)
    }
}

/// Stable JSON layout of a complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexJson {
    pub generators: Vec<Generator>,
    pub differential: Vec<DiffTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiffTerm {
    pub target: String,
    pub source: String,
    pub upower: i64,
}

pub fn dual_name(id: &str) -> String {
    match id.strip_suffix('*') {
        Some(base) => base.to_string(),
        None => format!("{id}*"),
    }
}

fn basis_label(id: &str, k: i64) -> String {
    match k {
        0 => id.to_string(),
        1 => format!("U{id}"),
        _ => format!("U^{k}{id}"),
    }
}

pub fn direct_sum(cs: &[FilteredComplex]) -> Result<FilteredComplex> {
    let n: usize = cs.iter().map(FilteredComplex::len).sum();
    let mut gens = Vec::with_capacity(n);
    let mut diff = LaurentMatrix::zeros(n, n);
    let mut off = 0;
    for c in cs {
        gens.extend(c.gens.iter().cloned());
        for (r, col, v) in c.diff.entries() {
            diff.set(r + off, col + off, v.clone());
        }
        off += c.len();
    }
    FilteredComplex::new(gens, diff)
}

// ---- standard building blocks -----------------------------------------

pub fn staircase_name(r: usize, branch: u8) -> String {
    if r == 0 {
        "z0".to_string()
    } else {
        format!("z{r}^{branch}")
    }
}

/// A staircase with `z0` at the origin.
///
/// `steps[0]` is the length of the outermost step (between `z_{v−1}` and
/// `z_v`) and the list runs inward. Branch 1 lies in `j ≥ i`, branch 2 is its
/// transpose. Maslov gradings are normalised so vertical homology sits in
/// degree 0.
pub fn staircase(sign: Sign, steps: &[u32]) -> Result<FilteredComplex> {
    if steps.is_empty() {
        return Err(Error::EmptySteps);
    }
    if steps.contains(&0) {
        return Err(Error::NonPositiveStep);
    }
    let v = steps.len();
    let mut gens = vec![Generator::new("z0", 0, 0, 0)];
    let mut arrows: Vec<(String, String)> = Vec::new();
    let (mut pi, mut pj, mut pm) = (0i64, 0i64, 0i64);
    for r in 1..=v {
        let len = steps[v - r] as i64;
        let same_parity = (v - r).is_multiple_of(2);
        let vertical = match sign {
            Sign::Negative => same_parity,
            Sign::Positive => !same_parity,
        };
        // vertical steps go up, horizontal steps go left; arrows point down or left
        if vertical {
            pj += len;
            pm += 1;
        } else {
            pi -= len;
            pm -= 1;
        }
        for branch in [1u8, 2] {
            let (i, j) = if branch == 1 { (pi, pj) } else { (pj, pi) };
            gens.push(Generator::new(staircase_name(r, branch), pm, i, j));
            let (outer, inner) = (staircase_name(r, branch), staircase_name(r - 1, branch));
            if vertical {
                arrows.push((outer, inner));
            } else {
                arrows.push((inner, outer));
            }
        }
    }
    let arrow_refs: Vec<(&str, &str, i64)> =
        arrows.iter().map(|(s, t)| (s.as_str(), t.as_str(), 0)).collect();
    FilteredComplex::from_arrows(gens, &arrow_refs)?.normalize_maslov()
}

/// Top-half step sum at positions 0, 2, 4, … counted from the outer end.
pub fn staircase_n(steps: &[u32]) -> i64 {
    steps.iter().step_by(2).map(|&s| s as i64).sum()
}

/// Positive staircase of an L-space knot from the exponents `0 < w₁ < … < w_v`.
///
/// Returns the complex and `n(K) = w_v − w_{v−1} + w_{v−2} − …`.
pub fn lspace_staircase(ws: &[i64]) -> Result<(FilteredComplex, i64)> {
    if ws.is_empty() {
        return Err(Error::EmptySteps);
    }
    if ws[0] <= 0 || ws.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::NonIncreasing(ws.to_vec()));
    }
    if ws[ws.len() - 1] > PARSE_LIMIT {
        return Err(Error::Parse("exponent too large".into()));
    }
    let mut steps = Vec::with_capacity(ws.len());
    let mut prev = 0;
    for &w in ws {
        steps.push((w - prev) as u32);
        prev = w;
    }
    steps.reverse();
    let n = ws.iter().rev().enumerate().map(|(k, w)| if k % 2 == 0 { *w } else { -*w }).sum();
    Ok((staircase(Sign::Positive, &steps)?, n))
}

/// Parses the exponents `w₁ … w_v` of an L-space knot from text.
///
/// Accepts integers separated by commas or whitespace, optionally wrapped
/// in brackets, and checks `0 < w₁ < … < w_v`.
pub fn parse_w_list(s: &str) -> Result<Vec<i64>> {
    if s.len() > 1 << 16 {
        return Err(Error::Parse("input too long".into()));
    }
    let body = s.trim().trim_start_matches('[').trim_end_matches(']');
    let mut ws = Vec::new();
    for tok in body.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
        let w: i64 = tok.parse().map_err(|_| Error::Parse(format!("not an integer: {tok:?}")))?;
        if w.abs() > PARSE_LIMIT {
            return Err(Error::Parse(format!("exponent {w} out of range")));
        }
        ws.push(w);
    }
    if ws.is_empty() {
        return Err(Error::EmptySteps);
    }
    if ws[0] <= 0 || ws.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::NonIncreasing(ws));
    }
    Ok(ws)
}

/// One-by-one box `∂a = b + c`, `∂b = ∂c = U·e`, with `e` stored at `a`'s level.
pub fn square(label: &str, a_plane: (i64, i64), a_maslov: i64) -> FilteredComplex {
    let (i, j) = a_plane;
    let m = a_maslov;
    let name = |s: &str| format!("{label}{s}");
    let gens = vec![
        Generator::new(name("a"), m, i, j),
        Generator::new(name("b"), m - 1, i - 1, j),
        Generator::new(name("c"), m - 1, i, j - 1),
        Generator::new(name("e"), m, i, j),
    ];
    let (a, b, c, e) = (name("a"), name("b"), name("c"), name("e"));
    FilteredComplex::from_arrows(gens, &[(&a, &b, 0), (&a, &c, 0), (&b, &e, 1), (&c, &e, 1)])
        .expect("fixed box layout")
}

/// Right-handed trefoil: the positive staircase with a single unit step.
pub fn right_trefoil() -> FilteredComplex {
    let c = staircase(Sign::Positive, &[1]).expect("fixed steps");
    relabel(&c, &[("z0", "a"), ("z1^1", "b"), ("z1^2", "c")])
}

/// Left-handed trefoil: the dual of the right-handed one, relabelled.
pub fn left_trefoil() -> FilteredComplex {
    let c = right_trefoil().dualize();
    relabel(&c, &[("a*", "a"), ("b*", "b"), ("c*", "c")])
}

/// Figure-eight knot: a box on the main diagonal plus an isolated generator.
pub fn figure_eight() -> FilteredComplex {
    let x = FilteredComplex::new(vec![Generator::new("x", 0, 0, 0)], LaurentMatrix::zeros(1, 1))
        .expect("one generator");
    direct_sum(&[square("", (0, 0), 0), x]).expect("distinct names")
}

pub fn unknot() -> FilteredComplex {
    FilteredComplex::new(vec![Generator::new("z0", 0, 0, 0)], LaurentMatrix::zeros(1, 1))
        .expect("one generator")
}

/// Renames several generators at once.
pub fn relabel(c: &FilteredComplex, pairs: &[(&str, &str)]) -> FilteredComplex {
    let map: HashMap<&str, &str> = pairs.iter().copied().collect();
    let gens = c
        .gens()
        .iter()
        .map(|g| Generator { id: map.get(g.id.as_str()).map_or(g.id.clone(), |s| s.to_string()), ..g.clone() })
        .collect();
    FilteredComplex::new(gens, c.diff().clone()).expect("relabelling keeps names unique")
}
