//! Homology of free graded complexes over `F₂[U]`, and the classical knot
//! invariants read from it.
//!
//! With `S = L·D·R` in Smith form and `r = rank D`, the columns `f_j = R e_j`
//! for `j ≥ r` span the cycles and `t_i = L⁻¹ e_i` satisfy `D f_i = s_i t_i`.
//! The `t_i` span a direct summand of the cycles, found by a second Smith
//! form; its complement gives the free part, and `t_i` with `s_i ≠ 1` give
//! the torsion.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::{FilteredComplex, Region, Subquotient};
use crate::error::{Error, Result};
use crate::f2::graded_homology_dims;
use crate::matrix::PolyMatrix;
use crate::snf::snf;
use crate::upoly::UPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeSummand {
    pub grading: i64,
    pub rep: Vec<UPoly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionSummand {
    pub grading: i64,
    /// The summand is `F₂[U]/U^order`.
    pub order: usize,
    pub rep: Vec<UPoly>,
}

/// `F₂[U]^free ⊕ ⨁ F₂[U]/U^k` with a cycle representative per summand.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedModule {
    pub free: Vec<FreeSummand>,
    pub torsion: Vec<TorsionSummand>,
}

impl GradedModule {
    pub fn free_rank(&self) -> usize {
        self.free.len()
    }

    /// Tower gradings, sorted descending.
    pub fn tower_gradings(&self) -> Vec<i64> {
        let mut g: Vec<i64> = self.free.iter().map(|f| f.grading).collect();
        g.sort_unstable_by(|a, b| b.cmp(a));
        g
    }

    /// `(grading, order)` of each torsion summand, sorted.
    pub fn torsion_summary(&self) -> Vec<(i64, usize)> {
        let mut t: Vec<(i64, usize)> = self.torsion.iter().map(|t| (t.grading, t.order)).collect();
        t.sort_unstable();
        t
    }

    /// `F₂`-dimension of the module in each grading at or above `floor`.
    pub fn dims_above(&self, floor: i64) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for f in &self.free {
            let mut g = f.grading;
            while g >= floor {
                *out.entry(g).or_insert(0) += 1;
                g -= 2;
            }
        }
        for t in &self.torsion {
            for k in 0..t.order {
                let g = t.grading - 2 * k as i64;
                if g >= floor {
                    *out.entry(g).or_insert(0) += 1;
                }
            }
        }
        out
    }

    pub fn summary(&self) -> ModuleSummary {
        ModuleSummary {
            towers: self.tower_gradings(),
            torsion: self
                .torsion_summary()
                .into_iter()
                .map(|(grading, order)| TorsionJson { grading, order })
                .collect(),
        }
    }
}

impl fmt::Display for GradedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> =
            self.tower_gradings().iter().map(|g| format!("F[U]_({g})")).collect();
        for (g, k) in self.torsion_summary().iter().rev() {
            parts.push(if *k == 1 { format!("F_({g})") } else { format!("F[U]/U^{k}_({g})") });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

/// JSON form of a [`GradedModule`]: gradings and orders only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleSummary {
    pub towers: Vec<i64>,
    pub torsion: Vec<TorsionJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionJson {
    pub grading: i64,
    pub order: usize,
}

/// Coordinates of a homology class in the summand basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coords {
    pub free: Vec<UPoly>,
    /// Reduced mod `U^order` of the matching summand.
    pub torsion: Vec<UPoly>,
}

impl Coords {
    pub fn is_zero(&self) -> bool {
        self.free.iter().chain(&self.torsion).all(UPoly::is_zero)
    }
}

/// Homology together with the data needed to express cycles in its basis.
#[derive(Clone, Debug)]
pub struct Homology {
    pub module: GradedModule,
    grading: Vec<i64>,
    rank: usize,
    right_inv: PolyMatrix,
    l2: PolyMatrix,
    r2: PolyMatrix,
    /// For each torsion summand, its index among the first `rank` SNF slots.
    torsion_slots: Vec<usize>,
}

fn check_graded(grading: &[i64], d: &PolyMatrix) -> Result<()> {
    for r in 0..d.rows() {
        for c in 0..d.cols() {
            let v = d.get(r, c);
            if v.is_zero() {
                continue;
            }
            match v.as_monomial() {
                Some(e) if grading[r] - 2 * e as i64 == grading[c] - 1 => {}
                _ => return Err(Error::NotGraded { row: r, col: c }),
            }
        }
    }
    Ok(())
}

/// Grading of a homogeneous vector; `None` for the zero vector.
pub fn vector_grading(v: &[UPoly], grading: &[i64]) -> Result<Option<i64>> {
    let mut out = None;
    for (k, p) in v.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        let e = p.as_monomial().ok_or(Error::Inhomogeneous)?;
        let g = grading[k] - 2 * e as i64;
        match out {
            None => out = Some(g),
            Some(h) if h == g => {}
            Some(_) => return Err(Error::Inhomogeneous),
        }
    }
    Ok(out)
}

impl Homology {
    /// Homology of the free complex with basis gradings `grading` and differential `d`.
    pub fn compute(grading: &[i64], d: &PolyMatrix) -> Result<Homology> {
        let n = grading.len();
        if d.rows() != n || d.cols() != n {
            return Err(Error::Parse(format!("differential is {}x{} for {n} basis elements", d.rows(), d.cols())));
        }
        check_graded(grading, d)?;
        if !d.mul(d)?.is_zero() {
            return Err(Error::Invalid(Vec::new()));
        }
        let s1 = snf(d);
        let r = s1.rank();
        for s in &s1.diagonal[..r] {
            if s.as_monomial().is_none() {
                return Err(Error::NonMonomialDiagonal(s.to_string()));
            }
        }

        // t_i in the cycle basis f_{r..}
        let x = s1.right_inv.mul(&s1.left_inv)?.block(r, n, 0, r);
        let s2 = snf(&x);
        if s2.rank() != r || s2.diagonal.iter().any(|d| !d.is_one()) {
            return Err(Error::NonMonomialDiagonal("boundary span is not a direct summand".into()));
        }
        let cycles = s1.right.block(0, n, r, n);
        let g = cycles.mul(&s2.left_inv)?;

        let mut module = GradedModule::default();
        for k in r..n - r {
            let rep = g.column(k);
            let grading_k = vector_grading(&rep, grading)?.expect("basis vectors are nonzero");
            module.free.push(FreeSummand { grading: grading_k, rep });
        }
        let mut torsion_slots = Vec::new();
        for (i, s) in s1.diagonal[..r].iter().enumerate() {
            let order = s.as_monomial().expect("checked above");
            if order == 0 {
                continue;
            }
            let rep = s1.left_inv.column(i);
            let grading_i = vector_grading(&rep, grading)?.expect("basis vectors are nonzero");
            module.torsion.push(TorsionSummand { grading: grading_i, order, rep });
            torsion_slots.push(i);
        }
        Ok(Homology {
            module,
            grading: grading.to_vec(),
            rank: r,
            right_inv: s1.right_inv,
            l2: s2.left,
            r2: s2.right,
            torsion_slots,
        })
    }

    pub fn of(sq: &Subquotient) -> Result<Homology> {
        Self::compute(&sq.grading, &sq.diff)
    }

    pub fn grading(&self) -> &[i64] {
        &self.grading
    }

    /// Expresses a cycle in the summand basis. Errors if `z` is not a cycle.
    pub fn coords(&self, z: &[UPoly]) -> Result<Coords> {
        let n = self.grading.len();
        let r = self.rank;
        let c = self.right_inv.mul_vec(z);
        if c[..r].iter().any(|p| !p.is_zero()) {
            return Err(Error::Parse("vector is not a cycle".into()));
        }
        let gamma = self.l2.mul_vec(&c[r..]);
        let tau = self.r2.mul_vec(&gamma[..r]);
        let free = gamma[r..n - r].to_vec();
        let torsion = self
            .torsion_slots
            .iter()
            .zip(&self.module.torsion)
            .map(|(&i, t)| truncate(&tau[i], t.order))
            .collect();
        Ok(Coords { free, torsion })
    }

    /// True when the cycle `z` is a boundary.
    pub fn is_boundary(&self, z: &[UPoly]) -> Result<bool> {
        Ok(self.coords(z)?.is_zero())
    }
}

fn truncate(p: &UPoly, order: usize) -> UPoly {
    UPoly::from_exponents(p.exponents().filter(|&k| k < order))
}

/// Matrix of the map induced by the chain map `f` on free parts.
///
/// Column `k` holds the free coordinates in `tgt` of `f` applied to the
/// `k`-th tower generator of `src`.
pub fn induced_on_free(src: &Homology, tgt: &Homology, f: &PolyMatrix) -> Result<PolyMatrix> {
    let mut out = PolyMatrix::zeros(tgt.module.free_rank(), src.module.free_rank());
    for (k, g) in src.module.free.iter().enumerate() {
        let c = tgt.coords(&f.mul_vec(&g.rep))?;
        for (r, p) in c.free.into_iter().enumerate() {
            out.set(r, k, p);
        }
    }
    Ok(out)
}

/// Full induced map: columns are source summands (towers then torsion),
/// rows are target summands in the same order.
pub fn induced_map(src: &Homology, tgt: &Homology, f: &PolyMatrix) -> Result<PolyMatrix> {
    let reps: Vec<&Vec<UPoly>> = src
        .module
        .free
        .iter()
        .map(|s| &s.rep)
        .chain(src.module.torsion.iter().map(|s| &s.rep))
        .collect();
    let rows = tgt.module.free_rank() + tgt.module.torsion.len();
    let mut out = PolyMatrix::zeros(rows, reps.len());
    for (k, rep) in reps.iter().enumerate() {
        let c = tgt.coords(&f.mul_vec(rep))?;
        for (r, p) in c.free.into_iter().chain(c.torsion).enumerate() {
            out.set(r, k, p);
        }
    }
    Ok(out)
}

/// `V₀ = −½·gr` of the tower of `H(A₀⁻)`.
pub fn v0(c: &FilteredComplex) -> Result<i64> {
    let h = Homology::of(&c.subquotient(Region::A0Minus)?)?;
    tower_v(&h.module)
}

pub(crate) fn tower_v(m: &GradedModule) -> Result<i64> {
    if m.free_rank() != 1 {
        return Err(Error::FreeRank { expected: 1, found: m.free_rank() });
    }
    let g = m.free[0].grading;
    if g.rem_euclid(2) != 0 {
        return Err(Error::OddGrading(g));
    }
    Ok(-g / 2)
}

/// Ranks of `ĤFK` indexed by `(alexander, maslov)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HfkTable {
    pub entries: BTreeMap<(i64, i64), usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HfkEntry {
    pub alexander: i64,
    pub maslov: i64,
    pub rank: usize,
}

impl HfkTable {
    pub fn add(&mut self, w: i64, k: i64, rank: usize) {
        if rank > 0 {
            *self.entries.entry((w, k)).or_insert(0) += rank;
        }
    }

    pub fn rank(&self, w: i64, k: i64) -> usize {
        self.entries.get(&(w, k)).copied().unwrap_or(0)
    }

    pub fn total_rank(&self) -> usize {
        self.entries.values().sum()
    }

    pub fn rank_at(&self, w: i64) -> usize {
        self.entries.iter().filter(|((a, _), _)| *a == w).map(|(_, r)| r).sum()
    }

    /// `rank(w, k) = rank(−w, k − 2w)` everywhere.
    pub fn is_symmetric(&self) -> bool {
        self.entries.iter().all(|(&(w, k), &r)| self.rank(-w, k - 2 * w) == r)
    }

    pub fn euler_characteristic(&self) -> AlexanderPoly {
        let mut p = AlexanderPoly::default();
        for (&(w, k), &r) in &self.entries {
            let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
            p.add(w, sign * r as i64);
        }
        p
    }

    pub fn to_entries(&self) -> Vec<HfkEntry> {
        self.entries
            .iter()
            .map(|(&(alexander, maslov), &rank)| HfkEntry { alexander, maslov, rank })
            .collect()
    }
}

pub fn hfk_hat(c: &FilteredComplex) -> Result<HfkTable> {
    let mut ws: Vec<i64> = c.gens().iter().map(|g| g.alexander()).collect();
    ws.sort_unstable();
    ws.dedup();
    let mut table = HfkTable::default();
    for w in ws {
        let sq = c.subquotient(Region::I0J(w))?;
        for (k, r) in graded_homology_dims(&sq.grading, &sq.f2_diff()) {
            table.add(w, k, r);
        }
    }
    Ok(table)
}

/// Laurent polynomial in `t` with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlexanderPoly(pub BTreeMap<i64, i64>);

impl AlexanderPoly {
    pub fn add(&mut self, exp: i64, coeff: i64) {
        let e = self.0.entry(exp).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.0.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.0.get(&exp).copied().unwrap_or(0)
    }

    pub fn eval_one(&self) -> i64 {
        self.0.values().sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.0.iter().all(|(e, c)| self.coeff(-e) == *c)
    }
}

impl fmt::Display for AlexanderPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, &c) in self.0.iter().rev() {
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (a, e) {
                (_, 0) => write!(f, "{a}")?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "t^{e}")?,
                (_, 1) => write!(f, "{a}t")?,
                _ => write!(f, "{a}t^{e}")?,
            }
        }
        Ok(())
    }
}

pub fn alexander_poly(c: &FilteredComplex) -> Result<AlexanderPoly> {
    Ok(hfk_hat(c)?.euler_characteristic())
}

/// Largest Alexander grading carrying `ĤFK`.
pub fn genus(c: &FilteredComplex) -> Result<Option<i64>> {
    Ok(hfk_hat(c)?.entries.keys().map(|(w, _)| *w).max())
}
