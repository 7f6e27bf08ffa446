//! The skew-filtered involution `ι_K` on model complexes.
//!
//! Involutions are stored as explicit matrices over `F₂[U, U⁻¹]` and checked
//! by [`validate_involution`]; the formulas below are only ways to fill in
//! the matrix.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::{ChainMap, FilteredComplex, FiltrationKind};
use crate::error::{Error, Result};
use crate::matrix::LaurentMatrix;
use crate::upoly::ULaurent;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Involution {
    pub matrix: LaurentMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvolutionViolation {
    NotChainMap,
    /// `ι(source)` has a term outside the transposed filtration level or grading.
    NotSkewFiltered { source: String, target: String },
    /// `ι²` differs from the Sarkar map in this column.
    SquareNotSarkar { source: String },
    /// `ι(source)` has a term not sitting exactly at the transposed level.
    SlotMismatch { source: String, target: String },
}

impl fmt::Display for InvolutionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NotChainMap => write!(f, "ι does not commute with ∂"),
            Self::NotSkewFiltered { source, target } => {
                write!(f, "ι({source}) ∋ {target} breaks skew-filtration or grading")
            }
            Self::SquareNotSarkar { source } => write!(f, "ι²({source}) ≠ σ({source})"),
            Self::SlotMismatch { source, target } => {
                write!(f, "ι({source}) ∋ {target} is not at the transposed level")
            }
        }
    }
}

impl Involution {
    /// Builds from explicit images; every generator must be listed exactly once.
    pub fn from_images(c: &FilteredComplex, images: &[(&str, Vec<(&str, i64)>)]) -> Result<Self> {
        let n = c.len();
        let mut m = LaurentMatrix::zeros(n, n);
        let mut seen = vec![false; n];
        for (src, terms) in images {
            let s = c.idx(src)?;
            if std::mem::replace(&mut seen[s], true) {
                return Err(Error::DuplicateGenerator(src.to_string()));
            }
            for (tgt, a) in terms {
                m.add_to(c.idx(tgt)?, s, &ULaurent::monomial(*a));
            }
        }
        if let Some(k) = seen.iter().position(|s| !s) {
            return Err(Error::UnknownGenerator(format!("no image given for {}", c.gens()[k].id)));
        }
        Ok(Self { matrix: m })
    }

    pub fn as_chain_map(&self) -> ChainMap {
        ChainMap { matrix: self.matrix.clone(), kind: FiltrationKind::SkewFiltered, maslov_shift: 0 }
    }

    /// The involution induced on the dual complex.
    pub fn dual(&self) -> Involution {
        Involution { matrix: self.matrix.transpose() }
    }

    /// Reads terms by generator name; repeated terms cancel in pairs.
    pub fn from_json(c: &FilteredComplex, s: &str) -> Result<Self> {
        if s.len() > 1 << 24 {
            return Err(Error::Parse("input too large".into()));
        }
        let terms: Vec<InvolutionTerm> = serde_json::from_str(s)?;
        let n = c.len();
        let mut m = LaurentMatrix::zeros(n, n);
        for t in &terms {
            if t.upower.abs() > 1 << 24 {
                return Err(Error::Parse(format!("U-power {} out of range", t.upower)));
            }
            m.add_to(c.idx(&t.target)?, c.idx(&t.source)?, &ULaurent::monomial(t.upower));
        }
        Ok(Self { matrix: m })
    }

    pub fn to_json(&self, c: &FilteredComplex) -> String {
        serde_json::to_string_pretty(&self.to_json_value(c)).expect("terms serialise")
    }

    pub fn to_json_value(&self, c: &FilteredComplex) -> Vec<InvolutionTerm> {
        self.matrix
            .entries()
            .flat_map(|(t, s, v)| {
                let (target, source) = (c.gens()[t].id.clone(), c.gens()[s].id.clone());
                v.exponents()
                    .map(move |a| InvolutionTerm { target: target.clone(), source: source.clone(), upower: a })
                    .collect::<Vec<_>>()
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvolutionTerm {
    pub target: String,
    pub source: String,
    pub upower: i64,
}

/// Checks chain map, skew-filtration, grading, `ι² = σ`, and optionally
/// that every term lands exactly at the transposed level.
pub fn validate_involution(c: &FilteredComplex, iota: &Involution, slot_exact: bool) -> Vec<InvolutionViolation> {
    let mut out = Vec::new();
    if !c.commutes(&iota.matrix) {
        out.push(InvolutionViolation::NotChainMap);
    }
    for (target, source) in c.map_violations(&iota.as_chain_map()) {
        out.push(InvolutionViolation::NotSkewFiltered { source, target });
    }
    let sq = iota.matrix.mul(&iota.matrix);
    let sigma = c.sarkar().matrix;
    let diff = sq.add(&sigma);
    let mut bad: Vec<usize> = diff.entries().map(|(_, s, _)| s).collect();
    bad.dedup();
    for s in bad {
        out.push(InvolutionViolation::SquareNotSarkar { source: c.gens()[s].id.clone() });
    }
    if slot_exact {
        for (t, s, v) in iota.matrix.entries() {
            let (x, y) = (&c.gens()[s], &c.gens()[t]);
            if v.exponents().any(|a| (y.i - a, y.j - a) != (x.j, x.i)) {
                out.push(InvolutionViolation::SlotMismatch { source: x.id.clone(), target: y.id.clone() });
            }
        }
    }
    out
}

/// Validates and returns the involution, or the first violation as an error.
pub fn checked(c: &FilteredComplex, iota: Involution, slot_exact: bool) -> Result<Involution> {
    match validate_involution(c, &iota, slot_exact).first() {
        None => Ok(iota),
        Some(v) => Err(Error::BadInvolution(v.to_string())),
    }
}

/// Partner of a staircase generator under reflection, by name.
fn reflected(id: &str) -> Option<String> {
    let (base, star) = match id.strip_suffix('*') {
        Some(b) => (b, "*"),
        None => (id, ""),
    };
    if base == "z0" {
        return Some(id.to_string());
    }
    let (head, branch) = base.rsplit_once('^')?;
    let other = match branch {
        "1" => "2",
        "2" => "1",
        _ => return None,
    };
    head.starts_with('z').then(|| format!("{head}^{other}{star}"))
}

/// Reflection `z_r¹ ↔ z_r²`, `z₀ ↦ z₀` on the staircase generators of `c`.
///
/// Generators not named like staircase generators are left out of the
/// matrix, so callers combine this with maps for the rest of the complex.
pub fn reflection_part(c: &FilteredComplex) -> Result<LaurentMatrix> {
    let n = c.len();
    let mut m = LaurentMatrix::zeros(n, n);
    for (s, g) in c.gens().iter().enumerate() {
        if let Some(partner) = reflected(&g.id) {
            let t = c.idx(&partner).map_err(|_| Error::NotStaircase(format!("{} has no mirror image", g.id)))?;
            m.set(t, s, ULaurent::one());
        }
    }
    Ok(m)
}

/// The standard staircase involution: reflection across `i = j`.
pub fn staircase_involution(c: &FilteredComplex) -> Result<Involution> {
    let m = reflection_part(c)?;
    if let Some(g) = c.gens().iter().find(|g| reflected(&g.id).is_none()) {
        return Err(Error::NotStaircase(format!("generator {} is not part of a staircase", g.id)));
    }
    Ok(Involution { matrix: m })
}

/// The standard square map between boxes with prefixes `p` and `q`.
///
/// Returns the partial matrix on the eight box generators.
pub fn square_pair_part(c: &FilteredComplex, p: &str, q: &str) -> Result<LaurentMatrix> {
    let (pa, qa) = (c.gen(&format!("{p}a"))?, c.gen(&format!("{q}a"))?);
    if (pa.i, pa.j) != (qa.j, qa.i) {
        return Err(Error::NotMirrored((pa.i, pa.j), (qa.i, qa.j)));
    }
    let n = c.len();
    let mut m = LaurentMatrix::zeros(n, n);
    let mut put = |src: String, tgts: &[String]| -> Result<()> {
        let s = c.idx(&src)?;
        for t in tgts {
            m.add_to(c.idx(t)?, s, &ULaurent::one());
        }
        Ok(())
    };
    let g = |pre: &str, x: &str| format!("{pre}{x}");
    put(g(p, "a"), &[g(q, "a"), g(q, "e")])?;
    put(g(p, "b"), &[g(q, "c")])?;
    put(g(p, "c"), &[g(q, "b")])?;
    put(g(p, "e"), &[g(q, "e")])?;
    put(g(q, "a"), &[g(p, "a")])?;
    put(g(q, "b"), &[g(p, "c")])?;
    put(g(q, "c"), &[g(p, "b")])?;
    put(g(q, "e"), &[g(p, "e")])?;
    Ok(m)
}

/// `ι` on the model complex with a staircase and one main-diagonal box.
pub fn c1_involution(c: &FilteredComplex) -> Result<Involution> {
    let mut m = reflection_part(c)?;
    let mut add = |src: &str, tgt: &str, a: i64| -> Result<()> {
        m.add_to(c.idx(tgt)?, c.idx(src)?, &ULaurent::monomial(a));
        Ok(())
    };
    add("a", "a", 0)?;
    add("a", "z0", 0)?;
    add("b", "c", 0)?;
    add("b", "z1^2", 0)?;
    add("c", "b", 0)?;
    add("c", "z1^1", 0)?;
    add("z0", "e", 0)?;
    add("e", "e", 0)?;
    Ok(Involution { matrix: m })
}

/// `ι` on the dual of that model complex, in its relabelled basis.
pub fn dual_c1_involution(c: &FilteredComplex) -> Result<Involution> {
    let mut m = reflection_part(c)?;
    let mut add = |src: &str, tgt: &str, a: i64| -> Result<()> {
        m.add_to(c.idx(tgt)?, c.idx(src)?, &ULaurent::monomial(a));
        Ok(())
    };
    add("a", "a", 0)?;
    add("a", "z0", 0)?;
    add("b", "c", 0)?;
    add("c", "b", 0)?;
    add("z0", "e", 0)?;
    add("z1^1", "c", -1)?;
    add("z1^2", "b", -1)?;
    add("e", "e", 0)?;
    Ok(Involution { matrix: m })
}

/// Figure-eight: `b ↔ c`, `a ↦ a + x`, `x ↦ x + e`, `e ↦ e`.
pub fn figure_eight_involution(c: &FilteredComplex) -> Result<Involution> {
    Involution::from_images(
        c,
        &[
            ("a", vec![("a", 0), ("x", 0)]),
            ("b", vec![("c", 0)]),
            ("c", vec![("b", 0)]),
            ("e", vec![("e", 0)]),
            ("x", vec![("x", 0), ("e", 0)]),
        ],
    )
}

/// Trefoils: `b ↔ c`, `a ↦ a`.
pub fn trefoil_involution(c: &FilteredComplex) -> Result<Involution> {
    Involution::from_images(c, &[("a", vec![("a", 0)]), ("b", vec![("c", 0)]), ("c", vec![("b", 0)])])
}
