//! The involutive correction terms `V̲₀` and `V̄₀`.
//!
//! `ι` restricts to `A₀⁻`, and the mapping cone of `Q·(1 + ι)` computes the
//! involutive homology. Its free part has rank two; `Q` maps one tower into
//! the other, and the two tower tops give the two invariants.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::{FilteredComplex, Region};
use crate::error::{Error, Result};
use crate::homology::{induced_on_free, tower_v, vector_grading, GradedModule, Homology, ModuleSummary};
use crate::involution::Involution;
use crate::matrix::PolyMatrix;
use crate::snf::snf;
use crate::upoly::UPoly;

/// The cone of `Q·(1 + ι)` on `A₀⁻`, basis `(x₁…x_n, Qx₁…Qx_n)`.
#[derive(Clone, Debug)]
pub struct ConeComplex {
    /// Names of the `A₀⁻` basis, `U`-power included.
    pub labels: Vec<String>,
    pub grading: Vec<i64>,
    pub diff: PolyMatrix,
    /// The chain-level action of `Q`.
    pub q: PolyMatrix,
}

impl ConeComplex {
    pub fn len(&self) -> usize {
        self.grading.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grading.is_empty()
    }

    /// Number of `A₀⁻` generators; the cone has twice as many.
    pub fn half(&self) -> usize {
        self.grading.len() / 2
    }
}

/// `x` sits one degree above its `A₀⁻` grading and `Qx` at it, so that
/// `∂x = ∂_A x + Q(1 + ι)x` has degree −1.
pub fn build_cone(c: &FilteredComplex, iota: &Involution) -> Result<ConeComplex> {
    let sq = c.subquotient(Region::A0Minus)?;
    let n = sq.len();
    let i_a = c.restrict_map(&iota.matrix, Region::A0Minus)?;
    let mut diff = PolyMatrix::zeros(2 * n, 2 * n);
    let mut q = PolyMatrix::zeros(2 * n, 2 * n);
    for r in 0..n {
        for s in 0..n {
            let d = sq.diff.get(r, s);
            if !d.is_zero() {
                diff.set(r, s, d.clone());
                diff.set(n + r, n + s, d.clone());
            }
            let mut e = i_a.get(r, s).clone();
            if r == s {
                e = &e + &UPoly::one();
            }
            if !e.is_zero() {
                diff.set(n + r, s, e);
            }
        }
        q.set(n + r, r, UPoly::one());
    }
    let grading = sq.grading.iter().map(|g| g + 1).chain(sq.grading.iter().copied()).collect();
    let labels = sq
        .labels
        .iter()
        .cloned()
        .chain(sq.labels.iter().map(|l| format!("Q{l}")))
        .collect();
    Ok(ConeComplex { labels, grading, diff, q })
}

/// Top gradings of the two towers of the cone homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConeTowers {
    /// The tower never reaching the image of `Q`.
    pub free_of_q: i64,
    /// The tower eventually inside the image of `Q`.
    pub in_image_of_q: i64,
}

/// Homology of the cone with the two tower tops read off from `Q`.
pub fn cone_towers(cone: &ConeComplex) -> Result<(GradedModule, ConeTowers)> {
    let h = Homology::compute(&cone.grading, &cone.diff)?;
    if h.module.free_rank() != 2 {
        return Err(Error::FreeRank { expected: 2, found: h.module.free_rank() });
    }
    let qbar = induced_on_free(&h, &h, &cone.q)?;
    let s = snf(&qbar);
    if s.rank() != 1 {
        return Err(Error::QRank(s.rank()));
    }
    let free_gr: Vec<i64> = h.module.free.iter().map(|f| f.grading).collect();
    let top = |k: usize| -> Result<i64> {
        vector_grading(&s.left_inv.column(k), &free_gr)?.ok_or(Error::Inhomogeneous)
    };
    let towers = ConeTowers { in_image_of_q: top(0)?, free_of_q: top(1)? };
    Ok((h.module, towers))
}

/// `(V₀, V̲₀, V̄₀)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InvariantTriple {
    #[serde(rename = "V0")]
    pub v0: i64,
    #[serde(rename = "V0_lower")]
    pub lower: i64,
    #[serde(rename = "V0_upper")]
    pub upper: i64,
}

impl fmt::Display for InvariantTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V0 = {}, V0_lower = {}, V0_upper = {}", self.v0, self.lower, self.upper)
    }
}

/// Everything computed on the way to the invariants.
#[derive(Clone, Debug)]
pub struct InvolutiveComputation {
    pub triple: InvariantTriple,
    pub a0: GradedModule,
    pub cone: GradedModule,
    pub towers: ConeTowers,
    pub cone_size: usize,
}

impl InvolutiveComputation {
    pub fn a0_summary(&self) -> ModuleSummary {
        self.a0.summary()
    }
}

fn half(g: i64) -> Result<i64> {
    if g.rem_euclid(2) != 0 {
        return Err(Error::OddGrading(g));
    }
    Ok(-g / 2)
}

pub fn involutive_vs(c: &FilteredComplex, iota: &Involution) -> Result<InvolutiveComputation> {
    let a0 = Homology::of(&c.subquotient(Region::A0Minus)?)?.module;
    let v0 = tower_v(&a0)?;
    let cone = build_cone(c, iota)?;
    let (cone_h, towers) = cone_towers(&cone)?;
    let triple = InvariantTriple {
        v0,
        lower: half(towers.free_of_q - 1)?,
        upper: half(towers.in_image_of_q)?,
    };
    Ok(InvolutiveComputation { triple, a0, cone: cone_h, towers, cone_size: cone.len() })
}
