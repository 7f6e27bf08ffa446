//! Dense matrices over `F₂[U]` and sparse matrices over `F₂[U, U⁻¹]`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::AlgebraError;
use crate::upoly::{ULaurent, UPoly};

/// Dense row-major matrix over `F₂[U]`.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<UPoly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![UPoly::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, UPoly::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<UPoly>>) -> Result<Self, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(AlgebraError::Shape("ragged rows".into()));
        }
        Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &UPoly {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: UPoly) {
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<UPoly> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(UPoly::is_zero)
    }

    pub fn mul(&self, rhs: &PolyMatrix) -> Result<PolyMatrix, AlgebraError> {
        if self.cols != rhs.rows {
            return Err(AlgebraError::Shape(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = PolyMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[UPoly]) -> Vec<UPoly> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                let mut acc = UPoly::zero();
                for (k, x) in v.iter().enumerate() {
                    let a = self.get(i, k);
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    /// Sub-block `[r0, r1) × [c0, c1)`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> PolyMatrix {
        let mut out = PolyMatrix::zeros(r1 - r0, c1 - c0);
        for r in r0..r1 {
            for c in c0..c1 {
                out.set(r - r0, c - c0, self.get(r, c).clone());
            }
        }
        out
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// `row[dst] += q · row[src]`.
    pub(crate) fn add_row_multiple(&mut self, dst: usize, src: usize, q: &UPoly) {
        for c in 0..self.cols {
            let s = self.get(src, c);
            if !s.is_zero() {
                let t = q * s;
                self.data[dst * self.cols + c] += &t;
            }
        }
    }

    /// `col[dst] += q · col[src]`.
    pub(crate) fn add_col_multiple(&mut self, dst: usize, src: usize, q: &UPoly) {
        for r in 0..self.rows {
            let s = self.get(r, src);
            if !s.is_zero() {
                let t = q * s;
                self.data[r * self.cols + dst] += &t;
            }
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<UPoly, AlgebraError> {
        if self.rows != self.cols {
            return Err(AlgebraError::Shape("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(UPoly::one());
        }
        let mut a = self.clone();
        let mut prev = UPoly::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&r| !a.get(r, k).is_zero()) {
                    // row swaps only flip sign, invisible in characteristic 2
                    Some(r) => a.swap_rows(k, r),
                    None => return Ok(UPoly::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &(a.get(i, j) * a.get(k, k)) + &(a.get(i, k) * a.get(k, j));
                    let (q, r) = v.divmod(&prev)?;
                    debug_assert!(r.is_zero(), "Bareiss division is exact");
                    a.set(i, j, q);
                }
            }
            prev = a.get(k, k).clone();
        }
        Ok(a.get(n - 1, n - 1).clone())
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolyMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Square sparse matrix over `F₂[U, U⁻¹]`, indexed `(target, source)`.
///
/// Stored column-wise: `cols[source]` maps each target row to its entry.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentMatrix {
    n_rows: usize,
    cols: Vec<BTreeMap<usize, ULaurent>>,
}

impl LaurentMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { n_rows: rows, cols: vec![BTreeMap::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, ULaurent::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.n_rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn get(&self, r: usize, c: usize) -> ULaurent {
        self.cols[c].get(&r).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, r: usize, c: usize, v: ULaurent) {
        if v.is_zero() {
            self.cols[c].remove(&r);
        } else {
            self.cols[c].insert(r, v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &ULaurent) {
        let cur = self.get(r, c);
        self.set(r, c, &cur + v);
    }

    /// Nonzero entries of column `c` as `(row, entry)`.
    pub fn column(&self, c: usize) -> impl Iterator<Item = (usize, &ULaurent)> {
        self.cols[c].iter().map(|(r, v)| (*r, v))
    }

    /// All nonzero entries as `(row, col, entry)`, column-major.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &ULaurent)> {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v)))
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(BTreeMap::is_empty)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(BTreeMap::len).sum()
    }

    pub fn mul(&self, rhs: &LaurentMatrix) -> LaurentMatrix {
        assert_eq!(self.cols(), rhs.rows(), "matrix shapes");
        let mut out = LaurentMatrix::zeros(self.rows(), rhs.cols());
        for (c, col) in rhs.cols.iter().enumerate() {
            for (k, b) in col {
                for (r, a) in &self.cols[*k] {
                    out.add_to(*r, c, &(a * b));
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &LaurentMatrix) -> LaurentMatrix {
        assert_eq!((self.rows(), self.cols()), (rhs.rows(), rhs.cols()), "matrix shapes");
        let mut out = self.clone();
        for (r, c, v) in rhs.entries() {
            out.add_to(r, c, v);
        }
        out
    }

    /// Multiplies every entry by `U^k`.
    pub fn shift(&self, k: i64) -> LaurentMatrix {
        let mut out = self.clone();
        for col in &mut out.cols {
            for v in col.values_mut() {
                *v = v.shift(k);
            }
        }
        out
    }

    pub fn transpose(&self) -> LaurentMatrix {
        let mut out = LaurentMatrix::zeros(self.cols(), self.rows());
        for (r, c, v) in self.entries() {
            out.set(c, r, v.clone());
        }
        out
    }

    /// Rank over the fraction field `F₂(U)`.
    pub fn rank(&self) -> usize {
        let min = self.entries().map(|(_, _, v)| v.lead()).min().unwrap_or(0);
        let mut dense = PolyMatrix::zeros(self.rows(), self.cols());
        for (r, c, v) in self.entries() {
            dense.set(r, c, v.to_upoly_shifted(min).expect("shifted into F2[U]"));
        }
        crate::snf::snf(&dense).rank()
    }
}

impl fmt::Debug for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.entries().map(|(r, c, v)| format!("({r},{c}): {v}")))
            .finish()
    }
}
