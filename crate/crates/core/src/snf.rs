//! Smith normal form over the PID `F₂[U]`.
//!
//! The only unit of `F₂[U]` is 1, so the diagonal is unique and comes out
//! monic without normalisation. Pivots are chosen by minimal degree with ties
//! going to the lowest `(row, col)`, which makes every output deterministic.

use crate::matrix::PolyMatrix;
use crate::upoly::UPoly;

/// `left · M · right = diag(diagonal)`, with both transforms and their inverses.
#[derive(Clone, Debug)]
pub struct SnfResult {
    /// Length `min(rows, cols)`; nonzero entries first, each dividing the next.
    pub diagonal: Vec<UPoly>,
    pub left: PolyMatrix,
    pub left_inv: PolyMatrix,
    pub right: PolyMatrix,
    pub right_inv: PolyMatrix,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().take_while(|d| !d.is_zero()).count()
    }

    /// The diagonal as a full `rows × cols` matrix.
    pub fn diagonal_matrix(&self) -> PolyMatrix {
        let mut d = PolyMatrix::zeros(self.left.rows(), self.right.cols());
        for (k, v) in self.diagonal.iter().enumerate() {
            d.set(k, k, v.clone());
        }
        d
    }
}

struct Work {
    s: PolyMatrix,
    l: PolyMatrix,
    linv: PolyMatrix,
    r: PolyMatrix,
    rinv: PolyMatrix,
}

impl Work {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.s.swap_rows(a, b);
        self.l.swap_rows(a, b);
        self.linv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.s.swap_cols(a, b);
        self.r.swap_cols(a, b);
        self.rinv.swap_rows(a, b);
    }

    // row[dst] += q·row[src]; the inverse of an elementary op is itself in char 2
    fn add_row(&mut self, dst: usize, src: usize, q: &UPoly) {
        self.s.add_row_multiple(dst, src, q);
        self.l.add_row_multiple(dst, src, q);
        self.linv.add_col_multiple(src, dst, q);
    }

    fn add_col(&mut self, dst: usize, src: usize, q: &UPoly) {
        self.s.add_col_multiple(dst, src, q);
        self.r.add_col_multiple(dst, src, q);
        self.rinv.add_row_multiple(src, dst, q);
    }

    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, usize)> = None;
        for i in t..self.s.rows() {
            for j in t..self.s.cols() {
                if let Some(d) = self.s.get(i, j).degree() {
                    if best.is_none_or(|(bd, _, _)| d < bd) {
                        best = Some((d, i, j));
                    }
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }
}

pub fn snf(m: &PolyMatrix) -> SnfResult {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        s: m.clone(),
        l: PolyMatrix::identity(rows),
        linv: PolyMatrix::identity(rows),
        r: PolyMatrix::identity(cols),
        rinv: PolyMatrix::identity(cols),
    };

    for t in 0..rows.min(cols) {
        while let Some((pi, pj)) = w.pivot(t) {
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            let p = w.s.get(t, t).clone();

            let mut clean = true;
            for i in t + 1..rows {
                if w.s.get(i, t).is_zero() {
                    continue;
                }
                let (q, r) = w.s.get(i, t).divmod(&p).expect("pivot is nonzero");
                w.add_row(i, t, &q);
                clean &= r.is_zero();
            }
            for j in t + 1..cols {
                if w.s.get(t, j).is_zero() {
                    continue;
                }
                let (q, r) = w.s.get(t, j).divmod(&p).expect("pivot is nonzero");
                w.add_col(j, t, &q);
                clean &= r.is_zero();
            }
            if !clean {
                continue;
            }

            // Row and column are clear; enforce divisibility on the remainder.
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !p.divides(w.s.get(i, j))));
            match bad {
                Some(i) => w.add_row(t, i, &UPoly::one()),
                None => break,
            }
        }
    }

    let diagonal = (0..rows.min(cols)).map(|k| w.s.get(k, k).clone()).collect();
    SnfResult { diagonal, left: w.l, left_inv: w.linv, right: w.r, right_inv: w.rinv }
}
