//! Linear algebra over `F₂`, used for the associated graded pieces.

use std::collections::BTreeMap;

/// Dense `F₂` matrix stored as packed rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        Self { rows, cols, words, data: vec![0; rows * words] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        (self.data[r * self.words + c / 64] >> (c % 64)) & 1 == 1
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        self.data[r * self.words + c / 64] ^= 1 << (c % 64);
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        if self.get(r, c) != v {
            self.flip(r, c);
        }
    }

    fn row_xor(&mut self, dst: usize, src: usize) {
        let w = self.words;
        for k in 0..w {
            let s = self.data[src * w + k];
            self.data[dst * w + k] ^= s;
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for c in 0..m.cols {
            let Some(p) = (rank..m.rows).find(|&r| m.get(r, c)) else { continue };
            if p != rank {
                let w = m.words;
                for k in 0..w {
                    m.data.swap(p * w + k, rank * w + k);
                }
            }
            for r in 0..m.rows {
                if r != rank && m.get(r, c) {
                    m.row_xor(r, rank);
                }
            }
            rank += 1;
        }
        rank
    }
}

/// Per-grading Betti numbers of a finite graded `F₂` complex.
///
/// `grading[k]` is the degree of basis element `k`; `d` is square, indexed
/// `(target, source)`, and lowers degree by one.
pub fn graded_homology_dims(grading: &[i64], d: &F2Matrix) -> BTreeMap<i64, usize> {
    let mut by_deg: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (k, g) in grading.iter().enumerate() {
        by_deg.entry(*g).or_default().push(k);
    }
    // rank of d restricted to the degree-g block, C_g -> C_{g-1}
    let block_rank = |g: i64| -> usize {
        let (Some(src), Some(tgt)) = (by_deg.get(&g), by_deg.get(&(g - 1))) else { return 0 };
        let mut b = F2Matrix::zeros(tgt.len(), src.len());
        for (ri, &r) in tgt.iter().enumerate() {
            for (ci, &c) in src.iter().enumerate() {
                if d.get(r, c) {
                    b.flip(ri, ci);
                }
            }
        }
        b.rank()
    };
    let mut out = BTreeMap::new();
    for (g, basis) in &by_deg {
        let h = basis.len() - block_rank(*g) - block_rank(g + 1);
        if h > 0 {
            out.insert(*g, h);
        }
    }
    out
}
