#![allow(dead_code)]

//! Test-only oracles that avoid the Smith-form machinery.

use std::collections::HashMap;

use cfk_core::invariants::ConeComplex;

/// Row-reduced span of `F₂` vectors, stored as bitsets.
#[derive(Clone, Default)]
pub struct Span {
    rows: Vec<(usize, Vec<u64>)>,
}

fn lead(v: &[u64]) -> Option<usize> {
    v.iter().enumerate().find(|(_, w)| **w != 0).map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
}

fn bit(v: &[u64], b: usize) -> bool {
    (v[b / 64] >> (b % 64)) & 1 == 1
}

impl Span {
    fn reduce(&self, mut v: Vec<u64>) -> Vec<u64> {
        for (p, r) in &self.rows {
            if bit(&v, *p) {
                for (a, b) in v.iter_mut().zip(r) {
                    *a ^= b;
                }
            }
        }
        v
    }

    /// Adds `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: Vec<u64>) -> bool {
        let v = self.reduce(v);
        let Some(p) = lead(&v) else { return false };
        for (_, r) in &mut self.rows {
            if bit(r, p) {
                for (a, b) in r.iter_mut().zip(&v) {
                    *a ^= b;
                }
            }
        }
        self.rows.push((p, v));
        true
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        lead(&self.reduce(v.to_vec())).is_none()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn vectors(&self) -> impl Iterator<Item = &Vec<u64>> {
        self.rows.iter().map(|(_, v)| v)
    }
}

fn words(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

/// The cone as an `F₂` vector space, one grading at a time.
///
/// Basis elements are `U^p·x_k`; only gradings at or above the chosen floor
/// are ever touched, and the `U`-power bound keeps all of them exact.
pub struct TruncatedCone<'a> {
    cone: &'a ConeComplex,
    /// `(k, e)` terms of `∂x_k` per source.
    cols: Vec<Vec<(usize, usize)>>,
    by_grading: HashMap<i64, Vec<(usize, usize)>>,
}

impl<'a> TruncatedCone<'a> {
    pub fn new(cone: &'a ConeComplex, floor: i64) -> Self {
        let n = cone.len();
        let mut cols = vec![Vec::new(); n];
        for (s, col) in cols.iter_mut().enumerate() {
            for t in 0..n {
                for e in cone.diff.get(t, s).exponents() {
                    col.push((t, e));
                }
            }
        }
        let mut by_grading: HashMap<i64, Vec<(usize, usize)>> = HashMap::new();
        for (k, &g) in cone.grading.iter().enumerate() {
            let mut p = 0;
            while g - 2 * p as i64 >= floor - 1 {
                by_grading.entry(g - 2 * p as i64).or_default().push((k, p));
                p += 1;
            }
        }
        Self { cone, cols, by_grading }
    }

    fn basis(&self, r: i64) -> &[(usize, usize)] {
        self.by_grading.get(&r).map(Vec::as_slice).unwrap_or(&[])
    }

    fn index(&self, r: i64, key: (usize, usize)) -> usize {
        self.basis(r).iter().position(|&b| b == key).expect("element lies in range")
    }

    fn vec_of(&self, r: i64, elems: impl IntoIterator<Item = (usize, usize)>) -> Vec<u64> {
        let mut v = vec![0u64; words(self.basis(r).len())];
        for e in elems {
            let i = self.index(r, e);
            v[i / 64] ^= 1 << (i % 64);
        }
        v
    }

    fn elems(&self, r: i64, v: &[u64]) -> Vec<(usize, usize)> {
        self.basis(r).iter().enumerate().filter(|(i, _)| bit(v, *i)).map(|(_, b)| *b).collect()
    }

    fn d(&self, r: i64, v: &[u64]) -> Vec<u64> {
        let terms = self
            .elems(r, v)
            .into_iter()
            .flat_map(|(k, p)| self.cols[k].iter().map(move |&(t, e)| (t, p + e)));
        self.vec_of(r - 1, terms)
    }

    fn q(&self, r: i64, v: &[u64]) -> Vec<u64> {
        let n = self.cone.half();
        let mut out = Vec::new();
        for (k, p) in self.elems(r, v) {
            if k < n {
                out.push((k + n, p));
            }
        }
        self.vec_of(r - 1, out)
    }

    fn u_pow(&self, r: i64, v: &[u64], m: usize) -> Vec<u64> {
        let terms: Vec<_> = self.elems(r, v).into_iter().map(|(k, p)| (k, p + m)).collect();
        self.vec_of(r - 2 * m as i64, terms)
    }

    fn unit(&self, r: i64, i: usize) -> Vec<u64> {
        let mut v = vec![0u64; words(self.basis(r).len())];
        v[i / 64] |= 1 << (i % 64);
        v
    }

    /// Basis of the cycles in grading `r`, by brute-force elimination.
    pub fn cycles(&self, r: i64) -> Vec<Vec<u64>> {
        let n = self.basis(r).len();
        // eliminate on [d(e_i) | e_i]
        let mut rows: Vec<(Vec<u64>, Vec<u64>)> = (0..n).map(|i| (self.d(r, &self.unit(r, i)), self.unit(r, i))).collect();
        let mut kernel = Vec::new();
        let mut pivots: Vec<(usize, Vec<u64>, Vec<u64>)> = Vec::new();
        for (mut dv, mut v) in rows.drain(..) {
            for (p, pd, pv) in &pivots {
                if bit(&dv, *p) {
                    for (a, b) in dv.iter_mut().zip(pd) {
                        *a ^= b;
                    }
                    for (a, b) in v.iter_mut().zip(pv) {
                        *a ^= b;
                    }
                }
            }
            match lead(&dv) {
                None => kernel.push(v),
                Some(p) => pivots.push((p, dv, v)),
            }
        }
        kernel
    }

    pub fn boundaries(&self, r: i64) -> Span {
        let mut s = Span::default();
        for i in 0..self.basis(r + 1).len() {
            s.insert(self.d(r + 1, &self.unit(r + 1, i)));
        }
        s
    }
}

/// `(V̲₀, V̄₀)` straight from the max-formulas, searching gradings downward.
pub fn brute_force_vs(cone: &ConeComplex) -> (i64, i64) {
    let gmin = *cone.grading.iter().min().expect("nonempty cone");
    let gmax = *cone.grading.iter().max().expect("nonempty cone");
    // below every torsion summand
    let floor = gmin - (gmax - gmin) - 8;
    let tc = TruncatedCone::new(cone, floor - 2);
    let low = |r: i64| if (r - floor).rem_euclid(2) == 0 { floor } else { floor - 1 };

    let mut never_q: Option<i64> = None;
    let mut eventually_q: Option<i64> = None;
    let mut r = gmax;
    while r >= floor && (never_q.is_none() || eventually_q.is_none()) {
        let l = low(r);
        let depth = ((r - l) / 2) as usize;
        let b = tc.boundaries(l);
        let mut w = b.clone();
        for z in tc.cycles(l + 1) {
            w.insert(tc.q(l + 1, &z));
        }
        let images: Vec<Vec<u64>> = tc.cycles(r).iter().map(|z| tc.u_pow(r, z, depth)).collect();
        if never_q.is_none() && images.iter().any(|v| !w.contains(v)) {
            never_q = Some(r);
        }
        if eventually_q.is_none() {
            // some combination lands in W but not in B
            let mut all = w.clone();
            let base = all.dim();
            let mut combos = Span::default();
            for v in &images {
                combos.insert(v.clone());
            }
            // dim(A ∩ W) = dim A + dim W − dim(A + W), same against B
            for v in combos.vectors() {
                all.insert(v.clone());
            }
            let cap_w = combos.dim() + base - all.dim();
            let mut all_b = b.clone();
            let base_b = all_b.dim();
            for v in combos.vectors() {
                all_b.insert(v.clone());
            }
            let cap_b = combos.dim() + base_b - all_b.dim();
            if cap_w > cap_b {
                eventually_q = Some(r);
            }
        }
        r -= 1;
    }
    let g1 = never_q.expect("a tower avoiding the image of Q");
    let g2 = eventually_q.expect("a tower inside the image of Q");
    assert!((g1 - 1) % 2 == 0 && g2 % 2 == 0, "tower parities {g1}, {g2}");
    (-(g1 - 1) / 2, -g2 / 2)
}

/// `dim_F₂ H_r` of the cone for every `r` from the top grading down to `floor`.
pub fn brute_force_dims(cone: &ConeComplex, floor: i64) -> std::collections::BTreeMap<i64, usize> {
    let gmax = *cone.grading.iter().max().expect("nonempty cone");
    let tc = TruncatedCone::new(cone, floor - 2);
    let mut out = std::collections::BTreeMap::new();
    for r in floor..=gmax {
        let z = tc.cycles(r).len();
        let b = tc.boundaries(r).dim();
        if z > b {
            out.insert(r, z - b);
        }
    }
    out
}
