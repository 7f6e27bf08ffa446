//! Exact arithmetic over `F₂[U]` and `F₂[U, U⁻¹]`.
//!
//! Polynomials are stored as dense bit vectors, bit `k` holding the
//! coefficient of `U^k`. The representation is kept canonical (no trailing
//! zero words) so derived equality is structural equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use smallvec::{smallvec, SmallVec};

use crate::error::AlgebraError;

type Words = SmallVec<[u64; 2]>;

/// A polynomial in `F₂[U]`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    words: Words,
}

impl UPoly {
    pub fn zero() -> Self {
        Self { words: Words::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    /// `U^k`.
    pub fn monomial(k: usize) -> Self {
        let mut words: Words = smallvec![0; k / 64 + 1];
        words[k / 64] = 1u64 << (k % 64);
        Self { words }
    }

    /// Sum of `U^k` over the given exponents (repeated exponents cancel).
    pub fn from_exponents<I: IntoIterator<Item = usize>>(exps: I) -> Self {
        let mut p = Self::zero();
        for k in exps {
            p.flip(k);
        }
        p
    }

    /// Builds a polynomial from a coefficient list, index `k` = coefficient of `U^k`.
    pub fn from_coeffs(bits: &[bool]) -> Self {
        Self::from_exponents(bits.iter().enumerate().filter(|(_, b)| **b).map(|(k, _)| k))
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words.len() == 1 && self.words[0] == 1
    }

    pub fn degree(&self) -> Option<usize> {
        let last = *self.words.last()?;
        Some((self.words.len() - 1) * 64 + 63 - last.leading_zeros() as usize)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn coeff(&self, k: usize) -> bool {
        self.words
            .get(k / 64)
            .is_some_and(|w| (w >> (k % 64)) & 1 == 1)
    }

    /// Returns `Some(k)` when the polynomial is exactly `U^k`.
    pub fn as_monomial(&self) -> Option<usize> {
        let d = self.degree()?;
        (self.valuation() == Some(d)).then_some(d)
    }

    /// Exponents with nonzero coefficient, ascending.
    pub fn exponents(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            (0..64).filter(move |b| (w >> b) & 1 == 1).map(move |b| i * 64 + b)
        })
    }

    fn flip(&mut self, k: usize) {
        if self.words.len() <= k / 64 {
            self.words.resize(k / 64 + 1, 0);
        }
        self.words[k / 64] ^= 1u64 << (k % 64);
        self.trim();
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    /// Multiplies by `U^k`.
    pub fn shl(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let (ws, bs) = (k / 64, k % 64);
        let mut words: Words = smallvec![0; self.words.len() + ws + 1];
        for (i, &w) in self.words.iter().enumerate() {
            words[i + ws] ^= w << bs;
            if bs != 0 {
                words[i + ws + 1] ^= w >> (64 - bs);
            }
        }
        let mut p = Self { words };
        p.trim();
        p
    }

    /// Divides by `U^k`, dropping any terms of lower degree.
    pub fn shr(&self, k: usize) -> Self {
        let (ws, bs) = (k / 64, k % 64);
        if ws >= self.words.len() {
            return Self::zero();
        }
        let src = &self.words[ws..];
        let mut words: Words = smallvec![0; src.len()];
        for i in 0..src.len() {
            words[i] = src[i] >> bs;
            if bs != 0 && i + 1 < src.len() {
                words[i] |= src[i + 1] << (64 - bs);
            }
        }
        let mut p = Self { words };
        p.trim();
        p
    }

    /// Euclidean division: `self = q·b + r` with `deg r < deg b`.
    pub fn divmod(&self, b: &UPoly) -> Result<(UPoly, UPoly), AlgebraError> {
        let db = b.degree().ok_or(AlgebraError::DivisionByZero)?;
        let mut r = self.clone();
        let mut q = UPoly::zero();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let s = dr - db;
            q.flip(s);
            r += &b.shl(s);
        }
        Ok((q, r))
    }

    pub fn divides(&self, other: &UPoly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.divmod(self).is_ok_and(|(_, r)| r.is_zero())
    }

    /// Monic gcd. Errors if either argument is zero, matching `divmod`.
    pub fn gcd(&self, b: &UPoly) -> Result<UPoly, AlgebraError> {
        if self.is_zero() || b.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(self.ext_gcd(b).0)
    }

    /// Extended Euclid: returns `(g, s, t)` with `s·self + t·b = g`.
    pub fn ext_gcd(&self, b: &UPoly) -> (UPoly, UPoly, UPoly) {
        let (mut r0, mut r1) = (self.clone(), b.clone());
        let (mut s0, mut s1) = (UPoly::one(), UPoly::zero());
        let (mut t0, mut t1) = (UPoly::zero(), UPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 + &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 + &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        (r0, s0, t0)
    }

    /// Evaluates at `U = 1`, i.e. the parity of the number of terms.
    pub fn eval_one(&self) -> bool {
        self.words.iter().map(|w| w.count_ones()).sum::<u32>() % 2 == 1
    }
}

impl Add<&UPoly> for &UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&UPoly> for UPoly {
    fn add_assign(&mut self, rhs: &UPoly) {
        if self.words.len() < rhs.words.len() {
            self.words.resize(rhs.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(rhs.words.iter()) {
            *a ^= b;
        }
        self.trim();
    }
}

impl Mul<&UPoly> for &UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        if let Some(k) = rhs.as_monomial() {
            return self.shl(k);
        }
        if let Some(k) = self.as_monomial() {
            return rhs.shl(k);
        }
        let mut out = UPoly::zero();
        for k in rhs.exponents() {
            out += &self.shl(k);
        }
        out
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .exponents()
            .collect::<Vec<_>>()
            .into_iter()
            .rev()
            .map(|k| match k {
                0 => "1".to_string(),
                1 => "U".to_string(),
                _ => format!("U^{k}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UPoly({self})")
    }
}

/// An element of `F₂[U, U⁻¹]`, stored as `U^lead · poly` with `poly(0) = 1`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ULaurent {
    lead: i64,
    poly: UPoly,
}

impl ULaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    pub fn monomial(k: i64) -> Self {
        Self { lead: k, poly: UPoly::one() }
    }

    /// `U^shift · p`, normalized.
    pub fn from_upoly(p: &UPoly, shift: i64) -> Self {
        match p.valuation() {
            None => Self::zero(),
            Some(v) => Self { lead: shift + v as i64, poly: p.shr(v) },
        }
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn lead(&self) -> i64 {
        self.lead
    }

    /// Highest exponent present.
    pub fn top(&self) -> Option<i64> {
        self.poly.degree().map(|d| self.lead + d as i64)
    }

    pub fn as_monomial(&self) -> Option<i64> {
        self.poly.is_one().then_some(self.lead)
    }

    /// Exponents with nonzero coefficient, ascending.
    pub fn exponents(&self) -> impl Iterator<Item = i64> + '_ {
        self.poly.exponents().map(move |k| self.lead + k as i64)
    }

    /// Multiplies by `U^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self { lead: self.lead + k, poly: self.poly.clone() }
    }

    /// The polynomial `U^{-k} · self`, if it has no negative powers.
    pub fn to_upoly_shifted(&self, k: i64) -> Option<UPoly> {
        if self.is_zero() {
            return Some(UPoly::zero());
        }
        let e = self.lead - k;
        (e >= 0).then(|| self.poly.shl(e as usize))
    }

    pub fn to_upoly(&self) -> Option<UPoly> {
        self.to_upoly_shifted(0)
    }
}

impl Add<&ULaurent> for &ULaurent {
    type Output = ULaurent;
    fn add(self, rhs: &ULaurent) -> ULaurent {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let base = self.lead.min(rhs.lead);
        let a = self.poly.shl((self.lead - base) as usize);
        let b = rhs.poly.shl((rhs.lead - base) as usize);
        ULaurent::from_upoly(&(&a + &b), base)
    }
}

impl AddAssign<&ULaurent> for ULaurent {
    fn add_assign(&mut self, rhs: &ULaurent) {
        *self = &*self + rhs;
    }
}

impl Mul<&ULaurent> for &ULaurent {
    type Output = ULaurent;
    fn mul(self, rhs: &ULaurent) -> ULaurent {
        if self.is_zero() || rhs.is_zero() {
            return ULaurent::zero();
        }
        ULaurent { lead: self.lead + rhs.lead, poly: &self.poly * &rhs.poly }
    }
}

impl PartialOrd for ULaurent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ULaurent {
    fn cmp(&self, other: &Self) -> Ordering {
        let a: Vec<i64> = self.exponents().collect();
        let b: Vec<i64> = other.exponents().collect();
        a.cmp(&b)
    }
}

impl fmt::Display for ULaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .exponents()
            .collect::<Vec<_>>()
            .into_iter()
            .rev()
            .map(|k| match k {
                0 => "1".to_string(),
                1 => "U".to_string(),
                _ => format!("U^{k}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl fmt::Debug for ULaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ULaurent({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(exps: &[usize]) -> UPoly {
        UPoly::from_exponents(exps.iter().copied())
    }

    #[test]
    fn add_cancels_in_char_two() {
        assert_eq!(&p(&[2, 1]) + &p(&[2]), p(&[1]));
        assert!((&p(&[3, 0]) + &p(&[3, 0])).is_zero());
    }

    #[test]
    fn gcd_of_multiple() {
        assert_eq!(p(&[2, 1]).gcd(&p(&[1])).unwrap(), p(&[1]));
    }

    #[test]
    fn divmod_cube_plus_one() {
        let (q, r) = p(&[3, 0]).divmod(&p(&[1, 0])).unwrap();
        assert_eq!(q, p(&[2, 1, 0]));
        assert!(r.is_zero());
        assert_eq!(&q * &p(&[1, 0]), p(&[3, 0]));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(p(&[1]).divmod(&UPoly::zero()), Err(AlgebraError::DivisionByZero));
        assert_eq!(p(&[1]).gcd(&UPoly::zero()), Err(AlgebraError::DivisionByZero));
    }

    #[test]
    fn wide_shifts() {
        let a = UPoly::monomial(70);
        assert_eq!(a.degree(), Some(70));
        assert_eq!(a.shr(70), UPoly::one());
        assert_eq!(&a * &p(&[1, 0]), p(&[71, 70]));
        assert_eq!(p(&[65, 3]).shr(2), p(&[63, 1]));
    }

    #[test]
    fn canonical_laurent() {
        let x = ULaurent::from_upoly(&p(&[3, 2]), -5);
        assert_eq!(x.lead(), -3);
        assert_eq!(x.top(), Some(-2));
        assert_eq!(&x + &x, ULaurent::zero());
        assert_eq!(ULaurent::from_upoly(&UPoly::zero(), 7), ULaurent::zero());
        assert_eq!(ULaurent::monomial(-2).to_upoly(), None);
        assert_eq!(ULaurent::monomial(-2).to_upoly_shifted(-3), Some(UPoly::monomial(1)));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[2, 1, 0]).to_string(), "U^2 + U + 1");
        assert_eq!(ULaurent::monomial(-1).to_string(), "U^-1");
    }
}
