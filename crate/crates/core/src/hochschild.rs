//! Multilinear maps on a finite-dimensional space, their extensions to
//! coderivations of the tensor coalgebra, and the Gerstenhaber bracket.
//!
//! A map `V^(tensor k) -> V^(tensor l)` is stored as an exact rational
//! matrix over the tensor-product basis, indices encoded big-endian: the
//! word `(i_1, ..., i_k)` is the digit string of its column.  A k-ary
//! map with values in `V` sits in degree `k - 1`; the bracket of a p-ary
//! and a q-ary map is (p+q-1)-ary, so arities grow under composition and
//! every operation works below an explicit word-length cutoff.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::matrix::QMatrix;
use crate::rat::{neg_one_pow, Rat};
use crate::{Error, Result};

/// A linear map `V^(tensor in_arity) -> V^(tensor out_arity)` over a
/// space of dimension `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorMap {
    n: usize,
    in_arity: usize,
    out_arity: usize,
    matrix: QMatrix,
}

fn power(n: usize, k: usize) -> usize {
    n.checked_pow(k as u32).expect("tensor power overflow")
}

/// Big-endian digit encoding of a basis word.
pub fn encode_word(n: usize, word: &[usize]) -> usize {
    let mut idx = 0;
    for &d in word {
        debug_assert!(d < n);
        idx = idx * n + d;
    }
    idx
}

pub fn decode_word(n: usize, arity: usize, mut idx: usize) -> Vec<usize> {
    let mut out = vec![0usize; arity];
    for slot in out.iter_mut().rev() {
        *slot = idx % n;
        idx /= n;
    }
    out
}

impl TensorMap {
    pub fn new(n: usize, in_arity: usize, out_arity: usize, matrix: QMatrix) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("the space must have positive dimension".into()));
        }
        if matrix.rows() != power(n, out_arity) || matrix.cols() != power(n, in_arity) {
            return Err(Error::InvalidInput(format!(
                "matrix shape {}x{} does not match arities {} -> {} over dimension {}",
                matrix.rows(),
                matrix.cols(),
                in_arity,
                out_arity,
                n
            )));
        }
        Ok(TensorMap { n, in_arity, out_arity, matrix })
    }

    pub fn zero(n: usize, in_arity: usize, out_arity: usize) -> Self {
        TensorMap {
            n,
            in_arity,
            out_arity,
            matrix: QMatrix::zero(power(n, out_arity), power(n, in_arity)),
        }
    }

    /// The identity on `V^(tensor k)`.
    pub fn identity(n: usize, k: usize) -> Self {
        TensorMap { n, in_arity: k, out_arity: k, matrix: QMatrix::identity(power(n, k)) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn in_arity(&self) -> usize {
        self.in_arity
    }

    pub fn out_arity(&self) -> usize {
        self.out_arity
    }

    /// Cohomological degree of a `V`-valued map.
    pub fn degree(&self) -> i64 {
        self.in_arity as i64 - self.out_arity as i64
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn entry(&self, out_word: &[usize], in_word: &[usize]) -> &Rat {
        assert_eq!(out_word.len(), self.out_arity);
        assert_eq!(in_word.len(), self.in_arity);
        self.matrix.get(encode_word(self.n, out_word), encode_word(self.n, in_word))
    }

    pub fn set_entry(&mut self, out_word: &[usize], in_word: &[usize], c: Rat) {
        assert_eq!(out_word.len(), self.out_arity);
        assert_eq!(in_word.len(), self.in_arity);
        self.matrix.set(encode_word(self.n, out_word), encode_word(self.n, in_word), c);
    }

    pub fn add(&self, other: &TensorMap) -> TensorMap {
        assert_eq!((self.n, self.in_arity, self.out_arity), (other.n, other.in_arity, other.out_arity));
        let mut m = self.matrix.clone();
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                let v = m.get(r, c).clone() + other.matrix.get(r, c).clone();
                m.set(r, c, v);
            }
        }
        TensorMap { matrix: m, ..*self }
    }

    pub fn scale(&self, k: &Rat) -> TensorMap {
        let mut m = self.matrix.clone();
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                let v = m.get(r, c).clone() * k.clone();
                m.set(r, c, v);
            }
        }
        TensorMap { matrix: m, ..*self }
    }

    pub fn sub(&self, other: &TensorMap) -> TensorMap {
        self.add(&other.scale(&Rat::from_integer((-1).into())))
    }

    /// Composition `self . other`; the inner arities must match.
    pub fn compose(&self, other: &TensorMap) -> TensorMap {
        assert_eq!(self.n, other.n);
        assert_eq!(self.in_arity, other.out_arity, "inner arity mismatch");
        TensorMap {
            n: self.n,
            in_arity: other.in_arity,
            out_arity: self.out_arity,
            matrix: self.matrix.mul(&other.matrix),
        }
    }

    /// Tensor product acting on concatenated words.
    pub fn tensor(&self, other: &TensorMap) -> TensorMap {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let in_arity = self.in_arity + other.in_arity;
        let out_arity = self.out_arity + other.out_arity;
        let mut m = QMatrix::zero(power(n, out_arity), power(n, in_arity));
        let right_rows = power(n, other.out_arity);
        let right_cols = power(n, other.in_arity);
        for r1 in 0..self.matrix.rows() {
            for c1 in 0..self.matrix.cols() {
                let a = self.matrix.get(r1, c1);
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..right_rows {
                    for c2 in 0..right_cols {
                        let b = other.matrix.get(r2, c2);
                        if b.is_zero() {
                            continue;
                        }
                        m.set(r1 * right_rows + r2, c1 * right_cols + c2, a.clone() * b.clone());
                    }
                }
            }
        }
        TensorMap { n, in_arity, out_arity, matrix: m }
    }
}

/// A map out of the tensor coalgebra with one component per word length.
#[derive(Clone, Debug)]
pub struct GradedMap {
    pub n: usize,
    pub components: BTreeMap<usize, TensorMap>,
}

impl GradedMap {
    pub fn component(&self, arity: usize) -> Option<&TensorMap> {
        self.components.get(&arity)
    }
}

/// Extends a `V`-valued map on `V^(tensor m)` to the coderivation of the
/// tensor coalgebra it generates, recorded on word lengths up to
/// `cutoff`: on a length-`k` word the extension sweeps the map across
/// all `k - m + 1` positions with sign `(-1)^((m-1) j)` at offset `j`.
pub fn coderivation_extend(phi: &TensorMap, cutoff: usize) -> Result<GradedMap> {
    if phi.out_arity() != 1 {
        return Err(Error::InvalidInput(
            "coderivation extension starts from a map with values in V".into(),
        ));
    }
    let n = phi.n();
    let m = phi.in_arity();
    let mut components = BTreeMap::new();
    for k in m..=cutoff {
        let mut total = TensorMap::zero(n, k, k - m + 1);
        for j in 0..=(k - m) {
            let mut term = TensorMap::identity(n, j).tensor(phi);
            term = term.tensor(&TensorMap::identity(n, k - m - j));
            let sign = neg_one_pow((m as i64 - 1) * j as i64);
            total = total.add(&term.scale(&sign));
        }
        components.insert(k, total);
    }
    Ok(GradedMap { n, components })
}

/// The cut comultiplication of the tensor coalgebra on words of length
/// `t`, one component per splitting `(i, t - i)` with both sides
/// nonempty.  Under the canonical identification of
/// `V^(tensor i) (tensor) V^(tensor (t-i))` with `V^(tensor t)` each
/// component is a plain linear map, which is what gets returned.
pub fn cut_comultiplication(n: usize, t: usize) -> BTreeMap<(usize, usize), TensorMap> {
    let mut out = BTreeMap::new();
    for i in 1..t {
        out.insert((i, t - i), TensorMap::identity(n, t));
    }
    out
}

/// The circle product: `a` with `b` substituted into each input slot in
/// turn, slot at offset `j` weighted by `(-1)^((q-1) j)` for a q-ary `b`.
pub fn circle_product(a: &TensorMap, b: &TensorMap) -> Result<TensorMap> {
    if a.out_arity() != 1 || b.out_arity() != 1 {
        return Err(Error::InvalidInput("the circle product needs V-valued maps".into()));
    }
    if a.n() != b.n() {
        return Err(Error::InvalidInput("dimension mismatch".into()));
    }
    let n = a.n();
    let p = a.in_arity();
    let q = b.in_arity();
    if p == 0 {
        return Ok(TensorMap::zero(n, q.saturating_sub(1), 1));
    }
    let mut total = TensorMap::zero(n, p + q - 1, 1);
    for j in 0..p {
        let inner = TensorMap::identity(n, j)
            .tensor(b)
            .tensor(&TensorMap::identity(n, p - 1 - j));
        let sign = neg_one_pow((q as i64 - 1) * j as i64);
        total = total.add(&a.compose(&inner).scale(&sign));
    }
    Ok(total)
}

/// The Gerstenhaber bracket of a p-ary and a q-ary map, a (p+q-1)-ary
/// map.  `window` caps the representable arity, by default two above the
/// larger input arity; exceeding it is a truncation error, not a silent
/// approximation.
pub fn gerstenhaber_bracket(
    a: &TensorMap,
    b: &TensorMap,
    window: Option<usize>,
) -> Result<TensorMap> {
    let p = a.in_arity();
    let q = b.in_arity();
    let cap = window.unwrap_or(p.max(q) + 2);
    if p + q > cap + 1 {
        return Err(Error::Truncation(format!(
            "bracket of arities {p} and {q} needs word length {}, above the window {cap}",
            p + q - 1
        )));
    }
    let left = circle_product(a, b)?;
    let right = circle_product(b, a)?;
    let sign = neg_one_pow((p as i64 - 1) * (q as i64 - 1));
    Ok(left.sub(&right.scale(&sign)))
}

/// One half of the self-bracket of a binary map: exactly its associator
/// defect, zero if and only if the multiplication is associative.
pub fn half_self_bracket(f: &TensorMap) -> Result<TensorMap> {
    let b = gerstenhaber_bracket(f, f, None)?;
    Ok(b.scale(&Rat::new(1.into(), 2.into())))
}
