//! Exterior elements: polyvector fields and differential forms.
//!
//! Both are free modules over the coefficient ring (polynomials, or the
//! localization at a fixed denominator) on strictly increasing wedge
//! blades of generators.  They share one representation, `Exterior<K>`,
//! distinguished by a phantom marker so the two cannot be mixed by
//! accident: polyvector generators are written `@x`, form generators
//! `d(x)`, and a polyvector of exterior degree `p` sits in cohomological
//! degree `-p` while a `q`-form sits in degree `+q`.  The degree
//! conventions only matter to the operations in `schouten`, `calculus`
//! and `bv`; the container itself just tracks blades and coefficients.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::marker::PhantomData;

use num_traits::Zero;

use crate::poly::{Denominator, LocalizedElement, Polynomial};
use crate::rat::Rat;

/// Strictly increasing list of generator indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Blade(pub Vec<usize>);

impl Blade {
    pub fn empty() -> Self {
        Blade(Vec::new())
    }

    pub fn single(i: usize) -> Self {
        Blade(vec![i])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Blade with position `k` removed.
    pub fn without(&self, k: usize) -> Blade {
        let mut v = self.0.clone();
        v.remove(k);
        Blade(v)
    }

    /// Merges two strictly increasing blades, returning the merged blade
    /// and the sign of the permutation that sorts the concatenation, or
    /// `None` when an index repeats.
    pub fn wedge(&self, other: &Blade) -> Option<(Blade, i32)> {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        let mut crossings = 0usize;
        while i < self.0.len() && j < other.0.len() {
            if self.0[i] < other.0[j] {
                out.push(self.0[i]);
                i += 1;
            } else if self.0[i] > other.0[j] {
                // other.0[j] moves past the remaining entries of self
                crossings += self.0.len() - i;
                out.push(other.0[j]);
                j += 1;
            } else {
                return None;
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        let sign = if crossings % 2 == 0 { 1 } else { -1 };
        Some((Blade(out), sign))
    }

    /// Sorts an arbitrary index list into a blade with the permutation
    /// sign; `None` when an index repeats.
    pub fn from_indices(idx: &[usize]) -> Option<(Blade, i32)> {
        let mut blade = Blade::empty();
        let mut sign = 1;
        for &i in idx {
            let (b, s) = blade.wedge(&Blade::single(i))?;
            blade = b;
            sign *= s;
        }
        Some((blade, sign))
    }

    /// Increasing complement within `0..rank`.
    pub fn complement(&self, rank: usize) -> Blade {
        let mut out = Vec::with_capacity(rank - self.0.len());
        let mut it = self.0.iter().peekable();
        for i in 0..rank {
            if it.peek() == Some(&&i) {
                it.next();
            } else {
                out.push(i);
            }
        }
        Blade(out)
    }
}

/// Marker for polyvector fields (generators `@x_i`, degree `-p`).
pub enum PvKind {}
/// Marker for differential forms (generators `d(x_i)`, degree `+q`).
pub enum FormKind {}

pub struct Exterior<K> {
    n: usize,
    terms: BTreeMap<Blade, LocalizedElement>,
    _kind: PhantomData<K>,
}

pub type Polyvector = Exterior<PvKind>;
pub type DifferentialForm = Exterior<FormKind>;

impl<K> Clone for Exterior<K> {
    fn clone(&self) -> Self {
        Exterior { n: self.n, terms: self.terms.clone(), _kind: PhantomData }
    }
}

impl<K> std::fmt::Debug for Exterior<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Exterior")
            .field("n", &self.n)
            .field("terms", &self.terms)
            .finish()
    }
}

impl<K> PartialEq for Exterior<K> {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.terms == other.terms
    }
}

impl<K> Eq for Exterior<K> {}

impl<K> Exterior<K> {
    /// Zero element over a coefficient ring in `n` variables.
    pub fn zero(n: usize) -> Self {
        Exterior { n, terms: BTreeMap::new(), _kind: PhantomData }
    }

    pub fn from_coeff(a: LocalizedElement) -> Self {
        let n = a.n_vars();
        let mut out = Self::zero(n);
        out.add_term(Blade::empty(), a, None);
        out
    }

    pub fn from_poly(p: Polynomial) -> Self {
        Self::from_coeff(LocalizedElement::from_poly(p))
    }

    /// The generator `e_i` as an element.
    pub fn generator(n: usize, i: usize) -> Self {
        let mut out = Self::zero(n);
        out.add_term(Blade::single(i), LocalizedElement::one(n), None);
        out
    }

    pub fn n_vars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Blade, &LocalizedElement)> {
        self.terms.iter()
    }

    pub fn coeff(&self, blade: &Blade) -> LocalizedElement {
        self.terms
            .get(blade)
            .cloned()
            .unwrap_or_else(|| LocalizedElement::zero(self.n))
    }

    /// Coefficient of the empty blade (the scalar part).
    pub fn scalar_part(&self) -> LocalizedElement {
        self.coeff(&Blade::empty())
    }

    /// Adds `a` to the coefficient of `blade`, dropping the entry if the
    /// sum vanishes.  The blade must already be strictly increasing.
    pub fn add_term(&mut self, blade: Blade, a: LocalizedElement, denom: Denominator) {
        if a.is_zero() {
            return;
        }
        debug_assert!(blade.0.windows(2).all(|w| w[0] < w[1]), "blade not sorted");
        match self.terms.remove(&blade) {
            None => {
                self.terms.insert(blade, a);
            }
            Some(old) => {
                let s = old.add(&a, denom);
                if !s.is_zero() {
                    self.terms.insert(blade, s);
                }
            }
        }
    }

    pub fn add(&self, other: &Self, denom: Denominator) -> Self {
        assert_eq!(self.n, other.n, "variable count mismatch");
        let mut out = self.clone();
        for (b, a) in &other.terms {
            out.add_term(b.clone(), a.clone(), denom);
        }
        out
    }

    pub fn sub(&self, other: &Self, denom: Denominator) -> Self {
        self.add(&other.neg(), denom)
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (b, a) in &self.terms {
            out.terms.insert(b.clone(), a.neg());
        }
        out
    }

    pub fn scale(&self, k: &Rat) -> Self {
        if k.is_zero() {
            return Self::zero(self.n);
        }
        let mut out = Self::zero(self.n);
        for (b, a) in &self.terms {
            out.terms.insert(b.clone(), a.scale(k));
        }
        out
    }

    pub fn mul_coeff(&self, a: &LocalizedElement, denom: Denominator) -> Self {
        let mut out = Self::zero(self.n);
        for (b, x) in &self.terms {
            out.add_term(b.clone(), x.mul(a, denom), denom);
        }
        out
    }

    pub fn mul_poly(&self, p: &Polynomial, denom: Denominator) -> Self {
        let mut out = Self::zero(self.n);
        for (b, x) in &self.terms {
            out.add_term(b.clone(), x.mul_poly(p, denom), denom);
        }
        out
    }

    /// Exterior product.  The sign comes entirely from merging the blades;
    /// coefficients sit in degree zero and commute.
    pub fn wedge(&self, other: &Self, denom: Denominator) -> Self {
        assert_eq!(self.n, other.n, "variable count mismatch");
        let mut out = Self::zero(self.n);
        for (b1, a1) in &self.terms {
            for (b2, a2) in &other.terms {
                if let Some((b, sign)) = b1.wedge(b2) {
                    let mut a = a1.mul(a2, denom);
                    if sign < 0 {
                        a = a.neg();
                    }
                    out.add_term(b, a, denom);
                }
            }
        }
        out
    }

    /// Repeated wedge power.
    pub fn wedge_pow(&self, k: u32, denom: Denominator) -> Self {
        let mut out = Self::from_poly(Polynomial::one(self.n));
        for _ in 0..k {
            out = out.wedge(self, denom);
        }
        out
    }

    /// `Some(p)` when every blade has length `p` (the zero element reports
    /// degree 0).
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else { return Some(0) };
        let p = first.len();
        it.all(|b| b.len() == p).then_some(p)
    }

    pub fn max_blade_len(&self) -> usize {
        self.terms.keys().map(|b| b.len()).max().unwrap_or(0)
    }

    /// Splits into exterior-degree homogeneous pieces, lowest first.
    pub fn degree_parts(&self) -> Vec<(usize, Self)> {
        let mut map: BTreeMap<usize, Self> = BTreeMap::new();
        for (b, a) in &self.terms {
            map.entry(b.len())
                .or_insert_with(|| Self::zero(self.n))
                .terms
                .insert(b.clone(), a.clone());
        }
        map.into_iter().collect()
    }

    /// The part of exterior degree `p`.
    pub fn degree_part(&self, p: usize) -> Self {
        let mut out = Self::zero(self.n);
        for (b, a) in &self.terms {
            if b.len() == p {
                out.terms.insert(b.clone(), a.clone());
            }
        }
        out
    }

    fn canonical_string(
        &self,
        names: &[String],
        denom: Denominator,
        gen: impl Fn(usize) -> String,
    ) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        // Decreasing exterior degree, then blade order.
        let mut entries: Vec<(&Blade, &LocalizedElement)> = self.terms.iter().collect();
        entries.sort_by(|(a, _), (b, _)| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        let mut pieces = Vec::new();
        for (blade, a) in entries {
            pieces.push(term_string(blade, a, names, denom, &gen));
        }
        let mut out = String::new();
        for (k, t) in pieces.iter().enumerate() {
            if k == 0 {
                out.push_str(t);
            } else if let Some(rest) = t.strip_prefix('-') {
                let _ = write!(out, " - {rest}");
            } else {
                let _ = write!(out, " + {t}");
            }
        }
        out
    }
}

fn term_string(
    blade: &Blade,
    a: &LocalizedElement,
    names: &[String],
    denom: Denominator,
    gen: &impl Fn(usize) -> String,
) -> String {
    let blade_str = blade
        .0
        .iter()
        .map(|&i| gen(i))
        .collect::<Vec<_>>()
        .join("^");
    if blade.is_empty() {
        return a.to_canonical_string(names, denom);
    }
    let coeff_is_one = a.power == 0 && a.numer.is_one();
    if coeff_is_one {
        return blade_str;
    }
    let coeff = a.to_canonical_string(names, denom);
    let needs_parens = a.power == 0 && a.numer.num_terms() > 1;
    if needs_parens {
        format!("({coeff})*{blade_str}")
    } else {
        format!("{coeff}*{blade_str}")
    }
}

impl Polyvector {
    /// Canonical string with `@name` generators, e.g. `(x - y)*@x^@y + 2*@x`.
    pub fn to_canonical_string_named(
        &self,
        var_names: &[String],
        gen_names: &[String],
        denom: Denominator,
    ) -> String {
        self.canonical_string(var_names, denom, |i| format!("@{}", gen_names[i]))
    }
}

impl DifferentialForm {
    /// Canonical string with `d(name)` generators, e.g. `x*d(x)^d(y)`.
    pub fn to_canonical_string_named(
        &self,
        var_names: &[String],
        denom: Denominator,
    ) -> String {
        self.canonical_string(var_names, denom, |i| format!("d({})", var_names[i]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn pv_gen(i: usize) -> Polyvector {
        Polyvector::generator(2, i)
    }

    #[test]
    fn blade_wedge_signs() {
        let b01 = Blade(vec![0, 1]);
        assert_eq!(Blade::single(0).wedge(&Blade::single(1)), Some((b01.clone(), 1)));
        assert_eq!(Blade::single(1).wedge(&Blade::single(0)), Some((b01.clone(), -1)));
        assert_eq!(Blade::single(0).wedge(&Blade::single(0)), None);
        // (0,2) wedge (1,3): moving 1 past 2 costs one crossing.
        let (b, s) = Blade(vec![0, 2]).wedge(&Blade(vec![1, 3])).unwrap();
        assert_eq!(b, Blade(vec![0, 1, 2, 3]));
        assert_eq!(s, -1);
    }

    #[test]
    fn from_indices_and_complement() {
        let (b, s) = Blade::from_indices(&[2, 0, 1]).unwrap();
        assert_eq!(b, Blade(vec![0, 1, 2]));
        assert_eq!(s, 1); // cyclic permutation of three elements is even
        assert_eq!(Blade::from_indices(&[1, 0]).unwrap().1, -1);
        assert!(Blade::from_indices(&[1, 1]).is_none());
        assert_eq!(Blade(vec![1]).complement(3), Blade(vec![0, 2]));
        assert_eq!(Blade::empty().complement(2), Blade(vec![0, 1]));
    }

    #[test]
    fn wedge_anticommutes_on_generators() {
        let xy = pv_gen(0).wedge(&pv_gen(1), None);
        let yx = pv_gen(1).wedge(&pv_gen(0), None);
        assert_eq!(yx, xy.neg());
        assert!(pv_gen(0).wedge(&pv_gen(0), None).is_zero());
    }

    #[test]
    fn even_degree_commutes_with_everything() {
        let a = Polyvector::generator(3, 0).wedge(&Polyvector::generator(3, 1), None);
        let v = Polyvector::generator(3, 2);
        assert_eq!(a.wedge(&v, None), v.wedge(&a, None));
    }

    #[test]
    fn scalar_part_and_degrees() {
        let one = LocalizedElement::one(2);
        let mut u = Polyvector::from_coeff(one.clone());
        u.add_term(Blade(vec![0, 1]), one.clone(), None);
        assert_eq!(u.scalar_part(), one);
        assert_eq!(u.homogeneous_degree(), None);
        assert_eq!(u.degree_parts().len(), 2);
        assert_eq!(u.degree_part(2).num_terms(), 1);
    }

    #[test]
    fn canonical_strings() {
        let names: Vec<String> = ["x", "y"].iter().map(|s| s.to_string()).collect();
        let x = Polynomial::variable(2, 0);
        let y = Polynomial::variable(2, 1);
        let mut u = Polyvector::zero(2);
        u.add_term(
            Blade(vec![0, 1]),
            LocalizedElement::from_poly(x.sub(&y)),
            None,
        );
        u.add_term(Blade(vec![0]), LocalizedElement::constant(2, rat(2)), None);
        assert_eq!(
            u.to_canonical_string_named(&names, &names, None),
            "(x - y)*@x^@y + 2*@x"
        );
        let mut w = Polyvector::zero(2);
        w.add_term(Blade(vec![0, 1]), LocalizedElement::constant(2, rat(-1)), None);
        assert_eq!(w.to_canonical_string_named(&names, &names, None), "-1*@x^@y");
        let mut f = DifferentialForm::zero(2);
        f.add_term(Blade(vec![0]), LocalizedElement::from_poly(y), None);
        f.add_term(Blade(vec![1]), LocalizedElement::constant(2, rat(1)), None);
        assert_eq!(f.to_canonical_string_named(&names, None), "y*d(x) + d(y)");
        assert_eq!(Polyvector::zero(2).to_canonical_string_named(&names, &names, None), "0");
    }
}
