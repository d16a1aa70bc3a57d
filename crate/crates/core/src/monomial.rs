//! Monomials as exponent vectors, and the three classical monomial orders.
//!
//! A `Monomial` stores one exponent per variable; the number of variables is
//! fixed by the surrounding context and never inferred.  The derived `Ord`
//! on `Monomial` is structural (degree-blind) and exists only to give maps
//! deterministic iteration; all algebraic comparisons go through
//! `MonomialOrder::cmp`.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    /// The constant monomial in `n` variables.
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    /// The single variable `x_i`.
    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn n_vars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise quotient, `None` when `other` does not divide `self`.
    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.0.len(), other.0.len());
        let mut e = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return None;
            }
            e.push(a - b);
        }
        Some(Monomial(e))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// True when the monomial is a pure power of variable `i` (including
    /// exponent zero, i.e. the constant monomial).
    pub fn is_pure_power_of(&self, i: usize) -> bool {
        self.0.iter().enumerate().all(|(j, &e)| j == i || e == 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    DegRevLex,
    DegLex,
    Lex,
}

/// A monomial order: one of the classical kinds together with an optional
/// variable precedence.  `precedence[0]` is the most significant variable
/// index; `None` means the natural order `0, 1, ..., n-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub precedence: Option<Vec<usize>>,
}

impl Default for MonomialOrder {
    fn default() -> Self {
        MonomialOrder::degrevlex()
    }
}

impl MonomialOrder {
    pub fn degrevlex() -> Self {
        MonomialOrder { kind: OrderKind::DegRevLex, precedence: None }
    }

    pub fn deglex() -> Self {
        MonomialOrder { kind: OrderKind::DegLex, precedence: None }
    }

    pub fn lex() -> Self {
        MonomialOrder { kind: OrderKind::Lex, precedence: None }
    }

    pub fn with_precedence(mut self, prec: Vec<usize>) -> Self {
        self.precedence = Some(prec);
        self
    }

    /// Variable index occupying significance position `k`.
    fn at(&self, k: usize) -> usize {
        match &self.precedence {
            Some(p) => p[k],
            None => k,
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.0.len(), b.0.len());
        let n = a.0.len();
        match self.kind {
            OrderKind::Lex => self.cmp_lex(a, b, n),
            OrderKind::DegLex => a
                .degree()
                .cmp(&b.degree())
                .then_with(|| self.cmp_lex(a, b, n)),
            OrderKind::DegRevLex => a.degree().cmp(&b.degree()).then_with(|| {
                for k in (0..n).rev() {
                    let i = self.at(k);
                    match a.0[i].cmp(&b.0[i]) {
                        Ordering::Equal => continue,
                        // Smaller exponent in the least significant
                        // differing variable wins under revlex.
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }),
        }
    }

    fn cmp_lex(&self, a: &Monomial, b: &Monomial, n: usize) -> Ordering {
        for k in 0..n {
            let i = self.at(k);
            match a.0[i].cmp(&b.0[i]) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    /// Maximum of two monomials under this order.
    pub fn max<'a>(&self, a: &'a Monomial, b: &'a Monomial) -> &'a Monomial {
        if self.cmp(a, b) == Ordering::Less {
            b
        } else {
            a
        }
    }
}

/// All monomials in `n` variables of total degree exactly `d`, ascending in
/// the given order.
pub fn monomials_of_degree(n: usize, d: u32, order: &MonomialOrder) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    gen_fixed_degree(n, d, 0, &mut cur, &mut out);
    out.sort_by(|a, b| order.cmp(a, b));
    out
}

/// All monomials in `n` variables of total degree at most `d`, ascending in
/// the given order (degree-compatible orders therefore list by degree).
pub fn monomials_up_to(n: usize, d: u32, order: &MonomialOrder) -> Vec<Monomial> {
    let mut out = Vec::new();
    for k in 0..=d {
        let mut cur = vec![0u32; n];
        gen_fixed_degree(n, k, 0, &mut cur, &mut out);
    }
    out.sort_by(|a, b| order.cmp(a, b));
    out
}

fn gen_fixed_degree(n: usize, rem: u32, pos: usize, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if pos == n {
        if rem == 0 {
            out.push(Monomial(cur.clone()));
        }
        return;
    }
    if pos + 1 == n {
        cur[pos] = rem;
        out.push(Monomial(cur.clone()));
        cur[pos] = 0;
        return;
    }
    for e in 0..=rem {
        cur[pos] = e;
        gen_fixed_degree(n, rem - e, pos + 1, cur, out);
    }
    cur[pos] = 0;
}
