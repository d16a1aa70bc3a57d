//! Koszul complexes over polynomial rings, with exact truncated
//! cohomology bookkeeping.
//!
//! The complex of a generator list `f_1..f_r` lives on blades over `r`
//! formal slots with polynomial coefficients; the differential contracts
//! a blade with the list, `d(s_{i_1}^...^s_{i_p}) = sum_j (-1)^{j-1}
//! f_{i_j} (blade minus slot j)`, and squares to zero identically.  The
//! wedge product makes the complex a commutative differential graded
//! algebra.
//!
//! Cohomology is computed by exact linear algebra after truncating at a
//! total-degree cap.  Each basis element `m * blade` is weighted by
//! `deg m` plus the degrees of the generators in its blade, so the
//! differential never raises the weight; the cap-`t` pieces form honest
//! finite subcomplexes and every reported dimension is the exact
//! cohomology of such a subcomplex.  For inhomogeneous generators a
//! kernel class near the cap may die only above it, so cells above
//! `cap - max deg f_i` are flagged as boundary-affected.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::context::Context;
use crate::monomial::{monomials_up_to, Monomial, MonomialOrder};
use crate::poly::{LocalizedElement, Polynomial};
use crate::polyvector::{Blade, Polyvector};
use crate::rat::Rat;
use crate::{Error, Result};

/// A Koszul complex: the ambient variable count and the generator list.
/// Chain elements are `Polyvector`s whose blade indices are slots
/// `0..r-1` and whose coefficients are plain polynomials.
#[derive(Clone, Debug)]
pub struct KoszulComplex {
    n_vars: usize,
    gens: Vec<Polynomial>,
}

pub fn build_koszul(ctx: &Context, gens: Vec<Polynomial>) -> Result<KoszulComplex> {
    if gens.is_empty() {
        return Err(Error::InvalidInput("a Koszul complex needs at least one generator".into()));
    }
    for g in &gens {
        if g.n_vars() != ctx.n_vars() {
            return Err(Error::ContextMismatch(format!(
                "generator in {} variables, context has {}",
                g.n_vars(),
                ctx.n_vars()
            )));
        }
    }
    Ok(KoszulComplex { n_vars: ctx.n_vars(), gens })
}

impl KoszulComplex {
    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    /// Number of slots.
    pub fn r(&self) -> usize {
        self.gens.len()
    }

    /// Names used when rendering chain elements: `s1..sr`.
    pub fn slot_names(&self) -> Vec<String> {
        (1..=self.r()).map(|i| format!("s{i}")).collect()
    }

    pub fn check_element(&self, u: &Polyvector) -> Result<()> {
        if u.n_vars() != self.n_vars {
            return Err(Error::ContextMismatch(format!(
                "element in {} variables, complex in {}",
                u.n_vars(),
                self.n_vars
            )));
        }
        for (blade, a) in u.iter() {
            if let Some(&i) = blade.0.iter().find(|&&i| i >= self.r()) {
                return Err(Error::ContextMismatch(format!(
                    "slot index {i} out of range for {} generators",
                    self.r()
                )));
            }
            if a.power != 0 {
                return Err(Error::ContextMismatch(
                    "Koszul chain coefficients must be polynomials".into(),
                ));
            }
        }
        Ok(())
    }

    /// The contraction differential; lowers blade length by one.
    pub fn differential(&self, u: &Polyvector) -> Result<Polyvector> {
        self.check_element(u)?;
        let mut out = Polyvector::zero(self.n_vars);
        for (blade, a) in u.iter() {
            for (m, &slot) in blade.0.iter().enumerate() {
                if self.gens[slot].is_zero() {
                    continue;
                }
                let mut coeff = a.mul_poly(&self.gens[slot], None);
                if m % 2 != 0 {
                    coeff = coeff.neg();
                }
                out.add_term(blade.without(m), coeff, None);
            }
        }
        Ok(out)
    }

    /// All length-`p` blades over the slots, lexicographically.
    pub fn basis_blades(&self, p: usize) -> Vec<Blade> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(p);
        combinations(self.r(), p, 0, &mut cur, &mut out);
        out
    }

    /// Symbolic proof obligation: `d(d(blade)) = 0` for every basis blade.
    pub fn d_squared_vanishes(&self) -> Result<bool> {
        for p in 2..=self.r() {
            for blade in self.basis_blades(p) {
                let mut u = Polyvector::zero(self.n_vars);
                u.add_term(blade, LocalizedElement::one(self.n_vars), None);
                let twice = self.differential(&self.differential(&u)?)?;
                if !twice.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Weight of a blade: the sum of the degrees of its generators.
    fn blade_weight(&self, blade: &Blade) -> u32 {
        blade.0.iter().map(|&i| self.gens[i].total_degree().unwrap_or(0)).sum()
    }
}

fn combinations(r: usize, p: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Blade>) {
    if cur.len() == p {
        out.push(Blade(cur.clone()));
        return;
    }
    for i in start..r {
        cur.push(i);
        combinations(r, p, i + 1, cur, out);
        cur.pop();
    }
}

/// One (cohomological degree, total degree) cell of a truncated report.
/// `chain_dim` is the dimension of the weight-`<= t` chain piece,
/// `rank_out`/`rank_in` the ranks of the differential leaving/entering
/// it, and `cohomology_dim = chain_dim - rank_out - rank_in` the exact
/// cohomology of the truncated subcomplex at that spot.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncatedCell {
    pub chain_dim: usize,
    pub rank_out: usize,
    pub rank_in: usize,
    pub cohomology_dim: usize,
    /// False above the reliable bound, where inhomogeneous generators
    /// may still cancel a class using chains beyond the cap.
    pub reliable: bool,
}

/// Exact rank data of a Koszul complex truncated at a total-degree cap.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncatedComplexReport {
    pub degree_cap: u32,
    /// `degree_cap - max_i deg f_i`; cells at total degree beyond this
    /// are boundary-affected.
    pub reliable_bound: i64,
    /// Keyed by cohomological degree (`-p`), then by total degree.
    pub cells: BTreeMap<i64, BTreeMap<u32, TruncatedCell>>,
}

impl TruncatedComplexReport {
    pub fn cell(&self, cohom_degree: i64, total_degree: u32) -> Option<&TruncatedCell> {
        self.cells.get(&cohom_degree)?.get(&total_degree)
    }

    /// True when every strictly negative cohomological degree reports
    /// zero cohomology in every reliable cell.
    pub fn negative_reliable_acyclic(&self) -> bool {
        self.cells.iter().filter(|(&d, _)| d < 0).all(|(_, row)| {
            row.values().all(|cell| !cell.reliable || cell.cohomology_dim == 0)
        })
    }
}

/// Incremental exact row reduction; tracks the rank of a growing set of
/// vectors.
struct Echelon {
    rows: Vec<(usize, Vec<Rat>)>,
}

impl Echelon {
    fn new() -> Self {
        Echelon { rows: Vec::new() }
    }

    /// Inserts a vector; returns true when it enlarges the span.
    fn insert(&mut self, mut v: Vec<Rat>) -> bool {
        for (pivot, row) in &self.rows {
            if !v[*pivot].is_zero() {
                let factor = v[*pivot].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x = &*x - &factor * r;
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => false,
            Some(pivot) => {
                let lead = v[pivot].clone();
                for x in v.iter_mut() {
                    *x = &*x / &lead;
                }
                self.rows.push((pivot, v));
                true
            }
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

pub fn truncated_cohomology(cplx: &KoszulComplex, degree_cap: u32) -> TruncatedComplexReport {
    let r = cplx.r();
    let n = cplx.n_vars();
    let order = MonomialOrder::degrevlex();
    let max_gen_deg =
        cplx.gens.iter().filter_map(|g| g.total_degree()).max().unwrap_or(0);
    let reliable_bound = degree_cap as i64 - max_gen_deg as i64;

    // Weighted bases per exterior degree, ascending by weight.
    type BasisElt = (Blade, Monomial, u32);
    let mut bases: Vec<Vec<BasisElt>> = Vec::with_capacity(r + 1);
    let mut index: Vec<BTreeMap<(Blade, Monomial), usize>> = Vec::with_capacity(r + 1);
    for p in 0..=r {
        let mut basis: Vec<BasisElt> = Vec::new();
        for blade in cplx.basis_blades(p) {
            let w = cplx.blade_weight(&blade);
            if w > degree_cap {
                continue;
            }
            for m in monomials_up_to(n, degree_cap - w, &order) {
                let weight = w + m.degree();
                basis.push((blade.clone(), m, weight));
            }
        }
        basis.sort_by(|a, b| a.2.cmp(&b.2).then_with(|| (&a.0, &a.1).cmp(&(&b.0, &b.1))));
        let map = basis
            .iter()
            .enumerate()
            .map(|(i, (blade, m, _))| ((blade.clone(), m.clone()), i))
            .collect();
        bases.push(basis);
        index.push(map);
    }

    // ranks_out[p][t]: rank of d restricted to the weight-<= t part of
    // exterior degree p.  The image never raises the weight, so those
    // ranks are exact subcomplex data.
    let mut ranks_out: Vec<Vec<usize>> = vec![vec![0; degree_cap as usize + 1]; r + 1];
    for p in 1..=r {
        let target_len = bases[p - 1].len();
        let mut ech = Echelon::new();
        let mut col_iter = bases[p].iter().peekable();
        for t in 0..=degree_cap {
            while let Some((blade, m, w)) = col_iter.peek() {
                if *w > t {
                    break;
                }
                let mut col = vec![Rat::zero(); target_len];
                for (k, &slot) in blade.0.iter().enumerate() {
                    let g = &cplx.gens[slot];
                    if g.is_zero() {
                        continue;
                    }
                    let tgt = blade.without(k);
                    for (gm, gc) in g.iter() {
                        let idx = index[p - 1][&(tgt.clone(), m.mul(gm))];
                        let contrib = if k % 2 != 0 { -gc.clone() } else { gc.clone() };
                        col[idx] = &col[idx] + &contrib;
                    }
                }
                ech.insert(col);
                col_iter.next();
            }
            ranks_out[p][t as usize] = ech.rank();
        }
    }

    let mut cells: BTreeMap<i64, BTreeMap<u32, TruncatedCell>> = BTreeMap::new();
    for p in 0..=r {
        let mut row = BTreeMap::new();
        for t in 0..=degree_cap {
            let chain_dim = bases[p].iter().filter(|(_, _, w)| *w <= t).count();
            let rank_out = ranks_out[p][t as usize];
            let rank_in = if p < r { ranks_out[p + 1][t as usize] } else { 0 };
            row.insert(
                t,
                TruncatedCell {
                    chain_dim,
                    rank_out,
                    rank_in,
                    cohomology_dim: chain_dim - rank_out - rank_in,
                    reliable: (t as i64) <= reliable_bound,
                },
            );
        }
        cells.insert(-(p as i64), row);
    }
    TruncatedComplexReport { degree_cap, reliable_bound, cells }
}
