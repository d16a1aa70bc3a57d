//! Truncated complexes on the symmetric coalgebra of a shifted graded
//! Lie algebra, for presentations concentrated in degrees `{1, 2}` or
//! `{0, 1}`.
//!
//! After the shift, degree-1 (resp. degree-2) elements contribute even
//! (resp. odd) generators in the first window, and degree-0 (resp.
//! degree-1) elements contribute odd (resp. even) generators in the
//! second.  A basis element is a monomial in the even generators times
//! a blade in the odd ones, and the differential is the coderivation
//! extending `d` and the bracket.  The even part is tracked in the
//! divided-power basis `x^(mu) = x^mu / mu!`, which makes every
//! structure coefficient appear with multiplicity one and turns the
//! `{1, 2}` matrices into literal transposes of the generator-complex
//! matrices for the Maurer-Cartan equations.
//!
//! Truncation keeps symmetric degrees up to a cutoff.  In the `{1, 2}`
//! window the differential lowers symmetric degree, so every stored
//! matrix is exact; in the `{0, 1}` window it can raise it by one, so
//! components above the cutoff are dropped and consumers must stay in
//! the range the truncation leaves exact.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::artinian::ArtinianScalar;
use crate::dgla::GradedLieAlgebra;
use crate::groebner::quotient_basis_n;
use crate::matrix::QMatrix;
use crate::mc::mc_equations;
use crate::monomial::{monomials_of_degree, Monomial, MonomialOrder};
use crate::polyvector::Blade;
use crate::rat::{neg_one_pow, Rat};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DegreeWindow {
    /// Degrees `{1, 2}`: even generators from degree 1, odd from degree 2.
    OneTwo,
    /// Degrees `{0, 1}`: odd generators from degree 0, even from degree 1.
    ZeroOne,
}

/// A monomial in the even generators times a blade in the odd ones.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CocomBasisElt {
    pub even: Monomial,
    pub odd: Blade,
}

pub struct CocomComplex {
    pub window: DegreeWindow,
    pub cutoff: usize,
    /// Cohomological degrees, ascending; `{1, 2}` occupies `0..=w` and
    /// `{0, 1}` occupies `-w..=0`, for `w` the odd generator count.
    degrees: Vec<i64>,
    bases: BTreeMap<i64, Vec<CocomBasisElt>>,
    index: BTreeMap<i64, BTreeMap<CocomBasisElt, usize>>,
    /// Keyed by source degree; maps into the next degree.
    matrices: BTreeMap<i64, QMatrix>,
}

fn blades_of_size(n: usize, p: usize) -> Vec<Blade> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    fn go(n: usize, p: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Blade>) {
        if cur.len() == p {
            out.push(Blade(cur.clone()));
            return;
        }
        for i in start..n {
            cur.push(i);
            go(n, p, i + 1, cur, out);
            cur.pop();
        }
    }
    go(n, p, 0, &mut cur, &mut out);
    out
}

/// Wedges generator `i` onto the front of a sorted blade: `None` on a
/// repeat, otherwise the sorted blade and the sign of sorting `i` in.
fn insert_odd(blade: &Blade, i: usize) -> Option<(Blade, Rat)> {
    if blade.0.contains(&i) {
        return None;
    }
    let smaller = blade.0.iter().filter(|&&j| j < i).count();
    let mut v = blade.0.clone();
    v.push(i);
    v.sort_unstable();
    Some((Blade(v), neg_one_pow(smaller as i64)))
}

fn bump(m: &Monomial, k: usize, by: i64) -> Monomial {
    let mut v = m.0.clone();
    v[k] = (v[k] as i64 + by) as u32;
    Monomial(v)
}

pub fn build_cocom_complex(g: &GradedLieAlgebra, cutoff: usize) -> Result<CocomComplex> {
    build_cocom_complex_capped(g, cutoff, None)
}

/// Like `build_cocom_complex`, but keeps only the pieces of
/// cohomological degree up to `delta_cap`.  The bottom of the complex is
/// all the degree-zero cohomology needs, and skipping the higher
/// exterior powers matters when the odd part is large.
pub fn build_cocom_complex_capped(
    g: &GradedLieAlgebra,
    cutoff: usize,
    delta_cap: Option<i64>,
) -> Result<CocomComplex> {
    let window = if g.concentrated_in(&[1, 2]) {
        DegreeWindow::OneTwo
    } else if g.concentrated_in(&[0, 1]) {
        DegreeWindow::ZeroOne
    } else {
        return Err(Error::Unsupported(
            "coalgebra complexes need a presentation concentrated in degrees {1, 2} or {0, 1}"
                .into(),
        ));
    };
    let (even_deg, odd_deg) = match window {
        DegreeWindow::OneTwo => (1, 2),
        DegreeWindow::ZeroOne => (1, 0),
    };
    let n_even = g.dim(even_deg);
    let n_odd = g.dim(odd_deg);
    let order = MonomialOrder::degrevlex();
    let top = match window {
        DegreeWindow::OneTwo => match delta_cap {
            Some(cap) => (n_odd as i64).min(cap.max(0)),
            None => n_odd as i64,
        },
        DegreeWindow::ZeroOne => 0,
    };
    let degrees: Vec<i64> = match window {
        DegreeWindow::OneTwo => (0..=top).collect(),
        DegreeWindow::ZeroOne => (-(n_odd as i64)..=0).collect(),
    };
    let mut bases: BTreeMap<i64, Vec<CocomBasisElt>> = BTreeMap::new();
    let mut index: BTreeMap<i64, BTreeMap<CocomBasisElt, usize>> = BTreeMap::new();
    for &delta in &degrees {
        let p = delta.unsigned_abs() as usize;
        let mut list = Vec::new();
        for a in 0..=cutoff as u32 {
            for blade in blades_of_size(n_odd, p) {
                for mono in monomials_of_degree(n_even, a, &order) {
                    list.push(CocomBasisElt { even: mono, odd: blade.clone() });
                }
            }
        }
        let map: BTreeMap<CocomBasisElt, usize> =
            list.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        index.insert(delta, map);
        bases.insert(delta, list);
    }
    let mut matrices = BTreeMap::new();
    for &delta in &degrees {
        if !bases.contains_key(&(delta + 1)) {
            continue;
        }
        let src = &bases[&delta];
        let rows = bases[&(delta + 1)].len();
        let target_index = &index[&(delta + 1)];
        let mut m = QMatrix::zero(rows, src.len());
        for (col, elt) in src.iter().enumerate() {
            for (target, coeff) in differential_of(g, window, elt) {
                match target_index.get(&target) {
                    Some(&row) => {
                        let cur = m.get(row, col).clone();
                        m.set(row, col, cur + coeff);
                    }
                    None => {
                        // Only the symmetric-degree raise of the {0, 1}
                        // window can leave the stored range.
                        debug_assert!(
                            window == DegreeWindow::ZeroOne
                                && target.even.degree() as usize > cutoff
                        );
                    }
                }
            }
        }
        matrices.insert(delta, m);
    }
    Ok(CocomComplex {
        window,
        cutoff,
        degrees,
        bases,
        index,
        matrices,
    })
}

/// The coderivation applied to one basis element, as a sparse target map.
/// Signs: extracting the odd factor at 0-based blade position `m` costs
/// `(-1)^m`, an odd pair at positions `m < m'` costs `(-1)^(m+m')`, even
/// factors extract freely, and odd outputs wedge in through `insert_odd`.
/// Divided-power bookkeeping: consuming distinct even factors costs 1, a
/// repeated even factor costs 1/2, and producing `x_s` into `x^(mu)`
/// costs `mu_s + 1`.
fn differential_of(
    g: &GradedLieAlgebra,
    window: DegreeWindow,
    elt: &CocomBasisElt,
) -> BTreeMap<CocomBasisElt, Rat> {
    let mut out: BTreeMap<CocomBasisElt, Rat> = BTreeMap::new();
    let mut add = |target: CocomBasisElt, c: Rat| {
        if c.is_zero() {
            return;
        }
        let slot = out.entry(target).or_insert_with(Rat::zero);
        *slot += c;
    };
    let mu = &elt.even;
    let blade = &elt.odd;
    let n_even = mu.0.len();
    match window {
        DegreeWindow::OneTwo => {
            // d consumes one even generator and wedges in its image.
            for k in 0..n_even {
                if mu.0[k] == 0 {
                    continue;
                }
                let image = g.d_basis(1, k);
                let shrunk = bump(mu, k, -1);
                for (i, c) in image.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    if let Some((target, sign)) = insert_odd(blade, i) {
                        add(CocomBasisElt { even: shrunk.clone(), odd: target }, c.clone() * sign);
                    }
                }
            }
            // The bracket consumes an even pair.
            for k in 0..n_even {
                for l in k..n_even {
                    let enough = if k == l { mu.0[k] >= 2 } else { mu.0[k] >= 1 && mu.0[l] >= 1 };
                    if !enough {
                        continue;
                    }
                    let image = g.bracket_basis(1, k, 1, l);
                    let factor = if k == l {
                        Rat::new(1.into(), 2.into())
                    } else {
                        Rat::from_integer(1.into())
                    };
                    let shrunk = bump(&bump(mu, k, -1), l, -1);
                    for (i, c) in image.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        if let Some((target, sign)) = insert_odd(blade, i) {
                            add(
                                CocomBasisElt { even: shrunk.clone(), odd: target },
                                c.clone() * factor.clone() * sign,
                            );
                        }
                    }
                }
            }
        }
        DegreeWindow::ZeroOne => {
            for pos in 0..blade.0.len() {
                let j = blade.0[pos];
                let pos_sign = neg_one_pow(pos as i64);
                let reduced = blade.without(pos);
                // d of the extracted odd generator multiplies in.
                let image = g.d_basis(0, j);
                for (s, c) in image.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let grown = bump(mu, s, 1);
                    let produce = Rat::from_integer((mu.0[s] as i64 + 1).into());
                    add(
                        CocomBasisElt { even: grown, odd: reduced.clone() },
                        pos_sign.clone() * c.clone() * produce,
                    );
                }
                // Bracket of the odd generator with one even factor.
                for k in 0..n_even {
                    if mu.0[k] == 0 {
                        continue;
                    }
                    let image = g.bracket_basis(0, j, 1, k);
                    let shrunk = bump(mu, k, -1);
                    for (s, c) in image.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let grown = bump(&shrunk, s, 1);
                        let produce = Rat::from_integer((shrunk.0[s] as i64 + 1).into());
                        add(
                            CocomBasisElt { even: grown, odd: reduced.clone() },
                            pos_sign.clone() * c.clone() * produce,
                        );
                    }
                }
            }
            // Bracket of an odd pair.
            for pos in 0..blade.0.len() {
                for pos2 in (pos + 1)..blade.0.len() {
                    let (j, j2) = (blade.0[pos], blade.0[pos2]);
                    let sign = neg_one_pow((pos + pos2) as i64);
                    let reduced = blade.without(pos2).without(pos);
                    let image = g.bracket_basis(0, j, 0, j2);
                    for (i, c) in image.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        if let Some((target, wedge_sign)) = insert_odd(&reduced, i) {
                            add(
                                CocomBasisElt { even: mu.clone(), odd: target },
                                sign.clone() * c.clone() * wedge_sign,
                            );
                        }
                    }
                }
            }
        }
    }
    out
}

impl CocomComplex {
    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.bases.iter().map(|(&d, b)| (d, b.len())).collect()
    }

    pub fn basis(&self, delta: i64) -> &[CocomBasisElt] {
        self.bases.get(&delta).map_or(&[], |b| b.as_slice())
    }

    pub fn matrix(&self, delta: i64) -> Option<&QMatrix> {
        self.matrices.get(&delta)
    }

    /// Checks `d . d = 0` on every composable pair, restricted to source
    /// columns the truncation leaves exact.
    pub fn d_squared_ok(&self) -> bool {
        for &delta in &self.degrees {
            let (Some(first), Some(second)) = (self.matrices.get(&delta), self.matrices.get(&(delta + 1)))
            else {
                continue;
            };
            let composite = second.mul(first);
            let safe = match self.window {
                DegreeWindow::OneTwo => self.cutoff,
                DegreeWindow::ZeroOne => self.cutoff.saturating_sub(2),
            };
            for (col, elt) in self.bases[&delta].iter().enumerate() {
                if elt.even.degree() as usize > safe {
                    continue;
                }
                for row in 0..composite.rows() {
                    if !composite.get(row, col).is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Dimensions of the symmetric-degree filtration of `H^0`, reported
    /// as successive differences: entry `k` is the rank contributed at
    /// degree exactly `k`.  In the `{1, 2}` window `H^0` is the kernel
    /// at the bottom of the complex; in `{0, 1}` it is the cokernel at
    /// the top, filtered compatibly.
    pub fn h0_filtration_dims(&self, upto: usize) -> Vec<usize> {
        assert!(upto <= self.cutoff, "filtration range exceeds the cutoff");
        let basis0 = &self.bases[&0];
        let degree_of = |i: usize| basis0[i].even.degree() as usize;
        let mut dims = Vec::with_capacity(upto + 1);
        match self.window {
            DegreeWindow::OneTwo => {
                let fallback = QMatrix::zero(0, basis0.len());
                let m = self.matrices.get(&0).unwrap_or(&fallback);
                let mut ech = Echelon::new();
                let mut count = 0usize;
                let mut prev = 0usize;
                for k in 0..=upto {
                    for col in 0..basis0.len() {
                        if degree_of(col) == k {
                            count += 1;
                            let v: Vec<Rat> =
                                (0..m.rows()).map(|r| m.get(r, col).clone()).collect();
                            ech.insert(v);
                        }
                    }
                    let filt = count - ech.rank();
                    dims.push(filt - prev);
                    prev = filt;
                }
            }
            DegreeWindow::ZeroOne => {
                let m = match self.matrices.get(&-1) {
                    Some(m) => m.clone(),
                    None => QMatrix::zero(basis0.len(), 0),
                };
                let mut prev = 0usize;
                for k in 0..=upto {
                    let rows: Vec<usize> =
                        (0..basis0.len()).filter(|&i| degree_of(i) <= k).collect();
                    let count = rows.len();
                    let rank = m.select_rows(&rows).rank();
                    let filt = count - rank;
                    dims.push(filt - prev);
                    prev = filt;
                }
            }
        }
        dims
    }

    /// Applies the bottom differential of the `{1, 2}` window to an
    /// element with Artinian coefficients in the divided-power basis.
    pub fn apply_artinian_h0(
        &self,
        coords: &BTreeMap<Monomial, ArtinianScalar>,
        order: usize,
    ) -> Result<Vec<(CocomBasisElt, ArtinianScalar)>> {
        if self.window != DegreeWindow::OneTwo {
            return Err(Error::Unsupported(
                "Artinian application is defined for the {1, 2} window".into(),
            ));
        }
        let Some(m) = self.matrices.get(&0) else {
            return Ok(Vec::new());
        };
        let index0 = &self.index[&0];
        let mut out = vec![ArtinianScalar::zero(order); m.rows()];
        for (mono, value) in coords {
            let key = CocomBasisElt { even: mono.clone(), odd: Blade::empty() };
            let col = *index0.get(&key).ok_or_else(|| {
                Error::InvalidInput(format!(
                    "coefficient of symmetric degree {} exceeds the cutoff {}",
                    mono.degree(),
                    self.cutoff
                ))
            })?;
            for (row, slot) in out.iter_mut().enumerate() {
                let c = m.get(row, col);
                if !c.is_zero() {
                    *slot = slot.add(&value.scale(c));
                }
            }
        }
        let basis1 = &self.bases[&1];
        Ok(basis1
            .iter()
            .zip(out)
            .filter(|(_, v)| !v.is_zero())
            .map(|(e, v)| (e.clone(), v))
            .collect())
    }
}

/// Row echelon accumulator over the rationals.
struct Echelon {
    rows: Vec<Vec<Rat>>,
}

impl Echelon {
    fn new() -> Self {
        Echelon { rows: Vec::new() }
    }

    /// Reduces `v` against the accumulated rows; keeps it when it adds
    /// rank.  Returns whether the rank grew.
    fn insert(&mut self, mut v: Vec<Rat>) -> bool {
        for row in &self.rows {
            let pivot = row.iter().position(|x| !x.is_zero()).unwrap();
            if v[pivot].is_zero() {
                continue;
            }
            let factor = v[pivot].clone() / row[pivot].clone();
            for (a, b) in v.iter_mut().zip(row) {
                *a = a.clone() - factor.clone() * b.clone();
            }
        }
        if v.iter().all(|x| x.is_zero()) {
            return false;
        }
        self.rows.push(v);
        true
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Side-by-side dimension counts for the degree-zero cohomology of a
/// `{1, 2}` presentation: the local ring of the equation scheme at the
/// origin, degree by degree along its maximal-ideal filtration, against
/// the kernel filtration of the truncated complex.
#[derive(Clone, Debug, Serialize)]
pub struct H0Comparison {
    pub degree_cap: usize,
    pub local_ring_dims: Vec<usize>,
    pub h0_dims: Vec<usize>,
    pub agree: bool,
}

pub fn compare_h0_local_ring(g: &GradedLieAlgebra, degree_cap: usize) -> Result<H0Comparison> {
    if !g.concentrated_in(&[1, 2]) {
        return Err(Error::Unsupported(
            "the local-ring comparison needs a presentation concentrated in degrees {1, 2}".into(),
        ));
    }
    let m = g.dim(1);
    let local_ring_dims = if m == 0 {
        let mut v = vec![0usize; degree_cap + 1];
        v[0] = 1;
        v
    } else {
        let scheme = mc_equations(g);
        let order = MonomialOrder::degrevlex();
        let nonzero: Vec<_> = scheme.equations.iter().filter(|f| !f.is_zero()).cloned().collect();
        let mut totals = Vec::with_capacity(degree_cap + 1);
        for k in 0..=degree_cap {
            // Quotient by the equations plus all monomials of degree k+1:
            // its dimension is the k-th filtration step of the local ring.
            let mut gens = nonzero.clone();
            for mono in monomials_of_degree(m, k as u32 + 1, &order) {
                gens.push(crate::poly::Polynomial::monomial(mono, Rat::from_integer(1.into())));
            }
            let qb = quotient_basis_n(m, &gens, &order, k as u32);
            let dim = qb.dimension.expect("quotient contains a power of every variable");
            totals.push(dim);
        }
        let mut dims = Vec::with_capacity(degree_cap + 1);
        let mut prev = 0usize;
        for t in totals {
            dims.push(t - prev);
            prev = t;
        }
        dims
    };
    let complex = build_cocom_complex(g, degree_cap)?;
    let h0_dims = complex.h0_filtration_dims(degree_cap);
    let agree = local_ring_dims == h0_dims;
    Ok(H0Comparison { degree_cap, local_ring_dims, h0_dims, agree })
}

/// Side-by-side dimension counts for a `{0, 1}` presentation: invariant
/// polynomial functions under the geometric vector fields of the
/// degree-0 part, against the cokernel filtration of the complex.
#[derive(Clone, Debug, Serialize)]
pub struct InvariantsComparison {
    pub degree_cap: usize,
    pub invariant_dims: Vec<usize>,
    pub h0_dims: Vec<usize>,
    pub agree: bool,
}

pub fn compare_h0_invariants(g: &GradedLieAlgebra, degree_cap: usize) -> Result<InvariantsComparison> {
    if !g.concentrated_in(&[0, 1]) {
        return Err(Error::Unsupported(
            "the invariants comparison needs a presentation concentrated in degrees {0, 1}".into(),
        ));
    }
    let u = g.dim(0);
    let v = g.dim(1);
    let order = MonomialOrder::degrevlex();
    // Coordinate functions y_r are dual to the degree-1 basis; the vector
    // field of u sends y_r to (du)_r plus the linear part read off the
    // bracket, and extends as a derivation.
    let mut basis_monos: Vec<Monomial> = Vec::new();
    for a in 0..=degree_cap as u32 {
        basis_monos.extend(monomials_of_degree(v, a, &order));
    }
    let mono_index: BTreeMap<Monomial, usize> =
        basis_monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let dim_total = basis_monos.len();
    let mut fields = Vec::with_capacity(u);
    for j in 0..u {
        let du = g.d_basis(0, j);
        // linear[r][s]: coefficient of y_s in the image of y_r.
        let mut linear = vec![vec![Rat::zero(); v]; v];
        for s in 0..v {
            let col = g.bracket_basis(0, j, 1, s);
            for r in 0..v {
                linear[r][s] = col[r].clone();
            }
        }
        let mut t = QMatrix::zero(dim_total, dim_total);
        for (col, mono) in basis_monos.iter().enumerate() {
            for r in 0..v {
                if mono.0[r] == 0 {
                    continue;
                }
                let mult = Rat::from_integer((mono.0[r] as i64).into());
                let shrunk = bump(mono, r, -1);
                // Constant part of the image of y_r.
                if !du[r].is_zero() {
                    let row = mono_index[&shrunk];
                    let cur = t.get(row, col).clone();
                    t.set(row, col, cur + mult.clone() * du[r].clone());
                }
                for s in 0..v {
                    if linear[r][s].is_zero() {
                        continue;
                    }
                    let grown = bump(&shrunk, s, 1);
                    let row = mono_index[&grown];
                    let cur = t.get(row, col).clone();
                    t.set(row, col, cur + mult.clone() * linear[r][s].clone());
                }
            }
        }
        fields.push(t);
    }
    let mut invariant_dims = Vec::with_capacity(degree_cap + 1);
    let mut prev = 0usize;
    for k in 0..=degree_cap {
        let keep: Vec<usize> = (0..dim_total)
            .filter(|&i| basis_monos[i].degree() as usize <= k)
            .collect();
        let mut stacked = Vec::new();
        for t in &fields {
            let sub = t.select_rows(&keep).select_columns(&keep);
            for r in 0..sub.rows() {
                stacked.push((0..sub.cols()).map(|c| sub.get(r, c).clone()).collect::<Vec<_>>());
            }
        }
        let rank = if stacked.is_empty() {
            0
        } else {
            QMatrix::from_rows(stacked).rank()
        };
        let filt = keep.len() - rank;
        invariant_dims.push(filt - prev);
        prev = filt;
    }
    let complex = build_cocom_complex(g, degree_cap)?;
    let h0_dims = complex.h0_filtration_dims(degree_cap);
    let agree = invariant_dims == h0_dims;
    Ok(InvariantsComparison { degree_cap, invariant_dims, h0_dims, agree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::Context;
    use crate::dgla::random_window_12;
    use crate::koszul::build_koszul;
    use crate::poly::LocalizedElement;
    use crate::polyvector::Polyvector;
    use crate::sample::Sampler;

    fn square_example() -> GradedLieAlgebra {
        GradedLieAlgebra::from_json(
            r#"{
            "degrees": {"1": ["x"], "2": ["w"]},
            "bracket": [{"args": ["x", "x"], "out": {"w": "2"}}]
        }"#,
        )
        .unwrap()
    }

    fn linear_example() -> GradedLieAlgebra {
        GradedLieAlgebra::from_json(
            r#"{
            "degrees": {"1": ["x"], "2": ["w"]},
            "d": [{"from": "x", "to": {"w": "1"}}]
        }"#,
        )
        .unwrap()
    }

    fn affine_action_example() -> GradedLieAlgebra {
        // [u1, u2] = u2, u1 acts on v by 2, u2 acts by 0, d(u1) = v.
        GradedLieAlgebra::from_json(
            r#"{
            "degrees": {"0": ["u1", "u2"], "1": ["v"]},
            "d": [{"from": "u1", "to": {"v": "1"}}],
            "bracket": [
                {"args": ["u1", "u2"], "out": {"u2": "1"}},
                {"args": ["u1", "v"], "out": {"v": "2"}}
            ]
        }"#,
        )
        .unwrap()
    }

    #[test]
    fn window_detection_and_rejection() {
        assert_eq!(build_cocom_complex(&square_example(), 3).unwrap().window, DegreeWindow::OneTwo);
        assert_eq!(
            build_cocom_complex(&affine_action_example(), 3).unwrap().window,
            DegreeWindow::ZeroOne
        );
        let bad = GradedLieAlgebra::from_json(r#"{"degrees": {"0": ["u"], "2": ["w"]}}"#).unwrap();
        assert!(build_cocom_complex(&bad, 3).is_err());
    }

    #[test]
    fn differentials_square_to_zero() {
        let mut sampler = Sampler::new(7);
        for _ in 0..10 {
            let g = random_window_12(&mut sampler, 3);
            let complex = build_cocom_complex(&g, 4).unwrap();
            assert!(complex.d_squared_ok());
        }
        let complex = build_cocom_complex(&affine_action_example(), 5).unwrap();
        assert!(complex.d_squared_ok());
    }

    #[test]
    fn kernel_filtration_matches_the_quotient_shapes() {
        // t^2: dual numbers; t: a reduced point; no equations: a line.
        let c = build_cocom_complex(&square_example(), 4).unwrap();
        assert_eq!(c.h0_filtration_dims(4), vec![1, 1, 0, 0, 0]);
        let c = build_cocom_complex(&linear_example(), 4).unwrap();
        assert_eq!(c.h0_filtration_dims(4), vec![1, 0, 0, 0, 0]);
        let abelian =
            GradedLieAlgebra::from_json(r#"{"degrees": {"1": ["x"], "2": ["w"]}}"#).unwrap();
        let c = build_cocom_complex(&abelian, 4).unwrap();
        assert_eq!(c.h0_filtration_dims(4), vec![1, 1, 1, 1, 1]);
    }

    #[test]
    fn window12_matrices_are_koszul_transposes() {
        let mut sampler = Sampler::new(23);
        let mut cases: Vec<GradedLieAlgebra> = vec![square_example(), linear_example()];
        for _ in 0..8 {
            cases.push(random_window_12(&mut sampler, 2));
        }
        for g in cases {
            let m = g.dim(1);
            let w = g.dim(2);
            if w == 0 {
                continue;
            }
            let cutoff = 4usize;
            let complex = build_cocom_complex(&g, cutoff).unwrap();
            let scheme = mc_equations(&g);
            let names: Vec<String> = (0..m).map(|i| format!("t{}", i + 1)).collect();
            let ctx = Context::tangent(names);
            let koszul = build_koszul(&ctx, scheme.equations.clone()).unwrap();
            for delta in 0..w as i64 {
                let here = complex.basis(delta);
                let next = complex.basis(delta + 1);
                let here_index: BTreeMap<&CocomBasisElt, usize> =
                    here.iter().enumerate().map(|(i, e)| (e, i)).collect();
                let mut k = QMatrix::zero(here.len(), next.len());
                for (col, elt) in next.iter().enumerate() {
                    let mut pv = Polyvector::zero(m);
                    let coeff = LocalizedElement::from_poly(crate::poly::Polynomial::monomial(
                        elt.even.clone(),
                        Rat::from_integer(1.into()),
                    ));
                    pv.add_term(elt.odd.clone(), coeff, None);
                    let image = koszul.differential(&pv).unwrap();
                    for (blade, le) in image.iter() {
                        assert_eq!(le.power, 0);
                        for (mono, c) in le.numer.iter() {
                            let key = CocomBasisElt { even: mono.clone(), odd: blade.clone() };
                            if let Some(&row) = here_index.get(&key) {
                                k.set(row, col, c.clone());
                            } else {
                                assert!(mono.degree() as usize > cutoff);
                            }
                        }
                    }
                }
                assert_eq!(
                    complex.matrix(delta).unwrap(),
                    &k.transpose(),
                    "transpose mismatch at degree {delta}"
                );
            }
        }
    }

    #[test]
    fn window01_matches_textbook_chevalley_eilenberg() {
        // Independent assembly: one-based alternating signs, the twisted
        // action applied factor by factor, then the bracket insertions.
        let g = affine_action_example();
        let cutoff = 4usize;
        let complex = build_cocom_complex(&g, cutoff).unwrap();
        let u = g.dim(0);
        let v = g.dim(1);
        for delta in [-2i64, -1] {
            let src = complex.basis(delta);
            let dst = complex.basis(delta + 1);
            let dst_index: BTreeMap<&CocomBasisElt, usize> =
                dst.iter().enumerate().map(|(i, e)| (e, i)).collect();
            let mut m = QMatrix::zero(dst.len(), src.len());
            let add = |mat: &mut QMatrix, key: &CocomBasisElt, col: usize, c: Rat| {
                if let Some(&row) = dst_index.get(key) {
                    let cur = mat.get(row, col).clone();
                    mat.set(row, col, cur + c);
                } else {
                    assert!(key.even.degree() as usize > cutoff);
                }
            };
            for (col, elt) in src.iter().enumerate() {
                let p = elt.odd.0.len();
                for j in 1..=p {
                    let gen = elt.odd.0[j - 1];
                    let sign = neg_one_pow(j as i64 + 1);
                    let reduced = elt.odd.without(j - 1);
                    // Twisted action: derivation part plus multiplication
                    // by the image of d.
                    let du = g.d_basis(0, gen);
                    for (s, c) in du.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let grown = bump(&elt.even, s, 1);
                        let produce = Rat::from_integer((elt.even.0[s] as i64 + 1).into());
                        let key = CocomBasisElt { even: grown, odd: reduced.clone() };
                        add(&mut m, &key, col, sign.clone() * c.clone() * produce);
                    }
                    for r in 0..v {
                        if elt.even.0[r] == 0 {
                            continue;
                        }
                        let action = g.bracket_basis(0, gen, 1, r);
                        let shrunk = bump(&elt.even, r, -1);
                        for (s, c) in action.iter().enumerate() {
                            if c.is_zero() {
                                continue;
                            }
                            let grown = bump(&shrunk, s, 1);
                            let produce = Rat::from_integer((shrunk.0[s] as i64 + 1).into());
                            let key = CocomBasisElt { even: grown, odd: reduced.clone() };
                            add(&mut m, &key, col, sign.clone() * c.clone() * produce);
                        }
                    }
                }
                for j in 1..=p {
                    for l in (j + 1)..=p {
                        let sign = neg_one_pow((j + l) as i64);
                        let reduced = elt.odd.without(l - 1).without(j - 1);
                        let image = g.bracket_basis(0, elt.odd.0[j - 1], 0, elt.odd.0[l - 1]);
                        for (i, c) in image.iter().enumerate() {
                            if c.is_zero() {
                                continue;
                            }
                            if let Some((target, wedge_sign)) = insert_odd(&reduced, i) {
                                let key = CocomBasisElt { even: elt.even.clone(), odd: target };
                                add(&mut m, &key, col, sign.clone() * c.clone() * wedge_sign);
                            }
                        }
                    }
                }
            }
            assert_eq!(complex.matrix(delta).unwrap(), &m, "mismatch at degree {delta}");
            let _ = u;
        }
    }

    #[test]
    fn local_ring_comparison_on_the_worked_examples() {
        let cmp = compare_h0_local_ring(&square_example(), 4).unwrap();
        assert!(cmp.agree);
        assert_eq!(cmp.local_ring_dims, vec![1, 1, 0, 0, 0]);

        let cmp = compare_h0_local_ring(&linear_example(), 3).unwrap();
        assert!(cmp.agree);
        assert_eq!(cmp.local_ring_dims, vec![1, 0, 0, 0]);

        // t1 = t2^2 cuts out a curve: one dimension in every degree.
        let curve = GradedLieAlgebra::from_json(
            r#"{
            "degrees": {"1": ["x1", "x2"], "2": ["w"]},
            "d": [{"from": "x1", "to": {"w": "1"}}],
            "bracket": [{"args": ["x2", "x2"], "out": {"w": "-2"}}]
        }"#,
        )
        .unwrap();
        let cmp = compare_h0_local_ring(&curve, 3).unwrap();
        assert!(cmp.agree);
        assert_eq!(cmp.local_ring_dims, vec![1, 1, 1, 1]);
    }

    #[test]
    fn local_ring_comparison_on_random_presentations() {
        let mut sampler = Sampler::new(91);
        for _ in 0..6 {
            let g = random_window_12(&mut sampler, 2);
            let cmp = compare_h0_local_ring(&g, 4).unwrap();
            assert!(
                cmp.agree,
                "local ring {:?} vs complex {:?}",
                cmp.local_ring_dims, cmp.h0_dims
            );
        }
    }

    #[test]
    fn invariants_comparison_on_the_affine_example() {
        // tau_{u1} = (1 + 2y) d/dy has only constant invariants; the
        // trivial abelian case leaves everything invariant.
        let cmp = compare_h0_invariants(&affine_action_example(), 4).unwrap();
        assert!(cmp.agree, "{:?} vs {:?}", cmp.invariant_dims, cmp.h0_dims);
        assert_eq!(cmp.invariant_dims, vec![1, 0, 0, 0, 0]);

        let trivial = GradedLieAlgebra::from_json(
            r#"{"degrees": {"0": ["u"], "1": ["v1", "v2"]}}"#,
        )
        .unwrap();
        let cmp = compare_h0_invariants(&trivial, 3).unwrap();
        assert!(cmp.agree);
        assert_eq!(cmp.invariant_dims, vec![1, 2, 3, 4]);
    }
}
