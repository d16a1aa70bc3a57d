//! Buchberger's algorithm, normal forms and quotient staircases.
//!
//! The output basis is fully reduced (minimal leading monomials, reduced
//! tails, monic, sorted), hence unique for a given ideal and order.
//! Finiteness of the quotient is decided exactly by the pure-power
//! criterion on leading monomials: the quotient is finite-dimensional iff
//! every variable has some pure power among them.  A degree cap is used
//! only to list standard monomials in the infinite case.

use crate::monomial::{monomials_up_to, Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::rat::Rat;

#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub order: MonomialOrder,
    pub gens: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.gens
            .iter()
            .map(|g| g.leading(&self.order).unwrap().0.clone())
            .collect()
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        normal_form(p, self).is_zero()
    }
}

/// Fully reduces `p` modulo the divisor list: no term of the result is
/// divisible by any divisor's leading monomial.
fn reduce_full(p: &Polynomial, divisors: &[Polynomial], order: &MonomialOrder) -> Polynomial {
    let n = p.n_vars();
    let leads: Vec<(Monomial, Rat)> = divisors
        .iter()
        .map(|d| {
            let (m, c) = d.leading(order).unwrap();
            (m.clone(), c.clone())
        })
        .collect();
    let mut work = p.clone();
    let mut rem = Polynomial::zero(n);
    while !work.is_zero() {
        let (wm, wc) = {
            let (m, c) = work.leading(order).unwrap();
            (m.clone(), c.clone())
        };
        let mut reduced = false;
        for (k, (dm, dc)) in leads.iter().enumerate() {
            if let Some(q) = wm.try_div(dm) {
                let factor = wc.clone() / dc.clone();
                work = work.sub(&divisors[k].mul_term(&q, &factor));
                reduced = true;
                break;
            }
        }
        if !reduced {
            rem.add_term(wm.clone(), wc.clone());
            work = work.sub(&Polynomial::monomial(wm, wc));
        }
    }
    rem
}

/// Buchberger's algorithm with the coprimality criterion, followed by
/// inter-reduction to the unique reduced basis.
pub fn buchberger(gens: &[Polynomial], order: &MonomialOrder) -> GroebnerBasis {
    let n = gens.first().map_or(0, |g| g.n_vars());
    let mut basis: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    for g in &basis {
        assert_eq!(g.n_vars(), n, "variable count mismatch");
    }
    let mut pairs: std::collections::VecDeque<(usize, usize)> = std::collections::VecDeque::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            pairs.push_back((i, j));
        }
    }
    while let Some((i, j)) = pairs.pop_front() {
        let (mi, ci) = {
            let (m, c) = basis[i].leading(order).unwrap();
            (m.clone(), c.clone())
        };
        let (mj, cj) = {
            let (m, c) = basis[j].leading(order).unwrap();
            (m.clone(), c.clone())
        };
        let lcm = mi.lcm(&mj);
        // Coprime leading monomials: the s-polynomial reduces to zero.
        if lcm == mi.mul(&mj) {
            continue;
        }
        let qi = lcm.try_div(&mi).unwrap();
        let qj = lcm.try_div(&mj).unwrap();
        let s = basis[i]
            .mul_term(&qi, &(Rat::from_integer(1.into()) / ci))
            .sub(&basis[j].mul_term(&qj, &(Rat::from_integer(1.into()) / cj)));
        let r = reduce_full(&s, &basis, order);
        if !r.is_zero() {
            let new = basis.len();
            for k in 0..new {
                pairs.push_back((k, new));
            }
            basis.push(r);
        }
    }
    // Minimalize: drop generators whose leading monomial is divisible by
    // another's.
    let lms: Vec<Monomial> = basis
        .iter()
        .map(|g| g.leading(order).unwrap().0.clone())
        .collect();
    let mut keep: Vec<usize> = Vec::new();
    for i in 0..basis.len() {
        let dominated = (0..basis.len()).any(|j| {
            j != i && lms[j].divides(&lms[i]) && (lms[j] != lms[i] || j < i)
        });
        if !dominated {
            keep.push(i);
        }
    }
    let minimal: Vec<Polynomial> = keep.iter().map(|&i| basis[i].clone()).collect();
    // Reduce each tail against the others and normalize to monic.
    let mut reduced = Vec::with_capacity(minimal.len());
    for (i, g) in minimal.iter().enumerate() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, h)| h.clone())
            .collect();
        let r = if others.is_empty() { g.clone() } else { reduce_full(g, &others, order) };
        debug_assert!(!r.is_zero());
        let lc = r.leading(order).unwrap().1.clone();
        reduced.push(r.scale(&(Rat::from_integer(1.into()) / lc)));
    }
    reduced.sort_by(|a, b| {
        order.cmp(a.leading(order).unwrap().0, b.leading(order).unwrap().0)
    });
    GroebnerBasis { order: order.clone(), gens: reduced }
}

/// Normal form of `p` modulo the (Groebner) basis: the unique fully
/// reduced representative of its residue class.
pub fn normal_form(p: &Polynomial, gb: &GroebnerBasis) -> Polynomial {
    if gb.gens.is_empty() {
        return p.clone();
    }
    reduce_full(p, &gb.gens, &gb.order)
}

#[derive(Clone, Debug)]
pub struct QuotientBasis {
    pub groebner: GroebnerBasis,
    /// `None` when the quotient is infinite-dimensional.
    pub dimension: Option<usize>,
    /// All standard monomials when finite; those of degree `<= degree_cap`
    /// when infinite.  Ascending in the monomial order.
    pub standard_monomials: Vec<Monomial>,
    /// A variable with no pure power among the leading monomials
    /// (a certificate for the infinite case).
    pub infinite_witness: Option<usize>,
    pub degree_cap: u32,
}

/// Staircase data of `A / (gens)`.  `n` is taken from the generators,
/// which must be nonempty even if all zero is intended; use
/// `quotient_basis_n` to make the variable count explicit.
pub fn quotient_basis(gens: &[Polynomial], order: &MonomialOrder, degree_cap: u32) -> QuotientBasis {
    let n = gens.first().map(|g| g.n_vars()).expect("need at least one generator; use quotient_basis_n");
    quotient_basis_n(n, gens, order, degree_cap)
}

pub fn quotient_basis_n(
    n: usize,
    gens: &[Polynomial],
    order: &MonomialOrder,
    degree_cap: u32,
) -> QuotientBasis {
    assert!(n > 0, "need at least one variable");
    let gb = buchberger(gens, order);
    let lms = gb.leading_monomials();
    // Pure-power bound per variable: exponent of the smallest pure power
    // of that variable among the leading monomials.
    let mut bounds: Vec<Option<u32>> = vec![None; n];
    for lm in &lms {
        for i in 0..n {
            if lm.is_pure_power_of(i) {
                let e = lm.0[i];
                bounds[i] = Some(bounds[i].map_or(e, |b: u32| b.min(e)));
            }
        }
    }
    let witness = bounds.iter().position(|b| b.is_none());
    let not_divisible = |m: &Monomial| !lms.iter().any(|lm| lm.divides(m));
    match witness {
        None => {
            // Finite staircase: standard monomials live under the bounds.
            let mut out = Vec::new();
            let caps: Vec<u32> = bounds.iter().map(|b| b.unwrap().saturating_sub(1)).collect();
            let mut cur = vec![0u32; n];
            enumerate_box(&caps, 0, &mut cur, &mut |m: &Monomial| {
                if not_divisible(m) {
                    out.push(m.clone());
                }
            });
            out.sort_by(|a, b| order.cmp(a, b));
            QuotientBasis {
                groebner: gb,
                dimension: Some(out.len()),
                standard_monomials: out,
                infinite_witness: None,
                degree_cap,
            }
        }
        Some(v) => {
            let out: Vec<Monomial> = monomials_up_to(n, degree_cap, order)
                .into_iter()
                .filter(not_divisible)
                .collect();
            QuotientBasis {
                groebner: gb,
                dimension: None,
                standard_monomials: out,
                infinite_witness: Some(v),
                degree_cap,
            }
        }
    }
}

fn enumerate_box(caps: &[u32], pos: usize, cur: &mut Vec<u32>, f: &mut impl FnMut(&Monomial)) {
    if pos == caps.len() {
        f(&Monomial(cur.clone()));
        return;
    }
    for e in 0..=caps[pos] {
        cur[pos] = e;
        enumerate_box(caps, pos + 1, cur, f);
    }
    cur[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn polys(srcs: &[&str], vars: &[String]) -> Vec<Polynomial> {
        srcs.iter().map(|s| parse_polynomial(s, vars).unwrap()).collect()
    }

    #[test]
    fn reduced_basis_is_canonical() {
        let vars = names(&["x", "y"]);
        let gens = polys(&["x^2 + y^2", "x*y"], &vars);
        let gb = buchberger(&gens, &MonomialOrder::degrevlex());
        let strings: Vec<String> = gb.gens.iter().map(|g| g.to_canonical_string(&vars)).collect();
        assert_eq!(strings, vec!["x*y", "x^2 + y^2", "y^3"]);
        // Permuting the input generators yields the same reduced basis.
        let gens2 = polys(&["x*y", "x^2 + y^2"], &vars);
        let gb2 = buchberger(&gens2, &MonomialOrder::degrevlex());
        assert_eq!(gb.gens, gb2.gens);
    }

    #[test]
    fn membership_by_normal_form() {
        let vars = names(&["x", "y"]);
        let gens = polys(&["x^2 + y^2", "x*y"], &vars);
        let gb = buchberger(&gens, &MonomialOrder::degrevlex());
        assert!(gb.contains(&parse_polynomial("x^3", &vars).unwrap()));
        assert!(gb.contains(&parse_polynomial("y^3", &vars).unwrap()));
        assert!(!gb.contains(&parse_polynomial("x^2", &vars).unwrap()));
        // NF is the identity on standard monomials
        let y2 = parse_polynomial("y^2", &vars).unwrap();
        assert_eq!(normal_form(&y2, &gb), y2);
    }

    #[test]
    fn normal_form_is_idempotent_and_linear() {
        let vars = names(&["x", "y"]);
        let gb = buchberger(&polys(&["x^2 - y", "y^2 - x"], &vars), &MonomialOrder::degrevlex());
        let p = parse_polynomial("x^4 + x*y + 3", &vars).unwrap();
        let q = parse_polynomial("y^3 - 2*x", &vars).unwrap();
        let np = normal_form(&p, &gb);
        let nq = normal_form(&q, &gb);
        assert_eq!(normal_form(&np, &gb), np);
        assert_eq!(normal_form(&p.add(&q), &gb), np.add(&nq));
        // multiplicativity up to normal form
        assert_eq!(
            normal_form(&p.mul(&q), &gb),
            normal_form(&np.mul(&nq), &gb)
        );
    }

    #[test]
    fn staircase_of_plane_curve_singularity() {
        // Jacobian ideal basis of the cusp family: (x^2 + y^2, x*y) has
        // the 4-dimensional quotient {1, y, x, y^2}.
        let vars = names(&["x", "y"]);
        let qb = quotient_basis(
            &polys(&["x^2 + y^2", "x*y"], &vars),
            &MonomialOrder::degrevlex(),
            10,
        );
        assert_eq!(qb.dimension, Some(4));
        let basis: Vec<String> = qb
            .standard_monomials
            .iter()
            .map(|m| Polynomial::monomial(m.clone(), Rat::from_integer(1.into())).to_canonical_string(&vars))
            .collect();
        assert_eq!(basis, vec!["1", "y", "x", "y^2"]);
        assert!(qb.infinite_witness.is_none());
    }

    #[test]
    fn unit_ideal_has_empty_staircase() {
        let vars = names(&["x", "y"]);
        let qb = quotient_basis(&polys(&["1"], &vars), &MonomialOrder::degrevlex(), 5);
        assert_eq!(qb.dimension, Some(0));
        assert!(qb.standard_monomials.is_empty());
    }

    #[test]
    fn curve_ideal_is_infinite_dimensional() {
        // Twisted-cubic-style ideal in lex order t > x > y.
        let vars = names(&["t", "x", "y"]);
        let gens = polys(&["t^2 - x", "t^3 - y"], &vars);
        let order = MonomialOrder::lex();
        let gb = buchberger(&gens, &order);
        assert!(gb.contains(&parse_polynomial("x^3 - y^2", &vars).unwrap()));
        let qb = quotient_basis(&gens, &order, 3);
        assert_eq!(qb.dimension, None);
        // y has no pure power among the leading monomials
        assert_eq!(qb.infinite_witness, Some(2));
        // cap-3 standard monomials exist in every listed degree
        assert!(qb.standard_monomials.iter().any(|m| m.degree() == 3));
    }

    #[test]
    fn zero_ideal() {
        let qb = quotient_basis_n(2, &[], &MonomialOrder::degrevlex(), 2);
        assert_eq!(qb.dimension, None);
        assert_eq!(qb.standard_monomials.len(), 6);
    }

    #[test]
    fn quotient_dimension_is_order_independent() {
        let vars = names(&["x", "y"]);
        let gens = polys(&["4*x^3 + y^2", "2*x*y"], &vars);
        let mut dims = Vec::new();
        for order in [MonomialOrder::degrevlex(), MonomialOrder::deglex(), MonomialOrder::lex()] {
            dims.push(quotient_basis(&gens, &order, 10).dimension);
        }
        assert_eq!(dims, vec![Some(5), Some(5), Some(5)]);
    }
}
