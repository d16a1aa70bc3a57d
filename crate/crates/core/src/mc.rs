//! Maurer-Cartan equations of a graded Lie algebra, solution families
//! over truncated polynomial scalars, and truncated cocycles.
//!
//! For a presentation with finite-dimensional `g^1` the equation
//! `da + (1/2)[a,a] = 0` cuts out a closed subscheme of `g^1`: one
//! polynomial `f_i` per dual basis element of `g^2`, each a linear part
//! read off `d` plus a quadratic part read off the bracket with the
//! one-half normalization.  Solutions over `Q[e]/(e^s)` form a scheme,
//! not a finite set, so they are reported as a parametrized family: the
//! order-by-order polynomial system in the Taylor unknowns together with
//! its Groebner normal forms.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::artinian::ArtinianScalar;
use crate::cocom::build_cocom_complex;
use crate::dgla::GradedLieAlgebra;
use crate::groebner::{buchberger, normal_form, GroebnerBasis};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::rat::{rat, Rat};
use crate::{Error, Result};

/// The Maurer-Cartan scheme of a presentation: coordinates dual to the
/// degree-1 basis and one equation per degree-2 basis element.  Equations
/// that happen to vanish identically are kept so that positions stay
/// aligned with the degree-2 basis.
#[derive(Clone, Debug)]
pub struct McScheme {
    pub coordinates: Vec<String>,
    pub equation_names: Vec<String>,
    pub equations: Vec<Polynomial>,
}

impl McScheme {
    /// The equations that actually constrain the scheme.
    pub fn reduced_equations(&self) -> Vec<(&str, &Polynomial)> {
        self.equation_names
            .iter()
            .zip(&self.equations)
            .filter(|(_, f)| !f.is_zero())
            .map(|(n, f)| (n.as_str(), f))
            .collect()
    }
}

/// Reads the scheme off the presentation: only `d: g^1 -> g^2` and the
/// bracket `S^2 g^1 -> g^2` enter, whatever other degrees are present.
pub fn mc_equations(g: &GradedLieAlgebra) -> McScheme {
    let m = g.dim(1);
    let w = g.dim(2);
    let coordinates: Vec<String> = (1..=m).map(|i| format!("t{i}")).collect();
    let mut equations = vec![Polynomial::zero(m); w];
    for alpha in 0..m {
        let image = g.d_basis(1, alpha);
        for (i, c) in image.iter().enumerate() {
            if !c.is_zero() {
                let mut t = Monomial::one(m);
                t.0[alpha] = 1;
                equations[i].add_term(t, c.clone());
            }
        }
    }
    for alpha in 0..m {
        for beta in alpha..m {
            let out = g.bracket_basis(1, alpha, 1, beta);
            let half = if alpha == beta { Rat::new(1.into(), 2.into()) } else { Rat::from_integer(1.into()) };
            for (i, c) in out.iter().enumerate() {
                if !c.is_zero() {
                    let mut t = Monomial::one(m);
                    t.0[alpha] += 1;
                    t.0[beta] += 1;
                    equations[i].add_term(t, c.clone() * half.clone());
                }
            }
        }
    }
    McScheme {
        coordinates,
        equation_names: g.labels(2).to_vec(),
        equations,
    }
}

/// A parametrized family of Maurer-Cartan solutions over `Q[e]/(e^s)`.
/// One unknown per degree-1 basis element and epsilon order; the system
/// collects the coefficient of every epsilon power of every equation.
#[derive(Clone, Debug, Serialize)]
pub struct McSolutionFamily {
    pub truncation: usize,
    pub unknowns: Vec<String>,
    /// Normal form of each unknown modulo the solution ideal; an unknown
    /// whose normal form is itself is unconstrained by elimination.
    pub normal_forms: Vec<String>,
    /// Groebner elements that do not eliminate a single unknown; these
    /// are the residual constraints on the remaining parameters.
    pub relations: Vec<String>,
    /// Unknowns that appear in no Groebner element at all.
    pub free_unknowns: Vec<String>,
    /// True when every unknown reduces to zero: the only solution is 0.
    pub zero_scheme: bool,
    #[serde(skip)]
    pub system: Vec<Polynomial>,
    #[serde(skip)]
    pub groebner: GroebnerBasis,
}

/// Truncated power series with polynomial coefficients; index = epsilon
/// power.  Just enough arithmetic to substitute a Taylor ansatz into the
/// quadratic Maurer-Cartan equations.
struct EpsPoly {
    coeffs: Vec<Polynomial>,
}

impl EpsPoly {
    fn zero(n_vars: usize, order: usize) -> Self {
        EpsPoly { coeffs: vec![Polynomial::zero(n_vars); order] }
    }

    fn one(n_vars: usize, order: usize) -> Self {
        let mut x = Self::zero(n_vars, order);
        x.coeffs[0] = Polynomial::one(n_vars);
        x
    }

    fn add_assign(&mut self, other: &EpsPoly) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a = a.add(b);
        }
    }

    fn mul(&self, other: &EpsPoly) -> EpsPoly {
        let n = self.coeffs[0].n_vars();
        let s = self.coeffs.len();
        let mut out = EpsPoly::zero(n, s);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= s {
                    break;
                }
                if !b.is_zero() {
                    out.coeffs[i + j] = out.coeffs[i + j].add(&a.mul(b));
                }
            }
        }
        out
    }

    fn scale(&self, k: &Rat) -> EpsPoly {
        EpsPoly { coeffs: self.coeffs.iter().map(|p| p.scale(k)).collect() }
    }
}

fn unknown_name(label: &str, order: usize) -> String {
    format!("{label}_e{order}")
}

/// Enumerates the Maurer-Cartan solutions of `g` with coordinates in the
/// nilpotent ideal of `Q[e]/(e^order)`, as a Groebner-presented family.
pub fn mc_solutions_over(g: &GradedLieAlgebra, order: usize) -> Result<McSolutionFamily> {
    if order == 0 {
        return Err(Error::InvalidInput("the truncation order must be at least 1".into()));
    }
    let scheme = mc_equations(g);
    let m = g.dim(1);
    let labels = g.labels(1);
    let n_unknowns = m * (order - 1);
    let mut unknowns = Vec::with_capacity(n_unknowns);
    for label in labels {
        for k in 1..order {
            unknowns.push(unknown_name(label, k));
        }
    }
    // Substitute t_alpha = sum_k lambda_{alpha,k} e^k into every equation
    // and read off the coefficient of each epsilon power.
    let ansatz: Vec<EpsPoly> = (0..m)
        .map(|alpha| {
            let mut t = EpsPoly::zero(n_unknowns, order);
            for k in 1..order {
                t.coeffs[k] = Polynomial::variable(n_unknowns, alpha * (order - 1) + (k - 1));
            }
            t
        })
        .collect();
    let mut system = Vec::new();
    for f in &scheme.equations {
        let mut value = EpsPoly::zero(n_unknowns, order);
        for (mono, c) in f.iter() {
            let mut term = EpsPoly::one(n_unknowns, order);
            for (alpha, &e) in mono.0.iter().enumerate() {
                for _ in 0..e {
                    term = term.mul(&ansatz[alpha]);
                }
            }
            value.add_assign(&term.scale(c));
        }
        debug_assert!(value.coeffs[0].is_zero(), "nilpotent ansatz left a constant term");
        for k in 1..order {
            if !value.coeffs[k].is_zero() {
                system.push(value.coeffs[k].clone());
            }
        }
    }
    let order_choice = MonomialOrder::degrevlex();
    let groebner = buchberger(&system, &order_choice);
    let mut normal_forms = Vec::with_capacity(n_unknowns);
    let mut zero_scheme = true;
    for idx in 0..n_unknowns {
        let nf = normal_form(&Polynomial::variable(n_unknowns, idx), &groebner);
        if !nf.is_zero() {
            zero_scheme = false;
        }
        normal_forms.push(nf.to_canonical_string(&unknowns));
    }
    let mut seen = vec![false; n_unknowns];
    for p in &groebner.gens {
        for (mono, _) in p.iter() {
            for (idx, &e) in mono.0.iter().enumerate() {
                if e > 0 {
                    seen[idx] = true;
                }
            }
        }
    }
    let free_unknowns: Vec<String> = (0..n_unknowns)
        .filter(|&i| !seen[i])
        .map(|i| unknowns[i].clone())
        .collect();
    let relations: Vec<String> = groebner
        .gens
        .iter()
        .filter(|p| {
            p.leading(&order_choice)
                .map_or(false, |(mono, _)| mono.degree() >= 2)
        })
        .map(|p| p.to_canonical_string(&unknowns))
        .collect();
    Ok(McSolutionFamily {
        truncation: order,
        unknowns,
        normal_forms,
        relations,
        free_unknowns,
        zero_scheme,
        system,
        groebner,
    })
}

/// The Maurer-Cartan residual `da + (1/2)[a,a]` of a coordinate vector
/// over Artinian scalars, one component per degree-2 basis element.
pub fn mc_residual(g: &GradedLieAlgebra, a: &[ArtinianScalar]) -> Result<Vec<ArtinianScalar>> {
    let m = g.dim(1);
    if a.len() != m {
        return Err(Error::InvalidInput(format!(
            "expected {m} coordinates for the degree-1 space, got {}",
            a.len()
        )));
    }
    let order = a.first().map_or(1, |x| x.order());
    if a.iter().any(|x| x.order() != order) {
        return Err(Error::InvalidInput("mixed truncation orders in the solution".into()));
    }
    let scheme = mc_equations(g);
    let mut out = Vec::with_capacity(scheme.equations.len());
    for f in &scheme.equations {
        let mut value = ArtinianScalar::zero(order);
        for (mono, c) in f.iter() {
            let mut term = ArtinianScalar::one(order);
            for (alpha, &e) in mono.0.iter().enumerate() {
                for _ in 0..e {
                    term = term.mul(&a[alpha]);
                }
            }
            value = value.add(&term.scale(c));
        }
        out.push(value);
    }
    Ok(out)
}

/// The truncated cocycle `sum_{n=1..N} a^n / n!` of a Maurer-Cartan
/// solution, with the differential of the coalgebra complex applied to
/// it.  Dropping the tail above symmetric degree `N` can only disturb
/// image components of symmetric degree `N-1` and `N`, so the zero
/// verdict is asserted on degrees up to `N-2` and exact there.
#[derive(Clone, Debug, Serialize)]
pub struct CocycleReport {
    pub cutoff: usize,
    /// Largest symmetric degree of the differential that the truncation
    /// leaves exact.
    pub safe_degree: i64,
    /// The element, rendered term by term in the monomial basis.
    pub terms: Vec<(String, String)>,
    /// Nonzero components of the differential within the safe range;
    /// empty exactly when the verdict holds.
    pub differential_terms: Vec<(String, String)>,
    pub is_cocycle: bool,
}

pub fn mc_cocycle(
    g: &GradedLieAlgebra,
    a: &[ArtinianScalar],
    cutoff: usize,
) -> Result<CocycleReport> {
    if cutoff == 0 {
        return Err(Error::InvalidInput("the cocycle cutoff must be at least 1".into()));
    }
    if !g.concentrated_in(&[1, 2]) {
        return Err(Error::Unsupported(
            "cocycle verdicts need a presentation concentrated in degrees {1, 2}".into(),
        ));
    }
    if a.iter().any(|x| !x.is_nilpotent()) {
        return Err(Error::InvalidInput(
            "solution coordinates must lie in the nilpotent ideal (e)".into(),
        ));
    }
    let residual = mc_residual(g, a)?;
    if residual.iter().any(|x| !x.is_zero()) {
        let rendered: Vec<String> = residual
            .iter()
            .zip(g.labels(2))
            .filter(|(x, _)| !x.is_zero())
            .map(|(x, l)| format!("{l}: {}", x.to_canonical_string()))
            .collect();
        return Err(Error::InvalidInput(format!(
            "not a Maurer-Cartan solution; residual [{}]",
            rendered.join(", ")
        )));
    }
    let order = a.first().map_or(1, |x| x.order());
    let m = g.dim(1);
    let complex = build_cocom_complex(g, cutoff)?;

    // Coefficient of the divided-power basis element x^{(mu)} in
    // sum a^n/n! is simply the product of the coordinate powers a^mu.
    let mut coords: BTreeMap<Monomial, ArtinianScalar> = BTreeMap::new();
    let order_choice = MonomialOrder::degrevlex();
    for deg in 1..=cutoff as u32 {
        for mono in crate::monomial::monomials_of_degree(m, deg, &order_choice) {
            let mut c = ArtinianScalar::one(order);
            for (alpha, &e) in mono.0.iter().enumerate() {
                for _ in 0..e {
                    c = c.mul(&a[alpha]);
                }
            }
            if !c.is_zero() {
                coords.insert(mono, c);
            }
        }
    }

    let labels1 = g.labels(1);
    let mut terms = Vec::new();
    for (mono, c) in &coords {
        // Render in the plain monomial basis: x^{(mu)} = x^mu / mu!.
        let plain = c.scale(&(Rat::from_integer(1.into()) / multi_factorial(mono)));
        terms.push((
            Polynomial::monomial(mono.clone(), rat(1)).to_canonical_string(labels1),
            plain.to_canonical_string(),
        ));
    }

    let image = complex.apply_artinian_h0(&coords, order)?;
    let safe_degree = cutoff as i64 - 2;
    let labels2 = g.labels(2);
    let mut differential_terms = Vec::new();
    for (elt, value) in &image {
        if (elt.even.degree() as i64) > safe_degree || value.is_zero() {
            continue;
        }
        let blade_name: Vec<&str> = elt.odd.0.iter().map(|&i| labels2[i].as_str()).collect();
        differential_terms.push((
            format!(
                "{}*{}",
                Polynomial::monomial(elt.even.clone(), rat(1)).to_canonical_string(labels1),
                blade_name.join("^")
            ),
            value.to_canonical_string(),
        ));
    }
    let is_cocycle = differential_terms.is_empty();
    Ok(CocycleReport { cutoff, safe_degree, terms, differential_terms, is_cocycle })
}

fn multi_factorial(m: &Monomial) -> Rat {
    let mut out = Rat::from_integer(1.into());
    for &e in &m.0 {
        for k in 2..=e as u64 {
            out = out * Rat::from_integer(k.into());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgla::random_window_12;
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

    fn mixed_example() -> GradedLieAlgebra {
        // d(x1) = w and [x2, x2] = -2w give the single equation t1 - t2^2.
        GradedLieAlgebra::from_json(
            r#"{
            "degrees": {"1": ["x1", "x2"], "2": ["w"]},
            "d": [{"from": "x1", "to": {"w": "1"}}],
            "bracket": [{"args": ["x2", "x2"], "out": {"w": "-2"}}]
        }"#,
        )
        .unwrap()
    }

    #[test]
    fn equations_from_the_three_shapes() {
        let s = mc_equations(&square_example());
        assert_eq!(s.coordinates, vec!["t1"]);
        assert_eq!(s.equations[0].to_canonical_string(&s.coordinates), "t1^2");

        let s = mc_equations(&linear_example());
        assert_eq!(s.equations[0].to_canonical_string(&s.coordinates), "t1");

        let abelian = GradedLieAlgebra::from_json(
            r#"{"degrees": {"1": ["x", "y"], "2": ["w"]}}"#,
        )
        .unwrap();
        let s = mc_equations(&abelian);
        assert!(s.reduced_equations().is_empty());
        assert_eq!(s.equations.len(), 1);

        let s = mc_equations(&mixed_example());
        assert_eq!(s.equations[0].to_canonical_string(&s.coordinates), "-t2^2 + t1");
    }

    #[test]
    fn equations_match_generic_element_expansion() {
        // Substituting a rational point into the equations must agree with
        // evaluating da + (1/2)[a,a] through the structure tables.
        let mut sampler = Sampler::new(41);
        for _ in 0..12 {
            let g = random_window_12(&mut sampler, 3);
            let scheme = mc_equations(&g);
            let m = g.dim(1);
            let point: Vec<Rat> = (0..m).map(|_| sampler.rational()).collect();
            let da = g.d_apply(1, &point);
            let aa = g.bracket_apply(1, &point, 1, &point);
            for (i, f) in scheme.equations.iter().enumerate() {
                let expected = da[i].clone() + aa[i].clone() / rat(2);
                assert_eq!(f.eval_rat(&point), expected);
            }
        }
    }

    #[test]
    fn square_solutions_depend_on_the_truncation() {
        // Over Q[e]/(e^2) the obstruction dies: one free parameter.
        let fam = mc_solutions_over(&square_example(), 2).unwrap();
        assert_eq!(fam.unknowns, vec!["x_e1"]);
        assert_eq!(fam.free_unknowns, vec!["x_e1"]);
        assert!(fam.relations.is_empty());
        assert!(!fam.zero_scheme);

        // Over Q[e]/(e^3) the first-order coefficient squares to zero.
        let fam = mc_solutions_over(&square_example(), 3).unwrap();
        assert_eq!(fam.unknowns, vec!["x_e1", "x_e2"]);
        assert_eq!(fam.relations, vec!["x_e1^2"]);
        assert_eq!(fam.free_unknowns, vec!["x_e2"]);
        assert!(!fam.zero_scheme);
        assert_eq!(fam.normal_forms[0], "x_e1");
    }

    #[test]
    fn linear_equation_pins_everything_to_zero() {
        let fam = mc_solutions_over(&linear_example(), 3).unwrap();
        assert!(fam.zero_scheme);
        assert_eq!(fam.normal_forms, vec!["0", "0"]);
        assert!(fam.free_unknowns.is_empty());
    }

    #[test]
    fn abelian_solutions_are_unconstrained() {
        let g = GradedLieAlgebra::from_json(r#"{"degrees": {"1": ["x", "y"], "2": ["w"]}}"#)
            .unwrap();
        let fam = mc_solutions_over(&g, 3).unwrap();
        assert_eq!(fam.free_unknowns.len(), 4);
        assert!(fam.system.is_empty());
        assert!(!fam.zero_scheme);
    }

    #[test]
    fn residuals_flag_non_solutions() {
        let g = square_example();
        let a = vec![ArtinianScalar::eps(3)];
        let r = mc_residual(&g, &a).unwrap();
        // f = t^2 at t = e gives e^2.
        assert_eq!(r[0].coeff(2), rat(1));
        let a = vec![ArtinianScalar::eps(2)];
        assert!(mc_residual(&g, &a).unwrap()[0].is_zero());
    }

    #[test]
    fn cocycle_for_the_square_example() {
        let g = square_example();
        let a = vec![ArtinianScalar::eps(2)];
        let report = mc_cocycle(&g, &a, 4).unwrap();
        assert!(report.is_cocycle);
        assert_eq!(report.terms, vec![("x".to_string(), "e".to_string())]);

        let zero = vec![ArtinianScalar::zero(2)];
        let report = mc_cocycle(&g, &zero, 3).unwrap();
        assert!(report.is_cocycle);
        assert!(report.terms.is_empty());
    }

    #[test]
    fn cocycle_with_interacting_terms() {
        // a = e^2 x1 + e x2 solves t1 - t2^2 = 0 over Q[e]/(e^3); its
        // cocycle has a genuine degree-2 term and the differential cancels
        // between d(x1) and the bracket of x2 with itself.
        let g = mixed_example();
        let e = ArtinianScalar::eps(3);
        let a = vec![e.mul(&e), e.clone()];
        let report = mc_cocycle(&g, &a, 4).unwrap();
        assert!(report.is_cocycle);
        assert!(report.terms.iter().any(|(m, _)| m == "x2^2"));
    }

    #[test]
    fn non_solutions_are_rejected_with_residual() {
        let g = square_example();
        let a = vec![ArtinianScalar::eps(3)];
        let err = mc_cocycle(&g, &a, 3).unwrap_err();
        let msg = format!("{err}");
        assert!(msg.contains("residual"), "unexpected message: {msg}");
        assert!(msg.contains("e^2"), "unexpected message: {msg}");

        let not_nilpotent = vec![ArtinianScalar::one(2)];
        assert!(mc_cocycle(&g, &not_nilpotent, 3).is_err());
    }
}
