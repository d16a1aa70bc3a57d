//! Milnor rings of hypersurface singularities and the isolated test.
//!
//! The Milnor ring of `f` is the quotient of the polynomial ring by the
//! ideal of all partial derivatives of `f`; its dimension is the Milnor
//! number, finite exactly when the critical point is isolated.  Three
//! independent detections of isolation are provided and cross-checked:
//!
//! * staircase finiteness of the partial-derivative ideal (exact, via a
//!   Groebner basis: every variable must show a pure power among the
//!   leading monomials);
//! * acyclicity of the Koszul complex on the partials in negative
//!   cohomological degrees, within the reliable truncation range;
//! * regular-sequence behaviour: multiplication by each partial is
//!   injective on the truncated quotient by the earlier ones.
//!
//! A kernel vector found by the third route is always a genuine
//! zero-divisor witness (its normal form is itself), so that route never
//! reports a false negative; the truncation window only bounds how far
//! witnesses are searched.

use serde::{Serialize, Serializer};

use crate::context::Context;
use crate::groebner::{buchberger, normal_form, quotient_basis_n, QuotientBasis};
use crate::koszul::{build_koszul, truncated_cohomology};
use crate::matrix::QMatrix;
use crate::monomial::{monomials_up_to, Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::rat::{rat, Rat};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MilnorNumber {
    Finite(usize),
    Infinite,
}

impl MilnorNumber {
    pub fn is_finite(self) -> bool {
        matches!(self, MilnorNumber::Finite(_))
    }
}

impl Serialize for MilnorNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            MilnorNumber::Finite(n) => s.serialize_u64(*n as u64),
            MilnorNumber::Infinite => s.serialize_str("infinite"),
        }
    }
}

/// Quotient data of a Milnor ring.  `basis` lists the standard
/// monomials: all of them when finite, those up to the degree cap when
/// infinite.
#[derive(Clone, Debug, Serialize)]
pub struct MilnorReport {
    pub f: String,
    pub isolated: bool,
    pub milnor_number: MilnorNumber,
    pub basis: Vec<String>,
    #[serde(skip)]
    pub standard_monomials: Vec<Monomial>,
    #[serde(skip)]
    pub quotient: Option<QuotientBasis>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Every variable hits a pure power in the staircase; the finite
    /// basis is listed.
    FiniteStaircase { basis: Vec<String> },
    /// All pure powers of this variable survive in the quotient.
    OpenVariable { variable: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct IsolationReport {
    pub isolated: bool,
    pub certificate: Certificate,
    /// Cross-check, present on the isolated verdict: the Koszul complex
    /// on the partials reported zero negative cohomology in every
    /// reliable cell.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub negative_acyclic: Option<bool>,
}

/// The three isolation routes side by side; `agree` is the tested claim
/// that they always coincide.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct IsolationEquivalence {
    pub finite_dimension: bool,
    pub reliably_acyclic: bool,
    pub regular_sequence: bool,
    pub agree: bool,
}

fn require_plain(ctx: &Context, f: &Polynomial) -> Result<()> {
    if !ctx.is_tangent() || ctx.denominator().is_some() {
        return Err(Error::Unsupported(
            "Milnor rings are computed over the plain polynomial ring".into(),
        ));
    }
    if f.n_vars() != ctx.n_vars() {
        return Err(Error::ContextMismatch(format!(
            "polynomial in {} variables, context has {}",
            f.n_vars(),
            ctx.n_vars()
        )));
    }
    Ok(())
}

pub fn partials(f: &Polynomial) -> Vec<Polynomial> {
    (0..f.n_vars()).map(|i| f.partial(i)).collect()
}

fn default_cap(f: &Polynomial) -> u32 {
    2 * f.total_degree().unwrap_or(0) + 2
}

fn render_monomial(m: &Monomial, names: &[String]) -> String {
    let mut p = Polynomial::zero(m.n_vars());
    p.add_term(m.clone(), rat(1));
    p.to_canonical_string(names)
}

pub fn milnor_ring(ctx: &Context, f: &Polynomial, degree_cap: Option<u32>) -> Result<MilnorReport> {
    require_plain(ctx, f)?;
    let cap = degree_cap.unwrap_or_else(|| default_cap(f));
    let order = MonomialOrder::degrevlex();
    let q = quotient_basis_n(ctx.n_vars(), &partials(f), &order, cap);
    let milnor_number = match q.dimension {
        Some(d) => MilnorNumber::Finite(d),
        None => MilnorNumber::Infinite,
    };
    let basis =
        q.standard_monomials.iter().map(|m| render_monomial(m, ctx.var_names())).collect();
    Ok(MilnorReport {
        f: f.to_canonical_string(ctx.var_names()),
        isolated: milnor_number.is_finite(),
        milnor_number,
        basis,
        standard_monomials: q.standard_monomials.clone(),
        quotient: Some(q),
    })
}

pub fn is_isolated_singularity(ctx: &Context, f: &Polynomial) -> Result<IsolationReport> {
    require_plain(ctx, f)?;
    let report = milnor_ring(ctx, f, None)?;
    let q = report.quotient.as_ref().expect("quotient data");
    match q.infinite_witness {
        Some(v) => Ok(IsolationReport {
            isolated: false,
            certificate: Certificate::OpenVariable { variable: ctx.var_names()[v].clone() },
            negative_acyclic: None,
        }),
        None => {
            let cplx = build_koszul(ctx, partials(f))?;
            let acyclic = truncated_cohomology(&cplx, default_cap(f)).negative_reliable_acyclic();
            Ok(IsolationReport {
                isolated: true,
                certificate: Certificate::FiniteStaircase { basis: report.basis.clone() },
                negative_acyclic: Some(acyclic),
            })
        }
    }
}

/// Independent route to the Milnor number: raw ideal-membership linear
/// algebra, no staircase combinatorics.  Residue classes are counted in
/// the window of monomials of degree `<= window`, while ideal elements
/// may use coefficient combinations `m * df_i` of total degree up to
/// `cap`.  The dimension of the captured ideal slice inside the window
/// is `rank(all columns) - rank(columns projected to degrees above the
/// window)`.  For inhomogeneous partials a class near the window top may
/// need coefficients beyond any fixed budget, which is why `cap` exceeds
/// `window`; the returned flag tells whether the value already agreed
/// with budget `cap - 1`.
pub fn milnor_number_truncated(
    ctx: &Context,
    f: &Polynomial,
    window: u32,
    cap: u32,
) -> Result<(usize, bool)> {
    require_plain(ctx, f)?;
    if window > cap {
        return Err(Error::InvalidInput("window exceeds the coefficient budget".into()));
    }
    let n = ctx.n_vars();
    let order = MonomialOrder::degrevlex();
    let window_count = monomials_up_to(n, window, &order).len();
    let gens: Vec<Polynomial> =
        partials(f).into_iter().filter(|g| !g.is_zero()).collect();
    if gens.is_empty() {
        return Ok((window_count, true));
    }
    let rows = monomials_up_to(n, cap, &order);
    let row_index: std::collections::BTreeMap<&Monomial, usize> =
        rows.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let high: Vec<usize> =
        rows.iter().enumerate().filter(|(_, m)| m.degree() > window).map(|(k, _)| k).collect();

    // columns m*g with deg m + deg g <= budget, tagged by their weight
    let mut columns: Vec<(u32, Vec<Rat>)> = Vec::new();
    for g in &gens {
        let gd = g.total_degree().expect("nonzero generator");
        for m in monomials_up_to(n, cap - gd, &order) {
            let mut col = vec![rat(0); rows.len()];
            for (gm, gc) in g.iter() {
                col[row_index[&m.mul(gm)]] = gc.clone();
            }
            columns.push((m.degree() + gd, col));
        }
    }
    let captured = |budget: u32| -> usize {
        let cols: Vec<Vec<Rat>> =
            columns.iter().filter(|(w, _)| *w <= budget).map(|(_, c)| c.clone()).collect();
        if cols.is_empty() {
            return 0;
        }
        let full = QMatrix::from_rows(cols.clone()).rank();
        let high_only = QMatrix::from_rows(
            cols.iter().map(|c| high.iter().map(|&k| c[k].clone()).collect()).collect(),
        )
        .rank();
        full - high_only
    };
    let at_cap = window_count - captured(cap);
    let stable = cap > window && window_count - captured(cap - 1) == at_cap;
    Ok((at_cap, stable))
}

/// Truncated regular-sequence verdict: multiplication by each generator
/// must be injective on the window of the quotient by the earlier ones.
/// Kernel vectors are genuine zero-divisor witnesses, so `true` can only
/// be wrong when every witness lies beyond the window.
pub fn regular_sequence_truncated(n: usize, gens: &[Polynomial], window: u32) -> bool {
    let order = MonomialOrder::degrevlex();
    for (i, g) in gens.iter().enumerate() {
        let gb = buchberger(&gens[..i], &order);
        if gb.contains(&Polynomial::one(n)) {
            // quotient already zero; the rest is vacuous
            return true;
        }
        if g.is_zero() {
            return false;
        }
        let lms = gb.leading_monomials();
        let std: Vec<Monomial> = monomials_up_to(n, window, &order)
            .into_iter()
            .filter(|m| !lms.iter().any(|lm| lm.divides(m)))
            .collect();
        if std.is_empty() {
            continue;
        }
        // rows: standard monomials high enough to hold every normal form
        let row_cap = window + g.total_degree().unwrap_or(0);
        let rows: Vec<Monomial> = monomials_up_to(n, row_cap, &order)
            .into_iter()
            .filter(|m| !lms.iter().any(|lm| lm.divides(m)))
            .collect();
        let row_index: std::collections::BTreeMap<&Monomial, usize> =
            rows.iter().enumerate().map(|(k, m)| (m, k)).collect();
        let mut mat = QMatrix::zero(rows.len(), std.len());
        for (j, m) in std.iter().enumerate() {
            let mut p = Polynomial::zero(n);
            p.add_term(m.clone(), rat(1));
            let image = normal_form(&p.mul(g), &gb);
            for (im, c) in image.iter() {
                mat.set(row_index[im], j, c.clone());
            }
        }
        if !mat.kernel_basis().is_empty() {
            return false;
        }
    }
    true
}

/// Runs all three isolation detections on `f` and records whether they
/// agree; the joint agreement over a corpus is the tested claim.
pub fn isolation_equivalence(
    ctx: &Context,
    f: &Polynomial,
    degree_cap: Option<u32>,
) -> Result<IsolationEquivalence> {
    require_plain(ctx, f)?;
    let cap = degree_cap.unwrap_or_else(|| default_cap(f));
    let gens = partials(f);
    let order = MonomialOrder::degrevlex();
    let finite_dimension =
        quotient_basis_n(ctx.n_vars(), &gens, &order, cap).dimension.is_some();
    let reliably_acyclic = if gens.iter().all(|g| g.is_zero()) {
        false
    } else {
        truncated_cohomology(&build_koszul(ctx, gens.clone())?, cap).negative_reliable_acyclic()
    };
    let regular_sequence = regular_sequence_truncated(ctx.n_vars(), &gens, cap);
    let agree = finite_dimension == reliably_acyclic && reliably_acyclic == regular_sequence;
    Ok(IsolationEquivalence { finite_dimension, reliably_acyclic, regular_sequence, agree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn ctx2() -> Context {
        Context::tangent_named(&["x", "y"])
    }

    fn poly(src: &str, ctx: &Context) -> Polynomial {
        parse_polynomial(src, ctx.var_names()).unwrap()
    }

    #[test]
    fn cusp_and_node() {
        let ctx = ctx2();
        let r = milnor_ring(&ctx, &poly("x^3 - y^2", &ctx), None).unwrap();
        assert_eq!(r.milnor_number, MilnorNumber::Finite(2));
        assert_eq!(r.basis, vec!["1", "x"]);
        assert!(r.isolated);

        let r = milnor_ring(&ctx, &poly("x^2 + y^2", &ctx), None).unwrap();
        assert_eq!(r.milnor_number, MilnorNumber::Finite(1));
        assert_eq!(r.basis, vec!["1"]);
    }

    #[test]
    fn e6_staircase() {
        let ctx = ctx2();
        let r = milnor_ring(&ctx, &poly("x^3 + y^4", &ctx), None).unwrap();
        assert_eq!(r.milnor_number, MilnorNumber::Finite(6));
        // partials (3x^2, 4y^3): staircase {1, x} x {1, y, y^2}
        let mut basis = r.basis.clone();
        basis.sort();
        let mut expected =
            vec!["1", "x", "y", "y^2", "x*y", "x*y^2"].into_iter().map(String::from).collect::<Vec<_>>();
        expected.sort();
        assert_eq!(basis, expected);
    }

    #[test]
    fn no_critical_point_means_mu_zero() {
        let ctx = Context::tangent_named(&["x"]);
        let r = milnor_ring(&ctx, &poly("x", &ctx), None).unwrap();
        assert_eq!(r.milnor_number, MilnorNumber::Finite(0));
        assert!(r.basis.is_empty());
    }

    #[test]
    fn non_isolated_certificate() {
        let ctx = ctx2();
        let rep = is_isolated_singularity(&ctx, &poly("x^2*y", &ctx)).unwrap();
        assert!(!rep.isolated);
        assert_eq!(rep.certificate, Certificate::OpenVariable { variable: "y".into() });

        let rep = is_isolated_singularity(&ctx, &poly("0", &ctx)).unwrap();
        assert!(!rep.isolated);
    }

    #[test]
    fn isolated_certificate_carries_acyclicity() {
        let ctx = ctx2();
        let rep = is_isolated_singularity(&ctx, &poly("x^3 - y^2", &ctx)).unwrap();
        assert!(rep.isolated);
        assert_eq!(rep.negative_acyclic, Some(true));
        match rep.certificate {
            Certificate::FiniteStaircase { basis } => assert_eq!(basis.len(), 2),
            other => panic!("expected staircase, got {other:?}"),
        }
    }

    #[test]
    fn zero_polynomial_is_infinite() {
        let ctx = ctx2();
        let r = milnor_ring(&ctx, &poly("0", &ctx), Some(3)).unwrap();
        assert_eq!(r.milnor_number, MilnorNumber::Infinite);
        assert!(!r.isolated);
        assert!(r.basis.contains(&"1".to_string()));
    }

    #[test]
    fn constant_shift_does_not_change_the_ring() {
        let ctx = ctx2();
        let a = milnor_ring(&ctx, &poly("x^3 + y^4", &ctx), None).unwrap();
        let b = milnor_ring(&ctx, &poly("x^3 + y^4 + 7", &ctx), None).unwrap();
        assert_eq!(a.milnor_number, b.milnor_number);
        assert_eq!(a.basis, b.basis);
    }

    #[test]
    fn rank_route_matches_staircase_route() {
        let ctx = ctx2();
        for (src, mu) in
            [("x^3 - y^2", 2), ("x^2 + y^2", 1), ("x^3 + y^4", 6), ("x^4 + x*y^2", 5)]
        {
            let f = poly(src, &ctx);
            let d = f.total_degree().unwrap();
            let (dim, stable) = milnor_number_truncated(&ctx, &f, 2 * d, 3 * d + 2).unwrap();
            assert_eq!(dim, mu, "rank route disagrees on {src}");
            assert!(stable, "budget too small for {src}");
        }
    }

    #[test]
    fn three_routes_agree_on_mixed_corpus() {
        let ctx = ctx2();
        for src in
            ["x^3 - y^2", "x^2 + y^2", "x^2*y", "x*y^2 + x^3", "0", "x^2", "x^3 + y^5", "x*y"]
        {
            let eq = isolation_equivalence(&ctx, &poly(src, &ctx), None).unwrap();
            assert!(eq.agree, "routes disagree on {src}: {eq:?}");
        }
    }

    #[test]
    fn localized_contexts_rejected() {
        let c = parse_polynomial("1 + x", &["x".to_string()]).unwrap();
        let ctx = Context::tangent_named(&["x"]).with_denominator(c).unwrap();
        let f = parse_polynomial("x^2", ctx.var_names()).unwrap();
        assert!(milnor_ring(&ctx, &f, None).is_err());
    }

    #[test]
    fn report_serialization_shapes() {
        let ctx = ctx2();
        let fin = serde_json::to_value(milnor_ring(&ctx, &poly("x^2 + y^2", &ctx), None).unwrap())
            .unwrap();
        assert_eq!(fin["milnor_number"], 1);
        let inf =
            serde_json::to_value(milnor_ring(&ctx, &poly("x^2*y", &ctx), None).unwrap()).unwrap();
        assert_eq!(inf["milnor_number"], "infinite");
    }
}
