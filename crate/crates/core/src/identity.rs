//! Randomised verification of the bracket and operator identities.
//!
//! Each check kind fixes one algebraic statement, draws seeded samples,
//! tests the statement by exact equality, and reports the failure count
//! together with the first counterexample.  Checks never assume the
//! statement they test: both sides are computed by the public operations
//! and compared as values, so a false statement produces an honest
//! nonzero failure count rather than an error.
//!
//! The kinds, by what they assert:
//!
//! * `Gerstenhaber` - graded antisymmetry, both Leibniz rules, and the
//!   graded Jacobi identity for the Schouten bracket;
//! * `BvGenerator` - the operator of a connection generates the bracket:
//!   `(-1)^p [a,b] = d(a^b) - d(a)^b - (-1)^p a^d(b)` with `p` the
//!   exterior degree of `a`;
//! * `DgLeibniz` - the contraction differential is a derivation of the
//!   bracket, `d[a,b] = [da,b] + (-1)^{p+1}[a,db]`;
//! * `DifferentialSquares` - the volume operator twisted by `phi` squares
//!   to zero; the sweep starts with the basis 2-blades, where the square
//!   is a coefficient of `d(phi)`, so a non-closed `phi` is always caught;
//! * `Cartan` - `Lie_tau = i_tau after d + d after i_tau` on forms;
//! * `TransferEquality` - the connection-built operator agrees with
//!   `-d_DR + phi^` conjugated through the volume transfer;
//! * `PairingDerivation` - `<[t1,t2], phi> = t1<t2,phi> - t2<t1,phi>`;
//! * `ConnectionRoundtrip` - connection to operator to connection is the
//!   identity, and the operator rebuilt from its extracted connection
//!   acts identically.
//!
//! When no one-form is supplied, kinds that involve one draw a fresh
//! arbitrary (generally non-closed) one per sample.

use serde::Serialize;

use crate::bv::{
    bv_from_connection, connection_from_bv, connection_from_volume, koszul_differential,
    Connection,
};
use crate::calculus::{
    contract, de_rham_d, lie_derivative, omega_transfer, omega_transfer_inverse, pairing,
    vector_field_apply,
};
use crate::context::Context;
use crate::poly::LocalizedElement;
use crate::polyvector::{Blade, DifferentialForm, Polyvector};
use crate::sample::Sampler;
use crate::schouten::schouten_bracket;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdentityKind {
    Gerstenhaber,
    BvGenerator,
    DgLeibniz,
    DifferentialSquares,
    Cartan,
    TransferEquality,
    PairingDerivation,
    ConnectionRoundtrip,
}

impl IdentityKind {
    pub const ALL: [IdentityKind; 8] = [
        IdentityKind::Gerstenhaber,
        IdentityKind::BvGenerator,
        IdentityKind::DgLeibniz,
        IdentityKind::DifferentialSquares,
        IdentityKind::Cartan,
        IdentityKind::TransferEquality,
        IdentityKind::PairingDerivation,
        IdentityKind::ConnectionRoundtrip,
    ];

    /// Command-line name; part of the tool's external interface.
    pub fn as_str(self) -> &'static str {
        match self {
            IdentityKind::Gerstenhaber => "gerstenhaber",
            IdentityKind::BvGenerator => "bv",
            IdentityKind::DgLeibniz => "dg_leibniz",
            IdentityKind::DifferentialSquares => "d_squared",
            IdentityKind::Cartan => "cartan",
            IdentityKind::TransferEquality => "transfer_equality",
            IdentityKind::PairingDerivation => "lemma_2_13",
            IdentityKind::ConnectionRoundtrip => "roundtrip_4_3",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown check kind `{s}`")))
    }
}

/// Sample-sweep configuration, a pure function of which is the outcome.
#[derive(Clone, Copy, Debug)]
pub struct CheckConfig {
    pub samples: usize,
    pub seed: u64,
    /// Exterior degree cap for sampled polyvectors.
    pub max_ext_degree: usize,
    /// Total degree cap for sampled polynomial coefficients.
    pub max_poly_degree: u32,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { samples: 200, seed: 0, max_ext_degree: 3, max_poly_degree: 2 }
    }
}

/// One named input of a failing sample, rendered canonically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Binding {
    pub name: String,
    pub value: String,
}

impl Binding {
    fn new(name: &str, value: String) -> Self {
        Binding { name: name.into(), value }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub sample_index: usize,
    pub inputs: Vec<Binding>,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of one identity sweep.  `failures == 0` exactly when no
/// counterexample is stored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub kind: String,
    pub samples: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

type Failure = (Vec<Binding>, String, String);

pub fn check_identities(
    ctx: &Context,
    kind: IdentityKind,
    phi: Option<&DifferentialForm>,
    cfg: &CheckConfig,
) -> Result<IdentityReport> {
    if let Some(phi) = phi {
        ctx.check_form(phi)?;
        if !phi.is_zero() && phi.homogeneous_degree() != Some(1) {
            return Err(Error::Degree("the twisting form must have degree 1".into()));
        }
    }
    let needs_volume = matches!(
        kind,
        IdentityKind::DgLeibniz | IdentityKind::DifferentialSquares | IdentityKind::TransferEquality
    );
    if needs_volume && !ctx.is_tangent() {
        return Err(Error::Unsupported(format!(
            "check `{}` needs the tangent context",
            kind.as_str()
        )));
    }

    let mut sampler = Sampler::new(cfg.seed);
    sampler.max_poly_degree = cfg.max_poly_degree;
    let mut failures = 0usize;
    let mut first: Option<Counterexample> = None;
    for index in 0..cfg.samples {
        let failure = match kind {
            IdentityKind::Gerstenhaber => gerstenhaber_sample(ctx, cfg, &mut sampler)?,
            IdentityKind::BvGenerator => bv_sample(ctx, phi, cfg, &mut sampler)?,
            IdentityKind::DgLeibniz => dg_leibniz_sample(ctx, phi, cfg, &mut sampler)?,
            IdentityKind::DifferentialSquares => {
                d_squared_sample(ctx, phi, cfg, index, &mut sampler)?
            }
            IdentityKind::Cartan => cartan_sample(ctx, cfg, &mut sampler)?,
            IdentityKind::TransferEquality => transfer_sample(ctx, phi, cfg, &mut sampler)?,
            IdentityKind::PairingDerivation => pairing_sample(ctx, phi, &mut sampler)?,
            IdentityKind::ConnectionRoundtrip => roundtrip_sample(ctx, phi, cfg, &mut sampler)?,
        };
        if let Some((inputs, lhs, rhs)) = failure {
            failures += 1;
            if first.is_none() {
                first = Some(Counterexample { sample_index: index, inputs, lhs, rhs });
            }
        }
    }
    Ok(IdentityReport {
        kind: kind.as_str().into(),
        samples: cfg.samples,
        failures,
        counterexample: first,
    })
}

fn render_pv(ctx: &Context, v: &Polyvector) -> String {
    v.to_canonical_string_named(ctx.var_names(), &ctx.generator_names(), ctx.denominator())
}

fn render_form(ctx: &Context, f: &DifferentialForm) -> String {
    f.to_canonical_string_named(ctx.var_names(), ctx.denominator())
}

fn render_coeff(ctx: &Context, a: &LocalizedElement) -> String {
    a.to_canonical_string(ctx.var_names(), ctx.denominator())
}

fn render_connection(ctx: &Context, conn: &Connection) -> String {
    let parts: Vec<String> = conn.values.iter().map(|v| render_coeff(ctx, v)).collect();
    format!("[{}]", parts.join(", "))
}

fn signed(v: Polyvector, negate: bool) -> Polyvector {
    if negate {
        v.neg()
    } else {
        v
    }
}

fn pick_phi(
    ctx: &Context,
    phi: Option<&DifferentialForm>,
    sampler: &mut Sampler,
) -> DifferentialForm {
    match phi {
        Some(p) => p.clone(),
        None => sampler.one_form(ctx),
    }
}

fn gerstenhaber_sample(
    ctx: &Context,
    cfg: &CheckConfig,
    s: &mut Sampler,
) -> Result<Option<Failure>> {
    let denom = ctx.denominator();
    let a = s.polyvector(ctx, cfg.max_ext_degree);
    let b = s.polyvector(ctx, cfg.max_ext_degree);
    let c = s.polyvector(ctx, cfg.max_ext_degree);
    let pa = a.homogeneous_degree().expect("homogeneous sample");
    let pb = b.homogeneous_degree().expect("homogeneous sample");
    let pc = c.homogeneous_degree().expect("homogeneous sample");
    let inputs = |name: &str| {
        vec![
            Binding::new("identity", name.into()),
            Binding::new("a", render_pv(ctx, &a)),
            Binding::new("b", render_pv(ctx, &b)),
            Binding::new("c", render_pv(ctx, &c)),
        ]
    };

    // [a,b] = -(-1)^{(p_a+1)(p_b+1)} [b,a]
    let lhs = schouten_bracket(ctx, &a, &b)?;
    let rhs = signed(schouten_bracket(ctx, &b, &a)?, (pa + 1) * (pb + 1) % 2 == 0);
    if lhs != rhs {
        return Ok(Some((
            inputs("graded antisymmetry"),
            render_pv(ctx, &lhs),
            render_pv(ctx, &rhs),
        )));
    }

    // [a, b^c] = [a,b]^c + (-1)^{(p_a+1) p_b} b^[a,c]
    let lhs = schouten_bracket(ctx, &a, &b.wedge(&c, denom))?;
    let rhs = schouten_bracket(ctx, &a, &b)?.wedge(&c, denom).add(
        &signed(b.wedge(&schouten_bracket(ctx, &a, &c)?, denom), (pa + 1) * pb % 2 != 0),
        denom,
    );
    if lhs != rhs {
        return Ok(Some((
            inputs("bracket is a right derivation"),
            render_pv(ctx, &lhs),
            render_pv(ctx, &rhs),
        )));
    }

    // [a^b, c] = a^[b,c] + (-1)^{(p_c+1) p_b} [a,c]^b
    let lhs = schouten_bracket(ctx, &a.wedge(&b, denom), &c)?;
    let rhs = a.wedge(&schouten_bracket(ctx, &b, &c)?, denom).add(
        &signed(schouten_bracket(ctx, &a, &c)?.wedge(&b, denom), (pc + 1) * pb % 2 != 0),
        denom,
    );
    if lhs != rhs {
        return Ok(Some((
            inputs("bracket is a left derivation"),
            render_pv(ctx, &lhs),
            render_pv(ctx, &rhs),
        )));
    }

    // [a,[b,c]] = [[a,b],c] + (-1)^{(p_a+1)(p_b+1)} [b,[a,c]]
    let lhs = schouten_bracket(ctx, &a, &schouten_bracket(ctx, &b, &c)?)?;
    let rhs = schouten_bracket(ctx, &schouten_bracket(ctx, &a, &b)?, &c)?.add(
        &signed(
            schouten_bracket(ctx, &b, &schouten_bracket(ctx, &a, &c)?)?,
            (pa + 1) * (pb + 1) % 2 != 0,
        ),
        denom,
    );
    if lhs != rhs {
        return Ok(Some((
            inputs("graded Jacobi"),
            render_pv(ctx, &lhs),
            render_pv(ctx, &rhs),
        )));
    }
    Ok(None)
}

fn bv_sample(
    ctx: &Context,
    phi: Option<&DifferentialForm>,
    cfg: &CheckConfig,
    s: &mut Sampler,
) -> Result<Option<Failure>> {
    let denom = ctx.denominator();
    let conn = match phi {
        Some(p) => connection_from_volume(ctx, p)?,
        None => s.connection(ctx),
    };
    let a = s.polyvector(ctx, cfg.max_ext_degree);
    let b = s.polyvector(ctx, cfg.max_ext_degree);
    let p = a.homogeneous_degree().expect("homogeneous sample");
    let odd = p % 2 != 0;
    let lhs = signed(schouten_bracket(ctx, &a, &b)?, odd);
    let d = |u: &Polyvector| bv_from_connection(ctx, &conn, u);
    let rhs = d(&a.wedge(&b, denom))?
        .sub(&d(&a)?.wedge(&b, denom), denom)
        .sub(&signed(a.wedge(&d(&b)?, denom), odd), denom);
    if lhs != rhs {
        return Ok(Some((
            vec![
                Binding::new("connection", render_connection(ctx, &conn)),
                Binding::new("a", render_pv(ctx, &a)),
                Binding::new("b", render_pv(ctx, &b)),
            ],
            render_pv(ctx, &lhs),
            render_pv(ctx, &rhs),
        )));
    }
    Ok(None)
}

fn dg_leibniz_sample(
    ctx: &Context,
    phi: Option<&DifferentialForm>,
    cfg: &CheckConfig,
    s: &mut Sampler,
) -> Result<Option<Failure>> {
    let denom = ctx.denominator();
    let phi = pick_phi(ctx, phi, s);
    let a = s.polyvector(ctx, cfg.max_ext_degree);
    let b = s.polyvector(ctx, cfg.max_ext_degree);
    let p = a.homogeneous_degree().expect("homogeneous sample");
    let d = |u: &Polyvector| koszul_differential(ctx, &phi, u);
    let lhs = d(&schouten_bracket(ctx, &a, &b)?)?;
    let rhs = schouten_bracket(ctx, &d(&a)?, &b)?.add(
        &signed(schouten_bracket(ctx, &a, &d(&b)?)?, (p + 1) % 2 != 0),
        denom,
    );
    if lhs != rhs {
        return Ok(Some((
            vec![
                Binding::new("phi", render_form(ctx, &phi)),
                Binding::new("a", render_pv(ctx, &a)),
                Binding::new("b", render_pv(ctx, &b)),
            ],
            render_pv(ctx, &lhs),
            render_pv(ctx, &rhs),
        )));
    }
    Ok(None)
}

fn d_squared_sample(
    ctx: &Context,
    phi: Option<&DifferentialForm>,
    cfg: &CheckConfig,
    index: usize,
    s: &mut Sampler,
) -> Result<Option<Failure>> {
    let phi = pick_phi(ctx, phi, s);
    let conn = connection_from_volume(ctx, &phi)?;
    // Lead the sweep with the basis 2-blades: the square of the operator
    // on e_i^e_j is a coefficient of d(phi), so any non-closed phi yields
    // a witness within the first rank-choose-2 samples.
    let n = ctx.rank();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            pairs.push((i, j));
        }
    }
    let u = if index < pairs.len() {
        let (i, j) = pairs[index];
        let mut u = Polyvector::zero(ctx.n_vars());
        u.add_term(Blade(vec![i, j]), LocalizedElement::one(ctx.n_vars()), ctx.denominator());
        u
    } else {
        s.polyvector(ctx, cfg.max_ext_degree)
    };
    let once = bv_from_connection(ctx, &conn, &u)?;
    let twice = bv_from_connection(ctx, &conn, &once)?;
    if !twice.is_zero() {
        return Ok(Some((
            vec![
                Binding::new("phi", render_form(ctx, &phi)),
                Binding::new("u", render_pv(ctx, &u)),
            ],
            render_pv(ctx, &twice),
            "0".into(),
        )));
    }
    Ok(None)
}

fn cartan_sample(ctx: &Context, cfg: &CheckConfig, s: &mut Sampler) -> Result<Option<Failure>> {
    let denom = ctx.denominator();
    let tau = s.polyvector_of_degree(ctx, 1);
    let eta = s.form(ctx, cfg.max_ext_degree);
    let lhs = lie_derivative(ctx, &tau, &eta)?;
    let rhs = contract(ctx, &tau, &de_rham_d(ctx, &eta)?)?
        .add(&de_rham_d(ctx, &contract(ctx, &tau, &eta)?)?, denom);
    if lhs != rhs {
        return Ok(Some((
            vec![
                Binding::new("tau", render_pv(ctx, &tau)),
                Binding::new("eta", render_form(ctx, &eta)),
            ],
            render_form(ctx, &lhs),
            render_form(ctx, &rhs),
        )));
    }
    Ok(None)
}

fn transfer_sample(
    ctx: &Context,
    phi: Option<&DifferentialForm>,
    cfg: &CheckConfig,
    s: &mut Sampler,
) -> Result<Option<Failure>> {
    let denom = ctx.denominator();
    let phi = pick_phi(ctx, phi, s);
    let conn = connection_from_volume(ctx, &phi)?;
    let u = s
        .polyvector(ctx, cfg.max_ext_degree)
        .add(&s.polyvector(ctx, cfg.max_ext_degree), denom);
    let bv_path = bv_from_connection(ctx, &conn, &u)?;
    let tu = omega_transfer(ctx, &u)?;
    let form_side = de_rham_d(ctx, &tu)?.neg().add(&phi.wedge(&tu, denom), denom);
    let form_path = omega_transfer_inverse(ctx, &form_side)?;
    if bv_path != form_path {
        return Ok(Some((
            vec![
                Binding::new("phi", render_form(ctx, &phi)),
                Binding::new("u", render_pv(ctx, &u)),
            ],
            render_pv(ctx, &bv_path),
            render_pv(ctx, &form_path),
        )));
    }
    Ok(None)
}

fn pairing_sample(
    ctx: &Context,
    phi: Option<&DifferentialForm>,
    s: &mut Sampler,
) -> Result<Option<Failure>> {
    let denom = ctx.denominator();
    let phi = pick_phi(ctx, phi, s);
    let t1 = s.polyvector_of_degree(ctx, 1);
    let t2 = s.polyvector_of_degree(ctx, 1);
    let lhs = pairing(ctx, &schouten_bracket(ctx, &t1, &t2)?, &phi)?;
    let rhs = vector_field_apply(ctx, &t1, &pairing(ctx, &t2, &phi)?)?
        .add(&vector_field_apply(ctx, &t2, &pairing(ctx, &t1, &phi)?)?.neg(), denom);
    if lhs != rhs {
        return Ok(Some((
            vec![
                Binding::new("tau1", render_pv(ctx, &t1)),
                Binding::new("tau2", render_pv(ctx, &t2)),
                Binding::new("phi", render_form(ctx, &phi)),
            ],
            render_coeff(ctx, &lhs),
            render_coeff(ctx, &rhs),
        )));
    }
    Ok(None)
}

fn roundtrip_sample(
    ctx: &Context,
    phi: Option<&DifferentialForm>,
    cfg: &CheckConfig,
    s: &mut Sampler,
) -> Result<Option<Failure>> {
    // connection -> operator -> connection
    let conn = s.connection(ctx);
    let back = connection_from_bv(ctx, |u| bv_from_connection(ctx, &conn, u))?;
    if back != conn {
        return Ok(Some((
            vec![Binding::new("connection", render_connection(ctx, &conn))],
            render_connection(ctx, &conn),
            render_connection(ctx, &back),
        )));
    }
    // operator -> connection -> operator, on a sampled argument
    let source = if ctx.is_tangent() {
        connection_from_volume(ctx, &pick_phi(ctx, phi, s))?
    } else {
        s.connection(ctx)
    };
    let extracted = connection_from_bv(ctx, |u| bv_from_connection(ctx, &source, u))?;
    let u = s.polyvector(ctx, cfg.max_ext_degree);
    let direct = bv_from_connection(ctx, &source, &u)?;
    let rebuilt = bv_from_connection(ctx, &extracted, &u)?;
    if direct != rebuilt {
        return Ok(Some((
            vec![
                Binding::new("connection", render_connection(ctx, &source)),
                Binding::new("u", render_pv(ctx, &u)),
            ],
            render_pv(ctx, &direct),
            render_pv(ctx, &rebuilt),
        )));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::gradient_one_form;
    use crate::context::context_from_algebroid_json;
    use crate::parse::{parse_form, parse_polynomial};

    fn cfg(samples: usize, seed: u64) -> CheckConfig {
        CheckConfig { samples, seed, ..CheckConfig::default() }
    }

    fn tangent3() -> Context {
        Context::tangent_named(&["x", "y", "z"])
    }

    fn localized2() -> Context {
        let c = parse_polynomial("1 + x^2", &["x".to_string(), "y".to_string()]).unwrap();
        Context::tangent_named(&["x", "y"]).with_denominator(c).unwrap()
    }

    fn affine_algebroid() -> Context {
        let src = r#"{
            "vars": ["x", "y"],
            "generators": ["e1", "e2"],
            "anchor": [["1", "0"], ["x", "0"]],
            "bracket": [{ "args": ["e1", "e2"], "out": { "e1": "1" } }]
        }"#;
        context_from_algebroid_json(src).unwrap()
    }

    #[test]
    fn kind_names_roundtrip() {
        for kind in IdentityKind::ALL {
            assert_eq!(IdentityKind::parse(kind.as_str()).unwrap(), kind);
        }
        assert!(IdentityKind::parse("unknown").is_err());
    }

    #[test]
    fn bracket_laws_hold_everywhere() {
        for ctx in [tangent3(), localized2(), affine_algebroid()] {
            let report =
                check_identities(&ctx, IdentityKind::Gerstenhaber, None, &cfg(40, 1)).unwrap();
            assert_eq!(report.failures, 0, "{:?}", report.counterexample);
            assert!(report.counterexample.is_none());
        }
    }

    #[test]
    fn bv_generates_the_bracket_for_any_connection() {
        for ctx in [tangent3(), localized2(), affine_algebroid()] {
            let report =
                check_identities(&ctx, IdentityKind::BvGenerator, None, &cfg(40, 2)).unwrap();
            assert_eq!(report.failures, 0, "{:?}", report.counterexample);
        }
    }

    #[test]
    fn bv_with_supplied_exact_form() {
        let ctx = tangent3();
        let f = parse_polynomial("x^3 - y^2 + z*x", ctx.var_names()).unwrap();
        let phi = gradient_one_form(&ctx, &f);
        let report =
            check_identities(&ctx, IdentityKind::BvGenerator, Some(&phi), &cfg(40, 3)).unwrap();
        assert_eq!(report.failures, 0, "{:?}", report.counterexample);
    }

    #[test]
    fn dg_leibniz_passes_for_closed_and_fails_for_non_closed() {
        let ctx = Context::tangent_named(&["x", "y"]);
        let f = parse_polynomial("x^3 - y^2", ctx.var_names()).unwrap();
        let closed = gradient_one_form(&ctx, &f);
        let report =
            check_identities(&ctx, IdentityKind::DgLeibniz, Some(&closed), &cfg(60, 4)).unwrap();
        assert_eq!(report.failures, 0, "{:?}", report.counterexample);

        let skew = parse_form("y*d(x)", ctx.var_names()).unwrap();
        let report =
            check_identities(&ctx, IdentityKind::DgLeibniz, Some(&skew), &cfg(200, 5)).unwrap();
        assert!(report.failures > 0, "non-closed form should break the derivation rule");
        let cex = report.counterexample.unwrap();
        assert_ne!(cex.lhs, cex.rhs);
    }

    #[test]
    fn d_squared_dichotomy() {
        let ctx = Context::tangent_named(&["x", "y"]);
        let f = parse_polynomial("x^2*y + y^3", ctx.var_names()).unwrap();
        let closed = gradient_one_form(&ctx, &f);
        let report =
            check_identities(&ctx, IdentityKind::DifferentialSquares, Some(&closed), &cfg(40, 6))
                .unwrap();
        assert_eq!(report.failures, 0, "{:?}", report.counterexample);

        let skew = parse_form("y*d(x)", ctx.var_names()).unwrap();
        let report =
            check_identities(&ctx, IdentityKind::DifferentialSquares, Some(&skew), &cfg(10, 7))
                .unwrap();
        assert!(report.failures > 0);
        // the basis blade opener catches it immediately
        assert_eq!(report.counterexample.unwrap().sample_index, 0);
    }

    #[test]
    fn cartan_formula_on_all_contexts() {
        for ctx in [tangent3(), localized2(), affine_algebroid()] {
            let report = check_identities(&ctx, IdentityKind::Cartan, None, &cfg(40, 8)).unwrap();
            assert_eq!(report.failures, 0, "{:?}", report.counterexample);
        }
    }

    #[test]
    fn transfer_equality_with_and_without_denominator() {
        for ctx in [Context::tangent_named(&["x", "y"]), localized2()] {
            let report =
                check_identities(&ctx, IdentityKind::TransferEquality, None, &cfg(40, 9)).unwrap();
            assert_eq!(report.failures, 0, "{:?}", report.counterexample);
        }
    }

    #[test]
    fn pairing_rule_needs_closedness() {
        let ctx = Context::tangent_named(&["x", "y"]);
        let f = parse_polynomial("x*y + x^3", ctx.var_names()).unwrap();
        let closed = gradient_one_form(&ctx, &f);
        let report =
            check_identities(&ctx, IdentityKind::PairingDerivation, Some(&closed), &cfg(60, 10))
                .unwrap();
        assert_eq!(report.failures, 0, "{:?}", report.counterexample);

        let skew = parse_form("y*d(x)", ctx.var_names()).unwrap();
        let report =
            check_identities(&ctx, IdentityKind::PairingDerivation, Some(&skew), &cfg(60, 11))
                .unwrap();
        assert!(report.failures > 0, "non-closed form should break the pairing rule");
    }

    #[test]
    fn roundtrips_hold_everywhere() {
        for ctx in [tangent3(), localized2(), affine_algebroid()] {
            let report =
                check_identities(&ctx, IdentityKind::ConnectionRoundtrip, None, &cfg(30, 12))
                    .unwrap();
            assert_eq!(report.failures, 0, "{:?}", report.counterexample);
        }
    }

    #[test]
    fn reports_are_deterministic_and_serializable() {
        let ctx = tangent3();
        let r1 = check_identities(&ctx, IdentityKind::Gerstenhaber, None, &cfg(10, 99)).unwrap();
        let r2 = check_identities(&ctx, IdentityKind::Gerstenhaber, None, &cfg(10, 99)).unwrap();
        assert_eq!(r1, r2);
        let json = serde_json::to_string(&r1).unwrap();
        assert!(json.contains("\"kind\":\"gerstenhaber\""));
        assert!(!json.contains("counterexample"));
    }

    #[test]
    fn volume_checks_reject_algebroids() {
        let ctx = affine_algebroid();
        for kind in [
            IdentityKind::DgLeibniz,
            IdentityKind::DifferentialSquares,
            IdentityKind::TransferEquality,
        ] {
            assert!(check_identities(&ctx, kind, None, &cfg(5, 0)).is_err());
        }
    }
}
