//! Calculus on differential forms: interior products, the de Rham
//! differential, Lie derivatives, the right action of vector fields on top
//! forms, and the volume transfer between polyvectors and forms.
//!
//! Forms always live on the coordinate differentials `d(x_k)`.  A vector
//! field over an algebroid context acts through its anchor image, so every
//! operation here first flattens the field to tangent components; the
//! classical identities (Cartan, right-module axioms) survive because the
//! anchor is a homomorphism onto vector fields.
//!
//! The transfer against the volume `c dx_1 ^ ... ^ dx_n` uses the closed
//! formula: a blade with 0-based indices `i_1 < ... < i_p` maps to
//! `(-1)^(i_1+...+i_p) * a * c` on the complementary differentials.  The
//! inverse divides by `c`, which is exact in the localized ring.

use crate::context::Context;
use crate::poly::{LocalizedElement, Polynomial};
use crate::polyvector::{Blade, DifferentialForm, Polyvector};
use crate::{Error, Result};

/// Coefficients of a vector field on the coordinate derivations, applying
/// the anchor when the context carries an algebroid.  The field must be
/// homogeneous of exterior degree 1 (or zero).
pub fn tangent_components(ctx: &Context, tau: &Polyvector) -> Result<Vec<LocalizedElement>> {
    ctx.check_polyvector(tau)?;
    if !tau.is_zero() && tau.homogeneous_degree() != Some(1) {
        return Err(Error::Degree("expected a vector field of exterior degree 1".into()));
    }
    let n = ctx.n_vars();
    let denom = ctx.denominator();
    let mut out = vec![LocalizedElement::zero(n); n];
    for (blade, a) in tau.iter() {
        let i = blade.0[0];
        match ctx.algebroid() {
            None => out[i] = out[i].add(a, denom),
            Some(alg) => {
                for (k, coeff) in alg.anchor[i].iter().enumerate() {
                    if !coeff.is_zero() {
                        out[k] = out[k].add(&a.mul_poly(coeff, denom), denom);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Derivative of a coefficient along a field given by tangent components.
/// Derivative of a coefficient along a vector field, `tau(a)`.
pub fn vector_field_apply(
    ctx: &Context,
    tau: &Polyvector,
    a: &LocalizedElement,
) -> Result<LocalizedElement> {
    let components = tangent_components(ctx, tau)?;
    Ok(directional(ctx, &components, a))
}

fn directional(
    ctx: &Context,
    components: &[LocalizedElement],
    a: &LocalizedElement,
) -> LocalizedElement {
    let denom = ctx.denominator();
    let mut out = LocalizedElement::zero(ctx.n_vars());
    for (k, t) in components.iter().enumerate() {
        if !t.is_zero() {
            out = out.add(&t.mul(&a.partial(k, denom), denom), denom);
        }
    }
    out
}

/// Components of a one-form on the coordinate differentials.
pub fn one_form_components(ctx: &Context, phi: &DifferentialForm) -> Result<Vec<LocalizedElement>> {
    ctx.check_form(phi)?;
    if !phi.is_zero() && phi.homogeneous_degree() != Some(1) {
        return Err(Error::Degree("expected a one-form".into()));
    }
    let n = ctx.n_vars();
    let mut out = vec![LocalizedElement::zero(n); n];
    for (blade, a) in phi.iter() {
        out[blade.0[0]] = a.clone();
    }
    Ok(out)
}

/// Builds a one-form from components on the coordinate differentials.
pub fn one_form_from_components(ctx: &Context, comps: &[LocalizedElement]) -> DifferentialForm {
    let mut out = DifferentialForm::zero(ctx.n_vars());
    for (k, a) in comps.iter().enumerate() {
        out.add_term(Blade::single(k), a.clone(), ctx.denominator());
    }
    out
}

/// The exact differential of a polynomial, as a one-form.
pub fn gradient_one_form(ctx: &Context, f: &Polynomial) -> DifferentialForm {
    let mut out = DifferentialForm::zero(ctx.n_vars());
    for k in 0..ctx.n_vars() {
        out.add_term(
            Blade::single(k),
            LocalizedElement::from_poly(f.partial(k)),
            ctx.denominator(),
        );
    }
    out
}

/// Interior product `i_tau(eta)` of a vector field into a form.  On a
/// blade, contracting the differential at 0-based position `m` carries the
/// sign `(-1)^m`.
pub fn contract(ctx: &Context, tau: &Polyvector, eta: &DifferentialForm) -> Result<DifferentialForm> {
    ctx.check_form(eta)?;
    let comps = tangent_components(ctx, tau)?;
    let denom = ctx.denominator();
    let mut out = DifferentialForm::zero(ctx.n_vars());
    for (blade, a) in eta.iter() {
        for (m, &k) in blade.0.iter().enumerate() {
            if comps[k].is_zero() {
                continue;
            }
            let mut coeff = a.mul(&comps[k], denom);
            if m % 2 != 0 {
                coeff = coeff.neg();
            }
            out.add_term(blade.without(m), coeff, denom);
        }
    }
    Ok(out)
}

/// Scalar pairing of a vector field with a one-form.
pub fn pairing(
    ctx: &Context,
    tau: &Polyvector,
    phi: &DifferentialForm,
) -> Result<LocalizedElement> {
    if !phi.is_zero() && phi.homogeneous_degree() != Some(1) {
        return Err(Error::Degree("pairing expects a one-form".into()));
    }
    Ok(contract(ctx, tau, phi)?.scalar_part())
}

/// The de Rham differential: `d(a dx_J) = sum_k (da/dx_k) dx_k ^ dx_J`.
pub fn de_rham_d(ctx: &Context, eta: &DifferentialForm) -> Result<DifferentialForm> {
    ctx.check_form(eta)?;
    let n = ctx.n_vars();
    let denom = ctx.denominator();
    let mut out = DifferentialForm::zero(n);
    for (blade, a) in eta.iter() {
        for k in 0..n {
            let da = a.partial(k, denom);
            if da.is_zero() {
                continue;
            }
            if let Some((b, sign)) = Blade::single(k).wedge(blade) {
                out.add_term(b, if sign < 0 { da.neg() } else { da }, denom);
            }
        }
    }
    Ok(out)
}

/// Lie derivative of a form along a vector field, by the coordinate
/// Leibniz rule: the coefficient is differentiated along the field and
/// each `dx_k` is replaced by the exact differential of the field's `k`-th
/// component.  The Cartan formula `i_tau d + d i_tau` is a separate route
/// used as a cross-check, not the definition here.
pub fn lie_derivative(
    ctx: &Context,
    tau: &Polyvector,
    eta: &DifferentialForm,
) -> Result<DifferentialForm> {
    ctx.check_form(eta)?;
    let comps = tangent_components(ctx, tau)?;
    let n = ctx.n_vars();
    let denom = ctx.denominator();
    let mut out = DifferentialForm::zero(n);
    for (blade, a) in eta.iter() {
        out.add_term(blade.clone(), directional(ctx, &comps, a), denom);
        for (m, &k) in blade.0.iter().enumerate() {
            // d(component_k) inserted at position m
            let d_comp = {
                let mut f = DifferentialForm::zero(n);
                for l in 0..n {
                    f.add_term(Blade::single(l), comps[k].partial(l, denom), denom);
                }
                f
            };
            if d_comp.is_zero() {
                continue;
            }
            let mut prefix = DifferentialForm::zero(n);
            prefix.add_term(Blade(blade.0[..m].to_vec()), a.clone(), denom);
            let mut suffix = DifferentialForm::zero(n);
            suffix.add_term(Blade(blade.0[m + 1..].to_vec()), LocalizedElement::one(n), denom);
            out = out.add(&prefix.wedge(&d_comp, denom).wedge(&suffix, denom), denom);
        }
    }
    Ok(out)
}

/// Right action of a vector field on a top-degree form: `omega . tau =
/// -d(i_tau(omega))`.  Together with multiplication by functions this
/// satisfies the right-module relations over vector fields.
pub fn right_action_top_form(
    ctx: &Context,
    omega_elt: &DifferentialForm,
    tau: &Polyvector,
) -> Result<DifferentialForm> {
    ctx.check_form(omega_elt)?;
    let n = ctx.n_vars();
    if !omega_elt.is_zero() && omega_elt.homogeneous_degree() != Some(n) {
        return Err(Error::Degree(format!("right action expects a form of top degree {n}")));
    }
    Ok(de_rham_d(ctx, &contract(ctx, tau, omega_elt)?)?.neg())
}

/// Transfer of a polyvector to a form against the volume `c dx_1^...^dx_n`:
/// blade `i_1 < ... < i_p` (0-based) maps to the complementary blade with
/// coefficient `(-1)^(i_1+...+i_p) * a * c`.
pub fn omega_transfer(ctx: &Context, u: &Polyvector) -> Result<DifferentialForm> {
    ctx.check_polyvector(u)?;
    if !ctx.is_tangent() {
        return Err(Error::Unsupported(
            "volume transfer needs the tangent context".into(),
        ));
    }
    let n = ctx.n_vars();
    let c = ctx.denominator_poly();
    let denom = ctx.denominator();
    let mut out = DifferentialForm::zero(n);
    for (blade, a) in u.iter() {
        let mut coeff = a.mul_poly(&c, denom);
        if blade.0.iter().sum::<usize>() % 2 != 0 {
            coeff = coeff.neg();
        }
        out.add_term(blade.complement(n), coeff, denom);
    }
    Ok(out)
}

/// Exact inverse of `omega_transfer`; divides by `c` in the localized ring.
pub fn omega_transfer_inverse(ctx: &Context, eta: &DifferentialForm) -> Result<Polyvector> {
    ctx.check_form(eta)?;
    if !ctx.is_tangent() {
        return Err(Error::Unsupported(
            "volume transfer needs the tangent context".into(),
        ));
    }
    let n = ctx.n_vars();
    let denom = ctx.denominator();
    let mut out = Polyvector::zero(n);
    for (blade, b) in eta.iter() {
        let pv_blade = blade.complement(n);
        let mut coeff = match denom {
            Some(c) => b.div_by_denom(c),
            None => b.clone(),
        };
        if pv_blade.0.iter().sum::<usize>() % 2 != 0 {
            coeff = coeff.neg();
        }
        out.add_term(pv_blade, coeff, denom);
    }
    Ok(out)
}
