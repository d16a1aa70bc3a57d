//! Batalin-Vilkovisky operators.
//!
//! A right connection assigns to each exterior generator a coefficient
//! `conn(e_i)` and extends to all vector fields by `conn(a t) = a conn(t) -
//! t(a)`.  From such data a degree-1 operator on polyvectors is built: on
//! a pure blade it is the alternating sum of `conn` over the slots plus the
//! alternating double sum of generator brackets, and a coefficient is
//! peeled off through the Schouten bracket, `d(a E) = a d(E) + [a, E]`.
//! Conversely the operator's values on the generators recover the
//! connection, which makes the two constructions mutually inverse.
//!
//! The volume datum `c dx_1^...^dx_n` together with a one-form `phi` gives
//! the connection `conn(d_i) = -d_i(c)/c + phi_i`; the resulting operator
//! is the transfer of `-d_DR + phi^` through the volume.  The contraction
//! differential (`koszul_differential`) keeps only the `phi` part and no
//! bracket terms; it squares to zero for every `phi`.

use crate::calculus::one_form_components;
use crate::context::Context;
use crate::poly::LocalizedElement;
use crate::polyvector::{Blade, DifferentialForm, Polyvector};
use crate::schouten::schouten_bracket;
use crate::{Error, Result};

/// Right connection on the free module of vector fields, stored by its
/// values on the exterior generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    pub values: Vec<LocalizedElement>,
}

impl Connection {
    pub fn zero(ctx: &Context) -> Self {
        Connection { values: vec![LocalizedElement::zero(ctx.n_vars()); ctx.rank()] }
    }

    pub fn check(&self, ctx: &Context) -> Result<()> {
        if self.values.len() != ctx.rank() {
            return Err(Error::ContextMismatch(format!(
                "connection has {} values for rank {}",
                self.values.len(),
                ctx.rank()
            )));
        }
        Ok(())
    }
}

/// Connection of the volume `c dx_1^...^dx_n` twisted by a one-form:
/// `conn(d_i) = -d_i(c)/c + phi_i`.
pub fn connection_from_volume(ctx: &Context, phi: &DifferentialForm) -> Result<Connection> {
    if !ctx.is_tangent() {
        return Err(Error::Unsupported(
            "volume connections need the tangent context".into(),
        ));
    }
    let comps = one_form_components(ctx, phi)?;
    let n = ctx.n_vars();
    let denom = ctx.denominator();
    let mut values = Vec::with_capacity(n);
    for (i, p) in comps.into_iter().enumerate() {
        let log_part = match denom {
            None => LocalizedElement::zero(n),
            Some(c) => LocalizedElement::from_poly(c.partial(i)).div_by_denom(c),
        };
        values.push(p.add(&log_part.neg(), denom));
    }
    Ok(Connection { values })
}

/// `conn` extended to an arbitrary vector field: `conn(a e_i) =
/// a conn(e_i) - e_i(a)`, summed over the terms.
pub fn conn_apply(ctx: &Context, conn: &Connection, tau: &Polyvector) -> Result<LocalizedElement> {
    ctx.check_polyvector(tau)?;
    conn.check(ctx)?;
    if !tau.is_zero() && tau.homogeneous_degree() != Some(1) {
        return Err(Error::Degree("connection applies to vector fields only".into()));
    }
    let denom = ctx.denominator();
    let mut out = LocalizedElement::zero(ctx.n_vars());
    for (blade, a) in tau.iter() {
        let i = blade.0[0];
        out = out.add(&a.mul(&conn.values[i], denom), denom);
        out = out.add(&ctx.apply_generator(i, a).neg(), denom);
    }
    Ok(out)
}

/// The degree-1 operator of a right connection.
pub fn bv_from_connection(ctx: &Context, conn: &Connection, u: &Polyvector) -> Result<Polyvector> {
    ctx.check_polyvector(u)?;
    conn.check(ctx)?;
    let n = ctx.n_vars();
    let denom = ctx.denominator();
    let mut out = Polyvector::zero(n);
    for (blade, a) in u.iter() {
        if blade.is_empty() {
            continue;
        }
        let db = bv_blade(ctx, conn, blade);
        out = out.add(&db.mul_coeff(a, denom), denom);
        // d(a E) = a d(E) + [a, E]
        let coeff_pv = Polyvector::from_coeff(a.clone());
        let mut blade_pv = Polyvector::zero(n);
        blade_pv.add_term(blade.clone(), LocalizedElement::one(n), denom);
        out = out.add(&schouten_bracket(ctx, &coeff_pv, &blade_pv)?, denom);
    }
    Ok(out)
}

/// Value on a pure unit blade: alternating `conn` over the slots plus the
/// alternating double sum of generator brackets.
fn bv_blade(ctx: &Context, conn: &Connection, blade: &Blade) -> Polyvector {
    let n = ctx.n_vars();
    let denom = ctx.denominator();
    let mut out = Polyvector::zero(n);
    for (j, &i) in blade.0.iter().enumerate() {
        let mut coeff = conn.values[i].clone();
        if j % 2 != 0 {
            coeff = coeff.neg();
        }
        out.add_term(blade.without(j), coeff, denom);
    }
    if !ctx.is_tangent() {
        for j in 0..blade.len() {
            for k in (j + 1)..blade.len() {
                let br = ctx.generator_bracket(blade.0[j], blade.0[k]);
                if br.is_zero() {
                    continue;
                }
                let mut rest = blade.0.clone();
                rest.remove(k);
                rest.remove(j);
                let mut rest_pv = Polyvector::zero(n);
                rest_pv.add_term(Blade(rest), LocalizedElement::one(n), denom);
                let mut term = br.wedge(&rest_pv, denom);
                if (j + k) % 2 != 0 {
                    term = term.neg();
                }
                out = out.add(&term, denom);
            }
        }
    }
    out
}

/// Reads a connection back from a degree-1 operator by probing the
/// generators.  No validation is performed on `d`.
pub fn connection_from_bv(
    ctx: &Context,
    mut d: impl FnMut(&Polyvector) -> Result<Polyvector>,
) -> Result<Connection> {
    let n = ctx.n_vars();
    let mut values = Vec::with_capacity(ctx.rank());
    for i in 0..ctx.rank() {
        values.push(d(&Polyvector::generator(n, i))?.scalar_part());
    }
    Ok(Connection { values })
}

/// Contraction differential of the Koszul complex: `A`-linear, sends a
/// blade to the alternating sum of `phi`-components over its slots.
pub fn koszul_differential(
    ctx: &Context,
    phi: &DifferentialForm,
    u: &Polyvector,
) -> Result<Polyvector> {
    if !ctx.is_tangent() {
        return Err(Error::Unsupported(
            "the contraction differential needs the tangent context".into(),
        ));
    }
    ctx.check_polyvector(u)?;
    let comps = one_form_components(ctx, phi)?;
    let n = ctx.n_vars();
    let denom = ctx.denominator();
    let mut out = Polyvector::zero(n);
    for (blade, a) in u.iter() {
        for (m, &i) in blade.0.iter().enumerate() {
            if comps[i].is_zero() {
                continue;
            }
            let mut coeff = a.mul(&comps[i], denom);
            if m % 2 != 0 {
                coeff = coeff.neg();
            }
            out.add_term(blade.without(m), coeff, denom);
        }
    }
    Ok(out)
}
