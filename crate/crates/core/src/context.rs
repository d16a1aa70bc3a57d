//! Computation contexts.
//!
//! A `Context` fixes the polynomial coefficient ring (variable names), an
//! optional localization denominator `c`, and optionally a free Lie
//! algebroid presentation replacing the tangent generators.  All exterior
//! operations receive the context explicitly; elements themselves stay
//! context-free, so mixing elements across contexts is caught by the
//! variable-count and generator-range checks of the operations.
//!
//! For the tangent context the generators are the coordinate derivations,
//! the anchor is the identity and all generator brackets vanish.  A
//! `LieAlgebroidPresentation` supplies instead an anchor matrix of
//! polynomials and bracket structure functions; `validate` checks
//! anchor/bracket compatibility and the Jacobi identity on all basis
//! triples before the presentation is used.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::parse::parse_polynomial;
use crate::poly::{Denominator, LocalizedElement, Polynomial};
use crate::polyvector::{Blade, DifferentialForm, Polyvector};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct LieAlgebroidPresentation {
    pub generator_names: Vec<String>,
    /// `anchor[i][k]` is the coefficient of the `k`-th coordinate
    /// derivation in the anchor image of generator `i`.
    pub anchor: Vec<Vec<Polynomial>>,
    /// Structure functions for `i < j`: `[e_i, e_j] = sum_k c_k e_k`.
    pub bracket: BTreeMap<(usize, usize), Vec<Polynomial>>,
}

impl LieAlgebroidPresentation {
    pub fn rank(&self) -> usize {
        self.generator_names.len()
    }
}

#[derive(Clone, Debug)]
pub struct Context {
    vars: Vec<String>,
    denom: Option<Polynomial>,
    algebroid: Option<LieAlgebroidPresentation>,
}

impl Context {
    /// Tangent context: generators are the coordinate derivations.
    pub fn tangent(vars: Vec<String>) -> Self {
        Context { vars, denom: None, algebroid: None }
    }

    pub fn tangent_named(names: &[&str]) -> Self {
        Self::tangent(names.iter().map(|s| s.to_string()).collect())
    }

    /// Adds the localization denominator `c`, which must be nonzero.
    pub fn with_denominator(mut self, c: Polynomial) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::InvalidPresentation(
                "localization denominator must be nonzero".into(),
            ));
        }
        assert_eq!(c.n_vars(), self.vars.len());
        // A denominator of 1 is the plain polynomial ring.
        self.denom = if c.is_one() { None } else { Some(c) };
        Ok(self)
    }

    /// Installs a Lie algebroid presentation after validating it.
    pub fn with_algebroid(mut self, a: LieAlgebroidPresentation) -> Result<Self> {
        self.check_algebroid(&a)?;
        self.algebroid = Some(a);
        Ok(self)
    }

    pub fn n_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    /// Number of exterior generators: the algebroid rank, or the number of
    /// variables in the tangent case.
    pub fn rank(&self) -> usize {
        self.algebroid.as_ref().map_or(self.vars.len(), |a| a.rank())
    }

    pub fn generator_names(&self) -> Vec<String> {
        match &self.algebroid {
            Some(a) => a.generator_names.clone(),
            None => self.vars.clone(),
        }
    }

    pub fn is_tangent(&self) -> bool {
        self.algebroid.is_none()
    }

    pub fn algebroid(&self) -> Option<&LieAlgebroidPresentation> {
        self.algebroid.as_ref()
    }

    pub fn denominator(&self) -> Denominator<'_> {
        self.denom.as_ref()
    }

    /// The denominator polynomial, `1` when none is installed.
    pub fn denominator_poly(&self) -> Polynomial {
        self.denom
            .clone()
            .unwrap_or_else(|| Polynomial::one(self.vars.len()))
    }

    pub fn czero(&self) -> LocalizedElement {
        LocalizedElement::zero(self.vars.len())
    }

    pub fn cone(&self) -> LocalizedElement {
        LocalizedElement::one(self.vars.len())
    }

    /// Checks that a polyvector lives over this context: its coefficients
    /// use the same variable count and its blades stay below the rank.
    pub fn check_polyvector(&self, v: &Polyvector) -> Result<()> {
        if v.n_vars() != self.vars.len() {
            return Err(Error::ContextMismatch(format!(
                "polyvector over {} variables used in a {}-variable context",
                v.n_vars(),
                self.vars.len()
            )));
        }
        let r = self.rank();
        for (blade, _) in v.iter() {
            if let Some(&i) = blade.0.iter().find(|&&i| i >= r) {
                return Err(Error::ContextMismatch(format!(
                    "generator index {i} out of range for rank {r}"
                )));
            }
        }
        Ok(())
    }

    /// Checks that a form lives over this context.  Form generators are
    /// always the coordinate differentials, so the bound is the variable
    /// count even in an algebroid context.
    pub fn check_form(&self, f: &DifferentialForm) -> Result<()> {
        let n = self.vars.len();
        if f.n_vars() != n {
            return Err(Error::ContextMismatch(format!(
                "form over {} variables used in a {n}-variable context",
                f.n_vars()
            )));
        }
        for (blade, _) in f.iter() {
            if let Some(&i) = blade.0.iter().find(|&&i| i >= n) {
                return Err(Error::ContextMismatch(format!(
                    "differential index {i} out of range for {n} variables"
                )));
            }
        }
        Ok(())
    }

    /// Action of generator `i` on a coefficient: the coordinate derivation
    /// in the tangent case, the anchor image otherwise.
    pub fn apply_generator(&self, i: usize, a: &LocalizedElement) -> LocalizedElement {
        match &self.algebroid {
            None => a.partial(i, self.denominator()),
            Some(alg) => {
                let mut out = self.czero();
                for (k, coeff) in alg.anchor[i].iter().enumerate() {
                    if !coeff.is_zero() {
                        out = out.add(
                            &a.partial(k, self.denominator()).mul_poly(coeff, self.denominator()),
                            self.denominator(),
                        );
                    }
                }
                out
            }
        }
    }

    /// The bracket `[e_i, e_j]` of two generators as a polyvector
    /// (zero in the tangent case).
    pub fn generator_bracket(&self, i: usize, j: usize) -> Polyvector {
        let n = self.vars.len();
        let Some(alg) = &self.algebroid else {
            return Polyvector::zero(n);
        };
        if i == j {
            return Polyvector::zero(n);
        }
        let (key, flip) = if i < j { ((i, j), false) } else { ((j, i), true) };
        let mut out = Polyvector::zero(n);
        if let Some(coeffs) = alg.bracket.get(&key) {
            for (k, c) in coeffs.iter().enumerate() {
                if !c.is_zero() {
                    let a = LocalizedElement::from_poly(if flip { c.neg() } else { c.clone() });
                    out.add_term(Blade::single(k), a, self.denominator());
                }
            }
        }
        out
    }


    fn check_algebroid(&self, a: &LieAlgebroidPresentation) -> Result<()> {
        let n = self.vars.len();
        let r = a.rank();
        if r == 0 {
            return Err(Error::InvalidPresentation("algebroid rank must be positive".into()));
        }
        if a.anchor.len() != r {
            return Err(Error::InvalidPresentation(format!(
                "anchor has {} rows, expected rank {}",
                a.anchor.len(),
                r
            )));
        }
        for (i, row) in a.anchor.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidPresentation(format!(
                    "anchor row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
        }
        for ((i, j), coeffs) in &a.bracket {
            if *i >= *j || *j >= r {
                return Err(Error::InvalidPresentation(format!(
                    "bracket key ({i}, {j}) out of range (need i < j < {r})"
                )));
            }
            if coeffs.len() != r {
                return Err(Error::InvalidPresentation(format!(
                    "bracket ({i}, {j}) has {} coefficients, expected {r}",
                    coeffs.len()
                )));
            }
        }

        let scratch = Context {
            vars: self.vars.clone(),
            denom: None,
            algebroid: Some(a.clone()),
        };

        // Anchor compatibility: rho([e_i, e_j]) = [rho(e_i), rho(e_j)]
        // as derivations, componentwise on each coordinate.
        for i in 0..r {
            for j in (i + 1)..r {
                for k in 0..n {
                    let mut lhs = Polynomial::zero(n);
                    for l in 0..n {
                        lhs = lhs
                            .add(&a.anchor[i][l].mul(&a.anchor[j][k].partial(l)))
                            .sub(&a.anchor[j][l].mul(&a.anchor[i][k].partial(l)));
                    }
                    let mut rhs = Polynomial::zero(n);
                    if let Some(coeffs) = a.bracket.get(&(i, j)) {
                        for (m, c) in coeffs.iter().enumerate() {
                            rhs = rhs.add(&c.mul(&a.anchor[m][k]));
                        }
                    }
                    if lhs != rhs {
                        return Err(Error::InvalidPresentation(format!(
                            "anchor incompatible with bracket [e_{i}, e_{j}] in coordinate {k}"
                        )));
                    }
                }
            }
        }

        // Jacobi on all basis triples, using the module Leibniz rule for
        // the outer bracket of a coefficient-carrying inner bracket:
        // [[e_i, e_j], e_k] + [[e_j, e_k], e_i] + [[e_k, e_i], e_j] = 0.
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let t1 = scratch.bracket_with_generator(&scratch.generator_bracket(i, j), k);
                    let t2 = scratch.bracket_with_generator(&scratch.generator_bracket(j, k), i);
                    let t3 = scratch.bracket_with_generator(&scratch.generator_bracket(k, i), j);
                    let sum = t1.add(&t2, None).add(&t3, None);
                    if !sum.is_zero() {
                        return Err(Error::InvalidPresentation(format!(
                            "Jacobi identity fails on basis triple ({i}, {j}, {k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `[v, e_k]` for a degree-1 polyvector `v` with coefficient functions,
    /// via `[a e_m, e_k] = a [e_m, e_k] - rho(e_k)(a) e_m`.  Used by the
    /// Jacobi validity check.
    fn bracket_with_generator(&self, v: &Polyvector, k: usize) -> Polyvector {
        let n = self.vars.len();
        let mut out = Polyvector::zero(n);
        for (blade, coeff) in v.iter() {
            assert_eq!(blade.len(), 1);
            let m = blade.0[0];
            let inner = self.generator_bracket(m, k).mul_coeff(coeff, None);
            out = out.add(&inner, None);
            let da = self.apply_generator(k, coeff);
            out.add_term(Blade::single(m), da.neg(), None);
        }
        out
    }
}

#[derive(Deserialize)]
struct AlgebroidJson {
    vars: Vec<String>,
    generators: Vec<String>,
    anchor: Vec<Vec<String>>,
    #[serde(default)]
    bracket: Vec<BracketEntryJson>,
}

#[derive(Deserialize)]
struct BracketEntryJson {
    args: [String; 2],
    #[serde(default)]
    out: BTreeMap<String, String>,
}

/// Loads a context from the JSON algebroid schema:
///
/// ```json
/// {
///   "vars": ["x", "y"],
///   "generators": ["e1", "e2"],
///   "anchor": [["1", "0"], ["x", "0"]],
///   "bracket": [{ "args": ["e1", "e2"], "out": { "e1": "1" } }]
/// }
/// ```
///
/// Anchor entries and bracket coefficients are polynomial expressions in
/// `vars`.  Bracket entries may be listed in either argument order; the
/// loader antisymmetrizes, and pairs never mentioned have zero bracket.
/// The presentation is validated before the context is returned.
pub fn context_from_algebroid_json(src: &str) -> Result<Context> {
    let data: AlgebroidJson = serde_json::from_str(src)?;
    let vars = data.vars;
    let r = data.generators.len();
    let find_gen = |name: &str| -> Result<usize> {
        data.generators
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| Error::InvalidInput(format!("unknown generator {name:?} in bracket")))
    };
    let mut anchor = Vec::with_capacity(r);
    if data.anchor.len() != r {
        return Err(Error::InvalidInput(format!(
            "anchor has {} rows for {} generators",
            data.anchor.len(),
            r
        )));
    }
    for row in &data.anchor {
        let mut prow = Vec::with_capacity(vars.len());
        if row.len() != vars.len() {
            return Err(Error::InvalidInput(format!(
                "anchor row has {} entries for {} variables",
                row.len(),
                vars.len()
            )));
        }
        for entry in row {
            prow.push(parse_polynomial(entry, &vars)?);
        }
        anchor.push(prow);
    }
    let mut bracket: BTreeMap<(usize, usize), Vec<Polynomial>> = BTreeMap::new();
    for entry in &data.bracket {
        let i = find_gen(&entry.args[0])?;
        let j = find_gen(&entry.args[1])?;
        if i == j {
            // A diagonal entry must be zero by antisymmetry.
            for (g, c) in &entry.out {
                let p = parse_polynomial(c, &vars)?;
                if !p.is_zero() {
                    return Err(Error::InvalidPresentation(format!(
                        "bracket [{0}, {0}] must vanish, found {g}: {c}",
                        entry.args[0]
                    )));
                }
            }
            continue;
        }
        let (key, flip) = if i < j { ((i, j), false) } else { ((j, i), true) };
        let mut coeffs = vec![Polynomial::zero(vars.len()); r];
        for (g, c) in &entry.out {
            let k = find_gen(g)?;
            let p = parse_polynomial(c, &vars)?;
            coeffs[k] = if flip { p.neg() } else { p };
        }
        match bracket.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeffs);
            }
            std::collections::btree_map::Entry::Occupied(o) => {
                // Listed in both orders: the two must agree up to sign.
                if *o.get() != coeffs {
                    return Err(Error::InvalidPresentation(format!(
                        "bracket [{}, {}] listed twice with incompatible values",
                        entry.args[0], entry.args[1]
                    )));
                }
            }
        }
    }
    let presentation = LieAlgebroidPresentation {
        generator_names: data.generators,
        anchor,
        bracket,
    };
    Context::tangent(vars).with_algebroid(presentation)
}
