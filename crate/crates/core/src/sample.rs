//! Deterministic random generation of algebraic data.
//!
//! All randomised checks in the crate draw from a `Sampler`, a thin wrapper
//! around a counter-based generator seeded explicitly by the caller.  The
//! same seed always replays the same stream, across platforms and across
//! runs, so every reported counterexample can be reproduced from its seed
//! and index alone.
//!
//! Sizes are kept deliberately small: degree and term counts default to
//! values where thousands of identity instances finish quickly, yet the
//! expressions are rich enough to exercise every sign path.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bv::Connection;
use crate::calculus::{de_rham_d, one_form_from_components};
use crate::context::Context;
use crate::monomial::Monomial;
use crate::poly::{LocalizedElement, Polynomial};
use crate::polyvector::{Blade, DifferentialForm, Polyvector};
use crate::rat::{rat, Rat};

/// Seeded source of polynomials, coefficients, polyvectors, forms and
/// connections over a fixed context.
pub struct Sampler {
    rng: ChaCha8Rng,
    /// Largest total degree of any sampled monomial.
    pub max_poly_degree: u32,
    /// Largest number of monomials per sampled polynomial.
    pub max_terms: usize,
    /// Coefficient numerators are drawn from `[-coeff_bound, coeff_bound]`.
    pub coeff_bound: i64,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), max_poly_degree: 2, max_terms: 3, coeff_bound: 3 }
    }

    /// Uniform integer in `[lo, hi]`.
    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    /// Uniform index below `n`.
    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    /// Nonzero rational with small numerator and denominator 1 or 2.
    pub fn rational(&mut self) -> Rat {
        let mut n = 0;
        while n == 0 {
            n = self.int(-self.coeff_bound, self.coeff_bound);
        }
        let d = if self.rng.gen_bool(0.25) { 2 } else { 1 };
        Rat::new(n.into(), d.into())
    }

    pub fn monomial(&mut self, n_vars: usize) -> Monomial {
        let mut m = Monomial::one(n_vars);
        let degree = self.int(0, self.max_poly_degree as i64) as u32;
        for _ in 0..degree {
            m.0[self.index(n_vars)] += 1;
        }
        m
    }

    /// Polynomial with at most `max_terms` monomials; occasionally zero.
    pub fn polynomial(&mut self, n_vars: usize) -> Polynomial {
        let mut p = Polynomial::zero(n_vars);
        let terms = self.index(self.max_terms) + 1;
        for _ in 0..terms {
            p.add_term(self.monomial(n_vars), self.rational());
        }
        p
    }

    pub fn nonzero_polynomial(&mut self, n_vars: usize) -> Polynomial {
        loop {
            let p = self.polynomial(n_vars);
            if !p.is_zero() {
                return p;
            }
        }
    }

    /// Coefficient in the context's ring: a polynomial, pushed below a
    /// power of the denominator when the context has one.
    pub fn coefficient(&mut self, ctx: &Context) -> LocalizedElement {
        let mut a = LocalizedElement::from_poly(self.polynomial(ctx.n_vars()));
        if let Some(c) = ctx.denominator() {
            let power = self.index(3);
            for _ in 0..power {
                a = a.div_by_denom(c);
            }
        }
        a
    }

    /// Strictly increasing blade of the given length over the context's
    /// generators; `len` must not exceed the rank.
    pub fn blade(&mut self, ctx: &Context, len: usize) -> Blade {
        let rank = ctx.rank();
        assert!(len <= rank, "blade length {len} exceeds rank {rank}");
        let mut picked: Vec<usize> = Vec::with_capacity(len);
        while picked.len() < len {
            let i = self.index(rank);
            if !picked.contains(&i) {
                picked.push(i);
            }
        }
        picked.sort_unstable();
        Blade(picked)
    }

    /// Homogeneous polyvector of exterior degree `p`; nonzero unless a
    /// rare full cancellation occurs.
    pub fn polyvector_of_degree(&mut self, ctx: &Context, p: usize) -> Polyvector {
        let denom = ctx.denominator();
        let mut out = Polyvector::zero(ctx.n_vars());
        let terms = self.index(2) + 1;
        for _ in 0..terms {
            out.add_term(self.blade(ctx, p), self.coefficient(ctx), denom);
        }
        out
    }

    /// Homogeneous polyvector of a random degree up to `max_degree`
    /// (capped by the rank).
    pub fn polyvector(&mut self, ctx: &Context, max_degree: usize) -> Polyvector {
        let cap = max_degree.min(ctx.rank());
        let degree = self.index(cap + 1);
        self.polyvector_of_degree(ctx, degree)
    }

    /// Homogeneous differential form of a random degree up to
    /// `max_degree` (capped by the variable count).
    pub fn form(&mut self, ctx: &Context, max_degree: usize) -> DifferentialForm {
        let n = ctx.n_vars();
        let degree = self.index(max_degree.min(n) + 1);
        let denom = ctx.denominator();
        let mut out = DifferentialForm::zero(n);
        let terms = self.index(2) + 1;
        for _ in 0..terms {
            let mut picked: Vec<usize> = Vec::with_capacity(degree);
            while picked.len() < degree {
                let i = self.index(n);
                if !picked.contains(&i) {
                    picked.push(i);
                }
            }
            picked.sort_unstable();
            out.add_term(Blade(picked), self.coefficient(ctx), denom);
        }
        out
    }

    /// One-form with coefficient entries from the context's ring; not
    /// closed in general.
    pub fn one_form(&mut self, ctx: &Context) -> DifferentialForm {
        let comps: Vec<LocalizedElement> =
            (0..ctx.n_vars()).map(|_| self.coefficient(ctx)).collect();
        one_form_from_components(ctx, &comps)
    }

    /// Exact one-form `d(a)` for a sampled coefficient `a`; closed by
    /// construction.
    pub fn exact_one_form(&mut self, ctx: &Context) -> DifferentialForm {
        let a = self.coefficient(ctx);
        let f = DifferentialForm::from_coeff(a);
        de_rham_d(ctx, &f).expect("d of a function")
    }

    /// One-form that is certainly not closed: a sampled form retried until
    /// its de Rham differential is nonzero.  Needs at least two variables.
    pub fn non_closed_one_form(&mut self, ctx: &Context) -> DifferentialForm {
        assert!(ctx.n_vars() >= 2, "every one-form in one variable is closed");
        loop {
            let phi = self.one_form(ctx);
            if !de_rham_d(ctx, &phi).expect("d of a one-form").is_zero() {
                return phi;
            }
        }
    }

    /// Connection with sampled coefficient values on the generators.
    pub fn connection(&mut self, ctx: &Context) -> Connection {
        Connection { values: (0..ctx.rank()).map(|_| self.coefficient(ctx)).collect() }
    }

    /// Vector with entries drawn uniformly from `[lo, hi]`.
    pub fn int_vec(&mut self, len: usize, lo: i64, hi: i64) -> Vec<i64> {
        (0..len).map(|_| self.int(lo, hi)).collect()
    }

    /// Rational vector with small integer entries, at least one nonzero.
    pub fn nonzero_rat_vec(&mut self, len: usize) -> Vec<Rat> {
        loop {
            let v: Vec<Rat> =
                (0..len).map(|_| rat(self.int(-self.coeff_bound, self.coeff_bound))).collect();
            if v.iter().any(|c| !c.is_zero()) {
                return v;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn same_seed_replays_the_stream() {
        let ctx = Context::tangent_named(&["x", "y", "z"]);
        let mut s1 = Sampler::new(42);
        let mut s2 = Sampler::new(42);
        for _ in 0..20 {
            assert_eq!(s1.polynomial(3), s2.polynomial(3));
            assert_eq!(s1.polyvector(&ctx, 3), s2.polyvector(&ctx, 3));
            assert_eq!(s1.one_form(&ctx), s2.one_form(&ctx));
        }
        let mut s3 = Sampler::new(43);
        let differs = (0..20).any(|_| s1.polynomial(3) != s3.polynomial(3));
        assert!(differs, "different seeds should diverge");
    }

    #[test]
    fn sampled_data_respects_bounds() {
        let ctx = Context::tangent_named(&["x", "y"]);
        let mut s = Sampler::new(7);
        for _ in 0..100 {
            let p = s.polynomial(2);
            assert!(p.num_terms() <= s.max_terms);
            let v = s.polyvector_of_degree(&ctx, 2);
            assert!(v.is_zero() || v.homogeneous_degree() == Some(2));
            assert!(!s.rational().is_zero());
        }
    }

    #[test]
    fn localized_coefficients_appear_with_denominator() {
        let c = crate::parse::parse_polynomial("1 + x^2", &["x".to_string(), "y".to_string()])
            .unwrap();
        let ctx = Context::tangent_named(&["x", "y"]).with_denominator(c).unwrap();
        let mut s = Sampler::new(5);
        let saw_power = (0..50).any(|_| s.coefficient(&ctx).power > 0);
        assert!(saw_power, "denominator powers should occur in samples");
    }

    #[test]
    fn closedness_of_special_forms() {
        let ctx = Context::tangent_named(&["x", "y"]);
        let mut s = Sampler::new(11);
        for _ in 0..20 {
            let phi = s.exact_one_form(&ctx);
            assert!(de_rham_d(&ctx, &phi).unwrap().is_zero());
            let psi = s.non_closed_one_form(&ctx);
            assert!(!de_rham_d(&ctx, &psi).unwrap().is_zero());
        }
    }
}
