//! Property-based checks of the algebra underneath the calculus: the
//! polynomial ring, representative independence of the localized
//! coefficients, the exterior wedge, and the right-module structure on
//! top-degree forms.
//!
//! Sizes are deliberately small (three variables, low degrees, few
//! terms) so the full case count of every law finishes quickly while
//! still crossing every sign path.

use proptest::collection::vec;
use proptest::prelude::*;
use proptest::sample::subsequence;

use polyvec::calculus::{
    contract, de_rham_d, gradient_one_form, pairing, right_action_top_form, vector_field_apply,
};
use polyvec::monomial::MonomialOrder;
use polyvec::poly::Denominator;
use polyvec::rat::rat;
use polyvec::schouten::schouten_bracket;
use polyvec::{
    Blade, Context, DifferentialForm, LocalizedElement, Monomial, Polynomial, Polyvector, Rat,
};

const N: usize = 3;

fn ctx3() -> Context {
    Context::tangent_named(&["x", "y", "z"])
}

/// The localization denominator used in the representative tests.
fn denom_poly() -> Polynomial {
    // 1 + x^2
    let mut c = Polynomial::one(N);
    c.add_term(Monomial(vec![2, 0, 0]), rat(1));
    c
}

fn coeff() -> impl Strategy<Value = Rat> {
    (-4i64..=4, prop_oneof![Just(1i64), Just(2)])
        .prop_map(|(n, d)| Rat::new(n.into(), d.into()))
}

fn monomial() -> impl Strategy<Value = Monomial> {
    vec(0u32..=2, N).prop_map(Monomial)
}

fn poly() -> impl Strategy<Value = Polynomial> {
    vec((monomial(), coeff()), 0..4).prop_map(|terms| Polynomial::from_terms(N, terms))
}

fn blade() -> impl Strategy<Value = Blade> {
    subsequence((0..N).collect::<Vec<_>>(), 0..=N).prop_map(Blade)
}

fn blade_of(p: usize) -> impl Strategy<Value = Blade> {
    subsequence((0..N).collect::<Vec<_>>(), p).prop_map(Blade)
}

fn polyvector() -> impl Strategy<Value = Polyvector> {
    vec((blade(), poly()), 0..3).prop_map(|terms| {
        let mut v = Polyvector::zero(N);
        for (b, a) in terms {
            v.add_term(b, LocalizedElement::from_poly(a), None);
        }
        v
    })
}

/// Homogeneous polyvector of exterior degree `p`.
fn polyvector_of(p: usize) -> impl Strategy<Value = Polyvector> {
    vec((blade_of(p), poly()), 0..3).prop_map(move |terms| {
        let mut v = Polyvector::zero(N);
        for (b, a) in terms {
            v.add_term(b, LocalizedElement::from_poly(a), None);
        }
        v
    })
}

fn form_of(p: usize) -> impl Strategy<Value = DifferentialForm> {
    vec((blade_of(p), poly()), 0..3).prop_map(move |terms| {
        let mut w = DifferentialForm::zero(N);
        for (b, a) in terms {
            w.add_term(b, LocalizedElement::from_poly(a), None);
        }
        w
    })
}

fn form() -> impl Strategy<Value = DifferentialForm> {
    (0..=N).prop_flat_map(form_of)
}

fn vector_field() -> impl Strategy<Value = Polyvector> {
    polyvector_of(1)
}

/// A possibly non-canonical localized element: the numerator need not be
/// coprime to the denominator.
fn localized() -> impl Strategy<Value = LocalizedElement> {
    (poly(), 0u32..=2).prop_map(|(numer, power)| LocalizedElement { numer, power })
}

/// Two homogeneous polyvectors tagged with their exterior degrees.
fn graded_pair() -> impl Strategy<Value = (usize, usize, Polyvector, Polyvector)> {
    (0..=N, 0..=N)
        .prop_flat_map(|(p, q)| (Just(p), Just(q), polyvector_of(p), polyvector_of(q)))
}

/// Two homogeneous forms tagged with their degrees.
fn graded_form_pair() -> impl Strategy<Value = (usize, usize, DifferentialForm, DifferentialForm)> {
    (0..=N, 0..=N).prop_flat_map(|(p, q)| (Just(p), Just(q), form_of(p), form_of(q)))
}

proptest! {
    #[test]
    fn addition_is_commutative_and_associative(f in poly(), g in poly(), h in poly()) {
        prop_assert_eq!(f.add(&g), g.add(&f));
        prop_assert_eq!(f.add(&g).add(&h), f.add(&g.add(&h)));
    }

    #[test]
    fn zero_and_negation_behave(f in poly()) {
        prop_assert_eq!(f.add(&Polynomial::zero(N)), f.clone());
        prop_assert!(f.add(&f.neg()).is_zero());
    }

    #[test]
    fn multiplication_is_commutative_and_associative(f in poly(), g in poly(), h in poly()) {
        prop_assert_eq!(f.mul(&g), g.mul(&f));
        prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
    }

    #[test]
    fn multiplication_distributes(f in poly(), g in poly(), h in poly()) {
        prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
    }

    #[test]
    fn one_is_the_unit_and_powers_iterate(f in poly(), k in 0u32..=4) {
        prop_assert_eq!(f.mul(&Polynomial::one(N)), f.clone());
        let mut by_hand = Polynomial::one(N);
        for _ in 0..k {
            by_hand = by_hand.mul(&f);
        }
        prop_assert_eq!(f.pow(k), by_hand);
    }

    #[test]
    fn partial_derivatives_are_derivations_and_commute(f in poly(), g in poly()) {
        for i in 0..N {
            let product_rule = f.partial(i).mul(&g).add(&f.mul(&g.partial(i)));
            prop_assert_eq!(f.mul(&g).partial(i), product_rule);
            for j in 0..N {
                prop_assert_eq!(f.partial(i).partial(j), f.partial(j).partial(i));
            }
        }
    }

    #[test]
    fn substitution_is_a_ring_map(f in poly(), g in poly(), images in vec(poly(), N)) {
        prop_assert_eq!(
            f.add(&g).substitute(&images),
            f.substitute(&images).add(&g.substitute(&images))
        );
        prop_assert_eq!(
            f.mul(&g).substitute(&images),
            f.substitute(&images).mul(&g.substitute(&images))
        );
    }

    #[test]
    fn degrevlex_is_a_multiplicative_total_order(a in monomial(), b in monomial(), c in monomial()) {
        let ord = MonomialOrder::degrevlex();
        prop_assert_eq!(ord.cmp(&a, &b), ord.cmp(&b, &a).reverse());
        prop_assert_eq!(ord.cmp(&a, &b), ord.cmp(&a.mul(&c), &b.mul(&c)));
        // transitivity on the sampled triple
        let mut sorted = [a.clone(), b.clone(), c.clone()];
        sorted.sort_by(|x, y| ord.cmp(x, y));
        prop_assert_ne!(ord.cmp(&sorted[0], &sorted[1]), std::cmp::Ordering::Greater);
        prop_assert_ne!(ord.cmp(&sorted[1], &sorted[2]), std::cmp::Ordering::Greater);
        prop_assert_ne!(ord.cmp(&sorted[0], &sorted[2]), std::cmp::Ordering::Greater);
        // the unit monomial never dominates
        prop_assert_ne!(
            ord.cmp(&Monomial::one(N), &a),
            std::cmp::Ordering::Greater
        );
    }

    #[test]
    fn localized_operations_ignore_the_representative(
        a in poly(),
        k in 0u32..=2,
        pad in 1u32..=2,
        z in localized(),
    ) {
        // a / c^k and (a c^pad) / c^(k+pad) are the same fraction; every
        // operation must send them to equal results.
        let c = denom_poly();
        let d: Denominator = Some(&c);
        let plain = LocalizedElement { numer: a.clone(), power: k };
        let padded = LocalizedElement { numer: a.mul(&c.pow(pad)), power: k + pad };
        let mut lhs = plain.clone();
        lhs.normalize(d);
        let mut rhs = padded.clone();
        rhs.normalize(d);
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(plain.add(&z, d), padded.add(&z, d));
        prop_assert_eq!(plain.mul(&z, d), padded.mul(&z, d));
        prop_assert_eq!(plain.partial(0, d), padded.partial(0, d));
    }

    #[test]
    fn localized_ring_laws_hold(x in localized(), y in localized(), z in localized()) {
        let c = denom_poly();
        let d: Denominator = Some(&c);
        prop_assert_eq!(x.add(&y, d), y.add(&x, d));
        prop_assert_eq!(x.add(&y, d).add(&z, d), x.add(&y.add(&z, d), d));
        prop_assert_eq!(x.mul(&y, d), y.mul(&x, d));
        prop_assert_eq!(x.mul(&y, d).mul(&z, d), x.mul(&y.mul(&z, d), d));
        prop_assert_eq!(
            x.mul(&y.add(&z, d), d),
            x.mul(&y, d).add(&x.mul(&z, d), d)
        );
        prop_assert!(x.sub(&x, d).is_zero());
    }

    #[test]
    fn dividing_and_multiplying_by_the_denominator_round_trips(x in localized()) {
        let c = denom_poly();
        let mut x = x;
        x.normalize(Some(&c));
        let back = x.div_by_denom(&c).mul_poly(&c, Some(&c));
        prop_assert_eq!(back, x);
    }

    #[test]
    fn wedge_is_associative_and_distributes(
        u in polyvector(),
        v in polyvector(),
        w in polyvector(),
    ) {
        prop_assert_eq!(
            u.wedge(&v, None).wedge(&w, None),
            u.wedge(&v.wedge(&w, None), None)
        );
        prop_assert_eq!(
            u.wedge(&v.add(&w, None), None),
            u.wedge(&v, None).add(&u.wedge(&w, None), None)
        );
    }

    #[test]
    fn wedge_is_graded_commutative((p, q, u, v) in graded_pair()) {
        let uv = u.wedge(&v, None);
        let mut vu = v.wedge(&u, None);
        if (p * q) % 2 != 0 {
            vu = vu.neg();
        }
        prop_assert_eq!(uv, vu);
    }

    #[test]
    fn coefficients_pull_out_of_wedges(a in poly(), u in polyvector(), v in polyvector()) {
        let au = u.mul_poly(&a, None);
        prop_assert_eq!(au.wedge(&v, None), u.wedge(&v, None).mul_poly(&a, None));
    }

    #[test]
    fn bracket_of_functions_vanishes(f in poly(), g in poly()) {
        let ctx = ctx3();
        let bracket = schouten_bracket(&ctx, &Polyvector::from_poly(f), &Polyvector::from_poly(g))
            .unwrap();
        prop_assert!(bracket.is_zero());
    }

    #[test]
    fn bracket_with_a_function_is_application(tau in vector_field(), f in poly()) {
        let ctx = ctx3();
        let f_pv = Polyvector::from_poly(f.clone());
        let applied = vector_field_apply(&ctx, &tau, &LocalizedElement::from_poly(f)).unwrap();
        let lhs = schouten_bracket(&ctx, &tau, &f_pv).unwrap();
        prop_assert_eq!(lhs.scalar_part(), applied.clone());
        let rhs = schouten_bracket(&ctx, &f_pv, &tau).unwrap();
        prop_assert_eq!(rhs.scalar_part(), applied.neg());
    }

    #[test]
    fn de_rham_squares_to_zero(w in form()) {
        let ctx = ctx3();
        let dd = de_rham_d(&ctx, &de_rham_d(&ctx, &w).unwrap()).unwrap();
        prop_assert!(dd.is_zero());
    }

    #[test]
    fn de_rham_is_an_odd_derivation((p, _q, alpha, beta) in graded_form_pair()) {
        let ctx = ctx3();
        let lhs = de_rham_d(&ctx, &alpha.wedge(&beta, None)).unwrap();
        let mut second = alpha.wedge(&de_rham_d(&ctx, &beta).unwrap(), None);
        if p % 2 != 0 {
            second = second.neg();
        }
        let rhs = de_rham_d(&ctx, &alpha).unwrap().wedge(&beta, None).add(&second, None);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn contraction_is_bilinear(
        tau in vector_field(),
        sigma in vector_field(),
        w in form(),
        v in form(),
    ) {
        let ctx = ctx3();
        prop_assert_eq!(
            contract(&ctx, &tau.add(&sigma, None), &w).unwrap(),
            contract(&ctx, &tau, &w).unwrap().add(&contract(&ctx, &sigma, &w).unwrap(), None)
        );
        prop_assert_eq!(
            contract(&ctx, &tau, &w.add(&v, None)).unwrap(),
            contract(&ctx, &tau, &w).unwrap().add(&contract(&ctx, &tau, &v).unwrap(), None)
        );
    }

    #[test]
    fn pairing_with_an_exact_form_differentiates(tau in vector_field(), f in poly()) {
        let ctx = ctx3();
        let lhs = pairing(&ctx, &tau, &gradient_one_form(&ctx, &f)).unwrap();
        let rhs = vector_field_apply(&ctx, &tau, &LocalizedElement::from_poly(f)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn top_forms_are_a_right_module_over_vector_fields(
        omega in form_of(N),
        tau in vector_field(),
        sigma in vector_field(),
    ) {
        let ctx = ctx3();
        let act = |w: &DifferentialForm, t: &Polyvector| right_action_top_form(&ctx, w, t).unwrap();
        let lhs = act(&act(&omega, &tau), &sigma).sub(&act(&act(&omega, &sigma), &tau), None);
        let rhs = act(&omega, &schouten_bracket(&ctx, &tau, &sigma).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn right_action_twists_by_functions(
        omega in form_of(N),
        tau in vector_field(),
        f in poly(),
    ) {
        let ctx = ctx3();
        let act = |w: &DifferentialForm, t: &Polyvector| right_action_top_form(&ctx, w, t).unwrap();
        // omega . (f tau) = (f omega) . tau
        let f_tau = tau.mul_poly(&f, None);
        let f_omega = omega.mul_poly(&f, None);
        prop_assert_eq!(act(&omega, &f_tau), act(&f_omega, &tau));
        // (f omega) . tau = f (omega . tau) - tau(f) omega
        let twist = act(&omega, &tau).mul_poly(&f, None).sub(
            &omega.mul_coeff(
                &vector_field_apply(&ctx, &tau, &LocalizedElement::from_poly(f.clone())).unwrap(),
                None,
            ),
            None,
        );
        prop_assert_eq!(act(&f_omega, &tau), twist);
    }
}
