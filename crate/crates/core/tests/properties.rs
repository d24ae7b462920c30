use motivic_core::json::{
    a1_from_json, a1_to_json, class_from_json, class_to_json, datum_from_json, datum_to_json,
    presentation_from_json, presentation_to_json,
};
use motivic_core::{
    catalog, chi_c, e_polynomial, normalize, phi_measure, star, A1Class, BasePoint, Generator,
    LaurentInt, MuClass, Opaque, Presentation, RawClass, RawFactor, RawTerm,
};
use num_bigint::BigInt;
use proptest::prelude::*;

fn arb_laurent() -> impl Strategy<Value = LaurentInt> {
    prop::collection::vec((-2i64..=3, -3i64..=3), 1..3).prop_map(LaurentInt::from_terms)
}

fn arb_factor() -> impl Strategy<Value = RawFactor> {
    prop_oneof![
        (1i64..=6).prop_map(RawFactor::Orb),
        (1i64..=3).prop_map(RawFactor::Torus),
        (2i64..=4, 1i64..=3).prop_map(|(n, r)| RawFactor::Fermat { n, r }),
        (2i64..=4, 1i64..=3).prop_map(|(n, r)| RawFactor::FermatTrivial { n, r }),
        (0u8..3, -3i64..=3).prop_map(|(t, chi)| RawFactor::Opaque(Opaque::new(format!("x{t}"), chi))),
    ]
}

fn arb_raw() -> impl Strategy<Value = RawClass> {
    prop::collection::vec(
        (arb_laurent(), prop::collection::vec(arb_factor(), 0..3))
            .prop_map(|(coeff, factors)| RawTerm { coeff, factors }),
        0..4,
    )
    .prop_map(|terms| RawClass { terms })
}

fn arb_class() -> impl Strategy<Value = MuClass> {
    arb_raw().prop_map(|r| normalize(&r).expect("generated descriptors are valid"))
}

/// Orbit/Fermat/opaque classes only, which keeps convolutions small.
fn arb_small_class() -> impl Strategy<Value = MuClass> {
    prop::collection::vec(
        (arb_laurent(), prop::collection::vec(arb_factor(), 0..2))
            .prop_map(|(coeff, factors)| RawTerm { coeff, factors }),
        0..3,
    )
    .prop_map(|terms| normalize(&RawClass { terms }).unwrap())
}

/// Euler characteristic read directly off raw descriptors, with no rewriting.
fn raw_chi(raw: &RawClass) -> BigInt {
    raw.terms
        .iter()
        .map(|t| {
            let factors: BigInt = t
                .factors
                .iter()
                .map(|f| match f {
                    RawFactor::Orb(d) => BigInt::from(*d),
                    RawFactor::Torus(_) => BigInt::from(0),
                    RawFactor::Fermat { n, r } | RawFactor::FermatTrivial { n, r } if *r == 1 => {
                        BigInt::from(*n)
                    }
                    RawFactor::Fermat { n, r } | RawFactor::FermatTrivial { n, r } => {
                        -BigInt::from(*n).pow(*r as u32)
                    }
                    RawFactor::Opaque(o) => o.chi.clone(),
                })
                .product();
            t.coeff.eval_at_one() * factors
        })
        .sum()
}

fn arb_a1() -> impl Strategy<Value = A1Class> {
    prop::collection::vec((-2i64..=2, 1i64..=2, arb_small_class()), 0..3).prop_map(|entries| {
        let mut f = A1Class::zero();
        for (p, q, c) in entries {
            f.add_at(BasePoint(num_rational::BigRational::new(p.into(), q.into())), &c);
        }
        f
    })
}

fn arb_generator() -> impl Strategy<Value = Generator> {
    prop_oneof![
        (1u64..=5, -2i64..=2).prop_map(|(n, a)| Generator::Resolved {
            criticals: vec![(BasePoint::integer(a), catalog::power_datum(n))]
        }),
        (-2i64..=2).prop_map(|a| Generator::Resolved {
            criticals: vec![(BasePoint::integer(a), catalog::cross_datum())]
        }),
        (-2i64..=2, arb_laurent()).prop_map(|(a, p)| Generator::Constant {
            value: BasePoint::integer(a),
            fiber_class: MuClass::from_laurent(p),
        }),
        Just(Generator::SmoothProper),
    ]
}

fn arb_presentation() -> impl Strategy<Value = Presentation> {
    prop::collection::vec((-3i64..=3, arb_generator()), 0..4).prop_map(|terms| Presentation { terms })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn normalize_is_idempotent(c in arb_class()) {
        prop_assert_eq!(normalize(&c.to_raw()).unwrap(), c);
    }

    #[test]
    fn normalize_ignores_order(raw in arb_raw()) {
        let mut reversed = raw.clone();
        reversed.terms.reverse();
        for t in reversed.terms.iter_mut() {
            t.factors.reverse();
        }
        prop_assert_eq!(normalize(&raw).unwrap(), normalize(&reversed).unwrap());
    }

    #[test]
    fn normalize_is_additive_over_term_splits(a in arb_raw(), b in arb_raw()) {
        let joined = RawClass { terms: a.terms.iter().chain(&b.terms).cloned().collect() };
        prop_assert_eq!(normalize(&joined).unwrap(), &normalize(&a).unwrap() + &normalize(&b).unwrap());
    }

    #[test]
    fn chi_invariant_under_rewriting(raw in arb_raw()) {
        prop_assert_eq!(chi_c(&normalize(&raw).unwrap()), raw_chi(&raw));
    }

    #[test]
    fn ring_axioms(a in arb_class(), b in arb_class(), c in arb_class()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &MuClass::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn forget_is_multiplicative_and_idempotent(a in arb_class(), b in arb_class()) {
        prop_assert_eq!((&a * &b).forget_action(), &a.forget_action() * &b.forget_action());
        let f = a.forget_action();
        prop_assert!(f.is_trivial_action());
        prop_assert_eq!(f.forget_action(), f);
    }

    #[test]
    fn chi_is_multiplicative(a in arb_class(), b in arb_class()) {
        prop_assert_eq!(chi_c(&(&a * &b)), chi_c(&a) * chi_c(&b));
        prop_assert_eq!(chi_c(&a.forget_action()), chi_c(&a));
    }

    #[test]
    fn star_laws(a in arb_small_class(), b in arb_small_class(), k in -2i64..=3) {
        prop_assert_eq!(star(&a, &b), star(&b, &a));
        prop_assert_eq!(star(&a, &MuClass::one()), a.clone());
        prop_assert_eq!(chi_c(&star(&a, &b)), chi_c(&a) * chi_c(&b));
        let lk = LaurentInt::monomial(1, k);
        prop_assert_eq!(star(&a, &MuClass::from_laurent(lk.clone())), a.scale(&lk));
    }

    #[test]
    fn e_poly_at_one_is_chi(a in arb_class()) {
        if let Ok(e) = e_polynomial(&a) {
            prop_assert_eq!(e.eval_at_one(), chi_c(&a.forget_action()));
        }
    }

    #[test]
    fn a1_star_laws(f in arb_a1(), g in arb_a1()) {
        prop_assert_eq!(f.star(&g), g.star(&f));
        prop_assert_eq!(f.star(&A1Class::unit()), f.clone());
        prop_assert_eq!(f.star(&g).epsilon_push(), star(&f.epsilon_push(), &g.epsilon_push()));
        prop_assert_eq!(A1Class::lefschetz_at_zero().star(&f), f.scale(&LaurentInt::lefschetz()));
    }

    #[test]
    fn measure_is_additive(p in arb_presentation(), q in arb_presentation()) {
        let sum = phi_measure(&p.concat(&q)).unwrap();
        prop_assert_eq!(sum, &phi_measure(&p).unwrap() + &phi_measure(&q).unwrap());
    }

    #[test]
    fn class_json_round_trip(c in arb_class()) {
        prop_assert_eq!(class_from_json(&class_to_json(&c)).unwrap(), c);
    }

    #[test]
    fn a1_and_presentation_json_round_trip(f in arb_a1(), p in arb_presentation()) {
        prop_assert_eq!(a1_from_json(&a1_to_json(&f)).unwrap(), f);
        prop_assert_eq!(presentation_from_json(&presentation_to_json(&p)).unwrap(), p);
    }

    #[test]
    fn datum_json_round_trip(n in 1u64..=8, base in arb_laurent()) {
        let d = catalog::power_datum(n);
        prop_assert_eq!(datum_from_json(&datum_to_json(&d)).unwrap(), d);
        let s = catalog::smooth_datum(MuClass::from_laurent(base));
        prop_assert_eq!(datum_from_json(&datum_to_json(&s)).unwrap(), s);
    }
}
