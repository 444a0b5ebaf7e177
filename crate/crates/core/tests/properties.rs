use num_bigint::BigInt;
use proptest::prelude::*;

use solitar_core::free_lie::{bracket, hall_basis, psi_substitute, LieElement};
use solitar_core::nilpotent_quotient::{image, nilpotent_quotient, PcPresentation};
use solitar_core::presentations::{bs_relator, format_word, parse_word, Alphabet, A, T};
use solitar_core::word_engine::{britton_reduce, t_exponent_sum, words_equal};
use solitar_core::{BSParams, FreeWord, GroupPresentation};

fn bs_params() -> impl Strategy<Value = BSParams> {
    prop::sample::select(solitar_core::fixtures::CORPUS.to_vec()).prop_map(|(m, n)| BSParams::new(m, n).unwrap())
}

fn bs_word(max_len: usize) -> impl Strategy<Value = FreeWord> {
    prop::collection::vec((0..2usize, -9i64..=9), 0..=max_len).prop_map(|syl| {
        // keep t exponents small so Britton reductions stay cheap
        FreeWord::from_syllables(syl.into_iter().map(|(g, e)| if g == T { (T, e.signum()) } else { (A, e) }))
    })
}

fn lie_element() -> impl Strategy<Value = LieElement> {
    prop::collection::vec((1usize..=3, any::<prop::sample::Index>(), -5i64..=5), 1..=4).prop_map(|terms| {
        let mut e = LieElement::zero();
        for (deg, idx, c) in terms {
            let basis = hall_basis(deg);
            e.add_term(idx.get(&basis).clone(), BigInt::from(c));
        }
        e
    })
}

proptest! {
    #[test]
    fn format_then_parse_round_trips(w in bs_word(12)) {
        let bs = Alphabet::baumslag_solitar();
        prop_assert_eq!(parse_word(&format_word(&w, &bs), &bs).unwrap(), w);
    }

    #[test]
    fn britton_normal_form_is_a_fixed_point(p in bs_params(), w in bs_word(10)) {
        let nf = britton_reduce(&p, &w);
        prop_assert!(nf.is_reduced(&p));
        prop_assert_eq!(britton_reduce(&p, &nf.to_word()), nf.clone());
        prop_assert_eq!(nf.t_exponent_sum(), t_exponent_sum(&w));
    }

    #[test]
    fn britton_reduction_is_a_homomorphism(p in bs_params(), u in bs_word(8), v in bs_word(8)) {
        let uv = u.concat(&v);
        let via_forms = britton_reduce(&p, &u).to_word().concat(&britton_reduce(&p, &v).to_word());
        prop_assert_eq!(britton_reduce(&p, &uv), britton_reduce(&p, &via_forms));
    }

    #[test]
    fn relator_conjugates_are_trivial(p in bs_params(), u in bs_word(6), g in bs_word(4), inverse in any::<bool>()) {
        let r = if inverse { bs_relator(&p).inverse() } else { bs_relator(&p) };
        prop_assert!(words_equal(&p, &u, &u.concat(&r.conjugate(&g))));
    }

    #[test]
    fn lie_bracket_laws(u in lie_element(), v in lie_element(), w in lie_element(), kappa in -4i64..=4) {
        prop_assert_eq!(bracket(&u, &v), bracket(&v, &u).neg());
        let jacobi = bracket(&bracket(&u, &v), &w)
            .add(&bracket(&bracket(&v, &w), &u))
            .add(&bracket(&bracket(&w, &u), &v));
        prop_assert!(jacobi.is_zero());
        let k = BigInt::from(kappa);
        prop_assert_eq!(psi_substitute(&k, &bracket(&u, &v)), bracket(&psi_substitute(&k, &u), &psi_substitute(&k, &v)));
    }

    #[test]
    fn psi_composes(u in lie_element(), k1 in -5i64..=5, k2 in -5i64..=5) {
        let (a, b) = (BigInt::from(k1), BigInt::from(k2));
        prop_assert_eq!(psi_substitute(&(&a * &b), &u), psi_substitute(&a, &psi_substitute(&b, &u)));
        if k1 != 0 {
            prop_assert_eq!(psi_substitute(&a, &u).is_zero(), u.is_zero());
        }
    }
}

fn quotients() -> &'static [(BSParams, PcPresentation)] {
    static CACHE: std::sync::OnceLock<Vec<(BSParams, PcPresentation)>> = std::sync::OnceLock::new();
    CACHE.get_or_init(|| {
        solitar_core::fixtures::params(&solitar_core::fixtures::ACCEPTANCE)
            .into_iter()
            .map(|p| (p, nilpotent_quotient(&GroupPresentation::baumslag_solitar(&p), 3).unwrap()))
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn quotient_map_is_a_homomorphism(idx in any::<prop::sample::Index>(), u in bs_word(6), v in bs_word(6)) {
        let (_, pc) = idx.get(quotients());
        let col = pc.collector();
        let product = col.multiply(&image(pc, &u).unwrap(), &image(pc, &v).unwrap());
        prop_assert_eq!(image(pc, &u.concat(&v)).unwrap(), product);
    }

    #[test]
    fn collector_agrees_with_embedding(idx in any::<prop::sample::Index>(), w in bs_word(8)) {
        let (_, pc) = idx.get(quotients());
        prop_assert_eq!(image(pc, &w).unwrap(), pc.image_via_embedding(&w).unwrap());
    }

    #[test]
    fn equal_group_elements_have_equal_images(idx in any::<prop::sample::Index>(), u in bs_word(6), g in bs_word(3)) {
        let (p, pc) = idx.get(quotients());
        let w = u.concat(&bs_relator(p).conjugate(&g));
        prop_assert_eq!(image(pc, &u).unwrap(), image(pc, &w).unwrap());
    }
}
