//! Temperley–Lieb diagrams, the Markov trace and Jones-projection words.

mod common;

use common::laurent;
use num_traits::{One, Zero};
use proptest::prelude::*;
use qsk::finalg::{is_tracial, validate_algebra, GaussRat, Laurent, LinearFunctional, Scalar};
use qsk::temperley_lieb::{
    cable, compose, compose_all, compose_with_loop, jones_projection, jones_word, markov_trace,
    star, tl_algebra, tl_basis, v_word, JonesVariant, TLDiagram, TLElement, TlError,
};

/// Random element of `TL_n` with up to five terms.
fn tl_element(n: usize) -> impl Strategy<Value = TLElement> {
    let basis = tl_basis(n);
    let len = basis.len();
    proptest::collection::vec((0..len, laurent()), 0..5).prop_map(move |terms| {
        TLElement::from_terms(n, terms.into_iter().map(|(i, c)| (basis[i].clone(), c))).unwrap()
    })
}

#[test]
fn tl_algebras_are_star_algebras_with_a_tracial_markov_trace() {
    for n in 0..=4 {
        let a = tl_algebra(n);
        let r = validate_algebra(&a);
        assert!(r.is_ok(), "TL{n}: {r}");
        let tr = LinearFunctional::new(
            tl_basis(n)
                .into_iter()
                .map(|d| markov_trace(&TLElement::diagram(d, Laurent::one())))
                .collect(),
        );
        assert!(is_tracial(&a, &tr));
    }
}

#[test]
fn words_are_projections_of_the_expected_trace() {
    for k in 0..=2 {
        let n = JonesVariant::MinusOne.min_strands(k);
        let w = jones_word(JonesVariant::MinusOne, k, n).unwrap();
        // e_[-1,k] is a projection of trace δ^{-2(k+1)}.
        assert_eq!(
            markov_trace(&w),
            Laurent::delta_pow(-2 * (k as i32 + 1)),
            "k = {k}"
        );
        for l in 0..=1 {
            let n = JonesVariant::Shift(l).min_strands(k).max(1);
            let w = jones_word(JonesVariant::Shift(l), k, n).unwrap();
            assert_eq!(
                markov_trace(&w),
                Laurent::delta_pow(-2 * k as i32),
                "l = {l}, k = {k}"
            );
        }
    }
    assert_eq!(
        jones_word(JonesVariant::MinusOne, 0, 2).unwrap(),
        jones_projection(2, 1).unwrap()
    );
    assert!(matches!(
        jones_word(JonesVariant::MinusOne, 2, 4),
        Err(TlError::AmbientTooSmall { needed: 6, n: 4 })
    ));
}

#[test]
fn v_words_intertwine_jones_projections() {
    // v_k v_k* = δ^{2k} e_k⋯e_2 e_1 e_2⋯e_k, and each e_{j+1} e_j e_{j+1}
    // collapses to δ⁻² e_{j+1}, leaving δ² e_k.
    for n in 3..=5 {
        for k in 1..n {
            let v = v_word(k, n).unwrap();
            let vv = compose(&v, &star(&v)).unwrap();
            assert_eq!(
                vv,
                jones_projection(n, k)
                    .unwrap()
                    .scale(&Laurent::delta_pow(2)),
                "n = {n}, k = {k}"
            );
        }
    }
}

#[test]
fn diagram_validation_and_errors() {
    assert!(TLDiagram::new(vec![2, 3, 0, 1]).is_err()); // crossing
    assert!(TLDiagram::new(vec![1, 0, 2]).is_err());
    assert!(TLDiagram::cup_cap(3, 3).is_err());
    assert!(compose(&TLElement::identity(2), &TLElement::identity(3)).is_err());
    assert!(matches!(
        cable(&TLElement::identity(2), 0),
        Err(TlError::ZeroCable)
    ));
    assert_eq!(TLDiagram::identity(3).through_strands(), 3);
    assert_eq!(TLDiagram::cup_cap(4, 2).unwrap().through_strands(), 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn trace_star_and_associativity(x in tl_element(4), y in tl_element(4), z in tl_element(4)) {
        let xy = compose(&x, &y).unwrap();
        prop_assert_eq!(markov_trace(&xy), markov_trace(&compose(&y, &x).unwrap()));
        prop_assert_eq!(star(&xy), compose(&star(&y), &star(&x)).unwrap());
        prop_assert_eq!(compose(&xy, &z).unwrap(), compose(&x, &compose(&y, &z).unwrap()).unwrap());
        prop_assert_eq!(markov_trace(&star(&x)), markov_trace(&x).conj());
    }

    #[test]
    fn markov_property_on_random_elements(x in tl_element(3)) {
        let e = jones_projection(4, 3).unwrap();
        let lhs = markov_trace(&compose(&x.embed(1), &e).unwrap());
        prop_assert_eq!(lhs, markov_trace(&x) * &Laurent::delta_pow(-2));
        prop_assert_eq!(markov_trace(&x.embed(1)), markov_trace(&x));
    }

    #[test]
    fn cabling_is_multiplicative_with_loop_value_delta_power(x in tl_element(3), y in tl_element(3), m in 1usize..=2) {
        let lhs = compose(&cable(&x, m).unwrap(), &cable(&y, m).unwrap()).unwrap();
        let rhs = cable(&compose_with_loop(&x, &y, &Laurent::delta_pow(m as i32)).unwrap(), m).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn specialization_is_a_homomorphism(x in tl_element(3), y in tl_element(3), num in 1i64..5, den in 1i64..4) {
        let d = GaussRat::ratio(num, den);
        let xy = compose(&x, &y).unwrap();
        let ex = x.eval_at(&d).unwrap();
        let ey = y.eval_at(&d).unwrap();
        // Compare against explicit composition of the specialized terms.
        let mut expected = std::collections::BTreeMap::<TLDiagram, GaussRat>::new();
        for (dx, cx) in &ex {
            for (dy, cy) in &ey {
                let (dd, loops) = dx.compose(dy).unwrap();
                let mut c = cx.clone() * cy;
                for _ in 0..loops {
                    c = c * &d;
                }
                let slot = expected.entry(dd).or_insert_with(GaussRat::zero);
                *slot += &c;
            }
        }
        expected.retain(|_, c| !c.is_zero());
        prop_assert_eq!(xy.eval_at(&d).unwrap(), expected);
    }
}

#[test]
fn products_of_generators_match_the_algebra_table() {
    let n = 4;
    let gens: Vec<TLElement> = (1..n).map(|i| jones_projection(n, i).unwrap()).collect();
    let w = compose_all(n, &[gens[0].clone(), gens[2].clone()]).unwrap();
    assert_eq!(w, compose(&gens[2], &gens[0]).unwrap());
    assert_eq!(w.len(), 1);
}
