//! Shared proptest strategies.
#![allow(dead_code)]

use proptest::prelude::*;
use qsk::finalg::{GaussRat, Laurent};

/// Small Gaussian rationals `(a + bi)/c`.
pub fn gauss() -> impl Strategy<Value = GaussRat> {
    (-4i64..=4, -4i64..=4, 1i64..=3)
        .prop_map(|(a, b, c)| GaussRat::ratio(a, c) + &(GaussRat::i() * &GaussRat::ratio(b, c)))
}

/// Dense vectors of small Gaussian rationals.
pub fn element(dim: usize) -> impl Strategy<Value = Vec<GaussRat>> {
    proptest::collection::vec(gauss(), dim)
}

/// Laurent polynomials with up to four terms and exponents in `-3..=3`.
pub fn laurent() -> impl Strategy<Value = Laurent> {
    proptest::collection::vec((-3i32..=3, gauss()), 0..4).prop_map(Laurent::from_terms)
}
