//! Property suites: monic round trip, psi isomorphism, G-size multiplicativity and character
//! components, nuclear determinants, exponential functional equation, field axioms.

mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(MONIC_CASES))]

    #[test]
    fn monic_part(gi in 0..GROUPS.len(), seed in any::<u64>()) {
        monic_part_round_trip(gi, seed)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(ALGEBRA_CASES))]

    #[test]
    fn psi_isomorphism(gi in 0..GROUPS.len(), seed in any::<u64>()) {
        psi_is_a_ring_isomorphism(gi, seed)?;
    }

    #[test]
    fn gsize_multiplicativity(gi in 0..GROUPS.len(), seed in any::<u64>()) {
        gsize_is_multiplicative_and_componentwise(gi, seed)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(NUCLEAR_CASES))]

    #[test]
    fn nuclear_determinants(si in 0..3usize, seed in any::<u64>()) {
        nuclear_det_is_nucleus_independent_and_multiplicative(si, seed)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(EXP_CASES))]

    #[test]
    fn exp_functional_equation(qi in 0..4usize, seed in any::<u64>()) {
        exp_satisfies_the_functional_equation(qi, seed)?;
    }
}

#[test]
fn field_axioms() {
    // 27 prime powers in [2, 64]
    assert_eq!(field_axioms_hold_exhaustively_up_to_64(), 27);
}

#[test]
fn laurent_inverse() {
    laurent_inverse_round_trip_over_group_rings();
}
