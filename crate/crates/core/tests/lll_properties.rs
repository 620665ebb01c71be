mod common;

use gosc_core::lll::{
    determinant, exact_lll, hermite_normal_form, hermite_normal_form_naive, lll_reduce,
    same_lattice, verify_reduced, Basis, ReductionParams,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rug::Integer;

use common::{random_basis, random_unimodular_mix, shortest_norm_sq};

fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn modular_and_naive_hnf_agree(seed in any::<u64>(), dim in 1usize..=5) {
        let mut rng = seeded(seed);
        let basis = random_basis(&mut rng, dim, dim, 20, true);
        prop_assert_eq!(hermite_normal_form(&basis).unwrap(), hermite_normal_form_naive(&basis));
    }

    #[test]
    fn unimodular_images_span_the_same_lattice(seed in any::<u64>(), dim in 1usize..=5, count in 1usize..=5) {
        let count = count.min(dim);
        let mut rng = seeded(seed);
        let basis = random_basis(&mut rng, dim, count, 30, false);
        let mixed = random_unimodular_mix(&mut rng, &basis, 10);
        prop_assert!(same_lattice(&basis, &mixed).unwrap());
        let doubled = basis.scaled(2);
        prop_assert!(!same_lattice(&basis, &doubled).unwrap());
    }

    #[test]
    fn reduction_is_verified_and_preserves_the_lattice(seed in any::<u64>(), dim in 1usize..=6, count in 1usize..=6) {
        let count = count.min(dim);
        let mut rng = seeded(seed);
        let basis = random_basis(&mut rng, dim, count, 1000, true);
        let params = ReductionParams::default();
        let reduced = lll_reduce(&basis, &params).unwrap();
        prop_assert!(verify_reduced(&reduced, &params).is_ok());
        prop_assert!(same_lattice(&basis, &reduced).unwrap());
        if dim == count {
            prop_assert_eq!(determinant(&basis).unwrap(), determinant(&reduced).unwrap());
        }
        let again = lll_reduce(&reduced, &params).unwrap();
        prop_assert!(verify_reduced(&again, &params).is_ok());
    }

    #[test]
    fn exact_and_floating_reductions_agree_on_the_lattice(seed in any::<u64>(), dim in 2usize..=5) {
        let mut rng = seeded(seed);
        let basis = random_basis(&mut rng, dim, dim, 200, true);
        let params = ReductionParams::default();
        let a = lll_reduce(&basis, &params).unwrap();
        let b = exact_lll(&basis, &params).unwrap();
        prop_assert!(verify_reduced(&b, &params).is_ok());
        prop_assert!(same_lattice(&a, &b).unwrap());
    }
}

#[test]
fn first_vector_respects_the_approximation_factor() {
    let params = ReductionParams::default();
    let mut rng = seeded(7);
    for _ in 0..60 {
        let dim = 1 + (rand::Rng::gen_range(&mut rng, 0..5usize));
        let basis = random_basis(&mut rng, dim, dim, 60, true);
        let reduced = lll_reduce(&basis, &params).unwrap();
        let lambda1 = shortest_norm_sq(&basis);
        let bound = Integer::from(&lambda1 << (dim as u32 - 1));
        assert!(reduced.norm_sq(0) <= bound);
    }
}

#[test]
fn enumeration_oracle_on_known_lattices() {
    let basis = Basis::from_columns_i64(&[vec![1, 0, 0], vec![0, 2, 0], vec![0, 0, 3]]).unwrap();
    assert_eq!(shortest_norm_sq(&basis), 1);
    // (5,0) - 2·(3,1) = (-1,-2)
    let skew = Basis::from_columns_i64(&[vec![5, 0], vec![3, 1]]).unwrap();
    assert_eq!(shortest_norm_sq(&skew), 5);
    let hexagonal = Basis::from_columns_i64(&[vec![2, 0], vec![1, 1]]).unwrap();
    assert_eq!(shortest_norm_sq(&hexagonal), 2);
}

#[test]
fn tampered_bases_fail_verification() {
    let params = ReductionParams::default();
    let mut rng = seeded(11);
    let basis = random_basis(&mut rng, 4, 4, 100, true);
    let reduced = lll_reduce(&basis, &params).unwrap();
    let mut cols = reduced.into_columns();
    let first = cols[0].clone();
    for (t, s) in cols[1].iter_mut().zip(&first) {
        *t += Integer::from(s * 5);
    }
    let tampered = Basis::from_columns(cols).unwrap();
    assert!(verify_reduced(&tampered, &params).is_err());
}
