mod common;

use ncgeo::calculus::{exterior_dimension, quadratic_dimension, BraidData, RankMethod, ScaleLimits};
use ncgeo::group::{ClassCalculus, FiniteGroup};
use ncgeo::linalg::modular::modular_rank_int;

fn a4_braid() -> BraidData {
    BraidData::new(&ClassCalculus::from_label(FiniteGroup::alternating4(), "t").unwrap())
}

#[test]
fn factorial_matches_signed_permutation_sum() {
    let limits = ScaleLimits::default();
    let s3 = BraidData::new(&ClassCalculus::from_label(FiniteGroup::symmetric3(), "(12)").unwrap());
    for (braid, max) in [(a4_braid(), 4), (s3, 3)] {
        for m in 2..=max {
            let a = braid.braided_factorial(m, &limits).unwrap().to_exact();
            assert_eq!(a, common::signed_permutation_antisymmetrizer(&braid, m), "degree {m}");
        }
    }
}

#[test]
fn a4_exterior_dimensions() {
    let braid = a4_braid();
    let limits = ScaleLimits::default();
    let dims: Vec<usize> = (0..=6)
        .map(|m| exterior_dimension(&braid, m, RankMethod::Auto, &limits).unwrap().dimension)
        .collect();
    assert_eq!(dims, [1, 4, 8, 11, 12, 12, 11]);
}

#[test]
fn modular_and_exact_agree_on_degree_four() {
    let braid = a4_braid();
    let limits = ScaleLimits::default();
    let exact = exterior_dimension(&braid, 4, RankMethod::Exact, &limits).unwrap();
    let modular = exterior_dimension(&braid, 4, RankMethod::Modular, &limits).unwrap();
    assert_eq!(exact.dimension, 12);
    assert_eq!(modular.dimension, 12);
    let cert = modular.certificate.unwrap();
    assert!(cert.ranks.iter().all(|&r| r <= 12));
    let a4 = braid.braided_factorial(4, &limits).unwrap();
    assert_eq!(modular_rank_int(&a4, cert.primes[0]).unwrap(), 12);
}

#[test]
fn degree_three_nullity() {
    let braid = a4_braid();
    let a3 = braid.braided_factorial(3, &ScaleLimits::default()).unwrap().to_exact();
    assert_eq!(a3.nullity(), 53);
}

#[test]
fn scale_cap_refuses_degree_seven() {
    let braid = a4_braid();
    assert!(exterior_dimension(&braid, 7, RankMethod::Modular, &ScaleLimits::default()).is_err());
    assert!(exterior_dimension(&braid, 6, RankMethod::Exact, &ScaleLimits::default()).is_err());
}

#[test]
fn small_classes() {
    let limits = ScaleLimits::default();
    let c2 = BraidData::new(&ClassCalculus::from_label(FiniteGroup::cyclic(2).unwrap(), "g").unwrap());
    assert_eq!(exterior_dimension(&c2, 2, RankMethod::Exact, &limits).unwrap().dimension, 0);
    let s3 = BraidData::new(&ClassCalculus::from_label(FiniteGroup::symmetric3(), "(12)").unwrap());
    let dims: Vec<usize> =
        (0..=4).map(|m| exterior_dimension(&s3, m, RankMethod::Exact, &limits).unwrap().dimension).collect();
    assert_eq!(dims, [1, 3, 4, 3, 1]);
}

#[test]
fn quadratic_algebra_is_larger_in_degree_six() {
    let braid = a4_braid();
    let limits = ScaleLimits::default();
    let dims: Vec<usize> = (2..=6).map(|m| quadratic_dimension(&braid, m, &limits).unwrap()).collect();
    assert_eq!(dims, [8, 11, 12, 12, 12]);
}

#[test]
fn quadratic_dimension_matches_stacked_relations() {
    let braid = a4_braid();
    let limits = ScaleLimits::default();
    for m in 2..=4 {
        let side = 4usize.pow(m as u32);
        assert_eq!(quadratic_dimension(&braid, m, &limits).unwrap(), side - common::stacked_relation_rank(&braid, m));
    }
}
