use ncgeo::calculus::{Calculus, GroupFunction};
use ncgeo::cohomology::*;
use ncgeo::group::{ClassCalculus, FiniteGroup};
use ncgeo::linalg::{rational, Cyclotomic};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn a4() -> Calculus {
    Calculus::new(ClassCalculus::from_label(FiniteGroup::alternating4(), "t").unwrap())
}

fn s3() -> Calculus {
    Calculus::new(ClassCalculus::from_label(FiniteGroup::symmetric3(), "(12)").unwrap())
}

fn random_scalar(rng: &mut ChaCha8Rng) -> Cyclotomic {
    Cyclotomic::new(rational(rng.gen_range(-9..=9), rng.gen_range(1..=5)), rational(rng.gen_range(-9..=9), rng.gen_range(1..=5)))
}

#[test]
fn first_cohomology_a4() {
    let c = a4();
    let slice = ComplexSlice::build(&c);
    assert_eq!((slice.d0_matrix.rows(), slice.d0_matrix.cols()), (48, 12));
    assert_eq!((slice.d1_matrix.rows(), slice.d1_matrix.cols()), (96, 48));
    let h = de_rham_h1(&c);
    assert_eq!((h.ker_d1_dim, h.im_d0_dim, h.dim), (12, 11, 1));
    assert!(h.composite_zero && h.theta_closed && !h.theta_exact);
}

#[test]
fn first_cohomology_s3() {
    let h = de_rham_h1(&s3());
    assert_eq!(h.dim, 1);
    assert!(h.theta_closed && !h.theta_exact);
}

#[test]
fn five_flat_lines() {
    let c = a4();
    let params = [Cyclotomic::zero(), Cyclotomic::one(), Cyclotomic::from_int(-2), Cyclotomic::omega(), Cyclotomic::from_ratio(7, 3)];
    let checks = check_flat_lines(&c, &params);
    assert_eq!(checks.len(), 5);
    for ch in checks {
        assert!(ch.flat.iter().all(|f| *f), "{}", ch.line);
    }
}

#[test]
fn off_line_constant_connections_are_not_flat() {
    let c = a4();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut tested = 0;
    while tested < 20 {
        let coeffs: Vec<Cyclotomic> = (0..4).map(|_| random_scalar(&mut rng)).collect();
        if on_flat_lines(&coeffs) {
            continue;
        }
        assert!(!u1_curvature(&c, &c.constant_one_form(&coeffs)).is_zero());
        tested += 1;
    }
    let example = &(&c.e(0) + &c.e(1)) - &c.theta();
    assert!(!u1_curvature(&c, &example).is_zero());
}

#[test]
fn grid_search_finds_only_the_lines() {
    let c = a4();
    let grid: Vec<Cyclotomic> = [-2, -1, 0, 1, 2].iter().map(|&k| Cyclotomic::from_int(k)).collect();
    let flat = flat_constant_grid_search(&c, &grid);
    assert!(!flat.is_empty());
    for coeffs in &flat {
        assert!(on_flat_lines(coeffs), "{coeffs:?}");
    }
    let on_grid = (0..625usize)
        .filter(|code| {
            let coeffs: Vec<Cyclotomic> = (0..4).map(|i| grid[(code / 5usize.pow(i)) % 5].clone()).collect();
            on_flat_lines(&coeffs)
        })
        .count();
    assert_eq!(flat.len(), on_grid);
}

#[test]
fn gauge_covariance() {
    let c = a4();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let alpha = ncgeo::calculus::OneForm {
            coeffs: (0..4).map(|_| GroupFunction::from_fn(12, |_| random_scalar(&mut rng))).collect(),
        };
        let u = GroupFunction::from_fn(12, |_| loop {
            let v = random_scalar(&mut rng);
            if !v.is_zero() {
                break v;
            }
        });
        let transformed = gauge_transform(&c, &alpha, &u).unwrap();
        let lhs = u1_curvature(&c, &transformed);
        let rhs = conjugate_two_form(&c, &u1_curvature(&c, &alpha), &u).unwrap();
        assert_eq!(lhs, rhs);
    }
    assert!(gauge_transform(&c, &c.theta(), &GroupFunction::delta(12, 0)).is_err());
}

#[test]
fn s3_lines_are_flat_at_sampled_parameters() {
    let c = s3();
    let params = [Cyclotomic::zero(), Cyclotomic::one(), Cyclotomic::from_int(-2), Cyclotomic::omega(), Cyclotomic::from_ratio(7, 3)];
    let checks = check_flat_lines(&c, &params);
    assert_eq!(checks.len(), 4);
    for ch in checks {
        assert!(ch.flat.iter().all(|f| *f), "{}", ch.line);
    }
}

#[test]
fn s4_cross_relations() {
    let check = s4_cross_relations_check().unwrap();
    assert!(check.holds, "{check:?}");
    assert_eq!(check.cross_relations.len(), 10);
}

#[test]
fn conjugate_calculus() {
    let c = a4();
    let check = conjugate_calculus_check(c.class()).unwrap();
    assert!(check.holds, "{check:?}");
    assert_eq!(check.conjugate_class.len(), 4);
    let g = FiniteGroup::alternating4();
    let uvw = ClassCalculus::from_label(g, "u").unwrap();
    assert!(conjugate_calculus_check(&uvw).is_err());
}
