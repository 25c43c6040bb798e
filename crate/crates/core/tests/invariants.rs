use std::sync::OnceLock;

use proptest::prelude::*;

use ncgeo::calculus::{Calculus, GroupFunction, OneForm, TwoForm};
use ncgeo::group::{ClassCalculus, FiniteGroup};
use ncgeo::linalg::{AffineSpace, Cyclotomic};
use ncgeo::riemann::{self, Connection, Lift, Metric};

fn a4() -> &'static Calculus {
    static CALC: OnceLock<Calculus> = OnceLock::new();
    CALC.get_or_init(|| Calculus::new(ClassCalculus::from_label(FiniteGroup::alternating4(), "t").unwrap()))
}

fn torsion_free() -> &'static AffineSpace {
    static SPACE: OnceLock<AffineSpace> = OnceLock::new();
    SPACE.get_or_init(|| riemann::solve_torsion_free(a4()).unwrap())
}

fn scalar() -> impl Strategy<Value = Cyclotomic> {
    (-6i64..7, 1i64..4, -3i64..4).prop_map(|(p, q, o)| &Cyclotomic::from_ratio(p, q) + &(&Cyclotomic::omega() * &Cyclotomic::from_int(o)))
}

fn function() -> impl Strategy<Value = GroupFunction> {
    proptest::collection::vec(scalar(), 12).prop_map(GroupFunction::from_values)
}

fn one_form() -> impl Strategy<Value = OneForm> {
    proptest::collection::vec(function(), 4).prop_map(|coeffs| OneForm { coeffs })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn d_squared_vanishes(f in function()) {
        let calc = a4();
        prop_assert!(calc.d1(&calc.d0(&f)).is_zero());
    }

    #[test]
    fn leibniz_on_functions(f in function(), g in function()) {
        let calc = a4();
        let lhs = calc.d0(&(&f * &g));
        let rhs = &calc.one_form_mul_right(&calc.d0(&f), &g) + &calc.d0(&g).mul_left(&f);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn graded_leibniz_on_one_forms(f in function(), w in one_form()) {
        let calc = a4();
        let lhs = calc.d1(&w.mul_left(&f));
        let rhs = &calc.wedge(&calc.d0(&f), &w) + &calc.d1(&w).mul_left(&f);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn torsion_free_family_is_torsion_free(coeffs in proptest::collection::vec(scalar(), 36)) {
        let calc = a4();
        let space = torsion_free();
        let mut v = space.particular.clone();
        for (c, b) in coeffs.iter().zip(&space.basis) {
            for (x, y) in v.iter_mut().zip(b) {
                *x += &(c * y);
            }
        }
        let conn = Connection::from_vector(calc, &v);
        prop_assert!((0..4).all(|a| riemann::torsion(calc, &conn, a).is_zero()));
        prop_assert!(conn.sum().is_zero());
    }

    #[test]
    fn levi_civita_is_cotorsion_free_for_every_metric(p in -20i64..21, q in 1i64..7) {
        prop_assume!(4 * p != -q);
        let calc = a4();
        let metric = Metric::from_mu(calc, &Cyclotomic::from_ratio(p, q)).unwrap();
        let lc = riemann::levi_civita(calc);
        prop_assert!((0..4).all(|a| riemann::cotorsion(calc, &metric, &lc, a).is_zero()));
    }

    #[test]
    fn canonical_lift_splits_the_wedge(coeffs in proptest::collection::vec(function(), 8)) {
        let calc = a4();
        prop_assume!(calc.two_form_dim() == coeffs.len());
        let w = TwoForm { coeffs };
        let lifted = riemann::lift(calc, &w, Lift::Canonical);
        prop_assert_eq!(calc.wedge_tensor(&lifted.coeffs), w);
    }
}
