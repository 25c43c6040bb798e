use ncgeo::calculus::{Calculus, TwoForm};
use ncgeo::group::{ClassCalculus, FiniteGroup};
use ncgeo::linalg::Cyclotomic;
use ncgeo::riemann::*;

fn a4() -> Calculus {
    Calculus::new(ClassCalculus::from_label(FiniteGroup::alternating4(), "t").unwrap())
}

#[test]
fn moduli_dimensions() {
    let c = a4();
    let tf = solve_torsion_free(&c).unwrap();
    assert_eq!(tf.dimension(), 36);
    let lc = levi_civita(&c);
    assert!(tf.contains(&lc.to_vector()));
    let metric = Metric::from_mu(&c, &Cyclotomic::zero()).unwrap();
    let tcf = solve_torsion_cotorsion_free(&c, &metric).unwrap();
    assert_eq!(tcf.dimension(), 9);
    for i in 0..tf.dimension() {
        let mut coords = vec![Cyclotomic::zero(); tf.dimension()];
        coords[i] = Cyclotomic::from_int(2);
        let conn = Connection::from_vector(&c, &tf.point(&coords));
        let p = PatternParameters::extract(&c, &conn, false).expect("torsion-free pattern");
        assert_eq!(p.connection(&c), conn);
    }
    for i in 0..tcf.dimension() {
        let mut coords = vec![Cyclotomic::zero(); tcf.dimension()];
        coords[i] = Cyclotomic::from_int(3);
        let conn = Connection::from_vector(&c, &tcf.point(&coords));
        let p = PatternParameters::extract(&c, &conn, false).unwrap();
        assert!(satisfies_cotorsion_relations(&c, &p));
    }
}

#[test]
fn ricci_flat_is_levi_civita() {
    let c = a4();
    let sol = solve_ricci_flat(&c, Lift::Canonical).unwrap();
    assert_eq!(sol.family_dimension, 36);
    assert_eq!(sol.diagonal_rank, 36);
    assert_eq!(sol.connection, levi_civita(&c));
    let p = sol.parameters.unwrap();
    assert_eq!(p.lambda.as_constant(), Some(&Cyclotomic::from_ratio(-1, 4)));
    let sol2 = solve_ricci_flat(&c, Lift::Antisymmetrizer).unwrap();
    assert_eq!(sol2.connection, levi_civita(&c));
}

#[test]
fn levi_civita_geometry() {
    let c = a4();
    let lc = levi_civita(&c);
    let class = c.class();
    for a in 0..4 {
        assert!(torsion(&c, &lc, a).is_zero());
    }
    assert!(is_regular(&c, &lc));
    let theta = c.theta();
    let quarter = Cyclotomic::from_ratio(1, 4);
    for a in 0..4 {
        let nabla = covariant_derivative(&c, &lc, &c.e(a));
        let mut expect = TensorSquare::product(&c, &theta, &theta).scale(&quarter);
        for b in 0..4 {
            expect = &expect - &TensorSquare::product(&c, &c.e(b), &c.e(class.ad_inv(b, a)));
        }
        assert_eq!(nabla, expect, "nabla e_{a}");
    }
    let r = riemann(&c, &lc);
    for (a, ra) in r.iter().enumerate() {
        let mut expect = TwoFormTensorOne::zero(&c);
        for b in 0..4 {
            let t = TwoFormTensorOne::basic(&c, &c.de(b), class.ad_inv(b, a));
            for (row, trow) in expect.coeffs.iter_mut().zip(&t.coeffs) {
                for (x, y) in row.iter_mut().zip(trow) {
                    *x += y;
                }
            }
        }
        assert_eq!(*ra, expect, "riemann e_{a}");
    }
}

#[test]
fn regularity_systems() {
    let c = a4();
    let theta = c.theta();
    for k in [1i64, -2, 5] {
        let shift = Cyclotomic::from_int(k);
        let conn = Connection { components: (0..4).map(|a| &c.e(a) + &theta.scale(&shift)).collect() };
        assert!(regularity_system_squares_mixed(&c, &conn).iter().all(TwoForm::is_zero));
        assert!(is_regular(&c, &conn));
        let ii = regularity_system_squares_separate(&c, &conn);
        assert_eq!(ii[0], c.de(0).scale(&shift));
        assert!(!ii[0].is_zero());
    }
}

#[test]
fn torsion_cotorsion_family_is_one_function() {
    let c = a4();
    let g = c.group();
    let metric = Metric::from_mu(&c, &Cyclotomic::zero()).unwrap();
    let tcf = solve_torsion_cotorsion_free(&c, &metric).unwrap();
    let [u, v, w] = ["u", "v", "w"].map(|n| g.index_of(n).unwrap());
    let minus_one = c.constant(Cyclotomic::from_int(-1));
    for i in 0..=tcf.dimension() {
        let mut coords: Vec<Cyclotomic> = (0..tcf.dimension()).map(|k| Cyclotomic::from_ratio(k as i64 - 4, 3)).collect();
        if i < coords.len() {
            coords[i] = Cyclotomic::from_int(7);
        }
        let conn = Connection::from_vector(&c, &tcf.point(&coords));
        let p = PatternParameters::extract(&c, &conn, false).unwrap();
        let l = &p.lambda;
        assert_eq!(p.alpha, l.right_translate(g, u));
        assert_eq!(p.beta, l.right_translate(g, w));
        assert_eq!(p.gamma, l.right_translate(g, v));
        let total = &(&(&l.right_translate(g, u) + &l.right_translate(g, v)) + &l.right_translate(g, w)) + l;
        assert_eq!(total, minus_one);
    }
}
