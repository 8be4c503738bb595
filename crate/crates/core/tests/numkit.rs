mod common;

use common::oracles::{char_poly_roots_2, char_poly_roots_3, grid_search};
use proptest::prelude::*;
use psrl::numkit::{
    is_spectral_radius_lt_one, lp_feasible, solve_linear, spectral_radius, ConstraintSystem,
    Matrix, WITNESS_TOL,
};
use psrl::Error;

fn m(rows: &[&[f64]]) -> Matrix {
    Matrix::from_rows(rows).unwrap()
}

#[test]
fn solve_linear_examples() {
    assert_eq!(
        solve_linear(&Matrix::identity(2), &[0.3, 0.7]).unwrap(),
        vec![0.3, 0.7]
    );
    assert_eq!(solve_linear(&m(&[&[1.0]]), &[2.0]).unwrap(), vec![2.0]);

    // (I − M) s = τ for the two-state fixture
    let a = m(&[&[1.0, -5.0 / 6.0], &[0.3, 0.1]]);
    let s = solve_linear(&a, &[1.0 / 6.0, 0.4]).unwrap();
    assert!(
        (s[0] - 1.0).abs() < 1e-12 && (s[1] - 1.0).abs() < 1e-12,
        "{s:?}"
    );

    assert!(matches!(
        solve_linear(&m(&[&[1.0, 2.0], &[2.0, 4.0]]), &[1.0, 1.0]),
        Err(Error::SingularMatrix { .. })
    ));
}

#[test]
fn spectral_radius_examples() {
    assert_eq!(spectral_radius(&Matrix::zeros(3, 3)).unwrap(), 0.0);
    assert_eq!(spectral_radius(&m(&[&[0.0]])).unwrap(), 0.0);
    let rotating = m(&[&[0.0, 5.0 / 6.0], &[-0.3, 0.9]]);
    assert!((spectral_radius(&rotating).unwrap() - 0.5).abs() < 1e-9);

    assert!(is_spectral_radius_lt_one(&Matrix::diagonal(&[0.75, 0.675]).unwrap()).unwrap());
    assert!(!is_spectral_radius_lt_one(&Matrix::identity(1)).unwrap());
    assert!(is_spectral_radius_lt_one(&rotating).unwrap());
    assert!(!is_spectral_radius_lt_one(&m(&[&[0.0, 2.0], &[2.0, 0.0]])).unwrap());
}

#[test]
fn radius_margin_band_is_undecided() {
    // a power norm below 1 settles the question even inside the band
    assert!(is_spectral_radius_lt_one(&m(&[&[1.0 - 1e-10]])).unwrap());
    let r = is_spectral_radius_lt_one(&m(&[&[1.0 - 1e-10, 1.0], &[0.0, 0.0]]));
    assert!(matches!(r, Err(Error::Undecided { .. })), "{r:?}");
    // rotation by one radian with modulus just above 1: neither power norms
    // nor power traces decide it
    let (c, s) = (1f64.cos() * (1.0 + 5e-10), 1f64.sin() * (1.0 + 5e-10));
    let r = is_spectral_radius_lt_one(&m(&[&[c, -s], &[s, c]]));
    assert!(matches!(r, Err(Error::Undecided { .. })), "{r:?}");
}

#[test]
fn lp_examples() {
    let mut s = ConstraintSystem::new(1);
    s.push_eq(vec![1.0], 1.0);
    s.push_abs(vec![1.0], 1.0, 0.1);
    let r = lp_feasible(&s).unwrap();
    assert!((r.witness().unwrap()[0] - 1.0).abs() < 1e-12);

    // x = 1 and |2 − x| ≤ 0.5 cannot both hold
    let mut s = ConstraintSystem::new(1);
    s.push_eq(vec![1.0], 1.0);
    s.push_abs(vec![1.0], 2.0, 0.5);
    assert!(!lp_feasible(&s).unwrap().is_feasible());

    let mut bad = ConstraintSystem::new(2);
    bad.push_abs(vec![1.0], 0.0, 1.0);
    assert!(lp_feasible(&bad).is_err());
    let mut bad = ConstraintSystem::new(1);
    bad.push_abs(vec![1.0], 0.0, -1.0);
    assert!(lp_feasible(&bad).is_err());
}

fn system_2d() -> impl Strategy<Value = ConstraintSystem> {
    let row = (
        prop::collection::vec(-1.0f64..1.0, 2),
        -2.0f64..2.0,
        0.0f64..1.0,
    );
    (
        prop::collection::vec(row, 1..5),
        prop::option::of((prop::collection::vec(-1.0f64..1.0, 2), -1.0f64..1.0)),
    )
        .prop_map(|(rows, eq)| {
            let mut s = ConstraintSystem::new(2);
            for (c, t, b) in rows {
                s.push_abs(c, t, b);
            }
            if let Some((c, v)) = eq {
                s.push_eq(c, v);
            }
            s
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn solve_linear_residual(
        entries in prop::collection::vec(-1.0f64..1.0, 25),
        b in prop::collection::vec(-10.0f64..10.0, 5),
    ) {
        let mut a = Matrix::from_rows(&entries.chunks(5).collect::<Vec<_>>()).unwrap();
        // diagonal dominance keeps the system well conditioned
        let mut data = a.as_slice().to_vec();
        for i in 0..5 {
            data[i * 5 + i] += 6.0;
        }
        a = Matrix::new(5, 5, data).unwrap();
        let x = solve_linear(&a, &b).unwrap();
        let ax = a.mul_vec(&x);
        let scale = 1.0 + b.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for i in 0..5 {
            prop_assert!((ax[i] - b[i]).abs() <= 1e-9 * scale);
        }
    }

    #[test]
    fn radius_matches_closed_form_2x2(e in prop::collection::vec(-1.0f64..1.0, 4)) {
        let a = Matrix::new(2, 2, e).unwrap();
        let got = spectral_radius(&a).unwrap();
        let want = char_poly_roots_2(&a);
        prop_assert!((got - want).abs() <= 1e-7, "{got} vs {want}");
    }

    #[test]
    fn radius_matches_closed_form_3x3(e in prop::collection::vec(-1.0f64..1.0, 9)) {
        let a = Matrix::new(3, 3, e).unwrap();
        let got = spectral_radius(&a).unwrap();
        let want = char_poly_roots_3(&a);
        prop_assert!((got - want).abs() <= 1e-7, "{got} vs {want}");
    }

    #[test]
    fn scaling_rows_keeps_status(sys in system_2d(), c in 0.01f64..100.0) {
        let mut scaled = ConstraintSystem::new(2);
        for r in &sys.abs_rows {
            scaled.push_abs(r.coeffs.iter().map(|x| x * c).collect(), r.target * c, r.bound * c);
        }
        for r in &sys.eq_rows {
            scaled.push_eq(r.coeffs.clone(), r.value);
        }
        prop_assert_eq!(
            lp_feasible(&sys).unwrap().is_feasible(),
            lp_feasible(&scaled).unwrap().is_feasible()
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn lp_agrees_with_grid_search(sys in system_2d()) {
        let lp = lp_feasible(&sys).unwrap();
        if grid_search(&sys, 0.0) {
            prop_assert!(lp.is_feasible(), "grid point exists but LP says infeasible");
        }
        if let Some(x) = lp.witness() {
            prop_assert!(sys.is_satisfied_by(x, WITNESS_TOL));
            if x.iter().all(|v| v.abs() <= 5.0) {
                prop_assert!(grid_search(&sys, 2e-3), "witness {x:?} has no grid neighbour");
            }
        }
    }
}
