use cone_gamma::cone_model::catalog;
use cone_gamma::sign_algebra::{digit_order, Side};
use cone_gamma::zeta_numeric::chart::Chart;
use cone_gamma::zeta_numeric::functional_equation::{
    completion_residual, distribution_vector, fe_distribution_residual, fe_residual, local_vector_closed,
};
use cone_gamma::zeta_numeric::test_function::{TestFunction, Term};
use cone_gamma::Complex64;
use proptest::prelude::*;

fn away_from_integers() -> impl Strategy<Value = f64> {
    (-3.0f64..3.0).prop_filter("pole margin", |x| (x - x.round()).abs() > 1e-2)
}

fn complex_s(r: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((away_from_integers(), -2.0f64..2.0), r)
        .prop_map(|v| v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect())
}

fn test_function(r: usize) -> impl Strategy<Value = TestFunction> {
    prop::collection::vec((prop::collection::vec(0u32..=4, r), -1.0f64..1.0, -1.0f64..1.0), 1..=3).prop_map(move |terms| {
        TestFunction::new(
            Chart::orthant(r),
            terms
                .into_iter()
                .map(|(index, re, im)| Term { coeff: Complex64::new(re, im), index })
                .collect(),
        )
        .unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn orthant2_functional_equations(s in complex_s(2), f in test_function(2)) {
        let entry = catalog("orthant2").unwrap();
        prop_assert!(fe_residual(&entry, &f, &s).unwrap().residual <= 1e-9);
        prop_assert!(fe_distribution_residual(&entry, &f, &s).unwrap().residual <= 1e-9);
        prop_assert!(completion_residual(&entry, &f, &s).unwrap().residual <= 1e-9);
    }

    #[test]
    fn orthant3_functional_equations(s in complex_s(3), f in test_function(3)) {
        let entry = catalog("orthant3").unwrap();
        prop_assert!(fe_residual(&entry, &f, &s).unwrap().residual <= 1e-9);
        prop_assert!(fe_distribution_residual(&entry, &f, &s).unwrap().residual <= 1e-9);
    }

    #[test]
    fn distribution_form_is_within_ten_times_vector_form(s in complex_s(2), f in test_function(2)) {
        let entry = catalog("orthant2").unwrap();
        let v = fe_residual(&entry, &f, &s).unwrap().residual;
        let d = fe_distribution_residual(&entry, &f, &s).unwrap().residual;
        prop_assert!(d <= 10.0 * v.max(1e-15), "{d} vs {v}");
    }

    #[test]
    fn even_functions_have_no_odd_distributions(s in complex_s(3), idx in prop::collection::vec(0u32..=2, 3)) {
        let entry = catalog("orthant3").unwrap();
        let f = TestFunction::hermite(Chart::orthant(3), idx.iter().map(|n| 2 * n).collect()).unwrap();
        let local = local_vector_closed(&entry, &f, &s).unwrap();
        let dist = distribution_vector(&entry, Side::Primal, &local).unwrap();
        // values blow up near the gamma poles, so cancellation is judged against the vector's size
        let scale = dist.iter().map(|z| z.norm()).fold(1.0, f64::max);
        for (d, z) in digit_order(3).unwrap().iter().zip(&dist) {
            if d.weight() % 2 == 1 {
                prop_assert!(z.norm() <= 1e-12 * scale, "{z} against scale {scale}");
            }
        }
    }
}
