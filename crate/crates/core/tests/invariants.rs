use proptest::prelude::*;

use gausslip_core::forward_diff::{
    forward_difference, forward_difference_detailed, nested_integral_form, Polynomial, MAX_NESTED_ORDER,
};
use gausslip_core::fractional::{apply, integral_eigenvalue, level_eigenvalue};
use gausslip_core::semigroup::ph_spectral;
use gausslip_core::{
    ForwardDifferenceQuery, FractionalKind, FractionalSpec, HermiteExpansion, MultiIndex, Representation,
};

fn poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(-2.0..2.0f64, 1..7).prop_map(Polynomial::new)
}

fn expansion(dim: usize, cap: usize) -> impl Strategy<Value = HermiteExpansion> {
    let indices = MultiIndex::up_to(dim, cap);
    prop::collection::vec(-1.0..1.0f64, indices.len()).prop_map(move |cs| {
        HermiteExpansion::from_entries(dim, cap, indices.iter().cloned().zip(cs)).unwrap()
    })
}

fn spectral(kind: FractionalKind, beta: f64) -> FractionalSpec {
    FractionalSpec::new(kind, beta, Representation::Spectral).unwrap()
}

proptest! {
    #[test]
    fn difference_recursion(p in poly(), t in 0.0..2.0f64, s in 0.05..1.0f64, k in 2usize..=5) {
        let q = ForwardDifferenceQuery::new(t, s, k).unwrap();
        let direct = forward_difference_detailed(|v| p.eval(v), &q);
        let lower = |u| forward_difference(|v| p.eval(v), &ForwardDifferenceQuery::new(u, s, k - 1).unwrap());
        let recursive = lower(t + s) - lower(t);
        prop_assert!((direct.value - recursive).abs() <= 1e-12 * direct.max_term.max(direct.value.abs()) * (1usize << k) as f64);
    }

    #[test]
    fn difference_matches_nested_integral(p in poly(), t in 0.0..2.0f64, s in 0.05..1.0f64, k in 1usize..=MAX_NESTED_ORDER) {
        let q = ForwardDifferenceQuery::new(t, s, k).unwrap();
        let direct = forward_difference(|v| p.eval(v), &q);
        let dk = p.nth_derivative(k);
        let nested = nested_integral_form(|v| dk.eval(v), &q, 1e-12).unwrap();
        prop_assert!((direct - nested).abs() <= 1e-9 * (1.0 + direct.abs()), "{direct} vs {nested}");
    }

    #[test]
    fn difference_orders_compose(p in poly(), t in 0.0..2.0f64, s in 0.05..1.0f64, j in 1usize..=3, k in 1usize..=3) {
        let composed = p.forward_difference(s, j).forward_difference(s, k).eval(t);
        let q = ForwardDifferenceQuery::new(t, s, j + k).unwrap();
        let direct = forward_difference(|v| p.eval(v), &q);
        prop_assert!((composed - direct).abs() <= 1e-10 * (1.0 + direct.abs()));
    }

    #[test]
    fn difference_annihilates_low_degree(p in poly(), t in 0.0..2.0f64, s in 0.05..1.0f64) {
        let q = ForwardDifferenceQuery::new(t, s, p.degree() + 1).unwrap();
        let scale: f64 = p.coeffs().iter().map(|c| c.abs()).sum::<f64>() * (2f64).powi(2 * p.degree() as i32 + 2);
        prop_assert!(forward_difference(|v| p.eval(v), &q).abs() <= 1e-13 * scale);
    }

    #[test]
    fn poisson_semigroup_property(f in expansion(2, 8), a in 0.01..2.0f64, b in 0.01..2.0f64) {
        let lhs = ph_spectral(&ph_spectral(&f, a, 0), b, 0);
        prop_assert!(lhs.max_abs_diff(&ph_spectral(&f, a + b, 0)) <= 1e-14);
    }

    #[test]
    fn bessel_potentials_compose(f in expansion(2, 8), a in 0.05..3.0f64, b in 0.05..3.0f64) {
        let j = |beta| spectral(FractionalKind::BesselPotential, beta);
        let lhs = apply(&j(a), &apply(&j(b), &f).unwrap()).unwrap();
        prop_assert!(lhs.max_abs_diff(&apply(&j(a + b), &f).unwrap()) <= 1e-13);
    }

    #[test]
    fn bessel_pair_inverts(f in expansion(1, 12), beta in 0.05..3.0f64) {
        let pot = apply(&spectral(FractionalKind::BesselPotential, beta), &f).unwrap();
        let back = apply(&spectral(FractionalKind::BesselDerivative, beta), &pot).unwrap();
        prop_assert!(back.max_abs_diff(&f) <= 1e-12);
    }

    #[test]
    fn riesz_pair_inverts_on_mean_zero(f in expansion(2, 8), beta in 0.05..3.0f64) {
        let pot = apply(&spectral(FractionalKind::RieszPotential, beta), &f).unwrap();
        let back = apply(&spectral(FractionalKind::RieszDerivative, beta), &pot).unwrap();
        prop_assert!(back.max_abs_diff(&f.remove_mean()) <= 1e-12);
    }

    #[test]
    fn operators_are_linear(f in expansion(1, 10), g in expansion(1, 10), c in -3.0..3.0f64, beta in 0.1..2.0f64) {
        for kind in FractionalKind::ALL {
            let spec = spectral(kind, beta);
            let lhs = apply(&spec, &f.add(&g.scaled(c)).unwrap()).unwrap();
            let rhs = apply(&spec, &f).unwrap().add(&apply(&spec, &g).unwrap().scaled(c)).unwrap();
            prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-12 * (1.0 + c.abs()) * 50.0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn riesz_integral_matches_spectral(n in 1usize..=16, beta in 0.1..2.9f64, derivative in any::<bool>()) {
        let kind = if derivative { FractionalKind::RieszDerivative } else { FractionalKind::RieszPotential };
        let want = level_eigenvalue(&spectral(kind, beta), n).unwrap();
        let spec = FractionalSpec::new(kind, beta, Representation::Integral).unwrap();
        let got = integral_eigenvalue(&spec, n).unwrap().value;
        prop_assert!((got - want).abs() <= 1e-6 * want.abs(), "n={n} β={beta}: {got} vs {want}");
    }

    #[test]
    fn riesz_derivative_homogeneous_in_level(n in 1usize..=8, beta in 0.1..1.9f64) {
        // n^{β/2} scaling: the eigenvalue at 4n is 2^β times the one at n
        let spec = FractionalSpec::new(FractionalKind::RieszDerivative, beta, Representation::Integral).unwrap();
        let a = integral_eigenvalue(&spec, n).unwrap().value;
        let b = integral_eigenvalue(&spec, 4 * n).unwrap().value;
        prop_assert!((b / a - 2f64.powf(beta)).abs() <= 1e-6 * 2f64.powf(beta));
    }
}
