use fns_core::calculus::{exterior_d, fn_bracket, lie_derivative, schouten};
use fns_core::cotangent::{h_map, hamiltonian, pullback, pullback_inverse};
use fns_core::fields::random_field;
use fns_core::verifier::parse_field;
use fns_core::{Chart, MixedField};
use proptest::prelude::*;

fn field(dim: usize, k: usize, l: usize, seed: u64) -> MixedField {
    random_field(&Chart::euclidean(dim), k.min(dim), l, 2, seed).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn text_round_trip(dim in 1usize..=3, k in 0usize..=3, l in 0usize..=2, seed: u64) {
        let f = field(dim, k, l, seed);
        let back = parse_field(f.chart(), &f.to_string()).unwrap();
        prop_assert_eq!(back.to_string(), f.to_string());
        if !f.is_zero() {
            prop_assert_eq!(back, f);
        }
    }

    #[test]
    fn d_squared_vanishes(dim in 1usize..=3, k in 0usize..=2, seed: u64) {
        let f = field(dim, k, 0, seed);
        prop_assert!(exterior_d(&exterior_d(&f).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn graded_product_is_associative(dim in 1usize..=3, s in any::<[u64; 3]>(), l in 0usize..=1) {
        let (a, b, c) = (field(dim, 1, l, s[0]), field(dim, 0, 1, s[1]), field(dim, 1, 0, s[2]));
        let left = a.product(&b).unwrap().product(&c).unwrap();
        let right = a.product(&b.product(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn fn_bracket_is_graded_antisymmetric(dim in 1usize..=3, k in 0usize..=2, l in 0usize..=2, s in any::<[u64; 2]>()) {
        let (a, b) = (field(dim, k, 1, s[0]), field(dim, l, 1, s[1]));
        let ab = fn_bracket(&a, &b).unwrap();
        let ba = fn_bracket(&b, &a).unwrap();
        let odd = (a.form_degree() * b.form_degree()) % 2 == 1;
        prop_assert_eq!(ab, -ba.signed(odd));
    }

    #[test]
    fn lie_derivative_commutes_with_d(dim in 1usize..=3, k in 0usize..=2, q in 0usize..=2, s in any::<[u64; 2]>()) {
        let kf = field(dim, k, 1, s[0]);
        let w = field(dim, q, 0, s[1]);
        let lhs = exterior_d(&lie_derivative(&kf, &w).unwrap()).unwrap();
        let rhs = lie_derivative(&kf, &exterior_d(&w).unwrap()).unwrap();
        let odd = kf.form_degree() % 2 == 1;
        prop_assert_eq!(lhs, rhs.signed(odd));
    }

    #[test]
    fn schouten_is_antisymmetric(dim in 1usize..=3, a in 0usize..=3, b in 0usize..=3, s in any::<[u64; 2]>()) {
        let (u, v) = (field(dim, 0, a, s[0]), field(dim, 0, b, s[1]));
        prop_assert_eq!(schouten(&u, &v).unwrap(), -schouten(&v, &u).unwrap());
    }

    #[test]
    fn pullback_inverts(dim in 1usize..=3, k in 0usize..=2, l in 0usize..=2, seed: u64) {
        let a = field(dim, k, l, seed);
        let cot = Chart::cotangent(a.chart());
        let back = pullback_inverse(&pullback(&cot, &a).unwrap(), l).unwrap();
        prop_assert!((&back - &a).is_zero());
    }

    #[test]
    fn h_is_hamiltonian_of_pullback(dim in 1usize..=2, k in 0usize..=2, l in 0usize..=2, seed: u64) {
        let a = field(dim, k, l, seed);
        let cot = Chart::cotangent(a.chart());
        let direct = h_map(&cot, &a).unwrap();
        prop_assert_eq!(direct, hamiltonian(&pullback(&cot, &a).unwrap()).unwrap());
    }
}
