use acf_core::specfun::*;
use proptest::prelude::*;
use std::f64::consts::PI;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gamma_reflection_holds(g in 0.01f64..0.99) {
        let lhs = gamma(1.0 + g).unwrap() * gamma(1.0 - g).unwrap();
        prop_assert!(close(lhs, PI * g / (PI * g).sin(), 1e-12));
    }

    #[test]
    fn gamma_recursion(x in 0.05f64..20.0) {
        prop_assert!(close(gamma(x + 1.0).unwrap(), x * gamma(x).unwrap(), 1e-13));
    }

    #[test]
    fn j_three_term_recurrence(nu in 1.0f64..5.0, x in 0.1f64..100.0) {
        let lhs = bessel_j(nu - 1.0, x).unwrap() + bessel_j(nu + 1.0, x).unwrap();
        let rhs = 2.0 * nu / x * bessel_j(nu, x).unwrap();
        let scale = bessel_j(nu - 1.0, x).unwrap().abs() + bessel_j(nu + 1.0, x).unwrap().abs();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * scale.max(1e-300));
    }

    #[test]
    fn jy_wronskian(nu in 0.0f64..5.0, x in 0.2f64..200.0) {
        let w = bessel_j(nu, x).unwrap() * bessel_n_prime(nu, x).unwrap()
            - bessel_j_prime(nu, x).unwrap() * bessel_n(nu, x).unwrap();
        prop_assert!(close(w, 2.0 / (PI * x), 1e-9));
    }

    #[test]
    fn k_even_in_order(nu in 0.0f64..5.0, x in 0.01f64..100.0) {
        prop_assert_eq!(bessel_k(nu, x).unwrap(), bessel_k(-nu, x).unwrap());
    }

    #[test]
    fn ik_wronskian(nu in 0.0f64..4.0, x in 0.05f64..30.0) {
        let w = bessel_i(nu, x).unwrap() * bessel_k(nu + 1.0, x).unwrap()
            + bessel_i(nu + 1.0, x).unwrap() * bessel_k(nu, x).unwrap();
        prop_assert!(close(w, 1.0 / x, 1e-10));
    }

    #[test]
    fn k_positive_and_decreasing(nu in 0.0f64..3.0, x in 0.01f64..50.0) {
        let a = bessel_k(nu, x).unwrap();
        let b = bessel_k(nu, x * 1.1).unwrap();
        prop_assert!(a > 0.0 && b < a);
    }
}
