use kstab_core::algebra::{integrate_piecewise, q, reconstruct_rational_function, PiecewiseProfile, Polynomial, Rational, RationalFunction};
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = Rational> {
    (-20i64..21, 1i64..9).prop_map(|(n, d)| q(n, d))
}

fn poly(max_deg: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(rat(), 1..=max_deg + 1).prop_map(Polynomial::new)
}

#[test]
fn reconstruction_needs_a_held_out_sample() {
    let f = |x: &Rational| x * x;
    let pts: Vec<_> = (1..=7).map(|k| (q(1, k), f(&q(1, k)))).collect();
    assert!(reconstruct_rational_function(&pts, 4, 2).is_err());
    let mut pts: Vec<_> = (1..=9).map(|k| (q(1, k), f(&q(1, k)))).collect();
    assert_eq!(reconstruct_rational_function(&pts, 4, 2).unwrap(), RationalFunction::polynomial(Polynomial::from_ints(&[0, 0, 1])));
    pts[8].1 = q(5, 1);
    assert!(reconstruct_rational_function(&pts, 4, 2).is_err());
}

proptest! {
    #[test]
    fn integration_is_linear(a in poly(3), b in poly(3), k in rat(), lo in rat(), w in 1i64..5) {
        let hi = &lo + &Rational::from_int(w);
        let lhs = (&a.scale(&k) + &b).integrate(&lo, &hi);
        let rhs = &k * &a.integrate(&lo, &hi) + b.integrate(&lo, &hi);
        prop_assert_eq!(lhs, rhs);
        let mid = (&lo + &hi) / Rational::from_int(2);
        let p = PiecewiseProfile::new(vec![lo.clone(), mid, hi.clone()], vec![a.clone(), a.clone()]).unwrap();
        prop_assert_eq!(integrate_piecewise(&p), a.integrate(&lo, &hi));
    }

    #[test]
    fn reconstruction_round_trip(num in poly(4), den in poly(2)) {
        prop_assume!(!den.coeff(0).is_zero());
        let f = RationalFunction::new(num, den).unwrap();
        let pts: Vec<_> = (0..10i64)
            .map(|k| q(1, 10 + k))
            .filter_map(|x| f.eval(&x).ok().map(|y| (x, y)))
            .collect();
        prop_assume!(pts.len() == 10);
        prop_assert_eq!(reconstruct_rational_function(&pts, 4, 2).unwrap(), f);
    }

    #[test]
    fn taylor_prefix_times_denominator_is_numerator(num in poly(3), den in poly(2)) {
        prop_assume!(!den.coeff(0).is_zero());
        let f = RationalFunction::new(num, den).unwrap();
        let order = 5;
        let t = Polynomial::new(f.taylor_prefix(order).unwrap());
        let prod = &t * f.denominator();
        for k in 0..=order {
            prop_assert_eq!(prod.coeff(k), f.numerator().coeff(k));
        }
    }
}
