use num_rational::Ratio;
use proptest::prelude::*;
use qseries_core::arith::{r2_brute, t2_brute};
use qseries_core::qproducts::{poch, QMonomial, QProduct};
use qseries_core::{ExponentQ, LaurentSeries, PochSpec, Rational};

const ORDER: i64 = 24;

fn series() -> impl Strategy<Value = LaurentSeries> {
    (prop_oneof![Just(1u32), Just(2), Just(4)], -3i64..3, prop::collection::vec(-9i64..=9, 1..12)).prop_map(|(scale, floor, cs)| {
        let order = ORDER * scale as i64;
        let mut s = LaurentSeries::zero(scale, floor, order);
        for (i, c) in cs.into_iter().enumerate() {
            let m = LaurentSeries::monomial(
                Rational::from_integer(c.into()),
                ExponentQ::new(floor + i as i64, scale as i64),
                scale,
                order,
            )
            .unwrap();
            s = s.checked_add(&m).unwrap();
        }
        s
    })
}

fn unit_lead() -> impl Strategy<Value = LaurentSeries> {
    (series(), prop_oneof![Just(1i64), Just(-1), Just(2), Just(-3)]).prop_map(|(s, lead)| {
        let c = LaurentSeries::constant(Rational::from_integer(lead.into()), s.scale(), s.order());
        // shift away from the constant term so `lead` is the valuation coefficient
        let shifted = s.shifted(1).truncated(s.order());
        c.checked_add(&shifted).unwrap()
    })
}

fn same(a: &LaurentSeries, b: &LaurentSeries, order: i64) -> bool {
    a.eq_to_order(b, order).unwrap().is_equal()
}

fn window(a: &LaurentSeries, b: &LaurentSeries) -> i64 {
    (a.q_order().min(b.q_order())).floor() - 8
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addition_commutes_and_associates(a in series(), b in series(), c in series()) {
        let ab = a.checked_add(&b).unwrap();
        prop_assert!(same(&ab, &b.checked_add(&a).unwrap(), 12));
        let l = ab.checked_add(&c).unwrap();
        let r = a.checked_add(&b.checked_add(&c).unwrap()).unwrap();
        prop_assert!(same(&l, &r, 12));
        prop_assert!(a.checked_sub(&a).unwrap().is_zero());
    }

    #[test]
    fn multiplication_ring_laws(a in series(), b in series(), c in series()) {
        let ab = a.checked_mul(&b).unwrap();
        let n = window(&ab, &ab).min(10);
        prop_assert!(same(&ab, &b.checked_mul(&a).unwrap(), n));
        let l = ab.checked_mul(&c).unwrap();
        let r = a.checked_mul(&b.checked_mul(&c).unwrap()).unwrap();
        let n = window(&l, &r).min(8);
        prop_assert!(same(&l, &r, n));
        let d = a.checked_mul(&b.checked_add(&c).unwrap()).unwrap();
        let e = ab.checked_add(&a.checked_mul(&c).unwrap()).unwrap();
        let n = window(&d, &e).min(8);
        prop_assert!(same(&d, &e, n));
    }

    #[test]
    fn times_inverse_is_one(a in unit_lead()) {
        let p = a.checked_mul(&a.inverse().unwrap()).unwrap();
        let one = LaurentSeries::one(a.scale(), p.order());
        prop_assert!(same(&p, &one, p.q_order().floor()));
    }

    #[test]
    fn substitution_is_multiplicative(a in series(), b in series(), k in 1i64..4) {
        let m = Ratio::from_integer(k);
        let lhs = a.checked_mul(&b).unwrap().substitute_power(m).unwrap();
        let rhs = a.substitute_power(m).unwrap().checked_mul(&b.substitute_power(m).unwrap()).unwrap();
        let n = window(&lhs, &rhs).min(20);
        prop_assert!(same(&lhs, &rhs, n));
    }

    #[test]
    fn poch_recursion(c in -3i64..=3, e in 0i64..4, base in 1i64..4, n in 0u64..8) {
        prop_assume!(c != 0);
        let a = QMonomial::new(Rational::from_integer(c.into()), ExponentQ::integer(e));
        prop_assume!(!(e == 0 && c == 1));
        let next = poch(&PochSpec::finite(a.clone(), base, n + 1), 30).unwrap();
        let mut p = PochSpec::finite(a.clone(), base, n).to_product().unwrap();
        p.times_binomial(&a.shift(base * n as i64));
        prop_assert!(same(&next, &p.series(30).unwrap(), 30));
    }

    #[test]
    fn minus_one_poch_doubles(n in 1u64..12) {
        let l = poch(&PochSpec::finite(QMonomial::constant(Rational::from_integer((-1).into())), 1, 2 * n), 40).unwrap();
        let mut r = QProduct::scalar(Rational::from_integer(2.into()));
        r.times_finite(&QMonomial::neg_q(1), 1, 2 * n - 1, 1);
        prop_assert!(same(&l, &r.series(40).unwrap(), 40));
    }

    #[test]
    fn exponent_text_round_trip(p in -50i64..50, q in 1i64..12) {
        let e = ExponentQ::new(p, q);
        prop_assert_eq!(e.to_string().parse::<ExponentQ>().unwrap(), e);
    }

    #[test]
    fn monomial_text_round_trip(c in -20i64..20, d in 1i64..5, p in -10i64..10, q in 1i64..4) {
        let m = QMonomial::new(Rational::new(c.into(), d.into()), ExponentQ::new(p, q));
        prop_assert_eq!(m.to_string().parse::<QMonomial>().unwrap(), m);
    }

    #[test]
    fn series_json_round_trip(a in series()) {
        let s = serde_json::to_string(&a).unwrap();
        let back: LaurentSeries = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }

    #[test]
    fn triangular_bijection(n in 0u64..3000) {
        prop_assert_eq!(8 * t2_brute(n), r2_brute(8 * n + 5));
    }
}
