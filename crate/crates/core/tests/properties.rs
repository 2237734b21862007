use proptest::prelude::*;

use vvmf::angle::RationalAngle;
use vvmf::classify::{hp_dimension, HpSeries};
use vvmf::classical::dim_m;
use vvmf::linalg::rank;
use vvmf::rat::{format_rat, int, parse_rat, rat, Rat};
use vvmf::serial::{series_from_json, series_to_json};
use vvmf::QSeries;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-20i64..20, 1i64..7).prop_map(|(n, d)| rat(n, d))
}

fn series() -> impl Strategy<Value = QSeries> {
    (
        -4i64..8,
        prop::sample::select(vec![1i64, 2, 3, 4, 12]),
        prop::sample::select(vec![1u64, 2, 3]),
        prop::collection::vec(small_rat(), 1..10),
    )
        .prop_map(|(b, d, s, c)| QSeries::with_grid(rat(b, d), s, c).unwrap())
}

fn agree(a: &QSeries, b: &QSeries) -> bool {
    let cap = a.cap().min(b.cap());
    a.truncate_to_cap(&cap) == b.truncate_to_cap(&cap)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn rat_text_round_trip(x in small_rat()) {
        prop_assert_eq!(parse_rat(&format_rat(&x)).unwrap(), x);
    }

    #[test]
    fn series_json_round_trip(f in series()) {
        let v = series_to_json(&f);
        let g = series_from_json(&v).unwrap();
        prop_assert_eq!(series_to_json(&g), v);
        prop_assert_eq!(g, f);
    }

    #[test]
    fn subtraction_cancels(f in series(), g in series()) {
        let h = f.add(&g).sub(&g);
        prop_assert!(agree(&h, &f));
        prop_assert!(f.sub(&f).is_zero());
    }

    #[test]
    fn truncation_commutes_with_addition(f in series(), g in series(), n in 0usize..6) {
        let cap = f.cap().min(g.cap()) - int(n as i64);
        let lhs = f.add(&g).truncate_to_cap(&cap);
        let rhs = f.truncate_to_cap(&cap).add(&g.truncate_to_cap(&cap));
        prop_assert!(agree(&lhs, &rhs));
    }

    #[test]
    fn scaling_is_multiplication_by_a_constant(f in series(), c in small_rat()) {
        let k = QSeries::monomial(int(0), c.clone(), f.integer_span() + 1);
        prop_assert!(agree(&f.scale(&c), &f.mul(&k)));
    }

    #[test]
    fn theta_is_a_derivation(f in series(), g in series()) {
        let lhs = f.mul(&g).q_derivative();
        let rhs = f.q_derivative().mul(&g).add(&f.mul(&g.q_derivative()));
        prop_assert!(agree(&lhs, &rhs));
    }

    #[test]
    fn quotient_inverts_product(f in series(), g in series()) {
        prop_assume!(!g.is_zero() && !f.is_zero());
        let q = f.mul(&g).quotient(&g).unwrap();
        prop_assert!(agree(&q, &f));
        prop_assert_eq!(q.leading_exponent(), f.leading_exponent());
    }

    #[test]
    fn angle_arithmetic_is_mod_one(a in small_rat(), b in small_rat()) {
        let (x, y) = (RationalAngle::new(&a), RationalAngle::new(&b));
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        prop_assert_eq!(RationalAngle::new(&(&a + int(3))), x);
    }

    #[test]
    fn rank_ignores_row_order(rows in prop::collection::vec(prop::collection::vec(-3i64..4, 4), 1..6), rot in 0usize..6) {
        let m: Vec<Vec<Rat>> = rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        let mut p = m.clone();
        let k = rot % p.len();
        p.rotate_left(k);
        prop_assert_eq!(rank(&m), rank(&p));
        prop_assert!(rank(&m) <= 4.min(m.len()));
    }

    #[test]
    fn hp_dimension_sums_generator_contributions(offsets in prop::collection::vec(0u32..5, 1..6), k in 0i64..30) {
        let h = HpSeries::new(int(0), offsets.clone());
        let expect: usize = offsets.iter().map(|&o| dim_m(2 * k - 2 * o as i64)).sum();
        prop_assert_eq!(hp_dimension(&h, &int(2 * k)), expect);
    }
}
