use orbiquant::dedekind::{dedekind_sum, dedekind_sum_float_oracle, DedekindInput};
use proptest::prelude::*;

fn input_parts() -> impl Strategy<Value = (u32, Vec<i64>, i64)> {
    (2u32..=200).prop_flat_map(|r| {
        (
            Just(r),
            prop::collection::vec(-1000i64..1000, 1..=3),
            -1000i64..1000,
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn periodic_in_index((r, w, i) in input_parts()) {
        let a = dedekind_sum(&DedekindInput::new(r, &w, i).unwrap());
        let b = dedekind_sum(&DedekindInput::new(r, &w, i + r as i64).unwrap());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn exact_matches_float_oracle((r, w, i) in input_parts()) {
        let input = DedekindInput::new(r, &w, i).unwrap();
        let exact = dedekind_sum(&input).to_f64();
        let float = dedekind_sum_float_oracle(&input).unwrap();
        prop_assert!((exact - float).abs() <= 1e-9 * exact.abs().max(1.0), "{input}: {exact} vs {float}");
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn symmetric_in_weights((r, w, i) in input_parts(), rot in 0usize..3) {
        let mut rotated = w.clone();
        rotated.rotate_left(rot % w.len());
        rotated.reverse();
        prop_assert_eq!(
            dedekind_sum(&DedekindInput::new(r, &w, i).unwrap()),
            dedekind_sum(&DedekindInput::new(r, &rotated, i).unwrap())
        );
    }

    #[test]
    fn weights_reduce_mod_r((r, w, i) in input_parts(), shift in -5i64..5) {
        let shifted: Vec<i64> = w.iter().map(|b| b + shift * r as i64).collect();
        prop_assert_eq!(
            dedekind_sum(&DedekindInput::new(r, &w, i).unwrap()),
            dedekind_sum(&DedekindInput::new(r, &shifted, i).unwrap())
        );
    }
}
