use num_complex::Complex64;
use orbiquant::arith::{cyclotomic_polynomial, euler_totient};
use orbiquant::{CyclotomicElement, Rational};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d))
}

fn element(order: u32) -> impl Strategy<Value = CyclotomicElement> {
    prop::collection::vec(rational(), 0..=(order as usize + 3))
        .prop_map(move |coeffs| CyclotomicElement::from_coeffs(order, coeffs))
}

fn triple() -> impl Strategy<Value = (CyclotomicElement, CyclotomicElement, CyclotomicElement)> {
    (1u32..=24).prop_flat_map(|r| (element(r), element(r), element(r)))
}

fn close(a: Complex64, b: Complex64, scale: f64) -> bool {
    (a - b).norm() <= 1e-9 * scale.max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_laws((a, b, c) in triple()) {
        let ab = a.try_add(&b).unwrap();
        prop_assert_eq!(&ab, &b.try_add(&a).unwrap());
        prop_assert_eq!(a.try_mul(&b).unwrap(), b.try_mul(&a).unwrap());
        prop_assert_eq!(
            ab.try_add(&c).unwrap(),
            a.try_add(&b.try_add(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            a.try_mul(&b).unwrap().try_mul(&c).unwrap(),
            a.try_mul(&b.try_mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            a.try_mul(&b.try_add(&c).unwrap()).unwrap(),
            a.try_mul(&b).unwrap().try_add(&a.try_mul(&c).unwrap()).unwrap()
        );
        let one = CyclotomicElement::one(a.order());
        prop_assert_eq!(a.try_mul(&one).unwrap(), a.clone());
        prop_assert!(a.try_add(&a.neg()).unwrap().is_zero());
        prop_assert_eq!(ab.try_sub(&b).unwrap(), a);
    }

    #[test]
    fn inverse_is_two_sided((a, _, _) in triple()) {
        prop_assume!(!a.is_zero());
        let inv = a.inverse().unwrap();
        prop_assert_eq!(a.try_mul(&inv).unwrap(), CyclotomicElement::one(a.order()));
        prop_assert_eq!(inv.inverse().unwrap(), a);
    }

    #[test]
    fn complex_embedding_is_a_ring_map((a, b, _) in (1u32..=64).prop_flat_map(|r| (element(r), element(r), element(r)))) {
        let scale: f64 = a.coeffs().iter().chain(b.coeffs()).map(|c| c.to_f64().abs()).sum::<f64>().powi(2);
        prop_assert!(close(a.try_add(&b).unwrap().to_complex(), a.to_complex() + b.to_complex(), scale));
        prop_assert!(close(a.try_mul(&b).unwrap().to_complex(), a.to_complex() * b.to_complex(), scale));
    }

    #[test]
    fn root_powers_are_periodic(r in 1u32..=60, e in -200i64..200) {
        let z = CyclotomicElement::root_power(r, e);
        prop_assert_eq!(&z, &CyclotomicElement::root_power(r, e + r as i64));
        let zr = (0..r).fold(CyclotomicElement::one(r), |acc, _| acc.try_mul(&z).unwrap());
        prop_assert_eq!(zr, CyclotomicElement::one(r));
    }

    #[test]
    fn rationals_normalize(n in -10_000i64..10_000, d in 1i64..10_000, k in 1i64..50) {
        let a = Rational::new(n * k, d * k);
        prop_assert_eq!(&a, &Rational::new(n, d));
        prop_assert_eq!(&Rational::new(-n, -d), &a);
        prop_assert!(a.denom() > &0.into());
        prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a.clone());
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<Rational>(&json).unwrap(), a);
    }
}

#[test]
fn cyclotomic_degrees_match_totient() {
    for r in 1..=300u32 {
        assert_eq!(
            cyclotomic_polynomial(r).len() - 1,
            euler_totient(r),
            "r = {r}"
        );
    }
}

#[test]
fn zero_has_no_inverse() {
    assert!(CyclotomicElement::zero(7).inverse().is_err());
    let phi = cyclotomic_polynomial(5)
        .iter()
        .map(|c| Rational::from_integer(c.clone()))
        .collect();
    assert!(CyclotomicElement::from_coeffs(5, phi).is_zero());
}
