//! Algebraic invariants under random inputs.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use epsilon_factor::cyclo::{CyclotomicNumber, RootOfUnity};
use epsilon_factor::epsilon::{self, EpsilonValue};
use epsilon_factor::localfield::{AdditiveCharacter, LocalCharacter, PAdicApprox};

const LEVELS: [u64; 10] = [1, 3, 4, 5, 8, 9, 12, 15, 20, 36];

fn cyclo() -> impl Strategy<Value = CyclotomicNumber> {
    (
        prop::sample::select(LEVELS.to_vec()),
        prop::collection::vec((0u64..72, -5i64..=5, 1i64..4), 0..6),
    )
        .prop_map(|(level, terms)| {
            terms
                .into_iter()
                .fold(CyclotomicNumber::zero(level), |acc, (e, n, d)| {
                    let r = RootOfUnity::new(level, e as i64).unwrap();
                    let q = BigRational::new(BigInt::from(n), BigInt::from(d));
                    &acc + &CyclotomicNumber::from_root(&r).scale(&q)
                })
        })
}

/// A ramified character with `p^a <= 625`.
fn character() -> impl Strategy<Value = LocalCharacter> {
    (
        prop::sample::select(vec![
            (3u64, 1u32),
            (3, 2),
            (3, 3),
            (3, 4),
            (5, 1),
            (5, 2),
            (5, 3),
            (5, 4),
            (7, 1),
            (7, 2),
            (7, 3),
        ]),
        any::<u64>(),
        0u64..6,
    )
        .prop_map(|((p, a), seed, pi)| {
            let order = p.pow(a - 1) * (p - 1);
            let mut t = seed % order;
            if a == 1 && t == 0 {
                t = 1;
            }
            if a >= 2 && t % p == 0 {
                t += 1;
            }
            LocalCharacter::new(p, a, t as i64, RootOfUnity::new(6, pi as i64).unwrap()).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(x in cyclo(), y in cyclo(), z in cyclo()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert!((&x - &x).is_zero());
        prop_assert_eq!(&x * &CyclotomicNumber::one(1), x.clone());
    }

    #[test]
    fn conjugation_is_a_ring_homomorphism(x in cyclo(), y in cyclo()) {
        prop_assert_eq!((&x * &y).conjugate(), &x.conjugate() * &y.conjugate());
        prop_assert_eq!((&x + &y).conjugate(), &x.conjugate() + &y.conjugate());
        prop_assert_eq!(x.conjugate().conjugate(), x.clone());
        let norm = &x * &x.conjugate();
        prop_assert!(norm.approx_complex(15).1.abs() < 1e-9);
    }

    #[test]
    fn lifting_preserves_value(x in cyclo(), k in 1u64..4) {
        let lifted = x.lift_level(x.level() * k).unwrap();
        prop_assert_eq!(&lifted, &x);
        let (a, b) = (x.approx_complex(15), lifted.approx_complex(15));
        prop_assert!((a.0 - b.0).abs() < 1e-9 && (a.1 - b.1).abs() < 1e-9);
    }

    #[test]
    fn roots_of_unity_are_recognized(n in 1u64..200, e in any::<i64>(), sign in any::<bool>()) {
        let r = RootOfUnity::new(n, e).unwrap();
        let r = if sign { r * RootOfUnity::minus_one() } else { r };
        prop_assert_eq!(CyclotomicNumber::from_root(&r).is_root_of_unity(), Some(r));
    }

    #[test]
    fn characters_are_multiplicative(chi in character(), x in 1u64..10_000, y in 1u64..10_000) {
        let p = chi.p();
        prop_assume!(x % p != 0 && y % p != 0);
        prop_assert_eq!(chi.eval_unit(x * y).unwrap(), chi.eval_unit(x).unwrap() * chi.eval_unit(y).unwrap());
        let vx = PAdicApprox::from_integer(p, (x * p) as i64).unwrap();
        prop_assert_eq!(chi.eval(&vx).unwrap(), chi.pi_value() * chi.eval_unit(x).unwrap());
    }

    #[test]
    fn conductor_of_product(x in character(), y in character()) {
        prop_assume!(x.p() == y.p());
        let prod = x.mul(&y).unwrap();
        let (a1, a2) = (x.conductor(), y.conductor());
        prop_assert!(prod.conductor() <= a1.max(a2));
        if a1 != a2 {
            prop_assert_eq!(prod.conductor(), a1.max(a2));
        }
        prop_assert_eq!(prod.computed_conductor(), prod.conductor());
    }

    #[test]
    fn epsilon_has_modulus_one_and_every_depth_agrees(chi in character(), u in 1u64..500) {
        let p = chi.p();
        prop_assume!(u % p != 0);
        let psi = AdditiveCharacter::canonical(p).unwrap();
        let e = epsilon::tate_epsilon(&chi, &psi, None).unwrap();
        prop_assert!(e.modulus_one());
        prop_assert_eq!(&epsilon::tate_epsilon(&chi, &psi, Some(u)).unwrap(), &e);
        for m in 0..=chi.conductor() / 2 {
            prop_assert_eq!(&epsilon::lamprecht_tate_epsilon(&chi, &psi, m).unwrap(), &e);
        }
    }

    #[test]
    fn epsilon_times_epsilon_of_inverse(chi in character()) {
        // epsilon(chi) epsilon(chi^{-1}) = chi(-1)
        let p = chi.p();
        let psi = AdditiveCharacter::canonical(p).unwrap();
        let e1 = epsilon::tate_epsilon(&chi, &psi, None).unwrap();
        let e2 = epsilon::tate_epsilon(&chi.inverse(), &psi, None).unwrap();
        let product = EpsilonValue::new(p, e1.value() * e2.value(), e1.half_power() + e2.half_power());
        let minus_one = PAdicApprox::from_integer(p, -1).unwrap();
        let expected = CyclotomicNumber::from_root(&chi.eval(&minus_one).unwrap());
        prop_assert_eq!(product, EpsilonValue::new(p, expected, 0));
    }

    #[test]
    fn scaling_by_p_is_invisible(x in cyclo(), k in 0u32..3) {
        prop_assume!(!x.is_zero());
        let p = 5u64;
        let a = EpsilonValue::new(p, x.clone(), k);
        let b = EpsilonValue::new(p, x.scale_int(&BigInt::from(p)), k + 2);
        prop_assert_eq!(&a, &b);
        prop_assert_ne!(&a, &EpsilonValue::new(p, x.clone(), k + 1));
    }
}
