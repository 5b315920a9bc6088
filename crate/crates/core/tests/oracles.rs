//! Library results against brute-force oracles from `common`.

mod common;

use epsilon_factor::cyclo::{CyclotomicNumber, RootOfUnity};
use epsilon_factor::epsilon::{self, CSolution};
use epsilon_factor::localfield::{
    enumerate_characters, generator, AdditiveCharacter, LocalCharacter,
};

use common::RawChar;

fn psi(p: u64) -> AdditiveCharacter {
    AdditiveCharacter::canonical(p).unwrap()
}

fn raw(chi: &LocalCharacter) -> RawChar {
    RawChar {
        p: chi.p(),
        a: chi.conductor(),
        t: chi.unit_exponent(),
        pi_order: chi.pi_value().order(),
        pi_exp: chi.pi_value().exponent(),
    }
}

#[test]
fn generators_agree_with_order_search() {
    for p in [3u64, 5, 7, 11, 13, 29, 37] {
        assert_eq!(generator(p, 2).unwrap(), common::generator(p), "p = {p}");
    }
}

#[test]
fn generator_skips_a_primitive_root_that_fails_mod_p_squared() {
    // 5 is the least primitive root mod 40487 but 5^40486 = 1 mod 40487^2;
    // 10 was found by an order check over the factors of p(p-1) in sympy
    assert_eq!(generator(40487, 1).unwrap(), 10);
}

#[test]
fn solve_c_is_the_unique_brute_force_solution() {
    for (p, a) in [
        (3u64, 2u32),
        (3, 3),
        (3, 4),
        (5, 2),
        (5, 3),
        (5, 4),
        (7, 2),
        (7, 3),
    ] {
        let log = common::dlog_table(p, a);
        for chi in enumerate_characters(p, a, 1).unwrap() {
            for m in 1..=a / 2 {
                let c = epsilon::solve_c(&chi, &psi(p), m).unwrap();
                let brute = common::brute_c_units(raw(&chi), &log, m);
                assert_eq!(brute, vec![c.unit], "{chi}, m = {m}");
            }
        }
    }
}

#[test]
fn solve_c_with_twisted_psi_satisfies_its_condition() {
    use epsilon_factor::localfield::PAdicApprox;
    for (v, u) in [(1i64, 2u64), (-1, 3), (2, 4)] {
        let b = PAdicApprox::new(5, v, u, 20).unwrap();
        let psi_b = AdditiveCharacter::twisted(b).unwrap();
        for chi in enumerate_characters(5, 4, 1).unwrap().take(40) {
            for m in 0..=2 {
                let c = epsilon::solve_c(&chi, &psi_b, m).unwrap();
                assert_eq!(c.valuation, 4 + v);
                assert!(c.verify(&chi, &psi_b).unwrap());
                assert!(epsilon::reduction_identity_check(&chi, &psi_b, m).unwrap());
            }
        }
    }
}

#[test]
fn full_sum_matches_term_by_term_oracle() {
    // adds exact roots one at a time, with discrete logs from the oracle table
    for (p, a) in [(3u64, 1u32), (3, 2), (5, 1), (5, 2), (7, 1), (3, 3)] {
        let pa = p.pow(a);
        let log = common::dlog_table(p, a);
        for chi in enumerate_characters(p, a, 2).unwrap() {
            let r = raw(&chi);
            let mut oracle = CyclotomicNumber::zero(1);
            for x in (1..pa).filter(|x| x % p != 0) {
                let (n, d) = r.angle(&log, x);
                let chi_inv = RootOfUnity::new(d as u64, -(n as i64)).unwrap();
                let psi_x = RootOfUnity::new(pa, x as i64).unwrap();
                oracle = &oracle + &CyclotomicNumber::from_root(&(chi_inv * psi_x));
            }
            let sum = epsilon::tate_sum(&chi, &psi(p), 1).unwrap();
            assert_eq!(sum.value, oracle, "{chi}");
            assert_eq!(sum.terms, pa - pa / p);
        }
    }
}

#[test]
fn float_oracle_with_unramified_twist() {
    for (p, a) in [(5u64, 2u32), (7, 2), (3, 4)] {
        let log = common::dlog_table(p, a);
        for chi in enumerate_characters(p, a, 3).unwrap() {
            let e = epsilon::tate_epsilon(&chi, &psi(p), None).unwrap();
            let f = common::float_epsilon(raw(&chi), &log, 1);
            assert!(common::close(e.approx(), f, 1e-9), "{chi}");
        }
    }
}

#[test]
fn spec_sweeps_for_identities() {
    let psi3 = psi(3);
    for chi in enumerate_characters(3, 4, 1).unwrap() {
        for m in [1, 2] {
            assert!(epsilon::reduction_identity_check(&chi, &psi3, m).unwrap());
        }
    }
    for chi in enumerate_characters(3, 2, 1).unwrap() {
        let full = epsilon::tate_epsilon(&chi, &psi3, None).unwrap();
        assert_eq!(epsilon::lamprecht_even(&chi, &psi3).unwrap(), full);
    }
    for chi in enumerate_characters(3, 3, 1).unwrap() {
        let full = epsilon::tate_epsilon(&chi, &psi3, None).unwrap();
        assert_eq!(epsilon::lamprecht_odd(&chi, &psi3).unwrap(), full);
    }
    for alpha in enumerate_characters(3, 4, 1).unwrap() {
        for beta in enumerate_characters(3, 2, 1).unwrap() {
            let prod = alpha.mul(&beta).unwrap();
            assert_eq!(prod.conductor(), 4);
            assert_eq!(
                epsilon::deligne_twist(&alpha, &beta, &psi3).unwrap(),
                epsilon::tate_epsilon(&prod, &psi3, None).unwrap()
            );
        }
    }
    for alpha in enumerate_characters(5, 2, 1).unwrap() {
        for beta in enumerate_characters(5, 1, 1).unwrap() {
            let prod = alpha.mul(&beta).unwrap();
            assert_eq!(
                epsilon::deligne_twist(&alpha, &beta, &psi(5)).unwrap(),
                epsilon::tate_epsilon(&prod, &psi(5), None).unwrap()
            );
        }
    }
}

#[test]
fn single_term_even_case_has_trivial_certificate() {
    // at a = 2, epsilon = chi(c) psi(1/c), and psi(1/c) is the whole quotient
    let chi = LocalCharacter::new(5, 2, 1, RootOfUnity::one()).unwrap();
    let cls = epsilon::epsilon_mod_mu_p_infinity(&chi, &psi(5)).unwrap();
    let c = cls.c;
    assert_eq!(
        c,
        CSolution {
            p: 5,
            valuation: 2,
            unit: 3,
            m: 1
        }
    );
    assert_eq!(cls.certificate, RootOfUnity::new(25, 17).unwrap());
}
