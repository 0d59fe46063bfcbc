mod common;

use addtrans::factor::{divisors, factorize, factorize_batch, factorize_u64, SpfTable};
use addtrans::function::{additive_companion, catalog, lookup, mobius, totient, CATALOG_NAMES};
use addtrans::{convolve_at, FnClass, Value};
use num_bigint::BigUint;
use proptest::prelude::*;

fn at(name: &str, n: u64) -> Value {
    lookup(name).unwrap().eval_u64(n).unwrap()
}

#[test]
fn catalog_matches_definitions_up_to_500() {
    for name in CATALOG_NAMES {
        for n in 1..=500 {
            assert_eq!(at(name, n), Value::from(common::by_name(name, n) as i64), "{name}({n})");
        }
    }
}

#[test]
fn reconstruction_to_1e5() {
    let table = SpfTable::build(100_000).unwrap();
    for n in 1..=100_000u64 {
        let f = factorize_u64(n).unwrap();
        let product: BigUint = f.factors().iter().map(|pp| pp.value()).product();
        assert_eq!(product, BigUint::from(n));
        assert_eq!(f.n(), &BigUint::from(n));
        if n >= 2 {
            assert_eq!(factorize_batch(&table, n).unwrap(), f);
        }
    }
}

#[test]
fn factorization_matches_trial_division() {
    for n in 1..=5000u64 {
        let got: Vec<(u64, u32)> = factorize_u64(n).unwrap().factors().iter().map(|pp| (pp.p(), pp.alpha())).collect();
        assert_eq!(got, common::factor(n));
    }
}

#[test]
fn large_semiprime_and_prime_power() {
    let n: BigUint = BigUint::from(1_000_000_007u64) * BigUint::from(998_244_353u64);
    let f = factorize(&n).unwrap();
    let got: Vec<(u64, u32)> = f.factors().iter().map(|pp| (pp.p(), pp.alpha())).collect();
    assert_eq!(got, vec![(998_244_353, 1), (1_000_000_007, 1)]);
    let f = factorize(&BigUint::from(3u64).pow(40)).unwrap();
    assert_eq!(f.factors().len(), 1);
    assert_eq!(f.big_omega(), 40);
}

#[test]
fn totient_is_mobius_times_id_to_1e4() {
    let (mu, id, phi) = (mobius(), lookup("id").unwrap(), totient());
    for n in 1..=10_000u64 {
        let f = factorize_u64(n).unwrap();
        assert_eq!(convolve_at(&mu, &id, &f).unwrap(), phi.eval(&f).unwrap(), "n = {n}");
    }
}

#[test]
fn companion_agrees_on_prime_powers_to_1e4() {
    let table = SpfTable::build(10_000).unwrap();
    for f in catalog() {
        let g = additive_companion(&f);
        for p in table.primes() {
            let mut q = p;
            let mut a = 1;
            while q <= 10_000 {
                assert_eq!(g.at_prime_power(p, a).unwrap(), f.at_prime_power(p, a).unwrap(), "{} at {p}^{a}", f.name());
                q *= p;
                a += 1;
            }
        }
    }
}

fn coprime_pair() -> impl Strategy<Value = (u64, u64)> {
    (1u64..=1000, 1u64..=1000).prop_filter("coprime", |&(m, n)| common::gcd(m, n) == 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn multiplicative_entries_multiply((m, n) in coprime_pair()) {
        for f in catalog().into_iter().filter(|f| f.class().is_multiplicative()) {
            prop_assert_eq!(f.eval_u64(m * n).unwrap(), f.eval_u64(m).unwrap() * f.eval_u64(n).unwrap());
        }
    }

    #[test]
    fn additive_entries_add((m, n) in coprime_pair()) {
        for f in catalog().into_iter().filter(|f| f.class().is_additive()) {
            prop_assert_eq!(f.eval_u64(m * n).unwrap(), f.eval_u64(m).unwrap() + f.eval_u64(n).unwrap());
        }
    }

    #[test]
    fn completely_additive_entries_add_on_all_pairs(m in 1u64..=1000, n in 1u64..=1000) {
        for f in catalog().into_iter().filter(|f| f.class() == FnClass::CompletelyAdditive) {
            prop_assert_eq!(f.eval_u64(m * n).unwrap(), f.eval_u64(m).unwrap() + f.eval_u64(n).unwrap());
        }
    }

    #[test]
    fn completely_multiplicative_entries_multiply_on_all_pairs(m in 1u64..=1000, n in 1u64..=1000) {
        for f in catalog().into_iter().filter(|f| f.class() == FnClass::CompletelyMultiplicative) {
            prop_assert_eq!(f.eval_u64(m * n).unwrap(), f.eval_u64(m).unwrap() * f.eval_u64(n).unwrap());
        }
    }

    #[test]
    fn divisor_lists(n in 1u64..200_000) {
        let f = factorize_u64(n).unwrap();
        let ds = divisors(&f);
        prop_assert!(ds.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(ds.iter().all(|d| (BigUint::from(n) % d) == BigUint::from(0u8)));
        let expected: u64 = f.factors().iter().map(|pp| pp.alpha() as u64 + 1).product();
        prop_assert_eq!(ds.len() as u64, expected);
    }
}
