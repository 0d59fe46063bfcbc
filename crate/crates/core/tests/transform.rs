mod common;

use addtrans::factor::factorize_u64;
use addtrans::function::{big_omega, catalog, lookup, omega, sopfr};
use addtrans::transform::phi_of;
use addtrans::{
    complete_extension, partial_derivative, phi_transform, phi_transform_leibniz, transform_as_derivative_sum, Error,
    Value,
};
use proptest::prelude::*;

#[test]
fn three_way_agreement_to_1e4() {
    for f in catalog() {
        for n in 1..=10_000u64 {
            let fz = factorize_u64(n).unwrap();
            let closed = phi_transform(&f, &fz).unwrap();
            assert_eq!(phi_transform_leibniz(&f, &fz).unwrap(), closed, "{} at {n}", f.name());
            assert_eq!(transform_as_derivative_sum(&f, &fz).unwrap(), closed, "{} at {n}", f.name());
        }
    }
}

#[test]
fn matches_reference_recursion() {
    for name in ["mu", "phi", "big_omega", "sigma_1", "id", "liouville"] {
        let f = lookup(name).unwrap();
        let base = |k: u64| common::by_name(name, k);
        for n in 1..=2000u64 {
            assert_eq!(f_phi(&f, n), Value::from(common::transform(&base, n) as i64), "{name} at {n}");
        }
    }
}

fn f_phi(f: &addtrans::ArithFn, n: u64) -> Value {
    phi_transform(f, &factorize_u64(n).unwrap()).unwrap()
}

#[test]
fn agrees_with_f_on_prime_powers() {
    for f in catalog() {
        for q in 2..=10_000u64 {
            let fz = factorize_u64(q).unwrap();
            if fz.is_prime_power() {
                assert_eq!(f_phi(&f, q), f.eval(&fz).unwrap(), "{} at {q}", f.name());
            }
        }
    }
}

#[test]
fn integer_valued_inputs_give_integers() {
    for f in catalog() {
        for n in 1..=3000u64 {
            assert!(f_phi(&f, n).is_integer(), "{} at {n}", f.name());
        }
    }
}

#[test]
fn partial_derivative_needs_a_divisor() {
    let n = factorize_u64(12).unwrap();
    assert!(matches!(partial_derivative(&big_omega(), 5, &n), Err(Error::Domain(_))));
    assert_eq!(partial_derivative(&big_omega(), 2, &n).unwrap(), Value::from(6));
    assert_eq!(partial_derivative(&big_omega(), 3, &n).unwrap(), Value::from(4));
}

#[test]
fn complete_extension_obeys_leibniz_on_all_pairs() {
    for f in [big_omega(), omega(), sopfr(), lookup("id").unwrap(), lookup("mu").unwrap()] {
        let psi = complete_extension(&f);
        let at = |k: u64| psi.eval_u64(k).unwrap();
        for m in 1..=1000u64 {
            for n in 1..=1000 / m {
                let lhs = at(m * n);
                let rhs = Value::from(n) * at(m) + Value::from(m) * at(n);
                assert_eq!(lhs, rhs, "{} at ({m}, {n})", f.name());
            }
        }
    }
}

proptest! {
    #[test]
    fn leibniz_law_on_coprime_pairs(m in 1u64..=100, n in 1u64..=100) {
        prop_assume!(common::gcd(m, n) == 1);
        for f in catalog() {
            let lhs = f_phi(&f, m * n);
            let rhs = Value::from(n) * f_phi(&f, m) + Value::from(m) * f_phi(&f, n);
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn wrapped_transform_matches_direct(n in 1u64..=10_000) {
        for f in catalog() {
            prop_assert_eq!(phi_of(&f).eval_u64(n).unwrap(), f_phi(&f, n));
        }
    }
}

#[test]
fn l_additivity_with_identity_companion() {
    use addtrans::function::l_additive_counterexample;
    use addtrans::{is_l_additive_witness, TransformedFn};
    let id = lookup("id").unwrap();
    // the transform obeys the product rule only on coprime pairs: Φ_Ω(4) = 2 but 2·Φ_Ω(2) + 2·Φ_Ω(2) = 4
    let phi = TransformedFn::new(big_omega());
    assert_eq!(l_additive_counterexample(&phi, &id, 300).unwrap(), Some((2, 2)));
    for f in [big_omega(), omega(), sopfr()] {
        assert!(is_l_additive_witness(&complete_extension(&f), &id, 300).unwrap(), "{}", f.name());
    }
}
