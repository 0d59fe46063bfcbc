//! The additive transform `Φ_f` and the arithmetic partial derivative.
//!
//! `Φ_f` agrees with `f` on prime powers and obeys the Leibniz rule
//! `Φ_f(mn) = m·Φ_f(n) + n·Φ_f(m)` on coprime arguments, which forces
//! `Φ_f(1) = 0` and the closed form `Φ_f(n) = Σ_{p^a || n} (n / p^a)·f(p^a)`.
//! Both routes are implemented separately so that each can check the other.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::factor::Factorization;
use crate::function::{ArithFn, Evaluable};
use crate::value::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TransformMode {
    ClosedForm,
    LeibnizRecursion,
}

/// `Φ_f` for a fixed base function `f`.
#[derive(Clone, Debug)]
pub struct TransformedFn {
    base: ArithFn,
    mode: TransformMode,
}

impl TransformedFn {
    pub fn new(base: ArithFn) -> Self {
        TransformedFn { base, mode: TransformMode::ClosedForm }
    }

    pub fn with_mode(mut self, mode: TransformMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn base(&self) -> &ArithFn {
        &self.base
    }

    pub fn mode(&self) -> TransformMode {
        self.mode
    }

    pub fn eval(&self, n: &Factorization) -> Result<Value> {
        match self.mode {
            TransformMode::ClosedForm => phi_transform(&self.base, n),
            TransformMode::LeibnizRecursion => phi_transform_leibniz(&self.base, n),
        }
    }

    /// `Φ_f` as a general arithmetic function named `phi_of:<f>`.
    pub fn to_arith_fn(&self) -> ArithFn {
        let t = self.clone();
        ArithFn::general(format!("phi_of:{}", self.base.name()), Value::zero(), move |n| t.eval(n))
    }
}

impl Evaluable for TransformedFn {
    fn label(&self) -> String {
        format!("phi_of:{}", self.base.name())
    }

    fn eval(&self, n: &Factorization) -> Result<Value> {
        TransformedFn::eval(self, n)
    }
}

/// `Φ_f` wrapped as an [`ArithFn`], evaluated by the closed form.
pub fn phi_of(f: &ArithFn) -> ArithFn {
    TransformedFn::new(f.clone()).to_arith_fn()
}

/// Closed form: `Σ_{p^a || n} (n / p^a)·f(p^a)`. Zero at `n = 1`.
pub fn phi_transform(f: &ArithFn, n: &Factorization) -> Result<Value> {
    let mut total = Value::zero();
    for pp in n.factors() {
        let cofactor = Value::from_biguint(n.without(pp.p()).n());
        total += cofactor * f.at_prime_power(pp.p(), pp.alpha())?;
    }
    Ok(total)
}

/// Leibniz recursion: split `n = p^a · rest` with `gcd(p^a, rest) = 1` and
/// apply `Φ(p^a · rest) = p^a·Φ(rest) + rest·Φ(p^a)`, bottoming out at
/// `Φ(1) = 0` and `Φ(p^a) = f(p^a)`.
pub fn phi_transform_leibniz(f: &ArithFn, n: &Factorization) -> Result<Value> {
    let Some((head, rest)) = n.split_first() else {
        return Ok(Value::zero());
    };
    let at_head = f.at_prime_power(head.p(), head.alpha())?;
    if rest.is_one() {
        return Ok(at_head);
    }
    let head_value = Value::from_biguint(&head.value());
    let rest_value = Value::from_biguint(rest.n());
    Ok(head_value * phi_transform_leibniz(f, &rest)? + rest_value * at_head)
}

/// `∂f/∂p (n) = (f(p^a) / p^a)·n` where `a = v_p(n)`; only defined for `p | n`.
pub fn partial_derivative(f: &ArithFn, p: u64, n: &Factorization) -> Result<Value> {
    let pp = n.part(p).ok_or_else(|| Error::Domain(format!("{p} does not divide {}", n.n())))?;
    let ratio = f.at_prime_power(p, pp.alpha())? / Value::from_biguint(&pp.value());
    Ok(ratio * Value::from_biguint(n.n()))
}

/// `Σ_{p | n} ∂f/∂p (n)`.
pub fn transform_as_derivative_sum(f: &ArithFn, n: &Factorization) -> Result<Value> {
    n.factors().iter().map(|pp| partial_derivative(f, pp.p(), n)).sum()
}

/// The function `Ψ` seeded by `Ψ(p) = f(p)` that obeys the Leibniz rule for
/// all pairs, not just coprime ones. On prime powers `Ψ(p^a) = a·p^(a-1)·f(p)`,
/// so `Ψ(n) = n·Σ_{p^a || n} a·f(p)/p`. It is L-additive with companion `Id`.
pub fn complete_extension(f: &ArithFn) -> ArithFn {
    let base = f.clone();
    ArithFn::general(format!("complete:{}", f.name()), Value::zero(), move |n| {
        let mut total = Value::zero();
        for pp in n.factors() {
            let at_prime = base.at_prime_power(pp.p(), 1)?;
            let p = Value::from(pp.p());
            let at_power = Value::from(pp.alpha()) * p.pow(pp.alpha() - 1) * at_prime;
            total += Value::from_biguint(n.without(pp.p()).n()) * at_power;
        }
        Ok(total)
    })
}
