//! Arithmetic functions evaluated through prime-power decompositions.
//!
//! An [`ArithFn`] carries a declared structural class. Multiplicative and
//! additive classes are defined entirely by their values on prime powers;
//! the `General` class supplies a rule over whole factorizations.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::factor::{Factorization, SpfTable};
use crate::value::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FnClass {
    Multiplicative,
    CompletelyMultiplicative,
    Additive,
    CompletelyAdditive,
    General,
}

impl FnClass {
    pub fn is_multiplicative(self) -> bool {
        matches!(self, FnClass::Multiplicative | FnClass::CompletelyMultiplicative)
    }

    pub fn is_additive(self) -> bool {
        matches!(self, FnClass::Additive | FnClass::CompletelyAdditive)
    }

    pub fn is_completely_additive(self) -> bool {
        self == FnClass::CompletelyAdditive
    }

    pub fn is_completely_multiplicative(self) -> bool {
        self == FnClass::CompletelyMultiplicative
    }
}

impl fmt::Display for FnClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FnClass::Multiplicative => "multiplicative",
            FnClass::CompletelyMultiplicative => "completely multiplicative",
            FnClass::Additive => "additive",
            FnClass::CompletelyAdditive => "completely additive",
            FnClass::General => "general",
        };
        f.write_str(s)
    }
}

/// Anything that can be evaluated at a factorized positive integer.
pub trait Evaluable: Send + Sync {
    fn label(&self) -> String;

    fn eval(&self, n: &Factorization) -> Result<Value>;
}

impl<T: Evaluable + ?Sized> Evaluable for &T {
    fn label(&self) -> String {
        (**self).label()
    }

    fn eval(&self, n: &Factorization) -> Result<Value> {
        (**self).eval(n)
    }
}

type PrimePowerRule = Arc<dyn Fn(u64, u32) -> Result<Value> + Send + Sync>;
type GeneralRule = Arc<dyn Fn(&Factorization) -> Result<Value> + Send + Sync>;

#[derive(Clone)]
enum Rule {
    PrimePower(PrimePowerRule),
    General(Option<GeneralRule>),
}

/// An arithmetic function `f: N -> Q` with a declared class.
///
/// Construction fixes the class invariants: multiplicative classes have
/// `f(1) = 1`, additive classes `f(1) = 0`, and the complete classes are
/// built from their prime values alone.
#[derive(Clone)]
pub struct ArithFn {
    name: String,
    class: FnClass,
    at_one: Value,
    rule: Rule,
}

impl fmt::Debug for ArithFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ArithFn").field("name", &self.name).field("class", &self.class).finish()
    }
}

impl ArithFn {
    pub fn multiplicative<F>(name: impl Into<String>, rule: F) -> Self
    where
        F: Fn(u64, u32) -> Value + Send + Sync + 'static,
    {
        Self::from_rule(name, FnClass::Multiplicative, Value::one(), move |p, a| Ok(rule(p, a)))
    }

    /// Determined by prime values: `f(p^a) = f(p)^a`.
    pub fn completely_multiplicative<F>(name: impl Into<String>, at_prime: F) -> Self
    where
        F: Fn(u64) -> Value + Send + Sync + 'static,
    {
        Self::from_rule(name, FnClass::CompletelyMultiplicative, Value::one(), move |p, a| Ok(at_prime(p).pow(a)))
    }

    pub fn additive<F>(name: impl Into<String>, rule: F) -> Self
    where
        F: Fn(u64, u32) -> Value + Send + Sync + 'static,
    {
        Self::from_rule(name, FnClass::Additive, Value::zero(), move |p, a| Ok(rule(p, a)))
    }

    /// Determined by prime values: `f(p^a) = a·f(p)`.
    pub fn completely_additive<F>(name: impl Into<String>, at_prime: F) -> Self
    where
        F: Fn(u64) -> Value + Send + Sync + 'static,
    {
        Self::from_rule(name, FnClass::CompletelyAdditive, Value::zero(), move |p, a| Ok(at_prime(p) * Value::from(a)))
    }

    /// A function with no declared structure. `rule` may return
    /// [`Error::Undefined`] where the function has no value.
    pub fn general<F>(name: impl Into<String>, at_one: Value, rule: F) -> Self
    where
        F: Fn(&Factorization) -> Result<Value> + Send + Sync + 'static,
    {
        ArithFn { name: name.into(), class: FnClass::General, at_one, rule: Rule::General(Some(Arc::new(rule))) }
    }

    /// A general function known only at 1.
    pub fn undefined(name: impl Into<String>, at_one: Value) -> Self {
        ArithFn { name: name.into(), class: FnClass::General, at_one, rule: Rule::General(None) }
    }

    pub(crate) fn from_rule<F>(name: impl Into<String>, class: FnClass, at_one: Value, rule: F) -> Self
    where
        F: Fn(u64, u32) -> Result<Value> + Send + Sync + 'static,
    {
        debug_assert!(class != FnClass::General);
        ArithFn { name: name.into(), class, at_one, rule: Rule::PrimePower(Arc::new(rule)) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn class(&self) -> FnClass {
        self.class
    }

    pub fn value_at_one(&self) -> &Value {
        &self.at_one
    }

    /// `f(p^alpha)`, with `f(p^0)` read as `f(1)`.
    pub fn at_prime_power(&self, p: u64, alpha: u32) -> Result<Value> {
        if alpha == 0 {
            return Ok(self.at_one.clone());
        }
        match &self.rule {
            Rule::PrimePower(rule) => rule(p, alpha),
            Rule::General(_) => self.eval(&Factorization::prime_power_unchecked(p, alpha)),
        }
    }

    pub fn eval(&self, n: &Factorization) -> Result<Value> {
        if n.is_one() {
            return Ok(self.at_one.clone());
        }
        match &self.rule {
            Rule::PrimePower(rule) => {
                let parts = n.factors().iter().map(|pp| rule(pp.p(), pp.alpha()));
                if self.class.is_multiplicative() {
                    parts.product()
                } else {
                    parts.sum()
                }
            }
            Rule::General(Some(rule)) => rule(n),
            Rule::General(None) => Err(Error::Undefined { function: self.name.clone(), n: n.n().to_string() }),
        }
    }

    /// Convenience: factorize `n` and evaluate.
    pub fn eval_u64(&self, n: u64) -> Result<Value> {
        self.eval(&crate::factor::factorize_u64(n)?)
    }
}

impl Evaluable for ArithFn {
    fn label(&self) -> String {
        self.name.clone()
    }

    fn eval(&self, n: &Factorization) -> Result<Value> {
        ArithFn::eval(self, n)
    }
}

/// Catalog names, in listing order.
pub const CATALOG_NAMES: [&str; 12] =
    ["eps", "one", "id", "mu", "phi", "omega", "big_omega", "liouville", "sigma_0", "sigma_1", "sigma_2", "sopfr"];

/// The convolution identity: 1 at 1, 0 elsewhere.
pub fn eps() -> ArithFn {
    ArithFn::completely_multiplicative("eps", |_| Value::zero())
}

pub fn one() -> ArithFn {
    ArithFn::completely_multiplicative("one", |_| Value::one())
}

pub fn id() -> ArithFn {
    ArithFn::completely_multiplicative("id", Value::from)
}

/// `Id_k(n) = n^k`.
pub fn id_k(k: u32) -> ArithFn {
    ArithFn::completely_multiplicative(format!("id_{k}"), move |p| Value::from(p).pow(k))
}

pub fn mobius() -> ArithFn {
    ArithFn::multiplicative("mu", |_, a| if a == 1 { Value::from(-1) } else { Value::zero() })
}

pub fn totient() -> ArithFn {
    ArithFn::multiplicative("phi", |p, a| Value::from(p).pow(a - 1) * Value::from(p - 1))
}

/// Number of distinct prime factors.
pub fn omega() -> ArithFn {
    ArithFn::additive("omega", |_, _| Value::one())
}

/// Number of prime factors with multiplicity.
pub fn big_omega() -> ArithFn {
    ArithFn::completely_additive("big_omega", |_| Value::one())
}

pub fn liouville() -> ArithFn {
    ArithFn::completely_multiplicative("liouville", |_| Value::from(-1))
}

/// `sigma_k(n) = sum of d^k over d | n`.
pub fn sigma(k: u32) -> ArithFn {
    ArithFn::multiplicative(format!("sigma_{k}"), move |p, a| {
        let pk = Value::from(p).pow(k);
        (0..=a).map(|j| pk.pow(j)).sum()
    })
}

/// Sum of prime factors with multiplicity (integer log-like weight `f(p) = p`).
pub fn sopfr() -> ArithFn {
    ArithFn::completely_additive("sopfr", Value::from)
}

/// Every catalog function, in [`CATALOG_NAMES`] order.
pub fn catalog() -> Vec<ArithFn> {
    CATALOG_NAMES.iter().map(|name| lookup(name).expect("catalog name resolves")).collect()
}

/// Catalog lookup by stable name. `id_<k>` and `sigma_<k>` resolve for any k.
pub fn lookup(name: &str) -> Option<ArithFn> {
    let f = match name {
        "eps" => eps(),
        "one" => one(),
        "id" => id(),
        "mu" => mobius(),
        "phi" => totient(),
        "omega" => omega(),
        "big_omega" => big_omega(),
        "liouville" => liouville(),
        "sopfr" => sopfr(),
        _ => {
            if let Some(k) = name.strip_prefix("sigma_").and_then(|k| k.parse().ok()) {
                sigma(k)
            } else {
                id_k(name.strip_prefix("id_")?.parse().ok()?)
            }
        }
    };
    Some(f)
}

/// `(f·g)(n) = f(n)·g(n)`.
///
/// Two multiplicative factors give a multiplicative product (completely so
/// when both are); anything else yields a `General` function.
pub fn pointwise_product(f: &ArithFn, g: &ArithFn) -> ArithFn {
    let name = format!("{}·{}", f.name, g.name);
    if f.class.is_multiplicative() && g.class.is_multiplicative() {
        let class = if f.class.is_completely_multiplicative() && g.class.is_completely_multiplicative() {
            FnClass::CompletelyMultiplicative
        } else {
            FnClass::Multiplicative
        };
        let (f, g) = (f.clone(), g.clone());
        return ArithFn::from_rule(name, class, Value::one(), move |p, a| {
            Ok(f.at_prime_power(p, a)? * g.at_prime_power(p, a)?)
        });
    }
    let at_one = &f.at_one * &g.at_one;
    let (f, g) = (f.clone(), g.clone());
    ArithFn::general(name, at_one, move |n| Ok(f.eval(n)? * g.eval(n)?))
}

/// The additive function agreeing with `f` on every prime power:
/// `g(n) = sum over p^a || n of f(p^a)`.
pub fn additive_companion(f: &ArithFn) -> ArithFn {
    let base = f.clone();
    ArithFn::from_rule(format!("companion:{}", f.name), FnClass::Additive, Value::zero(), move |p, a| {
        base.at_prime_power(p, a)
    })
}

/// First pair `(m, n)` with `m·n <= bound`, in lexicographic order, where
/// `f(mn) = f(m)h(n) + f(n)h(m)` fails.
pub fn l_additive_counterexample(f: &dyn Evaluable, h: &ArithFn, bound: u64) -> Result<Option<(u64, u64)>> {
    if !h.class.is_completely_multiplicative() {
        return Err(Error::Precondition(format!(
            "companion {} must be completely multiplicative, not {}",
            h.name, h.class
        )));
    }
    if bound == 0 {
        return Ok(None);
    }
    let table = SpfTable::build(bound.max(2))?;
    let mut fv = Vec::with_capacity(bound as usize + 1);
    let mut hv = Vec::with_capacity(bound as usize + 1);
    fv.push(Value::zero());
    hv.push(Value::zero());
    for k in 1..=bound {
        let fk = table.factorize(k)?;
        fv.push(f.eval(&fk)?);
        hv.push(h.eval(&fk)?);
    }
    for m in 1..=bound {
        for n in 1..=bound / m {
            let (m_, n_) = (m as usize, n as usize);
            let rhs = &fv[m_] * &hv[n_] + &fv[n_] * &hv[m_];
            if fv[m_ * n_] != rhs {
                return Ok(Some((m, n)));
            }
        }
    }
    Ok(None)
}

/// Whether `f` is L-additive with companion `h` on every pair `m·n <= bound`.
pub fn is_l_additive_witness(f: &dyn Evaluable, h: &ArithFn, bound: u64) -> Result<bool> {
    Ok(l_additive_counterexample(f, h, bound)?.is_none())
}
