//! Dirichlet convolution `(f*g)(n) = Σ_{d | n} f(d)·g(n/d)`.
//!
//! [`convolve_at`] is the structure-blind reference: a plain sum over divisor
//! pairs that never looks at the class of either factor. The prime-power and
//! tabulated forms are checked against it.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::factor::{is_prime_u64, Factorization, SpfTable};
use crate::function::{mobius, Evaluable};
use crate::value::Value;

/// Sum of `f(d)·g(n/d)` over every divisor `d` of `n`.
pub fn convolve_at(f: &dyn Evaluable, g: &dyn Evaluable, n: &Factorization) -> Result<Value> {
    let mut total = Value::zero();
    for (d, rest) in n.divisor_pairs() {
        total += f.eval(&d)? * g.eval(&rest)?;
    }
    Ok(total)
}

/// `(f*g)(p^m) = Σ_{j=0}^{m} f(p^j)·g(p^(m-j))`.
pub fn convolve_prime_power(f: &dyn Evaluable, g: &dyn Evaluable, p: u64, m: u32) -> Result<Value> {
    if !is_prime_u64(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    let powers: Vec<Factorization> = (0..=m).map(|j| Factorization::prime_power_unchecked(p, j)).collect();
    let mut total = Value::zero();
    for j in 0..=m as usize {
        total += f.eval(&powers[j])? * g.eval(&powers[m as usize - j])?;
    }
    Ok(total)
}

/// Values of an arithmetic function on `1..=N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueTable {
    values: Vec<Value>,
    provenance: String,
}

impl ValueTable {
    /// `values[0]` is the value at 1.
    pub fn from_values(values: Vec<Value>, provenance: impl Into<String>) -> Self {
        ValueTable { values, provenance: provenance.into() }
    }

    /// Evaluates `f` at every `n <= bound` through a sieve.
    pub fn tabulate(f: &dyn Evaluable, bound: u64) -> Result<ValueTable> {
        let facts = factorizations_upto(bound)?;
        let values = facts.par_iter().map(|n| f.eval(n)).collect::<Result<Vec<_>>>()?;
        Ok(ValueTable { values, provenance: f.label() })
    }

    pub fn bound(&self) -> u64 {
        self.values.len() as u64
    }

    pub fn get(&self, n: u64) -> Option<&Value> {
        n.checked_sub(1).and_then(|i| self.values.get(i as usize))
    }

    pub fn values(&self) -> &[Value] {
        &self.values
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    /// `(n, value)` for `lo <= n <= hi`, clipped to the table.
    pub fn rows(&self, lo: u64, hi: u64) -> impl Iterator<Item = (u64, &Value)> + '_ {
        let lo = lo.max(1);
        let hi = hi.min(self.bound());
        (lo..=hi).map(move |n| (n, &self.values[(n - 1) as usize]))
    }

    /// Dirichlet product of two tables over their common range.
    pub fn convolve(&self, other: &ValueTable) -> Result<ValueTable> {
        let bound = self.bound().min(other.bound());
        let values = dirichlet_double_loop(&self.values[..bound as usize], &other.values[..bound as usize])?;
        Ok(ValueTable { values, provenance: format!("({}) * ({})", self.provenance, other.provenance) })
    }
}

/// Factorizations of `1..=bound` in order.
pub(crate) fn factorizations_upto(bound: u64) -> Result<Vec<Factorization>> {
    if bound == 0 {
        return Err(Error::Domain("table bound must be at least 1".into()));
    }
    let sieve = SpfTable::build(bound.max(2))?;
    let mut out = Vec::new();
    out.try_reserve_exact(bound as usize).map_err(|e| Error::Resource(format!("{bound} factorizations: {e}")))?;
    for n in 1..=bound {
        out.push(sieve.factorize(n)?);
    }
    Ok(out)
}

/// For each `d`, adds `a[d]·b[k]` into slot `d·k`: `O(N log N)` products.
fn dirichlet_double_loop(a: &[Value], b: &[Value]) -> Result<Vec<Value>> {
    let len = a.len().min(b.len());
    let mut acc: Vec<Value> = Vec::new();
    acc.try_reserve_exact(len).map_err(|e| Error::Resource(format!("table of {len} values: {e}")))?;
    acc.resize(len, Value::zero());
    for d in 1..=len {
        let ad = &a[d - 1];
        if ad.is_zero() {
            continue;
        }
        for k in 1..=len / d {
            acc[d * k - 1] += ad * &b[k - 1];
        }
    }
    Ok(acc)
}

/// `(f*g)(n)` for every `n <= bound`, from memoized values of `f` and `g`.
pub fn convolve_table(f: &dyn Evaluable, g: &dyn Evaluable, bound: u64) -> Result<ValueTable> {
    let facts = factorizations_upto(bound)?;
    let (fv, gv) = rayon::join(
        || facts.par_iter().map(|n| f.eval(n)).collect::<Result<Vec<_>>>(),
        || facts.par_iter().map(|n| g.eval(n)).collect::<Result<Vec<_>>>(),
    );
    let values = dirichlet_double_loop(&fv?, &gv?)?;
    Ok(ValueTable { values, provenance: format!("{} * {}", f.label(), g.label()) })
}

/// `G = μ * F`, so that `1 * G = F`.
pub fn mobius_invert(table: &ValueTable) -> Result<ValueTable> {
    let mu = ValueTable::tabulate(&mobius(), table.bound())?;
    let values = dirichlet_double_loop(mu.values(), table.values())?;
    Ok(ValueTable { values, provenance: format!("mu * ({})", table.provenance) })
}
