//! Range-checkable identities of the additive transform.
//!
//! Every check evaluates its two sides through different code paths: the
//! divisor-sum convolution or the Leibniz recursion on one side, a formula
//! over the prime-power decomposition on the other. Reports carry the
//! smallest counterexample in the natural order of the checked range.

mod report;

pub use report::{
    CheckedRange, Counterexample, IdentityId, IdentityReport, Outcome, RemarkReport, SuiteReport, Verdict, Witness,
};

use rayon::prelude::*;

use crate::dirichlet::{convolve_at, convolve_prime_power, factorizations_upto};
use crate::error::Result;
use crate::factor::{is_prime_u64, Factorization};
use crate::function::{additive_companion, id, mobius, pointwise_product, totient, ArithFn, FnClass};
use crate::transform::{phi_transform, phi_transform_leibniz, transform_as_derivative_sum, TransformedFn};
use crate::value::Value;

/// Default prime and exponent limits for the Möbius prime-power check when
/// run from a suite.
pub const SUITE_P_MAX: u64 = 100;
pub const SUITE_ALPHA_MAX: u32 = 8;

enum Point {
    Holds { tight: bool },
    Fails(Value, Value),
    Skip,
}

impl Point {
    fn equal(lhs: Value, rhs: Value) -> Point {
        if lhs == rhs {
            Point::Holds { tight: true }
        } else {
            Point::Fails(lhs, rhs)
        }
    }
}

#[derive(Default)]
struct Tally {
    checked: u64,
    skipped: u64,
    equalities: u64,
    first: Option<Counterexample>,
}

impl Tally {
    fn absorb(&mut self, at: Witness, point: Point) {
        match point {
            Point::Holds { tight } => {
                self.checked += 1;
                self.equalities += tight as u64;
            }
            Point::Fails(lhs, rhs) => {
                self.checked += 1;
                if self.first.is_none() {
                    self.first = Some(Counterexample { at, lhs, rhs });
                }
            }
            Point::Skip => self.skipped += 1,
        }
    }

    fn into_report(self, id: IdentityId, function: String, range: CheckedRange, inequality: bool) -> IdentityReport {
        let outcome = match self.first {
            Some(c) => Outcome::Counterexample(c),
            None if self.checked == 0 && self.skipped > 0 => {
                Outcome::Inapplicable("no point in range meets the sign precondition".into())
            }
            None => Outcome::Pass,
        };
        IdentityReport {
            id,
            function,
            range,
            outcome,
            checked: self.checked,
            skipped: self.skipped,
            equalities: inequality.then_some(self.equalities),
            note: None,
        }
    }
}

/// Evaluates `point` on every `n` in `[lo, hi]` and keeps the smallest failure.
fn scan_integers<F>(lo: u64, hi: u64, point: F) -> Result<Tally>
where
    F: Fn(&Factorization) -> Result<Point> + Sync,
{
    let mut tally = Tally::default();
    if hi < lo || hi == 0 {
        return Ok(tally);
    }
    let facts = factorizations_upto(hi)?;
    let lo = lo.max(1);
    let points = facts[(lo - 1) as usize..].par_iter().map(&point).collect::<Result<Vec<_>>>()?;
    for (n, p) in (lo..=hi).zip(points) {
        tally.absorb(Witness::N { n }, p);
    }
    Ok(tally)
}

fn requires(id: IdentityId, f: &ArithFn, ok: bool, what: &str, range: CheckedRange) -> Option<IdentityReport> {
    (!ok).then(|| {
        IdentityReport::inapplicable(
            id,
            f.name().to_string(),
            range,
            format!("{} is {}, needs {what}", f.name(), f.class()),
        )
    })
}

fn integers(n_max: u64) -> CheckedRange {
    CheckedRange::Integers { lo: 1, hi: n_max }
}

/// `f(p^a) - f(p^(a-1))` with `f(p^0) = f(1)`.
fn step(f: &ArithFn, p: u64, a: u32) -> Result<Value> {
    Ok(f.at_prime_power(p, a)? - f.at_prime_power(p, a - 1)?)
}

/// `p^a - p^(a-1)`.
fn totient_of_power(p: u64, a: u32) -> Value {
    let p = Value::from(p);
    p.pow(a) - p.pow(a - 1)
}

/// Leibniz recursion against the closed form on `[1, N]`.
pub fn check_closed_form(f: &ArithFn, n_max: u64) -> Result<IdentityReport> {
    let tally = scan_integers(1, n_max, |n| Ok(Point::equal(phi_transform_leibniz(f, n)?, phi_transform(f, n)?)))?;
    Ok(tally.into_report(IdentityId::ClosedForm, f.name().into(), integers(n_max), false))
}

/// Sum of partial derivatives against the closed form on `[1, N]`.
pub fn check_derivative_sum(f: &ArithFn, n_max: u64) -> Result<IdentityReport> {
    let tally =
        scan_integers(1, n_max, |n| Ok(Point::equal(transform_as_derivative_sum(f, n)?, phi_transform(f, n)?)))?;
    Ok(tally.into_report(IdentityId::DerivativeSum, f.name().into(), integers(n_max), false))
}

/// Both sides of the AM-GM lower bound raised to the power `ω(n)`:
/// `(Φ_f(n)^ω, (n·ω)^ω · f(n)/n)`. `None` when `n = 1` or some `f(p^a) <= 0`.
pub fn amgm_power_sides(f: &ArithFn, n: &Factorization) -> Result<Option<(Value, Value)>> {
    if n.is_one() {
        return Ok(None);
    }
    for pp in n.factors() {
        if !f.at_prime_power(pp.p(), pp.alpha())?.is_positive() {
            return Ok(None);
        }
    }
    let s = n.omega() as u32;
    let n_val = Value::from_biguint(n.n());
    let lhs = phi_transform(f, n)?.pow(s);
    let rhs = (&n_val * Value::from(s)).pow(s) * f.eval(n)? / n_val;
    Ok(Some((lhs, rhs)))
}

/// `Φ_f(n) >= n·ω(n)·(f(n)/n)^(1/ω(n))` for multiplicative `f`, compared as
/// `ω(n)`-th powers on `[2, N]`. Points with a non-positive prime-power value
/// are skipped.
pub fn check_amgm_bound(f: &ArithFn, n_max: u64) -> Result<IdentityReport> {
    let id = IdentityId::AmgmBound;
    let range = CheckedRange::Integers { lo: 2, hi: n_max };
    if let Some(r) = requires(id, f, f.class().is_multiplicative(), "a multiplicative function", range.clone()) {
        return Ok(r);
    }
    let tally = scan_integers(2, n_max, |n| {
        Ok(match amgm_power_sides(f, n)? {
            None => Point::Skip,
            Some((lhs, rhs)) if lhs >= rhs => Point::Holds { tight: lhs == rhs },
            Some((lhs, rhs)) => Point::Fails(lhs, rhs),
        })
    })?;
    Ok(tally.into_report(id, f.name().into(), range, true))
}

/// `2·Φ_f(n) <= n·f(n)` for additive `f` with nonnegative prime-power values.
pub fn check_upper_bound(f: &ArithFn, n_max: u64) -> Result<IdentityReport> {
    let id = IdentityId::UpperBound;
    if let Some(r) = requires(id, f, f.class().is_additive(), "an additive function", integers(n_max)) {
        return Ok(r);
    }
    let tally = scan_integers(1, n_max, |n| {
        for pp in n.factors() {
            if f.at_prime_power(pp.p(), pp.alpha())?.is_negative() {
                return Ok(Point::Skip);
            }
        }
        let lhs = Value::from(2) * phi_transform(f, n)?;
        let rhs = Value::from_biguint(n.n()) * f.eval(n)?;
        Ok(if lhs <= rhs { Point::Holds { tight: lhs == rhs } } else { Point::Fails(lhs, rhs) })
    })?;
    Ok(tally.into_report(id, f.name().into(), integers(n_max), true))
}

/// `Φ_f = Φ_g` where `g` is the additive companion of `f`.
pub fn check_companion_equivalence(f: &ArithFn, n_max: u64) -> Result<IdentityReport> {
    let g = additive_companion(f);
    let tally = scan_integers(1, n_max, |n| Ok(Point::equal(phi_transform(f, n)?, phi_transform_leibniz(&g, n)?)))?;
    Ok(tally.into_report(IdentityId::CompanionEquivalence, f.name().into(), integers(n_max), false))
}

/// `(Φ_f = Φ_g on prime powers <= N) ⟺ (f = g on [1, N])` for multiplicative
/// `f`, `g`. A counterexample is the first point of the side that differs
/// while the other side agrees everywhere.
pub fn check_injectivity(f: &ArithFn, g: &ArithFn, n_max: u64) -> Result<IdentityReport> {
    let id = IdentityId::Injectivity;
    let label = format!("{},{}", f.name(), g.name());
    let range = integers(n_max);
    for h in [f, g] {
        if !h.class().is_multiplicative() {
            return Ok(IdentityReport::inapplicable(
                id,
                label,
                range,
                format!("{} is {}, needs a multiplicative function", h.name(), h.class()),
            ));
        }
    }
    let facts = if n_max == 0 { Vec::new() } else { factorizations_upto(n_max)? };
    let (tf, tg) = (TransformedFn::new(f.clone()), TransformedFn::new(g.clone()));
    let mut transform_diff = None;
    let mut value_diff = None;
    let mut prime_powers = 0;
    for (n, fact) in (1u64..).zip(&facts) {
        if fact.is_prime_power() && transform_diff.is_none() {
            prime_powers += 1;
            let (a, b) = (tf.eval(fact)?, tg.eval(fact)?);
            if a != b {
                transform_diff = Some((n, a, b));
            }
        }
        if value_diff.is_none() {
            let (a, b) = (f.eval(fact)?, g.eval(fact)?);
            if a != b {
                value_diff = Some((n, a, b));
            }
        }
        if transform_diff.is_some() && value_diff.is_some() {
            break;
        }
    }
    let mut report = IdentityReport {
        id,
        function: label,
        range,
        outcome: Outcome::Pass,
        checked: facts.len() as u64,
        skipped: 0,
        equalities: None,
        note: None,
    };
    report.outcome = match (&transform_diff, &value_diff) {
        (Some(_), None) | (None, Some(_)) => {
            let (n, lhs, rhs) = transform_diff.clone().or(value_diff.clone()).expect("one side differs");
            Outcome::Counterexample(Counterexample { at: Witness::N { n }, lhs, rhs })
        }
        _ => Outcome::Pass,
    };
    report.note = Some(match (transform_diff, value_diff) {
        (Some((a, ..)), Some((b, ..))) => format!("both sides false: Φ differ at {a}, values differ at {b}"),
        (None, None) => format!("both sides true over {prime_powers} prime powers"),
        (Some((a, ..)), None) => format!("Φ differ at {a} but values agree"),
        (None, Some((b, ..))) => format!("values differ at {b} but Φ agree"),
    });
    Ok(report)
}

fn multiplicative_f_report(id: IdentityId, f: &ArithFn, g: &ArithFn, range: CheckedRange) -> Option<IdentityReport> {
    (!f.class().is_multiplicative()).then(|| {
        IdentityReport::inapplicable(
            id,
            format!("{},{}", f.name(), g.name()),
            range,
            format!("{} is {}, needs a multiplicative function", f.name(), f.class()),
        )
    })
}

/// `(f*Φ_g)(mn) = (Id*f)(n)·(f*Φ_g)(m) + (Id*f)(m)·(f*Φ_g)(n)` over coprime
/// pairs with `m·n <= N`, every convolution by divisor sums.
pub fn check_convolution_leibniz(f: &ArithFn, g: &ArithFn, n_max: u64) -> Result<IdentityReport> {
    let id = IdentityId::ConvolutionLeibniz;
    let range = CheckedRange::CoprimePairs { max_product: n_max };
    if let Some(r) = multiplicative_f_report(id, f, g, range.clone()) {
        return Ok(r);
    }
    let mut tally = Tally::default();
    if n_max > 0 {
        let facts = factorizations_upto(n_max)?;
        let (ident, phi_g) = (id_fn(), TransformedFn::new(g.clone()));
        let sides = facts
            .par_iter()
            .map(|k| Ok((convolve_at(&ident, f, k)?, convolve_at(f, &phi_g, k)?)))
            .collect::<Result<Vec<(Value, Value)>>>()?;
        let at = |k: u64| &sides[(k - 1) as usize];
        for m in 1..=n_max {
            for n in 1..=n_max / m {
                if !facts[(m - 1) as usize].is_coprime_to(&facts[(n - 1) as usize]) {
                    continue;
                }
                let lhs = at(m * n).1.clone();
                let rhs = &at(n).0 * &at(m).1 + &at(m).0 * &at(n).1;
                tally.absorb(Witness::Pair { m, n }, Point::equal(lhs, rhs));
            }
        }
    }
    Ok(tally.into_report(id, format!("{},{}", f.name(), g.name()), range, false))
}

fn id_fn() -> ArithFn {
    id()
}

/// `(f*Φ_g)(n) = (Id*f)(n)·Σ_{p^a||n} (f*Φ_g)(p^a)/(Id*f)(p^a)`; points where
/// some `(Id*f)(p^a)` vanishes are skipped.
pub fn check_convolution_decomposition(f: &ArithFn, g: &ArithFn, n_max: u64) -> Result<IdentityReport> {
    let id = IdentityId::ConvolutionDecomposition;
    if let Some(r) = multiplicative_f_report(id, f, g, integers(n_max)) {
        return Ok(r);
    }
    let (ident, phi_g) = (id_fn(), TransformedFn::new(g.clone()));
    let tally = scan_integers(1, n_max, |n| {
        let mut sum = Value::zero();
        for pp in n.factors() {
            let den = convolve_prime_power(&ident, f, pp.p(), pp.alpha())?;
            if den.is_zero() {
                return Ok(Point::Skip);
            }
            sum += convolve_prime_power(f, &phi_g, pp.p(), pp.alpha())? / den;
        }
        let lhs = convolve_at(f, &phi_g, n)?;
        let rhs = convolve_at(&ident, f, n)? * sum;
        Ok(Point::equal(lhs, rhs))
    })?;
    Ok(tally.into_report(id, format!("{},{}", f.name(), g.name()), integers(n_max), false))
}

/// `(μ*Φ_f)(p^a)` by divisor sum against `f(p^a) − f(p^(a−1))` (`a > 1`) or
/// `f(p)` (`a = 1`), for primes `p <= p_max` and `1 <= a <= alpha_max`.
pub fn check_mobius_prime_power(f: &ArithFn, p_max: u64, alpha_max: u32) -> Result<IdentityReport> {
    let (mu, phi_f) = (mobius(), TransformedFn::new(f.clone()));
    let primes: Vec<u64> = (2..=p_max).filter(|&p| is_prime_u64(p)).collect();
    let cells: Vec<(u64, u32)> = primes.iter().flat_map(|&p| (1..=alpha_max).map(move |a| (p, a))).collect();
    let points = cells
        .par_iter()
        .map(|&(p, a)| {
            let lhs = convolve_at(&mu, &phi_f, &Factorization::prime_power_unchecked(p, a))?;
            let rhs = if a > 1 { step(f, p, a)? } else { f.at_prime_power(p, 1)? };
            Ok(Point::equal(lhs, rhs))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut tally = Tally::default();
    for (&(p, alpha), point) in cells.iter().zip(points) {
        tally.absorb(Witness::PrimePower { p, alpha }, point);
    }
    let range = CheckedRange::PrimePowers { p_max, alpha_max };
    Ok(tally.into_report(IdentityId::MobiusPrimePower, f.name().into(), range, false))
}

/// `(μ*Φ_f)(n) = φ(n)·Σ (f(p^a) − f(p^(a−1)))/(p^a − p^(a−1))` for additive `f`.
pub fn check_mobius_transform(f: &ArithFn, n_max: u64) -> Result<IdentityReport> {
    let id = IdentityId::MobiusTransform;
    if let Some(r) = requires(id, f, f.class().is_additive(), "an additive function", integers(n_max)) {
        return Ok(r);
    }
    let (mu, phi_f, phi) = (mobius(), TransformedFn::new(f.clone()), totient());
    let tally = scan_integers(1, n_max, |n| {
        let mut sum = Value::zero();
        for pp in n.factors() {
            sum += step(f, pp.p(), pp.alpha())? / totient_of_power(pp.p(), pp.alpha());
        }
        Ok(Point::equal(convolve_at(&mu, &phi_f, n)?, phi.eval(n)? * sum))
    })?;
    Ok(tally.into_report(id, f.name().into(), integers(n_max), false))
}

/// The completely-additive Möbius remark, checked both without and with the
/// `φ(n)` factor against the divisor-sum value of `(μ*Φ_f)(n)`.
pub fn check_remark_completely_additive(f: &ArithFn, n_max: u64) -> Result<RemarkReport> {
    let range = integers(n_max);
    if !f.class().is_completely_additive() {
        let why = format!("{} is {}, needs a completely additive function", f.name(), f.class());
        return Ok(RemarkReport {
            printed: IdentityReport::inapplicable(
                IdentityId::RemarkPrinted,
                f.name().into(),
                range.clone(),
                why.clone(),
            ),
            scaled: IdentityReport::inapplicable(IdentityId::RemarkScaled, f.name().into(), range, why),
        });
    }
    let (mu, phi_f, phi) = (mobius(), TransformedFn::new(f.clone()), totient());
    let mut printed = Tally::default();
    let mut scaled = Tally::default();
    if n_max > 0 {
        let facts = factorizations_upto(n_max)?;
        let rows = facts
            .par_iter()
            .map(|n| {
                let mut sum = Value::zero();
                for pp in n.factors() {
                    sum += f.at_prime_power(pp.p(), 1)? / totient_of_power(pp.p(), pp.alpha());
                }
                let oracle = convolve_at(&mu, &phi_f, n)?;
                let scaled_rhs = phi.eval(n)? * &sum;
                Ok((oracle, sum, scaled_rhs))
            })
            .collect::<Result<Vec<_>>>()?;
        for (n, (oracle, printed_rhs, scaled_rhs)) in (1u64..).zip(rows) {
            printed.absorb(Witness::N { n }, Point::equal(oracle.clone(), printed_rhs));
            scaled.absorb(Witness::N { n }, Point::equal(oracle, scaled_rhs));
        }
    }
    Ok(RemarkReport {
        printed: printed.into_report(IdentityId::RemarkPrinted, f.name().into(), range.clone(), false),
        scaled: scaled.into_report(IdentityId::RemarkScaled, f.name().into(), range, false),
    })
}

/// `Φ_{Id·f}(n) = n·f(n)` for additive `f`.
pub fn check_id_product_transform(f: &ArithFn, n_max: u64) -> Result<IdentityReport> {
    let id = IdentityId::IdProductTransform;
    if let Some(r) = requires(id, f, f.class().is_additive(), "an additive function", integers(n_max)) {
        return Ok(r);
    }
    let id_f = pointwise_product(&id_fn(), f);
    let tally = scan_integers(1, n_max, |n| {
        Ok(Point::equal(phi_transform(&id_f, n)?, Value::from_biguint(n.n()) * f.eval(n)?))
    })?;
    Ok(tally.into_report(id, f.name().into(), integers(n_max), false))
}

/// `(μ*(f·Id))(n)` by divisor sum against the factorization formula with
/// `prime_term(p, a)` summed over `p^a || n`.
fn check_mu_times_id_product<T>(id: IdentityId, f: &ArithFn, n_max: u64, prime_term: T) -> Result<IdentityReport>
where
    T: Fn(u64, u32) -> Result<Value> + Sync,
{
    let (mu, f_id, phi) = (mobius(), pointwise_product(f, &id_fn()), totient());
    let tally = scan_integers(1, n_max, |n| {
        let lhs = convolve_at(&mu, &f_id, n)?;
        let phi_n = phi.eval(n)?;
        let mut sum = Value::zero();
        for pp in n.factors() {
            sum += prime_term(pp.p(), pp.alpha())? / Value::from(pp.p() - 1);
        }
        let rhs = &phi_n * f.eval(n)? + phi_n * sum;
        Ok(Point::equal(lhs, rhs))
    })?;
    Ok(tally.into_report(id, f.name().into(), integers(n_max), false))
}

/// `(μ*(f·Id))(n) = φ(n)f(n) + φ(n)·Σ (f(p^a) − f(p^(a−1)))/(p − 1)` for additive `f`.
pub fn check_main_theorem(f: &ArithFn, n_max: u64) -> Result<IdentityReport> {
    let id = IdentityId::MainTheorem;
    if let Some(r) = requires(id, f, f.class().is_additive(), "an additive function", integers(n_max)) {
        return Ok(r);
    }
    check_mu_times_id_product(id, f, n_max, |p, a| step(f, p, a))
}

/// `(μ*(f·Id))(n) = φ(n)f(n) + φ(n)·Σ f(p)/(p − 1)` for completely additive `f`.
pub fn check_completely_additive_corollary(f: &ArithFn, n_max: u64) -> Result<IdentityReport> {
    let id = IdentityId::CompletelyAdditiveCorollary;
    let ok = f.class().is_completely_additive();
    if let Some(r) = requires(id, f, ok, "a completely additive function", integers(n_max)) {
        return Ok(r);
    }
    check_mu_times_id_product(id, f, n_max, |p, _| f.at_prime_power(p, 1))
}

/// Runs every selected identity for every applicable choice of functions.
///
/// Single-function identities run once per entry of `functions`.
/// Two-function identities run over ordered pairs `(f, g)` with `f` from
/// `functions` and `g` from `second` (or `functions` when `second` is
/// `None`). Order follows `selection`, then `f`, then `g`.
pub fn run_suite(
    selection: &[IdentityId],
    functions: &[ArithFn],
    second: Option<&[ArithFn]>,
    n_max: u64,
) -> Result<SuiteReport> {
    let seconds = second.unwrap_or(functions);
    let mut reports = Vec::new();
    for &id in selection {
        for f in functions {
            if id.takes_second_function() {
                for g in seconds {
                    reports.push(match id {
                        IdentityId::Injectivity => check_injectivity(f, g, n_max)?,
                        IdentityId::ConvolutionLeibniz => check_convolution_leibniz(f, g, n_max)?,
                        _ => check_convolution_decomposition(f, g, n_max)?,
                    });
                }
                continue;
            }
            let report = match id {
                IdentityId::ClosedForm => check_closed_form(f, n_max)?,
                IdentityId::DerivativeSum => check_derivative_sum(f, n_max)?,
                IdentityId::AmgmBound => check_amgm_bound(f, n_max)?,
                IdentityId::UpperBound => check_upper_bound(f, n_max)?,
                IdentityId::CompanionEquivalence => check_companion_equivalence(f, n_max)?,
                IdentityId::MobiusPrimePower => check_mobius_prime_power(f, n_max.min(SUITE_P_MAX), SUITE_ALPHA_MAX)?,
                IdentityId::MobiusTransform => check_mobius_transform(f, n_max)?,
                IdentityId::RemarkPrinted => check_remark_completely_additive(f, n_max)?.printed,
                IdentityId::RemarkScaled => check_remark_completely_additive(f, n_max)?.scaled,
                IdentityId::IdProductTransform => check_id_product_transform(f, n_max)?,
                IdentityId::MainTheorem => check_main_theorem(f, n_max)?,
                IdentityId::CompletelyAdditiveCorollary => check_completely_additive_corollary(f, n_max)?,
                IdentityId::Injectivity | IdentityId::ConvolutionLeibniz | IdentityId::ConvolutionDecomposition => {
                    unreachable!("handled above")
                }
            };
            reports.push(report);
        }
    }
    Ok(SuiteReport { reports })
}

/// Whether `class` satisfies the class precondition of `id` for its first function.
pub fn applicable(id: IdentityId, class: FnClass) -> bool {
    match id {
        IdentityId::AmgmBound | IdentityId::Injectivity => class.is_multiplicative(),
        IdentityId::ConvolutionLeibniz | IdentityId::ConvolutionDecomposition => class.is_multiplicative(),
        IdentityId::UpperBound
        | IdentityId::MobiusTransform
        | IdentityId::IdProductTransform
        | IdentityId::MainTheorem => class.is_additive(),
        IdentityId::RemarkPrinted | IdentityId::RemarkScaled | IdentityId::CompletelyAdditiveCorollary => {
            class.is_completely_additive()
        }
        IdentityId::ClosedForm
        | IdentityId::DerivativeSum
        | IdentityId::CompanionEquivalence
        | IdentityId::MobiusPrimePower => true,
    }
}
