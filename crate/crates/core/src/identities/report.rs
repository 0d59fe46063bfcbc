use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::Error;
use crate::value::Value;

/// Stable identifiers of the checkable identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    ClosedForm,
    DerivativeSum,
    AmgmBound,
    UpperBound,
    CompanionEquivalence,
    Injectivity,
    ConvolutionLeibniz,
    ConvolutionDecomposition,
    MobiusPrimePower,
    MobiusTransform,
    RemarkPrinted,
    RemarkScaled,
    IdProductTransform,
    MainTheorem,
    CompletelyAdditiveCorollary,
}

impl IdentityId {
    pub const ALL: [IdentityId; 15] = [
        IdentityId::ClosedForm,
        IdentityId::DerivativeSum,
        IdentityId::AmgmBound,
        IdentityId::UpperBound,
        IdentityId::CompanionEquivalence,
        IdentityId::Injectivity,
        IdentityId::ConvolutionLeibniz,
        IdentityId::ConvolutionDecomposition,
        IdentityId::MobiusPrimePower,
        IdentityId::MobiusTransform,
        IdentityId::RemarkPrinted,
        IdentityId::RemarkScaled,
        IdentityId::IdProductTransform,
        IdentityId::MainTheorem,
        IdentityId::CompletelyAdditiveCorollary,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            IdentityId::ClosedForm => "closed_form",
            IdentityId::DerivativeSum => "derivative_sum",
            IdentityId::AmgmBound => "amgm_bound",
            IdentityId::UpperBound => "upper_bound",
            IdentityId::CompanionEquivalence => "companion_equivalence",
            IdentityId::Injectivity => "injectivity",
            IdentityId::ConvolutionLeibniz => "convolution_leibniz",
            IdentityId::ConvolutionDecomposition => "convolution_decomposition",
            IdentityId::MobiusPrimePower => "mobius_prime_power",
            IdentityId::MobiusTransform => "mobius_transform",
            IdentityId::RemarkPrinted => "remark_eq17_printed",
            IdentityId::RemarkScaled => "remark_eq17_scaled",
            IdentityId::IdProductTransform => "id_product_transform",
            IdentityId::MainTheorem => "main_theorem",
            IdentityId::CompletelyAdditiveCorollary => "completely_additive_corollary",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            IdentityId::ClosedForm => "Φ_f(n) by Leibniz recursion = n·Σ f(p^a)/p^a",
            IdentityId::DerivativeSum => "Σ_p ∂f/∂p(n) = Φ_f(n)",
            IdentityId::AmgmBound => "Φ_f(n)^ω(n) ≥ (n·ω(n))^ω(n)·f(n)/n for positive multiplicative f",
            IdentityId::UpperBound => "2·Φ_f(n) ≤ n·f(n) for nonnegative additive f",
            IdentityId::CompanionEquivalence => "Φ_f = Φ_g where g(n) = Σ_{p^a||n} f(p^a)",
            IdentityId::Injectivity => "f = g on [1,N] ⟺ Φ_f = Φ_g on prime powers ≤ N, f and g multiplicative",
            IdentityId::ConvolutionLeibniz => {
                "(f*Φ_g)(mn) = (Id*f)(n)·(f*Φ_g)(m) + (Id*f)(m)·(f*Φ_g)(n), gcd(m,n) = 1, f multiplicative"
            }
            IdentityId::ConvolutionDecomposition => {
                "(f*Φ_g)(n) = (Id*f)(n)·Σ (f*Φ_g)(p^a)/(Id*f)(p^a), f multiplicative"
            }
            IdentityId::MobiusPrimePower => "(μ*Φ_f)(p^a) = f(p^a) − f(p^(a−1)) for a > 1, f(p) for a = 1",
            IdentityId::MobiusTransform => "(μ*Φ_f)(n) = φ(n)·Σ (f(p^a) − f(p^(a−1)))/(p^a − p^(a−1)), f additive",
            IdentityId::RemarkPrinted => {
                "(μ*Φ_f)(n) = Σ f(p)/(p^a − p^(a−1)) without a φ(n) factor, f completely additive"
            }
            IdentityId::RemarkScaled => "(μ*Φ_f)(n) = φ(n)·Σ f(p)/(p^a − p^(a−1)), f completely additive",
            IdentityId::IdProductTransform => "Φ_{Id·f}(n) = n·f(n), f additive",
            IdentityId::MainTheorem => "(μ*(f·Id))(n) = φ(n)f(n) + φ(n)·Σ (f(p^a) − f(p^(a−1)))/(p − 1), f additive",
            IdentityId::CompletelyAdditiveCorollary => {
                "(μ*(f·Id))(n) = φ(n)f(n) + φ(n)·Σ f(p)/(p − 1), f completely additive"
            }
        }
    }

    /// Identities that take a second function `g`.
    pub fn takes_second_function(self) -> bool {
        matches!(self, IdentityId::Injectivity | IdentityId::ConvolutionLeibniz | IdentityId::ConvolutionDecomposition)
    }

    /// False only for the uncorrected printed form, whose failure is an
    /// erratum candidate rather than a failed check.
    pub fn asserted(self) -> bool {
        self != IdentityId::RemarkPrinted
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        IdentityId::ALL.into_iter().find(|id| id.as_str() == s).ok_or_else(|| Error::UnknownIdentity(s.to_string()))
    }
}

impl Serialize for IdentityId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

/// What a check ranged over.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CheckedRange {
    Integers { lo: u64, hi: u64 },
    CoprimePairs { max_product: u64 },
    PrimePowers { p_max: u64, alpha_max: u32 },
}

impl fmt::Display for CheckedRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckedRange::Integers { lo, hi } => write!(f, "n∈[{lo},{hi}]"),
            CheckedRange::CoprimePairs { max_product } => write!(f, "coprime mn≤{max_product}"),
            CheckedRange::PrimePowers { p_max, alpha_max } => write!(f, "p≤{p_max}, a≤{alpha_max}"),
        }
    }
}

/// Where a check failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Witness {
    N { n: u64 },
    Pair { m: u64, n: u64 },
    PrimePower { p: u64, alpha: u32 },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::N { n } => write!(f, "n={n}"),
            Witness::Pair { m, n } => write!(f, "(m,n)=({m},{n})"),
            Witness::PrimePower { p, alpha } => write!(f, "p^a={p}^{alpha}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub at: Witness,
    pub lhs: Value,
    pub rhs: Value,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Counterexample(Counterexample),
    Inapplicable(String),
}

/// How a report counts toward a suite's exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    ErratumCandidate,
    Inapplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::ErratumCandidate => "erratum-candidate",
            Verdict::Inapplicable => "inapplicable",
        })
    }
}

/// Outcome of checking one identity for one choice of functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub id: IdentityId,
    pub function: String,
    pub range: CheckedRange,
    pub outcome: Outcome,
    /// Points where both sides were evaluated.
    pub checked: u64,
    /// Points excluded by a per-point precondition.
    pub skipped: u64,
    /// For inequalities, the points where equality holds.
    pub equalities: Option<u64>,
    pub note: Option<String>,
}

impl IdentityReport {
    pub(crate) fn inapplicable(id: IdentityId, function: String, range: CheckedRange, why: String) -> Self {
        IdentityReport {
            id,
            function,
            range,
            outcome: Outcome::Inapplicable(why),
            checked: 0,
            skipped: 0,
            equalities: None,
            note: None,
        }
    }

    pub fn verdict(&self) -> Verdict {
        match &self.outcome {
            Outcome::Pass => Verdict::Pass,
            Outcome::Inapplicable(_) => Verdict::Inapplicable,
            Outcome::Counterexample(_) if self.id.asserted() => Verdict::Fail,
            Outcome::Counterexample(_) => Verdict::ErratumCandidate,
        }
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        match &self.outcome {
            Outcome::Counterexample(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_pass(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    /// One-line human summary of the outcome.
    pub fn detail(&self) -> String {
        let mut s = match &self.outcome {
            Outcome::Pass => format!("{} checked", self.checked),
            Outcome::Counterexample(c) => format!("{}: lhs {} ≠ rhs {}", c.at, c.lhs, c.rhs),
            Outcome::Inapplicable(why) => why.clone(),
        };
        if self.skipped > 0 {
            s.push_str(&format!(", {} skipped", self.skipped));
        }
        if let Some(eq) = self.equalities {
            s.push_str(&format!(", {eq} with equality"));
        }
        if let Some(note) = &self.note {
            s.push_str(&format!("; {note}"));
        }
        s
    }
}

#[derive(Serialize)]
struct ReportJson<'a> {
    id: IdentityId,
    function: &'a str,
    range: &'a CheckedRange,
    status: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    counterexample: Option<&'a Counterexample>,
    checked: u64,
    skipped: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    equalities: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<&'a str>,
}

impl Serialize for IdentityReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let reason = match &self.outcome {
            Outcome::Inapplicable(why) => Some(why.as_str()),
            _ => None,
        };
        ReportJson {
            id: self.id,
            function: &self.function,
            range: &self.range,
            status: self.verdict(),
            counterexample: self.counterexample(),
            checked: self.checked,
            skipped: self.skipped,
            equalities: self.equalities,
            reason,
            note: self.note.as_deref(),
        }
        .serialize(serializer)
    }
}

/// Both readings of the completely-additive Möbius remark over one range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RemarkReport {
    pub printed: IdentityReport,
    pub scaled: IdentityReport,
}

impl RemarkReport {
    /// Ids of the forms that held on the whole range.
    pub fn matching(&self) -> Vec<IdentityId> {
        [&self.printed, &self.scaled].into_iter().filter(|r| r.is_pass()).map(|r| r.id).collect()
    }
}

/// Reports of a suite run in deterministic order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct SuiteReport {
    pub reports: Vec<IdentityReport>,
}

impl SuiteReport {
    pub fn count(&self, verdict: Verdict) -> usize {
        self.reports.iter().filter(|r| r.verdict() == verdict).count()
    }

    /// True when some identity that is asserted to hold has a counterexample.
    pub fn has_failures(&self) -> bool {
        self.count(Verdict::Fail) > 0
    }

    pub fn is_empty(&self) -> bool {
        self.reports.is_empty()
    }
}
