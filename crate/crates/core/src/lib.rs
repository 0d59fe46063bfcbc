//! Exact computation of the additive transform `Φ_f` of arithmetic
//! functions, the arithmetic partial derivative, and Dirichlet convolution,
//! together with a checker that verifies identities relating them against
//! independent divisor-sum and recursion oracles.
//!
//! All values are exact rationals ([`Value`]); no check uses a tolerance.

pub mod cli;
pub mod dirichlet;
pub mod error;
pub mod factor;
pub mod function;
pub mod identities;
pub mod registry;
pub mod table_io;
pub mod transform;
pub mod value;

pub use dirichlet::{convolve_at, convolve_prime_power, convolve_table, mobius_invert, ValueTable};
pub use error::{Error, Result};
pub use factor::{build_spf, divisors, factorize, factorize_batch, factorize_u64, Factorization, PrimePower, SpfTable};
pub use function::{
    additive_companion, catalog, is_l_additive_witness, pointwise_product, ArithFn, Evaluable, FnClass,
};
pub use identities::{run_suite, IdentityId, IdentityReport, SuiteReport, Verdict};
pub use registry::resolve;
pub use transform::{
    complete_extension, partial_derivative, phi_transform, phi_transform_leibniz, transform_as_derivative_sum,
    TransformMode, TransformedFn,
};
pub use value::Value;
