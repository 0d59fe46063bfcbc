//! Resolution of function specs such as `phi_of:big_omega` or
//! `idmul:companion:mu`.

use crate::error::{Error, Result};
use crate::function::{additive_companion, id, lookup, pointwise_product, ArithFn};
use crate::transform::{complete_extension, phi_of};

/// Constructor prefixes, applied right to left.
pub const PREFIXES: [&str; 4] = ["phi_of:", "idmul:", "companion:", "complete:"];

/// Resolves a catalog name, optionally wrapped in constructor prefixes. The
/// resolved function is named by the spec string itself.
pub fn resolve(spec: &str) -> Result<ArithFn> {
    let spec = spec.trim();
    let inner = |rest: &str| resolve(rest);
    let f = if let Some(rest) = spec.strip_prefix("phi_of:") {
        phi_of(&inner(rest)?)
    } else if let Some(rest) = spec.strip_prefix("idmul:") {
        pointwise_product(&id(), &inner(rest)?)
    } else if let Some(rest) = spec.strip_prefix("companion:") {
        additive_companion(&inner(rest)?)
    } else if let Some(rest) = spec.strip_prefix("complete:") {
        complete_extension(&inner(rest)?)
    } else {
        return lookup(spec).ok_or_else(|| Error::UnknownFunction(spec.to_string()));
    };
    Ok(f.renamed(spec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::FnClass;
    use crate::value::Value;

    #[test]
    fn nested_specs() {
        let f = resolve("phi_of:big_omega").unwrap();
        assert_eq!(f.name(), "phi_of:big_omega");
        assert_eq!(f.eval_u64(12).unwrap(), Value::from(10));
        let g = resolve("phi_of:idmul:omega").unwrap();
        assert_eq!(g.eval_u64(12).unwrap(), Value::from(24));
        assert_eq!(resolve("companion:mu").unwrap().class(), FnClass::Additive);
        assert_eq!(resolve("complete:id").unwrap().eval_u64(8).unwrap(), Value::from(24));
        assert_eq!(resolve("idmul:id").unwrap().class(), FnClass::CompletelyMultiplicative);
    }

    #[test]
    fn unknown_names() {
        assert_eq!(resolve("phi_of:nope").unwrap_err(), Error::UnknownFunction("nope".into()));
        assert!(resolve("").is_err());
        assert!(resolve("sigma_x").is_err());
    }
}
