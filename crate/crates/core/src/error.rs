use thiserror::Error;

/// Errors raised by bound evaluators and oracles.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain where the quantity is defined.
    #[error("{name} = {value} is outside the domain {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("unknown function `{0}`")]
    UnknownFunction(String),

    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),

    /// Exhaustive enumeration would exceed the configured work budget.
    #[error("enumeration needs {required} (encoder, output) evaluations, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(name: &'static str, value: f64, domain: &'static str) -> Error {
    Error::Domain {
        name,
        value,
        domain,
    }
}

/// Fails unless `lo <= value <= hi` (NaN always fails).
pub(crate) fn check_closed(
    name: &'static str,
    value: f64,
    lo: f64,
    hi: f64,
    dom: &'static str,
) -> Result<()> {
    if value >= lo && value <= hi {
        Ok(())
    } else {
        Err(domain(name, value, dom))
    }
}

/// Fails unless `lo < value < hi`.
pub(crate) fn check_open(
    name: &'static str,
    value: f64,
    lo: f64,
    hi: f64,
    dom: &'static str,
) -> Result<()> {
    if value > lo && value < hi {
        Ok(())
    } else {
        Err(domain(name, value, dom))
    }
}
