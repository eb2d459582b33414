use thiserror::Error;

use crate::expr::EvalError;

/// Errors raised while building or evaluating quantum-calculus operators.
///
/// The `Display` form of every variant starts with its bare name so that
/// front ends can report the error class verbatim.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CalcError {
    /// Every sampled pair is equivalent under the tension function.
    #[error("DegenerateSample")]
    DegenerateSample,

    /// A law the caller certified does not actually hold.
    #[error("ContractViolation: {0}")]
    ContractViolation(String),

    #[error("NotHomogeneous: {0}")]
    NotHomogeneous(String),

    #[error("NotDirected")]
    NotDirected,

    /// The partition step `eta(tau sigma^-1 (s), s)` vanishes.
    #[error("ZeroStep")]
    ZeroStep,

    /// `theta(tau(p), sigma(p))` is zero at an evaluated point.
    #[error("ZeroDenominator")]
    ZeroDenominator,

    #[error("NotRightInverse: {0}")]
    NotRightInverse(String),

    /// Integration limits do not lie on a common lattice/orbit.
    #[error("NotCommensurate")]
    NotCommensurate,

    /// A series antiderivative failed the decay criterion.
    #[error("Divergent")]
    Divergent,

    /// Evaluation point outside the operator's domain.
    #[error("DomainError")]
    DomainError,

    #[error("InvalidConfig: {0}")]
    InvalidConfig(String),

    /// Evaluating a user expression failed.
    #[error("{0}")]
    Eval(#[from] EvalError),
}

impl CalcError {
    /// Bare error-class name, e.g. `"Divergent"`.
    pub fn name(&self) -> &'static str {
        match self {
            CalcError::DegenerateSample => "DegenerateSample",
            CalcError::ContractViolation(_) => "ContractViolation",
            CalcError::NotHomogeneous(_) => "NotHomogeneous",
            CalcError::NotDirected => "NotDirected",
            CalcError::ZeroStep => "ZeroStep",
            CalcError::ZeroDenominator => "ZeroDenominator",
            CalcError::NotRightInverse(_) => "NotRightInverse",
            CalcError::NotCommensurate => "NotCommensurate",
            CalcError::Divergent => "Divergent",
            CalcError::DomainError => "DomainError",
            CalcError::InvalidConfig(_) => "InvalidConfig",
            CalcError::Eval(e) => e.name(),
        }
    }
}

pub type Result<T, E = CalcError> = std::result::Result<T, E>;
