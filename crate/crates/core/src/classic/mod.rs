//! Closed-form h-calculus and q-calculus.
//!
//! The operators here are written directly from their branch tables rather
//! than through the generic machinery of [`crate::calculus`]; the `bridge`
//! functions build the matching generic contexts so the two routes can be
//! compared.

mod bridge;
mod h;
mod q;

pub use bridge::{bridge_h, bridge_q, h_partition, h_samples, q_initial_partition, q_partition, q_samples};
pub use h::{
    h_definite_integral, h_definite_integral_algebraic, h_definite_integral_direct,
    h_derivative, h_differential, h_initial_operator, h_right_inverse,
};
pub use q::{
    jackson_integral, q_definite_integral, q_derivative, q_differential, q_initial_operator,
    q_multiplier, q_p_inverse, q_rho_inverse, JACKSON_DECAY_RUN,
};

use crate::error::{CalcError, Result};

/// Step `h ≠ 0` and base point `s` of the h-calculus partition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HConfig {
    h: f64,
    s: f64,
}

impl HConfig {
    pub fn new(h: f64, s: f64) -> Result<Self> {
        if h == 0.0 || !h.is_finite() {
            return Err(CalcError::InvalidConfig("h must be a nonzero finite number".into()));
        }
        if !s.is_finite() {
            return Err(CalcError::InvalidConfig("s must be finite".into()));
        }
        Ok(Self { h, s })
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    /// Same step, different base point.
    pub fn with_s(&self, s: f64) -> Result<Self> {
        Self::new(self.h, s)
    }
}

/// Parameter `q ∈ (0,1) ∪ (1,∞)` and base point `s > 0`; functions live on
/// `(0, ∞)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QConfig {
    q: f64,
    s: f64,
}

impl QConfig {
    pub fn new(q: f64, s: f64) -> Result<Self> {
        if !(q > 0.0 && q.is_finite() && q != 1.0) {
            return Err(CalcError::InvalidConfig("q must lie in (0,1) or (1,inf)".into()));
        }
        if !(s > 0.0 && s.is_finite()) {
            return Err(CalcError::InvalidConfig("s must be positive".into()));
        }
        Ok(Self { q, s })
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn with_s(&self, s: f64) -> Result<Self> {
        Self::new(self.q, s)
    }
}

pub(crate) fn check_positive(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(CalcError::DomainError)
    }
}
