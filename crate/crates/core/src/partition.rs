//! `(τ, σ)`-partition functions.
//!
//! A partition function `λ : M -> Z` satisfies `λ(τσ⁻¹(p)) = λ(p) + 1`.
//! Its level sets `M_k = λ⁻¹(k)` are the cells of a `(τ, σ)`-partition and
//! `λ(p)` is the floor index that bounds every finite antiderivative sum.
//! Cells are never materialized; `λ` is kept as an evaluator.

use std::fmt;
use std::sync::Arc;

use crate::error::{CalcError, Result};
use crate::function::Point;
use crate::numeric::snap_floor;
use crate::tension::{Bijection, TensionSpace};

type LambdaFn<P> = dyn Fn(P) -> i64 + Send + Sync;

/// An integer-valued partition function together with the bijections it
/// is defined for.
pub struct PartitionScheme<P = f64> {
    lambda: Arc<LambdaFn<P>>,
    tau: Bijection<P>,
    sigma: Bijection<P>,
}

impl<P> Clone for PartitionScheme<P> {
    fn clone(&self) -> Self {
        Self {
            lambda: Arc::clone(&self.lambda),
            tau: self.tau.clone(),
            sigma: self.sigma.clone(),
        }
    }
}

impl<P> fmt::Debug for PartitionScheme<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("PartitionScheme(..)")
    }
}

/// A single failed check from [`PartitionScheme::validate`].
#[derive(Debug, Clone, PartialEq)]
pub enum PartitionViolation<P> {
    /// `λ(τσ⁻¹(p)) ≠ λ(p) + 1`.
    ShiftLaw(P),
    /// `λ(τ(p)) ≠ λ(σ(p)) + 1`.
    SplitShiftLaw(P),
    /// Moving a sample into cell 0 did not land in cell 0.
    EmptyZeroCell(P),
    /// `(τσ⁻¹)^m(p) = p`.
    FixedPoint(P, i64),
}

/// Outcome of validating a scheme on samples.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionReport<P> {
    pub violations: Vec<PartitionViolation<P>>,
}

impl<P> PartitionReport<P> {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl<P: Point> PartitionScheme<P> {
    /// Wraps an arbitrary partition function. Use [`validate`](Self::validate)
    /// to check the shift law.
    pub fn new(
        lambda: impl Fn(P) -> i64 + Send + Sync + 'static,
        tau: Bijection<P>,
        sigma: Bijection<P>,
    ) -> Self {
        Self {
            lambda: Arc::new(lambda),
            tau,
            sigma,
        }
    }

    /// Builds `λ_s(p) = ⌊η(p, s) / η(τσ⁻¹(s), s)⌋` from a tension function
    /// `η` that is τ- and σ-homogeneous with coefficient 1 and for which
    /// `τσ⁻¹` is directed. Hypotheses are checked on `eta`'s samples.
    pub fn from_tension(
        eta: &TensionSpace<P>,
        s: P,
        tau: Bijection<P>,
        sigma: Bijection<P>,
    ) -> Result<Self> {
        let samples = eta.samples();
        for (name, map) in [("tau", &tau), ("sigma", &sigma)] {
            match eta.check_homogeneity(map, samples)? {
                Some(t) if (t - 1.0).abs() <= 1e-9 => {}
                Some(t) => {
                    return Err(CalcError::NotHomogeneous(format!(
                        "{name}-homogeneity coefficient is {t}, expected 1"
                    )))
                }
                None => {
                    return Err(CalcError::NotHomogeneous(format!(
                        "eta is not {name}-homogeneous"
                    )))
                }
            }
        }
        let step = tau.after(&sigma.inverse());
        if !eta.check_directed(&step, samples).is_directed() {
            return Err(CalcError::NotDirected);
        }
        let denom = eta.eval(step.apply(s), s);
        if denom == 0.0 || !denom.is_finite() {
            return Err(CalcError::ZeroStep);
        }
        let eta = eta.clone();
        Ok(Self::new(
            move |p| snap_floor(eta.eval(p, s) / denom),
            tau,
            sigma,
        ))
    }

    pub fn tau(&self) -> &Bijection<P> {
        &self.tau
    }

    pub fn sigma(&self) -> &Bijection<P> {
        &self.sigma
    }

    /// `⌊p⌋ = λ(p)`.
    pub fn index(&self, p: P) -> i64 {
        (self.lambda)(p)
    }

    /// The `k` with `p ∈ M_k`; same as [`index`](Self::index).
    pub fn cell_of(&self, p: P) -> i64 {
        self.index(p)
    }

    /// `τσ⁻¹(p)`, which maps `M_k` onto `M_{k+1}`.
    pub fn step(&self, p: P) -> P {
        self.tau.apply(self.sigma.apply_inverse(p))
    }

    /// `(τσ⁻¹)⁻¹(p) = στ⁻¹(p)`.
    pub fn step_back(&self, p: P) -> P {
        self.sigma.apply(self.tau.apply_inverse(p))
    }

    /// `(τσ⁻¹)^m(p)` by repeated application.
    pub fn step_by(&self, p: P, m: i64) -> P {
        if m >= 0 {
            (0..m).fold(p, |acc, _| self.step(acc))
        } else {
            (0..-m).fold(p, |acc, _| self.step_back(acc))
        }
    }

    /// `(τσ⁻¹)^{−λ(p)}(p)`, the representative of `p`'s orbit in `M_0`.
    pub fn project_to_zero_cell(&self, p: P) -> P {
        self.step_by(p, -self.index(p))
    }

    /// Checks the shift law in both forms, that cell 0 is reachable, and
    /// that small powers of `τσ⁻¹` have no fixed points among `samples`.
    pub fn validate(&self, samples: &[P]) -> PartitionReport<P> {
        let mut violations = Vec::new();
        for &p in samples {
            let k = self.index(p);
            if self.index(self.step(p)) != k + 1 {
                violations.push(PartitionViolation::ShiftLaw(p));
            }
            if self.index(self.tau.apply(p)) != self.index(self.sigma.apply(p)) + 1 {
                violations.push(PartitionViolation::SplitShiftLaw(p));
            }
            for m in [1, 2, 3, -1] {
                if self.step_by(p, m) == p {
                    violations.push(PartitionViolation::FixedPoint(p, m));
                }
            }
        }
        if let Some(&p) = samples.first() {
            if self.index(self.project_to_zero_cell(p)) != 0 {
                violations.push(PartitionViolation::EmptyZeroCell(p));
            }
        }
        PartitionReport { violations }
    }
}
