//! Tension spaces `(M, θ)` and bijections of `M`.
//!
//! A tension function obeys the cocycle law
//! `θ(p1, p2) + θ(p2, p3) = θ(p1, p3)`; it induces an equivalence relation
//! (`θ(p, q) = 0`), a linear order on the classes, and a metric `|θ|`.
//! Because `M` is usually infinite, every law is validated on a finite set of
//! representative points supplied with the space.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{CalcError, Result};
use crate::function::{Point, RealFn};
use crate::numeric::{approx_eq, REL_TOL};

type MapFn<P> = dyn Fn(P) -> P + Send + Sync;

/// An invertible self-map of `M` with explicit forward and inverse evaluators.
pub struct Bijection<P = f64> {
    forward: Arc<MapFn<P>>,
    inverse: Arc<MapFn<P>>,
}

impl<P> Clone for Bijection<P> {
    fn clone(&self) -> Self {
        Self {
            forward: Arc::clone(&self.forward),
            inverse: Arc::clone(&self.inverse),
        }
    }
}

impl<P> fmt::Debug for Bijection<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Bijection(..)")
    }
}

impl<P: Point> Bijection<P> {
    pub fn new(
        forward: impl Fn(P) -> P + Send + Sync + 'static,
        inverse: impl Fn(P) -> P + Send + Sync + 'static,
    ) -> Self {
        Self {
            forward: Arc::new(forward),
            inverse: Arc::new(inverse),
        }
    }

    pub fn identity() -> Self {
        Self::new(|p| p, |p| p)
    }

    pub fn apply(&self, p: P) -> P {
        (self.forward)(p)
    }

    pub fn apply_inverse(&self, p: P) -> P {
        (self.inverse)(p)
    }

    /// `map^n(p)`; negative `n` iterates the inverse.
    pub fn iterate(&self, p: P, n: i64) -> P {
        let step: &MapFn<P> = if n >= 0 { &*self.forward } else { &*self.inverse };
        (0..n.unsigned_abs()).fold(p, |acc, _| step(acc))
    }

    /// The inverse bijection.
    pub fn inverse(&self) -> Self {
        Self {
            forward: Arc::clone(&self.inverse),
            inverse: Arc::clone(&self.forward),
        }
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &Self) -> Self {
        let (f_out, f_in) = (Arc::clone(&self.forward), Arc::clone(&inner.forward));
        let (i_out, i_in) = (Arc::clone(&self.inverse), Arc::clone(&inner.inverse));
        Self::new(move |p| f_out(f_in(p)), move |p| i_in(i_out(p)))
    }
}

impl Bijection<f64> {
    /// `x -> x + h`.
    pub fn translation(h: f64) -> Self {
        Self::new(move |x| x + h, move |x| x - h)
    }

    /// `x -> q x`.
    pub fn scaling(q: f64) -> Self {
        Self::new(move |x| q * x, move |x| x / q)
    }
}

/// Result of [`TensionSpace::check_directed`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Directedness {
    /// `θ(map(p), p) > 0` on every sample.
    Rightward,
    /// `θ(map(p), p) < 0` on every sample.
    Leftward,
    NotDirected,
}

impl Directedness {
    pub fn is_directed(self) -> bool {
        self != Directedness::NotDirected
    }
}

type ThetaFn<P> = dyn Fn(P, P) -> f64 + Send + Sync;

/// A tension space: a tension function plus representative sample points.
pub struct TensionSpace<P = f64> {
    theta: Arc<ThetaFn<P>>,
    samples: Arc<[P]>,
}

impl<P> Clone for TensionSpace<P> {
    fn clone(&self) -> Self {
        Self {
            theta: Arc::clone(&self.theta),
            samples: Arc::clone(&self.samples),
        }
    }
}

impl<P: fmt::Debug> fmt::Debug for TensionSpace<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TensionSpace")
            .field("samples", &self.samples.len())
            .finish_non_exhaustive()
    }
}

/// Tolerance for law residuals whose natural scale is `scale`.
pub(crate) fn law_tol(scale: f64) -> f64 {
    REL_TOL * (1.0 + scale.abs())
}

impl<P: Point> TensionSpace<P> {
    /// Builds a tension space and validates the tension laws on `samples`.
    pub fn new(
        theta: impl Fn(P, P) -> f64 + Send + Sync + 'static,
        samples: Vec<P>,
    ) -> Result<Self> {
        let space = Self::new_unchecked(theta, samples);
        space.validate()?;
        Ok(space)
    }

    /// Builds a tension space without validating it.
    pub fn new_unchecked(
        theta: impl Fn(P, P) -> f64 + Send + Sync + 'static,
        samples: Vec<P>,
    ) -> Self {
        Self {
            theta: Arc::new(theta),
            samples: samples.into(),
        }
    }

    /// Same tension function over a different sample set.
    pub fn with_samples(&self, samples: Vec<P>) -> Self {
        Self {
            theta: Arc::clone(&self.theta),
            samples: samples.into(),
        }
    }

    pub fn samples(&self) -> &[P] {
        &self.samples
    }

    /// `θ(p, q)`.
    pub fn eval(&self, p: P, q: P) -> f64 {
        (self.theta)(p, q)
    }

    /// Checks cocycle, skew symmetry, `θ(p,p) = 0` and nontriviality on the
    /// stored samples.
    pub fn validate(&self) -> Result<()> {
        let s = &self.samples;
        if s.is_empty() {
            return Err(CalcError::DegenerateSample);
        }
        let n = s.len();
        for (i, &p) in s.iter().enumerate() {
            let self_t = self.eval(p, p);
            if self_t.abs() > law_tol(0.0) {
                return Err(CalcError::ContractViolation(format!(
                    "theta({p:?}, {p:?}) = {self_t}, expected 0"
                )));
            }
            for j in triple_partners(i, n) {
                let (q, r) = (s[j.0], s[j.1]);
                let residual = self.cocycle_defect(p, q, r);
                if residual.abs() > law_tol(self.eval(p, r)) {
                    return Err(CalcError::ContractViolation(format!(
                        "cocycle fails at ({p:?}, {q:?}, {r:?}): residual {residual}"
                    )));
                }
                let skew = self.eval(p, q) + self.eval(q, p);
                if skew.abs() > law_tol(self.eval(p, q)) {
                    return Err(CalcError::ContractViolation(format!(
                        "skew symmetry fails at ({p:?}, {q:?})"
                    )));
                }
            }
        }
        let nontrivial = s.iter().any(|&p| s.iter().any(|&q| self.eval(p, q) != 0.0));
        if !nontrivial {
            return Err(CalcError::DegenerateSample);
        }
        Ok(())
    }

    /// `θ(p1,p2) + θ(p2,p3) − θ(p1,p3)`.
    pub fn cocycle_defect(&self, p1: P, p2: P, p3: P) -> f64 {
        self.eval(p1, p2) + self.eval(p2, p3) - self.eval(p1, p3)
    }

    /// `Less` (p precedes q) iff `θ(p,q) < 0`, `Equal` iff `θ(p,q) = 0`.
    pub fn order_of(&self, p: P, q: P) -> Ordering {
        let t = self.eval(p, q);
        if t < 0.0 {
            Ordering::Less
        } else if t == 0.0 {
            Ordering::Equal
        } else {
            Ordering::Greater
        }
    }

    pub fn equivalent(&self, p: P, q: P) -> bool {
        self.order_of(p, q) == Ordering::Equal
    }

    /// `g_θ(p, q) = |θ(p, q)|`.
    pub fn metric(&self, p: P, q: P) -> f64 {
        self.eval(p, q).abs()
    }

    /// The potential `θ_q : p -> θ(p, q)`.
    pub fn potential(&self, q: P) -> RealFn<P> {
        let theta = Arc::clone(&self.theta);
        RealFn::new(move |p| theta(p, q))
    }

    pub fn check_directed(&self, map: &Bijection<P>, samples: &[P]) -> Directedness {
        let mut signs = samples.iter().map(|&p| self.eval(map.apply(p), p));
        let Some(first) = signs.next() else {
            return Directedness::NotDirected;
        };
        let rightward = first > 0.0;
        if first == 0.0 {
            return Directedness::NotDirected;
        }
        if signs.all(|t| if rightward { t > 0.0 } else { t < 0.0 }) {
            if rightward {
                Directedness::Rightward
            } else {
                Directedness::Leftward
            }
        } else {
            Directedness::NotDirected
        }
    }

    /// Estimates the homogeneity coefficient `t` with
    /// `θ(map(p1), map(p2)) = t θ(p1, p2)` from the first non-equivalent
    /// sample pair, then verifies it on every pair.
    pub fn check_homogeneity(&self, map: &Bijection<P>, samples: &[P]) -> Result<Option<f64>> {
        let image: Vec<P> = samples.iter().map(|&p| map.apply(p)).collect();
        let pairs = || {
            (0..samples.len()).flat_map(move |i| ((i + 1)..samples.len()).map(move |j| (i, j)))
        };
        let Some((i0, j0)) = pairs().find(|&(i, j)| self.eval(samples[i], samples[j]) != 0.0)
        else {
            return Err(CalcError::DegenerateSample);
        };
        let t = self.eval(image[i0], image[j0]) / self.eval(samples[i0], samples[j0]);
        let holds = pairs().all(|(i, j)| {
            let lhs = self.eval(image[i], image[j]);
            let rhs = t * self.eval(samples[i], samples[j]);
            (lhs - rhs).abs() <= law_tol(lhs.abs().max(rhs.abs()))
        });
        Ok(holds.then_some(t))
    }

    /// Verifies that no iterate `map^k(p)`, `1 <= k <= n`, returns to the
    /// class of `p`. For a θ-directed map this always holds; a
    /// `ContractViolation` means the map was not actually directed.
    pub fn no_fixed_points(&self, map: &Bijection<P>, p: P, n: u32) -> Result<bool> {
        let mut current = p;
        for k in 1..=n {
            current = map.apply(current);
            if self.equivalent(current, p) {
                return Err(CalcError::ContractViolation(format!(
                    "map^{k}({p:?}) returns to the class of {p:?}"
                )));
            }
        }
        Ok(true)
    }

    /// Checks `inverse(forward(p)) = p` and `forward(inverse(p)) = p` up to
    /// the tension metric.
    pub fn check_bijection(&self, map: &Bijection<P>, samples: &[P]) -> Result<()> {
        for &p in samples {
            let there_and_back = map.apply_inverse(map.apply(p));
            let back_and_there = map.apply(map.apply_inverse(p));
            let scale = self.metric(map.apply(p), p);
            if self.metric(there_and_back, p) > law_tol(scale)
                || self.metric(back_and_there, p) > law_tol(scale)
            {
                return Err(CalcError::ContractViolation(format!(
                    "bijection inverse fails at {p:?}"
                )));
            }
        }
        Ok(())
    }

    /// Checks `a(b(p)) = b(a(p))` up to the tension metric.
    pub fn check_commute(&self, a: &Bijection<P>, b: &Bijection<P>, samples: &[P]) -> Result<()> {
        for &p in samples {
            let ab = a.apply(b.apply(p));
            let ba = b.apply(a.apply(p));
            if self.metric(ab, ba) > law_tol(self.metric(ab, p)) {
                return Err(CalcError::ContractViolation(format!(
                    "bijections do not commute at {p:?}"
                )));
            }
        }
        Ok(())
    }

    /// Whether two functions agree on the stored samples.
    pub fn agree_on_samples(&self, f: &RealFn<P>, g: &RealFn<P>) -> Result<bool> {
        for &p in self.samples.iter() {
            if !approx_eq(f.eval(p)?, g.eval(p)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl TensionSpace<f64> {
    /// `θ(x, y) = x − y` on the real line.
    pub fn difference(samples: Vec<f64>) -> Result<Self> {
        Self::new(|x, y| x - y, samples)
    }

    /// `θ(x, y) = ln x − ln y` on `(0, ∞)`.
    pub fn logarithmic(samples: Vec<f64>) -> Result<Self> {
        if samples.iter().any(|&x| x <= 0.0) {
            return Err(CalcError::DomainError);
        }
        Self::new(|x: f64, y: f64| x.ln() - y.ln(), samples)
    }
}

/// Deterministic partner indices so that each sample takes part in a few
/// triples without enumerating all `n^3` of them.
fn triple_partners(i: usize, n: usize) -> impl Iterator<Item = (usize, usize)> {
    [(1usize, 2usize), (7, 3), (31, 17)]
        .into_iter()
        .map(move |(a, b)| ((i * a + 1) % n, (i * b + 5) % n))
}
