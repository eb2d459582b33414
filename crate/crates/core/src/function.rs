//! Real-valued functions on a point set and linear operators acting on them.

use std::fmt;
use std::sync::Arc;

use crate::error::Result;

/// A point of the underlying set `M`.
pub trait Point: Copy + PartialEq + fmt::Debug + Send + Sync + 'static {}

impl<T: Copy + PartialEq + fmt::Debug + Send + Sync + 'static> Point for T {}

type EvalFn<P> = dyn Fn(P) -> Result<f64> + Send + Sync;

/// A pure, fallible evaluator `M -> R`.
///
/// Cloning is cheap; the closure is shared.
pub struct RealFn<P = f64> {
    eval: Arc<EvalFn<P>>,
}

impl<P> Clone for RealFn<P> {
    fn clone(&self) -> Self {
        Self {
            eval: Arc::clone(&self.eval),
        }
    }
}

impl<P> fmt::Debug for RealFn<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("RealFn(..)")
    }
}

impl<P: Point> RealFn<P> {
    /// Wraps an infallible closure.
    pub fn new(f: impl Fn(P) -> f64 + Send + Sync + 'static) -> Self {
        Self::try_new(move |p| Ok(f(p)))
    }

    pub fn try_new(f: impl Fn(P) -> Result<f64> + Send + Sync + 'static) -> Self {
        Self { eval: Arc::new(f) }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(move |_| c)
    }

    pub fn zero() -> Self {
        Self::constant(0.0)
    }

    pub fn eval(&self, p: P) -> Result<f64> {
        (self.eval)(p)
    }

    /// `p -> self(map(p))`.
    pub fn compose(&self, map: impl Fn(P) -> P + Send + Sync + 'static) -> Self {
        let f = self.clone();
        Self::try_new(move |p| f.eval(map(p)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (f, g) = (self.clone(), other.clone());
        Self::try_new(move |p| Ok(f.eval(p)? + g.eval(p)?))
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (f, g) = (self.clone(), other.clone());
        Self::try_new(move |p| Ok(f.eval(p)? - g.eval(p)?))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (f, g) = (self.clone(), other.clone());
        Self::try_new(move |p| Ok(f.eval(p)? * g.eval(p)?))
    }

    pub fn scale(&self, c: f64) -> Self {
        let f = self.clone();
        Self::try_new(move |p| Ok(c * f.eval(p)?))
    }

    /// Applies a real map to the output: `p -> g(self(p))`.
    pub fn map(&self, g: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        let f = self.clone();
        Self::try_new(move |p| Ok(g(f.eval(p)?)))
    }
}

type ApplyFn<P> = dyn Fn(&RealFn<P>) -> RealFn<P> + Send + Sync;

/// A linear operator on real functions over `M`.
///
/// Linearity is the constructor's responsibility; it is only ever checked
/// on samples.
pub struct LinearMap<P = f64> {
    apply: Arc<ApplyFn<P>>,
}

impl<P> Clone for LinearMap<P> {
    fn clone(&self) -> Self {
        Self {
            apply: Arc::clone(&self.apply),
        }
    }
}

impl<P> fmt::Debug for LinearMap<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("LinearMap(..)")
    }
}

impl<P: Point> LinearMap<P> {
    pub fn new(apply: impl Fn(&RealFn<P>) -> RealFn<P> + Send + Sync + 'static) -> Self {
        Self {
            apply: Arc::new(apply),
        }
    }

    pub fn identity() -> Self {
        Self::new(|f| f.clone())
    }

    pub fn zero() -> Self {
        Self::new(|_| RealFn::zero())
    }

    pub fn apply(&self, f: &RealFn<P>) -> RealFn<P> {
        (self.apply)(f)
    }

    /// `self ∘ inner`, i.e. `f -> self(inner(f))`.
    pub fn after(&self, inner: &Self) -> Self {
        let (outer, inner) = (self.clone(), inner.clone());
        Self::new(move |f| outer.apply(&inner.apply(f)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = (self.clone(), other.clone());
        Self::new(move |f| a.apply(f).add(&b.apply(f)))
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (a, b) = (self.clone(), other.clone());
        Self::new(move |f| a.apply(f).sub(&b.apply(f)))
    }

    pub fn scale(&self, c: f64) -> Self {
        let a = self.clone();
        Self::new(move |f| a.apply(f).scale(c))
    }
}
