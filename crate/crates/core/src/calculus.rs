//! The generic `(τ, σ)`-calculus on a tension space.
//!
//! Given commuting bijections `τ, σ` of `M`, a tension function `θ` and a
//! partition function `λ`, this module provides
//!
//! * the differential `d f(p) = f(τ(p)) − f(σ(p))`,
//! * the derivative `D f(p) = d f(p) / θ(τ(p), σ(p))`,
//! * the right inverse `r` of `d` (a finite sum over `|λ(p)|` terms),
//! * the multiplier `T f(p) = θ(τ(p), σ(p)) f(p)` and `R = r ∘ T` with
//!   `D R = I`,
//! * the initial operator `F f(p) = f((τσ⁻¹)^{−λ(p)}(p))`, equal to
//!   `I − R D`,
//! * right-inverse families `R + (I − R D) A` and definite integrals
//!   `F_β R − F_α R`.
//!
//! All operators return lazily evaluated [`RealFn`]s; nothing is cached.

use std::sync::Arc;

use crate::error::{CalcError, Result};
use crate::function::{LinearMap, Point, RealFn};
use crate::numeric::{CompensatedSum, ABS_FLOOR};
use crate::partition::PartitionScheme;
use crate::tension::{law_tol, Bijection, Directedness, TensionSpace};

/// The bundle `(τ, σ, θ, λ)` from which every operator is derived.
///
/// `τ` and `σ` are taken from the partition scheme, so the scheme and the
/// context always agree on them.
#[derive(Clone, Debug)]
pub struct QCtx<P = f64> {
    theta: TensionSpace<P>,
    scheme: PartitionScheme<P>,
    direction: Directedness,
}

impl<P: Point> QCtx<P> {
    /// Validates, on `theta`'s samples, that `τ` and `σ` are commuting
    /// bijections, that `θ(τ(p), σ(p)) ≠ 0`, and that the scheme obeys the
    /// shift law.
    pub fn new(theta: TensionSpace<P>, scheme: PartitionScheme<P>) -> Result<Self> {
        let samples = theta.samples();
        theta.check_bijection(scheme.tau(), samples)?;
        theta.check_bijection(scheme.sigma(), samples)?;
        theta.check_commute(scheme.tau(), scheme.sigma(), samples)?;
        for &p in samples {
            if theta.eval(scheme.tau().apply(p), scheme.sigma().apply(p)).abs() < ABS_FLOOR {
                return Err(CalcError::ZeroDenominator);
            }
        }
        let report = scheme.validate(samples);
        if !report.is_valid() {
            return Err(CalcError::ContractViolation(format!(
                "partition scheme fails on samples: {:?}",
                &report.violations[..report.violations.len().min(3)]
            )));
        }
        let step = scheme.tau().after(&scheme.sigma().inverse());
        let direction = theta.check_directed(&step, samples);
        Ok(Self {
            theta,
            scheme,
            direction,
        })
    }

    /// Same `θ`, `τ`, `σ` with a different partition function.
    pub fn with_scheme(&self, scheme: PartitionScheme<P>) -> Result<Self> {
        self.check_same_maps(&scheme)?;
        Self::new(self.theta.clone(), scheme)
    }

    pub fn tau(&self) -> &Bijection<P> {
        self.scheme.tau()
    }

    pub fn sigma(&self) -> &Bijection<P> {
        self.scheme.sigma()
    }

    pub fn theta(&self) -> &TensionSpace<P> {
        &self.theta
    }

    pub fn scheme(&self) -> &PartitionScheme<P> {
        &self.scheme
    }

    pub fn samples(&self) -> &[P] {
        self.theta.samples()
    }

    /// Direction of `τσ⁻¹` with respect to `θ` on the samples. The calculus
    /// only needs `θ(τ(p), σ(p)) ≠ 0`; the sign is recorded, not normalized.
    pub fn direction(&self) -> Directedness {
        self.direction
    }

    /// `θ(τ(p), σ(p))`.
    pub fn denominator(&self, p: P) -> f64 {
        self.theta.eval(self.tau().apply(p), self.sigma().apply(p))
    }

    fn check_same_maps(&self, scheme: &PartitionScheme<P>) -> Result<()> {
        for &p in self.samples() {
            let same_tau = self.theta.metric(scheme.tau().apply(p), self.tau().apply(p));
            let same_sigma = self.theta.metric(scheme.sigma().apply(p), self.sigma().apply(p));
            if same_tau > law_tol(0.0) || same_sigma > law_tol(0.0) {
                return Err(CalcError::ContractViolation(
                    "partition scheme uses different bijections".into(),
                ));
            }
        }
        Ok(())
    }

    // ---- differential and derivative ----

    pub fn differential(&self, f: &RealFn<P>) -> RealFn<P> {
        let (f, tau, sigma) = (f.clone(), self.tau().clone(), self.sigma().clone());
        RealFn::try_new(move |p| Ok(f.eval(tau.apply(p))? - f.eval(sigma.apply(p))?))
    }

    pub fn derivative(&self, f: &RealFn<P>) -> RealFn<P> {
        let ctx = self.clone();
        let d = self.differential(f);
        RealFn::try_new(move |p| {
            let denom = ctx.denominator(p);
            if denom.abs() < ABS_FLOOR {
                return Err(CalcError::ZeroDenominator);
            }
            Ok(d.eval(p)? / denom)
        })
    }

    /// `T f(p) = θ(τ(p), σ(p)) f(p)`.
    pub fn multiplier(&self, f: &RealFn<P>) -> RealFn<P> {
        let (ctx, f) = (self.clone(), f.clone());
        RealFn::try_new(move |p| Ok(ctx.denominator(p) * f.eval(p)?))
    }

    /// `T⁻¹ f(p) = f(p) / θ(τ(p), σ(p))`.
    pub fn multiplier_inverse(&self, f: &RealFn<P>) -> RealFn<P> {
        let (ctx, f) = (self.clone(), f.clone());
        RealFn::try_new(move |p| {
            let denom = ctx.denominator(p);
            if denom.abs() < ABS_FLOOR {
                return Err(CalcError::ZeroDenominator);
            }
            Ok(f.eval(p)? / denom)
        })
    }

    // ---- product rules ----

    /// `δ(fg)(p) − [δf(p) g(τ(p)) + f(σ(p)) δg(p)]`.
    pub fn leibniz_residual(
        &self,
        delta: &LinearMap<P>,
        f: &RealFn<P>,
        g: &RealFn<P>,
        p: P,
    ) -> Result<f64> {
        let (tp, sp) = (self.tau().apply(p), self.sigma().apply(p));
        let lhs = delta.apply(&f.mul(g)).eval(p)?;
        let rhs = delta.apply(f).eval(p)? * g.eval(tp)? + f.eval(sp)? * delta.apply(g).eval(p)?;
        Ok(lhs - rhs)
    }

    /// `δ(fg)(p) − ([a f(σp) + b f(τp)] δg(p) + δf(p) [b g(σp) + a g(τp)])`
    /// with `b = 1 − a`.
    pub fn ab_combination_residual(
        &self,
        delta: &LinearMap<P>,
        f: &RealFn<P>,
        g: &RealFn<P>,
        a: f64,
        p: P,
    ) -> Result<f64> {
        let b = 1.0 - a;
        let (tp, sp) = (self.tau().apply(p), self.sigma().apply(p));
        let lhs = delta.apply(&f.mul(g)).eval(p)?;
        let f_mix = a * f.eval(sp)? + b * f.eval(tp)?;
        let g_mix = b * g.eval(sp)? + a * g.eval(tp)?;
        let rhs = f_mix * delta.apply(g).eval(p)? + delta.apply(f).eval(p)? * g_mix;
        Ok(lhs - rhs)
    }

    /// `H(f)(p) = (f(σ(p)) + f(τ(p))) / 2`.
    pub fn mean(&self, f: &RealFn<P>) -> RealFn<P> {
        let (f, tau, sigma) = (f.clone(), self.tau().clone(), self.sigma().clone());
        RealFn::try_new(move |p| Ok(0.5 * (f.eval(sigma.apply(p))? + f.eval(tau.apply(p))?)))
    }

    /// `δ(fg)(p) − [H(f)(p) δg(p) + δf(p) H(g)(p)]`.
    pub fn symmetric_rule_residual(
        &self,
        delta: &LinearMap<P>,
        f: &RealFn<P>,
        g: &RealFn<P>,
        p: P,
    ) -> Result<f64> {
        let lhs = delta.apply(&f.mul(g)).eval(p)?;
        let rhs = self.mean(f).eval(p)? * delta.apply(g).eval(p)?
            + delta.apply(f).eval(p)? * self.mean(g).eval(p)?;
        Ok(lhs - rhs)
    }

    /// Residual of the order-1 difference-like rule
    /// `δ(f1 f2) − f2(τp) δf1 − f1(σp) δf2 + f1(σp) f2(τp) δ(1)`.
    pub fn order1_residual(
        &self,
        delta: &LinearMap<P>,
        f1: &RealFn<P>,
        f2: &RealFn<P>,
        p: P,
    ) -> Result<f64> {
        let (tp, sp) = (self.tau().apply(p), self.sigma().apply(p));
        let one = RealFn::constant(1.0);
        let f1s = f1.eval(sp)?;
        let f2t = f2.eval(tp)?;
        Ok(delta.apply(&f1.mul(f2)).eval(p)?
            - f2t * delta.apply(f1).eval(p)?
            - f1s * delta.apply(f2).eval(p)?
            + f1s * f2t * delta.apply(&one).eval(p)?)
    }

    // ---- right inverses and initial operators ----

    /// The right inverse `r` of the differential:
    ///
    /// * `λ(p) ≤ −1`: `−Σ_{m=0}^{−λ(p)−1} f(τ^m σ^{−m−1}(p))`
    /// * `λ(p) = 0`: `0`
    /// * `λ(p) ≥ 1`: `Σ_{m=1}^{λ(p)} f(τ^{−m} σ^{m−1}(p))`
    pub fn r_inverse_differential(&self, f: &RealFn<P>) -> RealFn<P> {
        let (scheme, f) = (self.scheme.clone(), f.clone());
        RealFn::try_new(move |p| {
            let k = scheme.index(p);
            // τ^m σ^{-m-1} = (τσ⁻¹)^m σ⁻¹ and τ^{-m} σ^{m-1} = (στ⁻¹)^m σ⁻¹
            let mut z = scheme.sigma().apply_inverse(p);
            let mut acc = CompensatedSum::new();
            if k < 0 {
                for m in 0..-k {
                    if m > 0 {
                        z = scheme.step(z);
                    }
                    acc.add(f.eval(z)?);
                }
                Ok(-acc.value())
            } else {
                for _ in 0..k {
                    z = scheme.step_back(z);
                    acc.add(f.eval(z)?);
                }
                Ok(acc.value())
            }
        })
    }

    /// `R = r ∘ T`, a right inverse of the derivative.
    pub fn r_inverse_derivative(&self, f: &RealFn<P>) -> RealFn<P> {
        self.r_inverse_differential(&self.multiplier(f))
    }

    /// `F f(p) = f((τσ⁻¹)^{−λ(p)}(p))` for the context's own scheme.
    pub fn initial_operator(&self, f: &RealFn<P>) -> RealFn<P> {
        initial_operator_for(&self.scheme, f)
    }

    // ---- operator handles ----

    pub fn differential_op(&self) -> LinearMap<P> {
        let ctx = self.clone();
        LinearMap::new(move |f| ctx.differential(f))
    }

    pub fn derivative_op(&self) -> LinearMap<P> {
        let ctx = self.clone();
        LinearMap::new(move |f| ctx.derivative(f))
    }

    pub fn r_op(&self) -> LinearMap<P> {
        let ctx = self.clone();
        LinearMap::new(move |f| ctx.r_inverse_differential(f))
    }

    /// `R_{τ,σ}` as a linear map.
    pub fn right_inverse_op(&self) -> LinearMap<P> {
        let ctx = self.clone();
        LinearMap::new(move |f| ctx.r_inverse_derivative(f))
    }

    pub fn initial_op(&self) -> LinearMap<P> {
        let scheme = self.scheme.clone();
        LinearMap::new(move |f| initial_operator_for(&scheme, f))
    }

    /// `f -> f ∘ τ`, an order-1 difference-like operator with `δ(1) = 1`.
    pub fn shift_op(&self) -> LinearMap<P> {
        let tau = self.tau().clone();
        LinearMap::new(move |f| f.compose({
            let tau = tau.clone();
            move |p| tau.apply(p)
        }))
    }

    // ---- families and integrals ----

    /// Smooth test functions built from the potential `θ_q` at the first
    /// sample; used to check operator identities when no caller functions
    /// are at hand.
    pub fn probe_functions(&self) -> Vec<RealFn<P>> {
        let anchor = self.samples()[0];
        let u = self.theta.potential(anchor);
        let spread = self
            .samples()
            .iter()
            .map(|&p| self.theta.metric(p, anchor))
            .fold(1.0, f64::max);
        vec![
            RealFn::constant(1.0),
            u.clone(),
            u.mul(&u),
            u.map(move |v| (v / spread).sin() + 2.0),
            u.map(move |v| (v / spread).exp()),
        ]
    }

    /// Checks `D(R f) = f` on the samples for every probe function.
    pub fn check_right_inverse(&self, r: &LinearMap<P>) -> Result<()> {
        for f in self.probe_functions() {
            let drf = self.derivative(&r.apply(&f));
            for &p in self.samples() {
                let (lhs, rhs) = (drf.eval(p)?, f.eval(p)?);
                if (lhs - rhs).abs() > law_tol(rhs) {
                    return Err(CalcError::NotRightInverse(format!(
                        "D(Rf)({p:?}) = {lhs}, f = {rhs}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// `R' = R + (I − R D) A`, another right inverse of `D`.
    pub fn generate_right_inverse(
        &self,
        r: &LinearMap<P>,
        a: &LinearMap<P>,
    ) -> Result<LinearMap<P>> {
        self.check_right_inverse(r)?;
        let d = self.derivative_op();
        let projection = LinearMap::identity().sub(&r.after(&d));
        Ok(r.add(&projection.after(a)))
    }

    /// The coset representative `R f` of the indefinite integral `R f + Z_D`.
    pub fn indefinite_integral(&self, r: &LinearMap<P>, f: &RealFn<P>) -> RealFn<P> {
        r.apply(f)
    }

    /// `I^β_α f = F_β(R f) − F_α(R f)`. The result lies in `Z_D` and does
    /// not depend on which right inverse `R` is used.
    pub fn definite_integral(
        &self,
        scheme_a: &PartitionScheme<P>,
        scheme_b: &PartitionScheme<P>,
        r: &LinearMap<P>,
        f: &RealFn<P>,
    ) -> Result<RealFn<P>> {
        self.check_same_maps(scheme_a)?;
        self.check_same_maps(scheme_b)?;
        let rf = r.apply(f);
        Ok(initial_operator_for(scheme_b, &rf).sub(&initial_operator_for(scheme_a, &rf)))
    }

    /// Whether `g(τσ⁻¹(p)) = g(p)` on every sample, i.e. `g ∈ Z_D`.
    pub fn is_constant(&self, g: &RealFn<P>) -> Result<bool> {
        for &p in self.samples() {
            let (a, b) = (g.eval(self.scheme.step(p))?, g.eval(p)?);
            if (a - b).abs() > law_tol(a.abs().max(b.abs())) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `F_λ f(p) = f((τσ⁻¹)^{−λ(p)}(p))`, the initial operator of `scheme`.
pub fn initial_operator_for<P: Point>(scheme: &PartitionScheme<P>, f: &RealFn<P>) -> RealFn<P> {
    let (scheme, f) = (scheme.clone(), f.clone());
    RealFn::try_new(move |p| f.eval(scheme.project_to_zero_cell(p)))
}

/// A linear map `A f = Σ c_i (f ∘ φ_i) · w_i + c₀ f(p₀) w₀`, useful as a
/// randomized generator input for [`QCtx::generate_right_inverse`].
pub fn mixing_map<P: Point>(
    shifts: Vec<(f64, Bijection<P>, RealFn<P>)>,
    functional: Option<(f64, P, RealFn<P>)>,
) -> LinearMap<P> {
    let shifts = Arc::new(shifts);
    LinearMap::new(move |f| {
        let (shifts, functional, f) = (Arc::clone(&shifts), functional.clone(), f.clone());
        RealFn::try_new(move |p| {
            let mut acc = 0.0;
            for (c, map, w) in shifts.iter() {
                acc += c * f.eval(map.apply(p))? * w.eval(p)?;
            }
            if let Some((c, p0, w)) = &functional {
                acc += c * f.eval(*p0)? * w.eval(p)?;
            }
            Ok(acc)
        })
    })
}
