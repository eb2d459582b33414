//! Generic `(τ, σ)` contexts that reproduce the closed-form operators.
//!
//! h-calculus: `τ(x) = x + h`, `σ = id`, `θ(x, y) = x − y`.
//! q-calculus: `τ(x) = q x`, `σ = id`, `θ(x, y) = x − y` on `(0, ∞)`, with
//! the partition built from the logarithmic tension `ln x − ln y`.
//!
//! When the step `τσ⁻¹` moves leftwards (`h < 0`, or `q < 1`) the closed-form
//! right inverses keep their zero cell at `[s, s + |h|)` resp. `[s, s/q)`.
//! The matching partition function is then `−⌊(x − s)/|h|⌋` resp.
//! `−⌊log_{1/q}(x/s)⌋` rather than the plain floor of the tension ratio.

use super::{HConfig, QConfig};
use crate::calculus::QCtx;
use crate::error::Result;
use crate::numeric::{log_base, snap_floor};
use crate::partition::PartitionScheme;
use crate::sampling::{log_uniform_points, uniform_points};
use crate::tension::{Bijection, TensionSpace};

const BRIDGE_SAMPLES: usize = 64;
const BRIDGE_SEED: u64 = 0x5eed_b1d6e;

/// Sample points spread over roughly a dozen cells on each side of `s`.
pub fn h_samples(cfg: &HConfig, n: usize, seed: u64) -> Vec<f64> {
    let reach = 12.0 * cfg.h().abs() + 3.0;
    uniform_points(cfg.s() - reach, cfg.s() + reach, n, seed)
}

/// Sample points in `(0, ∞)` spread over several q-cells on each side of `s`.
pub fn q_samples(cfg: &QConfig, n: usize, seed: u64) -> Vec<f64> {
    let ratio = cfg.q().max(1.0 / cfg.q()).powi(6).min(1e4);
    log_uniform_points(cfg.s() / ratio, cfg.s() * ratio, n, seed)
}

/// The partition function whose operators are `R_hs` and `F_hs`.
pub fn h_partition(cfg: &HConfig) -> Result<PartitionScheme> {
    let (h, s) = (cfg.h(), cfg.s());
    let tau = Bijection::translation(h);
    if h > 0.0 {
        let eta = TensionSpace::difference(h_samples(cfg, BRIDGE_SAMPLES, BRIDGE_SEED))?;
        PartitionScheme::from_tension(&eta, s, tau, Bijection::identity())
    } else {
        let step = -h;
        Ok(PartitionScheme::new(
            move |x| -snap_floor((x - s) / step),
            tau,
            Bijection::identity(),
        ))
    }
}

/// The partition function whose operators are `ρ_qs` and `P_qs`.
pub fn q_partition(cfg: &QConfig) -> Result<PartitionScheme> {
    let (q, s) = (cfg.q(), cfg.s());
    let tau = Bijection::scaling(q);
    if q > 1.0 {
        let eta = TensionSpace::logarithmic(q_samples(cfg, BRIDGE_SAMPLES, BRIDGE_SEED))?;
        PartitionScheme::from_tension(&eta, s, tau, Bijection::identity())
    } else {
        Ok(PartitionScheme::new(
            move |x: f64| -snap_floor(log_base(s / x, q)),
            tau,
            Bijection::identity(),
        ))
    }
}

/// `λ_a(x) = ⌊log_q(x/a)⌋`, the partition function whose initial operator
/// is `G_a`.
pub fn q_initial_partition(cfg: &QConfig, a: f64) -> Result<PartitionScheme> {
    let eta = TensionSpace::logarithmic(q_samples(cfg, BRIDGE_SAMPLES, BRIDGE_SEED))?;
    PartitionScheme::from_tension(&eta, a, Bijection::scaling(cfg.q()), Bijection::identity())
}

/// Generic context for the h-calculus configuration.
pub fn bridge_h(cfg: &HConfig) -> Result<QCtx> {
    let theta = TensionSpace::difference(h_samples(cfg, BRIDGE_SAMPLES, BRIDGE_SEED))?;
    QCtx::new(theta, h_partition(cfg)?)
}

/// Generic context for the q-calculus configuration.
pub fn bridge_q(cfg: &QConfig) -> Result<QCtx> {
    let theta = TensionSpace::difference(q_samples(cfg, BRIDGE_SAMPLES, BRIDGE_SEED))?;
    QCtx::new(theta, q_partition(cfg)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classic::{
        h_derivative, h_initial_operator, h_right_inverse, q_initial_operator, q_p_inverse,
        q_rho_inverse,
    };
    use crate::function::RealFn;
    use crate::numeric::approx_eq;

    #[test]
    fn h_bridge_matches_closed_forms() {
        let f = RealFn::new(|x: f64| x.exp() * 0.3 - x);
        for (h, s) in [(0.25, 0.0), (-0.3, 1.7), (1.0, 0.0)] {
            let cfg = HConfig::new(h, s).unwrap();
            let ctx = bridge_h(&cfg).unwrap();
            let generic_r = ctx.r_inverse_derivative(&f);
            let closed_r = h_right_inverse(&cfg, &f);
            let generic_f = ctx.initial_operator(&f);
            let closed_f = h_initial_operator(&cfg, &f);
            let generic_d = ctx.derivative(&f);
            let closed_d = h_derivative(&cfg, &f);
            for &x in ctx.samples() {
                assert!(approx_eq(generic_r.eval(x).unwrap(), closed_r.eval(x).unwrap()), "R h={h} x={x}");
                assert!(approx_eq(generic_f.eval(x).unwrap(), closed_f.eval(x).unwrap()), "F h={h} x={x}");
                assert!(approx_eq(generic_d.eval(x).unwrap(), closed_d.eval(x).unwrap()));
            }
        }
    }

    #[test]
    fn q_bridge_matches_closed_forms() {
        let f = RealFn::new(|x: f64| x.sqrt() + 1.0 / x);
        for (q, s) in [(0.5, 0.1), (0.5, 3.0), (2.0, 1.0)] {
            let cfg = QConfig::new(q, s).unwrap();
            let ctx = bridge_q(&cfg).unwrap();
            let generic_r = ctx.r_inverse_differential(&f);
            let closed_r = q_rho_inverse(&cfg, &f);
            let generic_p = ctx.r_inverse_derivative(&f);
            let closed_p = q_p_inverse(&cfg, &f);
            let g_ctx = ctx.with_scheme(q_initial_partition(&cfg, 1.0).unwrap()).unwrap();
            let generic_g = g_ctx.initial_operator(&f);
            let closed_g = q_initial_operator(&cfg, 1.0, &f).unwrap();
            for &x in ctx.samples() {
                assert!(approx_eq(generic_r.eval(x).unwrap(), closed_r.eval(x).unwrap()), "rho q={q} x={x}");
                assert!(approx_eq(generic_p.eval(x).unwrap(), closed_p.eval(x).unwrap()), "P q={q} x={x}");
                assert!(approx_eq(generic_g.eval(x).unwrap(), closed_g.eval(x).unwrap()), "G q={q} x={x}");
            }
        }
    }
}
