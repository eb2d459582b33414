//! q-calculus on `(0, ∞)`.

use super::{check_positive, QConfig};
use crate::error::{CalcError, Result};
use crate::function::RealFn;
use crate::numeric::{as_integer, log_base, snap_floor, CompensatedSum};

/// Number of consecutive sub-tolerance terms that ends a Jackson series.
pub const JACKSON_DECAY_RUN: usize = 8;

/// `δ_q f(x) = f(qx) − f(x)`.
pub fn q_differential(cfg: &QConfig, f: &RealFn) -> RealFn {
    let (q, f) = (cfg.q(), f.clone());
    RealFn::try_new(move |x| {
        check_positive(x)?;
        Ok(f.eval(q * x)? - f.eval(x)?)
    })
}

/// `Δ_q f(x) = (f(qx) − f(x)) / ((q − 1) x)`.
pub fn q_derivative(cfg: &QConfig, f: &RealFn) -> RealFn {
    let q = cfg.q();
    let d = q_differential(cfg, f);
    RealFn::try_new(move |x| Ok(d.eval(x)? / ((q - 1.0) * x)))
}

/// `T_q f(x) = (q − 1) x f(x)`.
pub fn q_multiplier(cfg: &QConfig, f: &RealFn) -> RealFn {
    let (q, f) = (cfg.q(), f.clone());
    RealFn::try_new(move |x| Ok((q - 1.0) * x * f.eval(x)?))
}

/// The right inverse `ρ_qs` of `δ_q`.
///
/// For `q ∈ (0,1)`, with `k = ⌊log_q(s/x)⌋`:
///
/// * `x ∈ (0, s)`: `Σ_{m=1}^{−k} f(x q^{−m})`
/// * `x ∈ [s, s/q)`: `0`
/// * `x ≥ s/q`: `−Σ_{m=0}^{k−1} f(x q^m)`
///
/// For `q > 1`, with `k = ⌊log_q(x/s)⌋`:
///
/// * `x ∈ (0, s)`: `−Σ_{m=0}^{−k−1} f(x q^m)`
/// * `x ∈ [s, sq)`: `0`
/// * `x ≥ sq`: `Σ_{m=1}^{k} f(x q^{−m})`
pub fn q_rho_inverse(cfg: &QConfig, f: &RealFn) -> RealFn {
    let (q, s, f) = (cfg.q(), cfg.s(), f.clone());
    RealFn::try_new(move |x| {
        check_positive(x)?;
        let mut acc = CompensatedSum::new();
        if q < 1.0 {
            let k = snap_floor(log_base(s / x, q));
            if k < 0 {
                for m in 1..=-k {
                    acc.add(f.eval(x * q.powi(-(m as i32)))?);
                }
                Ok(acc.value())
            } else {
                for m in 0..k {
                    acc.add(f.eval(x * q.powi(m as i32))?);
                }
                Ok(-acc.value())
            }
        } else {
            let k = snap_floor(log_base(x / s, q));
            if k < 0 {
                for m in 0..-k {
                    acc.add(f.eval(x * q.powi(m as i32))?);
                }
                Ok(-acc.value())
            } else {
                for m in 1..=k {
                    acc.add(f.eval(x * q.powi(-(m as i32)))?);
                }
                Ok(acc.value())
            }
        }
    })
}

/// `P_qs = ρ_qs ∘ T_q`, a right inverse of `Δ_q`.
pub fn q_p_inverse(cfg: &QConfig, f: &RealFn) -> RealFn {
    q_rho_inverse(cfg, &q_multiplier(cfg, f))
}

/// `G_a f(x) = f(x q^{−⌊log_q(x/a)⌋})`, an initial operator of `Δ_q`.
pub fn q_initial_operator(cfg: &QConfig, a: f64, f: &RealFn) -> Result<RealFn> {
    check_positive(a)?;
    let (q, f) = (cfg.q(), f.clone());
    Ok(RealFn::try_new(move |x| {
        check_positive(x)?;
        let k = snap_floor(log_base(x / a, q));
        f.eval(x * q.powi(-(k as i32)))
    }))
}

/// Partial sums of the Jackson series `(1 − q) x Σ_{m≥0} q^m f(x q^m)`.
///
/// Summation stops once [`JACKSON_DECAY_RUN`] consecutive terms have
/// magnitude below `tol`. Reaching `max_terms`, a non-finite term, or an
/// underflowing evaluation point first yields [`CalcError::Divergent`]:
/// this particular antiderivative is unusable for `f`, which says nothing
/// about the definite integral.
pub fn jackson_integral(
    cfg: &QConfig,
    f: &RealFn,
    x: f64,
    tol: f64,
    max_terms: usize,
) -> Result<f64> {
    let q = cfg.q();
    if q >= 1.0 {
        return Err(CalcError::InvalidConfig("the Jackson series needs q in (0,1)".into()));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(CalcError::InvalidConfig("tolerance must be positive".into()));
    }
    check_positive(x)?;
    let mut acc = CompensatedSum::new();
    let mut point = x;
    let mut small_run = 0;
    for m in 0..max_terms {
        if m > 0 {
            point *= q;
        }
        if point < f64::MIN_POSITIVE {
            return Err(CalcError::Divergent);
        }
        // (1 − q) x q^m f(x q^m) = (1 − q) · point · f(point)
        let term = (1.0 - q) * point * f.eval(point)?;
        if !term.is_finite() {
            return Err(CalcError::Divergent);
        }
        acc.add(term);
        if term.abs() < tol {
            small_run += 1;
            if small_run >= JACKSON_DECAY_RUN {
                return Ok(acc.value());
            }
        } else {
            small_run = 0;
        }
    }
    Err(CalcError::Divergent)
}

/// `(G_b P_qs − G_a P_qs) f` evaluated at `a`, for limits on a common
/// q-orbit (`log_q(b/a)` an integer).
pub fn q_definite_integral(cfg: &QConfig, a: f64, b: f64, f: &RealFn) -> Result<f64> {
    check_positive(a)?;
    check_positive(b)?;
    as_integer(log_base(b / a, cfg.q())).ok_or(CalcError::NotCommensurate)?;
    let p = q_p_inverse(cfg, f);
    let upper = q_initial_operator(cfg, b, &p)?;
    let lower = q_initial_operator(cfg, a, &p)?;
    Ok(upper.eval(a)? - lower.eval(a)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(q: f64, s: f64) -> QConfig {
        QConfig::new(q, s).unwrap()
    }

    #[test]
    fn differential_examples() {
        let c = cfg(2.0, 1.0);
        let e = RealFn::new(|x| x);
        for x in [0.5, 1.0, 3.0] {
            assert_eq!(q_differential(&c, &e).eval(x).unwrap(), x);
        }
        let sq = RealFn::new(|x| x * x);
        assert_eq!(q_derivative(&c, &sq).eval(1.0).unwrap(), 3.0);
        assert_eq!(q_derivative(&c, &RealFn::constant(2.0)).eval(1.0).unwrap(), 0.0);
        assert_eq!(q_derivative(&c, &sq).eval(0.0).unwrap_err(), CalcError::DomainError);
        assert_eq!(q_derivative(&c, &sq).eval(-1.0).unwrap_err(), CalcError::DomainError);
    }

    #[test]
    fn rho_examples() {
        let one = RealFn::constant(1.0);
        let c = cfg(2.0, 1.0);
        assert_eq!(q_rho_inverse(&c, &one).eval(8.0).unwrap(), 3.0);
        assert_eq!(q_rho_inverse(&c, &one).eval(1.5).unwrap(), 0.0);
        assert_eq!(q_rho_inverse(&c, &one).eval(0.3).unwrap(), -2.0);
        let c = cfg(0.5, 1.0);
        assert_eq!(q_rho_inverse(&c, &one).eval(1.5).unwrap(), 0.0);
        assert_eq!(q_rho_inverse(&c, &one).eval(0.3).unwrap(), 2.0);
        assert_eq!(q_rho_inverse(&c, &one).eval(8.0).unwrap(), -3.0);
    }

    #[test]
    fn right_inverse_identities() {
        let f = RealFn::new(|x: f64| x.ln() + 0.3 * x);
        for q in [0.5, 2.0] {
            for s in [0.1, 1.0, 3.0] {
                let c = cfg(q, s);
                let dr = q_differential(&c, &q_rho_inverse(&c, &f));
                let dp = q_derivative(&c, &q_p_inverse(&c, &f));
                for i in 0..40 {
                    let x = 0.05 * 1.17f64.powi(i);
                    let want = f.eval(x).unwrap();
                    let tol = 1e-9 * (1.0 + want.abs());
                    assert!((dr.eval(x).unwrap() - want).abs() < tol, "rho q={q} s={s} x={x}");
                    assert!((dp.eval(x).unwrap() - want).abs() < tol, "P q={q} s={s} x={x}");
                }
            }
        }
    }

    #[test]
    fn initial_operator_examples() {
        let c = cfg(0.5, 1.0);
        let f = RealFn::new(|x: f64| x.sin());
        let g = q_initial_operator(&c, 1.0, &f).unwrap();
        assert_eq!(g.eval(1.0).unwrap(), f.eval(1.0).unwrap());
        let gg = q_initial_operator(&c, 1.0, &g).unwrap();
        for x in [0.07, 0.6, 1.3, 9.0] {
            assert!((gg.eval(x).unwrap() - g.eval(x).unwrap()).abs() < 1e-12);
            assert!((g.eval(0.5 * x).unwrap() - g.eval(x).unwrap()).abs() < 1e-12);
        }
        assert_eq!(q_initial_operator(&c, 0.0, &f).unwrap_err(), CalcError::DomainError);
    }

    #[test]
    fn jackson_examples() {
        let c = cfg(0.5, 1.0);
        assert_eq!(jackson_integral(&c, &RealFn::zero(), 1.0, 1e-15, 1000).unwrap(), 0.0);
        let v = jackson_integral(&c, &RealFn::new(|x| x), 1.0, 1e-16, 1000).unwrap();
        assert!((v - 2.0 / 3.0).abs() < 1e-14);
        let inv = RealFn::new(|x| 1.0 / x);
        assert_eq!(jackson_integral(&c, &inv, 1.0, 1e-15, 100_000).unwrap_err(), CalcError::Divergent);
        assert_eq!(jackson_integral(&c, &inv, 1.0, 1e-15, 50).unwrap_err(), CalcError::Divergent);
        assert!(jackson_integral(&cfg(2.0, 1.0), &inv, 1.0, 1e-15, 50).is_err());
    }

    #[test]
    fn jackson_is_a_q_antiderivative() {
        // Δ_q (x^2/(1+q)) = x
        let c = cfg(0.5, 1.0);
        let closed = RealFn::new(|x| x * x / 1.5);
        let d = q_derivative(&c, &closed);
        for x in [0.3, 1.0, 2.2] {
            assert!((d.eval(x).unwrap() - x).abs() < 1e-14);
        }
    }

    #[test]
    fn definite_integral_examples() {
        let c = cfg(0.5, 1.0);
        let inv = RealFn::new(|x| 1.0 / x);
        assert_eq!(q_definite_integral(&c, 2.0, 2.0, &inv).unwrap(), 0.0);
        assert!((q_definite_integral(&c, 1.0, 4.0, &inv).unwrap() - 1.0).abs() < 1e-12);
        let x = RealFn::new(|x| x);
        assert!((q_definite_integral(&c, 1.0, 4.0, &x).unwrap() - 10.0).abs() < 1e-12);
        assert_eq!(
            q_definite_integral(&c, 1.0, 3.0, &inv).unwrap_err(),
            CalcError::NotCommensurate
        );
    }
}
