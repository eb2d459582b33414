//! h-calculus on the real line.

use super::HConfig;
use crate::error::{CalcError, Result};
use crate::function::RealFn;
use crate::numeric::{approx_eq, as_integer, snap_floor, CompensatedSum};

/// `d_h f(x) = f(x + h) − f(x)`.
pub fn h_differential(cfg: &HConfig, f: &RealFn) -> RealFn {
    let (h, f) = (cfg.h(), f.clone());
    RealFn::try_new(move |x| Ok(f.eval(x + h)? - f.eval(x)?))
}

/// `D_h f(x) = (f(x + h) − f(x)) / h`.
pub fn h_derivative(cfg: &HConfig, f: &RealFn) -> RealFn {
    let h = cfg.h();
    h_differential(cfg, f).scale(1.0 / h)
}

/// The right inverse `R_hs` of `D_h`.
///
/// For `h > 0`, with `k = ⌊(x − s)/h⌋`:
///
/// * `x < s`: `−Σ_{m=0}^{−k−1} h f(x + m h)`
/// * `x ∈ [s, s + h)`: `0`
/// * `x ≥ s + h`: `Σ_{m=1}^{k} h f(x − m h)`
///
/// For `h < 0`, with `k = ⌊(x − s)/(−h)⌋`:
///
/// * `x < s`: `Σ_{m=1}^{−k} h f(x − m h)`
/// * `x ∈ [s, s − h)`: `0`
/// * `x ≥ s − h`: `−Σ_{m=0}^{k−1} h f(x + m h)`
pub fn h_right_inverse(cfg: &HConfig, f: &RealFn) -> RealFn {
    let (h, s, f) = (cfg.h(), cfg.s(), f.clone());
    RealFn::try_new(move |x| {
        let k = snap_floor((x - s) / h.abs());
        let mut acc = CompensatedSum::new();
        if h > 0.0 {
            if k < 0 {
                for m in 0..-k {
                    acc.add(h * f.eval(x + m as f64 * h)?);
                }
                Ok(-acc.value())
            } else {
                for m in 1..=k {
                    acc.add(h * f.eval(x - m as f64 * h)?);
                }
                Ok(acc.value())
            }
        } else if k < 0 {
            for m in 1..=-k {
                acc.add(h * f.eval(x - m as f64 * h)?);
            }
            Ok(acc.value())
        } else {
            for m in 0..k {
                acc.add(h * f.eval(x + m as f64 * h)?);
            }
            Ok(-acc.value())
        }
    })
}

/// `F_hs f(x) = f(x − ⌊(x − s)/|h|⌋ |h|)`, the initial operator matching
/// [`h_right_inverse`].
pub fn h_initial_operator(cfg: &HConfig, f: &RealFn) -> RealFn {
    let (step, s, f) = (cfg.h().abs(), cfg.s(), f.clone());
    RealFn::try_new(move |x| f.eval(x - snap_floor((x - s) / step) as f64 * step))
}

fn lattice_steps(cfg: &HConfig, a: f64, b: f64) -> Result<i64> {
    as_integer((b - a) / cfg.h()).ok_or(CalcError::NotCommensurate)
}

/// The definite h-integral as a finite sum. With `k = (b − a)/h`:
///
/// * `k > 0`: `h (f(a) + f(a + h) + … + f(b − h))`
/// * `k = 0`: `0`
/// * `k < 0`: `−h (f(b) + f(b + h) + … + f(a − h))`
///
/// For `h > 0` the sign of `k` is the sign of `b − a`.
pub fn h_definite_integral_direct(cfg: &HConfig, a: f64, b: f64, f: &RealFn) -> Result<f64> {
    let h = cfg.h();
    let k = lattice_steps(cfg, a, b)?;
    let mut acc = CompensatedSum::new();
    if k > 0 {
        for j in 0..k {
            acc.add(f.eval(a + j as f64 * h)?);
        }
        Ok(h * acc.value())
    } else if k < 0 {
        for j in 0..-k {
            acc.add(f.eval(b + j as f64 * h)?);
        }
        Ok(-h * acc.value())
    } else {
        Ok(0.0)
    }
}

/// `(F_hb R_h0 − F_ha R_h0) f` evaluated at `a`.
pub fn h_definite_integral_algebraic(cfg: &HConfig, a: f64, b: f64, f: &RealFn) -> Result<f64> {
    lattice_steps(cfg, a, b)?;
    let r = h_right_inverse(&cfg.with_s(0.0)?, f);
    let upper = h_initial_operator(&cfg.with_s(b)?, &r);
    let lower = h_initial_operator(&cfg.with_s(a)?, &r);
    Ok(upper.eval(a)? - lower.eval(a)?)
}

/// Definite h-integral over commensurate limits, computed both as the
/// direct sum and through initial operators; the two must agree.
pub fn h_definite_integral(cfg: &HConfig, a: f64, b: f64, f: &RealFn) -> Result<f64> {
    let direct = h_definite_integral_direct(cfg, a, b, f)?;
    let algebraic = h_definite_integral_algebraic(cfg, a, b, f)?;
    if !approx_eq(direct, algebraic) {
        return Err(CalcError::ContractViolation(format!(
            "direct sum {direct} differs from initial-operator form {algebraic}"
        )));
    }
    Ok(direct)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(h: f64, s: f64) -> HConfig {
        HConfig::new(h, s).unwrap()
    }

    fn sq() -> RealFn {
        RealFn::new(|x| x * x)
    }

    #[test]
    fn differential_and_derivative() {
        let c = cfg(0.25, 0.0);
        let e = RealFn::new(|x| x);
        for x in [-3.0, 0.0, 2.5] {
            assert_eq!(h_differential(&c, &e).eval(x).unwrap(), 0.25);
        }
        assert_eq!(h_derivative(&c, &sq()).eval(1.0).unwrap(), 2.25);
        let k = RealFn::constant(4.0);
        assert_eq!(h_differential(&c, &k).eval(1.0).unwrap(), 0.0);
        assert_eq!(h_derivative(&c, &k).eval(1.0).unwrap(), 0.0);
    }

    #[test]
    fn right_inverse_zero_zone() {
        let one = RealFn::constant(1.0);
        assert_eq!(h_right_inverse(&cfg(0.25, 0.0), &one).eval(0.1).unwrap(), 0.0);
        // h < 0 keeps the zero zone [s, s + |h|)
        let neg = cfg(-0.3, 1.0);
        assert_eq!(h_right_inverse(&neg, &one).eval(1.0).unwrap(), 0.0);
        assert_eq!(h_right_inverse(&neg, &one).eval(1.29).unwrap(), 0.0);
        assert_ne!(h_right_inverse(&neg, &one).eval(0.9).unwrap(), 0.0);
    }

    #[test]
    fn right_inverse_direct_sum() {
        let one = RealFn::constant(1.0);
        assert_eq!(h_right_inverse(&cfg(0.25, 0.0), &one).eval(0.6).unwrap(), 0.5);
        assert_eq!(h_right_inverse(&cfg(0.25, 0.0), &one).eval(-0.6).unwrap(), -0.75);
    }

    #[test]
    fn right_inverse_identity_both_signs() {
        let f = RealFn::new(|x: f64| (1.3 * x).sin() + 0.2 * x);
        for h in [0.3, -0.3] {
            let c = cfg(h, 0.4);
            let dr = h_derivative(&c, &h_right_inverse(&c, &f));
            for i in 0..50 {
                let x = -5.0 + 0.213 * i as f64;
                let (lhs, rhs) = (dr.eval(x).unwrap(), f.eval(x).unwrap());
                assert!((lhs - rhs).abs() < 1e-9 * (1.0 + rhs.abs()), "h={h} x={x}");
            }
        }
    }

    #[test]
    fn initial_operator_examples() {
        let c = cfg(1.0, 0.0);
        let f = RealFn::new(|x| x);
        assert!((h_initial_operator(&c, &f).eval(2.7).unwrap() - 0.7).abs() < 1e-12);
        let periodic = RealFn::new(|x: f64| (2.0 * std::f64::consts::PI * x).cos());
        let fp = h_initial_operator(&c, &periodic);
        for x in [-1.3, 0.2, 4.9] {
            assert!((fp.eval(x).unwrap() - periodic.eval(x).unwrap()).abs() < 1e-9);
        }
        let c = cfg(-0.3, 1.7);
        let ff = h_initial_operator(&c, &sq());
        for x in [-2.0, 0.05, 3.3] {
            assert!((ff.eval(x - 0.3).unwrap() - ff.eval(x).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn definite_integral_examples() {
        let c = cfg(0.25, 0.0);
        assert_eq!(h_definite_integral(&c, 0.5, 0.5, &sq()).unwrap(), 0.0);
        assert_eq!(h_definite_integral(&c, 0.0, 1.0, &sq()).unwrap(), 0.21875);
        assert_eq!(h_definite_integral(&c, 1.0, 0.0, &sq()).unwrap(), -0.21875);
        let err = h_definite_integral(&c, 0.0, 0.3, &sq()).unwrap_err();
        assert_eq!(err, CalcError::NotCommensurate);
    }

    #[test]
    fn definite_integral_negative_step_routes_agree() {
        let c = cfg(-0.25, 0.0);
        // right-endpoint sum 0.25 (f(.25) + f(.5) + f(.75) + f(1))
        let v = h_definite_integral(&c, 0.0, 1.0, &sq()).unwrap();
        assert!((v - 0.46875).abs() < 1e-15);
        let w = h_definite_integral(&c, 1.0, 0.0, &sq()).unwrap();
        assert!((w + 0.46875).abs() < 1e-15);
    }
}
