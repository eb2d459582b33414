//! Floating-point tolerances and lattice snapping shared by every module.

/// Relative tolerance used by all law checks.
pub const REL_TOL: f64 = 1e-9;

/// Absolute floor below which differences are treated as zero.
pub const ABS_FLOOR: f64 = 1e-12;

/// Values within this distance of an integer are snapped before flooring.
pub const SNAP_TOL: f64 = 1e-12;

/// Maximum fractional offset for two limits to count as commensurate.
pub const COMMENSURATE_TOL: f64 = 1e-9;

/// `|a - b| <= max(REL_TOL * max(|a|, |b|), ABS_FLOOR)`.
pub fn approx_eq(a: f64, b: f64) -> bool {
    approx_eq_tol(a, b, REL_TOL, ABS_FLOOR)
}

pub fn approx_eq_tol(a: f64, b: f64, rel: f64, abs: f64) -> bool {
    if a == b {
        return true;
    }
    let diff = (a - b).abs();
    diff <= (rel * a.abs().max(b.abs())).max(abs)
}

/// Relative error of `actual` against `expected`, with the absolute floor as
/// the smallest denominator.
pub fn rel_error(actual: f64, expected: f64) -> f64 {
    (actual - expected).abs() / expected.abs().max(ABS_FLOOR)
}

/// Greatest integer `<= v`, after snapping values within [`SNAP_TOL`] of an
/// integer onto that integer.
pub fn snap_floor(v: f64) -> i64 {
    let nearest = v.round();
    if (v - nearest).abs() <= SNAP_TOL {
        nearest as i64
    } else {
        v.floor() as i64
    }
}

/// Returns `Some(k)` when `v` is within [`COMMENSURATE_TOL`] of the integer `k`.
pub fn as_integer(v: f64) -> Option<i64> {
    if !v.is_finite() {
        return None;
    }
    let nearest = v.round();
    ((v - nearest).abs() < COMMENSURATE_TOL).then_some(nearest as i64)
}

/// `log_base(x)` computed as `ln(x) / ln(base)`.
pub fn log_base(x: f64, base: f64) -> f64 {
    x.ln() / base.ln()
}

/// Compensated (Neumaier) summation.
#[derive(Debug, Default, Clone, Copy)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.compensation += (self.sum - t) + v;
        } else {
            self.compensation += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snap_floor_is_true_floor_for_negatives() {
        assert_eq!(snap_floor(-0.5), -1);
        assert_eq!(snap_floor(-2.0), -2);
        assert_eq!(snap_floor(2.4), 2);
    }

    #[test]
    fn snap_floor_absorbs_lattice_noise() {
        // 0.9 / 0.3 rounds to 3.0000000000000004 in binary
        assert_eq!(snap_floor(0.9 / 0.3), 3);
        assert_eq!(snap_floor(3.0 - 1e-14), 3);
        assert_eq!(snap_floor(3.0 - 1e-9), 2);
    }

    #[test]
    fn integer_detection() {
        assert_eq!(as_integer(4.0 + 1e-12), Some(4));
        assert_eq!(as_integer(-2.0), Some(-2));
        assert_eq!(as_integer(2.5), None);
        assert_eq!(as_integer(f64::NAN), None);
    }

    #[test]
    fn approx_eq_uses_floor_near_zero() {
        assert!(approx_eq(0.0, 5e-13));
        assert!(!approx_eq(0.0, 5e-12));
        assert!(approx_eq(1e6, 1e6 + 1e-4));
        assert!(!approx_eq(1.0, 1.0 + 1e-8));
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut s = CompensatedSum::new();
        s.add(1e16);
        s.add(1.0);
        s.add(-1e16);
        assert_eq!(s.value(), 1.0);
    }
}
