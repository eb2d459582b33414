//! Closed-form operators checked against literal transcriptions of their
//! branch formulas, written independently of the library code paths.

use qcalc_core::classic::{
    h_definite_integral, h_initial_operator, h_right_inverse, jackson_integral,
    q_definite_integral, q_initial_operator, q_p_inverse, q_rho_inverse, HConfig, QConfig,
};
use qcalc_core::RealFn;

type Native = fn(f64) -> f64;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

/// Right inverse of the forward h-difference quotient, three branches per sign of h.
fn r_hs_oracle(h: f64, s: f64, f: impl Fn(f64) -> f64, x: f64) -> f64 {
    if h < 0.0 {
        let k = ((x - s) / -h).floor() as i64;
        if x < s {
            (1..=-k).map(|m| h * f(x - m as f64 * h)).sum()
        } else if x < s - h {
            0.0
        } else {
            -(0..k).map(|m| h * f(x + m as f64 * h)).sum::<f64>()
        }
    } else {
        let k = ((x - s) / h).floor() as i64;
        if x < s {
            -(0..-k).map(|m| h * f(x + m as f64 * h)).sum::<f64>()
        } else if x < s + h {
            0.0
        } else {
            (1..=k).map(|m| h * f(x - m as f64 * h)).sum()
        }
    }
}

fn f_hs_oracle(h: f64, s: f64, f: impl Fn(f64) -> f64, x: f64) -> f64 {
    f(x - ((x - s) / h.abs()).floor() * h.abs())
}

fn rho_qs_oracle(q: f64, s: f64, f: impl Fn(f64) -> f64, x: f64) -> f64 {
    if q < 1.0 {
        let k = ((s / x).ln() / q.ln()).floor() as i64;
        if x < s {
            (1..=-k).map(|m| f(x * q.powi(-(m as i32)))).sum()
        } else if x < s / q {
            0.0
        } else {
            -(0..k).map(|m| f(x * q.powi(m as i32))).sum::<f64>()
        }
    } else {
        let k = ((x / s).ln() / q.ln()).floor() as i64;
        if x < s {
            -(0..-k).map(|m| f(x * q.powi(m as i32))).sum::<f64>()
        } else if x < s * q {
            0.0
        } else {
            (1..=k).map(|m| f(x * q.powi(-(m as i32)))).sum()
        }
    }
}

/// The right inverse of the q-derivative, summands written out in full.
fn p_qs_oracle(q: f64, s: f64, f: impl Fn(f64) -> f64, x: f64) -> f64 {
    if q < 1.0 {
        let k = ((s / x).ln() / q.ln()).floor() as i64;
        if x < s {
            (1..=-k)
                .map(|m| {
                    let qm = q.powi(-(m as i32));
                    (q - 1.0) * x * qm * f(x * qm)
                })
                .sum()
        } else if x < s / q {
            0.0
        } else {
            -(0..k)
                .map(|m| {
                    let qm = q.powi(m as i32);
                    (q - 1.0) * x * qm * f(x * qm)
                })
                .sum::<f64>()
        }
    } else {
        let k = ((x / s).ln() / q.ln()).floor() as i64;
        if x < s {
            -(0..-k)
                .map(|m| {
                    let qm = q.powi(m as i32);
                    (q - 1.0) * x * qm * f(x * qm)
                })
                .sum::<f64>()
        } else if x < s * q {
            0.0
        } else {
            (1..=k)
                .map(|m| {
                    let qm = q.powi(-(m as i32));
                    (q - 1.0) * x * qm * f(x * qm)
                })
                .sum()
        }
    }
}

fn g_a_oracle(q: f64, a: f64, f: impl Fn(f64) -> f64, x: f64) -> f64 {
    let k = ((x / a).ln() / q.ln()).floor();
    f(x * q.powf(-k))
}

fn test_fn(x: f64) -> f64 {
    (0.7 * x).sin() + 0.1 * x * x
}

fn q_test_fn(x: f64) -> f64 {
    x.sqrt() - 1.0 / (1.0 + x)
}

/// Points avoiding cell boundaries, where float floors of the oracle and
/// the library may legitimately differ.
fn h_points(h: f64, s: f64) -> Vec<f64> {
    (-40..40)
        .map(|i| s + (i as f64 + 0.37) * h.abs() / 3.0)
        .collect()
}

fn q_points(q: f64, s: f64) -> Vec<f64> {
    let r = q.max(1.0 / q);
    (-30..30).map(|i| s * r.powf(i as f64 / 4.0 + 0.11)).collect()
}

#[test]
fn h_right_inverse_matches_transcription() {
    for (h, s) in [(0.25, 0.0), (-0.3, 1.7), (1.0, 1.7), (-1.0, 0.0)] {
        let cfg = HConfig::new(h, s).unwrap();
        let r = h_right_inverse(&cfg, &RealFn::new(test_fn));
        let fh = h_initial_operator(&cfg, &RealFn::new(test_fn));
        for x in h_points(h, s) {
            let want = r_hs_oracle(h, s, test_fn, x);
            assert!(close(r.eval(x).unwrap(), want, 1e-12), "R h={h} s={s} x={x}");
            let want = f_hs_oracle(h, s, test_fn, x);
            assert!(close(fh.eval(x).unwrap(), want, 1e-12), "F h={h} s={s} x={x}");
        }
    }
}

#[test]
fn q_right_inverses_match_transcription() {
    for (q, s) in [(0.5, 0.1), (0.5, 1.0), (0.5, 3.0), (2.0, 1.0), (3.0, 0.1)] {
        let cfg = QConfig::new(q, s).unwrap();
        let f = RealFn::new(q_test_fn);
        let rho = q_rho_inverse(&cfg, &f);
        let p = q_p_inverse(&cfg, &f);
        let g = q_initial_operator(&cfg, 0.7, &f).unwrap();
        for x in q_points(q, s) {
            assert!(close(rho.eval(x).unwrap(), rho_qs_oracle(q, s, q_test_fn, x), 1e-12), "rho q={q} s={s} x={x}");
            assert!(close(p.eval(x).unwrap(), p_qs_oracle(q, s, q_test_fn, x), 1e-12), "P q={q} s={s} x={x}");
            assert!(close(g.eval(x).unwrap(), g_a_oracle(q, 0.7, q_test_fn, x), 1e-12), "G q={q} x={x}");
        }
    }
}

#[test]
fn h_definite_integral_is_a_riemann_like_sum() {
    let h = 0.25;
    let cfg = HConfig::new(h, 0.0).unwrap();
    let cases: [(&str, Native); 3] = [("x^2", |x| x * x), ("exp", f64::exp), ("sin", f64::sin)];
    for (name, f) in cases {
        for (a, b) in [(0.0, 1.0), (1.0, 0.0), (0.0, 0.0), (-0.5, 1.25)] {
            let k = ((b - a) / h).round() as i64;
            let want = if k >= 0 {
                (0..k).map(|j| h * f(a + j as f64 * h)).sum::<f64>()
            } else {
                -(0..-k).map(|j| h * f(b + j as f64 * h)).sum::<f64>()
            };
            let got = h_definite_integral(&cfg, a, b, &RealFn::new(f)).unwrap();
            assert!((got - want).abs() <= 1e-12, "{name} [{a},{b}] {got} vs {want}");
        }
    }
    let sq = RealFn::new(|x| x * x);
    assert!((h_definite_integral(&cfg, 0.0, 1.0, &sq).unwrap() - 0.21875).abs() <= 1e-12);
}

#[test]
fn q_definite_integral_matches_finite_sum() {
    // b = a q^k with k < 0:  (1 - q) a Σ_{m=k}^{-1} q^m f(a q^m)
    let q = 0.5;
    let cfg = QConfig::new(q, 1.0).unwrap();
    let cases: [fn(f64) -> f64; 3] = [|x| 1.0 / x, |x| x, |x: f64| x.ln()];
    for f in cases {
        for a in [0.3, 1.0, 2.5] {
            for k in [-1i32, -2, -4] {
                let b = a * q.powi(k);
                let want: f64 = (1.0 - q) * a * (k..0).map(|m| q.powi(m) * f(a * q.powi(m))).sum::<f64>();
                let got = q_definite_integral(&cfg, a, b, &RealFn::new(f)).unwrap();
                assert!(close(got, want, 1e-12), "a={a} k={k} {got} vs {want}");
            }
        }
    }
    let inv = RealFn::new(|x| 1.0 / x);
    assert!((q_definite_integral(&cfg, 1.0, 4.0, &inv).unwrap() - 1.0).abs() <= 1e-12);
}

#[test]
fn jackson_series_closed_form() {
    // (1 - q) x Σ q^m (x q^m) = x^2 / (1 + q)
    for q in [0.3, 0.5, 0.9] {
        let cfg = QConfig::new(q, 1.0).unwrap();
        for x in [0.2, 1.0, 3.0] {
            let got = jackson_integral(&cfg, &RealFn::new(|t| t), x, 1e-17, 1_000_000).unwrap();
            assert!(close(got, x * x / (1.0 + q), 1e-12), "q={q} x={x}");
        }
    }
}
