//! Runs the structural and operator laws against one h- or q-configuration
//! and reports each law as a named pass/fail outcome.

use crate::calculus::QCtx;
use crate::classic::{
    bridge_h, bridge_q, h_definite_integral_algebraic, h_definite_integral_direct, h_derivative,
    h_differential, h_initial_operator, h_partition, h_right_inverse, jackson_integral,
    q_definite_integral, q_derivative, q_differential, q_initial_operator, q_initial_partition,
    q_p_inverse, q_partition, q_rho_inverse, HConfig, QConfig,
};
use crate::error::Result;
use crate::function::RealFn;
use crate::numeric::approx_eq_tol;
use crate::tension::TensionSpace;

const TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn from_result(name: &str, r: Result<Option<String>>) -> Self {
        match r {
            Ok(None) => Self { name: name.into(), passed: true, detail: String::new() },
            Ok(Some(detail)) => Self { name: name.into(), passed: false, detail },
            Err(e) => Self { name: name.into(), passed: false, detail: e.to_string() },
        }
    }
}

fn close(a: f64, b: f64) -> bool {
    approx_eq_tol(a, b, TOL, TOL)
}

/// First point where `lhs` and `rhs` disagree, if any.
fn compare(points: &[f64], lhs: &RealFn, rhs: &RealFn) -> Result<Option<String>> {
    for &x in points {
        let (a, b) = (lhs.eval(x)?, rhs.eval(x)?);
        if !close(a, b) {
            return Ok(Some(format!("at x={x}: {a} vs {b}")));
        }
    }
    Ok(None)
}

fn all_of(checks: impl IntoIterator<Item = Result<Option<String>>>) -> Result<Option<String>> {
    for c in checks {
        if let Some(d) = c? {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

fn tension_laws(theta: &TensionSpace, ctx: &QCtx) -> Vec<CheckOutcome> {
    let step = ctx.scheme().tau().after(&ctx.sigma().inverse());
    let pts = theta.samples().to_vec();
    vec![
        CheckOutcome::from_result("tension.cocycle_skew", theta.validate().map(|_| None)),
        CheckOutcome::from_result(
            "tension.step_directed",
            Ok(match theta.check_directed(&step, &pts).is_directed() {
                true => None,
                false => Some("step is not directed".into()),
            }),
        ),
        CheckOutcome::from_result(
            "tension.homogeneity_positive",
            theta.check_homogeneity(&step, &pts).map(|t| match t {
                Some(t) if t > 0.0 => None,
                Some(t) => Some(format!("coefficient {t}")),
                None => Some("step is not homogeneous".into()),
            }),
        ),
        CheckOutcome::from_result(
            "tension.no_fixed_points",
            all_of(pts.iter().take(16).map(|&p| {
                theta
                    .no_fixed_points(&step, p, 32)
                    .map(|ok| (!ok).then(|| format!("fixed point near {p}")))
            })),
        ),
    ]
}

fn partition_laws(ctx: &QCtx) -> CheckOutcome {
    let report = ctx.scheme().validate(ctx.samples());
    let detail = report.violations.first().map(|v| format!("{v:?}"));
    CheckOutcome::from_result("partition.shift_law", Ok(detail))
}

fn qcore_laws(ctx: &QCtx, probes: &[RealFn]) -> Vec<CheckOutcome> {
    let pts = ctx.samples();
    let mut out = Vec::new();
    out.push(CheckOutcome::from_result(
        "qcore.d_r_identity",
        all_of(probes.iter().map(|f| compare(pts, &ctx.differential(&ctx.r_inverse_differential(f)), f))),
    ));
    out.push(CheckOutcome::from_result(
        "qcore.D_R_identity",
        all_of(probes.iter().map(|f| compare(pts, &ctx.derivative(&ctx.r_inverse_derivative(f)), f))),
    ));
    out.push(CheckOutcome::from_result(
        "qcore.F_idempotent",
        all_of(probes.iter().map(|f| {
            let ff = ctx.initial_operator(f);
            compare(pts, &ctx.initial_operator(&ff), &ff)
        })),
    ));
    out.push(CheckOutcome::from_result(
        "qcore.F_R_zero",
        all_of(probes.iter().map(|f| {
            compare(pts, &ctx.initial_operator(&ctx.r_inverse_derivative(f)), &RealFn::zero())
        })),
    ));
    out.push(CheckOutcome::from_result(
        "qcore.F_eq_I_minus_RD",
        all_of(probes.iter().map(|f| {
            let rd = ctx.r_inverse_derivative(&ctx.derivative(f));
            compare(pts, &ctx.initial_operator(f), &f.sub(&rd))
        })),
    ));
    out.push(CheckOutcome::from_result(
        "qcore.F_image_constant",
        all_of(probes.iter().map(|f| {
            ctx.is_constant(&ctx.initial_operator(f))
                .map(|ok| (!ok).then(|| "F f is not invariant under the step".to_string()))
        })),
    ));
    let delta = ctx.differential_op();
    let pairs: Vec<(&RealFn, &RealFn)> = probes.iter().zip(probes.iter().rev()).collect();
    let residual_check = |name: &str, rule: &dyn Fn(&RealFn, &RealFn, f64) -> Result<f64>| {
        CheckOutcome::from_result(
            name,
            all_of(pairs.iter().flat_map(|&(f, g)| {
                pts.iter().map(move |&p| {
                    let (fp, gp) = (f.eval(p)?.abs(), g.eval(p)?.abs());
                    let r = rule(f, g, p)?;
                    Ok((r.abs() > TOL * (1.0 + fp * gp)).then(|| format!("residual {r} at x={p}")))
                })
            })),
        )
    };
    out.push(residual_check("qcore.leibniz", &|f, g, p| ctx.leibniz_residual(&delta, f, g, p)));
    out.push(residual_check("qcore.ab_combination", &|f, g, p| {
        ctx.ab_combination_residual(&delta, f, g, 0.3, p)
    }));
    out.push(residual_check("qcore.symmetric_rule", &|f, g, p| {
        ctx.symmetric_rule_residual(&delta, f, g, p)
    }));
    out.push(residual_check("qcore.order1_rule", &|f, g, p| ctx.order1_residual(&delta, f, g, p)));
    out
}

fn h_probes() -> Vec<RealFn> {
    vec![
        RealFn::new(|x| x * x),
        RealFn::new(|x: f64| (0.25 * x).exp()),
        RealFn::new(f64::sin),
        RealFn::new(|x| 1.0 - 0.5 * x),
    ]
}

fn q_probes() -> Vec<RealFn> {
    vec![
        RealFn::new(|x| x),
        RealFn::new(f64::ln),
        RealFn::new(f64::sqrt),
        RealFn::new(|x| 1.0 / (1.0 + x)),
    ]
}

/// Every law suite for the h-calculus configuration `cfg`.
pub fn check_h(cfg: &HConfig) -> Vec<CheckOutcome> {
    let ctx = match bridge_h(cfg) {
        Ok(ctx) => ctx,
        Err(e) => return vec![CheckOutcome::from_result("setup", Err(e))],
    };
    let probes = h_probes();
    let mut out = tension_laws(ctx.theta(), &ctx);
    out.push(partition_laws(&ctx));
    out.extend(qcore_laws(&ctx, &probes));
    let pts = ctx.samples();

    out.push(CheckOutcome::from_result(
        "classic.h_right_inverse",
        all_of(probes.iter().map(|f| {
            all_of([
                compare(pts, &h_derivative(cfg, &h_right_inverse(cfg, f)), f),
                compare(pts, &ctx.r_inverse_derivative(f), &h_right_inverse(cfg, f)),
            ])
        })),
    ));
    out.push(CheckOutcome::from_result(
        "classic.h_initial_operator",
        all_of(probes.iter().map(|f| {
            let fh = h_initial_operator(cfg, f);
            all_of([
                compare(pts, &ctx.initial_operator(f), &fh),
                compare(pts, &h_differential(cfg, &fh), &RealFn::zero()),
            ])
        })),
    ));
    out.push(CheckOutcome::from_result(
        "classic.h_definite_integral",
        all_of(probes.iter().flat_map(|f| {
            let (s, h) = (cfg.s(), cfg.h());
            [(s, s + 4.0 * h), (s + 3.0 * h, s - h), (s, s)].map(|(a, b)| {
                let direct = h_definite_integral_direct(cfg, a, b, f)?;
                let algebraic = h_definite_integral_algebraic(cfg, a, b, f)?;
                Ok((!close(direct, algebraic)).then(|| format!("[{a}, {b}]: {direct} vs {algebraic}")))
            })
        })),
    ));
    out.push(CheckOutcome::from_result(
        "classic.h_partition_builder",
        h_partition(cfg).map(|p| p.validate(pts).violations.first().map(|v| format!("{v:?}"))),
    ));
    out
}

/// Every law suite for the q-calculus configuration `cfg`.
pub fn check_q(cfg: &QConfig) -> Vec<CheckOutcome> {
    let ctx = match bridge_q(cfg) {
        Ok(ctx) => ctx,
        Err(e) => return vec![CheckOutcome::from_result("setup", Err(e))],
    };
    let probes = q_probes();
    let mut out = Vec::new();
    // Directedness and homogeneity of x -> qx are properties of the log tension.
    match TensionSpace::logarithmic(ctx.samples().to_vec()) {
        Ok(log_theta) => out.extend(tension_laws(&log_theta, &ctx)),
        Err(e) => out.push(CheckOutcome::from_result("tension.setup", Err(e))),
    }
    out.push(partition_laws(&ctx));
    out.extend(qcore_laws(&ctx, &probes));
    let pts = ctx.samples();

    out.push(CheckOutcome::from_result(
        "classic.q_right_inverse",
        all_of(probes.iter().map(|f| {
            all_of([
                compare(pts, &q_differential(cfg, &q_rho_inverse(cfg, f)), f),
                compare(pts, &q_derivative(cfg, &q_p_inverse(cfg, f)), f),
                compare(pts, &ctx.r_inverse_differential(f), &q_rho_inverse(cfg, f)),
                compare(pts, &ctx.r_inverse_derivative(f), &q_p_inverse(cfg, f)),
            ])
        })),
    ));
    out.push(CheckOutcome::from_result(
        "classic.q_initial_operator",
        (|| {
            let g_ctx = ctx.with_scheme(q_initial_partition(cfg, cfg.s())?)?;
            all_of(probes.iter().map(|f| {
                let g = q_initial_operator(cfg, cfg.s(), f)?;
                all_of([
                    compare(pts, &g_ctx.initial_operator(f), &g),
                    compare(pts, &q_differential(cfg, &g), &RealFn::zero()),
                ])
            }))
        })(),
    ));
    out.push(CheckOutcome::from_result(
        "classic.q_definite_integral_scaling",
        (|| {
            let f = RealFn::new(|x| 1.0 / x);
            let (a, b) = (cfg.s(), cfg.s() * cfg.q().powi(3));
            let base = q_definite_integral(cfg, a, b, &f)?;
            let scaled = q_definite_integral(cfg, 3.0 * a, 3.0 * b, &f)?;
            Ok((!close(base, scaled)).then(|| format!("{base} vs {scaled}")))
        })(),
    ));
    if cfg.q() < 1.0 {
        out.push(CheckOutcome::from_result(
            "classic.jackson_consistency",
            (|| {
                let f = RealFn::new(|x| x);
                let (a, b) = (cfg.s(), cfg.s() / (cfg.q() * cfg.q()));
                let j = jackson_integral(cfg, &f, b, 1e-16, 100_000)?
                    - jackson_integral(cfg, &f, a, 1e-16, 100_000)?;
                let d = q_definite_integral(cfg, a, b, &f)?;
                Ok((!close(j, d)).then(|| format!("{j} vs {d}")))
            })(),
        ));
    }
    out.push(CheckOutcome::from_result(
        "classic.q_partition_builder",
        q_partition(cfg).map(|p| p.validate(pts).violations.first().map(|v| format!("{v:?}"))),
    ));
    out
}
