//! Grid scans of the analytic inequalities the bounds depend on.
//!
//! Each suite evaluates `lhs - rhs` style violation amounts (positive when the
//! inequality fails) at every grid point. Rows are processed in parallel and
//! merged in order, so reports do not depend on the thread count.

use rayon::prelude::*;

use crate::bounds::d_asym_raw;
use crate::error::{Error, Result};
use crate::info::{
    beta_raw, big_phi_raw, conv_raw, g_raw, hb_raw, kappa_raw, mgl_slope_at, nu_raw, rate_raw,
    small_phi_raw,
};
use crate::scalar::grid;

/// Suite identifiers in report order.
pub const SUITES: [&str; 6] = [
    "mgl-lin",
    "g-convex",
    "beta-props",
    "theta-dec",
    "f-lt-1",
    "phi-deriv-le-1",
];

const EDGE: f64 = 1e-4;
const RHO_MAX: f64 = 3.0;

/// Outcome of one suite.
#[derive(Debug, Clone, PartialEq)]
pub struct ViolationReport {
    pub inequality: String,
    pub grid: String,
    /// Largest violation amount on the grid. Negative when the inequality
    /// holds everywhere, in which case it is minus the tightest slack.
    pub max_violation: f64,
    /// Grid coordinates of `max_violation`.
    pub argmax: Vec<f64>,
    /// Number of points violating by more than the tolerance.
    pub violations: u64,
}

#[derive(Debug, Clone)]
struct Acc {
    max: f64,
    arg: Vec<f64>,
    count: u64,
}

impl Acc {
    fn new() -> Self {
        Self {
            max: f64::NEG_INFINITY,
            arg: Vec::new(),
            count: 0,
        }
    }

    fn push(&mut self, v: f64, tol: f64, at: impl FnOnce() -> Vec<f64>) {
        if v > tol || v.is_nan() {
            self.count += 1;
        }
        if v > self.max || (v.is_nan() && !self.max.is_nan()) {
            self.max = v;
            self.arg = at();
        }
    }

    /// Earlier accumulators win ties.
    fn merge(mut self, other: Acc) -> Acc {
        self.count += other.count;
        if other.max > self.max || (other.max.is_nan() && !self.max.is_nan()) {
            self.max = other.max;
            self.arg = other.arg;
        }
        self
    }
}

fn scan_rows<F>(rows: &[f64], row: F) -> Acc
where
    F: Fn(f64, &mut Acc) + Sync,
{
    rows.par_iter()
        .map(|&r| {
            let mut acc = Acc::new();
            row(r, &mut acc);
            acc
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Acc::new(), Acc::merge)
}

/// `h_b(delta2 * u) - [h_b(delta1 * delta2) + g(delta1 * delta2)/g(delta1) (h_b(u) - h_b(delta1))]`,
/// the slack of the tangent-line bound on the MGL function at `h_b(delta1)`.
pub fn mgl_lin_slack(delta1: f64, delta2: f64, u: f64) -> f64 {
    let c = conv_raw(delta1, delta2);
    let slope = g_raw(c) / g_raw(delta1);
    hb_raw(conv_raw(delta2, u)) - (hb_raw(c) + slope * (hb_raw(u) - hb_raw(delta1)))
}

fn mgl_lin(axis: &[f64], tol: f64) -> Acc {
    let hu: Vec<f64> = axis.iter().map(|&u| hb_raw(u)).collect();
    scan_rows(axis, |d1, acc| {
        let h1 = hb_raw(d1);
        for &d2 in axis {
            let c = conv_raw(d1, d2);
            let (hc, slope) = (hb_raw(c), g_raw(c) / g_raw(d1));
            for (&u, &h) in axis.iter().zip(&hu) {
                let v = hc + slope * (h - h1) - hb_raw(conv_raw(d2, u));
                acc.push(v, tol, || vec![d1, d2, u]);
            }
        }
    })
}

/// `-(f(t - s) - 2 f(t) + f(t + s))` along the axis interior.
fn second_differences(
    axis: &[f64],
    f: impl Fn(f64) -> f64,
    tol: f64,
    acc: &mut Acc,
    coords: impl Fn(f64) -> Vec<f64>,
) {
    let vals: Vec<f64> = axis.iter().map(|&t| f(t)).collect();
    for i in 1..vals.len().saturating_sub(1) {
        let v = -(vals[i - 1] - 2.0 * vals[i] + vals[i + 1]);
        acc.push(v, tol, || coords(axis[i]));
    }
}

fn g_convex(axis: &[f64], tol: f64) -> Acc {
    let mut acc = Acc::new();
    second_differences(axis, g_raw, tol, &mut acc, |t| vec![t]);
    acc
}

fn beta_props(axis: &[f64], tol: f64) -> Acc {
    scan_rows(axis, |q, acc| {
        for &t in axis {
            let phi_gap = q * kappa_raw(t) * nu_raw(q, t) - small_phi_raw(q, t);
            acc.push(phi_gap, tol, || vec![q, t]);
            let upper_gap = beta_raw(q, t) - q * g_raw(t);
            acc.push(upper_gap, tol, || vec![q, t]);
        }
        second_differences(axis, |t| beta_raw(q, t), tol, acc, |t| vec![q, t]);
    })
}

fn theta_dec(axis: &[f64], tol: f64) -> Acc {
    let theta: Vec<f64> = axis.iter().map(|&t| big_phi_raw(t) * rate_raw(t)).collect();
    let mut acc = Acc::new();
    for i in 1..theta.len() {
        acc.push(theta[i] - theta[i - 1], tol, || vec![axis[i - 1], axis[i]]);
    }
    acc
}

fn f_lt_1(rhos: &[f64], axis: &[f64], tol: f64) -> Acc {
    scan_rows(rhos, |rho, acc| {
        for &delta in axis {
            let d = d_asym_raw(rho, delta);
            if d <= 0.0 {
                continue;
            }
            let f = big_phi_raw(delta) / (rho * big_phi_raw(d));
            acc.push(f - 1.0, tol, || vec![rho, delta]);
        }
    })
}

fn phi_deriv_le_1(axis: &[f64], tol: f64) -> Acc {
    scan_rows(axis, |delta, acc| {
        for &u in axis {
            acc.push(mgl_slope_at(delta, u) - 1.0, tol, || vec![delta, u]);
        }
    })
}

/// Runs the named suites over `[1e-4, 1/2 - 1e-4]` per probability axis
/// (and `rho` in `(1, 3]` for `f-lt-1`) at spacing `grid_step`.
pub fn verify_inequalities(
    suites: &[&str],
    grid_step: f64,
    tol: f64,
) -> Result<Vec<ViolationReport>> {
    if !(grid_step > 0.0 && grid_step <= 0.1) {
        return Err(Error::Invalid(format!(
            "grid step {grid_step} must lie in (0, 0.1]"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::Invalid(format!("tolerance {tol} must be positive")));
    }
    if let Some(bad) = suites.iter().find(|s| !SUITES.contains(s)) {
        return Err(Error::UnknownSuite(bad.to_string()));
    }
    let axis = grid(EDGE, 0.5 - EDGE, grid_step);
    let box_desc = |names: &str| format!("{names} in [{EDGE}, {}] step {grid_step}", 0.5 - EDGE);
    suites
        .iter()
        .map(|&name| {
            let (acc, desc) = match name {
                "mgl-lin" => (mgl_lin(&axis, tol), box_desc("delta1, delta2, u")),
                "g-convex" => (g_convex(&axis, tol), box_desc("t")),
                "beta-props" => (beta_props(&axis, tol), box_desc("q, t")),
                "theta-dec" => (theta_dec(&axis, tol), box_desc("t")),
                "f-lt-1" => {
                    let rhos: Vec<f64> =
                        grid(1.0, RHO_MAX, grid_step).into_iter().skip(1).collect();
                    (
                        f_lt_1(&rhos, &axis, tol),
                        format!(
                            "rho in (1, {RHO_MAX}] step {grid_step}; {}",
                            box_desc("delta")
                        ),
                    )
                }
                "phi-deriv-le-1" => (phi_deriv_le_1(&axis, tol), box_desc("delta, u")),
                _ => unreachable!("suite names were validated"),
            };
            Ok(ViolationReport {
                inequality: name.to_string(),
                grid: desc,
                max_violation: acc.max,
                argmax: acc.arg,
                violations: acc.count,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mgl_lin_equality_without_second_noise() {
        for &d1 in &[0.01, 0.2, 0.45] {
            for &u in &[0.001, 0.1, 0.3, 0.49] {
                assert!(mgl_lin_slack(d1, 0.0, u).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn mgl_lin_tangent_point() {
        assert!(mgl_lin_slack(0.2, 0.1, 0.2).abs() < 1e-15);
    }

    #[test]
    fn coarse_suites_are_clean() {
        let reports = verify_inequalities(&SUITES, 1e-2, 1e-9).unwrap();
        assert_eq!(reports.len(), 6);
        for r in &reports {
            assert_eq!(r.violations, 0, "{r:?}");
            assert!(r.max_violation <= 1e-9);
            assert!(!r.argmax.is_empty());
        }
    }

    #[test]
    fn detects_a_planted_violation() {
        let mut acc = Acc::new();
        second_differences(
            &[0.0, 1.0, 2.0, 3.0],
            |x| -x * x,
            1e-9,
            &mut acc,
            |t| vec![t],
        );
        assert_eq!(acc.count, 2);
        assert_eq!(acc.max, 2.0);
        assert_eq!(acc.arg, vec![1.0]);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(matches!(
            verify_inequalities(&["nope"], 1e-2, 1e-9),
            Err(Error::UnknownSuite(_))
        ));
        assert!(verify_inequalities(&["g-convex"], 0.2, 1e-9).is_err());
        assert!(verify_inequalities(&["g-convex"], 1e-2, 0.0).is_err());
    }

    #[test]
    fn reports_are_reproducible() {
        let a = verify_inequalities(&["beta-props", "f-lt-1"], 2e-2, 1e-9).unwrap();
        let b = verify_inequalities(&["beta-props", "f-lt-1"], 2e-2, 1e-9).unwrap();
        assert_eq!(a, b);
    }
}
