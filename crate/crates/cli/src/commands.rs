//! Maps parsed commands onto library calls and output tables.

use jscc_bounds::bounds::{
    eta, gap_rhs, psi_lower_finite_n, sum_distortion_lb, sum_gap_coefficient, tau_star,
    thm1_lower_bound,
};
use jscc_bounds::broadcast::{
    erasure_min_d2, g_bsc, gaussian_bound, gaussian_min_d2, region_trace,
};
use jscc_bounds::info::{conv, h_b, h_b_inv, info_fn, mgl_phi, mgl_phi_deriv};
use jscc_bounds::oracles::{
    binomial_sweep, broadcast_frontier, converse_search_gq, coupling_distance_exact,
    coupling_within_bound, p2p_bruteforce, p2p_bruteforce_float, rational_to_f64,
    spherical_psi_bruteforce, verify_inequalities, BigRational, BruteForce, EncoderTable,
    EnumOptions, SUITES,
};
use jscc_bounds::{
    BinaryBroadcastParams, ErasureParams, Error, GaussianBroadcastParams, SystemParams,
};

use crate::args::{BoundCmd, Command, EvalArgs, OracleCmd, Tau, VerifyArgs};
use crate::table::{Cell, Table};

/// What a command produced, before encoding.
pub struct Report {
    pub table: Table,
    pub status: Status,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// A verification suite found violations beyond tolerance.
    Violations,
    /// The bound query has no feasible point.
    Infeasible,
}

impl Report {
    fn ok(table: Table) -> Self {
        Self {
            table,
            status: Status::Ok,
        }
    }
}

pub fn dispatch(cmd: &Command) -> Result<Report, Error> {
    match cmd {
        Command::Eval(a) => eval(a).map(Report::ok),
        Command::Bound(b) => bound(b),
        Command::Verify(v) => verify(v),
        Command::Oracle(o) => oracle(o),
    }
}

fn need(value: Option<f64>, flag: &str, func: &str) -> Result<f64, Error> {
    value.ok_or_else(|| Error::Invalid(format!("--fn {func} requires --{flag}")))
}

fn eval(a: &EvalArgs) -> Result<Table, Error> {
    let f = a.func.as_str();
    let mut t = Table::new(&["fn", "x", "q", "delta", "value"])
        .nats(if matches!(f, "h_b" | "R" | "beta" | "mgl") {
            &["value"]
        } else {
            &[]
        })
        .plot("x", "value");
    let opt = |v: Option<f64>| v.map_or(Cell::Text(String::new()), Cell::Float);
    for &x in &a.x {
        let value = match f {
            "h_b" => h_b(x)?,
            "h_b_inv" => h_b_inv(x)?,
            "conv" => {
                let b = a
                    .q
                    .or(a.delta)
                    .ok_or_else(|| Error::Invalid("--fn conv requires --q or --delta".into()))?;
                conv(x, b)?
            }
            "mgl" => mgl_phi(need(a.delta, "delta", f)?, x)?,
            "mgl_deriv" => mgl_phi_deriv(need(a.delta, "delta", f)?, x)?,
            "beta" | "phi" | "nu" => info_fn(f, &[need(a.q, "q", f)?, x])?,
            _ => info_fn(f, &[x])?,
        };
        t.push(vec![
            f.into(),
            x.into(),
            opt(a.q),
            opt(a.delta),
            value.into(),
        ]);
    }
    Ok(t)
}

fn bound(b: &BoundCmd) -> Result<Report, Error> {
    match *b {
        BoundCmd::Lower { n, rho, delta } => {
            let r = thm1_lower_bound(&SystemParams::new(n, rho, delta)?)?;
            let mut t = Table::new(&[
                "n",
                "rho",
                "delta",
                "d_asym",
                "eta",
                "leading_term",
                "lower_bound",
                "correction_order",
            ]);
            t.push(vec![
                n.into(),
                rho.into(),
                delta.into(),
                r.d_asym.into(),
                r.eta.into(),
                r.leading_term.into(),
                (r.d_asym + r.leading_term).into(),
                r.correction_order.into(),
            ]);
            Ok(Report::ok(t))
        }
        BoundCmd::Psi { n, m, delta, ref k } => {
            let params = SystemParams::with_source_len(n, m, delta)?;
            let base = params
                .sphere_weight()
                .ok_or_else(|| Error::Invalid("n * delta must be an integer".into()))?;
            let mut t =
                Table::new(&["n", "m", "delta", "k", "weight", "psi_lower"]).plot("k", "psi_lower");
            for &k in k {
                let v = psi_lower_finite_n(k, &params)?;
                t.push(vec![
                    n.into(),
                    m.into(),
                    delta.into(),
                    k.into(),
                    (base as i64 + k).into(),
                    v.into(),
                ]);
            }
            Ok(Report::ok(t))
        }
        BoundCmd::Sum {
            n,
            rho,
            delta,
            a,
            tau,
        } => {
            let params = SystemParams::new(n, rho, delta)?;
            let r = sum_distortion_lb(a, &params)?;
            let e = eta(rho, delta)?;
            let tau = match tau {
                Tau::Auto => tau_star(rho, delta)?,
                Tau::Value(v) => v,
            };
            let coef = sum_gap_coefficient(rho, delta, tau, e)?;
            let mut t = Table::new(&[
                "n",
                "rho",
                "delta",
                "a",
                "tau",
                "eta",
                "gap_coefficient",
                "value",
                "correction_order",
                "warning",
            ]);
            t.push(vec![
                n.into(),
                rho.into(),
                delta.into(),
                a.into(),
                tau.into(),
                e.into(),
                coef.into(),
                r.value.into(),
                r.correction_order.into(),
                r.warning.unwrap_or_default().into(),
            ]);
            Ok(Report::ok(t))
        }
        BoundCmd::Gap {
            rho,
            delta1,
            delta2,
            d1,
            d2,
            tau,
            n,
        } => {
            let bp = BinaryBroadcastParams::new(rho, 0.5, delta1, delta2, n)?;
            let rhs = gap_rhs(d1, d2, &bp, tau)?;
            let mut t = Table::new(&["d1", "d2", "tau", "gap", "rhs", "holds"]);
            t.push(vec![
                d1.into(),
                d2.into(),
                tau.into(),
                (d2 - d1).into(),
                rhs.into(),
                (d2 - d1 <= rhs).into(),
            ]);
            Ok(Report::ok(t))
        }
        BoundCmd::Region {
            rho,
            delta1,
            delta2,
            p,
            n,
            d1_min,
            d1_max,
            d1_step,
        } => {
            let bp = BinaryBroadcastParams::new(rho, p, delta1, delta2, n)?;
            let grid = d1_grid(d1_min, d1_max, d1_step)?;
            let points = region_trace(&bp, &grid)?;
            let mut t = Table::new(&["d1", "d2_min", "q_star", "slack", "feasible"])
                .nats(&["slack"])
                .plot("d1", "d2_min");
            for pt in &points {
                t.push(vec![
                    pt.d1.into(),
                    pt.d2_min.into(),
                    pt.q_star.into(),
                    pt.slack.into(),
                    pt.is_feasible().into(),
                ]);
            }
            let any = points.iter().any(|pt| pt.is_feasible());
            Ok(Report {
                table: t,
                status: if any { Status::Ok } else { Status::Infeasible },
            })
        }
        BoundCmd::Gaussian {
            sigma2,
            aux_var,
            power,
            n1,
            n2,
            rho,
            d1,
        } => {
            let gp = GaussianBroadcastParams::new(sigma2, aux_var, power, n1, n2, rho)?;
            let mut t = Table::new(&["d1", "bound", "d2_min"]);
            t.push(vec![
                d1.into(),
                gaussian_bound(&gp, d1)?.into(),
                gaussian_min_d2(&gp, d1)?.into(),
            ]);
            Ok(Report::ok(t))
        }
        BoundCmd::Erasure {
            eps1,
            eps2,
            rho,
            d1,
            q,
        } => {
            let eps = ErasureParams::new(eps1, eps2)?;
            let mut t = Table::new(&["d1", "q", "d2_min", "feasible"]);
            match erasure_min_d2(eps, rho, d1, q) {
                Ok(d2) => {
                    t.push(vec![d1.into(), q.into(), d2.into(), true.into()]);
                    Ok(Report::ok(t))
                }
                // user 1 alone needs more than the channel carries
                Err(Error::Domain { name: "t", .. }) => {
                    t.push(vec![
                        d1.into(),
                        q.into(),
                        f64::INFINITY.into(),
                        false.into(),
                    ]);
                    Ok(Report {
                        table: t,
                        status: Status::Infeasible,
                    })
                }
                Err(e) => Err(e),
            }
        }
    }
}

/// `min, min + step, ...` up to `max`, tolerating rounding at the end.
fn d1_grid(min: f64, max: f64, step: f64) -> Result<Vec<f64>, Error> {
    if !(step > 0.0) || !(min <= max) || !min.is_finite() || !max.is_finite() {
        return Err(Error::Invalid(
            "need d1-min <= d1-max and d1-step > 0".into(),
        ));
    }
    let count = ((max - min) / step + 1e-9).floor() as u64 + 1;
    if count > 1_000_000 {
        return Err(Error::Invalid(format!("{count} grid points is too many")));
    }
    Ok((0..count).map(|i| min + i as f64 * step).collect())
}

fn verify(v: &VerifyArgs) -> Result<Report, Error> {
    let suites: Vec<&str> = if v.suite.is_empty() {
        SUITES.to_vec()
    } else {
        v.suite.iter().map(String::as_str).collect()
    };
    let reports = verify_inequalities(&suites, v.grid_step, v.tol)?;
    let mut t = Table::new(&[
        "inequality",
        "grid",
        "max_violation",
        "argmax",
        "violations",
    ]);
    let mut status = Status::Ok;
    for r in reports {
        if r.violations > 0 {
            status = Status::Violations;
        }
        let argmax: Vec<String> = r
            .argmax
            .iter()
            .map(|&x| crate::table::format_float(x))
            .collect();
        t.push(vec![
            r.inequality.into(),
            r.grid.into(),
            r.max_violation.into(),
            argmax.join(";").into(),
            r.violations.into(),
        ]);
    }
    Ok(Report { table: t, status })
}

fn brute_force_table(head: [(&str, Cell); 3], r: BruteForce) -> Table {
    let mut t = Table::new(&[
        head[0].0,
        head[1].0,
        head[2].0,
        "value",
        "encoder_index",
        "witness",
        "encoders_evaluated",
    ]);
    let value = match r.value.as_exact() {
        Some(q) => Cell::Rational(q.clone()),
        None => Cell::Float(r.value.to_f64()),
    };
    let [(_, a), (_, b), (_, c)] = head;
    t.push(vec![
        a,
        b,
        c,
        value,
        r.encoder_index.into(),
        r.witness.to_string().into(),
        r.encoders_evaluated.into(),
    ]);
    t
}

fn exact_or_float(exact: bool, r: &BigRational) -> Cell {
    if exact {
        Cell::Rational(r.clone())
    } else {
        Cell::Float(rational_to_f64(r))
    }
}

fn oracle(o: &OracleCmd) -> Result<Report, Error> {
    match *o {
        OracleCmd::P2p {
            m,
            n,
            ref delta,
            exact,
            budget,
        } => {
            let opts = EnumOptions {
                budget,
                reduce: true,
            };
            let r = if exact {
                p2p_bruteforce(m, n, delta, &opts)?
            } else {
                p2p_bruteforce_float(m, n, rational_to_f64(delta), &opts)?
            };
            Ok(Report::ok(brute_force_table(
                [
                    ("m", m.into()),
                    ("n", n.into()),
                    ("delta", delta.clone().into()),
                ],
                r,
            )))
        }
        OracleCmd::Spherical {
            m,
            n,
            weight,
            ref encoder,
            budget,
        } => {
            let enc = match encoder {
                Some(text) => {
                    let words: Vec<&str> = text.split(',').map(str::trim).collect();
                    Some(EncoderTable::from_bit_strings(m, &words)?)
                }
                None => None,
            };
            let opts = EnumOptions {
                budget,
                reduce: true,
            };
            let r = spherical_psi_bruteforce(m, n, weight, enc.as_ref(), &opts)?;
            Ok(Report::ok(brute_force_table(
                [("m", m.into()), ("n", n.into()), ("weight", weight.into())],
                r,
            )))
        }
        OracleCmd::Frontier {
            m,
            n,
            w1,
            w2,
            budget,
        } => {
            let opts = EnumOptions {
                budget,
                reduce: true,
            };
            let points = broadcast_frontier(m, n, w1, w2, &opts)?;
            let mut t = Table::new(&["d1", "d2", "encoder_index", "witness"]).plot("d1", "d2");
            for p in points {
                t.push(vec![
                    p.d1.into(),
                    p.d2.into(),
                    p.encoder_index.into(),
                    p.witness.to_string().into(),
                ]);
            }
            Ok(Report::ok(t))
        }
        OracleCmd::Binomial {
            n,
            ref delta,
            k_max,
            exact,
        } => {
            let rows = binomial_sweep(n, delta, k_max)?;
            let mut t =
                Table::new(&["k", "ratio", "gamma", "rhat", "rhat_error"]).plot("k", "gamma");
            for r in rows {
                let err = &r.rhat - &r.ratio;
                t.push(vec![
                    r.k.into(),
                    exact_or_float(exact, &r.ratio),
                    exact_or_float(exact, &r.gamma),
                    exact_or_float(exact, &r.rhat),
                    exact_or_float(exact, &err),
                ]);
            }
            Ok(Report::ok(t))
        }
        OracleCmd::Coupling {
            n,
            ref delta1,
            ref delta2,
            exact,
        } => {
            let value = coupling_distance_exact(n, delta1, delta2)?;
            let (tight, loose) = coupling_within_bound(n, delta2, &value);
            let d2 = rational_to_f64(delta2);
            let nf = n as f64;
            let mut t = Table::new(&[
                "n",
                "delta1",
                "delta2",
                "distance",
                "bound_tight",
                "bound",
                "within_tight",
                "within",
            ]);
            t.push(vec![
                n.into(),
                delta1.clone().into(),
                delta2.clone().into(),
                exact_or_float(exact, &value),
                (nf * d2 * (1.0 - d2)).sqrt().into(),
                (nf * d2).sqrt().into(),
                tight.into(),
                loose.into(),
            ]);
            Ok(Report::ok(t))
        }
        OracleCmd::GqSearch {
            delta1,
            delta2,
            t,
            trials,
            seed,
        } => {
            let found = converse_search_gq(delta1, delta2, t, trials, seed)?;
            let closed = g_bsc(delta1, delta2, t)?;
            let mut table = Table::new(&[
                "delta1", "delta2", "t", "trials", "seed", "value", "g_bsc", "excess",
            ])
            .nats(&["t", "value", "g_bsc", "excess"]);
            table.push(vec![
                delta1.into(),
                delta2.into(),
                t.into(),
                trials.into(),
                seed.into(),
                found.into(),
                closed.into(),
                (found - closed).into(),
            ]);
            let status = if found == f64::NEG_INFINITY {
                Status::Infeasible
            } else {
                Status::Ok
            };
            Ok(Report { table, status })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_includes_endpoint() {
        let g = d1_grid(0.01, 0.5, 0.01).unwrap();
        assert_eq!(g.len(), 50);
        assert!((g[49] - 0.5).abs() < 1e-12);
        assert_eq!(d1_grid(0.2, 0.2, 0.1).unwrap(), vec![0.2]);
        assert!(d1_grid(0.3, 0.2, 0.1).is_err());
        assert!(d1_grid(0.1, 0.2, 0.0).is_err());
    }
}
