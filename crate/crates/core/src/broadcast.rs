//! Outer bounds for sending a source over a two-user degraded broadcast channel.
//!
//! Every bound here factors through [`general_compose`]: an achievable pair
//! `(D1, D2)` must satisfy `Rbar(D2) <= rho * G(F(R(D1)) / rho)` for the
//! source functions `F`, `Rbar`, `R` of an auxiliary `U` and the channel
//! function `G`. The binary instantiation uses `U = S + Ber(q)`.
//!
//! Entropy differences near `log 2` are computed through the stable
//! capacity form `log 2 - h_b(x)`, since tracing the region drives `q` and the
//! inner MGL argument towards `1/2` where `h_b` itself loses all precision.

use std::f64::consts::LN_2;

use rayon::prelude::*;

use crate::bounds::{d_asym, gamma_raw};
use crate::error::{check_closed, check_open, domain, Error, Result};
use crate::info::{conv_raw, g_raw, hb_inv_raw, hb_raw, rate_inv_raw, rate_raw, LOG2_GUARD};
use crate::scalar::{bisect_predicate, golden_max, log_spaced};

/// Seeds for the maximization over `q`.
pub const Q_SEEDS: usize = 64;
pub const Q_MIN: f64 = 1e-6;
pub const Q_MAX: f64 = 0.5 - 1e-6;
/// Golden-section tolerance on `q`.
pub const Q_TOL: f64 = 1e-10;
/// Bisection tolerance on `D2`.
pub const D2_TOL: f64 = 1e-12;

/// A binary source over a BSC(delta1) / BSC(delta1 * delta2) broadcast channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinaryBroadcastParams {
    rho: f64,
    p: f64,
    delta1: f64,
    delta2: f64,
    n: Option<u64>,
}

impl BinaryBroadcastParams {
    /// `n = None` selects the asymptotic bound (no `Gamma` term).
    ///
    /// Accepts `delta1 = 0` and `delta2 = 1/2` so that every exhaustively
    /// solvable spherical instance can be expressed.
    pub fn new(rho: f64, p: f64, delta1: f64, delta2: f64, n: Option<u64>) -> Result<Self> {
        if !(rho > 0.0 && rho.is_finite()) {
            return Err(domain("rho", rho, "(0, inf)"));
        }
        check_closed("p", p, f64::MIN_POSITIVE, 0.5, "(0, 1/2]")?;
        if !(0.0..0.5).contains(&delta1) {
            return Err(domain("delta1", delta1, "[0, 1/2)"));
        }
        check_closed("delta2", delta2, 0.0, 0.5, "[0, 1/2]")?;
        if n == Some(0) {
            return Err(Error::Invalid("n must be positive".into()));
        }
        Ok(Self {
            rho,
            p,
            delta1,
            delta2,
            n,
        })
    }

    /// The instance whose receivers see noise of Hamming weight `w1` and `w2`
    /// out of `n`, with `rho = n / m` and a fair source.
    pub fn from_sphere_weights(m: u32, n: u32, w1: u32, w2: u32) -> Result<Self> {
        if m == 0 || n == 0 || w1 >= w2 || 2 * w2 > n {
            return Err(Error::Invalid(format!(
                "need m, n > 0 and w1 < w2 <= n/2, got m = {m}, n = {n}, w1 = {w1}, w2 = {w2}"
            )));
        }
        let delta1 = w1 as f64 / n as f64;
        let weak = w2 as f64 / n as f64;
        let delta2 = (weak - delta1) / (1.0 - 2.0 * delta1);
        Self::new(n as f64 / m as f64, 0.5, delta1, delta2, Some(n as u64))
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn delta1(&self) -> f64 {
        self.delta1
    }

    pub fn delta2(&self) -> f64 {
        self.delta2
    }

    pub fn n(&self) -> Option<u64> {
        self.n
    }

    /// Crossover of the weak receiver, `delta1 * delta2`.
    pub fn weak_crossover(&self) -> f64 {
        conv_raw(self.delta1, self.delta2)
    }

    /// `Gamma(n, delta2)` in finite-n mode, `0` otherwise.
    pub fn gamma(&self) -> f64 {
        self.n.map_or(0.0, |n| gamma_raw(n, self.delta2))
    }

    pub fn asymptotic(&self) -> Self {
        Self { n: None, ..*self }
    }
}

/// Degraded erasure broadcast channel, `eps1 <= eps2 < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErasureParams {
    eps1: f64,
    eps2: f64,
}

impl ErasureParams {
    pub fn new(eps1: f64, eps2: f64) -> Result<Self> {
        check_closed("eps1", eps1, 0.0, 1.0, "[0, 1)")?;
        check_closed("eps2", eps2, 0.0, 1.0, "[0, 1)")?;
        if eps2 >= 1.0 {
            return Err(domain("eps2", eps2, "[0, 1)"));
        }
        if eps1 > eps2 {
            return Err(Error::Invalid(format!(
                "eps1 = {eps1} exceeds eps2 = {eps2}"
            )));
        }
        Ok(Self { eps1, eps2 })
    }

    pub fn eps1(&self) -> f64 {
        self.eps1
    }

    pub fn eps2(&self) -> f64 {
        self.eps2
    }
}

/// Quadratic-Gaussian source over a degraded AWGN broadcast channel, with a
/// Gaussian auxiliary of variance `aux_var`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianBroadcastParams {
    pub sigma2: f64,
    pub aux_var: f64,
    pub power: f64,
    pub n1: f64,
    pub n2: f64,
    pub rho: f64,
}

impl GaussianBroadcastParams {
    pub fn new(sigma2: f64, aux_var: f64, power: f64, n1: f64, n2: f64, rho: f64) -> Result<Self> {
        let positive = |name: &'static str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(domain(name, v, "(0, inf)"))
            }
        };
        positive("sigma2", sigma2)?;
        positive("power", power)?;
        positive("n1", n1)?;
        positive("rho", rho)?;
        if !(aux_var >= 0.0) {
            return Err(domain("aux_var", aux_var, "[0, inf]"));
        }
        if !(n2 >= 0.0 && n2.is_finite()) {
            return Err(domain("n2", n2, "[0, inf)"));
        }
        Ok(Self {
            sigma2,
            aux_var,
            power,
            n1,
            n2,
            rho,
        })
    }
}

/// One boundary point of the traced outer region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionPoint {
    pub d1: f64,
    /// Smallest `D2` not excluded by any `q`. `+inf` when `d1` itself is
    /// excluded, `0` when no `q` constrains `D2`.
    pub d2_min: f64,
    /// The binding `q`.
    pub q_star: f64,
    /// Slack at `(d1, d2_min, q_star)`.
    pub slack: f64,
}

impl RegionPoint {
    pub fn is_feasible(&self) -> bool {
        self.d2_min.is_finite()
    }
}

/// Lower bound on `F_P(t)` for `P = Ber(p)` and `U = S + Ber(q)`; exact at `p = 1/2`.
pub fn fp_binary(p: f64, q: f64, t: f64) -> Result<f64> {
    check_closed("p", p, 0.0, 0.5, "[0, 1/2]")?;
    check_closed("q", q, 0.0, 0.5, "[0, 1/2]")?;
    let hp = hb_raw(p);
    check_closed("t", t, 0.0, hp + LOG2_GUARD, "[0, h_b(p)]")?;
    Ok(t - hb_raw(conv_raw(q, p)) + hb_raw(conv_raw(q, hb_inv_raw(hp - t))))
}

/// `Rbar_P(d) = h_b(q * p) - h_b(q * d)` for `0 <= d <= p`.
pub fn rbar_binary(p: f64, q: f64, d: f64) -> Result<f64> {
    check_closed("p", p, 0.0, 0.5, "[0, 1/2]")?;
    check_closed("q", q, 0.0, 0.5, "[0, 1/2]")?;
    check_closed("d", d, 0.0, p, "[0, p]")?;
    Ok(rate_raw(conv_raw(q, d)) - rate_raw(conv_raw(q, p)))
}

/// `G_Q(t) = log 2 - h_b(delta2 * h_b_inv(h_b(delta1) + t))` for the binary
/// symmetric degraded broadcast channel.
pub fn g_bsc(delta1: f64, delta2: f64, t: f64) -> Result<f64> {
    check_closed("delta1", delta1, 0.0, 0.5, "[0, 1/2]")?;
    check_closed("delta2", delta2, 0.0, 0.5, "[0, 1/2]")?;
    let cap1 = rate_raw(delta1);
    check_closed("t", t, 0.0, cap1 + LOG2_GUARD, "[0, log 2 - h_b(delta1)]")?;
    Ok(g_bsc_raw(delta1, delta2, t))
}

fn g_bsc_raw(delta1: f64, delta2: f64, t: f64) -> f64 {
    let x = rate_inv_raw((rate_raw(delta1) - t).max(0.0));
    rate_raw(conv_raw(delta2, x))
}

/// `G_Q(t) = (1-eps2)/(1-eps1) * ((1-eps1) log 2 - t)` for the erasure channel.
pub fn g_bec(eps: &ErasureParams, t: f64) -> Result<f64> {
    let cap1 = (1.0 - eps.eps1) * LN_2;
    check_closed("t", t, 0.0, cap1 + LOG2_GUARD, "[0, (1 - eps1) log 2]")?;
    Ok((1.0 - eps.eps2) / (1.0 - eps.eps1) * (cap1 - t))
}

/// Upper bound on `G_{Q^n}(nt) / n` for the spherical-noise channel:
/// `g_bsc(delta1, delta2, t) + Gamma(n, delta2)`.
pub fn g_spherical_ub(delta1: f64, delta2: f64, n: u64, t: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Invalid("n must be positive".into()));
    }
    Ok(g_bsc(delta1, delta2, t)? + gamma_raw(n, delta2))
}

/// Result of evaluating the binary broadcast constraint at one `q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thm10Eval {
    /// Right-hand side minus left-hand side; negative excludes `(d1, d2)`.
    pub slack: f64,
    /// `A1` exceeded `log 2` and was clamped to it: by at most the floating
    /// guard in asymptotic mode, by any amount in finite-n mode.
    pub a1_clamped: bool,
}

enum Constraint {
    Slack(Thm10Eval),
    /// `A1 > log 2`: user 1 alone already exceeds what the channel supports.
    A1Exceeds(f64),
}

fn thm10_core(d1: f64, d2: f64, q: f64, bp: &BinaryBroadcastParams) -> Constraint {
    let (rho, p) = (bp.rho, bp.p);
    // h_b(q*D1) - h_b(D1) - h_b(q*p) + h_b(p), through capacities
    let source_term =
        rate_raw(d1) - rate_raw(conv_raw(q, d1)) - rate_raw(p) + rate_raw(conv_raw(q, p));
    // log 2 - A1
    let mut headroom = rate_raw(bp.delta1) - source_term / rho;
    let mut a1_clamped = false;
    if headroom < 0.0 {
        // Spherical noise lets user 1 exceed the BSC capacity at finite n.
        // The channel bound stays valid with h_b_inv saturating at 1/2, since
        // its last step only uses a slope bound of 1 on the MGL function.
        if headroom >= -LOG2_GUARD || bp.n.is_some() {
            headroom = 0.0;
            a1_clamped = true;
        } else {
            return Constraint::A1Exceeds(LN_2 - headroom);
        }
    }
    let inner = rate_inv_raw(headroom);
    let rhs = rho * rate_raw(conv_raw(bp.delta2, inner)) + rho * bp.gamma();
    let lhs = rate_raw(conv_raw(q, d2)) - rate_raw(conv_raw(q, p));
    Constraint::Slack(Thm10Eval {
        slack: rhs - lhs,
        a1_clamped,
    })
}

fn check_thm10_args(d1: f64, d2: f64, q: f64, bp: &BinaryBroadcastParams) -> Result<()> {
    check_closed("q", q, 0.0, 0.5, "[0, 1/2]")?;
    check_closed("d1", d1, 0.0, bp.p, "[0, p]")?;
    check_closed("d2", d2, 0.0, bp.p, "[0, p]")?;
    Ok(())
}

/// Evaluates the binary broadcast outer bound at one `q`, reporting whether
/// `A1` needed the floating clamp.
pub fn thm10_eval(d1: f64, d2: f64, q: f64, bp: &BinaryBroadcastParams) -> Result<Thm10Eval> {
    check_thm10_args(d1, d2, q, bp)?;
    match thm10_core(d1, d2, q, bp) {
        Constraint::Slack(e) => Ok(e),
        Constraint::A1Exceeds(a1) => Err(domain("A1", a1, "[0, log 2]")),
    }
}

/// `rho [log 2 - h_b(delta2 * h_b_inv(A1))] + rho Gamma - [h_b(q*p) - h_b(q*D2)]`
/// with `A1 = h_b(delta1) + [h_b(q*D1) - h_b(D1) - h_b(q*p) + h_b(p)] / rho`.
///
/// Every achievable pair has nonnegative slack for every `q` in `[0, 1/2]`.
pub fn thm10_slack(d1: f64, d2: f64, q: f64, bp: &BinaryBroadcastParams) -> Result<f64> {
    thm10_eval(d1, d2, q, bp).map(|e| e.slack)
}

enum D2Bound {
    Min(f64),
    D1Excluded,
}

fn d2_min_at(d1: f64, q: f64, bp: &BinaryBroadcastParams) -> D2Bound {
    let slack = |d2: f64| match thm10_core(d1, d2, q, bp) {
        Constraint::Slack(e) => Some(e.slack),
        Constraint::A1Exceeds(_) => None,
    };
    match slack(0.0) {
        None => D2Bound::D1Excluded,
        Some(s) if s >= 0.0 => D2Bound::Min(0.0),
        Some(_) => {
            // LHS decreases in d2, so the predicate is monotone
            let d2 = bisect_predicate(0.0, bp.p, D2_TOL, 200, |d2| {
                slack(d2).is_some_and(|s| s >= 0.0)
            });
            D2Bound::Min(d2)
        }
    }
}

fn region_point(bp: &BinaryBroadcastParams, d1: f64) -> RegionPoint {
    let mut seeds = vec![0.0];
    seeds.extend(log_spaced(Q_MIN, Q_MAX, Q_SEEDS));

    let mut values = Vec::with_capacity(seeds.len());
    for &q in &seeds {
        match d2_min_at(d1, q, bp) {
            D2Bound::Min(v) => values.push(v),
            D2Bound::D1Excluded => {
                return RegionPoint {
                    d1,
                    d2_min: f64::INFINITY,
                    q_star: q,
                    slack: f64::NAN,
                }
            }
        }
    }
    let mut best = 0;
    for (i, &v) in values.iter().enumerate() {
        if v > values[best] {
            best = i;
        }
    }
    let (mut q_star, mut d2_min) = (seeds[best], values[best]);
    if d2_min > 0.0 {
        let lo = seeds[best.saturating_sub(1)];
        let hi = seeds[(best + 1).min(seeds.len() - 1)];
        let refined = golden_max(lo, hi, Q_TOL, |q| match d2_min_at(d1, q, bp) {
            D2Bound::Min(v) => v,
            D2Bound::D1Excluded => f64::NEG_INFINITY,
        });
        if refined.value > d2_min {
            q_star = refined.x;
            d2_min = refined.value;
        }
    }
    let slack = match thm10_core(d1, d2_min, q_star, bp) {
        Constraint::Slack(e) => e.slack,
        Constraint::A1Exceeds(_) => f64::NAN,
    };
    RegionPoint {
        d1,
        d2_min,
        q_star,
        slack,
    }
}

/// For each `d1`, the smallest `D2` allowed by the bound maximized over `q`.
///
/// Points are computed in parallel; each depends only on its own `d1`.
pub fn region_trace(bp: &BinaryBroadcastParams, d1_grid: &[f64]) -> Result<Vec<RegionPoint>> {
    for &d1 in d1_grid {
        check_closed("d1", d1, f64::MIN_POSITIVE, bp.p, "(0, p]")?;
    }
    Ok(d1_grid.par_iter().map(|&d1| region_point(bp, d1)).collect())
}

/// Weak-user separation value `h_b_inv(log 2 - rho C(delta1*delta2) - rho Gamma)`
/// for a fair source.
pub fn weak_user_separation(bp: &BinaryBroadcastParams) -> f64 {
    rate_inv_raw(bp.rho * (rate_raw(bp.weak_crossover()) + bp.gamma()))
}

/// First-order condition at `q -> 0` when the weak user sits at its optimum
/// `D2* = D(rho, delta1*delta2)`:
/// `g(p) + g(delta1)/g(delta1*delta2) * [g(D2*) - g(p)] - g(D1)`.
///
/// Achievable `D1` make this nonnegative, i.e. `g(D1)` is bounded above.
pub fn cor11_condition(d1: f64, bp: &BinaryBroadcastParams) -> Result<f64> {
    if bp.n.is_some() {
        return Err(Error::Invalid(
            "the q -> 0 condition is asymptotic; drop n".into(),
        ));
    }
    check_open("d1", d1, 0.0, 0.5, "(0, 1/2)")?;
    check_open("delta1", bp.delta1, 0.0, 0.5, "(0, 1/2)")?;
    let weak = bp.weak_crossover();
    check_open("delta1 * delta2", weak, 0.0, 0.5, "(0, 1/2)")?;
    let d2_star = d_asym(bp.rho, weak)?;
    if d2_star <= 0.0 {
        return Err(Error::Invalid("D(rho, delta1 * delta2) = 0".into()));
    }
    let ratio = g_raw(bp.delta1) / g_raw(weak);
    let gp = g_raw(bp.p);
    Ok(gp + ratio * (g_raw(d2_star) - gp) - g_raw(d1))
}

fn cor12_threshold(bp: &BinaryBroadcastParams) -> Result<f64> {
    if bp.n.is_some() {
        return Err(Error::Invalid(
            "the q -> 1/2 condition is asymptotic; drop n".into(),
        ));
    }
    check_open("delta1", bp.delta1, 0.0, 0.5, "(0, 1/2)")?;
    let d1_star = d_asym(bp.rho, bp.delta1)?;
    if d1_star <= 0.0 {
        return Err(Error::Invalid("D(rho, delta1) = 0".into()));
    }
    let c = 1.0 - 2.0 * conv_raw(bp.delta2, d1_star);
    let bias = 1.0 - 2.0 * bp.p;
    Ok(c * c + bias * bias * (1.0 - c * c))
}

/// Slack of the `q -> 1/2` condition when user 1 sits at `D1* = D(rho, delta1)`:
/// `(1 - 2 delta2*D1*)^2 + (1-2p)^2 (1 - (1 - 2 delta2*D1*)^2) - (1 - 2 D2)^2`.
pub fn cor12_slack(d2: f64, bp: &BinaryBroadcastParams) -> Result<f64> {
    check_closed("d2", d2, 0.0, 0.5, "[0, 1/2]")?;
    let x = cor12_threshold(bp)?;
    Ok(x - (1.0 - 2.0 * d2).powi(2))
}

/// Smallest `D2` with nonnegative [`cor12_slack`]; `delta2 * D1*` at `p = 1/2`.
pub fn cor12_min_d2(bp: &BinaryBroadcastParams) -> Result<f64> {
    let x = cor12_threshold(bp)?;
    Ok(0.5 * (1.0 - x.sqrt()))
}

/// `F_P(t) = t - 1/2 log((aux + sigma2) / (aux + sigma2 e^{-2t}))`.
pub fn gaussian_fp(gp: &GaussianBroadcastParams, t: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(domain("t", t, "[0, inf)"));
    }
    if gp.aux_var.is_infinite() {
        return Ok(t);
    }
    let s = gp.sigma2;
    let a = gp.aux_var;
    Ok(t - 0.5 * ((a + s) / (a + s * (-2.0 * t).exp())).ln())
}

/// `Rbar_P(D) = 1/2 log((aux + sigma2) / (aux + D))`.
pub fn gaussian_rbar(gp: &GaussianBroadcastParams, d: f64) -> Result<f64> {
    check_closed("D", d, 0.0, gp.sigma2, "[0, sigma2]")?;
    if gp.aux_var.is_infinite() {
        return Ok(0.0);
    }
    Ok(0.5 * ((gp.aux_var + gp.sigma2) / (gp.aux_var + d)).ln())
}

/// `G_Q(t) = 1/2 log((P + N1 + N2) / (N1 e^{2t} + N2))`.
pub fn gaussian_gq(gp: &GaussianBroadcastParams, t: f64) -> Result<f64> {
    let cap1 = 0.5 * (1.0 + gp.power / gp.n1).ln();
    check_closed("t", t, 0.0, cap1 + LOG2_GUARD, "[0, 1/2 log(1 + P/N1)]")?;
    Ok(0.5 * ((gp.power + gp.n1 + gp.n2) / (gp.n1 * (2.0 * t).exp() + gp.n2)).ln())
}

/// Quadratic-Gaussian rate-distortion function `1/2 log(sigma2 / D)`.
pub fn gaussian_rate_distortion(gp: &GaussianBroadcastParams, d: f64) -> Result<f64> {
    check_closed("D", d, f64::MIN_POSITIVE, gp.sigma2, "(0, sigma2]")?;
    Ok(0.5 * (gp.sigma2 / d).ln())
}

/// Upper bound on `(aux + sigma2) / (aux + D2)` given user 1's distortion `d1`:
/// `(1 + P/(N1+N2))^rho [ (N1+N2) / (N1 K^{1/rho} + N2) ]^rho` with
/// `K = (sigma2/D1) (aux + D1)/(aux + sigma2)`.
pub fn gaussian_bound(gp: &GaussianBroadcastParams, d1: f64) -> Result<f64> {
    check_closed("d1", d1, f64::MIN_POSITIVE, gp.sigma2, "(0, sigma2]")?;
    let k = if gp.aux_var.is_infinite() {
        gp.sigma2 / d1
    } else {
        gp.sigma2 / d1 * (gp.aux_var + d1) / (gp.aux_var + gp.sigma2)
    };
    let noise = gp.n1 + gp.n2;
    let base = (1.0 + gp.power / noise) * noise / (gp.n1 * k.powf(1.0 / gp.rho) + gp.n2);
    Ok(base.powf(gp.rho))
}

/// Smallest `D2` compatible with [`gaussian_bound`].
pub fn gaussian_min_d2(gp: &GaussianBroadcastParams, d1: f64) -> Result<f64> {
    let b = gaussian_bound(gp, d1)?;
    Ok(((gp.aux_var + gp.sigma2) / b - gp.aux_var).max(0.0))
}

type ScalarFn<'a> = Box<dyn Fn(f64) -> Result<f64> + Send + Sync + 'a>;

/// Source functions of an auxiliary `U` together with a channel function.
pub struct SourceChannelFns<'a> {
    /// `F_P`, nondecreasing and convex.
    pub source: ScalarFn<'a>,
    /// `Rbar_P`.
    pub rbar: ScalarFn<'a>,
    /// Rate-distortion function of the source.
    pub rate_distortion: ScalarFn<'a>,
    /// `G_Q`, nonincreasing and concave.
    pub channel: ScalarFn<'a>,
}

impl<'a> SourceChannelFns<'a> {
    /// `rho G(F(R(d1)) / rho) - Rbar(d2)`; negative excludes `(d1, d2)`.
    pub fn slack(&self, rho: f64, d1: f64, d2: f64) -> Result<f64> {
        Ok(general_compose(self, rho, d1)? - (self.rbar)(d2)?)
    }
}

/// The threshold `rho * G(F(R(d1)) / rho)` that `Rbar(D2)` may not exceed.
pub fn general_compose(fns: &SourceChannelFns<'_>, rho: f64, d1: f64) -> Result<f64> {
    if !(rho > 0.0) {
        return Err(domain("rho", rho, "(0, inf)"));
    }
    let r = (fns.rate_distortion)(d1)?;
    let f = (fns.source)(r)?;
    Ok(rho * (fns.channel)(f / rho)?)
}

/// Binary source `Ber(p)`, `U = S + Ber(q)`, BSC broadcast channel.
pub fn bsc_fns(bp: &BinaryBroadcastParams, q: f64) -> SourceChannelFns<'static> {
    let (p, d1c, d2c) = (bp.p, bp.delta1, bp.delta2);
    SourceChannelFns {
        source: Box::new(move |t| fp_binary(p, q, t)),
        rbar: Box::new(move |d| rbar_binary(p, q, d)),
        rate_distortion: Box::new(move |d| {
            check_closed("d", d, 0.0, p, "[0, p]")?;
            Ok(hb_raw(p) - hb_raw(d))
        }),
        channel: Box::new(move |t| g_bsc(d1c, d2c, t)),
    }
}

/// Fair binary source, `U = S + Ber(q)`, erasure broadcast channel.
pub fn bec_fns(eps: ErasureParams, q: f64) -> SourceChannelFns<'static> {
    SourceChannelFns {
        source: Box::new(move |t| fp_binary(0.5, q, t)),
        rbar: Box::new(move |d| rbar_binary(0.5, q, d)),
        rate_distortion: Box::new(|d| {
            check_closed("d", d, 0.0, 0.5, "[0, 1/2]")?;
            Ok(rate_raw(d))
        }),
        channel: Box::new(move |t| g_bec(&eps, t)),
    }
}

/// Gaussian source with a Gaussian auxiliary, AWGN broadcast channel.
pub fn gaussian_fns(gp: GaussianBroadcastParams) -> SourceChannelFns<'static> {
    SourceChannelFns {
        source: Box::new(move |t| gaussian_fp(&gp, t)),
        rbar: Box::new(move |d| gaussian_rbar(&gp, d)),
        rate_distortion: Box::new(move |d| gaussian_rate_distortion(&gp, d)),
        channel: Box::new(move |t| gaussian_gq(&gp, t)),
    }
}

/// Smallest `D2` for the erasure bound at `p = 1/2` and a given `q < 1/2`.
pub fn erasure_min_d2(eps: ErasureParams, rho: f64, d1: f64, q: f64) -> Result<f64> {
    check_closed("q", q, 0.0, 0.5 - 1e-15, "[0, 1/2)")?;
    let threshold = general_compose(&bec_fns(eps, q), rho, d1)?;
    // log 2 - h_b(q * D2) <= threshold
    let x = rate_inv_raw(threshold);
    Ok(((x - q) / (1.0 - 2.0 * q)).clamp(0.0, 0.5))
}
