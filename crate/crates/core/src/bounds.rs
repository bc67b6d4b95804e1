//! Point-to-point finite-blocklength quantities for a BSC(delta) carrying a
//! fair binary source at bandwidth expansion `rho = n / m`.
//!
//! Big-O remainders are never evaluated. Reports carry them as the symbolic
//! [`CORRECTION_ORDER`] string because no constants are available for them.

use std::f64::consts::PI;

use crate::broadcast::BinaryBroadcastParams;
use crate::error::{check_closed, check_open, domain, Error, Result};
use crate::info::{big_phi_raw, g_raw, hb_prime, rate_inv_raw, rate_raw, Probability};

/// Order of the unquantified remainder in the leading-term bounds.
pub const CORRECTION_ORDER: &str = "O(n^{-3/4} log n)";

/// A point-to-point problem instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    n: u64,
    m: Option<u64>,
    rho: f64,
    delta: Probability,
}

impl SystemParams {
    /// Instance with an explicit bandwidth expansion and no source length.
    pub fn new(n: u64, rho: f64, delta: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("n must be positive".into()));
        }
        if !(rho > 0.0 && rho.is_finite()) {
            return Err(domain("rho", rho, "(0, inf)"));
        }
        Ok(Self {
            n,
            m: None,
            rho,
            delta: Probability::below_half(delta)?,
        })
    }

    /// Instance with `rho = n / m`.
    pub fn with_source_len(n: u64, m: u64, delta: f64) -> Result<Self> {
        if m == 0 {
            return Err(Error::Invalid("m must be positive".into()));
        }
        let mut p = Self::new(n, n as f64 / m as f64, delta)?;
        p.m = Some(m);
        Ok(p)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn m(&self) -> Option<u64> {
        self.m
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn delta(&self) -> f64 {
        self.delta.get()
    }

    /// `n * delta` as an integer, when it is one (to 1e-9).
    pub fn sphere_weight(&self) -> Option<u64> {
        let w = self.n as f64 * self.delta();
        let r = w.round();
        ((w - r).abs() < 1e-9).then_some(r as u64)
    }
}

/// Terms of the leading-order lower bound on `D*(n) - D(rho, delta)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LowerBoundReport {
    pub d_asym: f64,
    pub eta: f64,
    /// `sqrt(delta (1 - delta) / (2 pi n)) * eta`.
    pub leading_term: f64,
    pub correction_order: &'static str,
    /// Always `false`: the remainder's constant is unknown.
    pub correction_constant_known: bool,
}

/// Lower bound on `D_1 + D_2` for the paired spherical instance.
#[derive(Debug, Clone, PartialEq)]
pub struct SumDistortionReport {
    pub value: f64,
    pub correction_order: &'static str,
    /// Set when `a >= log^2 n`, outside the range where the bound is claimed.
    pub warning: Option<String>,
}

fn check_rho(rho: f64) -> Result<()> {
    if rho > 0.0 && rho.is_finite() {
        Ok(())
    } else {
        Err(domain("rho", rho, "(0, inf)"))
    }
}

fn check_delta(delta: f64) -> Result<()> {
    check_open("delta", delta, 0.0, 0.5, "(0, 1/2)")
}

/// `D(rho, delta) = h_b_inv(log 2 - rho (log 2 - h_b(delta)))`, clamped to `0`
/// when the argument is nonpositive.
pub fn d_asym(rho: f64, delta: f64) -> Result<f64> {
    check_rho(rho)?;
    check_delta(delta)?;
    Ok(d_asym_raw(rho, delta))
}

pub(crate) fn d_asym_raw(rho: f64, delta: f64) -> f64 {
    rate_inv_raw(rho * rate_raw(delta))
}

fn positive_d_asym(rho: f64, delta: f64) -> Result<f64> {
    let d = d_asym(rho, delta)?;
    if d <= 0.0 {
        return Err(Error::Invalid(format!(
            "D(rho, delta) = 0 at rho = {rho}, delta = {delta}; the quantity is singular there"
        )));
    }
    Ok(d)
}

/// `dD/d delta = rho log((1-delta)/delta) / log((1-D)/D)`.
pub fn d_asym_deriv(rho: f64, delta: f64) -> Result<f64> {
    let d = positive_d_asym(rho, delta)?;
    Ok(rho * hb_prime(delta) / hb_prime(d))
}

/// `f(rho, delta) = Phi(delta) / (rho Phi(D(rho, delta)))`.
pub fn f_factor(rho: f64, delta: f64) -> Result<f64> {
    let d = positive_d_asym(rho, delta)?;
    Ok(big_phi_raw(delta) / (rho * big_phi_raw(d)))
}

fn eta_inputs(rho: f64, delta: f64) -> Result<(f64, f64, f64)> {
    if !(rho > 1.0) {
        return Err(domain("rho", rho, "(1, inf)"));
    }
    let d = positive_d_asym(rho, delta)?;
    let f = big_phi_raw(delta) / (rho * big_phi_raw(d));
    if !(f > 0.0 && f < 1.0) {
        return Err(domain("f(rho, delta)", f, "(0, 1)"));
    }
    let slope = rho * hb_prime(delta) / hb_prime(d);
    Ok((d, f, slope))
}

/// The gap coefficient `eta(rho, delta)` of the leading-term lower bound.
///
/// `2 rho [L(delta)/L(D)] * D (1-f)^2 / (2f + 4D(1-f)) * (1+f)/f` with
/// `L(x) = log((1-x)/x)`.
pub fn eta(rho: f64, delta: f64) -> Result<f64> {
    let (d, f, slope) = eta_inputs(rho, delta)?;
    let middle = d * (1.0 - f).powi(2) / (2.0 * f + 4.0 * d * (1.0 - f));
    Ok(2.0 * slope * middle * (1.0 + f) / f)
}

/// The largest coefficient for which the sum-distortion gap algebra closes at
/// `tau = tau_star`: `D' D (1-f)^2 / (f + 2D(1-f))`.
///
/// This equals [`eta`] scaled by `f / (1 + f)`.
pub fn eta_closing(rho: f64, delta: f64) -> Result<f64> {
    let (d, f, slope) = eta_inputs(rho, delta)?;
    Ok(slope * d * (1.0 - f).powi(2) / (f + 2.0 * d * (1.0 - f)))
}

/// Leading coefficient (times `sqrt n / a`) of the lower bound on
/// `D_1 + D_2 - 2D` for a given `tau` and candidate gap coefficient.
pub fn sum_gap_coefficient(rho: f64, delta: f64, tau: f64, eta_value: f64) -> Result<f64> {
    if !(tau > 0.0) {
        return Err(domain("tau", tau, "(0, inf)"));
    }
    let d = positive_d_asym(rho, delta)?;
    let f = f_factor(rho, delta)?;
    let slope = d_asym_deriv(rho, delta)?;
    Ok(2.0 * slope * (1.0 - f * (1.0 + tau)) - eta_value * (1.0 + 2.0 * d * tau) / (2.0 * d * tau))
}

/// `(1 - f) / (2 f)` for an explicit `f` in `(0, 1)`.
pub fn tau_from_f(f: f64) -> Result<f64> {
    check_open("f", f, 0.0, 1.0, "(0, 1)")?;
    Ok((1.0 - f) / (2.0 * f))
}

/// `tau* = (1 - f(rho, delta)) / (2 f(rho, delta))`.
pub fn tau_star(rho: f64, delta: f64) -> Result<f64> {
    tau_from_f(f_factor(rho, delta)?)
}

/// `Gamma(n, delta2) = sqrt(delta2/n) log(n/delta2) + (log n + 1)/(2n)`.
///
/// The first term is taken as its limit `0` at `delta2 = 0`. `delta2 = 1/2`
/// is admitted so that weight-`n/2` spherical receivers can be bounded.
pub fn gamma_corr(n: u64, delta2: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Invalid("n must be positive".into()));
    }
    check_closed("delta2", delta2, 0.0, 0.5, "[0, 1/2]")?;
    Ok(gamma_raw(n, delta2))
}

pub(crate) fn gamma_raw(n: u64, delta2: f64) -> f64 {
    let nf = n as f64;
    let tail = (nf.ln() + 1.0) / (2.0 * nf);
    if delta2 == 0.0 {
        tail
    } else {
        (delta2 / nf).sqrt() * (nf / delta2).ln() + tail
    }
}

/// Leading term of the `Omega(n^{-1/2})` lower bound on the excess distortion.
pub fn thm1_lower_bound(params: &SystemParams) -> Result<LowerBoundReport> {
    let (rho, delta) = (params.rho(), params.delta());
    let e = eta(rho, delta)?;
    let d = d_asym_raw(rho, delta);
    let leading_term = (delta * (1.0 - delta) / (2.0 * PI * params.n() as f64)).sqrt() * e;
    Ok(LowerBoundReport {
        d_asym: d,
        eta: e,
        leading_term,
        correction_order: CORRECTION_ORDER,
        correction_constant_known: false,
    })
}

/// Lower bound on the distortion of any code when the noise is uniform on the
/// Hamming sphere of radius `weight`.
pub fn psi_lower_at_weight(weight: u64, n: u64, rho: f64) -> Result<f64> {
    if n == 0 || weight > n {
        return Err(Error::Invalid(format!(
            "weight {weight} outside [0, n = {n}]"
        )));
    }
    check_rho(rho)?;
    let nf = n as f64;
    let frac = weight as f64 / nf;
    let penalty = (nf.ln() + 1.0) / (2.0 * nf);
    // log 2 - h_b(Psi) <= rho (R(w/n) + penalty)
    Ok(rate_inv_raw(rho * (rate_raw(frac) + penalty)))
}

/// Lower bound on `Psi(k)`, the distortion when the noise is uniform on the
/// sphere of radius `n delta + k`.
pub fn psi_lower_finite_n(k: i64, params: &SystemParams) -> Result<f64> {
    let base = params
        .sphere_weight()
        .ok_or_else(|| Error::Invalid("n * delta must be an integer".into()))?
        as i64;
    let w = base + k;
    if w < 0 || w > params.n() as i64 {
        return Err(domain(
            "delta + k/n",
            w as f64 / params.n() as f64,
            "[0, 1]",
        ));
    }
    psi_lower_at_weight(w as u64, params.n(), params.rho())
}

/// `sum_w Binom(n, delta)(w) * psi_lower_at_weight(w)`: a lower bound on the
/// optimal distortion over BSC(delta), obtained by conditioning on the noise
/// weight.
pub fn psi_averaged_separation(n: u64, rho: f64, delta: f64) -> Result<f64> {
    check_closed("delta", delta, 0.0, 1.0, "[0, 1]")?;
    let mut total = 0.0;
    let mut log_choose = 0.0f64;
    for w in 0..=n {
        if w > 0 {
            log_choose += ((n - w + 1) as f64).ln() - (w as f64).ln();
        }
        let log_p = log_choose + w as f64 * delta.ln() + (n - w) as f64 * (-delta).ln_1p();
        let p = if delta == 0.0 {
            if w == 0 {
                1.0
            } else {
                0.0
            }
        } else {
            log_p.exp()
        };
        total += p * psi_lower_at_weight(w, n, rho)?;
    }
    Ok(total)
}

/// Right-hand side of the upper bound on `D_2 - D_1`, for any `tau > 0`.
///
/// Uses `Gamma(n, delta2)` when `bparams` carries a blocklength and drops it
/// otherwise.
pub fn gap_rhs(d1: f64, d2: f64, bparams: &BinaryBroadcastParams, tau: f64) -> Result<f64> {
    check_open("d1", d1, 0.0, 0.5, "(0, 1/2)")?;
    check_open("d2", d2, 0.0, 0.5, "(0, 1/2)")?;
    if !(tau > 0.0) {
        return Err(domain("tau", tau, "(0, inf)"));
    }
    let (rho, delta1) = (bparams.rho(), bparams.delta1());
    check_open("delta1", delta1, 0.0, 0.5, "(0, 1/2)")?;
    let weak = bparams.weak_crossover();
    let l2 = hb_prime(d2);
    let first = (1.0 + 2.0 * d2 * tau) / (2.0 * d2 * tau)
        * (rho * rate_raw(weak) - rate_raw(d2) + rho * bparams.gamma())
        / l2;
    let second = (weak - delta1)
        * (hb_prime(delta1) / l2)
        * (big_phi_raw(delta1) / big_phi_raw(d2))
        * (1.0 + tau)
        * g_raw(d1)
        / g_raw(d2);
    Ok(first + second)
}

/// `2 D(rho, delta) + a eta(rho, delta) / sqrt(n)`.
pub fn sum_distortion_lb(a: f64, params: &SystemParams) -> Result<SumDistortionReport> {
    if !(a >= 0.0 && a.is_finite()) {
        return Err(domain("a", a, "[0, log^2 n)"));
    }
    let (rho, delta) = (params.rho(), params.delta());
    let e = eta(rho, delta)?;
    let nf = params.n() as f64;
    let limit = nf.ln().powi(2);
    let warning = (a >= limit).then(|| format!("a = {a} is not below log^2(n) = {limit}"));
    Ok(SumDistortionReport {
        value: 2.0 * d_asym_raw(rho, delta) + a * e / nf.sqrt(),
        correction_order: CORRECTION_ORDER,
        warning,
    })
}

/// Distortion of a separation scheme that falls back to distortion 1 on a
/// channel decoding error: `(1 - p_err) d0 + p_err`.
pub fn separation_upper(d0: f64, p_err: f64) -> Result<f64> {
    check_closed("d0", d0, 0.0, 1.0, "[0, 1]")?;
    check_closed("p_err", p_err, 0.0, 1.0, "[0, 1]")?;
    Ok((1.0 - p_err) * d0 + p_err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::info::{h_b, hb_raw};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::LN_2;

    #[test]
    fn d_asym_examples() {
        assert_abs_diff_eq!(d_asym(1.0, 0.2).unwrap(), 0.2, epsilon = 1e-14);
        // 2 (log 2 - h_b(0.1)) = 0.772 > log 2, so the argument clamps
        assert!(2.0 * (LN_2 - hb_raw(0.1)) > LN_2);
        assert_eq!(d_asym(2.0, 0.1).unwrap(), 0.0);
        // 50-digit bisection reference
        assert_abs_diff_eq!(
            d_asym(1.2, 0.2).unwrap(),
            0.173_795_346_371_597_58,
            epsilon = 1e-13
        );
        assert!(d_asym(0.0, 0.2).is_err());
        assert!(d_asym(1.0, 0.5).is_err());
    }

    #[test]
    fn d_asym_deriv_examples() {
        assert_abs_diff_eq!(d_asym_deriv(1.0, 0.3).unwrap(), 1.0, epsilon = 1e-10);
        let h = 1e-6;
        let fd = (d_asym(1.2, 0.2 + h).unwrap() - d_asym(1.2, 0.2 - h).unwrap()) / (2.0 * h);
        assert_abs_diff_eq!(d_asym_deriv(1.2, 0.2).unwrap(), fd, epsilon = 1e-5);
        assert!(d_asym_deriv(2.0, 0.1).is_err());
    }

    #[test]
    fn f_factor_examples() {
        assert_abs_diff_eq!(f_factor(1.0, 0.2).unwrap(), 1.0, epsilon = 1e-10);
        // 50-digit reference
        assert_abs_diff_eq!(
            f_factor(1.2, 0.2).unwrap(),
            0.975_566_634_789_237_5,
            epsilon = 1e-11
        );
        assert!(f_factor(0.8, 0.2).unwrap() >= 1.0);
        assert!(f_factor(2.0, 0.1).is_err());
    }

    #[test]
    fn eta_examples() {
        // 50-digit composition of the three factors
        assert_abs_diff_eq!(
            eta(1.2, 0.2).unwrap(),
            2.278_340_986_546_712e-4,
            epsilon = 1e-14
        );
        assert!(eta(2.0, 0.1).is_err());
        assert!(eta(1.0, 0.2).is_err());
        assert!(eta(0.9, 0.2).is_err());
    }

    #[test]
    fn eta_closing_is_the_fixed_point_of_the_gap_algebra() {
        for &(rho, delta) in &[(1.05, 0.25), (1.2, 0.2), (1.5, 0.3), (2.0, 0.35)] {
            let tau = tau_star(rho, delta).unwrap();
            let closing = eta_closing(rho, delta).unwrap();
            let gap = sum_gap_coefficient(rho, delta, tau, closing).unwrap();
            assert_abs_diff_eq!(gap, closing, epsilon = 1e-9 * closing.max(1e-3));
            let f = f_factor(rho, delta).unwrap();
            let printed = eta(rho, delta).unwrap();
            assert_abs_diff_eq!(printed, closing * (1.0 + f) / f, epsilon = 1e-12);
        }
    }

    #[test]
    fn tau_star_examples() {
        assert_abs_diff_eq!(tau_from_f(1.0 / 3.0).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(tau_from_f(0.5).unwrap(), 0.5, epsilon = 1e-15);
        let f = f_factor(1.2, 0.2).unwrap();
        assert_abs_diff_eq!(
            tau_star(1.2, 0.2).unwrap(),
            (1.0 - f) / (2.0 * f),
            epsilon = 1e-15
        );
        assert!(tau_from_f(1.0).is_err());
        assert!(tau_star(0.8, 0.2).is_err());
    }

    #[test]
    fn gamma_examples() {
        let n = 50u64;
        assert_abs_diff_eq!(
            gamma_corr(n, 0.0).unwrap(),
            ((n as f64).ln() + 1.0) / 100.0,
            epsilon = 1e-16
        );
        assert_abs_diff_eq!(
            gamma_corr(100, 0.05).unwrap(),
            0.197_987_196_828_754_87,
            epsilon = 1e-14
        );
        let first = |n: u64| gamma_corr(n, 0.05).unwrap() - gamma_corr(n, 0.0).unwrap();
        // sqrt(d/4n) log(4n/d) vs sqrt(d/n) log(n/d)
        let ratio = first(400) / first(100);
        assert_abs_diff_eq!(
            ratio,
            0.5 * (8000f64).ln() / (2000f64).ln(),
            epsilon = 1e-12
        );
        assert!(gamma_corr(0, 0.1).is_err());
        assert!(gamma_corr(10, 0.6).is_err());
    }

    #[test]
    fn thm1_examples() {
        let p = SystemParams::new(10_000, 1.2, 0.2).unwrap();
        let r = thm1_lower_bound(&p).unwrap();
        let expect = (0.16 / (2.0 * PI * 1e4)).sqrt() * eta(1.2, 0.2).unwrap();
        assert_abs_diff_eq!(r.leading_term, expect, epsilon = 1e-18);
        assert_abs_diff_eq!(r.leading_term, 3.635_706_194_819_98e-7, epsilon = 1e-17);
        assert_eq!(r.correction_order, CORRECTION_ORDER);
        assert!(!r.correction_constant_known);
        let r4 = thm1_lower_bound(&SystemParams::new(40_000, 1.2, 0.2).unwrap()).unwrap();
        assert_abs_diff_eq!(r4.leading_term * 2.0, r.leading_term, epsilon = 1e-20);
        assert!(thm1_lower_bound(&SystemParams::new(100, 1.0, 0.2).unwrap()).is_err());
    }

    #[test]
    fn psi_lower_examples() {
        let p = SystemParams::with_source_len(100, 80, 0.2).unwrap();
        // delta + k/n = 0 drives the argument negative
        assert_eq!(psi_lower_finite_n(-20, &p).unwrap(), 0.0);
        assert!(psi_lower_finite_n(-21, &p).is_err());
        let q = SystemParams::with_source_len(100, 80, 0.21).unwrap();
        assert!(psi_lower_finite_n(0, &q).is_ok());
        assert!(psi_lower_finite_n(0, &SystemParams::new(10, 1.0, 0.25).unwrap()).is_err());

        let at = |n: u64| {
            let p = SystemParams::new(n, 1.0, 0.2).unwrap();
            psi_lower_finite_n(0, &p).unwrap()
        };
        let (a, b) = (at(1000), at(1_000_000));
        assert!(a < b && b < 0.2);
        assert!(0.2 - b < 1e-4);
    }

    #[test]
    fn gap_rhs_examples() {
        let bp = BinaryBroadcastParams::new(1.2, 0.5, 0.18, 0.05, None).unwrap();
        let v = gap_rhs(0.15, 0.2, &bp, 1.0).unwrap();
        // recomposition of the printed terms
        let (d1, d2, rho, delta1) = (0.15, 0.2, 1.2, 0.18);
        let weak = delta1 * 0.95 + 0.05 * (1.0 - delta1);
        let l = |x: f64| ((1.0 - x) / x).ln();
        let cap = |x: f64| LN_2 - h_b(x).unwrap();
        let phi = |t: f64| 2.0 / ((1.0 - 2.0 * t) * l(t)) + 1.0 / (t * (1.0 - t) * l(t) * l(t));
        let g = |t: f64| (1.0 - 2.0 * t) * l(t);
        let expect = (1.0 + 2.0 * d2) / (2.0 * d2) * (rho * cap(weak) - cap(d2)) / l(d2)
            + (weak - delta1) * l(delta1) / l(d2) * phi(delta1) / phi(d2) * 2.0 * g(d1) / g(d2);
        assert_abs_diff_eq!(v, expect, epsilon = 1e-12);

        // the first term tends to its tau -> inf limit
        let tau = 1e6;
        let big = gap_rhs(0.15, 0.2, &bp, tau).unwrap();
        let second =
            (weak - delta1) * l(delta1) / l(d2) * phi(delta1) / phi(d2) * (1.0 + tau) * g(d1)
                / g(d2);
        let limit = (rho * cap(weak) - cap(d2)) / l(d2);
        assert_abs_diff_eq!(big - second, limit, epsilon = 1e-6);

        let finite = BinaryBroadcastParams::new(1.2, 0.5, 0.18, 0.05, Some(10_000)).unwrap();
        assert!(gap_rhs(0.15, 0.2, &finite, 1.0).unwrap() > v);
        assert!(gap_rhs(0.0, 0.2, &bp, 1.0).is_err());
        assert!(gap_rhs(0.15, 0.2, &bp, 0.0).is_err());
    }

    #[test]
    fn gap_rhs_nonnegative_under_separation() {
        // D1 = D2 = D and delta2 = 0 makes the second term vanish
        for &rho in &[1.1, 1.5, 2.5] {
            for &delta1 in &[0.05, 0.2, 0.4] {
                let bp = BinaryBroadcastParams::new(rho, 0.5, delta1, 0.0, None).unwrap();
                for i in 1..50 {
                    let d = i as f64 / 100.0;
                    if rho * rate_raw(delta1) < rate_raw(d) {
                        continue;
                    }
                    for &tau in &[0.01, 1.0, 100.0] {
                        assert!(gap_rhs(d, d, &bp, tau).unwrap() >= 0.0);
                    }
                }
            }
        }
    }

    #[test]
    fn sum_distortion_examples() {
        let p = SystemParams::new(10_000, 1.2, 0.2).unwrap();
        let base = 2.0 * d_asym(1.2, 0.2).unwrap();
        assert_abs_diff_eq!(
            sum_distortion_lb(0.0, &p).unwrap().value,
            base,
            epsilon = 1e-15
        );
        let one = sum_distortion_lb(1.0, &p).unwrap().value - base;
        let two = sum_distortion_lb(2.0, &p).unwrap().value - base;
        assert_abs_diff_eq!(two, 2.0 * one, epsilon = 1e-16);
        assert_abs_diff_eq!(one, eta(1.2, 0.2).unwrap() / 100.0, epsilon = 1e-17);
        assert!(sum_distortion_lb(1.0, &p).unwrap().warning.is_none());
        let w = sum_distortion_lb(100.0, &p).unwrap();
        assert!(w.warning.is_some());
    }

    #[test]
    fn separation_examples() {
        assert_eq!(separation_upper(0.3, 0.0).unwrap(), 0.3);
        assert_eq!(separation_upper(0.0, 1.0).unwrap(), 1.0);
        assert_abs_diff_eq!(
            separation_upper(0.11, 0.01).unwrap(),
            0.1189,
            epsilon = 1e-15
        );
        assert!(separation_upper(1.2, 0.0).is_err());
    }

    #[test]
    fn averaged_separation_is_below_asymptotic_at_rho_one() {
        let v = psi_averaged_separation(50, 1.0, 0.1).unwrap();
        assert!(v < 0.1 && v > 0.0);
    }
}
