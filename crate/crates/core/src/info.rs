//! Scalar binary information quantities.
//!
//! Everything is measured in nats. [`to_bits`] is the only place a conversion
//! to bits happens, and it is meant for display.
//!
//! | function | value |
//! |----------|-------|
//! | [`h_b`] | `-x log x - (1-x) log(1-x)` |
//! | [`h_b_inv`] | inverse of `h_b` on `[0, 1/2]`, extended by `0` for `t <= 0` |
//! | [`conv`] | `a(1-b) + b(1-a)` |
//! | [`mgl_phi`] | `h_b(delta * h_b_inv(t))` |
//! | [`g`] | `(1-2t) log((1-t)/t)` |
//! | [`kappa`] | `-g'(t)` |
//! | [`big_phi`] | `2/((1-2t)L) + 1/(t(1-t)L^2)`, `L = log((1-t)/t)` |
//! | [`beta`] | `h_b(q*t) - h_b(t)` |
//! | [`small_phi`] | `-d/dt beta_q(t)` |
//! | [`nu`] | `(1-2q) / (1 + q(1-2t)/t)` |
//! | [`psi`] | `(1-2t) kappa(t) / g(t)` |
//! | [`vartheta`] | `big_phi(t) * rate(t)` |
//! | [`rate`] | `log 2 - h_b(t)` |

use std::f64::consts::LN_2;
use std::fmt;
use std::str::FromStr;

use crate::error::{check_closed, check_open, domain, Error, Result};
use crate::scalar::bisect_predicate;

/// Slack tolerated above `log 2` before an entropy argument is rejected.
pub const LOG2_GUARD: f64 = 1e-12;

/// Absolute argument tolerance of the [`h_b_inv`] bisection.
pub const INVERSE_TOL: f64 = 1e-14;
const INVERSE_MAX_ITER: usize = 200;

/// A probability in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Probability(f64);

impl Probability {
    pub fn new(value: f64) -> Result<Self> {
        check_closed("probability", value, 0.0, 1.0, "[0, 1]")?;
        Ok(Self(value))
    }

    /// Accepts only values strictly inside `(0, 1/2)`.
    pub fn below_half(value: f64) -> Result<Self> {
        check_open("probability", value, 0.0, 0.5, "(0, 1/2)")?;
        Ok(Self(value))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Converts nats to bits.
pub fn to_bits(nats: f64) -> f64 {
    nats / LN_2
}

// Unchecked kernels shared by the bound evaluators. Callers validate ranges.

pub(crate) fn hb_raw(x: f64) -> f64 {
    let mut h = 0.0;
    if x > 0.0 {
        h -= x * x.ln();
    }
    if x < 1.0 {
        h -= (1.0 - x) * (-x).ln_1p();
    }
    h
}

/// `log((1-x)/x)`, the derivative of `h_b`.
pub(crate) fn hb_prime(x: f64) -> f64 {
    if x < 0.25 {
        // (1-2x)/x would overflow for subnormal x
        (-x).ln_1p() - x.ln()
    } else {
        // keeps relative precision as x -> 1/2
        ((1.0 - 2.0 * x) / x).ln_1p()
    }
}

pub(crate) fn conv_raw(a: f64, b: f64) -> f64 {
    a * (1.0 - b) + b * (1.0 - a)
}

/// `log 2 - h_b(x)`, accurate near `x = 1/2` where the difference cancels.
pub(crate) fn rate_raw(x: f64) -> f64 {
    let e = 0.5 - x;
    if e.abs() < 0.25 {
        let u = 2.0 * e;
        0.5 * ((1.0 + u) * u.ln_1p() + (1.0 - u) * (-u).ln_1p())
    } else {
        LN_2 - hb_raw(x)
    }
}

pub(crate) fn hb_inv_raw(t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    if t >= LN_2 {
        return 0.5;
    }
    bisect_predicate(0.0, 0.5, INVERSE_TOL, INVERSE_MAX_ITER, |x| hb_raw(x) >= t)
}

/// The `x` in `[0, 1/2]` with `log 2 - h_b(x) = r`; `0` when `r >= log 2`.
///
/// Bisects on the cancellation-free form of `log 2 - h_b`, so it keeps full
/// relative precision in `1/2 - x` when `r` is tiny.
pub(crate) fn rate_inv_raw(r: f64) -> f64 {
    if r <= 0.0 {
        return 0.5;
    }
    if r >= LN_2 {
        return 0.0;
    }
    // rate is decreasing on [0, 1/2]
    bisect_predicate(0.0, 0.5, 0.0, INVERSE_MAX_ITER, |x| rate_raw(x) <= r)
}

pub(crate) fn g_raw(t: f64) -> f64 {
    (1.0 - 2.0 * t) * hb_prime(t)
}

pub(crate) fn kappa_raw(t: f64) -> f64 {
    2.0 * hb_prime(t) + (1.0 - 2.0 * t) / (t * (1.0 - t))
}

pub(crate) fn big_phi_raw(t: f64) -> f64 {
    let l = hb_prime(t);
    2.0 / ((1.0 - 2.0 * t) * l) + 1.0 / (t * (1.0 - t) * l * l)
}

pub(crate) fn beta_raw(q: f64, t: f64) -> f64 {
    hb_raw(conv_raw(q, t)) - hb_raw(t)
}

pub(crate) fn small_phi_raw(q: f64, t: f64) -> f64 {
    let up = 1.0 + q * (1.0 - 2.0 * t) / t;
    let down = 1.0 - q * (1.0 - 2.0 * t) / (1.0 - t);
    2.0 * q * hb_prime(t) + (1.0 - 2.0 * q) * (up / down).ln()
}

pub(crate) fn nu_raw(q: f64, t: f64) -> f64 {
    (1.0 - 2.0 * q) / (1.0 + q * (1.0 - 2.0 * t) / t)
}

/// Slope of `t -> h_b(delta * h_b_inv(t))` at `t = h_b(u)`.
pub(crate) fn mgl_slope_at(delta: f64, u: f64) -> f64 {
    (1.0 - 2.0 * delta) * hb_prime(conv_raw(delta, u)) / hb_prime(u)
}

/// Binary entropy in nats, with `0 log 0 = 0`.
pub fn h_b(x: f64) -> Result<f64> {
    check_closed("x", x, 0.0, 1.0, "[0, 1]")?;
    Ok(hb_raw(x))
}

/// Inverse of [`h_b`] restricted to `[0, 1/2]`, extended by `0` for `t <= 0`.
///
/// Values up to [`LOG2_GUARD`] above `log 2` are treated as `log 2`.
pub fn h_b_inv(t: f64) -> Result<f64> {
    if t.is_nan() || t > LN_2 + LOG2_GUARD {
        return Err(domain("t", t, "(-inf, log 2]"));
    }
    Ok(hb_inv_raw(t))
}

/// Binary convolution `a * b`.
pub fn conv(a: f64, b: f64) -> Result<f64> {
    check_closed("a", a, 0.0, 1.0, "[0, 1]")?;
    check_closed("b", b, 0.0, 1.0, "[0, 1]")?;
    Ok(conv_raw(a, b))
}

/// `R(t) = C(t) = log 2 - h_b(t)`, the BSC capacity and the rate-distortion
/// function of a fair binary source.
pub fn rate(t: f64) -> Result<f64> {
    check_closed("t", t, 0.0, 1.0, "[0, 1]")?;
    Ok(rate_raw(t))
}

/// `h_b(delta * h_b_inv(t))`.
pub fn mgl_phi(delta: f64, t: f64) -> Result<f64> {
    check_closed("delta", delta, 0.0, 0.5, "[0, 1/2]")?;
    check_closed("t", t, 0.0, LN_2 + LOG2_GUARD, "[0, log 2]")?;
    Ok(hb_raw(conv_raw(delta, hb_inv_raw(t))))
}

/// Derivative in `t` of [`mgl_phi`].
///
/// Undefined at `t = 0` (infinite slope of the inverse) and at `t = log 2`
/// (both logarithms vanish).
pub fn mgl_phi_deriv(delta: f64, t: f64) -> Result<f64> {
    if !(0.0..0.5).contains(&delta) {
        return Err(domain("delta", delta, "[0, 1/2)"));
    }
    check_open("t", t, 0.0, LN_2, "(0, log 2)")?;
    let u = hb_inv_raw(t);
    if u <= 0.0 || u >= 0.5 {
        return Err(domain("t", t, "(0, log 2)"));
    }
    Ok(mgl_slope_at(delta, u))
}

fn check_t_open(t: f64) -> Result<()> {
    check_open("t", t, 0.0, 0.5, "(0, 1/2)")
}

pub fn g(t: f64) -> Result<f64> {
    check_t_open(t)?;
    Ok(g_raw(t))
}

/// `kappa(t) = -g'(t)`.
pub fn kappa(t: f64) -> Result<f64> {
    check_t_open(t)?;
    Ok(kappa_raw(t))
}

/// The weight `Phi(t)` entering `f(rho, delta)`.
pub fn big_phi(t: f64) -> Result<f64> {
    check_t_open(t)?;
    Ok(big_phi_raw(t))
}

/// `beta_q(t) = h_b(q * t) - h_b(t)`.
pub fn beta(q: f64, t: f64) -> Result<f64> {
    check_closed("q", q, 0.0, 1.0, "[0, 1]")?;
    check_closed("t", t, 0.0, 1.0, "[0, 1]")?;
    Ok(beta_raw(q, t))
}

/// `phi(q, t) = -d/dt beta_q(t)`.
pub fn small_phi(q: f64, t: f64) -> Result<f64> {
    check_closed("q", q, 0.0, 0.5, "[0, 1/2]")?;
    check_closed("t", t, f64::MIN_POSITIVE, 0.5, "(0, 1/2]")?;
    Ok(small_phi_raw(q, t))
}

pub fn nu(q: f64, t: f64) -> Result<f64> {
    check_closed("q", q, 0.0, 0.5, "[0, 1/2]")?;
    check_closed("t", t, f64::MIN_POSITIVE, 0.5, "(0, 1/2]")?;
    Ok(nu_raw(q, t))
}

/// `psi(t) = (1-2t) kappa(t) / g(t)`.
pub fn psi(t: f64) -> Result<f64> {
    check_t_open(t)?;
    Ok((1.0 - 2.0 * t) * kappa_raw(t) / g_raw(t))
}

/// `vartheta(t) = Phi(t) R(t)`; strictly decreasing on `(0, 1/2)`.
pub fn vartheta(t: f64) -> Result<f64> {
    check_t_open(t)?;
    Ok(big_phi_raw(t) * rate_raw(t))
}

/// Names accepted by [`info_fn`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InfoFn {
    G,
    Kappa,
    Phi,
    Beta,
    SmallPhi,
    Nu,
    Psi,
    Vartheta,
    Rate,
}

impl InfoFn {
    pub fn arity(self) -> usize {
        match self {
            InfoFn::Beta | InfoFn::SmallPhi | InfoFn::Nu => 2,
            _ => 1,
        }
    }
}

impl FromStr for InfoFn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "g" => InfoFn::G,
            "kappa" => InfoFn::Kappa,
            "Phi" => InfoFn::Phi,
            "beta" => InfoFn::Beta,
            "phi" => InfoFn::SmallPhi,
            "nu" => InfoFn::Nu,
            "psi" => InfoFn::Psi,
            "vartheta" => InfoFn::Vartheta,
            "R" => InfoFn::Rate,
            other => return Err(Error::UnknownFunction(other.to_string())),
        })
    }
}

/// Evaluates a catalog function by name. Two-argument functions take `(q, t)`.
pub fn info_fn(name: &str, args: &[f64]) -> Result<f64> {
    let f: InfoFn = name.parse()?;
    if args.len() != f.arity() {
        return Err(Error::Invalid(format!(
            "`{name}` takes {} argument(s), got {}",
            f.arity(),
            args.len()
        )));
    }
    match f {
        InfoFn::G => g(args[0]),
        InfoFn::Kappa => kappa(args[0]),
        InfoFn::Phi => big_phi(args[0]),
        InfoFn::Beta => beta(args[0], args[1]),
        InfoFn::SmallPhi => small_phi(args[0], args[1]),
        InfoFn::Nu => nu(args[0], args[1]),
        InfoFn::Psi => psi(args[0]),
        InfoFn::Vartheta => vartheta(args[0]),
        InfoFn::Rate => rate(args[0]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn entropy_reference_values() {
        assert_eq!(h_b(0.0).unwrap(), 0.0);
        assert_eq!(h_b(1.0).unwrap(), 0.0);
        assert_abs_diff_eq!(h_b(0.5).unwrap(), LN_2, epsilon = 1e-16);
        // 0.75 log(4/3) + 0.25 log 4, evaluated at 50 digits
        assert_abs_diff_eq!(h_b(0.25).unwrap(), 0.562_335_144_618_808_4, epsilon = 1e-15);
        assert!(h_b(-0.1).is_err());
        assert!(h_b(1.5).is_err());
        assert!(h_b(f64::NAN).is_err());
    }

    #[test]
    fn inverse_extension_and_range() {
        assert_eq!(h_b_inv(LN_2).unwrap(), 0.5);
        assert_eq!(h_b_inv(-0.3).unwrap(), 0.0);
        assert_eq!(h_b_inv(0.0).unwrap(), 0.0);
        assert_abs_diff_eq!(h_b_inv(hb_raw(0.2)).unwrap(), 0.2, epsilon = 1e-12);
        assert!(h_b_inv(LN_2 + 1e-9).is_err());
        assert_eq!(h_b_inv(LN_2 + 1e-13).unwrap(), 0.5);
    }

    #[test]
    fn inverse_residual_bound() {
        for i in 1..1000 {
            let t = LN_2 * i as f64 / 1000.0;
            let x = h_b_inv(t).unwrap();
            assert!((hb_raw(x) - t).abs() <= 1e-12, "t = {t}");
        }
    }

    #[test]
    fn convolution_identities() {
        assert_eq!(conv(0.3, 0.0).unwrap(), 0.3);
        assert_eq!(conv(0.3, 0.5).unwrap(), 0.5);
        assert_abs_diff_eq!(conv(0.1, 0.2).unwrap(), 0.26, epsilon = 1e-16);
        assert!(conv(1.1, 0.2).is_err());
    }

    #[test]
    fn stable_rate_matches_naive_form() {
        for i in 0..=1000 {
            let x = i as f64 / 1000.0;
            assert_abs_diff_eq!(rate_raw(x), LN_2 - hb_raw(x), epsilon = 1e-15);
        }
        // 2 e^2 + 4 e^4 / 3 for e = 1e-6
        let e: f64 = 1e-6;
        let expect = 2.0 * e * e + 4.0 * e.powi(4) / 3.0;
        assert!((rate_raw(0.5 - e) - expect).abs() / expect < 1e-9);
    }

    #[test]
    fn rate_inverse_round_trip() {
        for &x in &[1e-9, 0.01, 0.2, 0.4999, 0.5 - 1e-7] {
            let back = rate_inv_raw(rate_raw(x));
            assert!((back - x).abs() <= 1e-15 + 1e-9 * (0.5 - x), "x = {x}");
        }
        assert_eq!(rate_inv_raw(0.0), 0.5);
        assert_eq!(rate_inv_raw(1.0), 0.0);
    }

    #[test]
    fn mgl_phi_examples() {
        assert_abs_diff_eq!(mgl_phi(0.2, LN_2).unwrap(), LN_2, epsilon = 1e-12);
        assert_abs_diff_eq!(mgl_phi(0.0, 0.4).unwrap(), 0.4, epsilon = 1e-12);
        let direct = hb_raw(0.18);
        assert_abs_diff_eq!(mgl_phi(0.1, hb_raw(0.1)).unwrap(), direct, epsilon = 1e-12);
    }

    #[test]
    fn mgl_phi_deriv_examples() {
        assert_abs_diff_eq!(mgl_phi_deriv(0.0, 0.3).unwrap(), 1.0, epsilon = 1e-12);
        let (d1, d2) = (0.11, 0.07);
        let expect = g_raw(conv_raw(d1, d2)) / g_raw(d1);
        assert_abs_diff_eq!(
            mgl_phi_deriv(d2, hb_raw(d1)).unwrap(),
            expect,
            epsilon = 1e-9
        );
        assert!(mgl_phi_deriv(0.1, 0.0).is_err());
        assert!(mgl_phi_deriv(0.1, LN_2).is_err());
        assert!(mgl_phi_deriv(0.5, 0.3).is_err());
    }

    #[test]
    fn mgl_phi_deriv_matches_central_difference() {
        let h = 1e-6;
        let fd = (mgl_phi(0.1, 0.4 + h).unwrap() - mgl_phi(0.1, 0.4 - h).unwrap()) / (2.0 * h);
        assert_abs_diff_eq!(mgl_phi_deriv(0.1, 0.4).unwrap(), fd, epsilon = 1e-6);
    }

    #[test]
    fn catalog_examples() {
        let g49 = 0.02 * (51.0f64 / 49.0).ln();
        assert_abs_diff_eq!(info_fn("g", &[0.49]).unwrap(), g49, epsilon = 1e-15);
        assert!(info_fn("g", &[0.4999999]).unwrap() < 1e-12);
        assert_abs_diff_eq!(info_fn("beta", &[0.2, 0.5]).unwrap(), 0.0, epsilon = 1e-15);
        let l4 = 4f64.ln();
        let phi02 = 2.0 / (0.6 * l4) + 1.0 / (0.16 * l4 * l4);
        assert_abs_diff_eq!(info_fn("Phi", &[0.2]).unwrap(), phi02, epsilon = 1e-13);
        // 50-digit reference for Phi(0.2)
        assert_abs_diff_eq!(
            info_fn("Phi", &[0.2]).unwrap(),
            5.656_630_767_636_201,
            epsilon = 1e-13
        );
        assert_abs_diff_eq!(info_fn("R", &[0.5]).unwrap(), 0.0, epsilon = 1e-16);
    }

    #[test]
    fn catalog_errors() {
        for name in ["g", "kappa", "Phi", "psi", "vartheta"] {
            assert!(
                matches!(info_fn(name, &[0.0]), Err(Error::Domain { .. })),
                "{name}"
            );
            assert!(
                matches!(info_fn(name, &[0.5]), Err(Error::Domain { .. })),
                "{name}"
            );
        }
        assert!(matches!(
            info_fn("nu", &[0.1, 0.0]),
            Err(Error::Domain { .. })
        ));
        assert!(matches!(
            info_fn("zeta", &[0.1]),
            Err(Error::UnknownFunction(_))
        ));
        assert!(matches!(info_fn("beta", &[0.1]), Err(Error::Invalid(_))));
    }

    #[test]
    fn bits_conversion() {
        assert_abs_diff_eq!(to_bits(LN_2), 1.0, epsilon = 1e-16);
    }

    #[test]
    fn probability_newtype() {
        assert!(Probability::new(0.3).is_ok());
        assert!(Probability::new(-0.01).is_err());
        assert!(Probability::below_half(0.5).is_err());
        assert_eq!(Probability::below_half(0.25).unwrap().get(), 0.25);
    }
}
