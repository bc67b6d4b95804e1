//! Exact first absolute moment of the coupling count
//! `T = Binomial(n(1 - delta1), delta2) + Binomial(n delta1, 1 - delta2)`.
//!
//! With `delta2 = a / b`, `b^n Pr(T = t)` is the coefficient of `x^t` in
//! `(a x + b - a)^{N1} ((b - a) x + a)^{N2}`, an integer polynomial.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::half;
use crate::error::{Error, Result};

/// Multiplies `poly` in place by `hi x + lo`.
fn mul_linear(poly: &mut Vec<BigUint>, hi: &BigUint, lo: &BigUint) {
    poly.push(BigUint::zero());
    for t in (0..poly.len()).rev() {
        let shifted = if t > 0 {
            &poly[t - 1] * hi
        } else {
            BigUint::zero()
        };
        poly[t] = &poly[t] * lo + shifted;
    }
}

/// `E|T - n (delta1 * delta2)|` in exact arithmetic.
///
/// Requires `n delta1` to be an integer, `delta1` in `[0, 1]` and `delta2`
/// in `(0, 1/2]`.
pub fn coupling_distance_exact(
    n: u64,
    delta1: &BigRational,
    delta2: &BigRational,
) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::Invalid("n must be positive".into()));
    }
    if delta1.is_negative() || *delta1 > BigRational::one() {
        return Err(Error::Invalid(format!(
            "delta1 = {delta1} must lie in [0, 1]"
        )));
    }
    if !delta2.is_positive() || *delta2 > half() {
        return Err(Error::Invalid(format!(
            "delta2 = {delta2} must lie in (0, 1/2]"
        )));
    }
    let n2 = BigRational::from_integer(n.into()) * delta1;
    if !n2.is_integer() {
        return Err(Error::Invalid(format!("n delta1 = {n2} is not an integer")));
    }
    let n2 = u64::try_from(n2.to_integer())
        .map_err(|_| Error::Invalid("n delta1 out of range".into()))?;
    let n1 = n - n2;

    let a = delta2.numer().magnitude().clone();
    let b = delta2.denom().magnitude().clone();
    let bma = &b - &a;
    let mut poly = vec![BigUint::one()];
    for _ in 0..n1 {
        mul_linear(&mut poly, &a, &bma);
    }
    for _ in 0..n2 {
        mul_linear(&mut poly, &bma, &a);
    }

    // b * mean = N1 a + N2 (b - a)
    let centre = BigInt::from(BigUint::from(n1) * &a + BigUint::from(n2) * &bma);
    let b_int = BigInt::from(b.clone());
    let mut total = BigInt::zero();
    for (t, coef) in poly.iter().enumerate() {
        let dev = (&b_int * BigInt::from(t) - &centre).abs();
        total += dev * BigInt::from(coef.clone());
    }
    let denom = BigInt::from(b.pow(n as u32 + 1));
    Ok(BigRational::new(total, denom))
}

/// `(E <= sqrt(n delta2 (1 - delta2)), E <= sqrt(n delta2))`, decided exactly
/// by comparing squares.
pub fn coupling_within_bound(n: u64, delta2: &BigRational, value: &BigRational) -> (bool, bool) {
    let sq = value * value;
    let nd = BigRational::from_integer(n.into()) * delta2;
    let tight = &nd * (BigRational::one() - delta2);
    (sq <= tight, sq <= nd)
}
