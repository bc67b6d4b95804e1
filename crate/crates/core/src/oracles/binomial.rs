//! Exact asymmetry of the centred binomial `K = Binomial(n, delta) - n delta`.
//!
//! With `j = n delta` and `c = (1 - delta) / delta`,
//! `Pr(K = -k) / Pr(K = k) = c^{2k} prod_{a = j-k}^{j+k-1} (a + 1) / (n - a)`,
//! which grows by two factors per unit step in `k`. All values are exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// `r(k) = Pr(K=k) / (Pr(K=k) + Pr(K=-k))` and `gamma(k) = 2 r(k) - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct BinomialGamma {
    pub ratio: BigRational,
    pub gamma: BigRational,
}

/// One row of [`binomial_sweep`].
#[derive(Debug, Clone, PartialEq)]
pub struct BinomialRow {
    pub k: u64,
    pub ratio: BigRational,
    pub gamma: BigRational,
    /// Second-order approximation of `ratio`.
    pub rhat: BigRational,
}

fn int(v: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Returns `j = n delta`, checking that it is an integer and `delta` in `(0, 1)`.
fn centre(n: u64, delta: &BigRational) -> Result<u64> {
    if n == 0 {
        return Err(Error::Invalid("n must be positive".into()));
    }
    if *delta <= BigRational::zero() || *delta >= BigRational::one() {
        return Err(Error::Invalid(format!(
            "delta = {delta} must lie in (0, 1)"
        )));
    }
    let j = int(n) * delta;
    if !j.is_integer() {
        return Err(Error::Invalid(format!("n delta = {j} is not an integer")));
    }
    u64::try_from(j.to_integer()).map_err(|_| Error::Invalid("n delta is out of range".into()))
}

fn check_k(n: u64, j: u64, k: u64) -> Result<()> {
    let limit = j.min(n - j);
    if k > limit {
        return Err(Error::Invalid(format!(
            "k = {k} exceeds min(n delta, n(1 - delta)) = {limit}"
        )));
    }
    Ok(())
}

/// `1/2 + (1/4) (1-2d)/(d(1-d)) [k^2/(3 n d(1-d)) - 1] (k/n)`.
pub fn binomial_rhat(n: u64, delta: &BigRational, k: u64) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::Invalid("n must be positive".into()));
    }
    let one = BigRational::one();
    let var = delta * (&one - delta);
    if var.is_zero() {
        return Err(Error::Invalid("delta must lie in (0, 1)".into()));
    }
    let (nr, kr) = (int(n), int(k));
    let bracket = &kr * &kr / (int(3) * &nr * &var) - &one;
    let slope = (&one - int(2) * delta) / (int(4) * &var);
    Ok(BigRational::new(1.into(), 2.into()) + slope * bracket * kr / nr)
}

/// Exact `r(k)` and `gamma(k)`.
pub fn binomial_gamma_exact(n: u64, delta: &BigRational, k: u64) -> Result<BinomialGamma> {
    let j = centre(n, delta)?;
    check_k(n, j, k)?;
    let c = (BigRational::one() - delta) / delta;
    let mut back = c.pow(2 * k as i32);
    for a in (j - k)..(j + k) {
        back *= BigRational::new(BigInt::from(a + 1), BigInt::from(n - a));
    }
    Ok(from_back_ratio(back))
}

fn from_back_ratio(back: BigRational) -> BinomialGamma {
    let ratio = (BigRational::one() + back).recip();
    let gamma = &ratio * int(2) - BigRational::one();
    BinomialGamma { ratio, gamma }
}

/// `r`, `gamma` and the approximation for every `k` in `0..=k_max`.
pub fn binomial_sweep(n: u64, delta: &BigRational, k_max: u64) -> Result<Vec<BinomialRow>> {
    let j = centre(n, delta)?;
    check_k(n, j, k_max)?;
    let c2 = {
        let c = (BigRational::one() - delta) / delta;
        &c * &c
    };
    let mut back = BigRational::one();
    let mut rows = Vec::with_capacity(k_max as usize + 1);
    for k in 0..=k_max {
        if k > 0 {
            // factors a = j - k and a = j + k - 1 join the product
            let (lo, hi) = (j - k, j + k - 1);
            back *= BigRational::new(BigInt::from(lo + 1), BigInt::from(n - lo));
            back *= BigRational::new(BigInt::from(hi + 1), BigInt::from(n - hi));
            back *= &c2;
        }
        let BinomialGamma { ratio, gamma } = from_back_ratio(back.clone());
        rows.push(BinomialRow {
            k,
            ratio,
            gamma,
            rhat: binomial_rhat(n, delta, k)?,
        });
    }
    Ok(rows)
}
