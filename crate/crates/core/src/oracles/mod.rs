//! Exact and brute-force computations used to cross-check the closed forms.
//!
//! Exhaustive code searches work with integer weights over a common
//! denominator, so their results are exact rationals whenever the noise law
//! is rational.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

mod binomial;
mod codes;
mod coupling;
mod search;
mod verify;

pub use binomial::{
    binomial_gamma_exact, binomial_rhat, binomial_sweep, BinomialGamma, BinomialRow,
};
pub use codes::{
    broadcast_frontier, evaluate_encoder, p2p_bruteforce, p2p_bruteforce_float,
    spherical_psi_bruteforce, BruteForce, EnumOptions, FrontierPoint, NoiseLaw, DEFAULT_BUDGET,
};
pub use coupling::{coupling_distance_exact, coupling_within_bound};
pub use search::{converse_search_gq, fp_symmetric_search, rbar_grid_search};
pub use verify::{mgl_lin_slack, verify_inequalities, ViolationReport, SUITES};

pub use num_rational::BigRational;

/// A value that is either an exact rational or a double.
#[derive(Debug, Clone, PartialEq)]
pub enum ExactValue {
    Exact(BigRational),
    Float(f64),
}

impl ExactValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            ExactValue::Exact(r) => rational_to_f64(r),
            ExactValue::Float(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            ExactValue::Exact(r) => Some(r),
            ExactValue::Float(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, ExactValue::Exact(_))
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactValue::Exact(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            ExactValue::Float(x) => x.fmt(f),
        }
    }
}

/// Nearest double to a rational, robust to numerators and denominators
/// beyond the `f64` range.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if let Some(x) = r.to_f64() {
        if x.is_finite() && (x != 0.0 || r.is_zero()) {
            return x;
        }
    }
    // scale both parts down to 64 significant bits before dividing
    let (n, d) = (r.numer(), r.denom());
    let shift = |v: &BigInt| v.bits().saturating_sub(64);
    let (sn, sd) = (shift(n), shift(d));
    let nf = (n >> sn).to_f64().unwrap_or(0.0);
    let df = (d >> sd).to_f64().unwrap_or(1.0);
    nf / df * 2f64.powi(sn as i32 - sd as i32)
}

/// Parses `a/b`, an integer, or a finite decimal such as `0.25` into an exact
/// rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let s = text.trim();
    let bad = || Error::Invalid(format!("`{text}` is not a rational number"));
    if let Some((a, b)) = s.split_once('/') {
        let a: BigInt = a.trim().parse().map_err(|_| bad())?;
        let b: BigInt = b.trim().parse().map_err(|_| bad())?;
        if b.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(a, b));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.trim_start_matches(['+', '-']).is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let digits = if digits == "-" || digits == "+" {
        format!("{digits}0")
    } else {
        digits
    };
    let numer: BigInt = digits.parse().map_err(|_| bad())?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    Ok(if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
    })
}

/// Numerator and denominator of a nonnegative rational as machine integers.
pub(crate) fn small_fraction(name: &str, r: &BigRational) -> Result<(u128, u128)> {
    if r.is_negative() {
        return Err(Error::Invalid(format!("{name} must be nonnegative")));
    }
    match (r.numer().to_u128(), r.denom().to_u128()) {
        (Some(a), Some(b)) => Ok((a, b)),
        _ => Err(Error::Invalid(format!("{name} = {r} has too many digits"))),
    }
}

pub(crate) fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

/// A block encoder `{0,1}^m -> {0,1}^n`.
///
/// Codeword `i` is the image of the source word whose binary value is `i`.
/// Words are stored as integers with the first symbol in the most significant
/// bit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EncoderTable {
    m: u32,
    n: u32,
    codewords: Vec<u32>,
}

impl EncoderTable {
    pub fn new(m: u32, n: u32, codewords: Vec<u32>) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::Invalid("m and n must be positive".into()));
        }
        if m > 16 || n > 24 {
            return Err(Error::Invalid(
                "encoder tables are limited to m <= 16, n <= 24".into(),
            ));
        }
        if codewords.len() != 1usize << m {
            return Err(Error::Invalid(format!(
                "expected {} codewords, got {}",
                1usize << m,
                codewords.len()
            )));
        }
        if let Some(c) = codewords.iter().find(|&&c| c >> n != 0) {
            return Err(Error::Invalid(format!(
                "codeword {c} does not fit in {n} bits"
            )));
        }
        Ok(Self { m, n, codewords })
    }

    /// Parses codewords written as bit strings, e.g. `["00", "11"]`.
    pub fn from_bit_strings(m: u32, words: &[&str]) -> Result<Self> {
        let n = words.first().map_or(0, |w| w.len()) as u32;
        let mut codewords = Vec::with_capacity(words.len());
        for w in words {
            if w.len() as u32 != n || !w.chars().all(|c| c == '0' || c == '1') {
                return Err(Error::Invalid(format!("`{w}` is not a {n}-bit word")));
            }
            codewords.push(u32::from_str_radix(w, 2).map_err(|e| Error::Invalid(e.to_string()))?);
        }
        Self::new(m, n, codewords)
    }

    /// The table whose concatenated codewords, read as one base-`2^n`
    /// number, equal `index`.
    pub fn from_index(m: u32, n: u32, index: u64) -> Result<Self> {
        let count = 1usize << m;
        let codewords = (0..count)
            .map(|i| {
                let shift = n as u64 * (count - 1 - i) as u64;
                if shift >= 64 {
                    0
                } else {
                    ((index >> shift) & ((1u64 << n) - 1)) as u32
                }
            })
            .collect();
        Self::new(m, n, codewords)
    }

    /// Repetition of each source bit `n / m` times (requires `m | n`).
    pub fn repetition(m: u32, n: u32) -> Result<Self> {
        if m == 0 || !n.is_multiple_of(m) {
            return Err(Error::Invalid("repetition needs m to divide n".into()));
        }
        let r = n / m;
        let codewords = (0..1u32 << m)
            .map(|s| {
                (0..m).fold(0u32, |acc, j| {
                    let bit = (s >> (m - 1 - j)) & 1;
                    let block = if bit == 1 { (1u32 << r) - 1 } else { 0 };
                    (acc << r) | block
                })
            })
            .collect();
        Self::new(m, n, codewords)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn codewords(&self) -> &[u32] {
        &self.codewords
    }

    /// Position of this table in lexicographic enumeration order, when it
    /// fits in 64 bits.
    pub fn index(&self) -> Option<u64> {
        let mut acc: u128 = 0;
        for &c in &self.codewords {
            acc = acc.checked_mul(1u128 << self.n)?.checked_add(c as u128)?;
        }
        u64::try_from(acc).ok()
    }

    pub fn bit_strings(&self) -> Vec<String> {
        self.codewords
            .iter()
            .map(|&c| format!("{:0width$b}", c, width = self.n as usize))
            .collect()
    }
}

impl fmt::Display for EncoderTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.bit_strings().join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rational("1/10").unwrap(), rat(1, 10));
        assert_eq!(parse_rational("0.1").unwrap(), rat(1, 10));
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("3").unwrap(), rat(3, 1));
        assert_eq!(parse_rational("2.5e-1").unwrap(), rat(1, 4));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("0.1.2").is_err());
    }

    #[test]
    fn rational_to_f64_handles_huge_parts() {
        let big = BigInt::from(3u32).pow(2000u32);
        let r = BigRational::new(big.clone(), big * BigInt::from(4u32));
        assert_eq!(rational_to_f64(&r), 0.25);
        assert_eq!(rational_to_f64(&rat(7, 250)), 0.028);
    }

    #[test]
    fn exact_value_display() {
        assert_eq!(ExactValue::Exact(rat(7, 250)).to_string(), "7/250");
        assert_eq!(ExactValue::Float(0.5).to_string(), "0.5");
    }

    #[test]
    fn encoder_table_index_roundtrip() {
        let e = EncoderTable::from_bit_strings(1, &["00", "01"]).unwrap();
        assert_eq!(e.index(), Some(1));
        assert_eq!(EncoderTable::from_index(1, 2, 1).unwrap(), e);
        let r = EncoderTable::repetition(2, 4).unwrap();
        assert_eq!(r.bit_strings(), ["0000", "0011", "1100", "1111"]);
        assert_eq!(
            EncoderTable::from_index(2, 4, r.index().unwrap()).unwrap(),
            r
        );
        assert!(EncoderTable::new(1, 2, vec![0]).is_err());
        assert!(EncoderTable::new(1, 2, vec![0, 4]).is_err());
    }
}
