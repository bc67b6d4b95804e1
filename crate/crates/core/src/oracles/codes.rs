//! Exhaustive search over block encoders for tiny `(m, n)`.
//!
//! For a fixed encoder the optimal decoder estimates each source bit by its
//! posterior majority, so the expected distortion is
//! `sum_y sum_j min(W0_j(y), W1_j(y)) / (m 2^m denom)` where `W_b_j(y)` sums
//! the channel weights of codewords whose `j`-th source bit is `b`. Channel
//! weights depend only on the Hamming distance and are integers over a
//! common denominator.
//!
//! The channel is additive and the source uniform, so XOR-translating every
//! codeword by a fixed word leaves the distortion unchanged. The reduced
//! search therefore pins the first codeword to zero.

use std::ops::Add;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use super::{small_fraction, EncoderTable, ExactValue};
use crate::error::{Error, Result};

/// Default cap on evaluated (encoder, output word) pairs.
pub const DEFAULT_BUDGET: u128 = 1 << 32;

const MAX_N: u32 = 16;

/// Enumeration settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumOptions {
    pub budget: u128,
    /// Pin the first codeword to zero.
    pub reduce: bool,
}

impl Default for EnumOptions {
    fn default() -> Self {
        Self {
            budget: DEFAULT_BUDGET,
            reduce: true,
        }
    }
}

/// Additive noise whose law depends only on the Hamming weight: a pattern of
/// weight `d` has probability `weights[d] / denom`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoiseLaw {
    n: u32,
    weights: Vec<u128>,
    denom: u128,
}

impl NoiseLaw {
    /// I.i.d. `Ber(delta)` noise on `n` symbols, `delta = a/b` in `[0, 1]`.
    pub fn bernoulli(n: u32, delta: &BigRational) -> Result<Self> {
        check_n(n)?;
        let (a, b) = small_fraction("delta", delta)?;
        if a > b {
            return Err(Error::Invalid("delta must lie in [0, 1]".into()));
        }
        let overflow = || {
            Error::Invalid(format!(
                "delta = {delta} makes the weights overflow at n = {n}"
            ))
        };
        let denom = b.checked_pow(n).ok_or_else(overflow)?;
        let weights = (0..=n)
            .map(|d| {
                a.checked_pow(d)
                    .and_then(|x| x.checked_mul((b - a).checked_pow(n - d)?))
                    .ok_or_else(overflow)
            })
            .collect::<Result<_>>()?;
        Ok(Self { n, weights, denom })
    }

    /// Noise uniform on the Hamming sphere of radius `weight`.
    pub fn sphere(n: u32, weight: u32) -> Result<Self> {
        check_n(n)?;
        if weight > n {
            return Err(Error::Invalid(format!("weight {weight} exceeds n = {n}")));
        }
        let weights = (0..=n).map(|d| u128::from(d == weight)).collect();
        Ok(Self {
            n,
            weights,
            denom: binomial(n as u128, weight as u128),
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    fn pattern_weights(&self) -> Vec<u128> {
        (0..1u32 << self.n)
            .map(|e| self.weights[e.count_ones() as usize])
            .collect()
    }

    /// Fails unless `m 2^m denom` fits, which bounds every partial sum.
    fn check_headroom(&self, m: u32) -> Result<()> {
        (m as u128)
            .checked_mul(1u128 << m)
            .and_then(|x| x.checked_mul(self.denom))
            .map(|_| ())
            .ok_or_else(|| {
                Error::Invalid("noise law denominator is too large for exact summation".into())
            })
    }
}

fn check_n(n: u32) -> Result<()> {
    if n == 0 || n > MAX_N {
        return Err(Error::Invalid(format!("n must lie in 1..={MAX_N}")));
    }
    Ok(())
}

/// Outcome of an exhaustive minimization.
#[derive(Debug, Clone, PartialEq)]
pub struct BruteForce {
    pub value: ExactValue,
    /// Lowest-index optimal encoder.
    pub witness: EncoderTable,
    pub encoder_index: u64,
    pub encoders_evaluated: u64,
}

/// One point of a two-user Pareto frontier.
#[derive(Debug, Clone, PartialEq)]
pub struct FrontierPoint {
    pub d1: BigRational,
    pub d2: BigRational,
    pub encoder_index: u64,
    pub witness: EncoderTable,
}

trait Weight: Copy + Send + Sync + PartialOrd + Add<Output = Self> + Default {}
impl Weight for u128 {}
impl Weight for f64 {}

fn pick_min<T: PartialOrd>(a: T, b: T) -> T {
    if b < a {
        b
    } else {
        a
    }
}

/// `sum_y sum_j min(W0_j(y), W1_j(y))` for one codeword table.
fn distortion_total<T: Weight>(
    m: u32,
    n: u32,
    codewords: &[u32],
    pattern: &[T],
    scratch: &mut Vec<T>,
) -> T {
    let count = codewords.len();
    scratch.resize(count, T::default());
    let mut total = T::default();
    for y in 0..1u32 << n {
        for (w, &c) in scratch.iter_mut().zip(codewords) {
            *w = pattern[(c ^ y) as usize];
        }
        for j in 0..m {
            let bit = m - 1 - j;
            let (mut w0, mut w1) = (T::default(), T::default());
            for (s, &w) in scratch.iter().enumerate() {
                if (s >> bit) & 1 == 0 {
                    w0 = w0 + w;
                } else {
                    w1 = w1 + w;
                }
            }
            // ties decode to 0, which costs w1
            total = total + pick_min(w1, w0);
        }
    }
    total
}

struct Space {
    m: u32,
    n: u32,
    count: u64,
    reduce: bool,
}

impl Space {
    fn new(m: u32, n: u32, opts: &EnumOptions) -> Result<Self> {
        check_n(n)?;
        if m == 0 || m > 4 {
            return Err(Error::Invalid("m must lie in 1..=4".into()));
        }
        let free = (1u32 << m) - u32::from(opts.reduce);
        let count = (n as u128)
            .checked_mul(free as u128)
            .filter(|&bits| bits < 128)
            .map(|bits| 1u128 << bits);
        let required = count
            .and_then(|c| c.checked_mul(1u128 << n))
            .unwrap_or(u128::MAX);
        if required > opts.budget {
            return Err(Error::BudgetExceeded {
                required,
                budget: opts.budget,
            });
        }
        let count = u64::try_from(count.unwrap_or(u128::MAX))
            .map_err(|_| Error::Invalid("encoder space exceeds 2^64".into()))?;
        Ok(Self {
            m,
            n,
            count,
            reduce: opts.reduce,
        })
    }

    /// Fills `codewords` for encoder `idx`; the index equals the full-table
    /// lexicographic index in both the reduced and unreduced spaces.
    fn decode(&self, idx: u64, codewords: &mut Vec<u32>) {
        let total = 1usize << self.m;
        codewords.clear();
        codewords.resize(total, 0);
        let mask = (1u64 << self.n) - 1;
        let start = usize::from(self.reduce);
        for (i, c) in codewords.iter_mut().enumerate().skip(start) {
            let shift = self.n as u64 * (total - 1 - i) as u64;
            *c = ((idx >> shift) & mask) as u32;
        }
    }
}

/// Parallel minimum over the encoder space; ties go to the lowest index.
fn minimize<T: Weight>(space: &Space, pattern: &[T]) -> (T, u64) {
    (0..space.count)
        .into_par_iter()
        .map_init(
            || (Vec::new(), Vec::new()),
            |(codewords, scratch), idx| {
                space.decode(idx, codewords);
                (
                    distortion_total(space.m, space.n, codewords, pattern, scratch),
                    idx,
                )
            },
        )
        .reduce_with(|a, b| {
            if b.0 < a.0 || (b.0 == a.0 && b.1 < a.1) {
                b
            } else {
                a
            }
        })
        .expect("encoder space is never empty")
}

fn exact_distortion(total: u128, m: u32, law: &NoiseLaw) -> BigRational {
    let scale = (m as u128) * (1u128 << m) * law.denom;
    BigRational::new(BigInt::from(total), BigInt::from(scale))
}

fn minimize_exact(m: u32, law: &NoiseLaw, opts: &EnumOptions) -> Result<BruteForce> {
    let space = Space::new(m, law.n, opts)?;
    law.check_headroom(m)?;
    let (total, idx) = minimize(&space, &law.pattern_weights());
    Ok(BruteForce {
        value: ExactValue::Exact(exact_distortion(total, m, law)),
        witness: EncoderTable::from_index(m, law.n, idx)?,
        encoder_index: idx,
        encoders_evaluated: space.count,
    })
}

/// Exact distortion of a given encoder under its optimal decoder.
pub fn evaluate_encoder(encoder: &EncoderTable, law: &NoiseLaw) -> Result<BigRational> {
    if encoder.n() != law.n {
        return Err(Error::Invalid("encoder and noise law disagree on n".into()));
    }
    law.check_headroom(encoder.m())?;
    let total = distortion_total(
        encoder.m(),
        encoder.n(),
        encoder.codewords(),
        &law.pattern_weights(),
        &mut Vec::new(),
    );
    Ok(exact_distortion(total, encoder.m(), law))
}

fn check_delta(delta: &BigRational) -> Result<()> {
    if delta.is_zero() || *delta >= super::half() || *delta < BigRational::zero() {
        return Err(Error::Invalid(format!(
            "delta = {delta} must lie in (0, 1/2)"
        )));
    }
    Ok(())
}

/// Minimum expected per-symbol Hamming distortion over all encoders
/// `{0,1}^m -> {0,1}^n` on a BSC(delta), in exact arithmetic.
pub fn p2p_bruteforce(
    m: u32,
    n: u32,
    delta: &BigRational,
    opts: &EnumOptions,
) -> Result<BruteForce> {
    check_delta(delta)?;
    minimize_exact(m, &NoiseLaw::bernoulli(n, delta)?, opts)
}

/// Floating-point variant of [`p2p_bruteforce`] for irrational crossovers.
pub fn p2p_bruteforce_float(m: u32, n: u32, delta: f64, opts: &EnumOptions) -> Result<BruteForce> {
    if !(delta > 0.0 && delta < 0.5) {
        return Err(Error::Invalid(format!(
            "delta = {delta} must lie in (0, 1/2)"
        )));
    }
    let space = Space::new(m, n, opts)?;
    let pattern: Vec<f64> = (0..1u32 << n)
        .map(|e| {
            let d = e.count_ones() as i32;
            delta.powi(d) * (1.0 - delta).powi(n as i32 - d)
        })
        .collect();
    let (total, idx) = minimize(&space, &pattern);
    Ok(BruteForce {
        value: ExactValue::Float(total / (m as f64 * (1u64 << m) as f64)),
        witness: EncoderTable::from_index(m, n, idx)?,
        encoder_index: idx,
        encoders_evaluated: space.count,
    })
}

/// Expected distortion when the noise is uniform on the weight-`weight`
/// sphere, for a given encoder or minimized over all encoders.
pub fn spherical_psi_bruteforce(
    m: u32,
    n: u32,
    weight: u32,
    encoder: Option<&EncoderTable>,
    opts: &EnumOptions,
) -> Result<BruteForce> {
    let law = NoiseLaw::sphere(n, weight)?;
    match encoder {
        Some(e) => {
            if e.m() != m || e.n() != n {
                return Err(Error::Invalid(
                    "encoder dimensions do not match (m, n)".into(),
                ));
            }
            Ok(BruteForce {
                value: ExactValue::Exact(evaluate_encoder(e, &law)?),
                witness: e.clone(),
                encoder_index: e.index().unwrap_or(u64::MAX),
                encoders_evaluated: 1,
            })
        }
        None => minimize_exact(m, &law, opts),
    }
}

/// Keeps the lower-left Pareto points of `(t1, t2, index)` triples, with
/// the lowest index among exact duplicates.
fn pareto(mut pts: Vec<(u128, u128, u64)>) -> Vec<(u128, u128, u64)> {
    pts.sort_unstable();
    let mut out: Vec<(u128, u128, u64)> = Vec::new();
    for p in pts {
        if out.last().is_none_or(|last| p.1 < last.1) {
            out.push(p);
        }
    }
    out
}

/// Lower-left Pareto frontier of `(D1, D2)` over all encoders when user `i`
/// sees noise uniform on the weight-`w_i` sphere.
pub fn broadcast_frontier(
    m: u32,
    n: u32,
    w1: u32,
    w2: u32,
    opts: &EnumOptions,
) -> Result<Vec<FrontierPoint>> {
    if w1 >= w2 || w2 > n {
        return Err(Error::Invalid("need 0 <= w1 < w2 <= n".into()));
    }
    let (law1, law2) = (NoiseLaw::sphere(n, w1)?, NoiseLaw::sphere(n, w2)?);
    let mut work = *opts;
    // two evaluations per encoder
    work.budget /= 2;
    let space = Space::new(m, n, &work)?;
    law1.check_headroom(m)?;
    law2.check_headroom(m)?;
    let (p1, p2) = (law1.pattern_weights(), law2.pattern_weights());
    let points = (0..space.count)
        .into_par_iter()
        .fold(
            || (Vec::new(), Vec::new(), Vec::new()),
            |(mut acc, mut codewords, mut scratch), idx| {
                space.decode(idx, &mut codewords);
                let t1 = distortion_total(m, n, &codewords, &p1, &mut scratch);
                let t2 = distortion_total(m, n, &codewords, &p2, &mut scratch);
                acc.push((t1, t2, idx));
                if acc.len() >= 4096 {
                    acc = pareto(acc);
                }
                (acc, codewords, scratch)
            },
        )
        .map(|(acc, _, _)| pareto(acc))
        .reduce(Vec::new, |mut a, b| {
            a.extend(b);
            pareto(a)
        });
    points
        .into_iter()
        .map(|(t1, t2, idx)| {
            Ok(FrontierPoint {
                d1: exact_distortion(t1, m, &law1),
                d2: exact_distortion(t2, m, &law2),
                encoder_index: idx,
                witness: EncoderTable::from_index(m, n, idx)?,
            })
        })
        .collect()
}

/// Distortion of the identity map `{0,1}^m -> {0,1}^m`.
#[cfg(test)]
fn uncoded(m: u32, delta: &BigRational) -> BigRational {
    let id = EncoderTable::new(m, m, (0..1u32 << m).collect()).unwrap();
    evaluate_encoder(&id, &NoiseLaw::bernoulli(m, delta).unwrap()).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    fn exact(b: &BruteForce) -> BigRational {
        b.value.as_exact().unwrap().clone()
    }

    #[test]
    fn p2p_examples() {
        let o = EnumOptions::default();
        assert_eq!(
            exact(&p2p_bruteforce(1, 1, &rat(1, 10), &o).unwrap()),
            rat(1, 10)
        );
        assert_eq!(
            exact(&p2p_bruteforce(1, 2, &rat(1, 10), &o).unwrap()),
            rat(1, 10)
        );
        let three = p2p_bruteforce(1, 3, &rat(1, 10), &o).unwrap();
        assert_eq!(exact(&three), rat(7, 250));
        // the repetition code attains it
        assert_eq!(three.witness.bit_strings(), ["000", "111"]);
    }

    #[test]
    fn repetition_matches_majority_error() {
        // delta^3 + 3 delta^2 (1 - delta)
        let d = rat(1, 4);
        let e = EncoderTable::repetition(1, 3).unwrap();
        let v = evaluate_encoder(&e, &NoiseLaw::bernoulli(3, &d).unwrap()).unwrap();
        let one = BigRational::one();
        assert_eq!(v, &d * &d * &d + rat(3, 1) * &d * &d * (one - &d));
    }

    #[test]
    fn uncoded_distortion_is_delta() {
        for m in 1..=3 {
            assert_eq!(uncoded(m, &rat(3, 10)), rat(3, 10));
        }
    }

    #[test]
    fn reduction_preserves_optimum() {
        let full = EnumOptions {
            reduce: false,
            ..EnumOptions::default()
        };
        let red = EnumOptions::default();
        for m in 1..=2 {
            for d in [rat(1, 10), rat(1, 4), rat(1, 3)] {
                let a = p2p_bruteforce(m, 2, &d, &full).unwrap();
                let b = p2p_bruteforce(m, 2, &d, &red).unwrap();
                assert_eq!(a.value, b.value);
                assert_eq!(a.encoders_evaluated, b.encoders_evaluated << 2);
            }
            for w in 0..=2 {
                let a = spherical_psi_bruteforce(m, 2, w, None, &full).unwrap();
                let b = spherical_psi_bruteforce(m, 2, w, None, &red).unwrap();
                assert_eq!(a.value, b.value);
            }
        }
    }

    #[test]
    fn float_mode_agrees() {
        let o = EnumOptions::default();
        let f = p2p_bruteforce_float(1, 3, 0.1, &o).unwrap();
        assert!(!f.value.is_exact());
        assert!((f.value.to_f64() - 0.028).abs() < 1e-15);
    }

    #[test]
    fn spherical_examples() {
        let o = EnumOptions::default();
        let rep = EncoderTable::from_bit_strings(1, &["00", "11"]).unwrap();
        assert_eq!(
            exact(&spherical_psi_bruteforce(1, 2, 1, Some(&rep), &o).unwrap()),
            rat(1, 2)
        );
        let best = spherical_psi_bruteforce(1, 2, 1, None, &o).unwrap();
        assert_eq!(exact(&best), rat(0, 1));
        assert_eq!(best.witness.bit_strings(), ["00", "01"]);
        assert_eq!(
            exact(&spherical_psi_bruteforce(1, 2, 0, Some(&rep), &o).unwrap()),
            rat(0, 1)
        );
        assert!(spherical_psi_bruteforce(1, 2, 3, None, &o).is_err());
    }

    #[test]
    fn budget_is_enforced() {
        let o = EnumOptions {
            budget: 1000,
            reduce: true,
        };
        match p2p_bruteforce(2, 4, &rat(1, 10), &o) {
            Err(Error::BudgetExceeded { required, budget }) => {
                assert_eq!(required, 4096 * 16);
                assert_eq!(budget, 1000);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            p2p_bruteforce(4, 8, &rat(1, 10), &EnumOptions::default()),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn frontier_examples() {
        let o = EnumOptions::default();
        let f = broadcast_frontier(1, 2, 0, 1, &o).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!((f[0].d1.clone(), f[0].d2.clone()), (rat(0, 1), rat(0, 1)));
        assert_eq!(f[0].witness.bit_strings(), ["00", "01"]);

        // each user's single-user optimum appears on the frontier
        let f = broadcast_frontier(2, 4, 1, 2, &o).unwrap();
        let best1 = exact(&spherical_psi_bruteforce(2, 4, 1, None, &o).unwrap());
        let best2 = exact(&spherical_psi_bruteforce(2, 4, 2, None, &o).unwrap());
        assert_eq!(f.first().unwrap().d1, best1);
        assert_eq!(f.last().unwrap().d2, best2);
        assert!(f.windows(2).all(|w| w[0].d1 < w[1].d1 && w[0].d2 > w[1].d2));
        for p in &f {
            let law1 = NoiseLaw::sphere(4, 1).unwrap();
            assert_eq!(evaluate_encoder(&p.witness, &law1).unwrap(), p.d1);
        }
        assert!(broadcast_frontier(1, 2, 1, 1, &o).is_err());
    }

    #[test]
    fn parallel_runs_are_identical() {
        let o = EnumOptions::default();
        let a = p2p_bruteforce(2, 3, &rat(1, 4), &o).unwrap();
        for _ in 0..3 {
            assert_eq!(p2p_bruteforce(2, 3, &rat(1, 4), &o).unwrap(), a);
        }
    }
}
