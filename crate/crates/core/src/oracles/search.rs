//! Randomized and grid searches that approach the binary closed forms from
//! the feasible side.
//!
//! Random draws come from `Pcg32` (64-bit linear congruential state with a
//! permuted 32-bit output) seeded through `seed_from_u64`, so a seed fixes
//! the result bit for bit.

use rand::{Rng, SeedableRng};
use rand_pcg::Pcg32;

use crate::error::{check_closed, Error, Result};
use crate::info::{conv_raw, hb_raw, rate_raw};
use crate::scalar::bisect_predicate;

const MAX_AUX: usize = 4;
const REFINE_FLOOR: f64 = 1e-13;

/// Coordinate-wise hill climbing on a box. `eval` returns `None` for
/// infeasible points. Steps halve whenever no coordinate move improves.
fn refine<F>(x: &mut [f64], lo: &[f64], hi: &[f64], mut step: f64, mut best: f64, eval: F) -> f64
where
    F: Fn(&[f64]) -> Option<f64>,
{
    let mut cand = x.to_vec();
    while step > REFINE_FLOOR {
        let mut moved = false;
        for i in 0..x.len() {
            for dir in [1.0, -1.0] {
                cand.copy_from_slice(x);
                cand[i] = (x[i] + dir * step).clamp(lo[i], hi[i]);
                if cand[i] == x[i] {
                    continue;
                }
                if let Some(v) = eval(&cand) {
                    if v > best {
                        best = v;
                        x.copy_from_slice(&cand);
                        moved = true;
                    }
                }
            }
        }
        if !moved {
            step *= 0.5;
        }
    }
    best
}

/// `(I(X;Y1|W), I(Y2;W))` for `P(W = w) ∝ x[w]` and `P(X = 1 | W = w) = x[4 + w]`.
fn gq_terms(delta1: f64, cross2: f64, x: &[f64]) -> Option<(f64, f64)> {
    let total: f64 = x[..MAX_AUX].iter().sum();
    if !(total > 0.0) {
        return None;
    }
    let (mut cond, mut mix, mut mean) = (0.0, 0.0, 0.0);
    for w in 0..MAX_AUX {
        let pw = x[w] / total;
        let theta = x[MAX_AUX + w];
        cond += pw * (hb_raw(conv_raw(delta1, theta)) - hb_raw(delta1));
        mix += pw * hb_raw(conv_raw(cross2, theta));
        mean += pw * theta;
    }
    Some((cond, hb_raw(conv_raw(cross2, mean)) - mix))
}

/// Largest `I(Y2;W)` found over random `(W, X)` with `|W| <= 4` subject to
/// `I(X;Y1|W) >= t`, for the degraded broadcast channel with crossovers
/// `delta1` and `delta1 * delta2`.
///
/// The symmetric family `X = W + Ber(eta)` is included as a seeded
/// candidate. Returns negative infinity when nothing is feasible.
pub fn converse_search_gq(delta1: f64, delta2: f64, t: f64, trials: u64, seed: u64) -> Result<f64> {
    check_closed("delta1", delta1, 0.0, 0.5, "[0, 1/2]")?;
    check_closed("delta2", delta2, 0.0, 0.5, "[0, 1/2]")?;
    check_closed(
        "t",
        t,
        0.0,
        rate_raw(delta1) + crate::info::LOG2_GUARD,
        "[0, log 2 - h_b(delta1)]",
    )?;
    let cross2 = conv_raw(delta1, delta2);
    let eval = |x: &[f64]| {
        let (cond, obj) = gq_terms(delta1, cross2, x)?;
        (cond >= t).then_some(obj)
    };

    let mut best = f64::NEG_INFINITY;
    let mut best_x = [0.0; 2 * MAX_AUX];

    let eta = bisect_predicate(0.0, 0.5, 0.0, 200, |e| {
        hb_raw(conv_raw(delta1, e)) - hb_raw(delta1) >= t
    });
    let symmetric = [1.0, 1.0, 0.0, 0.0, eta, 1.0 - eta, 0.5, 0.5];
    if let Some(v) = eval(&symmetric) {
        best = v;
        best_x = symmetric;
    }

    let mut rng = Pcg32::seed_from_u64(seed);
    for _ in 0..trials {
        let used = rng.gen_range(1..=MAX_AUX);
        let mut x = [0.0; 2 * MAX_AUX];
        for w in 0..MAX_AUX {
            x[w] = if w < used { rng.gen::<f64>() } else { 0.0 };
            x[MAX_AUX + w] = rng.gen::<f64>();
        }
        if let Some(v) = eval(&x) {
            if v > best {
                best = v;
                best_x = x;
            }
        }
    }
    if best == f64::NEG_INFINITY {
        return Ok(best);
    }
    let lo = [0.0; 2 * MAX_AUX];
    let hi = [1.0; 2 * MAX_AUX];
    Ok(refine(&mut best_x, &lo, &hi, 0.05, best, eval))
}

/// `I(U; S_hat)` for `S ~ Ber(p)`, `U = S + Ber(q)` and the test channel
/// `a = P(S_hat = 1 | S = 0)`, `b = P(S_hat = 0 | S = 1)`.
fn test_channel_info(p: f64, q: f64, a: f64, b: f64) -> f64 {
    let p1 = (1.0 - p) * a + p * (1.0 - b);
    let mut cond = 0.0;
    if p1 > 0.0 {
        cond += p1 * hb_raw(conv_raw(q, (p * (1.0 - b) / p1).min(1.0)));
    }
    let p0 = 1.0 - p1;
    if p0 > 0.0 {
        cond += p0 * hb_raw(conv_raw(q, (p * b / p0).min(1.0)));
    }
    hb_raw(conv_raw(q, p)) - cond
}

/// Minimum of `I(U; S_hat)` over two-parameter test channels with expected
/// Hamming distortion at most `d`, by a `resolution x resolution` grid
/// followed by local refinement.
pub fn rbar_grid_search(p: f64, q: f64, d: f64, resolution: usize) -> Result<f64> {
    check_closed("p", p, 0.0, 0.5, "[0, 1/2]")?;
    check_closed("q", q, 0.0, 0.5, "[0, 1/2]")?;
    check_closed("d", d, 0.0, p, "[0, p]")?;
    if resolution < 2 {
        return Err(Error::Invalid("resolution must be at least 2".into()));
    }
    let feasible = |a: f64, b: f64| (1.0 - p) * a + p * b <= d;
    let a_max = if p < 1.0 {
        (d / (1.0 - p)).min(1.0)
    } else {
        1.0
    };
    let mut best = f64::INFINITY;
    let mut best_x = [0.0, 0.0];
    for i in 0..=resolution {
        let a = a_max * i as f64 / resolution as f64;
        let b_max = if p > 0.0 {
            ((d - (1.0 - p) * a) / p).clamp(0.0, 1.0)
        } else {
            1.0
        };
        for k in 0..=resolution {
            let b = b_max * k as f64 / resolution as f64;
            if !feasible(a, b) {
                continue;
            }
            let v = test_channel_info(p, q, a, b);
            if v < best {
                best = v;
                best_x = [a, b];
            }
        }
    }
    let step = 1.0 / resolution as f64;
    let neg = refine(&mut best_x, &[0.0, 0.0], &[1.0, 1.0], step, -best, |x| {
        feasible(x[0], x[1]).then(|| -test_channel_info(p, q, x[0], x[1]))
    });
    Ok(-neg)
}

/// `(I(S;V), I(S;V|U))` for `V = S + Ber(a)`, `S ~ Ber(p)`, `U = S + Ber(q)`.
fn symmetric_terms(p: f64, q: f64, a: f64) -> (f64, f64) {
    let info = hb_raw(conv_raw(p, a)) - hb_raw(a);
    let pu1 = conv_raw(q, p);
    let mut hv_given_u = 0.0;
    if pu1 > 0.0 {
        hv_given_u += pu1 * hb_raw(conv_raw(p * (1.0 - q) / pu1, a));
    }
    if pu1 < 1.0 {
        hv_given_u += (1.0 - pu1) * hb_raw(conv_raw(p * q / (1.0 - pu1), a));
    }
    (info, hv_given_u - hb_raw(a))
}

/// Minimum of `I(S;V|U)` over symmetric test channels `V = S + Ber(a)` with
/// `I(S;V) >= t`, by a grid over `a` in `[0, 1/2]` and local refinement.
pub fn fp_symmetric_search(p: f64, q: f64, t: f64, resolution: usize) -> Result<f64> {
    check_closed("p", p, 0.0, 0.5, "[0, 1/2]")?;
    check_closed("q", q, 0.0, 0.5, "[0, 1/2]")?;
    check_closed("t", t, 0.0, hb_raw(p), "[0, h_b(p)]")?;
    if resolution < 2 {
        return Err(Error::Invalid("resolution must be at least 2".into()));
    }
    let eval = |x: &[f64]| {
        let (info, cond) = symmetric_terms(p, q, x[0]);
        (info >= t).then_some(-cond)
    };
    let mut best = f64::NEG_INFINITY;
    let mut best_x = [0.0];
    for i in 0..=resolution {
        let a = 0.5 * i as f64 / resolution as f64;
        if let Some(v) = eval(&[a]) {
            if v > best {
                best = v;
                best_x = [a];
            }
        }
    }
    let neg = refine(
        &mut best_x,
        &[0.0],
        &[0.5],
        0.5 / resolution as f64,
        best,
        eval,
    );
    Ok(-neg)
}
