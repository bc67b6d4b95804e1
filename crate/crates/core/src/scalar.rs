//! One-dimensional root bracketing and maximization.

/// Golden ratio conjugate, (sqrt(5) - 1) / 2.
const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Finds the boundary of a monotone predicate on `[lo, hi]`.
///
/// `pred` must be `false` on `[lo, x*)` and `true` on `[x*, hi]`. Returns the
/// upper end of the final bracket, so the result always satisfies `pred`
/// whenever `pred(hi)` holds. Stops once the bracket is narrower than `tol`
/// or after `max_iter` halvings.
pub fn bisect_predicate<F>(mut lo: f64, mut hi: f64, tol: f64, max_iter: usize, mut pred: F) -> f64
where
    F: FnMut(f64) -> bool,
{
    for _ in 0..max_iter {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Maximum found by golden-section search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximum {
    pub x: f64,
    pub value: f64,
}

/// Golden-section maximization of a unimodal `f` on `[a, b]`.
pub fn golden_max<F>(mut a: f64, mut b: f64, tol: f64, mut f: F) -> Maximum
where
    F: FnMut(f64) -> f64,
{
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut iter = 0;
    while (b - a).abs() > tol && iter < 500 {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        iter += 1;
    }
    if fc >= fd {
        Maximum { x: c, value: fc }
    } else {
        Maximum { x: d, value: fd }
    }
}

/// `count` points spaced evenly in log scale over `[lo, hi]`, both ends included.
pub fn log_spaced(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi > lo && count >= 2);
    let (la, lb) = (lo.ln(), hi.ln());
    (0..count)
        .map(|i| {
            if i == count - 1 {
                hi
            } else {
                (la + (lb - la) * i as f64 / (count - 1) as f64).exp()
            }
        })
        .collect()
}

/// Evenly spaced points `lo, lo + step, ...` not exceeding `hi` (plus rounding slack).
pub fn grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    assert!(step > 0.0 && hi >= lo);
    let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    (0..count).map(|i| lo + step * i as f64).collect()
}
