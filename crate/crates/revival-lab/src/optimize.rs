//! Optimal-squeezing parameter selection for the two-photon family, plus the
//! generic numerical search and the integer-mean matching procedure.
//!
//! The closed form [`optimal_alpha_sq`] returns the squared displacement that
//! makes the given squeeze magnitude stationary for the variance-to-mean
//! quotient of the two-photon squeezed coherent state. At a fixed squeeze the
//! quotient is monotone in the displacement, so the matching numerical search
//! [`minimize_quotient_numeric`] inverts the same relation: it looks for the
//! displacement whose quotient-minimizing squeeze equals the requested one.

use crate::fock::StateParams;
use crate::moments;
use crate::{Error, Result};

/// A point on the optimal-squeezing locus of the two-photon family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalPoint {
    pub r: f64,
    pub alpha_sq: f64,
    pub mean_n: f64,
    pub quotient: f64,
}

fn neumaier_sum(terms: &[f64]) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for &t in terms {
        let s = sum + t;
        if sum.abs() >= t.abs() {
            comp += (sum - s) + t;
        } else {
            comp += (t - s) + sum;
        }
        sum = s;
    }
    sum + comp
}

/// Squared displacement `|α|²` on the optimal locus at squeeze magnitude `r`.
///
/// The exponential polynomial under the square root cancels to five decimal
/// digits near `r ≈ 0.4`, so the radicand is evaluated by Horner recursion in
/// `e^{2r}` and the outer terms by compensated summation; at `r = 0` the sum
/// collapses to zero up to rounding.
pub fn optimal_alpha_sq(r: f64) -> Result<f64> {
    if !r.is_finite() || r < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "squeeze magnitude must be finite and non-negative, got {}",
            r
        )));
    }
    let e2 = (2.0 * r).exp();
    const RADICAND: [f64; 9] = [
        441.0, 0.0, -5488.0, 560.0, 31502.0, -13120.0, 13296.0, -3440.0, 1849.0,
    ];
    let mut rad = 0.0;
    for c in RADICAND {
        rad = rad * e2 + c;
    }
    if rad < 0.0 {
        return Err(Error::NegativeRadicand { r, radicand: rad });
    }
    let e4 = e2 * e2;
    let e8 = e4 * e4;
    Ok(neumaier_sum(&[
        -57.0 / 80.0,
        (21.0 / 80.0) * e8,
        -(41.0 / 20.0) * e4,
        0.5 * e2,
        rad.sqrt() / 80.0,
    ]))
}

/// Evaluates the closed form together with the moments it implies.
pub fn optimal_point(r: f64) -> Result<OptimalPoint> {
    let alpha_sq = optimal_alpha_sq(r)?;
    let p = StateParams::n_photon_squeezed(alpha_sq.sqrt(), 0.0, r, 2);
    let m = moments::matrix_elements(&p);
    Ok(OptimalPoint {
        r,
        alpha_sq,
        mean_n: m.mean(),
        quotient: m.variance() / m.mean(),
    })
}

fn quotient(n: usize, alpha_mod: f64, r: f64) -> Result<f64> {
    moments::variance_quotient(&StateParams::n_photon_squeezed(alpha_mod, 0.0, r, n))
}

fn golden_min(mut f: impl FnMut(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    const INVPHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INVPHI * (hi - lo);
    let mut x2 = lo + INVPHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INVPHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INVPHI * (hi - lo);
            f2 = f(x2);
        }
    }
    0.5 * (lo + hi)
}

/// Squeeze magnitude minimizing the quotient at fixed displacement.
fn argmin_r(n: usize, alpha_mod: f64, r_hi: f64) -> Result<f64> {
    const COARSE: usize = 400;
    let f = |r: f64| quotient(n, alpha_mod, r.max(0.0)).unwrap_or(f64::INFINITY);
    let mut best = (0usize, f64::INFINITY);
    for i in 0..=COARSE {
        let r = r_hi * i as f64 / COARSE as f64;
        let q = f(r);
        if q < best.1 {
            best = (i, q);
        }
    }
    if best.0 == COARSE {
        return Err(Error::NoInteriorMinimum(format!(
            "quotient still falling at the edge r = {} of the squeeze scan",
            r_hi
        )));
    }
    let lo = r_hi * best.0.saturating_sub(1) as f64 / COARSE as f64;
    let hi = r_hi * (best.0 + 1) as f64 / COARSE as f64;
    Ok(golden_min(f, lo, hi, 1e-11))
}

/// Displacement whose optimal squeeze equals `r`, found numerically.
///
/// The outer bisection exploits that the quotient-minimizing squeeze grows
/// monotonically with the displacement; the inner search is a coarse scan
/// plus golden-section refinement. Agrees with [`optimal_alpha_sq`] for the
/// two-photon family and extends the locus to any photon number.
pub fn minimize_quotient_numeric(n: usize, r: f64) -> Result<f64> {
    if !r.is_finite() || r <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "squeeze magnitude must be positive, got {}",
            r
        )));
    }
    let r_hi = r + 2.0;
    let g = |a: f64| -> Result<f64> { Ok(argmin_r(n, a, r_hi)? - r) };
    let mut lo = 1e-6;
    if g(lo)? > 0.0 {
        return Err(Error::BracketFailure(format!(
            "optimal squeeze already exceeds {} at vanishing displacement",
            r
        )));
    }
    let mut hi = 1.0;
    let mut expansions = 0;
    while g(hi)? < 0.0 {
        hi *= 2.0;
        expansions += 1;
        if expansions > 40 {
            return Err(Error::BracketFailure(format!(
                "no displacement below {} reaches an optimal squeeze of {}",
                hi, r
            )));
        }
    }
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if g(mid)? <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-10 * hi.max(1.0) {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Squeeze-and-displacement pair on the optimal locus whose mean photon
/// number equals the integer `target_mean`.
///
/// Walks the locus with `|α|(r)` from the closed form when `n_extra` is two
/// and from the numerical search otherwise, checks that the mean is monotone
/// across the bracket, and root-finds by bisection with a secant polish.
pub fn match_integer_mean(
    n_extra: usize,
    target_mean: usize,
    r_bracket: (f64, f64),
) -> Result<(f64, f64)> {
    if target_mean < n_extra {
        return Err(Error::InvalidParameter(format!(
            "target mean {} cannot sit below the photon count {}",
            target_mean, n_extra
        )));
    }
    if target_mean == n_extra {
        return Ok((0.0, 0.0));
    }
    let (r_lo, r_hi) = r_bracket;
    if !(r_lo > 0.0 && r_hi > r_lo) {
        return Err(Error::InvalidParameter(format!(
            "squeeze bracket ({}, {}) must be positive and increasing",
            r_lo, r_hi
        )));
    }
    let alpha_of_r = |r: f64| -> Result<f64> {
        if n_extra == 2 {
            Ok(optimal_alpha_sq(r)?.sqrt())
        } else {
            minimize_quotient_numeric(n_extra, r)
        }
    };
    let mean_of_r = |r: f64| -> Result<f64> {
        let a = alpha_of_r(r)?;
        Ok(moments::mean_photon_number(
            &StateParams::n_photon_squeezed(a, 0.0, r, n_extra),
        ))
    };

    const PROBES: usize = 8;
    let mut prev = f64::NEG_INFINITY;
    let mut means = [0.0; PROBES + 1];
    for (i, m) in means.iter_mut().enumerate() {
        let r = r_lo + (r_hi - r_lo) * i as f64 / PROBES as f64;
        *m = mean_of_r(r)?;
        if *m < prev - 1e-9 {
            return Err(Error::BracketFailure(format!(
                "mean is not monotone across the squeeze bracket near r = {}",
                r
            )));
        }
        prev = *m;
    }
    let target = target_mean as f64;
    if (means[0] - target) * (means[PROBES] - target) > 0.0 {
        return Err(Error::BracketFailure(format!(
            "mean spans [{:.6}, {:.6}] over the bracket and never crosses {}",
            means[0], means[PROBES], target
        )));
    }

    let mut lo = r_lo;
    let mut hi = r_hi;
    let mut f_lo = means[0] - target;
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        let f_mid = mean_of_r(mid)? - target;
        if f_lo * f_mid <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
            f_lo = f_mid;
        }
        if hi - lo < 1e-12 {
            break;
        }
    }
    let mut r0 = lo;
    let mut r1 = hi;
    let mut h0 = mean_of_r(r0)? - target;
    let mut h1 = mean_of_r(r1)? - target;
    for _ in 0..8 {
        if h1 == h0 {
            break;
        }
        let next = r1 - h1 * (r1 - r0) / (h1 - h0);
        if !next.is_finite() || next < r_lo || next > r_hi {
            break;
        }
        r0 = r1;
        h0 = h1;
        r1 = next;
        h1 = mean_of_r(r1)? - target;
    }
    let root = if h1.abs() < h0.abs() { r1 } else { r0 };
    let resid = mean_of_r(root)? - target;
    if resid.abs() > 1e-6 {
        return Err(Error::BracketFailure(format!(
            "root polish stalled with residual {:.3e} at r = {}",
            resid, root
        )));
    }
    Ok((root, alpha_of_r(root)?))
}
