//! Constructors for the coherent, n-photon coherent, squeezed coherent, and
//! n-photon squeezed coherent state families.
//!
//! Two independent routes exist for every family. The primary routes are the
//! closed-form coefficient expansions (coherent series, Hermite expansion of
//! the squeezed base, with the extra-photon ladder applied on top); the check
//! routes are a finite hypergeometric sum for the coherent family and a
//! kernel recurrence for the squeezed base. All constructors renormalize at
//! the end and verify the truncation guard band.

use num_complex::Complex64 as C64;

use crate::fock::{apply_bdag, fock_dim, FockVector, StateParams};
use crate::moments;
use crate::{tol, Error, Result};

const RESCALE_LIMIT: f64 = 1e140;
const LN_RESCALE: f64 = 322.3619130191664;

/// One order of a Hermite-polynomial recurrence carried in scaled form:
/// the true value is `value_scaled · e^{log_scale}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermiteEval {
    pub k: usize,
    pub x: f64,
    pub value_scaled: f64,
    pub log_scale: f64,
}

impl HermiteEval {
    /// Unscaled `H_k(x)`; overflows to infinity for orders past ~150.
    pub fn value(&self) -> f64 {
        self.value_scaled * self.log_scale.exp()
    }
}

/// All Hermite orders `H_0(x) .. H_{k_max}(x)` by the three-term recurrence
/// `H_{k+1} = 2x H_k − 2k H_{k−1}`, rescaled whenever the running values pass
/// `1e140` so the recurrence stays finite far beyond the double-precision
/// overflow order.
pub fn hermite_scaled(k_max: usize, x: f64) -> Vec<HermiteEval> {
    let mut out = Vec::with_capacity(k_max + 1);
    let mut log_scale = 0.0;
    let mut h_prev = 1.0;
    let mut h_cur = 2.0 * x;
    out.push(HermiteEval {
        k: 0,
        x,
        value_scaled: h_prev,
        log_scale,
    });
    if k_max == 0 {
        return out;
    }
    out.push(HermiteEval {
        k: 1,
        x,
        value_scaled: h_cur,
        log_scale,
    });
    for k in 1..k_max {
        let next = 2.0 * x * h_cur - 2.0 * (k as f64) * h_prev;
        h_prev = h_cur;
        h_cur = next;
        if h_cur.abs() > RESCALE_LIMIT || h_prev.abs() > RESCALE_LIMIT {
            h_cur /= RESCALE_LIMIT;
            h_prev /= RESCALE_LIMIT;
            log_scale += LN_RESCALE;
        }
        out.push(HermiteEval {
            k: k + 1,
            x,
            value_scaled: h_cur,
            log_scale,
        });
    }
    out
}

fn ln_factorials(k_max: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(k_max + 1);
    let mut acc = 0.0;
    out.push(0.0);
    for k in 1..=k_max {
        acc += (k as f64).ln();
        out.push(acc);
    }
    out
}

fn finalize(coeffs: Vec<C64>) -> Result<FockVector> {
    let v = FockVector::new(coeffs).normalized()?;
    v.check_tail()?;
    Ok(v)
}

/// Turns per-coefficient log magnitudes and phases into a normalized vector,
/// subtracting the largest magnitude first so nothing overflows.
fn from_log_magnitudes(log_mag: &[f64], phase: &[C64]) -> Result<FockVector> {
    let top = log_mag
        .iter()
        .copied()
        .filter(|m| m.is_finite())
        .fold(f64::NEG_INFINITY, f64::max);
    if top == f64::NEG_INFINITY {
        return Err(Error::InvalidParameter(
            "state has no representable coefficients".to_string(),
        ));
    }
    let coeffs = log_mag
        .iter()
        .zip(phase)
        .map(|(m, ph)| {
            if m.is_finite() {
                ph * (m - top).exp()
            } else {
                C64::new(0.0, 0.0)
            }
        })
        .collect();
    finalize(coeffs)
}

fn rotate_phases(v: FockVector, theta: f64) -> FockVector {
    if theta == 0.0 {
        return v;
    }
    let coeffs = v
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| c * C64::from_polar(1.0, theta * k as f64))
        .collect();
    FockVector::new(coeffs)
}

/// Coherent state `c_k = e^{−|α|²/2} α^k / √k!`.
pub fn coherent_state(alpha_mod: f64, theta: f64, dim: usize) -> Result<FockVector> {
    StateParams::coherent(alpha_mod, theta).validate()?;
    if dim == 0 {
        return Err(Error::InvalidParameter("dimension must be positive".into()));
    }
    if alpha_mod == 0.0 {
        return FockVector::basis(0, dim);
    }
    let lnfact = ln_factorials(dim - 1);
    let ln_a = alpha_mod.ln();
    let mut log_mag = Vec::with_capacity(dim);
    let mut phase = Vec::with_capacity(dim);
    for (k, &lf) in lnfact.iter().enumerate() {
        log_mag.push(-0.5 * alpha_mod * alpha_mod + k as f64 * ln_a - 0.5 * lf);
        phase.push(C64::from_polar(1.0, theta * k as f64));
    }
    from_log_magnitudes(&log_mag, &phase)
}

/// The finite sum `Σ_j n!/(n−j)! · k!/(k−j)! · z^j / j!`, the polynomial that
/// the generalized hypergeometric series `₀F₂(−n, −k; z)` collapses to at
/// non-positive integer parameters.
pub fn hypergeom_0f2_poly(n: usize, k: usize, z: f64) -> f64 {
    let m = n.min(k);
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut comp = 0.0;
    for j in 0..m {
        term *= (n - j) as f64 * (k - j) as f64 * z / (j + 1) as f64;
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// n-photon coherent state by the ladder route: `(â† − α*)ⁿ/√n!` applied to
/// the coherent state, one normalized rung at a time.
pub fn n_photon_coherent(
    alpha_mod: f64,
    theta: f64,
    n_extra: usize,
    dim: usize,
) -> Result<FockVector> {
    let p = StateParams::n_photon_coherent(alpha_mod, theta, n_extra);
    n_photon_squeezed_recursive(&p, dim)
}

/// n-photon coherent state by the hypergeometric route,
/// `c_k ∝ (−α*)ⁿ α^k/√(n! k!) · ₀F₂(−n, −k; −1/|α|²)`, kept as an
/// independent check on the ladder construction.
pub fn n_photon_coherent_hypergeom(
    alpha_mod: f64,
    theta: f64,
    n_extra: usize,
    dim: usize,
) -> Result<FockVector> {
    StateParams::n_photon_coherent(alpha_mod, theta, n_extra).validate()?;
    if alpha_mod == 0.0 {
        return Err(Error::InvalidParameter(
            "hypergeometric route needs a nonzero displacement".to_string(),
        ));
    }
    if dim == 0 {
        return Err(Error::InvalidParameter("dimension must be positive".into()));
    }
    let z = -1.0 / (alpha_mod * alpha_mod);
    let lnfact = ln_factorials(dim.max(n_extra + 1) - 1);
    let ln_a = alpha_mod.ln();
    let nf = n_extra as f64;
    let sign_n = if n_extra.is_multiple_of(2) { 1.0 } else { -1.0 };
    let mut log_mag = Vec::with_capacity(dim);
    let mut phase = Vec::with_capacity(dim);
    for k in 0..dim {
        let f = hypergeom_0f2_poly(n_extra, k, z);
        if f == 0.0 {
            log_mag.push(f64::NEG_INFINITY);
            phase.push(C64::new(0.0, 0.0));
            continue;
        }
        log_mag.push(
            nf * ln_a - 0.5 * lnfact[n_extra] + k as f64 * ln_a - 0.5 * lnfact[k] + f.abs().ln(),
        );
        let sign = sign_n * f.signum();
        phase.push(C64::from_polar(1.0, theta * (k as f64 - nf)) * sign);
    }
    from_log_magnitudes(&log_mag, &phase)
}

struct SqueezeFrame {
    t: f64,
    sc2: f64,
    half_ln_t: f64,
}

fn squeeze_frame(r: f64) -> Result<SqueezeFrame> {
    if r <= 0.0 {
        return Err(Error::SingularSqueeze { r });
    }
    let t = r.tanh();
    Ok(SqueezeFrame {
        t,
        sc2: 2.0 * r.sinh() * r.cosh(),
        half_ln_t: 0.5 * t.ln(),
    })
}

/// Squeezed coherent state (real displacement `a`, `φ = 2θ` frame at θ=0)
/// through its Hermite expansion
/// `c_k ∝ tanh^{k/2}(r)/√(2^k k!) · H_k(a/√(2 sinh r cosh r))`.
pub fn squeezed_coherent_state(a: f64, r: f64, dim: usize) -> Result<FockVector> {
    let frame = squeeze_frame(r)?;
    StateParams::squeezed(a, 0.0, r).validate()?;
    if dim == 0 {
        return Err(Error::InvalidParameter("dimension must be positive".into()));
    }
    let x = a / frame.sc2.sqrt();
    let herm = hermite_scaled(dim - 1, x);
    let lnfact = ln_factorials(dim - 1);
    let mut log_mag = Vec::with_capacity(dim);
    let mut phase = Vec::with_capacity(dim);
    for k in 0..dim {
        let h = &herm[k];
        if h.value_scaled == 0.0 {
            log_mag.push(f64::NEG_INFINITY);
            phase.push(C64::new(0.0, 0.0));
            continue;
        }
        log_mag.push(
            h.log_scale + h.value_scaled.abs().ln() + k as f64 * frame.half_ln_t
                - 0.5 * (k as f64 * std::f64::consts::LN_2 + lnfact[k]),
        );
        phase.push(C64::new(h.value_scaled.signum(), 0.0));
    }
    from_log_magnitudes(&log_mag, &phase)
}

fn squeezed_bracket_closed(
    a: f64,
    r: f64,
    dim: usize,
    bracket: impl Fn(usize, f64, f64, &SqueezeFrame) -> f64,
) -> Result<FockVector> {
    let frame = squeeze_frame(r)?;
    if dim == 0 {
        return Err(Error::InvalidParameter("dimension must be positive".into()));
    }
    let x = a / frame.sc2.sqrt();
    let herm = hermite_scaled(dim, x);
    let lnfact = ln_factorials(dim - 1);
    let mut log_mag = Vec::with_capacity(dim);
    let mut phase = Vec::with_capacity(dim);
    for k in 0..dim {
        let (h0, h1) = (&herm[k], &herm[k + 1]);
        let scale = h1.log_scale;
        let h0_scaled = h0.value_scaled * (h0.log_scale - scale).exp();
        let b = bracket(k, h1.value_scaled, h0_scaled, &frame);
        if b == 0.0 {
            log_mag.push(f64::NEG_INFINITY);
            phase.push(C64::new(0.0, 0.0));
            continue;
        }
        log_mag.push(
            scale + b.abs().ln() + k as f64 * frame.half_ln_t
                - 0.5 * (k as f64 * std::f64::consts::LN_2 + lnfact[k]),
        );
        phase.push(C64::new(b.signum(), 0.0));
    }
    from_log_magnitudes(&log_mag, &phase)
}

/// One-photon squeezed coherent state from its closed Hermite form, with the
/// per-order bracket `−H_{k+1}/√(2 sinh r cosh r) + a(1/tanh r − 1) H_k`.
pub fn one_photon_squeezed_closed(a: f64, r: f64, dim: usize) -> Result<FockVector> {
    StateParams::n_photon_squeezed(a, 0.0, r, 1).validate()?;
    squeezed_bracket_closed(a, r, dim, |_, h1, h0, frame| {
        -h1 / frame.sc2.sqrt() + a * (1.0 / frame.t - 1.0) * h0
    })
}

/// Two-photon squeezed coherent state from its closed Hermite form; the
/// bracket carries an explicitly order-dependent `k (tanh r − 1/tanh r)` term.
pub fn two_photon_squeezed_closed(a: f64, r: f64, dim: usize) -> Result<FockVector> {
    StateParams::n_photon_squeezed(a, 0.0, r, 2).validate()?;
    squeezed_bracket_closed(a, r, dim, |k, h1, h0, frame| {
        let t = frame.t;
        let c1 = a / frame.sc2.sqrt() * (2.0 - t - 1.0 / t);
        let c0 = k as f64 * (t - 1.0 / t) + t + a * a * (1.0 / t - 1.0) * (1.0 / t - 1.0);
        c1 * h1 + c0 * h0
    })
}

/// Squeezed coherent base state for arbitrary squeeze phase, found by solving
/// `B v = 0` coefficient-by-coefficient:
/// `v_{k+1} = (α v_k − e^{iφ} sinh r √k v_{k−1}) / (cosh r √(k+1))`.
pub fn b_kernel_state(p: &StateParams, dim: usize) -> Result<FockVector> {
    p.validate()?;
    if dim == 0 {
        return Err(Error::InvalidParameter("dimension must be positive".into()));
    }
    let alpha = p.alpha();
    let c = p.r.cosh();
    let s_phase = C64::from_polar(p.r.sinh(), p.phi);
    let mut coeffs = vec![C64::new(0.0, 0.0); dim];
    coeffs[0] = C64::new(1.0, 0.0);
    for k in 0..dim - 1 {
        let below = if k == 0 {
            C64::new(0.0, 0.0)
        } else {
            s_phase * (k as f64).sqrt() * coeffs[k - 1]
        };
        coeffs[k + 1] = (alpha * coeffs[k] - below) / (c * ((k + 1) as f64).sqrt());
        if coeffs[k + 1].norm_sqr() > RESCALE_LIMIT {
            let inv = 1.0 / RESCALE_LIMIT;
            for ck in coeffs.iter_mut().take(k + 2) {
                *ck *= inv;
            }
        }
    }
    finalize(coeffs)
}

/// n-photon squeezed coherent state by the coefficient recursion: the base
/// state with `n_extra` normalized ladder steps
/// `c_k ← (√(k+1) sinh r e^{−iφ} c_{k+1} + √k cosh r c_{k−1} − α* c_k)/√(j+1)`
/// applied on top. Handles every family: zero squeeze falls back to the
/// coherent series, an unlocked squeeze phase to the kernel recurrence.
pub fn n_photon_squeezed_recursive(p: &StateParams, dim: usize) -> Result<FockVector> {
    p.validate()?;
    let mut v = if p.r == 0.0 {
        coherent_state(p.alpha_mod, p.theta, dim)?
    } else if p.lock_phi_to_2theta {
        rotate_phases(squeezed_coherent_state(p.alpha_mod, p.r, dim)?, p.theta)
    } else {
        b_kernel_state(p, dim)?
    };
    for j in 0..p.n_extra {
        v = apply_bdag(p, &v)?.scaled(C64::new(1.0 / ((j + 1) as f64).sqrt(), 0.0));
        let norm = v.norm();
        if (norm - 1.0).abs() > tol::OPERATOR {
            return Err(Error::UnderTruncated {
                tail_mass: v.tail_mass(),
                limit: tol::TAIL,
            });
        }
        v = v.scaled(C64::new(1.0 / norm, 0.0));
    }
    v.check_tail()?;
    Ok(v)
}

/// Builds the state described by `p` in a basis of dimension `dim`.
pub fn build_state(p: &StateParams, dim: usize) -> Result<FockVector> {
    n_photon_squeezed_recursive(p, dim)
}

/// Default basis dimension for `p`: the mean-photon sizing rule, one slot per
/// extra photon consumed by the ladder, and a squeeze ramp. The ramp covers
/// the geometric `tanh^k r` tail of squeezed number distributions, which dies
/// off much more slowly than the Poisson-like spread the mean-based rule is
/// calibrated for.
pub fn default_dim(p: &StateParams) -> usize {
    let ramp = if p.r > 0.0 {
        (30.0 / -p.r.tanh().ln()).ceil() as usize
    } else {
        0
    };
    fock_dim(moments::mean_photon_number(p)) + p.n_extra + ramp
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{inner_product, number_expectation_numeric};

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{} vs {} (tol {})", a, b, tol);
    }

    fn overlap_deficit(u: &FockVector, v: &FockVector) -> f64 {
        1.0 - inner_product(u, v).norm()
    }

    #[test]
    fn coherent_vacuum_is_the_ground_state() {
        let v = coherent_state(0.0, 0.0, 12).unwrap();
        assert_close((v.coeffs()[0] - 1.0).norm(), 0.0, 1e-15);
    }

    #[test]
    fn coherent_coefficients_match_the_series() {
        let a = 1.5;
        let v = coherent_state(a, 0.0, 40).unwrap();
        let c0 = (-a * a / 2.0f64).exp();
        assert_close(v.coeffs()[0].re, c0, 1e-14);
        assert_close(v.coeffs()[1].re, c0 * a, 1e-14);
        assert_close(v.coeffs()[4].re, c0 * a.powi(4) / 24.0f64.sqrt(), 1e-14);
        let w = coherent_state(a, 0.8, 40).unwrap();
        let arg = w.coeffs()[3].arg();
        assert_close(arg, 2.4, 1e-12);
    }

    #[test]
    fn coherent_moments_are_poissonian() {
        let v = coherent_state(2.0, 0.0, fock_dim(4.0)).unwrap();
        let (mean, _) = number_expectation_numeric(&v).unwrap();
        assert_close(mean, 4.0, 1e-9);

        let v = coherent_state(10.0, 0.0, fock_dim(100.0)).unwrap();
        let (mean, second) = number_expectation_numeric(&v).unwrap();
        assert_close(mean, 100.0, 1e-8);
        assert_close(second - mean * mean, 100.0, 1e-6);
    }

    #[test]
    fn coherent_needs_enough_room() {
        assert!(matches!(
            coherent_state(10.0, 0.0, 40),
            Err(Error::UnderTruncated { .. })
        ));
    }

    #[test]
    fn hypergeom_polynomial_examples() {
        for z in [-1.0, 0.3, 2.0] {
            assert_close(hypergeom_0f2_poly(0, 7, z), 1.0, 0.0);
            assert_close(hypergeom_0f2_poly(1, 1, z), 1.0 + z, 1e-15);
            let z2 = 1.0 + 6.0 * z + 6.0 * z * z;
            assert_close(hypergeom_0f2_poly(2, 3, z), z2, 1e-14 * z2.abs().max(1.0));
        }
    }

    #[test]
    fn one_photon_coherent_node_sits_at_the_displacement() {
        let v = n_photon_coherent(2.0, 0.0, 1, 50).unwrap();
        assert_close(v.coeffs()[4].norm(), 0.0, 1e-12);
    }

    #[test]
    fn n_photon_coherent_reduces_to_fock_at_zero_displacement() {
        let v = n_photon_coherent(0.0, 0.0, 2, 20).unwrap();
        assert_close((v.coeffs()[2] - 1.0).norm(), 0.0, 1e-14);
    }

    #[test]
    fn ladder_and_hypergeom_routes_agree() {
        for n in 1usize..=3 {
            for a in [0.5, 2.0] {
                for theta in [0.0, 0.6] {
                    let dim = fock_dim(a * a + n as f64) + n;
                    let u = n_photon_coherent(a, theta, n, dim).unwrap();
                    let v = n_photon_coherent_hypergeom(a, theta, n, dim).unwrap();
                    assert!(overlap_deficit(&u, &v) < 1e-12);
                }
            }
        }
    }

    #[test]
    fn hermite_matches_exact_integers_at_one() {
        let herm = hermite_scaled(25, 1.0);
        let mut exact: Vec<i128> = vec![1, 2];
        for k in 1..25 {
            let next = 2 * exact[k] - 2 * (k as i128) * exact[k - 1];
            exact.push(next);
        }
        for k in 0..=25 {
            let got = herm[k].value();
            assert_close(
                got,
                exact[k] as f64,
                1e-12 * (exact[k].abs() as f64).max(1.0),
            );
        }
    }

    #[test]
    fn hermite_recurrence_holds_in_scaled_form() {
        for x in [0.3, 2.7, 14.25] {
            let herm = hermite_scaled(300, x);
            for k in 1..300 {
                let scale = herm[k + 1].log_scale;
                let hm = herm[k - 1].value_scaled * (herm[k - 1].log_scale - scale).exp();
                let h0 = herm[k].value_scaled * (herm[k].log_scale - scale).exp();
                let h1 = herm[k + 1].value_scaled;
                let resid = h1 - (2.0 * x * h0 - 2.0 * k as f64 * hm);
                let mag = h1
                    .abs()
                    .max((2.0 * x * h0).abs())
                    .max((2.0 * k as f64 * hm).abs())
                    .max(1e-300);
                assert!(resid.abs() <= 1e-12 * mag, "k={} x={}", k, x);
                assert!(h1.is_finite() && herm[k + 1].log_scale.is_finite());
            }
        }
    }

    #[test]
    fn squeezed_state_means_match_the_closed_form() {
        let v = squeezed_coherent_state(2.56230, 0.424875, 60).unwrap();
        let (mean, _) = number_expectation_numeric(&v).unwrap();
        assert_close(mean, 3.0, 1e-2);

        let dim = fock_dim(100.5);
        let v = squeezed_coherent_state(24.4485, 0.8992, dim).unwrap();
        let (mean, _) = number_expectation_numeric(&v).unwrap();
        assert_close(mean, 100.0, 2e-2);
    }

    #[test]
    fn squeezed_state_rejects_zero_squeeze() {
        assert!(matches!(
            squeezed_coherent_state(1.0, 0.0, 30),
            Err(Error::SingularSqueeze { .. })
        ));
    }

    #[test]
    fn hermite_and_kernel_routes_agree() {
        for (a, r) in [(2.56230, 0.424875), (24.4485, 0.8992), (0.0, 0.7)] {
            let p = StateParams::squeezed(a, 0.0, r);
            let dim = default_dim(&p);
            let u = squeezed_coherent_state(a, r, dim).unwrap();
            let v = b_kernel_state(&p, dim).unwrap();
            assert!(overlap_deficit(&u, &v) < 1e-10, "a={} r={}", a, r);
        }
    }

    #[test]
    fn weak_squeeze_approaches_the_coherent_state() {
        let u = squeezed_coherent_state(2.0, 1e-6, 50).unwrap();
        let v = coherent_state(2.0, 0.0, 50).unwrap();
        assert!(overlap_deficit(&u, &v) < 1e-6);
    }

    #[test]
    fn recursion_base_case_is_the_squeezed_state() {
        let p = StateParams::squeezed(2.56230, 0.0, 0.424875);
        let u = n_photon_squeezed_recursive(&p, 60).unwrap();
        let v = squeezed_coherent_state(2.56230, 0.424875, 60).unwrap();
        assert!(overlap_deficit(&u, &v) < 1e-14);
    }

    #[test]
    fn recursion_matches_the_one_photon_closed_form() {
        let p = StateParams::n_photon_squeezed(2.56230, 0.0, 0.424875, 1);
        let u = n_photon_squeezed_recursive(&p, 61).unwrap();
        let v = one_photon_squeezed_closed(2.56230, 0.424875, 61).unwrap();
        assert!(overlap_deficit(&u, &v) < 1e-9);
    }

    #[test]
    fn recursion_matches_the_two_photon_closed_form() {
        let p = StateParams::n_photon_squeezed(2.18536, 0.0, 0.424875, 2);
        let dim = default_dim(&p);
        let u = n_photon_squeezed_recursive(&p, dim).unwrap();
        let v = two_photon_squeezed_closed(2.18536, 0.424875, dim).unwrap();
        assert!(overlap_deficit(&u, &v) < 1e-8);
        let (mean, _) = number_expectation_numeric(&v).unwrap();
        assert_close(mean, 5.0, 1e-2);
    }

    #[test]
    fn two_photon_closed_form_at_the_large_displacement_point() {
        let p = StateParams::n_photon_squeezed(23.92344, 0.0, 0.8992, 2);
        let dim = default_dim(&p);
        let v = two_photon_squeezed_closed(23.92344, 0.8992, dim).unwrap();
        let (mean, _) = number_expectation_numeric(&v).unwrap();
        assert_close(mean, 102.0, 3e-2);
    }

    #[test]
    fn two_photon_state_is_orthogonal_to_its_base() {
        let dim = 70;
        let u = two_photon_squeezed_closed(2.18536, 0.424875, dim).unwrap();
        let v = squeezed_coherent_state(2.18536, 0.424875, dim).unwrap();
        assert!(inner_product(&u, &v).norm() < 1e-8);
    }

    #[test]
    fn unlocked_phase_recursion_is_orthonormal_with_the_closed_mean() {
        let base = StateParams::n_photon_squeezed(1.3, 0.4, 0.5, 0).with_phi(1.1);
        let dim = 70;
        let mut states = Vec::new();
        for n in 0usize..3 {
            let mut p = base;
            p.n_extra = n;
            states.push(n_photon_squeezed_recursive(&p, dim).unwrap());
        }
        for (i, u) in states.iter().enumerate() {
            for (j, v) in states.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                assert_close(inner_product(u, v).norm(), target, 1e-8);
            }
        }
        let mut p2 = base;
        p2.n_extra = 2;
        let (mean, second) = number_expectation_numeric(&states[2]).unwrap();
        assert_close(mean, moments::mean_photon_number(&p2), 1e-8 * mean);
        let var = second - mean * mean;
        assert_close(var, moments::photon_variance(&p2), 1e-6 * var);
    }

    #[test]
    fn locked_nonzero_theta_rotates_coefficient_phases() {
        let p = StateParams::n_photon_squeezed(2.18536, 0.7, 0.424875, 2);
        let dim = default_dim(&p);
        let v = n_photon_squeezed_recursive(&p, dim).unwrap();
        let v0 = n_photon_squeezed_recursive(
            &StateParams::n_photon_squeezed(2.18536, 0.0, 0.424875, 2),
            dim,
        )
        .unwrap();
        for k in [3usize, 5, 8] {
            assert_close(v.coeffs()[k].norm(), v0.coeffs()[k].norm(), 1e-12);
        }
        let (mean, _) = number_expectation_numeric(&v).unwrap();
        assert_close(mean, moments::mean_photon_number(&p), 1e-8 * mean);
    }

    #[test]
    fn fock_params_build_number_states() {
        let v = build_state(&StateParams::fock(3), 30).unwrap();
        assert_close((v.coeffs()[3] - 1.0).norm(), 0.0, 1e-14);
    }

    #[test]
    fn default_dim_clears_the_tail_for_every_preset_scale() {
        let presets = [
            StateParams::coherent(2.0, 0.0),
            StateParams::n_photon_coherent(10.0, 0.0, 3),
            StateParams::squeezed(24.4485, 0.0, 0.8992),
            StateParams::n_photon_squeezed(23.92344, 0.0, 0.8992, 2),
        ];
        for p in presets {
            let v = build_state(&p, default_dim(&p)).unwrap();
            assert!(v.tail_mass() <= tol::TAIL);
        }
    }
}
