//! Jaynes-Cummings dynamics of a two-level atom prepared in its ground state
//! and coupled to a single field mode, evaluated from the closed-form dressed
//! amplitudes for an arbitrary initial photon distribution.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::fock::StateParams;
use crate::{states, Error, Result};

/// Coupling, detuning, and the time grid a trace is evaluated on.
#[derive(Debug, Clone, PartialEq)]
pub struct JcmParams {
    pub lambda_coupling: f64,
    pub detuning: f64,
    pub t_grid: Vec<f64>,
}

impl JcmParams {
    pub fn new(lambda_coupling: f64, detuning: f64, t_grid: Vec<f64>) -> Result<Self> {
        if !(lambda_coupling.is_finite() && lambda_coupling > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "coupling must be positive, got {}",
                lambda_coupling
            )));
        }
        if !detuning.is_finite() {
            return Err(Error::InvalidParameter("detuning must be finite".into()));
        }
        if t_grid.is_empty() {
            return Err(Error::InvalidParameter("time grid is empty".into()));
        }
        if t_grid[0] != 0.0 {
            return Err(Error::InvalidParameter(format!(
                "time grid must start at zero, got {}",
                t_grid[0]
            )));
        }
        for pair in t_grid.windows(2) {
            if !(pair[1].is_finite() && pair[1] > pair[0]) {
                return Err(Error::InvalidParameter(format!(
                    "time grid must increase strictly, got {} after {}",
                    pair[1], pair[0]
                )));
            }
        }
        Ok(JcmParams {
            lambda_coupling,
            detuning,
            t_grid,
        })
    }

    /// Uniform grid of `points` samples covering `[0, tmax]` inclusive.
    pub fn uniform(lambda_coupling: f64, detuning: f64, tmax: f64, points: usize) -> Result<Self> {
        if !(tmax.is_finite() && tmax > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "trace length must be positive, got {}",
                tmax
            )));
        }
        if points < 2 {
            return Err(Error::InvalidParameter(format!(
                "a trace needs at least two samples, got {}",
                points
            )));
        }
        let denom = (points - 1) as f64;
        let t_grid = (0..points).map(|i| tmax * i as f64 / denom).collect();
        Self::new(lambda_coupling, detuning, t_grid)
    }
}

/// Generalized Rabi frequency for the `n`-quantum doublet.
pub fn rabi_frequency(lambda_coupling: f64, detuning: f64, n: usize) -> f64 {
    (detuning * detuning + 4.0 * lambda_coupling * lambda_coupling * n as f64).sqrt()
}

/// Dressed amplitudes at time `t` for an initial amplitude `a_n` on the
/// state with `n` photons and the atom in the ground state.
///
/// Returns the pair `(ground, excited)` where the excited component carries
/// `n - 1` photons. For `n = 0` on resonance the doublet is frozen.
pub fn amplitudes(a_n: C64, n: usize, lambda_coupling: f64, detuning: f64, t: f64) -> (C64, C64) {
    let omega = rabi_frequency(lambda_coupling, detuning, n);
    if omega == 0.0 {
        return (a_n, C64::new(0.0, 0.0));
    }
    let half = 0.5 * omega * t;
    let (sin, cos) = half.sin_cos();
    let ground = a_n * C64::new(cos, detuning / omega * sin);
    let excited = -a_n * (2.0 * lambda_coupling * (n as f64).sqrt() / omega * sin);
    (ground, excited)
}

/// Probability of finding the atom in the ground state at time `t`, given
/// the photon number distribution of the field.
pub fn ground_state_probability(probs: &[f64], lambda_coupling: f64, detuning: f64, t: f64) -> f64 {
    let mut acc = 0.0;
    for (n, &p) in probs.iter().enumerate() {
        if p == 0.0 {
            continue;
        }
        let omega = rabi_frequency(lambda_coupling, detuning, n);
        if omega == 0.0 {
            acc += p;
            continue;
        }
        let s = (0.5 * omega * t).sin();
        let transfer = 4.0 * lambda_coupling * lambda_coupling * n as f64 / (omega * omega);
        acc += p * (1.0 - transfer * s * s);
    }
    acc
}

/// Resonant form of the ground-state probability, a plain cosine average.
pub fn resonant_probability(probs: &[f64], lambda_coupling: f64, t: f64) -> f64 {
    probs
        .iter()
        .enumerate()
        .map(|(n, &p)| 0.5 * p * (1.0 + (2.0 * lambda_coupling * (n as f64).sqrt() * t).cos()))
        .sum()
}

/// Evaluates the ground-state probability across the whole grid sequentially.
pub fn probabilities_seq(probs: &[f64], jcm: &JcmParams) -> Vec<f64> {
    jcm.t_grid
        .iter()
        .map(|&t| ground_state_probability(probs, jcm.lambda_coupling, jcm.detuning, t))
        .collect()
}

/// Evaluates the ground-state probability across the whole grid, splitting
/// the time samples over a thread pool when the `parallel` feature is on.
#[cfg(feature = "parallel")]
pub fn ground_state_probabilities(probs: &[f64], jcm: &JcmParams) -> Vec<f64> {
    use rayon::prelude::*;
    jcm.t_grid
        .par_iter()
        .map(|&t| ground_state_probability(probs, jcm.lambda_coupling, jcm.detuning, t))
        .collect()
}

#[cfg(not(feature = "parallel"))]
pub fn ground_state_probabilities(probs: &[f64], jcm: &JcmParams) -> Vec<f64> {
    probabilities_seq(probs, jcm)
}

/// A fully evaluated trace together with the scales its envelope needs.
#[derive(Debug, Clone, PartialEq)]
pub struct RevivalTrace {
    pub times: Vec<f64>,
    pub p_ground: Vec<f64>,
    pub mean_n: f64,
    pub lambda_coupling: f64,
    pub detuning: f64,
}

/// Builds the field state at its default truncation and runs the trace.
pub fn revival_trace(p: &StateParams, jcm: &JcmParams) -> Result<RevivalTrace> {
    revival_trace_with_dim(p, jcm, states::default_dim(p))
}

/// Same as [`revival_trace`] with an explicit truncation dimension.
pub fn revival_trace_with_dim(
    p: &StateParams,
    jcm: &JcmParams,
    dim: usize,
) -> Result<RevivalTrace> {
    let state = states::build_state(p, dim)?;
    let probs = state.probabilities();
    let (mean_n, _) = crate::fock::number_expectation_numeric(&state)?;
    Ok(RevivalTrace {
        times: jcm.t_grid.clone(),
        p_ground: ground_state_probabilities(&probs, jcm),
        mean_n,
        lambda_coupling: jcm.lambda_coupling,
        detuning: jcm.detuning,
    })
}

/// Collapse and revival landmarks read off a trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeMetrics {
    pub collapse_time: f64,
    pub first_revival_time: f64,
    pub revival_peak: f64,
}

/// Extracts collapse and revival landmarks from a trace on a uniform grid.
///
/// The local oscillation amplitude is half the peak-to-peak spread of the
/// trace over a sliding window one Rabi period wide at the mean photon
/// number. The collapse time is the first sample where that amplitude drops
/// below 0.05, and the revival is the highest sample strictly beyond twice
/// the collapse time.
pub fn envelope_metrics(trace: &RevivalTrace) -> Result<EnvelopeMetrics> {
    let times = &trace.times;
    let p = &trace.p_ground;
    if times.len() < 2 || trace.mean_n < 1e-9 {
        return Err(Error::NoRevivalInWindow);
    }
    let dt = times[1] - times[0];
    let window = 2.0 * PI / (2.0 * trace.lambda_coupling * trace.mean_n.sqrt());
    let half = ((0.5 * window / dt).round() as usize).max(1);

    let amplitude = |i: usize| {
        let lo = i.saturating_sub(half);
        let hi = (i + half + 1).min(p.len());
        let mut max = f64::NEG_INFINITY;
        let mut min = f64::INFINITY;
        for &v in &p[lo..hi] {
            max = max.max(v);
            min = min.min(v);
        }
        0.5 * (max - min)
    };

    let mut collapse_idx = None;
    for i in 0..p.len() {
        if amplitude(i) < 0.05 {
            collapse_idx = Some(i);
            break;
        }
    }
    let Some(ci) = collapse_idx else {
        return Err(Error::NoRevivalInWindow);
    };
    let collapse_time = times[ci];

    let mut best: Option<(f64, f64)> = None;
    for i in 0..p.len() {
        if times[i] > 2.0 * collapse_time {
            let better = match best {
                Some((_, peak)) => p[i] > peak,
                None => true,
            };
            if better {
                best = Some((times[i], p[i]));
            }
        }
    }
    let Some((first_revival_time, revival_peak)) = best else {
        return Err(Error::NoRevivalInWindow);
    };
    Ok(EnvelopeMetrics {
        collapse_time,
        first_revival_time,
        revival_peak,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::FockVector;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{} vs {} (tol {})", a, b, tol);
    }

    fn trace_for(p: &StateParams, tmax: f64, points: usize) -> RevivalTrace {
        let jcm = JcmParams::uniform(1.0, 0.0, tmax, points).unwrap();
        revival_trace(p, &jcm).unwrap()
    }

    #[test]
    fn grid_validation_rejects_bad_input() {
        assert!(JcmParams::uniform(0.0, 0.0, 10.0, 100).is_err());
        assert!(JcmParams::uniform(1.0, 0.0, -1.0, 100).is_err());
        assert!(JcmParams::uniform(1.0, 0.0, 10.0, 1).is_err());
        assert!(JcmParams::new(1.0, 0.0, vec![0.1, 0.2]).is_err());
        assert!(JcmParams::new(1.0, 0.0, vec![0.0, 0.2, 0.2]).is_err());
        assert!(JcmParams::new(1.0, 0.0, vec![]).is_err());
    }

    #[test]
    fn amplitudes_stay_unitary() {
        let a_n = C64::new(0.6, -0.3);
        for n in 0..12 {
            for &t in &[0.0, 0.37, 2.9, 17.3] {
                for &d in &[0.0, 1.5] {
                    let (g, e) = amplitudes(a_n, n, 1.0, d, t);
                    assert_close(g.norm_sqr() + e.norm_sqr(), a_n.norm_sqr(), 1e-14);
                }
            }
        }
    }

    #[test]
    fn trace_starts_at_unit_probability() {
        let tr = trace_for(&StateParams::coherent(2.0, 0.0), 10.0, 500);
        assert_close(tr.p_ground[0], 1.0, 1e-12);
    }

    #[test]
    fn single_photon_rabi_flop() {
        let probs = [0.0, 1.0];
        let t_half = PI / 2.0;
        assert_close(
            ground_state_probability(&probs, 1.0, 0.0, t_half),
            0.0,
            1e-12,
        );
        assert_close(ground_state_probability(&probs, 1.0, 0.0, PI), 1.0, 1e-12);
    }

    #[test]
    fn resonant_form_matches_the_general_one() {
        let state = states::coherent_state(1.4, 0.7, 60).unwrap();
        let probs = state.probabilities();
        for &t in &[0.0, 0.9, 4.4, 13.0] {
            let a = ground_state_probability(&probs, 1.3, 0.0, t);
            let b = resonant_probability(&probs, 1.3, t);
            assert_close(a, b, 1e-12);
        }
    }

    #[test]
    fn detuning_suppresses_transfer() {
        let probs = [0.0, 1.0];
        let strongly_detuned = (0..200)
            .map(|i| ground_state_probability(&probs, 1.0, 40.0, i as f64 * 0.05))
            .fold(f64::INFINITY, f64::min);
        assert!(strongly_detuned > 0.99);
    }

    #[test]
    fn parallel_and_sequential_traces_agree() {
        let state = states::coherent_state(2.0, 0.0, 50).unwrap();
        let probs = state.probabilities();
        let jcm = JcmParams::uniform(1.0, 0.7, 25.0, 2000).unwrap();
        assert_eq!(
            ground_state_probabilities(&probs, &jcm),
            probabilities_seq(&probs, &jcm)
        );
    }

    #[test]
    fn coherent_collapse_and_revival_landmarks() {
        let tr = trace_for(&StateParams::coherent(2.0, 0.0), 60.0, 6000);
        let m = envelope_metrics(&tr).unwrap();
        assert_close(m.collapse_time, 2.580, 0.05);
        assert_close(m.first_revival_time, 37.886, 0.05);
        assert_close(m.revival_peak, 0.82589, 2e-3);
    }

    #[test]
    fn three_photon_coherent_landmarks() {
        let tr = trace_for(&StateParams::n_photon_coherent(2.0, 0.0, 3), 60.0, 6000);
        let m = envelope_metrics(&tr).unwrap();
        assert_close(m.collapse_time, 4.521, 0.05);
        assert_close(m.first_revival_time, 21.804, 0.05);
        assert_close(m.revival_peak, 0.87844, 2e-3);
    }

    #[test]
    fn squeezed_coherent_landmarks() {
        let tr = trace_for(&StateParams::squeezed(2.56230, 0.0, 0.424875), 60.0, 6000);
        let m = envelope_metrics(&tr).unwrap();
        assert_close(m.collapse_time, 3.721, 0.05);
        assert_close(m.first_revival_time, 37.866, 0.05);
        assert_close(m.revival_peak, 0.90750, 2e-3);
    }

    #[test]
    fn two_photon_squeezed_landmarks() {
        let tr = trace_for(
            &StateParams::n_photon_squeezed(2.18536, 0.0, 0.424875, 2),
            60.0,
            6000,
        );
        let m = envelope_metrics(&tr).unwrap();
        assert_close(m.collapse_time, 6.971, 0.05);
        assert_close(m.first_revival_time, 30.835, 0.05);
        assert_close(m.revival_peak, 0.92011, 2e-3);
    }

    #[test]
    fn large_amplitude_revival_peaks() {
        let tr = trace_for(&StateParams::squeezed(24.4485, 0.0, 0.8992), 120.0, 24000);
        let m = envelope_metrics(&tr).unwrap();
        assert_close(m.revival_peak, 0.95903, 2e-3);

        let tr = trace_for(
            &StateParams::n_photon_squeezed(23.92344, 0.0, 0.8992, 2),
            120.0,
            24000,
        );
        let m = envelope_metrics(&tr).unwrap();
        assert_close(m.revival_peak, 0.83637, 2e-3);
    }

    #[test]
    fn pure_oscillations_never_collapse() {
        let jcm = JcmParams::uniform(1.0, 0.0, 30.0, 3000).unwrap();
        let tr = RevivalTrace {
            times: jcm.t_grid.clone(),
            p_ground: probabilities_seq(&[0.0, 1.0], &jcm),
            mean_n: 1.0,
            lambda_coupling: 1.0,
            detuning: 0.0,
        };
        assert!(matches!(
            envelope_metrics(&tr),
            Err(Error::NoRevivalInWindow)
        ));
    }

    #[test]
    fn vacuum_field_has_no_revival() {
        let jcm = JcmParams::uniform(1.0, 0.0, 30.0, 3000).unwrap();
        let state = FockVector::basis(0, 10).unwrap();
        let tr = RevivalTrace {
            times: jcm.t_grid.clone(),
            p_ground: probabilities_seq(&state.probabilities(), &jcm),
            mean_n: 0.0,
            lambda_coupling: 1.0,
            detuning: 0.0,
        };
        assert!(matches!(
            envelope_metrics(&tr),
            Err(Error::NoRevivalInWindow)
        ));
    }
}
