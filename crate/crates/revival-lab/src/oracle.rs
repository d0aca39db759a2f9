//! Brute-force reference constructions used by the test suites: dense
//! truncated matrix exponentials for the displacement and squeeze operators,
//! state assembly by plain matrix products, and a fixed-step Schrödinger
//! integrator for the atom-field dynamics.
//!
//! Nothing here is meant to be fast. The point is that every result is
//! produced by a different route than the main code paths take, so the two
//! can be compared without shared failure modes.

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;

use crate::fock::{fock_dim, FockVector, StateParams};
use crate::jcm::JcmParams;
use crate::{tol, Error, Result};

pub type CMat = Array2<C64>;

/// Truncated ladder operator with `⟨k|â|k+1⟩ = √(k+1)`.
pub fn annihilation_matrix(dim: usize) -> CMat {
    let mut m = CMat::zeros((dim, dim));
    for k in 1..dim {
        m[[k - 1, k]] = C64::new((k as f64).sqrt(), 0.0);
    }
    m
}

/// Adjoint of [`annihilation_matrix`].
pub fn creation_matrix(dim: usize) -> CMat {
    let mut m = CMat::zeros((dim, dim));
    for k in 1..dim {
        m[[k, k - 1]] = C64::new((k as f64).sqrt(), 0.0);
    }
    m
}

fn inf_norm(m: &CMat) -> f64 {
    m.rows()
        .into_iter()
        .map(|row| row.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Matrix exponential by scaling and squaring around a truncated series.
pub fn expm(g: &CMat) -> CMat {
    let dim = g.nrows();
    let norm = inf_norm(g);
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let scale = 0.5f64.powi(squarings);
    let m = g.mapv(|z| z * scale);
    let mut result: CMat = CMat::eye(dim);
    let mut term: CMat = CMat::eye(dim);
    for k in 1..=40 {
        term = term.dot(&m).mapv(|z| z / k as f64);
        result += &term;
        if inf_norm(&term) < 1e-18 {
            break;
        }
    }
    for _ in 0..squarings {
        result = result.dot(&result);
    }
    result
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpKind {
    Displacement,
    Squeeze,
    Number,
    Annihilation,
}

/// A dense truncated operator together with what it is supposed to be.
#[derive(Debug, Clone)]
pub struct OperatorMatrix {
    pub entries: CMat,
    pub op_kind: OpKind,
}

impl OperatorMatrix {
    /// Largest entry of `U†U − I` over the inner `(dim − guard)` block.
    ///
    /// Rows within `guard` of the truncation edge are excluded because the
    /// cut generator cannot reproduce the flow through them.
    pub fn unitarity_defect(&self, guard: usize) -> f64 {
        let u = &self.entries;
        let gram = u.t().mapv(|z| z.conj()).dot(u);
        let dim = u.nrows();
        let inner = dim.saturating_sub(guard);
        let mut worst = 0.0f64;
        for j in 0..inner {
            for k in 0..inner {
                let expect = if j == k { 1.0 } else { 0.0 };
                worst = worst.max((gram[[j, k]] - expect).norm());
            }
        }
        worst
    }

    fn checked(self, guard: usize) -> Result<Self> {
        let defect = self.unitarity_defect(guard);
        if defect > tol::OPERATOR {
            return Err(Error::UnderTruncated {
                tail_mass: defect,
                limit: tol::OPERATOR,
            });
        }
        Ok(self)
    }
}

/// Dense `exp(α â† − α* â)` on a `dim`-level truncation.
pub fn displacement_matrix(alpha: C64, dim: usize) -> Result<OperatorMatrix> {
    let a = annihilation_matrix(dim);
    let ad = creation_matrix(dim);
    let g = ad.mapv(|z| z * alpha) - a.mapv(|z| z * alpha.conj());
    OperatorMatrix {
        entries: expm(&g),
        op_kind: OpKind::Displacement,
    }
    .checked(tol::GUARD_BAND)
}

/// Dense `exp(−(ζ/2) â†² + (ζ*/2) â²)` on a `dim`-level truncation.
pub fn squeeze_matrix(zeta: C64, dim: usize) -> Result<OperatorMatrix> {
    let a = annihilation_matrix(dim);
    let ad = creation_matrix(dim);
    let g = ad.dot(&ad).mapv(|z| z * (-0.5 * zeta)) + a.dot(&a).mapv(|z| z * (0.5 * zeta.conj()));
    OperatorMatrix {
        entries: expm(&g),
        op_kind: OpKind::Squeeze,
    }
    .checked(tol::SQUEEZE_GUARD)
}

/// Truncation large enough for every intermediate stage of the dense
/// construction: the displaced number state sets the mean, and squeezing
/// adds its slow geometric tail plus an operator guard band.
pub fn oracle_dim(p: &StateParams) -> usize {
    let base = fock_dim(p.alpha_mod * p.alpha_mod + p.n_extra as f64);
    if p.r > 0.0 {
        let ramp = (30.0 / -p.r.tanh().ln()).ceil() as usize;
        base + ramp + tol::SQUEEZE_GUARD
    } else {
        base
    }
}

/// Builds `S(ζ) D(α) (â†)ⁿ/√(n!) |0⟩` by dense matrix products and
/// normalizes the outcome.
pub fn build_state_oracle(p: &StateParams, dim: usize) -> Result<FockVector> {
    p.validate()?;
    if dim <= p.n_extra {
        return Err(Error::InvalidParameter(format!(
            "dimension {} has no headroom for {} creations",
            dim, p.n_extra
        )));
    }
    let mut v: Array1<C64> = Array1::zeros(dim);
    v[0] = C64::new(1.0, 0.0);
    let ad = creation_matrix(dim);
    let mut log_fact = 0.0;
    for j in 1..=p.n_extra {
        v = ad.dot(&v);
        log_fact += (j as f64).ln();
    }
    v.mapv_inplace(|z| z * (-0.5 * log_fact).exp());
    let d = displacement_matrix(p.alpha(), dim)?;
    v = d.entries.dot(&v);
    if p.r > 0.0 {
        let s = squeeze_matrix(C64::from_polar(p.r, p.phi), dim)?;
        v = s.entries.dot(&v);
    }
    FockVector::new(v.to_vec()).normalized()
}

/// Integrates the per-manifold two-level equations with fixed-step RK4 up
/// to `t_end`, starting from the atom in its ground state and the field
/// amplitudes `a`.
///
/// Returns the ground-state amplitudes and the excited-state amplitudes
/// (the latter paired with one photon fewer, so entry 0 stays zero).
pub fn integrate_jcm(a: &[C64], jcm: &JcmParams, t_end: f64) -> (Vec<C64>, Vec<C64>) {
    let lambda = jcm.lambda_coupling;
    let delta = jcm.detuning;
    let mut c1 = a.to_vec();
    let mut c2 = vec![C64::new(0.0, 0.0); a.len()];
    if t_end == 0.0 {
        return (c1, c2);
    }
    for (n, (g, e)) in c1.iter_mut().zip(c2.iter_mut()).enumerate() {
        if n == 0 && delta == 0.0 {
            continue;
        }
        let coupling = lambda * (n as f64).sqrt();
        let rate = (delta * delta + 4.0 * coupling * coupling).sqrt() + lambda;
        let steps = ((t_end * rate / 0.005).ceil() as usize).max(1);
        let h = t_end / steps as f64;
        let half_delta = C64::new(0.0, 0.5 * delta);
        let deriv = |y: (C64, C64)| {
            (
                half_delta * y.0 + coupling * y.1,
                -half_delta * y.1 - coupling * y.0,
            )
        };
        let mut y = (*g, *e);
        for _ in 0..steps {
            let k1 = deriv(y);
            let k2 = deriv((y.0 + 0.5 * h * k1.0, y.1 + 0.5 * h * k1.1));
            let k3 = deriv((y.0 + 0.5 * h * k2.0, y.1 + 0.5 * h * k2.1));
            let k4 = deriv((y.0 + h * k3.0, y.1 + h * k3.1));
            y = (
                y.0 + h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0),
                y.1 + h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1),
            );
        }
        *g = y.0;
        *e = y.1;
    }
    (c1, c2)
}
