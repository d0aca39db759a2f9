//! Closed-form photon statistics of the n-photon squeezed coherent family.
//!
//! The number operator, written in the displaced-squeeze ladder basis, has
//! nonzero matrix elements only on the diagonal and at offsets of one and two
//! photons. Those five elements determine the mean, the second moment, and
//! the variance of the photon-number distribution without ever constructing a
//! state vector, which makes them the natural cross-check for the numeric
//! moments of constructed [`FockVector`](crate::FockVector)s.

use num_complex::Complex64 as C64;

use crate::fock::StateParams;
use crate::{Error, Result};

/// Number-operator matrix elements in the ladder basis attached to `p`.
///
/// `diag` is `⟨n|n̂|n⟩`; `up_one`, `down_one`, `up_two`, `down_two` sit at
/// offsets +1, −1, +2, −2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentElements {
    pub diag: f64,
    pub up_one: C64,
    pub down_one: C64,
    pub up_two: C64,
    pub down_two: C64,
    pub w: C64,
}

impl MomentElements {
    pub fn mean(&self) -> f64 {
        self.diag
    }

    /// `Δn² = |B|² + |C|² + |D|² + |E|²`, valid for every `n ≥ 0` because the
    /// `√n` and `√(n(n−1))` prefactors already kill the absent elements.
    pub fn variance(&self) -> f64 {
        self.up_one.norm_sqr()
            + self.down_one.norm_sqr()
            + self.up_two.norm_sqr()
            + self.down_two.norm_sqr()
    }

    pub fn second_moment(&self) -> f64 {
        self.diag * self.diag + self.variance()
    }
}

/// Evaluates the five matrix elements and `w = α* cosh r − α e^{−iφ} sinh r`.
pub fn matrix_elements(p: &StateParams) -> MomentElements {
    let n = p.n_extra as f64;
    let s = p.r.sinh();
    let c = p.r.cosh();
    let alpha = p.alpha();
    let eiphi = C64::from_polar(1.0, p.phi);
    let w = alpha.conj() * c - alpha * eiphi.conj() * s;

    let diag = (n + 1.0) * s * s + n * c * c + w.norm_sqr();
    let up_one = (n + 1.0).sqrt() * (w.conj() * c - w * eiphi * s);
    let down_one = n.sqrt() * (w * c - w.conj() * eiphi.conj() * s);
    let up_two = -eiphi.conj() * ((n + 1.0) * (n + 2.0)).sqrt() * s * c;
    let down_two = if p.n_extra < 2 {
        C64::new(0.0, 0.0)
    } else {
        -eiphi.conj() * (n * (n - 1.0)).sqrt() * s * c
    };

    MomentElements {
        diag,
        up_one,
        down_one,
        up_two,
        down_two,
        w,
    }
}

/// Mean photon number `(n+1) sinh²r + n cosh²r + |w|²`.
pub fn mean_photon_number(p: &StateParams) -> f64 {
    matrix_elements(p).mean()
}

pub fn photon_variance(p: &StateParams) -> f64 {
    matrix_elements(p).variance()
}

pub fn second_moment(p: &StateParams) -> f64 {
    matrix_elements(p).second_moment()
}

/// Fano-like quotient `Δn² / ⟨n̂⟩` minimized by the optimal-squeezing search.
pub fn variance_quotient(p: &StateParams) -> Result<f64> {
    let m = matrix_elements(p);
    if m.diag <= 0.0 {
        return Err(Error::DegenerateState);
    }
    Ok(m.variance() / m.diag)
}
