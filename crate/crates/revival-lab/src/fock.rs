//! Truncated Fock-space vectors and the elementary ladder actions.
//!
//! A [`FockVector`] stores the coefficients of a state over the number basis
//! `|0⟩ .. |N-1⟩`. The truncation is tracked through a guard band at the top
//! of the vector: the probability mass found there at construction is recorded
//! and can be checked against [`tol::TAIL`](crate::tol::TAIL) to detect a
//! basis that was sized too small for the state living in it.

use num_complex::Complex64 as C64;

use crate::{tol, Error, Result};

/// Basis dimension for a target mean photon number.
///
/// `ceil(nbar + 10 sqrt(nbar + 1)) + 20` keeps the guard-band mass below
/// `1e-12` for every parameter set the library is used with, up to means of
/// a few hundred photons.
pub fn fock_dim(nbar: f64) -> usize {
    (nbar + 10.0 * (nbar + 1.0).sqrt()).ceil() as usize + 20
}

/// Parameters `(|α|, θ, r, φ, n)` of an n-photon squeezed coherent state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateParams {
    /// Displacement magnitude `|α|`.
    pub alpha_mod: f64,
    /// Displacement phase, `α = |α| e^{iθ}`.
    pub theta: f64,
    /// Squeeze magnitude, `ζ = r e^{iφ}`.
    pub r: f64,
    /// Squeeze phase.
    pub phi: f64,
    /// Number of extra photons carried on top of the squeezed coherent core.
    pub n_extra: usize,
    /// Whether `phi` is slaved to `2 theta`, the convention under which the
    /// closed-form moments and the Hermite expansions hold.
    pub lock_phi_to_2theta: bool,
}

impl StateParams {
    /// Coherent state `|α⟩` with `α = alpha_mod · e^{iθ}`.
    pub fn coherent(alpha_mod: f64, theta: f64) -> Self {
        Self::n_photon_coherent(alpha_mod, theta, 0)
    }

    /// n-photon coherent state `|α, n⟩`.
    pub fn n_photon_coherent(alpha_mod: f64, theta: f64, n_extra: usize) -> Self {
        Self {
            alpha_mod,
            theta,
            r: 0.0,
            phi: 2.0 * theta,
            n_extra,
            lock_phi_to_2theta: true,
        }
    }

    /// Squeezed coherent state with the `φ = 2θ` convention.
    pub fn squeezed(alpha_mod: f64, theta: f64, r: f64) -> Self {
        Self::n_photon_squeezed(alpha_mod, theta, r, 0)
    }

    /// n-photon squeezed coherent state `|ζ, α, n⟩` with `φ = 2θ`.
    pub fn n_photon_squeezed(alpha_mod: f64, theta: f64, r: f64, n_extra: usize) -> Self {
        Self {
            alpha_mod,
            theta,
            r,
            phi: 2.0 * theta,
            n_extra,
            lock_phi_to_2theta: true,
        }
    }

    /// Number state `|n⟩` as the degenerate corner of the family.
    pub fn fock(n_extra: usize) -> Self {
        Self::n_photon_coherent(0.0, 0.0, n_extra)
    }

    /// Unlocks the squeeze phase from the displacement phase.
    pub fn with_phi(mut self, phi: f64) -> Self {
        self.phi = phi;
        self.lock_phi_to_2theta = false;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !self.alpha_mod.is_finite() || self.alpha_mod < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "displacement magnitude must be finite and non-negative, got {}",
                self.alpha_mod
            )));
        }
        if !self.r.is_finite() || self.r < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "squeeze magnitude must be finite and non-negative, got {}",
                self.r
            )));
        }
        if !self.theta.is_finite() || !self.phi.is_finite() {
            return Err(Error::InvalidParameter("phases must be finite".to_string()));
        }
        if self.lock_phi_to_2theta && self.phi != 2.0 * self.theta {
            return Err(Error::InvalidParameter(format!(
                "phi = {} is locked to 2 theta = {}",
                self.phi,
                2.0 * self.theta
            )));
        }
        Ok(())
    }

    /// The complex displacement `α`.
    pub fn alpha(&self) -> C64 {
        C64::from_polar(self.alpha_mod, self.theta)
    }
}

/// Coefficient vector over the truncated number basis.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    coeffs: Vec<C64>,
    tail_mass: f64,
}

impl FockVector {
    /// Wraps raw coefficients, recording the guard-band mass.
    pub fn new(coeffs: Vec<C64>) -> Self {
        let tail_mass = guard_band_mass(&coeffs);
        Self { coeffs, tail_mass }
    }

    /// Number state `|k⟩` in a basis of dimension `dim`.
    pub fn basis(k: usize, dim: usize) -> Result<Self> {
        if k >= dim {
            return Err(Error::InvalidParameter(format!(
                "basis index {} does not fit in dimension {}",
                k, dim
            )));
        }
        let mut coeffs = vec![C64::new(0.0, 0.0); dim];
        coeffs[k] = C64::new(1.0, 0.0);
        Ok(Self::new(coeffs))
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(vec![C64::new(0.0, 0.0); dim])
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    /// Probability mass recorded in the guard band at construction.
    pub fn tail_mass(&self) -> f64 {
        self.tail_mass
    }

    /// Errors out when the guard band holds more mass than [`tol::TAIL`].
    pub fn check_tail(&self) -> Result<()> {
        if self.tail_mass > tol::TAIL {
            return Err(Error::UnderTruncated {
                tail_mass: self.tail_mass,
                limit: tol::TAIL,
            });
        }
        Ok(())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.norm_sqr() == 0.0
    }

    /// Verifies `Σ|c_k|² = 1` within [`tol::NORM`]; the zero vector passes.
    pub fn check_normalized(&self) -> Result<()> {
        if self.is_zero() {
            return Ok(());
        }
        let nsq = self.norm_sqr();
        if (nsq - 1.0).abs() > tol::NORM {
            return Err(Error::InvalidParameter(format!(
                "vector norm² = {:.12} drifted outside 1 ± {:.1e}",
                nsq,
                tol::NORM
            )));
        }
        Ok(())
    }

    /// Returns a unit-norm copy.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::InvalidParameter(
                "cannot normalize a zero vector".to_string(),
            ));
        }
        Ok(self.scaled(C64::new(1.0 / n, 0.0)))
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.norm_sqr()).collect()
    }

    pub fn scaled(&self, z: C64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * z).collect())
    }

    /// Componentwise sum; the shorter vector is zero-padded.
    pub fn add(&self, other: &Self) -> Self {
        let dim = self.dim().max(other.dim());
        let mut coeffs = vec![C64::new(0.0, 0.0); dim];
        for (k, c) in coeffs.iter_mut().enumerate() {
            let a = self.coeffs.get(k).copied().unwrap_or_default();
            let b = other.coeffs.get(k).copied().unwrap_or_default();
            *c = a + b;
        }
        Self::new(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scaled(C64::new(-1.0, 0.0)))
    }
}

fn guard_band_mass(coeffs: &[C64]) -> f64 {
    let dim = coeffs.len();
    if dim == 0 {
        return 0.0;
    }
    let band = tol::GUARD_BAND.min(dim - 1);
    coeffs[dim - band..].iter().map(|c| c.norm_sqr()).sum()
}

/// Action of `â`: coefficient `k` of the output is `√(k+1) · v[k+1]`.
///
/// The result is not renormalized; the vacuum maps to the zero vector.
pub fn apply_annihilation(v: &FockVector) -> FockVector {
    let dim = v.dim();
    let mut coeffs = vec![C64::new(0.0, 0.0); dim];
    for (k, &src) in v.coeffs.iter().enumerate().skip(1) {
        coeffs[k - 1] = (k as f64).sqrt() * src;
    }
    FockVector::new(coeffs)
}

/// Action of `â†`: coefficient `k` of the output is `√k · v[k-1]`.
///
/// Raising shifts amplitude up the basis, so a vector already carrying
/// significant weight on its top coefficient cannot be raised faithfully.
pub fn apply_creation(v: &FockVector) -> Result<FockVector> {
    let dim = v.dim();
    let top = v.coeffs[dim - 1].norm_sqr();
    if top > tol::TAIL {
        return Err(Error::UnderTruncated {
            tail_mass: top,
            limit: tol::TAIL,
        });
    }
    let mut coeffs = vec![C64::new(0.0, 0.0); dim];
    for (k, &src) in v.coeffs.iter().enumerate().take(dim - 1) {
        coeffs[k + 1] = ((k + 1) as f64).sqrt() * src;
    }
    Ok(FockVector::new(coeffs))
}

/// Action of the displaced-squeeze ladder operator
/// `B = cosh(r) â + e^{iφ} sinh(r) â† − α`.
pub fn apply_b(p: &StateParams, v: &FockVector) -> Result<FockVector> {
    let c = p.r.cosh();
    let s = p.r.sinh();
    let mut out = apply_annihilation(v).scaled(C64::new(c, 0.0));
    if s != 0.0 {
        let raised = apply_creation(v)?;
        out = out.add(&raised.scaled(C64::from_polar(s, p.phi)));
    }
    Ok(out.sub(&v.scaled(p.alpha())))
}

/// Action of `B† = e^{−iφ} sinh(r) â + cosh(r) â† − α*`.
pub fn apply_bdag(p: &StateParams, v: &FockVector) -> Result<FockVector> {
    let c = p.r.cosh();
    let s = p.r.sinh();
    let mut out = apply_creation(v)?.scaled(C64::new(c, 0.0));
    if s != 0.0 {
        let lowered = apply_annihilation(v);
        out = out.add(&lowered.scaled(C64::from_polar(s, -p.phi)));
    }
    Ok(out.sub(&v.scaled(p.alpha().conj())))
}

/// `⟨u|v⟩ = Σ conj(u_k) v_k`, zero-padding the shorter vector.
pub fn inner_product(u: &FockVector, v: &FockVector) -> C64 {
    let dim = u.dim().min(v.dim());
    let mut acc = C64::new(0.0, 0.0);
    for k in 0..dim {
        acc += u.coeffs[k].conj() * v.coeffs[k];
    }
    acc
}

/// Overlap deficit `1 − |⟨u|v⟩| / (‖u‖ ‖v‖)`, insensitive to global phase.
pub fn overlap_deficit(u: &FockVector, v: &FockVector) -> f64 {
    1.0 - inner_product(u, v).norm() / (u.norm() * v.norm())
}

/// First and second moments of the number distribution, `Σ k |c_k|²` and
/// `Σ k² |c_k|²`, for a normalized vector with a clean tail.
pub fn number_expectation_numeric(v: &FockVector) -> Result<(f64, f64)> {
    v.check_tail()?;
    let mut mean = 0.0;
    let mut second = 0.0;
    for (k, c) in v.coeffs.iter().enumerate() {
        let p = c.norm_sqr();
        mean += k as f64 * p;
        second += (k as f64) * (k as f64) * p;
    }
    Ok((mean, second))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQRT_2: f64 = std::f64::consts::SQRT_2;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{} vs {} (tol {})", a, b, tol);
    }

    #[test]
    fn annihilation_of_vacuum_is_zero() {
        let v = FockVector::basis(0, 8).unwrap();
        assert!(apply_annihilation(&v).is_zero());
    }

    #[test]
    fn annihilation_lowers_one_photon() {
        let v = FockVector::basis(1, 8).unwrap();
        let w = apply_annihilation(&v);
        let e0 = FockVector::basis(0, 8).unwrap();
        assert_close(w.sub(&e0).norm(), 0.0, 1e-15);
    }

    #[test]
    fn annihilation_weights_by_sqrt_k() {
        let mut coeffs = vec![C64::new(0.0, 0.0); 8];
        coeffs[0] = C64::new(1.0 / SQRT_2, 0.0);
        coeffs[2] = C64::new(1.0 / SQRT_2, 0.0);
        let w = apply_annihilation(&FockVector::new(coeffs));
        assert_close(w.coeffs()[1].re, 1.0, 1e-15);
        assert_close(w.coeffs()[0].norm(), 0.0, 1e-15);
    }

    #[test]
    fn creation_raises_vacuum() {
        let v = FockVector::basis(0, 8).unwrap();
        let w = apply_creation(&v).unwrap();
        let e1 = FockVector::basis(1, 8).unwrap();
        assert_close(w.sub(&e1).norm(), 0.0, 1e-15);
    }

    #[test]
    fn creation_weights_by_sqrt_k() {
        let v = FockVector::basis(1, 8).unwrap();
        let w = apply_creation(&v).unwrap();
        assert_close(w.coeffs()[2].re, SQRT_2, 1e-15);
    }

    #[test]
    fn creation_rejects_dirty_top_coefficient() {
        let mut coeffs = vec![C64::new(0.0, 0.0); 8];
        coeffs[7] = C64::new(0.1, 0.0);
        let err = apply_creation(&FockVector::new(coeffs)).unwrap_err();
        assert!(matches!(err, Error::UnderTruncated { .. }));
    }

    #[test]
    fn ladder_commutator_is_identity_below_guard() {
        let coeffs: Vec<C64> = (0..40)
            .map(|k| {
                let damp = (-(k as f64) * 0.4).exp();
                C64::new((0.3 * k as f64).sin(), (0.7 * k as f64).cos()) * damp
            })
            .collect();
        let v = FockVector::new(coeffs);
        let down_up = apply_annihilation(&apply_creation(&v).unwrap());
        let up_down = apply_creation(&apply_annihilation(&v)).unwrap();
        let diff = down_up.sub(&up_down).sub(&v);
        for k in 0..v.dim() - 2 {
            assert_close(diff.coeffs()[k].norm(), 0.0, 1e-12);
        }
    }

    #[test]
    fn b_reduces_to_annihilation_without_squeeze_or_displacement() {
        let p = StateParams::coherent(0.0, 0.0);
        let v = FockVector::basis(1, 8).unwrap();
        let w = apply_b(&p, &v).unwrap();
        let e0 = FockVector::basis(0, 8).unwrap();
        assert_close(w.sub(&e0).norm(), 0.0, 1e-15);
    }

    #[test]
    fn bdag_reduces_to_creation_without_squeeze_or_displacement() {
        let p = StateParams::coherent(0.0, 0.0);
        let v = FockVector::basis(0, 8).unwrap();
        let w = apply_bdag(&p, &v).unwrap();
        let e1 = FockVector::basis(1, 8).unwrap();
        assert_close(w.sub(&e1).norm(), 0.0, 1e-15);
    }

    #[test]
    fn b_commutator_is_identity_on_clean_vectors() {
        let p = StateParams::n_photon_squeezed(1.3, 0.4, 0.6, 0).with_phi(1.1);
        let coeffs: Vec<C64> = (0..60)
            .map(|k| {
                let damp = (-(k as f64) * 0.4).exp();
                C64::new((1.9 * k as f64).sin(), (0.5 * k as f64).cos()) * damp
            })
            .collect();
        let v = FockVector::new(coeffs).normalized().unwrap();
        let bdag_b = apply_bdag(&p, &apply_b(&p, &v).unwrap()).unwrap();
        let b_bdag = apply_b(&p, &apply_bdag(&p, &v).unwrap()).unwrap();
        let diff = b_bdag.sub(&bdag_b).sub(&v);
        for k in 0..v.dim() - 2 {
            assert_close(diff.coeffs()[k].norm(), 0.0, 1e-9);
        }
    }

    #[test]
    fn inner_product_is_conjugate_symmetric() {
        let u = FockVector::new(vec![C64::new(0.6, 0.1), C64::new(0.2, -0.7)]);
        let v = FockVector::new(vec![C64::new(-0.3, 0.5), C64::new(0.8, 0.2)]);
        let uv = inner_product(&u, &v);
        let vu = inner_product(&v, &u);
        assert_close((uv - vu.conj()).norm(), 0.0, 1e-15);
    }

    #[test]
    fn inner_product_pads_the_shorter_vector() {
        let u = FockVector::basis(0, 3).unwrap();
        let v = FockVector::basis(0, 9).unwrap();
        assert_close(inner_product(&u, &v).re, 1.0, 1e-15);
        let w = FockVector::basis(5, 9).unwrap();
        assert_close(inner_product(&u, &w).norm(), 0.0, 1e-15);
    }

    #[test]
    fn basis_states_are_orthonormal() {
        for j in 0..4 {
            for k in 0..4 {
                let ej = FockVector::basis(j, 6).unwrap();
                let ek = FockVector::basis(k, 6).unwrap();
                let expect = if j == k { 1.0 } else { 0.0 };
                assert_close(inner_product(&ej, &ek).re, expect, 1e-15);
            }
        }
    }

    #[test]
    fn number_expectation_of_basis_state() {
        let v = FockVector::basis(5, 16).unwrap();
        let (mean, second) = number_expectation_numeric(&v).unwrap();
        assert_close(mean, 5.0, 1e-15);
        assert_close(second, 25.0, 1e-15);
    }

    #[test]
    fn number_expectation_rejects_dirty_tail() {
        let mut coeffs = vec![C64::new(0.0, 0.0); 10];
        coeffs[0] = C64::new(0.9, 0.0);
        coeffs[9] = C64::new(0.43589, 0.0);
        let err = number_expectation_numeric(&FockVector::new(coeffs)).unwrap_err();
        assert!(matches!(err, Error::UnderTruncated { .. }));
    }

    #[test]
    fn dimension_rule_covers_the_working_range() {
        assert_eq!(fock_dim(0.0), 30);
        assert_eq!(fock_dim(4.0), 47);
        assert_eq!(fock_dim(102.0), 224);
        for nbar in [0.0, 1.0, 5.0, 30.0, 102.0] {
            let n = fock_dim(nbar);
            assert!(n as f64 > nbar + 10.0 * nbar.sqrt());
        }
    }

    #[test]
    fn guard_band_mass_is_recorded() {
        let mut coeffs = vec![C64::new(0.0, 0.0); 10];
        coeffs[0] = C64::new(1.0, 0.0);
        coeffs[8] = C64::new(1e-3, 0.0);
        let v = FockVector::new(coeffs);
        assert_close(v.tail_mass(), 1e-6, 1e-18);
        assert!(matches!(
            v.check_tail().unwrap_err(),
            Error::UnderTruncated { .. }
        ));
    }

    #[test]
    fn params_lock_ties_phi_to_theta() {
        let p = StateParams::n_photon_squeezed(2.0, 0.7, 0.5, 1);
        assert!(p.lock_phi_to_2theta);
        assert_eq!(p.phi, 1.4);
        assert!(p.validate().is_ok());
        let q = p.with_phi(0.3);
        assert!(!q.lock_phi_to_2theta);
        assert!(q.validate().is_ok());
    }

    #[test]
    fn params_reject_negative_magnitudes() {
        assert!(StateParams::coherent(-1.0, 0.0).validate().is_err());
        assert!(StateParams::squeezed(1.0, 0.0, -0.2).validate().is_err());
    }
}
