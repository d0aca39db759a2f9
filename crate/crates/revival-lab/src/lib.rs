//! Photon statistics and collapse-revival dynamics of displaced and squeezed
//! number states in a truncated Fock basis.
//!
//! The library constructs coherent states carrying extra photons, squeezed
//! coherent states and their number-state generalizations, evaluates their
//! photon-number moments in closed form and numerically, locates the squeeze
//! amplitude that optimizes the variance-to-mean quotient, and propagates the
//! resulting field states through the Jaynes-Cummings interaction to produce
//! collapse and revival traces of the atomic ground-state probability.
//!
//! Every closed-form path has an independent cross-check: operator matrices
//! built from truncated matrix exponentials ([`oracle`]), a coefficient
//! recursion for the state families ([`states`]), and a direct Schroedinger
//! integration for the two-level dynamics. The [`verify`] module bundles those
//! checks into runnable suites.

pub mod fock;
pub mod jcm;
pub mod moments;
pub mod optimize;
pub mod oracle;
pub mod states;
pub mod verify;

pub use fock::{FockVector, StateParams};

use thiserror::Error;

/// Tolerances and basis-sizing constants shared across the crate.
///
/// These are pinned here rather than scattered through call sites so the
/// acceptance and verification suites exercise exactly the thresholds the
/// library enforces.
pub mod tol {
    /// Allowed norm drift for a vector that claims to be normalized.
    pub const NORM: f64 = 1e-10;

    /// Probability mass allowed in the guard band at the top of the basis.
    pub const TAIL: f64 = 1e-12;

    /// Defect allowed in operator identities checked on the basis interior.
    pub const OPERATOR: f64 = 1e-8;

    /// Guard-band width reserved at the top of every state vector.
    pub const GUARD_BAND: usize = 5;

    /// Guard rows for squeeze-operator matrices, which leak farther up the
    /// basis than displacements do.
    pub const SQUEEZE_GUARD: usize = 15;
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Amplitude has leaked into the guard band at the top of the basis.
    #[error("under-truncated state: tail mass {tail_mass:.3e} exceeds {limit:.1e}")]
    UnderTruncated { tail_mass: f64, limit: f64 },

    /// The Hermite expansion of the squeezed family degenerates as r -> 0.
    #[error("squeeze amplitude must be positive for the Hermite expansion (got r = {r})")]
    SingularSqueeze { r: f64 },

    /// Variance quotient requested for a state with vanishing mean.
    #[error("photon-number mean vanishes; the variance quotient is undefined")]
    DegenerateState,

    /// The closed form for the optimal amplitude took the square root of a
    /// negative number. Reported rather than clamped.
    #[error("negative radicand {radicand:.6e} in the optimal-amplitude closed form at r = {r}")]
    NegativeRadicand { r: f64, radicand: f64 },

    /// A root-finding bracket did not contain a sign change, or a bracketed
    /// quantity violated its assumed monotonicity.
    #[error("bracketing failed: {0}")]
    BracketFailure(String),

    /// A minimizer ran against the edge of its search interval.
    #[error("no interior minimum: {0}")]
    NoInteriorMinimum(String),

    /// A trace never collapsed, or collapsed too late to contain a revival.
    #[error("no collapse-revival structure found in the sampled window")]
    NoRevivalInWindow,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
