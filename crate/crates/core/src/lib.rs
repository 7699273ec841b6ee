//! Ellipsoid representation of two-qubit operators.
//!
//! Any Hermitian, unit-trace operator on two qubits maps to an ellipsoid
//! (centre `c`, matrix `Q`, chirality `chi`) in Alice's Bloch ball. The
//! ellipsoid decides block positivity (it must fit inside the unit ball),
//! and together with the signs of `det B` and `det B^{T_B}` sorts every
//! block-positive operator into one of four classes:
//!
//! | class | `det B` | `det B^{T_B}` | meaning                              |
//! |-------|---------|---------------|--------------------------------------|
//! | A     | >= 0    | >= 0          | separable state                      |
//! | B     | >= 0    | < 0           | entangled state                      |
//! | C     | < 0     | >= 0          | witness whose partial transpose is a state |
//! | D     | < 0     | < 0           | witness whose partial transpose is a witness |
//!
//! Every analytic decision in this crate has an independent brute-force
//! counterpart in [`oracle`] that the test-suite checks it against.
//!
//! Pauli convention: `sigma_y = [[0, -i], [i, 0]]`; basis order
//! `|00>, |01>, |10>, |11>` with qubit A as the first tensor factor.

pub mod classification;
pub mod cli;
pub mod ellipsoid;
mod error;
pub mod exec;
pub mod linalg;
pub mod oracle;
pub mod pauli;
pub mod sampling;
pub mod sphere;
pub mod witness;

pub use classification::{
    classify_by_determinants, classify_by_ellipsoid, compute_invariants, Class, ClassInvariants,
    ClassLabel,
};
pub use ellipsoid::{
    canonical_filter, ellipsoid_of, is_inside_bloch_sphere, max_radius, semiaxes, surface_point,
    Containment, EllipsoidRep, Semiaxis,
};
pub use error::{Error, Result};
pub use exec::Execution;
pub use pauli::{
    decompose, det4, eigenvalues4, partial_trace_a, partial_transpose_b, reconstruct, PauliForm,
    TwoQubitOperator,
};
pub use witness::{analyze_witness, detects, is_finer, FinerVerdict, PureState, WitnessProperties};

/// Numerical tolerances shared across the crate.
pub mod tol {
    /// Entrywise Hermiticity residual.
    pub const HERM: f64 = 1e-10;
    /// Trace residual.
    pub const TRACE: f64 = 1e-10;
    /// Pauli round-trip reconstruction.
    pub const RECON: f64 = 1e-9;
    /// Eigenvalue sum vs. trace.
    pub const EIG: f64 = 1e-9;
    /// Smallest eigenvalue of the marginal `R_B` below which filtering is refused.
    pub const SING: f64 = 1e-8;
    /// Geometric identities (`Q = T T^T`, centre, radii).
    pub const GEOM: f64 = 1e-9;
    /// `|det T~|` at or below this is chirality 0.
    pub const CHI: f64 = 1e-9;
    /// Dead band around the sphere surface for contact decisions.
    pub const CONTACT: f64 = 1e-8;
    /// Dead band on determinant and class-inequality signs.
    pub const CLASS: f64 = 1e-9;
    /// Frobenius distance for the `W = W^T = W^{T_B}` membership test.
    pub const EW4: f64 = 1e-9;
}
