//! Entanglement witnesses: detection, optimality, the finer-than relation,
//! and the operator families used throughout the crate.

mod conjecture;
mod families;
mod finer;

pub use conjecture::{
    conjecture_explore, conjecture_explore_with, ChiralityReport, ConjectureConfig,
    ConjectureReport, EllipsoidSummary, MemberRecord,
};
pub use families::{ew4_optimal, flip_witness, pure_state_witness, werner, wp_witness, PureState};
pub use finer::{is_finer, is_finer_with, FinerSearch, FinerVerdict};

use serde::{Deserialize, Serialize};

use crate::classification::{classify_by_determinants, ClassLabel};
use crate::ellipsoid::{containment_of_radius, ellipsoid_of, max_radius, Containment};
use crate::error::{Error, Result};
use crate::linalg::hermitian_eigen;
use crate::pauli::{eigenvalues4, partial_transpose_b, TwoQubitOperator};
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WitnessProperties {
    pub is_witness: bool,
    /// The ellipsoid is the whole Bloch ball and right-handed.
    pub optimal: bool,
    /// The ellipsoid touches the Bloch sphere.
    pub weakly_optimal: bool,
    /// `W = W^T = W^{T_B}`.
    pub in_ew4: bool,
    /// Smallest eigenvalue.
    pub negative_eigenvalue: f64,
    pub class_label: ClassLabel,
}

pub fn analyze_witness(b: &TwoQubitOperator) -> WitnessProperties {
    let class_label = classify_by_determinants(b);
    let is_witness = class_label.class.is_witness();
    let e = ellipsoid_of(b);
    let radius = max_radius(&e);

    let whole_sphere = e.c.norm() <= tol::GEOM
        && (e.q - nalgebra::Matrix3::identity()).norm() <= tol::GEOM
        && e.chi == 1;
    let touching = containment_of_radius(radius) == Containment::Touching;
    let ew4 = b.frobenius_distance(&b.transpose()) <= tol::EW4
        && b.frobenius_distance(&partial_transpose_b(b)) <= tol::EW4;
    let negative_eigenvalue = eigenvalues4(b).map(|ev| ev[0]).unwrap_or(f64::NAN);

    WitnessProperties {
        is_witness,
        optimal: is_witness && whole_sphere,
        weakly_optimal: is_witness && touching,
        in_ew4: is_witness && ew4,
        negative_eigenvalue,
        class_label,
    }
}

/// Checks that `rho` is positive semidefinite (it is unit trace by type).
pub fn ensure_state(rho: &TwoQubitOperator) -> Result<()> {
    let eig = hermitian_eigen(rho.matrix())?;
    if eig.values[0] < -tol::EIG {
        return Err(Error::NotAState {
            reason: format!("negative eigenvalue {:.3e}", eig.values[0]),
        });
    }
    Ok(())
}

/// `tr(rho W) < 0`, beyond the `tol::CLASS` dead band.
pub fn detects(w: &TwoQubitOperator, rho: &TwoQubitOperator) -> Result<bool> {
    ensure_state(rho)?;
    Ok(rho.trace_product(w) < -tol::CLASS)
}
