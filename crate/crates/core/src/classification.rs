//! Classes A-D of block-positive operators, decided two independent ways:
//! from the signs of `det B` and `det B^{T_B}`, and from the ellipsoid
//! parameters alone.
//!
//! The ellipsoid route uses `lhs_minus = c^4 - 2 u c^2 + q - chi r` and
//! `lhs_plus = c^4 - 2 u c^2 + q + chi r`, which equal `256 det` of the
//! canonical operator and of its partial transpose respectively.

use std::fmt;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::ellipsoid::{
    containment_of_radius, ellipsoid_of, max_radius, Containment, EllipsoidRep,
};
use crate::error::{Error, Result};
use crate::pauli::{decompose, det4, partial_transpose_b, TwoQubitOperator};
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Class {
    A,
    B,
    C,
    D,
    NotBlockPositive,
}

impl Class {
    pub fn is_state(self) -> bool {
        matches!(self, Class::A | Class::B)
    }

    pub fn is_witness(self) -> bool {
        matches!(self, Class::C | Class::D)
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Class::A => write!(f, "Class A"),
            Class::B => write!(f, "Class B"),
            Class::C => write!(f, "Class C"),
            Class::D => write!(f, "Class D"),
            Class::NotBlockPositive => write!(f, "not block positive"),
        }
    }
}

/// A class verdict. `marginal` is set when a deciding quantity fell inside
/// the `tol::CLASS` dead band and was resolved towards the state side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassLabel {
    pub class: Class,
    pub marginal: bool,
}

impl ClassLabel {
    fn new(class: Class, marginal: bool) -> Self {
        Self { class, marginal }
    }
}

/// Ellipsoid-side quantities of the class inequalities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipsoidTerms {
    pub c_norm: f64,
    pub c_hat: Option<Vector3<f64>>,
    pub u: f64,
    pub q: f64,
    /// `8 sqrt(det Q)`, set to exactly 0 when `chi = 0`.
    pub r: f64,
    pub chi: i8,
    pub lhs_minus: f64,
    pub lhs_plus: f64,
}

impl EllipsoidTerms {
    pub fn of(e: &EllipsoidRep) -> Self {
        let c_norm = e.c.norm();
        let c_hat = (c_norm > 0.0).then(|| e.c / c_norm);
        let tr = e.q.trace();
        // The skew term only ever appears multiplied by c^2.
        let skew = c_hat.map_or(0.0, |h| h.dot(&(e.q * h)));
        let u = 1.0 - tr + 2.0 * skew;
        let q = 1.0 + 2.0 * (e.q * e.q).trace() - 2.0 * tr - tr * tr;
        let r = if e.chi == 0 {
            0.0
        } else {
            8.0 * e.q.determinant().max(0.0).sqrt()
        };
        let c2 = c_norm * c_norm;
        let base = c2 * c2 - 2.0 * u * c2 + q;
        let chi_r = f64::from(e.chi) * r;
        Self {
            c_norm,
            c_hat,
            u,
            q,
            r,
            chi: e.chi,
            lhs_minus: base - chi_r,
            lhs_plus: base + chi_r,
        }
    }

    fn base(&self) -> f64 {
        let c2 = self.c_norm * self.c_norm;
        c2 * c2 - 2.0 * self.u * c2 + self.q
    }

    /// `c^4 - 2 u c^2 + q - r`, the single Class A test.
    pub fn class_a_lhs(&self) -> f64 {
        self.base() - self.r
    }

    /// `c^4 - 2 u c^2 + q + r`, negative exactly for Class D.
    pub fn class_d_lhs(&self) -> f64 {
        self.base() + self.r
    }
}

/// Everything both classification routes look at.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassInvariants {
    pub terms: EllipsoidTerms,
    /// `1 / sqrt(1 - b^2)`; infinite when `|b| >= 1`.
    pub gamma_b: f64,
    pub det_b: f64,
    pub det_b_tb: f64,
}

pub fn compute_invariants(e: &EllipsoidRep, b: &TwoQubitOperator) -> ClassInvariants {
    let bn = decompose(b).b.norm();
    let gamma_b = if bn < 1.0 {
        1.0 / (1.0 - bn * bn).sqrt()
    } else {
        f64::INFINITY
    };
    ClassInvariants {
        terms: EllipsoidTerms::of(e),
        gamma_b,
        det_b: det4(b),
        det_b_tb: det4(&partial_transpose_b(b)),
    }
}

const DET_SCALE: f64 = 256.0;

fn nonneg(x: f64) -> bool {
    x >= -tol::CLASS
}

fn near_zero(x: f64) -> bool {
    x.abs() <= tol::CLASS
}

fn class_from_signs(first_nonneg: bool, second_nonneg: bool) -> Class {
    match (first_nonneg, second_nonneg) {
        (true, true) => Class::A,
        (true, false) => Class::B,
        (false, true) => Class::C,
        (false, false) => Class::D,
    }
}

/// Determinant route; block positivity is gated on the ellipsoid fitting in
/// the Bloch ball.
pub fn classify_by_determinants(b: &TwoQubitOperator) -> ClassLabel {
    if containment_of_radius(max_radius(&ellipsoid_of(b))) == Containment::Outside {
        return ClassLabel::new(Class::NotBlockPositive, false);
    }
    classify_block_positive_by_determinants(det4(b), det4(&partial_transpose_b(b)))
}

/// Determinants enter the dead band as `256 det`, the scale of
/// `lhs_minus` and `lhs_plus`.
fn classify_block_positive_by_determinants(det_b: f64, det_b_tb: f64) -> ClassLabel {
    let (x, y) = (DET_SCALE * det_b, DET_SCALE * det_b_tb);
    ClassLabel::new(
        class_from_signs(nonneg(x), nonneg(y)),
        near_zero(x) || near_zero(y),
    )
}

/// Ellipsoid route: uses only `c`, `Q` and `chi`.
pub fn classify_by_ellipsoid(e: &EllipsoidRep) -> Result<ClassLabel> {
    if containment_of_radius(max_radius(e)) == Containment::Outside {
        return Ok(ClassLabel::new(Class::NotBlockPositive, false));
    }
    let t = EllipsoidTerms::of(e);
    classify_terms(&t)
}

fn classify_terms(t: &EllipsoidTerms) -> Result<ClassLabel> {
    let a_lhs = t.class_a_lhs();
    let d_lhs = t.class_d_lhs();
    let marginal = [a_lhs, d_lhs, t.lhs_minus, t.lhs_plus]
        .into_iter()
        .any(near_zero);
    let class = if nonneg(a_lhs) {
        Class::A
    } else if !nonneg(d_lhs) {
        Class::D
    } else {
        match (nonneg(t.lhs_minus), nonneg(t.lhs_plus)) {
            (true, false) => Class::B,
            (false, true) => Class::C,
            _ => {
                return Err(Error::InconsistentInvariants {
                    lhs_minus: t.lhs_minus,
                    lhs_plus: t.lhs_plus,
                    chi: t.chi,
                })
            }
        }
    };
    Ok(ClassLabel::new(class, marginal))
}

/// Both routes on one operator, with the quantities they used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Classification {
    pub by_determinants: ClassLabel,
    pub by_ellipsoid: ClassLabel,
    pub ellipsoid: EllipsoidRep,
    pub invariants: ClassInvariants,
    pub max_radius: f64,
    pub containment: Containment,
}

impl Classification {
    pub fn routes_agree(&self) -> bool {
        self.by_determinants.class == self.by_ellipsoid.class
    }

    pub fn marginal(&self) -> bool {
        self.by_determinants.marginal || self.by_ellipsoid.marginal
    }
}

pub fn classify(b: &TwoQubitOperator) -> Result<Classification> {
    let ellipsoid = ellipsoid_of(b);
    let radius = max_radius(&ellipsoid);
    let containment = containment_of_radius(radius);
    let invariants = compute_invariants(&ellipsoid, b);
    let (by_determinants, by_ellipsoid) = if containment == Containment::Outside {
        let nbp = ClassLabel::new(Class::NotBlockPositive, false);
        (nbp, nbp)
    } else {
        (
            classify_block_positive_by_determinants(invariants.det_b, invariants.det_b_tb),
            classify_terms(&invariants.terms)?,
        )
    };
    Ok(Classification {
        by_determinants,
        by_ellipsoid,
        ellipsoid,
        invariants,
        max_radius: radius,
        containment,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::{reconstruct, PauliForm};
    use nalgebra::Matrix3;

    fn diag(d: [f64; 3]) -> TwoQubitOperator {
        reconstruct(&PauliForm::diagonal(d))
    }

    #[test]
    fn flip_invariants() {
        // Q = 1, c = 0, chi = +1: q = 1 + 6 - 6 - 9 = -8, r = 8.
        let f = diag([1.0, 1.0, 1.0]);
        let e = ellipsoid_of(&f);
        let inv = compute_invariants(&e, &f);
        assert!((inv.terms.u + 2.0).abs() < 1e-13);
        assert!((inv.terms.q + 8.0).abs() < 1e-13);
        assert!((inv.terms.r - 8.0).abs() < 1e-13);
        assert!((inv.terms.lhs_minus + 16.0).abs() < 1e-12);
        assert!(inv.terms.lhs_plus.abs() < 1e-12);
        // 256 det of the canonical operator.
        assert!((256.0 * inv.det_b - inv.terms.lhs_minus).abs() < 1e-12);
        assert!((256.0 * inv.det_b_tb - inv.terms.lhs_plus).abs() < 1e-12);
    }

    #[test]
    fn point_at_origin_invariants() {
        let e = EllipsoidRep::from_canonical(Vector3::zeros(), Matrix3::zeros());
        let t = EllipsoidTerms::of(&e);
        assert_eq!((t.u, t.q, t.r), (1.0, 1.0, 0.0));
        assert_eq!((t.lhs_minus, t.lhs_plus), (1.0, 1.0));
        assert!(t.c_hat.is_none());
    }

    #[test]
    fn named_operators_by_both_routes() {
        let cases = [
            (TwoQubitOperator::maximally_mixed(), Class::A),
            (diag([1.0, -1.0, 1.0]), Class::B),
            (diag([1.0, 1.0, 1.0]), Class::C),
            (diag([1.0, 1.0, -0.6]), Class::D),
            (diag([1.0, 1.0, 1.2]), Class::NotBlockPositive),
        ];
        for (op, want) in cases {
            assert_eq!(classify_by_determinants(&op).class, want);
            assert_eq!(
                classify_by_ellipsoid(&ellipsoid_of(&op)).unwrap().class,
                want
            );
        }
        // Pure states sit on det = 0.
        assert!(classify_by_determinants(&diag([1.0, -1.0, 1.0])).marginal);
    }

    #[test]
    fn degenerate_inside_is_a_or_d() {
        for d in [
            [0.5, 0.3, 0.0],
            [1.0, 0.0, 1.0],
            [0.9, 0.0, 0.0],
            [0.0, 0.0, 0.0],
        ] {
            let label = classify_by_ellipsoid(&ellipsoid_of(&diag(d))).unwrap();
            assert!(
                matches!(label.class, Class::A | Class::D),
                "{d:?} -> {label:?}"
            );
        }
    }
}
