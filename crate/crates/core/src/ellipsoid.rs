//! Alice's ellipsoid for an arbitrary two-qubit operator.

use nalgebra::{Matrix2, Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{inverse_sqrt2, symmetric_eigen3, C64};
use crate::pauli::{decompose, kron, partial_trace_a, reconstruct, PauliForm, TwoQubitOperator};
use crate::sphere::max_norm_on_sphere;
use crate::tol;

/// Largest `|T - a b^T|` accepted as a product operator when `|b| = 1`.
const PRODUCT_RESIDUAL: f64 = 1e-6;

/// Centre, shape and handedness of the ellipsoid of one operator.
///
/// The surface is `{ c + t_tilde * nu : |nu| = 1 }` and `q = t_tilde * t_tilde^T`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipsoidRep {
    pub c: Vector3<f64>,
    pub q: Matrix3<f64>,
    pub t_tilde: Matrix3<f64>,
    /// `sign(det t_tilde)`, with `|det| <= tol::CHI` reported as 0.
    pub chi: i8,
    pub det_t_tilde: f64,
    pub degenerate: bool,
    /// `|b| = 1`: no canonical frame exists and the ellipsoid is the point `a`.
    pub singular_b: bool,
    /// Bob's marginal is indefinite (`|b| > 1`), or `|b| = 1` without the
    /// product structure a block-positive operator needs. No bounded
    /// ellipsoid represents such an operator; it is never block positive.
    pub unbounded: bool,
}

impl EllipsoidRep {
    /// Ellipsoid of the canonical operator `(1 + c.sigma (x) 1 + sum T_ij sigma_i (x) sigma_j) / 4`.
    pub fn from_canonical(c: Vector3<f64>, t_tilde: Matrix3<f64>) -> Self {
        let det = t_tilde.determinant();
        let chi = chirality(det);
        Self {
            c,
            q: t_tilde * t_tilde.transpose(),
            t_tilde,
            chi,
            det_t_tilde: det,
            degenerate: chi == 0,
            singular_b: false,
            unbounded: false,
        }
    }

    /// The whole Bloch ball, right-handed.
    pub fn bloch_sphere() -> Self {
        Self::from_canonical(Vector3::zeros(), Matrix3::identity())
    }

    /// The unit disc in the xz plane.
    pub fn xz_disc() -> Self {
        Self::from_canonical(
            Vector3::zeros(),
            Matrix3::from_diagonal(&Vector3::new(1.0, 0.0, 1.0)),
        )
    }

    /// Same surface, opposite handedness (what partial transposition does).
    pub fn flipped(&self) -> Self {
        let mut out = *self;
        let flip = Matrix3::from_diagonal(&Vector3::new(1.0, -1.0, 1.0));
        out.t_tilde = self.t_tilde * flip;
        out.det_t_tilde = -self.det_t_tilde;
        out.chi = -self.chi;
        out
    }

    /// The canonical operator with this ellipsoid (`b = 0`, `a = c`).
    pub fn canonical_operator(&self) -> TwoQubitOperator {
        reconstruct(&PauliForm::new(self.c, Vector3::zeros(), self.t_tilde))
    }
}

fn chirality(det: f64) -> i8 {
    if det.abs() <= tol::CHI {
        0
    } else if det > 0.0 {
        1
    } else {
        -1
    }
}

/// `(1 (x) (2 R_B)^{-1/2}) R (1 (x) (2 R_B)^{-1/2})`: the local filter that
/// makes Bob's marginal maximally mixed while preserving the ellipsoid.
pub fn canonical_filter(r: &TwoQubitOperator) -> Result<TwoQubitOperator> {
    let rb = partial_trace_a(r);
    let (s, lo) = inverse_sqrt2(&(rb * C64::new(2.0, 0.0)))?;
    let min_eigenvalue = lo / 2.0;
    if min_eigenvalue <= tol::SING {
        return Err(Error::SingularMarginal { min_eigenvalue });
    }
    let f = kron(&Matrix2::identity(), &s);
    let m = f * r.matrix() * f;
    // Re-Hermitize to keep rounding from accumulating.
    let m = (m + m.adjoint()) * C64::new(0.5, 0.0);
    Ok(TwoQubitOperator::from_raw(m))
}

pub fn ellipsoid_of(r: &TwoQubitOperator) -> EllipsoidRep {
    let p = decompose(r);
    let b_norm = p.b.norm();

    let point = |unbounded: bool| EllipsoidRep {
        c: p.a,
        q: Matrix3::zeros(),
        t_tilde: Matrix3::zeros(),
        chi: 0,
        det_t_tilde: 0.0,
        degenerate: true,
        singular_b: !unbounded,
        unbounded,
    };

    if b_norm > 1.0 + tol::SING {
        return point(true);
    }
    if b_norm >= 1.0 - tol::SING {
        let residual = (p.t - p.a * p.b.transpose()).norm();
        return point(residual > PRODUCT_RESIDUAL);
    }

    let g2 = 1.0 / (1.0 - b_norm * b_norm);
    let c = g2 * (p.a - p.t * p.b);
    let left = p.t - p.a * p.b.transpose();
    let q = g2 * left * (Matrix3::identity() + g2 * p.b * p.b.transpose()) * left.transpose();
    let q = 0.5 * (q + q.transpose());

    let t_tilde = match canonical_filter(r) {
        Ok(rt) => decompose(&rt).t,
        // Only reachable for |b| within rounding of the singular threshold.
        Err(_) => return point(false),
    };
    let det = t_tilde.determinant();
    let chi = chirality(det);
    EllipsoidRep {
        c,
        q,
        t_tilde,
        chi,
        det_t_tilde: det,
        degenerate: chi == 0,
        singular_b: false,
        unbounded: false,
    }
}

/// `c + t_tilde * nu`: the surface point selected by Bob's Bloch vector `nu`.
pub fn surface_point(e: &EllipsoidRep, nu: &Vector3<f64>) -> Result<Vector3<f64>> {
    if e.singular_b || e.unbounded {
        return Err(Error::DegenerateFrame);
    }
    if (nu.norm() - 1.0).abs() > tol::GEOM {
        return Err(Error::OutOfRange(format!("|nu| = {} is not 1", nu.norm())));
    }
    Ok(e.c + e.t_tilde * nu)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Semiaxis {
    pub length: f64,
    pub direction: [f64; 3],
}

/// Semiaxes from the eigen-decomposition of `Q`, longest first.
pub fn semiaxes(e: &EllipsoidRep) -> [Semiaxis; 3] {
    let (vals, vecs) = symmetric_eigen3(&e.q);
    std::array::from_fn(|k| {
        let v = vecs.column(k);
        Semiaxis {
            length: vals[k].max(0.0).sqrt(),
            direction: [v[0], v[1], v[2]],
        }
    })
}

/// `max_{|nu| = 1} |c + t_tilde nu|`, the farthest distance of the
/// ellipsoid from the origin.
pub fn max_radius(e: &EllipsoidRep) -> f64 {
    if e.unbounded {
        return f64::INFINITY;
    }
    if e.singular_b {
        return e.c.norm();
    }
    max_norm_on_sphere(&e.c, &e.t_tilde).value
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Containment {
    Inside,
    Touching,
    Outside,
}

pub fn is_inside_bloch_sphere(e: &EllipsoidRep) -> Containment {
    containment_of_radius(max_radius(e))
}

pub fn containment_of_radius(radius: f64) -> Containment {
    if (radius - 1.0).abs() <= tol::CONTACT {
        Containment::Touching
    } else if radius < 1.0 {
        Containment::Inside
    } else {
        Containment::Outside
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::partial_transpose_b;

    fn wp(p: f64) -> TwoQubitOperator {
        reconstruct(&PauliForm::diagonal([1.0, 1.0, 2.0 * p - 1.0]))
    }

    #[test]
    fn flip_is_right_handed_bloch_sphere() {
        let e = ellipsoid_of(&wp(1.0));
        assert!(e.c.norm() < 1e-15);
        assert!((e.q - Matrix3::identity()).norm() < 1e-14);
        assert_eq!(e.chi, 1);
        assert_eq!(is_inside_bloch_sphere(&e), Containment::Touching);
        let top = surface_point(&e, &Vector3::z()).unwrap();
        assert!((top - Vector3::z()).norm() < 1e-14);
    }

    #[test]
    fn bell_state_is_left_handed() {
        let e = ellipsoid_of(&reconstruct(&PauliForm::diagonal([1.0, -1.0, 1.0])));
        assert_eq!(e.chi, -1);
        assert!((e.q - Matrix3::identity()).norm() < 1e-14);
    }

    #[test]
    fn wp_fifth_semiaxes_and_contact() {
        let e = ellipsoid_of(&wp(0.2));
        assert_eq!(e.chi, -1);
        let ax = semiaxes(&e);
        assert!((ax[0].length - 1.0).abs() < 1e-12);
        assert!((ax[1].length - 1.0).abs() < 1e-12);
        assert!((ax[2].length - 0.6).abs() < 1e-12);
        assert!(ax[2].direction[2].abs() > 1.0 - 1e-12);
        assert!((max_radius(&e) - 1.0).abs() < 1e-12);
        let x = surface_point(&e, &Vector3::x()).unwrap();
        assert!((x - Vector3::x()).norm() < 1e-14);
        assert_eq!(
            is_inside_bloch_sphere(&ellipsoid_of(&wp(1.1))),
            Containment::Outside
        );
    }

    #[test]
    fn product_state_is_point_at_a() {
        let a = Vector3::new(0.3, 0.1, -0.2);
        let b = Vector3::new(0.0, 0.5, 0.4);
        let r = reconstruct(&PauliForm::new(a, b, a * b.transpose()));
        let e = ellipsoid_of(&r);
        assert!(e.q.norm() < 1e-14);
        assert!((e.c - a).norm() < 1e-14);
        assert_eq!(e.chi, 0);
    }

    #[test]
    fn singular_marginal_branch() {
        let a = Vector3::new(0.0, 0.0, 0.6);
        let b = Vector3::new(1.0, 0.0, 0.0);
        let r = reconstruct(&PauliForm::new(a, b, a * b.transpose()));
        assert!(matches!(
            canonical_filter(&r),
            Err(Error::SingularMarginal { .. })
        ));
        let e = ellipsoid_of(&r);
        assert!(e.singular_b && !e.unbounded);
        assert!((max_radius(&e) - 0.6).abs() < 1e-15);
        assert_eq!(
            surface_point(&e, &Vector3::x()),
            Err(Error::DegenerateFrame)
        );

        let bad = reconstruct(&PauliForm::new(a, b, Matrix3::identity() * 0.3));
        assert!(ellipsoid_of(&bad).unbounded);
        let over = reconstruct(&PauliForm::new(a, b * 1.2, Matrix3::zeros()));
        let e = ellipsoid_of(&over);
        assert!(e.unbounded);
        assert_eq!(is_inside_bloch_sphere(&e), Containment::Outside);
    }

    #[test]
    fn filter_is_identity_for_unbiased_bob() {
        let r = reconstruct(&PauliForm::new(
            Vector3::new(0.1, 0.2, 0.0),
            Vector3::zeros(),
            Matrix3::from_diagonal(&Vector3::new(0.3, -0.2, 0.5)),
        ));
        assert!(canonical_filter(&r).unwrap().frobenius_distance(&r) < 1e-15);
    }

    #[test]
    fn filter_clears_bob_vector() {
        let r = reconstruct(&PauliForm::new(
            Vector3::new(0.1, -0.2, 0.3),
            Vector3::new(0.2, 0.1, -0.4),
            Matrix3::new(0.3, 0.1, 0.0, -0.05, 0.2, 0.1, 0.0, 0.1, -0.25),
        ));
        let rt = canonical_filter(&r).unwrap();
        let pt = decompose(&rt);
        assert!(pt.b.norm() < 1e-12);
        let e = ellipsoid_of(&r);
        assert!((pt.a - e.c).norm() < 1e-12);
        assert!((e.q - pt.t * pt.t.transpose()).norm() < 1e-12);
        assert!((rt.matrix().trace().re - 1.0).abs() < 1e-12);

        let ept = ellipsoid_of(&partial_transpose_b(&r));
        assert_eq!(ept.chi, -e.chi);
        assert!((ept.q - e.q).norm() < 1e-12);
    }

    #[test]
    fn translated_small_sphere_radius() {
        let e =
            EllipsoidRep::from_canonical(Vector3::new(0.0, 0.0, 0.5), Matrix3::identity() * 0.25);
        assert!((max_radius(&e) - 0.75).abs() < 1e-15);
        assert_eq!(is_inside_bloch_sphere(&e), Containment::Inside);
        let origin = EllipsoidRep::from_canonical(Vector3::zeros(), Matrix3::zeros());
        assert_eq!(is_inside_bloch_sphere(&origin), Containment::Inside);
    }
}
