//! Two-qubit operators and their Pauli-basis coordinates.

use nalgebra::{Matrix2, Matrix3, Matrix4, Vector3, Vector4};

use crate::error::{Error, Result};
use crate::linalg::{det_lu, hermitian_eigen, C64};
use crate::tol;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// `sigma_0 = 1`, `sigma_1 = X`, `sigma_2 = Y = [[0, -i], [i, 0]]`, `sigma_3 = Z`.
pub fn sigma(k: usize) -> Matrix2<C64> {
    match k {
        0 => Matrix2::new(ONE, ZERO, ZERO, ONE),
        1 => Matrix2::new(ZERO, ONE, ONE, ZERO),
        2 => Matrix2::new(ZERO, C64::new(0.0, -1.0), C64::new(0.0, 1.0), ZERO),
        3 => Matrix2::new(ONE, ZERO, ZERO, -ONE),
        _ => panic!("Pauli index {k} out of range"),
    }
}

/// Kronecker product `a (x) b`; `a` acts on qubit A.
pub fn kron(a: &Matrix2<C64>, b: &Matrix2<C64>) -> Matrix4<C64> {
    Matrix4::from_fn(|r, c| a[(r / 2, c / 2)] * b[(r % 2, c % 2)])
}

/// `sigma_i (x) sigma_j` with `0` meaning the identity.
pub fn pauli_product(i: usize, j: usize) -> Matrix4<C64> {
    kron(&sigma(i), &sigma(j))
}

/// Hermitian, unit-trace operator on `C^2 (x) C^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitOperator {
    m: Matrix4<C64>,
}

impl TwoQubitOperator {
    /// Validates Hermiticity and unit trace with the default tolerances.
    pub fn new(m: Matrix4<C64>) -> Result<Self> {
        Self::with_tolerance(m, tol::HERM, tol::TRACE)
    }

    pub fn with_tolerance(m: Matrix4<C64>, herm_tol: f64, trace_tol: f64) -> Result<Self> {
        let residual = hermiticity_residual(&m);
        if residual > herm_tol {
            return Err(Error::NotHermitian { residual });
        }
        let tr = m.trace();
        if (tr - ONE).norm() > trace_tol {
            return Err(Error::NotUnitTrace {
                re: tr.re,
                im: tr.im,
            });
        }
        Ok(Self { m })
    }

    /// Divides a Hermitian matrix by its trace.
    pub fn normalize(m: Matrix4<C64>) -> Result<Self> {
        Self::normalize_with_tolerance(m, tol::HERM)
    }

    pub fn normalize_with_tolerance(m: Matrix4<C64>, herm_tol: f64) -> Result<Self> {
        let residual = hermiticity_residual(&m);
        if residual > herm_tol {
            return Err(Error::NotHermitian { residual });
        }
        let tr = m.trace().re;
        if tr.abs() < 1e-300 {
            return Err(Error::ZeroTrace);
        }
        Ok(Self {
            m: m / C64::new(tr, 0.0),
        })
    }

    /// Callers guarantee Hermiticity and unit trace.
    pub(crate) fn from_raw(m: Matrix4<C64>) -> Self {
        Self { m }
    }

    /// Rank-one projector `|psi><psi|` for a normalized ket.
    pub fn projector(psi: &Vector4<C64>) -> Self {
        Self {
            m: psi * psi.adjoint(),
        }
    }

    /// `1 (x) 1 / 4`.
    pub fn maximally_mixed() -> Self {
        Self {
            m: Matrix4::identity() * C64::new(0.25, 0.0),
        }
    }

    pub fn matrix(&self) -> &Matrix4<C64> {
        &self.m
    }

    /// `<psi| R |psi>` (real part).
    pub fn expectation(&self, psi: &Vector4<C64>) -> f64 {
        (psi.adjoint() * self.m * psi)[(0, 0)].re
    }

    /// `tr(R S)` (real part).
    pub fn trace_product(&self, other: &TwoQubitOperator) -> f64 {
        let mut s = 0.0;
        for i in 0..4 {
            for k in 0..4 {
                s += (self.m[(i, k)] * other.m[(k, i)]).re;
            }
        }
        s
    }

    /// Full transpose `R^T` (equal to complex conjugation for Hermitian `R`).
    pub fn transpose(&self) -> Self {
        Self {
            m: self.m.transpose(),
        }
    }

    pub fn frobenius_distance(&self, other: &TwoQubitOperator) -> f64 {
        (self.m - other.m).norm()
    }

    /// Convex combination `(1 - t) self + t other`.
    pub fn mix(&self, other: &TwoQubitOperator, t: f64) -> Self {
        Self {
            m: self.m * C64::new(1.0 - t, 0.0) + other.m * C64::new(t, 0.0),
        }
    }
}

fn hermiticity_residual(m: &Matrix4<C64>) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Pauli-basis coordinates: `R = (1 + a.sigma (x) 1 + 1 (x) b.sigma + sum T_ij sigma_i (x) sigma_j) / 4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliForm {
    pub a: Vector3<f64>,
    pub b: Vector3<f64>,
    pub t: Matrix3<f64>,
}

impl PauliForm {
    pub fn new(a: Vector3<f64>, b: Vector3<f64>, t: Matrix3<f64>) -> Self {
        Self { a, b, t }
    }

    pub fn zero() -> Self {
        Self::new(Vector3::zeros(), Vector3::zeros(), Matrix3::zeros())
    }

    /// `a = b = 0`, `T = diag(d)`.
    pub fn diagonal(d: [f64; 3]) -> Self {
        Self::new(
            Vector3::zeros(),
            Vector3::zeros(),
            Matrix3::from_diagonal(&Vector3::from(d)),
        )
    }

    /// `<phi (x) nu| R |phi (x) nu> = (1 + a.phi + b.nu + phi^T T nu) / 4` for
    /// unit Bloch vectors `phi`, `nu`.
    pub fn product_expectation(&self, phi: &Vector3<f64>, nu: &Vector3<f64>) -> f64 {
        0.25 * (1.0 + self.a.dot(phi) + self.b.dot(nu) + phi.dot(&(self.t * nu)))
    }
}

pub fn decompose(r: &TwoQubitOperator) -> PauliForm {
    let coeff = |i: usize, j: usize| -> f64 {
        let p = pauli_product(i, j);
        let mut s = 0.0;
        for x in 0..4 {
            for y in 0..4 {
                s += (r.m[(x, y)] * p[(y, x)]).re;
            }
        }
        s
    };
    PauliForm {
        a: Vector3::from_fn(|i, _| coeff(i + 1, 0)),
        b: Vector3::from_fn(|j, _| coeff(0, j + 1)),
        t: Matrix3::from_fn(|i, j| coeff(i + 1, j + 1)),
    }
}

pub fn reconstruct(p: &PauliForm) -> TwoQubitOperator {
    let mut m = pauli_product(0, 0);
    for i in 0..3 {
        m += pauli_product(i + 1, 0) * C64::new(p.a[i], 0.0);
        m += pauli_product(0, i + 1) * C64::new(p.b[i], 0.0);
        for j in 0..3 {
            m += pauli_product(i + 1, j + 1) * C64::new(p.t[(i, j)], 0.0);
        }
    }
    TwoQubitOperator {
        m: m * C64::new(0.25, 0.0),
    }
}

/// Transpose on qubit B. In Pauli coordinates this negates `b_y` and the
/// `y` column of `T`.
pub fn partial_transpose_b(r: &TwoQubitOperator) -> TwoQubitOperator {
    let m = Matrix4::from_fn(|row, col| {
        let (a, b) = (row / 2, row % 2);
        let (a2, b2) = (col / 2, col % 2);
        r.m[(2 * a + b2, 2 * a2 + b)]
    });
    TwoQubitOperator { m }
}

/// `R_B = tr_A R`.
pub fn partial_trace_a(r: &TwoQubitOperator) -> Matrix2<C64> {
    Matrix2::from_fn(|b, b2| r.m[(b, b2)] + r.m[(2 + b, 2 + b2)])
}

pub fn det4(r: &TwoQubitOperator) -> f64 {
    det_lu(&r.m).re
}

/// Ascending eigenvalues.
pub fn eigenvalues4(r: &TwoQubitOperator) -> Result<[f64; 4]> {
    let eig = hermitian_eigen(&r.m)?;
    Ok([eig.values[0], eig.values[1], eig.values[2], eig.values[3]])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bell_phi_plus() -> Vector4<C64> {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Vector4::new(C64::new(s, 0.0), ZERO, ZERO, C64::new(s, 0.0))
    }

    fn half_flip() -> TwoQubitOperator {
        let h = C64::new(0.5, 0.0);
        let mut m = Matrix4::zeros();
        m[(0, 0)] = h;
        m[(1, 2)] = h;
        m[(2, 1)] = h;
        m[(3, 3)] = h;
        TwoQubitOperator::new(m).unwrap()
    }

    #[test]
    fn sigma_y_convention() {
        let y = sigma(2);
        assert_eq!(y[(0, 1)], C64::new(0.0, -1.0));
        assert_eq!(y[(1, 0)], C64::new(0.0, 1.0));
    }

    #[test]
    fn rejects_non_hermitian_and_bad_trace() {
        let mut m = Matrix4::<C64>::identity() * C64::new(0.25, 0.0);
        m[(0, 1)] = C64::new(0.1, 0.0);
        assert!(matches!(
            TwoQubitOperator::new(m),
            Err(Error::NotHermitian { .. })
        ));

        let m = Matrix4::<C64>::identity() * C64::new(0.5, 0.0);
        assert!(matches!(
            TwoQubitOperator::new(m),
            Err(Error::NotUnitTrace { .. })
        ));
        let n = TwoQubitOperator::normalize(m).unwrap();
        assert_eq!(n, TwoQubitOperator::maximally_mixed());

        assert_eq!(
            TwoQubitOperator::normalize(Matrix4::zeros()),
            Err(Error::ZeroTrace)
        );
    }

    #[test]
    fn decompose_known_operators() {
        let p = decompose(&TwoQubitOperator::maximally_mixed());
        assert_eq!(p, PauliForm::zero());

        let p = decompose(&half_flip());
        assert!(p.a.norm() < 1e-15 && p.b.norm() < 1e-15);
        assert!((p.t - Matrix3::identity()).norm() < 1e-15);

        let p = decompose(&TwoQubitOperator::projector(&bell_phi_plus()));
        assert!((p.t - Matrix3::from_diagonal(&Vector3::new(1.0, -1.0, 1.0))).norm() < 1e-15);
    }

    #[test]
    fn reconstruct_flip() {
        let r = reconstruct(&PauliForm::diagonal([1.0, 1.0, 1.0]));
        assert!(r.frobenius_distance(&half_flip()) < 1e-15);
        assert_eq!(
            reconstruct(&PauliForm::zero()),
            TwoQubitOperator::maximally_mixed()
        );
    }

    #[test]
    fn partial_transpose_of_bell_is_half_flip() {
        let pt = partial_transpose_b(&TwoQubitOperator::projector(&bell_phi_plus()));
        assert!(pt.frobenius_distance(&half_flip()) < 1e-15);
        let mm = TwoQubitOperator::maximally_mixed();
        assert_eq!(partial_transpose_b(&mm), mm);
    }

    #[test]
    fn partial_trace_examples() {
        let half = Matrix2::identity() * C64::new(0.5, 0.0);
        assert!((partial_trace_a(&TwoQubitOperator::maximally_mixed()) - half).norm() < 1e-15);
        assert!((partial_trace_a(&half_flip()) - half).norm() < 1e-15);

        let rho_a = Matrix2::new(
            C64::new(0.7, 0.0),
            C64::new(0.1, 0.2),
            C64::new(0.1, -0.2),
            C64::new(0.3, 0.0),
        );
        let rho_b = Matrix2::new(
            C64::new(0.4, 0.0),
            C64::new(0.0, -0.3),
            C64::new(0.0, 0.3),
            C64::new(0.6, 0.0),
        );
        let prod = TwoQubitOperator::new(kron(&rho_a, &rho_b)).unwrap();
        assert!((partial_trace_a(&prod) - rho_b).norm() < 1e-15);
    }

    #[test]
    fn determinants_and_spectra() {
        assert!((det4(&TwoQubitOperator::maximally_mixed()) - 1.0 / 256.0).abs() < 1e-17);
        assert!((det4(&half_flip()) + 1.0 / 16.0).abs() < 1e-15);
        assert!(det4(&TwoQubitOperator::projector(&bell_phi_plus())).abs() < 1e-15);

        let ev = eigenvalues4(&half_flip()).unwrap();
        let want = [-0.5, 0.5, 0.5, 0.5];
        for k in 0..4 {
            assert!((ev[k] - want[k]).abs() < 1e-14);
        }
        assert_eq!(
            eigenvalues4(&TwoQubitOperator::maximally_mixed()).unwrap(),
            [0.25; 4]
        );
    }
}
