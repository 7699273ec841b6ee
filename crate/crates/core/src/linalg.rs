//! Small dense linear algebra: cyclic Jacobi for Hermitian matrices and
//! LU determinants with partial pivoting.
//!
//! Everything here is sized at compile time (`N <= 4` in practice), so the
//! rotations are applied as full matrix products.

use nalgebra::{Complex, Matrix3, SMatrix, SVector, Vector3};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;

const MAX_SWEEPS: usize = 100;

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct HermitianEigen<const N: usize> {
    pub values: SVector<f64, N>,
    /// Column `k` is the eigenvector for `values[k]`.
    pub vectors: SMatrix<C64, N, N>,
}

/// Cyclic Jacobi eigensolver for a Hermitian matrix.
///
/// Each rotation first removes the phase of the pivot `a_pq` with a diagonal
/// unitary and then applies the real symmetric Jacobi rotation, so the
/// combined plane rotation is unitary and the iteration converges
/// quadratically for any Hermitian input. Only the Hermitian part of `m`
/// is used.
pub fn hermitian_eigen<const N: usize>(m: &SMatrix<C64, N, N>) -> Result<HermitianEigen<N>> {
    let mut a = (m + m.adjoint()) * C64::new(0.5, 0.0);
    let mut v = SMatrix::<C64, N, N>::identity();
    let scale = a.norm();

    let off_norm = |a: &SMatrix<C64, N, N>| {
        let mut s = 0.0;
        for p in 0..N {
            for q in 0..N {
                if p != q {
                    s += a[(p, q)].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    if scale > 0.0 {
        let mut converged = false;
        for _ in 0..MAX_SWEEPS {
            if off_norm(&a) <= 1e-15 * scale {
                converged = true;
                break;
            }
            for p in 0..N {
                for q in (p + 1)..N {
                    let apq = a[(p, q)];
                    let g = apq.norm();
                    if g <= 1e-300 || g < 1e-18 * scale {
                        a[(p, q)] = C64::new(0.0, 0.0);
                        a[(q, p)] = C64::new(0.0, 0.0);
                        continue;
                    }
                    let phase = apq / g;
                    let theta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * g);
                    let t = if theta == 0.0 {
                        1.0
                    } else {
                        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                    };
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;

                    let mut rot = SMatrix::<C64, N, N>::identity();
                    rot[(p, p)] = C64::new(c, 0.0);
                    rot[(p, q)] = C64::new(s, 0.0);
                    rot[(q, p)] = phase.conj() * (-s);
                    rot[(q, q)] = phase.conj() * c;

                    a = rot.adjoint() * a * rot;
                    a[(p, q)] = C64::new(0.0, 0.0);
                    a[(q, p)] = C64::new(0.0, 0.0);
                    v *= rot;
                }
            }
        }
        if !converged {
            let off = off_norm(&a);
            if off > 1e-15 * scale {
                return Err(Error::NoConvergence {
                    sweeps: MAX_SWEEPS,
                    off,
                });
            }
        }
    }

    let mut order: Vec<usize> = (0..N).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = SVector::<f64, N>::from_fn(|k, _| a[(order[k], order[k])].re);
    let vectors = SMatrix::<C64, N, N>::from_fn(|r, k| v[(r, order[k])]);
    Ok(HermitianEigen { values, vectors })
}

/// Eigen-decomposition of a real symmetric 3x3 matrix, eigenvalues
/// **descending**, eigenvectors as orthonormal columns.
pub fn symmetric_eigen3(m: &Matrix3<f64>) -> (Vector3<f64>, Matrix3<f64>) {
    let mc = m.map(|x| C64::new(x, 0.0));
    // Real symmetric input keeps every rotation real; the solver cannot
    // stall on a 3x3 symmetric matrix with finite entries.
    let eig = hermitian_eigen(&mc).expect("Jacobi on a finite symmetric 3x3 matrix");
    let values = Vector3::new(eig.values[2], eig.values[1], eig.values[0]);
    let vectors = Matrix3::from_fn(|r, k| eig.vectors[(r, 2 - k)].re);
    (values, vectors)
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn det_lu<const N: usize>(m: &SMatrix<C64, N, N>) -> C64 {
    let mut a = *m;
    let mut det = C64::new(1.0, 0.0);
    for col in 0..N {
        let mut piv = col;
        let mut best = a[(col, col)].norm();
        for row in (col + 1)..N {
            let n = a[(row, col)].norm();
            if n > best {
                best = n;
                piv = row;
            }
        }
        if best == 0.0 {
            return C64::new(0.0, 0.0);
        }
        if piv != col {
            a.swap_rows(piv, col);
            det = -det;
        }
        let d = a[(col, col)];
        det *= d;
        for row in (col + 1)..N {
            let f = a[(row, col)] / d;
            if f.norm() == 0.0 {
                continue;
            }
            for k in col..N {
                let sub = f * a[(col, k)];
                a[(row, k)] -= sub;
            }
        }
    }
    det
}

/// `m^{-1/2}` for a positive definite Hermitian 2x2 matrix, together with
/// its smallest eigenvalue. The caller decides what "positive" means.
pub fn inverse_sqrt2(m: &SMatrix<C64, 2, 2>) -> Result<(SMatrix<C64, 2, 2>, f64)> {
    let eig = hermitian_eigen(m)?;
    let lo = eig.values[0];
    let d = SMatrix::<C64, 2, 2>::from_diagonal(&SVector::<C64, 2>::from_fn(|k, _| {
        C64::new(1.0 / eig.values[k].max(f64::MIN_POSITIVE).sqrt(), 0.0)
    }));
    Ok((eig.vectors * d * eig.vectors.adjoint(), lo))
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::Matrix4;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn jacobi_diagonalizes_complex_hermitian() {
        let m = Matrix4::new(
            c(1.0, 0.0),
            c(0.2, 0.3),
            c(-0.1, 0.0),
            c(0.0, -0.4),
            c(0.2, -0.3),
            c(0.5, 0.0),
            c(0.3, 0.1),
            c(0.1, 0.0),
            c(-0.1, 0.0),
            c(0.3, -0.1),
            c(-0.7, 0.0),
            c(0.05, 0.05),
            c(0.0, 0.4),
            c(0.1, 0.0),
            c(0.05, -0.05),
            c(0.2, 0.0),
        );
        let eig = hermitian_eigen(&m).unwrap();
        let d = Matrix4::from_diagonal(&eig.values.map(|x| c(x, 0.0)));
        let back = eig.vectors * d * eig.vectors.adjoint();
        assert!((back - m).norm() < 1e-13);
        let unit = eig.vectors.adjoint() * eig.vectors - Matrix4::<C64>::identity();
        assert!(unit.norm() < 1e-13);
        for k in 1..4 {
            assert!(eig.values[k - 1] <= eig.values[k]);
        }
    }

    #[test]
    fn jacobi_handles_diagonal_and_zero() {
        let z = Matrix4::<C64>::zeros();
        let eig = hermitian_eigen(&z).unwrap();
        assert_eq!(eig.values, SVector::<f64, 4>::zeros());

        let d = Matrix4::from_diagonal(&SVector::<C64, 4>::new(
            c(3.0, 0.0),
            c(-1.0, 0.0),
            c(2.0, 0.0),
            c(0.0, 0.0),
        ));
        let eig = hermitian_eigen(&d).unwrap();
        assert_eq!(eig.values.as_slice(), &[-1.0, 0.0, 2.0, 3.0]);
    }

    #[test]
    fn symmetric_eigen3_descending() {
        let m = Matrix3::new(2.0, 1.0, 0.0, 1.0, 2.0, 0.0, 0.0, 0.0, 0.5);
        let (vals, vecs) = symmetric_eigen3(&m);
        assert!((vals[0] - 3.0).abs() < 1e-14);
        assert!((vals[1] - 1.0).abs() < 1e-14);
        assert!((vals[2] - 0.5).abs() < 1e-14);
        let back = vecs * Matrix3::from_diagonal(&vals) * vecs.transpose();
        assert!((back - m).norm() < 1e-13);
    }

    #[test]
    fn lu_determinant_matches_cofactor_expansion() {
        let m = Matrix3::new(
            c(0.0, 0.0),
            c(2.0, 1.0),
            c(1.0, 0.0),
            c(1.0, 0.0),
            c(0.0, 0.0),
            c(3.0, -1.0),
            c(2.0, 0.0),
            c(1.0, 0.0),
            c(0.0, 0.0),
        );
        let cof = m[(0, 0)] * (m[(1, 1)] * m[(2, 2)] - m[(1, 2)] * m[(2, 1)])
            - m[(0, 1)] * (m[(1, 0)] * m[(2, 2)] - m[(1, 2)] * m[(2, 0)])
            + m[(0, 2)] * (m[(1, 0)] * m[(2, 1)] - m[(1, 1)] * m[(2, 0)]);
        assert!((det_lu(&m) - cof).norm() < 1e-14);
    }

    #[test]
    fn inverse_sqrt_of_half_identity() {
        let m = SMatrix::<C64, 2, 2>::identity() * c(0.5, 0.0);
        let (s, lo) = inverse_sqrt2(&m).unwrap();
        assert!((lo - 0.5).abs() < 1e-15);
        assert!((s - SMatrix::<C64, 2, 2>::identity() * c(2f64.sqrt(), 0.0)).norm() < 1e-14);
    }
}
