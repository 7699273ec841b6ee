use nalgebra::{Matrix4, Vector4};

use crate::error::{Error, Result};
use crate::linalg::C64;
use crate::pauli::{partial_transpose_b, TwoQubitOperator};
use crate::tol;

/// Normalized two-qubit ket in the `|00>, |01>, |10>, |11>` basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureState {
    amps: Vector4<C64>,
}

impl PureState {
    pub fn new(amps: Vector4<C64>) -> Result<Self> {
        let norm = amps.norm();
        if (norm - 1.0).abs() > tol::GEOM {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { amps })
    }

    pub fn from_real(amps: [f64; 4]) -> Result<Self> {
        Self::new(Vector4::from_fn(|i, _| C64::new(amps[i], 0.0)))
    }

    fn bell(a: f64, b: f64, c: f64, d: f64) -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            amps: Vector4::from_fn(|i, _| C64::new(s * [a, b, c, d][i], 0.0)),
        }
    }

    /// `(|00> + |11>) / sqrt 2`
    pub fn phi_plus() -> Self {
        Self::bell(1.0, 0.0, 0.0, 1.0)
    }

    pub fn phi_minus() -> Self {
        Self::bell(1.0, 0.0, 0.0, -1.0)
    }

    pub fn psi_plus() -> Self {
        Self::bell(0.0, 1.0, 1.0, 0.0)
    }

    /// The singlet `(|01> - |10>) / sqrt 2`.
    pub fn psi_minus() -> Self {
        Self::bell(0.0, 1.0, -1.0, 0.0)
    }

    /// `cos(theta) |00> + sin(theta) |11>`.
    pub fn schmidt(theta: f64) -> Self {
        Self {
            amps: Vector4::new(
                C64::new(theta.cos(), 0.0),
                C64::new(0.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(theta.sin(), 0.0),
            ),
        }
    }

    pub fn ket(&self) -> &Vector4<C64> {
        &self.amps
    }

    pub fn projector(&self) -> TwoQubitOperator {
        TwoQubitOperator::projector(&self.amps)
    }

    /// Smaller Schmidt coefficient.
    pub fn schmidt_min(&self) -> f64 {
        let a = &self.amps;
        let det = (a[0] * a[3] - a[1] * a[2]).norm();
        let disc = (1.0 - 4.0 * det * det).max(0.0).sqrt();
        (2.0 * det * det / (1.0 + disc)).sqrt()
    }

    pub fn max_imag(&self) -> f64 {
        self.amps.iter().fold(0.0, |m, z| m.max(z.im.abs()))
    }
}

/// The flip operator `F |x>|y> = |y>|x>`, halved to unit trace.
pub fn flip_witness() -> TwoQubitOperator {
    wp_witness(1.0)
}

/// `W_p = (1/2) [[p, 0, 0, 0], [0, 1-p, 1, 0], [0, 1, 1-p, 0], [0, 0, 0, p]]`.
pub fn wp_witness(p: f64) -> TwoQubitOperator {
    let h = |x: f64| C64::new(0.5 * x, 0.0);
    let mut m = Matrix4::zeros();
    m[(0, 0)] = h(p);
    m[(1, 1)] = h(1.0 - p);
    m[(1, 2)] = h(1.0);
    m[(2, 1)] = h(1.0);
    m[(2, 2)] = h(1.0 - p);
    m[(3, 3)] = h(p);
    TwoQubitOperator::from_raw(m)
}

fn ensure_entangled(psi: &PureState) -> Result<()> {
    let schmidt_min = psi.schmidt_min();
    if schmidt_min <= tol::GEOM {
        return Err(Error::NotEntangled { schmidt_min });
    }
    Ok(())
}

/// `|psi><psi|^{T_B}`, optimal for every entangled `psi`.
pub fn pure_state_witness(psi: &PureState) -> Result<TwoQubitOperator> {
    ensure_entangled(psi)?;
    Ok(partial_transpose_b(&psi.projector()))
}

/// `(rho + rho^{T_B}) / 2` with `rho = |psi><psi|` for a real entangled `psi`.
pub fn ew4_optimal(psi: &PureState) -> Result<TwoQubitOperator> {
    let max_imag = psi.max_imag();
    if max_imag > tol::HERM {
        return Err(Error::NotReal { max_imag });
    }
    ensure_entangled(psi)?;
    let rho = psi.projector();
    Ok(rho.mix(&partial_transpose_b(&rho), 0.5))
}

/// `w |phi+><phi+| + (1 - w) 1/4`.
pub fn werner(w: f64) -> Result<TwoQubitOperator> {
    if !(0.0..=1.0).contains(&w) {
        return Err(Error::OutOfRange(format!(
            "Werner weight {w} not in [0, 1]"
        )));
    }
    Ok(TwoQubitOperator::maximally_mixed().mix(&PureState::phi_plus().projector(), w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::{decompose, reconstruct, PauliForm};
    use nalgebra::{Matrix3, Vector3};

    #[test]
    fn wp_pauli_form() {
        for p in [0.0, 0.2, 0.5, 1.0] {
            let d = decompose(&wp_witness(p));
            assert!(d.a.norm() < 1e-15 && d.b.norm() < 1e-15);
            let want = Matrix3::from_diagonal(&Vector3::new(1.0, 1.0, 2.0 * p - 1.0));
            assert!((d.t - want).norm() < 1e-15);
        }
    }

    #[test]
    fn flip_matches_wp_one_and_bell_transpose() {
        assert_eq!(wp_witness(1.0), flip_witness());
        let pw = pure_state_witness(&PureState::phi_plus()).unwrap();
        assert!(pw.frobenius_distance(&flip_witness()) < 1e-15);
        assert!(
            flip_witness().frobenius_distance(&reconstruct(&PauliForm::diagonal([1.0; 3]))) < 1e-15
        );
    }

    #[test]
    fn constructor_errors() {
        let product = PureState::from_real([1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(matches!(
            pure_state_witness(&product),
            Err(Error::NotEntangled { .. })
        ));
        let complex = PureState::new(Vector4::new(
            C64::new(0.0, std::f64::consts::FRAC_1_SQRT_2),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
        ))
        .unwrap();
        assert!(matches!(ew4_optimal(&complex), Err(Error::NotReal { .. })));
        assert!(matches!(werner(1.5), Err(Error::OutOfRange(_))));
        assert!(matches!(
            PureState::from_real([1.0, 1.0, 0.0, 0.0]),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn schmidt_coefficients() {
        assert!(
            (PureState::phi_plus().schmidt_min() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15
        );
        assert!((PureState::schmidt(0.3).schmidt_min() - 0.3f64.sin()).abs() < 1e-15);
    }

    #[test]
    fn werner_is_a_centred_ball() {
        let d = decompose(&werner(0.4).unwrap());
        assert!(d.a.norm() < 1e-15 && d.b.norm() < 1e-15);
        assert!((d.t - Matrix3::from_diagonal(&Vector3::new(0.4, -0.4, 0.4))).norm() < 1e-15);
    }
}
