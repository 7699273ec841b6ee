use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("operator is not Hermitian (max residual {residual:.3e})")]
    NotHermitian { residual: f64 },

    #[error("operator does not have unit trace (trace = {re:.12} + {im:.3e}i)")]
    NotUnitTrace { re: f64, im: f64 },

    #[error("operator has zero trace and cannot be normalized")]
    ZeroTrace,

    #[error(
        "Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off:.3e})"
    )]
    NoConvergence { sweeps: usize, off: f64 },

    #[error("marginal R_B is singular (smallest eigenvalue {min_eigenvalue:.3e}); canonical filtering is undefined")]
    SingularMarginal { min_eigenvalue: f64 },

    #[error("surface parametrization is unavailable: the ellipsoid is the single point a")]
    DegenerateFrame,

    #[error("class inequalities admit no consistent sign pattern (lhs_minus = {lhs_minus:.3e}, lhs_plus = {lhs_plus:.3e}, chi = {chi})")]
    InconsistentInvariants {
        lhs_minus: f64,
        lhs_plus: f64,
        chi: i8,
    },

    #[error("operator is not a state: {reason}")]
    NotAState { reason: String },

    #[error("pure state is not normalized (norm {norm:.12})")]
    NotNormalized { norm: f64 },

    #[error("pure state is not entangled (smaller Schmidt coefficient {schmidt_min:.3e})")]
    NotEntangled { schmidt_min: f64 },

    #[error("pure state has complex amplitudes (max imaginary part {max_imag:.3e})")]
    NotReal { max_imag: f64 },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("target ellipsoid does not represent a witness (class {class})")]
    NotAWitnessEllipsoid { class: String },
}
