//! Seeded random states, operators and Bloch vectors.
//!
//! Every sampler takes an explicit RNG. [`stream_rng`] derives independent,
//! reproducible substreams from one seed so work can be sharded across
//! threads without changing results.

use nalgebra::{Matrix3, Rotation3, SMatrix, Unit, Vector2, Vector3, Vector4};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::linalg::C64;
use crate::pauli::{partial_transpose_b, reconstruct, PauliForm, TwoQubitOperator};

pub type SeededRng = ChaCha8Rng;

/// Substream `stream` of `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> SeededRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    StandardNormal.sample(rng)
}

pub fn unit_vector3<R: Rng + ?Sized>(rng: &mut R) -> Vector3<f64> {
    loop {
        let v = Vector3::new(normal(rng), normal(rng), normal(rng));
        let n = v.norm();
        if n > 1e-12 {
            return v / n;
        }
    }
}

/// Uniform point in the ball of the given radius.
pub fn ball_vector3<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> Vector3<f64> {
    unit_vector3(rng) * radius * rng.random::<f64>().cbrt()
}

pub fn rotation3<R: Rng + ?Sized>(rng: &mut R) -> Matrix3<f64> {
    let axis = Unit::new_normalize(unit_vector3(rng));
    let angle = rng.random_range(0.0..std::f64::consts::TAU);
    *Rotation3::from_axis_angle(&axis, angle).matrix()
}

/// Haar-random pure state on two qubits.
pub fn haar_ket<R: Rng + ?Sized>(rng: &mut R) -> Vector4<C64> {
    let v = Vector4::from_fn(|_, _| C64::new(normal(rng), normal(rng)));
    v / C64::new(v.norm(), 0.0)
}

/// Random density matrix `G G^dagger / tr` with a 4 x rank Ginibre `G`.
pub fn density_matrix<R: Rng + ?Sized>(rng: &mut R, rank: usize) -> TwoQubitOperator {
    let rank = rank.clamp(1, 4);
    let mut m = SMatrix::<C64, 4, 4>::zeros();
    for _ in 0..rank {
        let v = Vector4::from_fn(|_, _| C64::new(normal(rng), normal(rng)));
        m += v * v.adjoint();
    }
    TwoQubitOperator::normalize(m).expect("Ginibre matrices are Hermitian with positive trace")
}

/// Single-qubit ket with Bloch vector `v` (`|v| = 1`).
pub fn bloch_ket(v: &Vector3<f64>) -> Vector2<C64> {
    let z = v.z.clamp(-1.0, 1.0);
    let theta = z.acos();
    let phi = v.y.atan2(v.x);
    Vector2::new(
        C64::new((theta / 2.0).cos(), 0.0),
        C64::from_polar((theta / 2.0).sin(), phi),
    )
}

pub fn product_ket(phi: &Vector3<f64>, nu: &Vector3<f64>) -> Vector4<C64> {
    let a = bloch_ket(phi);
    let b = bloch_ket(nu);
    Vector4::new(a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
}

/// Families used to probe the classification and block-positivity code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorFamily {
    /// Random density matrix of rank 1..=4.
    State,
    /// Partial transpose of a random density matrix.
    TransposedState,
    /// Random Pauli coordinates with `|b| <= 0.9`; block positive or not.
    PauliCloud,
    /// Locally rotated `diag(1, 1, s)` correlations with a small offset.
    RotatedWp,
    /// Mixture of an optimal witness with a random state.
    MixedWitness,
    /// `|b| > 1`; never block positive.
    OverfullMarginal,
}

impl OperatorFamily {
    pub const ALL: [OperatorFamily; 6] = [
        OperatorFamily::State,
        OperatorFamily::TransposedState,
        OperatorFamily::PauliCloud,
        OperatorFamily::RotatedWp,
        OperatorFamily::MixedWitness,
        OperatorFamily::OverfullMarginal,
    ];

    pub fn sample<R: Rng + ?Sized>(self, rng: &mut R) -> TwoQubitOperator {
        match self {
            OperatorFamily::State => {
                let rank = rng.random_range(1..=4);
                density_matrix(rng, rank)
            }
            OperatorFamily::TransposedState => {
                let rank = rng.random_range(1..=3);
                partial_transpose_b(&density_matrix(rng, rank))
            }
            OperatorFamily::PauliCloud => {
                let a = ball_vector3(rng, 0.9);
                let b = ball_vector3(rng, 0.9);
                let sigma = rng.random_range(0.05..0.7);
                let t = Matrix3::from_fn(|_, _| sigma * normal(rng));
                reconstruct(&PauliForm::new(a, b, t))
            }
            OperatorFamily::RotatedWp => {
                let s = rng.random_range(-1.3..1.3);
                let shrink = rng.random_range(0.5..1.05);
                let t = shrink
                    * rotation3(rng)
                    * Matrix3::from_diagonal(&Vector3::new(1.0, 1.0, s))
                    * rotation3(rng);
                let a = ball_vector3(rng, 0.3);
                let b = ball_vector3(rng, 0.3);
                reconstruct(&PauliForm::new(a, b, t))
            }
            OperatorFamily::MixedWitness => {
                let psi = haar_ket(rng);
                let w = partial_transpose_b(&TwoQubitOperator::projector(&psi));
                let rank = rng.random_range(1..=4);
                let rho = density_matrix(rng, rank);
                w.mix(&rho, rng.random_range(0.0..0.8))
            }
            OperatorFamily::OverfullMarginal => {
                let a = ball_vector3(rng, 0.9);
                let b = unit_vector3(rng) * rng.random_range(1.05..1.6);
                let t = Matrix3::from_fn(|_, _| 0.3 * normal(rng));
                reconstruct(&PauliForm::new(a, b, t))
            }
        }
    }
}

/// Draws a family uniformly and samples from it.
pub fn mixed_operator<R: Rng + ?Sized>(rng: &mut R) -> (OperatorFamily, TwoQubitOperator) {
    let fam = OperatorFamily::ALL[rng.random_range(0..OperatorFamily::ALL.len())];
    (fam, fam.sample(rng))
}

/// Fibonacci lattice of `n` nearly uniform points on the unit sphere.
pub fn fibonacci_sphere(n: usize) -> Vec<Vector3<f64>> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - 2.0 * (i as f64 + 0.5) / n as f64;
            let r = (1.0 - z * z).max(0.0).sqrt();
            let th = golden * i as f64;
            Vector3::new(r * th.cos(), r * th.sin(), z)
        })
        .collect()
}
