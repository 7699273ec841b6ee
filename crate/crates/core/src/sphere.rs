//! Maximum of `|c + T nu|` over the unit sphere `|nu| = 1`.
//!
//! Squaring gives `|c|^2 + 2 g.nu + nu^T M nu` with `M = T^T T` and
//! `g = T^T c`, a trust-region subproblem with an equality constraint
//! (maximization form). Stationary points satisfy `(lambda I - M) nu = g`;
//! the global maximizer has `lambda >= lambda_max(M)` and lies on the
//! secular curve `|nu(lambda)| = 1`, except in the hard case where `g` has
//! no component along the top eigenspace and `lambda = lambda_max(M)`.

use nalgebra::{Matrix3, Vector3};

use crate::linalg::symmetric_eigen3;

const MAX_STEPS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereMax {
    /// `max |c + T nu|`.
    pub value: f64,
    /// A maximizing unit vector.
    pub nu: Vector3<f64>,
    /// The maximizer came from the hard-case construction.
    pub hard_case: bool,
}

pub fn max_norm_on_sphere(c: &Vector3<f64>, t: &Matrix3<f64>) -> SphereMax {
    let m = t.transpose() * t;
    let g = t.transpose() * c;
    let (mu_raw, basis) = symmetric_eigen3(&(0.5 * (m + m.transpose())));
    let mu = mu_raw.map(|x| x.max(0.0));
    let gp = basis.transpose() * g;
    let top = mu[0];
    let eig_tol = 1e-12 * top.max(1.0);
    let in_top: [bool; 3] = std::array::from_fn(|i| top - mu[i] <= eig_tol);

    let eval = |y: &Vector3<f64>| -> Option<(f64, Vector3<f64>)> {
        let n = y.norm();
        if n.is_nan() || n <= 0.0 || n.is_infinite() {
            return None;
        }
        let nu = basis * (y / n);
        Some(((c + t * nu).norm(), nu))
    };

    let mut best: Option<SphereMax> = None;
    let mut consider = |y: Vector3<f64>, hard: bool| {
        if let Some((value, nu)) = eval(&y) {
            if best.is_none_or(|b| value > b.value) {
                best = Some(SphereMax {
                    value,
                    nu,
                    hard_case: hard,
                });
            }
        }
    };

    // Hard case: lambda = lambda_max, free component in the top eigenspace.
    let mut partial = Vector3::zeros();
    for i in 0..3 {
        if !in_top[i] {
            partial[i] = gp[i] / (top - mu[i]);
        }
    }
    let n2 = partial.norm_squared();
    if n2 <= 1.0 {
        let lead = (0..3).find(|&i| in_top[i]).unwrap_or(0);
        let sign = if gp[lead] < 0.0 { -1.0 } else { 1.0 };
        let mut y = partial;
        y[lead] = sign * (1.0 - n2).sqrt();
        consider(y, true);
    }

    // Easy case: root of 1/|nu(lambda)| - 1 on (lambda_max, hi].
    let gtop2: f64 = (0..3).filter(|&i| in_top[i]).map(|i| gp[i] * gp[i]).sum();
    if gtop2 > 0.0 {
        let y_of = |lambda: f64| Vector3::from_fn(|i, _| gp[i] / (lambda - mu[i]));
        let mut lo = top;
        let mut hi = top + g.norm() + mu.sum() + 1.0;
        let mut lambda = hi;
        for _ in 0..MAX_STEPS {
            let y = y_of(lambda);
            let ny = y.norm();
            let phi = 1.0 / ny - 1.0;
            if phi.abs() <= 1e-15 {
                break;
            }
            if phi < 0.0 {
                lo = lambda;
            } else {
                hi = lambda;
            }
            let dphi: f64 = (0..3)
                .map(|i| gp[i] * gp[i] / (lambda - mu[i]).powi(3))
                .sum::<f64>()
                / ny.powi(3);
            let mut next = lambda - phi / dphi;
            if !(next > lo && next < hi) || !next.is_finite() {
                next = 0.5 * (lo + hi);
            }
            if (hi - lo) <= 1e-16 * hi.abs().max(1.0) || next == lambda {
                break;
            }
            lambda = next;
        }
        if lambda > top {
            consider(y_of(lambda), false);
        }
    }

    // Axis candidates keep degenerate inputs (M = 0, g = 0) well defined.
    for i in 0..3 {
        let mut y = Vector3::zeros();
        y[i] = if gp[i] < 0.0 { -1.0 } else { 1.0 };
        consider(y, false);
    }

    best.expect("at least one axis candidate is always finite")
}
