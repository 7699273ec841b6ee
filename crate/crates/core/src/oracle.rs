//! Brute-force checks that share no code path with the analytic routes:
//! product-state minimization for block positivity, a grid search for the
//! ellipsoid's maximal radius, and cofactor / characteristic-polynomial
//! versions of the determinant and spectrum.

use nalgebra::{Matrix4, Vector3};

use crate::ellipsoid::EllipsoidRep;
use crate::exec::Execution;
use crate::linalg::C64;
use crate::pauli::{decompose, PauliForm, TwoQubitOperator};
use crate::sampling::{fibonacci_sphere, stream_rng, unit_vector3};
use crate::tol;

const ALTERNATING_MAX_ITERS: usize = 20_000;
pub const DEFAULT_STARTS: usize = 64;
pub const DEFAULT_SEED: u64 = 0x5eed;

/// Best product state found for `<phi (x) nu| B |phi (x) nu>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductStateResult {
    pub min_value: f64,
    /// Bloch vector of Alice's factor.
    pub phi: Vector3<f64>,
    /// Bloch vector of Bob's factor.
    pub nu: Vector3<f64>,
}

pub fn min_product_expectation(
    b: &TwoQubitOperator,
    n_starts: usize,
    seed: u64,
) -> ProductStateResult {
    min_product_expectation_with(b, n_starts, seed, Execution::default())
}

/// Alternating exact minimization over Alice's and Bob's Bloch vectors
/// from the six coordinate axes plus `n_starts` random directions.
pub fn min_product_expectation_with(
    b: &TwoQubitOperator,
    n_starts: usize,
    seed: u64,
    exec: Execution,
) -> ProductStateResult {
    let p = decompose(b);
    let axes = [
        Vector3::x(),
        -Vector3::x(),
        Vector3::y(),
        -Vector3::y(),
        Vector3::z(),
        -Vector3::z(),
    ];
    let runs = exec.map_indexed(axes.len() + n_starts, |i| {
        let nu0 = if i < axes.len() {
            axes[i]
        } else {
            unit_vector3(&mut stream_rng(seed, i as u64))
        };
        alternate(&p, nu0)
    });
    runs.into_iter()
        .reduce(|best, r| {
            let better = r.min_value < best.min_value
                || (r.min_value == best.min_value
                    && r.phi.as_slice().partial_cmp(best.phi.as_slice())
                        == Some(std::cmp::Ordering::Less));
            if better {
                r
            } else {
                best
            }
        })
        .expect("at least the axis starts run")
}

fn neg_normalized(v: Vector3<f64>, prev: Vector3<f64>) -> Vector3<f64> {
    let n = v.norm();
    if n > 1e-300 {
        -v / n
    } else {
        // The objective does not depend on this block here.
        prev
    }
}

fn alternate(p: &PauliForm, nu0: Vector3<f64>) -> ProductStateResult {
    let mut nu = nu0;
    let mut phi = neg_normalized(p.a + p.t * nu, Vector3::x());
    let mut value = p.product_expectation(&phi, &nu);
    for _ in 0..ALTERNATING_MAX_ITERS {
        let new_nu = neg_normalized(p.b + p.t.transpose() * phi, nu);
        let new_phi = neg_normalized(p.a + p.t * new_nu, phi);
        let new_value = p.product_expectation(&new_phi, &new_nu);
        // Each half-step is an exact block minimizer, so a rise is rounding.
        if new_value > value {
            break;
        }
        let moved = (new_nu - nu).norm() + (new_phi - phi).norm();
        value = new_value;
        nu = new_nu;
        phi = new_phi;
        if moved < 1e-13 {
            break;
        }
    }
    ProductStateResult {
        min_value: value,
        phi,
        nu,
    }
}

/// Block positivity by product-state minimization.
pub fn verify_block_positive(b: &TwoQubitOperator) -> bool {
    min_product_expectation(b, DEFAULT_STARTS, DEFAULT_SEED).min_value >= -tol::CLASS
}

pub fn brute_max_radius(e: &EllipsoidRep, n_grid: usize, refine_steps: usize) -> f64 {
    brute_max_radius_with(e, n_grid, refine_steps, Execution::default())
}

/// Grid search of `|c + T nu|` over a Fibonacci sphere, then projected
/// ascent `nu <- normalize(T^T (c + T nu))` from the best few grid points.
/// Every evaluated point is feasible, so the result is a lower bound.
pub fn brute_max_radius_with(
    e: &EllipsoidRep,
    n_grid: usize,
    refine_steps: usize,
    exec: Execution,
) -> f64 {
    if e.unbounded {
        return f64::INFINITY;
    }
    if e.singular_b {
        return e.c.norm();
    }
    let c = e.c;
    let t = e.t_tilde;
    let radius = |nu: &Vector3<f64>| (c + t * nu).norm();

    let grid = fibonacci_sphere(n_grid.max(6));
    let scored = exec.map_slice(&grid, |nu| radius(nu));
    let mut order: Vec<usize> = (0..grid.len()).collect();
    order.sort_by(|&i, &j| scored[j].total_cmp(&scored[i]));
    let starts: Vec<Vector3<f64>> = order.iter().take(8).map(|&i| grid[i]).collect();

    let refined = exec.map_slice(&starts, |&start| {
        let mut nu = start;
        let mut best = radius(&nu);
        for _ in 0..refine_steps {
            let grad = t.transpose() * (c + t * nu);
            let n = grad.norm();
            if n < 1e-300 {
                break;
            }
            let next = grad / n;
            let val = radius(&next);
            let step = (next - nu).norm();
            if val >= best {
                best = val;
                nu = next;
            }
            if step < 1e-14 {
                break;
            }
        }
        best
    });
    refined
        .into_iter()
        .chain(scored.iter().copied())
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Determinant by cofactor (Leibniz) expansion over all 24 permutations.
pub fn leibniz_det4(r: &TwoQubitOperator) -> f64 {
    let m = r.matrix();
    let mut total = C64::new(0.0, 0.0);
    let mut perm = [0usize, 1, 2, 3];
    permute(&mut perm, 0, &mut |p| {
        let mut inversions = 0;
        for i in 0..4 {
            for j in (i + 1)..4 {
                if p[i] > p[j] {
                    inversions += 1;
                }
            }
        }
        let mut term = C64::new(if inversions % 2 == 0 { 1.0 } else { -1.0 }, 0.0);
        for (row, &col) in p.iter().enumerate() {
            term *= m[(row, col)];
        }
        total += term;
    });
    total.re
}

fn permute(p: &mut [usize; 4], k: usize, visit: &mut impl FnMut(&[usize; 4])) {
    if k == p.len() {
        visit(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, visit);
        p.swap(k, i);
    }
}

/// Coefficients `[c0, c1, c2, c3]` of `det(lambda I - R) = lambda^4 + c3 lambda^3 + ...`
/// by the Faddeev-LeVerrier recursion.
pub fn characteristic_polynomial(r: &TwoQubitOperator) -> [f64; 4] {
    let a = r.matrix();
    let id = Matrix4::<C64>::identity();
    let mut coeffs = [0.0; 5];
    coeffs[4] = 1.0;
    let mut mk = Matrix4::<C64>::zeros();
    for k in 1..=4 {
        mk = a * mk + id * C64::new(coeffs[5 - k], 0.0);
        coeffs[4 - k] = -(a * mk).trace().re / k as f64;
    }
    [coeffs[0], coeffs[1], coeffs[2], coeffs[3]]
}

/// Ascending eigenvalues as roots of the characteristic polynomial: Newton
/// from above the largest root (monotone for real-rooted polynomials),
/// then deflation and polishing. Multiple roots converge only linearly and are accurate
/// to roughly the cube root of machine precision.
pub fn charpoly_eigenvalues(r: &TwoQubitOperator) -> [f64; 4] {
    let c = characteristic_polynomial(r);
    let mut poly: Vec<f64> = vec![1.0, c[3], c[2], c[1], c[0]];
    let mut roots = Vec::with_capacity(4);
    while poly.len() > 1 {
        let bound = 1.0 + poly[1..].iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let mut x = bound;
        for _ in 0..100_000 {
            let (pv, dv) = horner(&poly, x);
            if dv == 0.0 || pv == 0.0 {
                break;
            }
            let next = x - pv / dv;
            if next >= x {
                break;
            }
            x = next;
        }
        roots.push(x);
        // Synthetic division by (lambda - x).
        let mut q = Vec::with_capacity(poly.len() - 1);
        let mut acc = 0.0;
        for &coef in &poly[..poly.len() - 1] {
            acc = acc * x + coef;
            q.push(acc);
        }
        poly = q;
    }
    // Deflation error is removed by Newton on the undeflated polynomial.
    let full = [1.0, c[3], c[2], c[1], c[0]];
    for x in &mut roots {
        for _ in 0..100 {
            let (pv, dv) = horner(&full, *x);
            if dv == 0.0 {
                break;
            }
            let next = *x - pv / dv;
            if horner(&full, next).0.abs() >= pv.abs() {
                break;
            }
            *x = next;
        }
    }
    roots.sort_by(f64::total_cmp);
    [roots[0], roots[1], roots[2], roots[3]]
}

fn horner(poly: &[f64], x: f64) -> (f64, f64) {
    let mut p = 0.0;
    let mut d = 0.0;
    for &coef in poly {
        d = d * x + p;
        p = p * x + coef;
    }
    (p, d)
}
