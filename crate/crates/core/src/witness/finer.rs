//! Is `w1` finer than `w2`, i.e. does `w1` detect every state `w2` detects?
//!
//! A positive answer is certified by a decomposition
//! `w2 = s w1 + (1 - s) P` with `P >= 0` and `0 < s <= 1`: then
//! `tr(rho w2) < 0` forces `tr(rho w1) < 0`. A negative answer is a state
//! detected by `w2` but not by `w1`. Such a state can always be taken on
//! the boundary of the joint numerical range of `(w1, w2)`, which is convex
//! and traced by top eigenvectors of `cos(t) w1 + sin(t) w2`; that sweep is
//! followed by seeded random pure and mixed states.

use nalgebra::Matrix4;

use crate::exec::Execution;
use crate::linalg::{hermitian_eigen, C64};
use crate::pauli::TwoQubitOperator;
use crate::sampling::{density_matrix, haar_ket, stream_rng};
use crate::tol;

#[derive(Debug, Clone, PartialEq)]
pub enum FinerVerdict {
    /// Certified: `w2 = s w1 + (1 - s) P` with `P >= 0`.
    Finer { s: f64 },
    /// A state detected by `w2` and not by `w1`.
    CounterexampleState(Box<TwoQubitOperator>),
    /// No certificate and no counterexample within the sampling budget.
    Inconclusive,
}

impl FinerVerdict {
    pub fn counterexample(&self) -> Option<&TwoQubitOperator> {
        match self {
            FinerVerdict::CounterexampleState(rho) => Some(rho),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FinerSearch {
    pub seed: u64,
    pub n_pure: usize,
    pub n_mixed: usize,
    /// Angles in the numerical-range sweep.
    pub sweep_angles: usize,
    pub exec: Execution,
}

impl FinerSearch {
    pub fn new(seed: u64, n_samples: usize) -> Self {
        Self {
            seed,
            n_pure: n_samples,
            n_mixed: n_samples / 10,
            sweep_angles: 256,
            exec: Execution::default(),
        }
    }
}

impl Default for FinerSearch {
    fn default() -> Self {
        Self::new(0, 100_000)
    }
}

pub fn is_finer(
    w1: &TwoQubitOperator,
    w2: &TwoQubitOperator,
    seed: u64,
    n_samples: usize,
) -> FinerVerdict {
    is_finer_with(w1, w2, &FinerSearch::new(seed, n_samples))
}

pub fn is_finer_with(
    w1: &TwoQubitOperator,
    w2: &TwoQubitOperator,
    search: &FinerSearch,
) -> FinerVerdict {
    if let Some(s) = dominance_certificate(w1, w2) {
        return FinerVerdict::Finer { s };
    }
    let margin = |rho: &TwoQubitOperator| -> f64 {
        let x = rho.trace_product(w1);
        let y = rho.trace_product(w2);
        // > 0 iff w2 detects rho (y < -tol) and w1 does not (x >= -tol).
        (x + tol::CLASS).min(-y - tol::CLASS)
    };

    if let Some(rho) = numerical_range_sweep(w1, w2, search.sweep_angles, &margin) {
        return FinerVerdict::CounterexampleState(Box::new(rho));
    }

    let n = search.n_pure + search.n_mixed;
    let seed = search.seed;
    let n_pure = search.n_pure;
    let found = search.exec.map_indexed(n, |i| {
        let mut rng = stream_rng(seed, i as u64);
        let rho = if i < n_pure {
            TwoQubitOperator::projector(&haar_ket(&mut rng))
        } else {
            density_matrix(&mut rng, 2 + i % 3)
        };
        let m = margin(&rho);
        (m > 0.0).then_some((m, rho))
    });
    let best = found
        .into_iter()
        .flatten()
        .reduce(|a, b| if b.0 > a.0 { b } else { a });
    match best {
        Some((_, rho)) => FinerVerdict::CounterexampleState(Box::new(rho)),
        None => FinerVerdict::Inconclusive,
    }
}

fn lambda_min(m: &Matrix4<C64>) -> f64 {
    hermitian_eigen(m)
        .map(|e| e.values[0])
        .unwrap_or(f64::NEG_INFINITY)
}

/// Largest `s` in `(0, 1]` with `w2 - s w1 >= 0`, if any. The smallest
/// eigenvalue is concave in `s`, so a golden-section search finds its
/// maximum.
fn dominance_certificate(w1: &TwoQubitOperator, w2: &TwoQubitOperator) -> Option<f64> {
    let f = |s: f64| lambda_min(&(w2.matrix() - w1.matrix() * C64::new(s, 0.0)));
    let ok = |s: f64| f(s) >= -1e-12;
    if ok(1.0) {
        return Some(1.0);
    }
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let mut x1 = hi - phi * (hi - lo);
    let mut x2 = lo + phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..80 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = f(x1);
        }
    }
    let s_best = 0.5 * (lo + hi);
    if s_best <= 1e-9 || !ok(s_best) {
        return None;
    }
    // Push to the largest feasible s.
    let (mut good, mut bad) = (s_best, 1.0);
    for _ in 0..60 {
        let mid = 0.5 * (good + bad);
        if ok(mid) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    Some(good)
}

fn numerical_range_sweep(
    w1: &TwoQubitOperator,
    w2: &TwoQubitOperator,
    n_angles: usize,
    margin: &impl Fn(&TwoQubitOperator) -> f64,
) -> Option<TwoQubitOperator> {
    let n_angles = n_angles.max(8);
    let boundary: Vec<TwoQubitOperator> = (0..n_angles)
        .filter_map(|k| {
            let t = std::f64::consts::TAU * k as f64 / n_angles as f64;
            let h = w1.matrix() * C64::new(t.cos(), 0.0) + w2.matrix() * C64::new(t.sin(), 0.0);
            let eig = hermitian_eigen(&h).ok()?;
            let top = eig.vectors.column(3).into_owned();
            Some(TwoQubitOperator::projector(&top))
        })
        .collect();

    let mut best: Option<(f64, TwoQubitOperator)> = None;
    let mut offer = |rho: TwoQubitOperator| {
        let m = margin(&rho);
        if m > 0.0 && best.as_ref().is_none_or(|(bm, _)| m > *bm) {
            best = Some((m, rho));
        }
    };
    for k in 0..boundary.len() {
        let p = &boundary[k];
        let q = &boundary[(k + 1) % boundary.len()];
        offer(*p);
        // On the segment both coordinates are affine in t; the margin is a
        // minimum of two affine functions, maximal where they cross.
        let (x0, y0) = (p.trace_product(w1), p.trace_product(w2));
        let (x1, y1) = (q.trace_product(w1), q.trace_product(w2));
        let denom = (x1 - x0) + (y1 - y0);
        if denom.abs() > 1e-300 {
            let t = (-2.0 * tol::CLASS - x0 - y0) / denom;
            if t > 0.0 && t < 1.0 {
                offer(p.mix(q, t));
            }
        }
    }
    best.map(|(_, rho)| rho)
}
