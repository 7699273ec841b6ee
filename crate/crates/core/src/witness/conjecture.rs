//! Numerical explorer for optimality within the set `S` of witnesses whose
//! ellipsoids fit inside a target ellipsoid `E*`. The expectation being
//! probed: the optimal members of `S` are the witnesses whose ellipsoid is
//! `E*` itself. The output is sampled evidence, never a proof.
//!
//! Members are generated constructively: a random centre offset and
//! correlation matrix, both confined to the affine hull of `E*`, are scaled
//! by the largest factor that keeps the ellipsoid inside `E*`. Containment
//! of `{d + T nu}` in `{x : x^T Q*^+ x <= 1}` is the same sphere
//! maximization as the Bloch-ball test after the change of variables
//! `x -> Q*^{+1/2} x`.

use nalgebra::{Matrix3, Vector3};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::finer::{is_finer_with, FinerSearch, FinerVerdict};
use crate::classification::{classify_by_ellipsoid, Class};
use crate::ellipsoid::{semiaxes, EllipsoidRep};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::linalg::symmetric_eigen3;
use crate::pauli::{det4, TwoQubitOperator};
use crate::sampling::{ball_vector3, stream_rng};
use crate::sphere::max_norm_on_sphere;
use crate::tol;

const SUPPORT_TOL: f64 = 1e-9;
const ATTEMPTS_PER_MEMBER: usize = 200;
/// Members closer than this (Frobenius) to `W*` are `W*` itself.
const SAME_WITNESS: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConjectureConfig {
    pub seed: u64,
    pub n_witnesses: usize,
    /// Random states per finer-than search.
    pub n_states: usize,
    pub exec: Execution,
}

impl ConjectureConfig {
    pub fn new(seed: u64, n_witnesses: usize, n_states: usize) -> Self {
        Self {
            seed,
            n_witnesses,
            n_states,
            exec: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EllipsoidSummary {
    pub c: [f64; 3],
    pub semiaxes: [f64; 3],
    pub chi: i8,
    pub class: Class,
}

impl EllipsoidSummary {
    fn of(e: &EllipsoidRep, class: Class) -> Self {
        let ax = semiaxes(e);
        Self {
            c: [e.c.x, e.c.y, e.c.z],
            semiaxes: [ax[0].length, ax[1].length, ax[2].length],
            chi: e.chi,
            class,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MemberRecord {
    pub index: usize,
    pub c: [f64; 3],
    pub t: [[f64; 3]; 3],
    pub chi: i8,
    pub distance_to_target: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChiralityReport {
    pub chi: i8,
    pub target_class: Class,
    /// The target ellipsoid with this handedness represents a witness.
    pub valid: bool,
    pub members: usize,
    pub attempts: usize,
    /// Members for which no sampled state is detected by the member but
    /// missed by `W*`.
    pub dominated_by_target: usize,
    pub fraction_dominated: f64,
    /// Members shown not to be finer than `W*` by an explicit state.
    pub refuted_as_finer: usize,
    /// Members distinct from `W*` for which no such state was found.
    pub counterexamples: Vec<MemberRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub seed: u64,
    pub n_witnesses: usize,
    pub n_states: usize,
    pub target: EllipsoidSummary,
    pub chiralities: Vec<ChiralityReport>,
}

pub fn conjecture_explore(
    e_star: &EllipsoidRep,
    seed: u64,
    n_witnesses: usize,
    n_states: usize,
) -> Result<ConjectureReport> {
    conjecture_explore_with(e_star, &ConjectureConfig::new(seed, n_witnesses, n_states))
}

pub fn conjecture_explore_with(
    e_star: &EllipsoidRep,
    cfg: &ConjectureConfig,
) -> Result<ConjectureReport> {
    let class = classify_by_ellipsoid(e_star)?.class;
    if !class.is_witness() {
        return Err(Error::NotAWitnessEllipsoid {
            class: class.to_string(),
        });
    }
    let geometry = TargetGeometry::new(e_star);

    let mut handed = vec![*e_star];
    if e_star.chi != 0 {
        handed.push(e_star.flipped());
    }

    let mut chiralities = Vec::new();
    for (h, target) in handed.iter().enumerate() {
        let target_class = classify_by_ellipsoid(target)?.class;
        let valid = target_class.is_witness();
        let mut report = ChiralityReport {
            chi: target.chi,
            target_class,
            valid,
            members: 0,
            attempts: 0,
            dominated_by_target: 0,
            fraction_dominated: 0.0,
            refuted_as_finer: 0,
            counterexamples: Vec::new(),
        };
        if valid {
            explore_handedness(&geometry, target, h as u64, cfg, &mut report);
        }
        chiralities.push(report);
    }

    Ok(ConjectureReport {
        seed: cfg.seed,
        n_witnesses: cfg.n_witnesses,
        n_states: cfg.n_states,
        target: EllipsoidSummary::of(e_star, class),
        chiralities,
    })
}

struct TargetGeometry {
    centre: Vector3<f64>,
    /// Orthogonal projector onto the support of `Q*`.
    support: Matrix3<f64>,
    /// `Q*^{+1/2}`.
    whiten: Matrix3<f64>,
}

impl TargetGeometry {
    fn new(e: &EllipsoidRep) -> Self {
        let (vals, vecs) = symmetric_eigen3(&e.q);
        let mut support = Matrix3::zeros();
        let mut whiten = Matrix3::zeros();
        for k in 0..3 {
            if vals[k] > SUPPORT_TOL {
                let v = vecs.column(k);
                support += v * v.transpose();
                whiten += v * v.transpose() / vals[k].sqrt();
            }
        }
        Self {
            centre: e.c,
            support,
            whiten,
        }
    }

    /// Largest distance, in `E*`-normalized units, of the candidate surface
    /// from the target centre; `<= 1` means contained.
    fn spread(&self, offset: &Vector3<f64>, t: &Matrix3<f64>) -> f64 {
        max_norm_on_sphere(&(self.whiten * offset), &(self.whiten * t)).value
    }

    /// Largest scale keeping `(offset, t)` inside the target.
    fn max_scale(&self, offset: &Vector3<f64>, t: &Matrix3<f64>) -> f64 {
        let at = |s: f64| self.spread(&(offset * s), &(t * s));
        let mut hi = 1.0;
        while at(hi) <= 1.0 {
            hi *= 2.0;
            if hi > 1e6 {
                return hi;
            }
        }
        let mut lo = 0.0;
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if at(mid) <= 1.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }
}

struct Member {
    index: usize,
    c: Vector3<f64>,
    t: Matrix3<f64>,
    op: TwoQubitOperator,
}

fn sample_member(
    geo: &TargetGeometry,
    seed: u64,
    stream: u64,
    index: usize,
) -> (Option<Member>, usize) {
    let mut rng = stream_rng(seed, stream);
    for attempt in 1..=ATTEMPTS_PER_MEMBER {
        let radius = rng.random_range(0.0..1.0);
        let offset = geo.support * ball_vector3(&mut rng, radius);
        let raw = Matrix3::from_fn(|_, _| rng.random_range(-1.0..1.0));
        let t = geo.support * raw;
        let s_max = geo.max_scale(&offset, &t);
        if !(s_max.is_finite() && s_max > 0.0) {
            continue;
        }
        let s = s_max * rng.random_range(0.6..=1.0);
        let c = geo.centre + offset * s;
        let t = t * s;
        let e = EllipsoidRep::from_canonical(c, t);
        let op = e.canonical_operator();
        if 256.0 * det4(&op) < -tol::CLASS {
            return (Some(Member { index, c, t, op }), attempt);
        }
    }
    (None, ATTEMPTS_PER_MEMBER)
}

fn explore_handedness(
    geo: &TargetGeometry,
    target: &EllipsoidRep,
    hand: u64,
    cfg: &ConjectureConfig,
    report: &mut ChiralityReport,
) {
    let w_star = target.canonical_operator();
    // Distinct member streams per handedness; the finer-than searches use
    // another block of streams.
    let member_stream = |i: usize| (hand << 40) | i as u64;
    let search_seed = cfg.seed ^ 0x9e37_79b9_7f4a_7c15;

    let outcomes = cfg.exec.map_indexed(cfg.n_witnesses, |i| {
        let (member, attempts) = sample_member(geo, cfg.seed, member_stream(i), i);
        let member = member.map(|m| {
            // Searches run sequentially inside an already parallel map.
            let search = FinerSearch {
                seed: search_seed.wrapping_add(member_stream(i)),
                n_pure: cfg.n_states,
                n_mixed: cfg.n_states / 10,
                sweep_angles: 256,
                exec: Execution::Sequential,
            };
            let dominated = !matches!(
                is_finer_with(&w_star, &m.op, &search),
                FinerVerdict::CounterexampleState(_)
            );
            let refuted = matches!(
                is_finer_with(&m.op, &w_star, &search),
                FinerVerdict::CounterexampleState(_)
            );
            (m, dominated, refuted)
        });
        (member, attempts)
    });

    for (member, attempts) in outcomes {
        report.attempts += attempts;
        let Some((m, dominated, refuted)) = member else {
            continue;
        };
        report.members += 1;
        if dominated {
            report.dominated_by_target += 1;
        }
        if refuted {
            report.refuted_as_finer += 1;
        } else {
            let distance = m.op.frobenius_distance(&w_star);
            if distance > SAME_WITNESS {
                let e = EllipsoidRep::from_canonical(m.c, m.t);
                report.counterexamples.push(MemberRecord {
                    index: m.index,
                    c: [m.c.x, m.c.y, m.c.z],
                    t: std::array::from_fn(|r| std::array::from_fn(|col| m.t[(r, col)])),
                    chi: e.chi,
                    distance_to_target: distance,
                });
            }
        }
    }
    report.fraction_dominated = if report.members > 0 {
        report.dominated_by_target as f64 / report.members as f64
    } else {
        0.0
    };
}
