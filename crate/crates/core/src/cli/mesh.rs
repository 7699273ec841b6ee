//! Triangle meshes of ellipsoids for external viewers.

use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use super::CliError;
use crate::classification::{classify_by_determinants, Class};
use crate::ellipsoid::{ellipsoid_of, semiaxes, EllipsoidRep};
use crate::pauli::TwoQubitOperator;

/// Semiaxes shorter than this are collapsed.
const FLAT_AXIS: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Primitive {
    Surface,
    Disc,
    Segment,
    Point,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Mesh {
    pub vertices: Vec<[f64; 3]>,
    pub faces: Vec<[usize; 3]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub edges: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeshMeta {
    pub class: Class,
    pub chi: i8,
    pub c: [f64; 3],
    pub semiaxes: [f64; 3],
    pub primitive: Primitive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeshDocument {
    pub vertices: Vec<[f64; 3]>,
    pub faces: Vec<[usize; 3]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub edges: Vec<[usize; 2]>,
    pub meta: MeshMeta,
    pub bloch_sphere: Mesh,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Resolution {
    pub n_lon: usize,
    pub n_lat: usize,
}

impl Default for Resolution {
    fn default() -> Self {
        Self {
            n_lon: 64,
            n_lat: 32,
        }
    }
}

impl Resolution {
    fn clamped(self) -> Self {
        Self {
            n_lon: self.n_lon.max(3),
            n_lat: self.n_lat.max(2),
        }
    }
}

/// Unit UV sphere with outward-facing triangles: a vertex at each pole and
/// `n_lat - 1` rings of `n_lon` vertices.
pub fn uv_sphere(res: Resolution) -> Mesh {
    let Resolution { n_lon, n_lat } = res.clamped();
    let mut vertices = vec![[0.0, 0.0, 1.0]];
    for i in 1..n_lat {
        let theta = PI * i as f64 / n_lat as f64;
        for j in 0..n_lon {
            let phi = TAU * j as f64 / n_lon as f64;
            vertices.push([
                theta.sin() * phi.cos(),
                theta.sin() * phi.sin(),
                theta.cos(),
            ]);
        }
    }
    let south = vertices.len();
    vertices.push([0.0, 0.0, -1.0]);

    let ring = |i: usize, j: usize| 1 + (i - 1) * n_lon + j % n_lon;
    let mut faces = Vec::new();
    for j in 0..n_lon {
        faces.push([0, ring(1, j), ring(1, j + 1)]);
    }
    for i in 1..n_lat - 1 {
        for j in 0..n_lon {
            let (a, b, c, d) = (
                ring(i, j),
                ring(i, j + 1),
                ring(i + 1, j),
                ring(i + 1, j + 1),
            );
            faces.push([a, c, d]);
            faces.push([a, d, b]);
        }
    }
    for j in 0..n_lon {
        faces.push([ring(n_lat - 1, j), south, ring(n_lat - 1, j + 1)]);
    }
    Mesh {
        vertices,
        faces,
        edges: Vec::new(),
    }
}

fn to_array(v: Vector3<f64>) -> [f64; 3] {
    [v.x, v.y, v.z]
}

/// Mesh of `{c + t_tilde nu : |nu| = 1}`, collapsed to a disc, segment or
/// point when `Q` loses rank.
pub fn ellipsoid_mesh(e: &EllipsoidRep, res: Resolution) -> (Mesh, Primitive) {
    let res = res.clamped();
    let axes = semiaxes(e);
    let rank = axes.iter().filter(|a| a.length > FLAT_AXIS).count();
    let axis = |k: usize| Vector3::from(axes[k].direction) * axes[k].length;
    match rank {
        3 => {
            let mut m = uv_sphere(res);
            for v in &mut m.vertices {
                *v = to_array(e.c + e.t_tilde * Vector3::from(*v));
            }
            if e.det_t_tilde < 0.0 {
                for f in &mut m.faces {
                    f.swap(1, 2);
                }
            }
            (m, Primitive::Surface)
        }
        2 => (disc(e.c, axis(0), axis(1), res), Primitive::Disc),
        1 => {
            let n = res.n_lat;
            let vertices = (0..=n)
                .map(|k| to_array(e.c + axis(0) * (2.0 * k as f64 / n as f64 - 1.0)))
                .collect();
            let edges = (0..n).map(|k| [k, k + 1]).collect();
            (
                Mesh {
                    vertices,
                    faces: Vec::new(),
                    edges,
                },
                Primitive::Segment,
            )
        }
        _ => (point(e.c), Primitive::Point),
    }
}

fn point(c: Vector3<f64>) -> Mesh {
    Mesh {
        vertices: vec![to_array(c)],
        ..Mesh::default()
    }
}

/// Filled ellipse `c + rho (cos(phi) u + sin(phi) v)`, `rho` in `[0, 1]`.
fn disc(c: Vector3<f64>, u: Vector3<f64>, v: Vector3<f64>, res: Resolution) -> Mesh {
    let n_rings = (res.n_lat / 2).max(1);
    let n_lon = res.n_lon;
    let mut vertices = vec![to_array(c)];
    for k in 1..=n_rings {
        let rho = k as f64 / n_rings as f64;
        for j in 0..n_lon {
            let phi = TAU * j as f64 / n_lon as f64;
            vertices.push(to_array(c + (u * phi.cos() + v * phi.sin()) * rho));
        }
    }
    let ring = |k: usize, j: usize| 1 + (k - 1) * n_lon + j % n_lon;
    let mut faces = Vec::new();
    for j in 0..n_lon {
        faces.push([0, ring(1, j), ring(1, j + 1)]);
    }
    for k in 1..n_rings {
        for j in 0..n_lon {
            let (a, b, c, d) = (
                ring(k, j),
                ring(k, j + 1),
                ring(k + 1, j),
                ring(k + 1, j + 1),
            );
            faces.push([a, c, d]);
            faces.push([a, d, b]);
        }
    }
    Mesh {
        vertices,
        faces,
        edges: Vec::new(),
    }
}

/// Mesh document for an operator. Operators whose ellipsoid collapses to
/// Alice's Bloch vector (`|b| = 1`) need `allow_point`.
pub fn mesh_document(
    op: &TwoQubitOperator,
    res: Resolution,
    allow_point: bool,
) -> Result<MeshDocument, CliError> {
    let e = ellipsoid_of(op);
    if e.unbounded {
        return Err(CliError::validation(
            "Bob's marginal is not positive; no bounded ellipsoid exists",
        ));
    }
    let (mesh, primitive) = if e.singular_b {
        if !allow_point {
            return Err(CliError::validation(
                "Bob's marginal is singular; the ellipsoid is a single point (pass --allow-point)",
            ));
        }
        (point(e.c), Primitive::Point)
    } else {
        ellipsoid_mesh(&e, res)
    };
    let axes = semiaxes(&e);
    Ok(MeshDocument {
        vertices: mesh.vertices,
        faces: mesh.faces,
        edges: mesh.edges,
        meta: MeshMeta {
            class: classify_by_determinants(op).class,
            chi: e.chi,
            c: to_array(e.c),
            semiaxes: [axes[0].length, axes[1].length, axes[2].length],
            primitive,
        },
        bloch_sphere: uv_sphere(res),
    })
}

impl MeshDocument {
    /// Wavefront OBJ with objects `ellipsoid` and `bloch_sphere`.
    pub fn to_obj(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "# {:?} chi={} primitive={:?}",
            self.meta.class, self.meta.chi, self.meta.primitive
        );
        let _ = writeln!(s, "o ellipsoid");
        for v in &self.vertices {
            let _ = writeln!(s, "v {} {} {}", v[0], v[1], v[2]);
        }
        for f in &self.faces {
            let _ = writeln!(s, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1);
        }
        for e in &self.edges {
            let _ = writeln!(s, "l {} {}", e[0] + 1, e[1] + 1);
        }
        if self.meta.primitive == Primitive::Point {
            let _ = writeln!(s, "p 1");
        }
        let base = self.vertices.len() + 1;
        let _ = writeln!(s, "o bloch_sphere");
        for v in &self.bloch_sphere.vertices {
            let _ = writeln!(s, "v {} {} {}", v[0], v[1], v[2]);
        }
        for f in &self.bloch_sphere.faces {
            let _ = writeln!(s, "f {} {} {}", f[0] + base, f[1] + base, f[2] + base);
        }
        s
    }
}
