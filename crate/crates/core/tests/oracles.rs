//! Main-path results against the independent oracles.

use bloch_ellipsoid::ellipsoid::{ellipsoid_of, max_radius};
use bloch_ellipsoid::oracle::{
    brute_max_radius, charpoly_eigenvalues, leibniz_det4, min_product_expectation,
};
use bloch_ellipsoid::pauli::{decompose, det4, eigenvalues4};
use bloch_ellipsoid::sampling::{mixed_operator, stream_rng, unit_vector3, OperatorFamily};
use bloch_ellipsoid::sphere::max_norm_on_sphere;
use nalgebra::Matrix3;

const SEED: u64 = 0x0dd5;

#[test]
fn lu_determinant_matches_leibniz() {
    for i in 0..2000 {
        let (_, r) = mixed_operator(&mut stream_rng(SEED, i));
        let (lu, leibniz) = (det4(&r), leibniz_det4(&r));
        assert!(
            (lu - leibniz).abs() <= 1e-12 * (1.0 + leibniz.abs()),
            "{i}: {lu} vs {leibniz}"
        );
    }
}

#[test]
fn jacobi_matches_characteristic_polynomial() {
    let mut worst = 0.0f64;
    for i in 0..2000 {
        let (_, r) = mixed_operator(&mut stream_rng(SEED + 1, i));
        let jacobi = eigenvalues4(&r).unwrap();
        let roots = charpoly_eigenvalues(&r);
        let gap = jacobi
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(f64::INFINITY, f64::min);
        if gap < 1e-3 {
            continue;
        }
        for k in 0..4 {
            worst = worst.max((jacobi[k] - roots[k]).abs());
        }
    }
    assert!(worst < 1e-9, "largest eigenvalue mismatch {worst:e}");
}

/// Bob's projection onto `nu` steers Alice to `(a + T nu) / (1 + b.nu)`,
/// which must lie on the ellipsoid surface.
#[test]
fn steered_vectors_lie_on_the_surface() {
    for i in 0..500 {
        let mut rng = stream_rng(SEED + 2, i);
        let r = OperatorFamily::PauliCloud.sample(&mut rng);
        let p = decompose(&r);
        let e = ellipsoid_of(&r);
        let Some(q_inv) = e.q.try_inverse() else {
            continue;
        };
        if e.q.determinant().abs() < 1e-6 {
            continue;
        }
        for _ in 0..20 {
            let nu = unit_vector3(&mut rng);
            let x = (p.a + p.t * nu) / (1.0 + p.b.dot(&nu));
            let d = x - e.c;
            let level = d.dot(&(q_inv * d));
            assert!((level - 1.0).abs() < 1e-8, "{i}: level {level}");
        }
    }
}

#[test]
fn secular_radius_matches_brute_force() {
    for i in 0..300 {
        let mut rng = stream_rng(SEED + 3, i);
        let r = OperatorFamily::PauliCloud.sample(&mut rng);
        let e = ellipsoid_of(&r);
        let (fast, slow) = (max_radius(&e), brute_max_radius(&e, 4000, 200));
        assert!(slow <= fast + 1e-12, "{i}: brute {slow} above {fast}");
        assert!(fast - slow < 1e-7, "{i}: {fast} vs {slow}");
    }
}

#[test]
fn radius_of_a_centred_ellipsoid_is_its_longest_semiaxis() {
    for i in 0..200 {
        let mut rng = stream_rng(SEED + 4, i);
        let t = Matrix3::from_fn(|_, _| rand::Rng::random_range(&mut rng, -1.0..1.0));
        let want = t.singular_values().max();
        let got = max_norm_on_sphere(&nalgebra::Vector3::zeros(), &t).value;
        assert!((got - want).abs() < 1e-12, "{got} vs {want}");
    }
}

#[test]
fn product_minimum_is_attained_by_a_product_state() {
    use bloch_ellipsoid::sampling::product_ket;
    for i in 0..100 {
        let (_, r) = mixed_operator(&mut stream_rng(SEED + 5, i));
        let m = min_product_expectation(&r, 16, i);
        let direct = r.expectation(&product_ket(&m.phi, &m.nu));
        assert!((direct - m.min_value).abs() < 1e-12);
        let mut rng = stream_rng(SEED + 6, i);
        for _ in 0..50 {
            let (phi, nu) = (unit_vector3(&mut rng), unit_vector3(&mut rng));
            assert!(r.expectation(&product_ket(&phi, &nu)) >= m.min_value - 1e-12);
        }
    }
}
