//! Facet volumes, insphere data and the altitude quantities of a vertex over
//! its opposite face.

use alloc::vec::Vec;
use nalgebra::DVector;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg;
use crate::simplex::{without, Point, Simplex};

/// `(n−1)`-volume of the facet opposite each vertex.
pub fn facet_volumes(points: &[Point]) -> Vec<f64> {
    (0..points.len()).map(|i| linalg::simplex_volume(&without(points, i))).collect()
}

/// `Vol(∂x)`.
pub fn boundary_volume(points: &[Point]) -> f64 {
    facet_volumes(points).iter().sum()
}

/// Incenter and inradius. The center is the facet-volume-weighted average of
/// the vertices and `r = n·Vol/Vol(∂x)`.
pub fn incenter_inradius(s: &Simplex) -> Result<(Point, f64)> {
    let n = s.dim();
    let vol = s.volume();
    let scale = mean_edge(s.vertices());
    if !(vol > 1e-12 * scale.powi(n as i32)) {
        return Err(Error::DegenerateSimplex);
    }
    let f = facet_volumes(s.vertices());
    let total: f64 = f.iter().sum();
    let mut c = DVector::zeros(n);
    for (p, w) in s.vertices().iter().zip(&f) {
        c += p * (*w / total);
    }
    Ok((c, n as f64 * vol / total))
}

/// Incenter of an `(m−1)`-simplex given by `m` points, inside its own affine
/// hull. Two points give the midpoint.
pub fn face_incenter(face: &[Point]) -> Point {
    let w: Vec<f64> = (0..face.len()).map(|i| linalg::simplex_volume(&without(face, i))).collect();
    let total: f64 = w.iter().sum();
    let mut c = DVector::zeros(face[0].len());
    for (p, wi) in face.iter().zip(&w) {
        c += p * (*wi / total);
    }
    c
}

/// Unit normal of the facet opposite `i`, pointing away from vertex `i`.
pub fn outward_normal(points: &[Point], i: usize) -> DVector<f64> {
    let f = without(points, i);
    let nu = linalg::cross_normal(&linalg::difference_matrix(&f, 0)).normalize();
    if (&points[i] - &f[0]).dot(&nu) > 0.0 {
        -nu
    } else {
        nu
    }
}

/// Unsigned distance from `p` to the hyperplane of the facet opposite `i`.
pub fn facet_distance(points: &[Point], i: usize, p: &Point) -> f64 {
    let f0 = if i == 0 { &points[1] } else { &points[0] };
    (p - f0).dot(&outward_normal(points, i)).abs()
}

/// Orthogonal projection of `p` onto the affine hull of `face`, with its
/// barycentric coordinates.
pub fn project_to_hull(face: &[Point], p: &Point) -> (Point, Vec<f64>) {
    if face.len() == 1 {
        return (face[0].clone(), alloc::vec![1.0]);
    }
    let d = linalg::difference_matrix(face, 0);
    let rhs = d.transpose() * (p - &face[0]);
    let gram = d.transpose() * &d;
    let c = gram.lu().solve(&rhs).unwrap_or_else(|| DVector::zeros(rhs.len()));
    let proj = &face[0] + &d * &c;
    let mut bary = Vec::with_capacity(face.len());
    bary.push(1.0 - c.sum());
    bary.extend(c.iter().copied());
    (proj, bary)
}

pub fn mean_edge(points: &[Point]) -> f64 {
    let e = crate::simplex::edge_lengths(points);
    e.iter().sum::<f64>() / e.len() as f64
}

/// Largest distance, over vertices `v`, between the foot of `v` on the
/// opposite facet and that facet's incenter, divided by the mean edge length.
pub fn vertex_over_incenter_residual(points: &[Point]) -> f64 {
    let scale = mean_edge(points);
    (0..points.len())
        .map(|v| {
            let f = without(points, v);
            let (foot, _) = project_to_hull(&f, &points[v]);
            (foot - face_incenter(&f)).norm() / scale
        })
        .fold(0.0, f64::max)
}

/// A vertex `v` over its opposite face `f_v`, described in the face.
#[derive(Debug, Clone, PartialEq)]
pub struct ApexData {
    /// Height of `v` above the hyperplane of `f_v`.
    pub height: f64,
    /// Signed distance from the foot of `v` to each `(n−2)`-face `g_i` of
    /// `f_v`, positive on the side of `f_v`'s `i`-th vertex.
    pub a: Vec<f64>,
    /// Altitude of the `i`-th vertex of `f_v` within `f_v`.
    pub altitudes: Vec<f64>,
    /// `Vol(g_i)`.
    pub g_volumes: Vec<f64>,
    /// `Vol(f_v)`.
    pub face_volume: f64,
}

pub fn apex_data(points: &[Point], v: usize) -> ApexData {
    let f = without(points, v);
    let (foot, bary) = project_to_hull(&f, &points[v]);
    let height = (&points[v] - &foot).norm();
    let mut altitudes = Vec::with_capacity(f.len());
    let mut g_volumes = Vec::with_capacity(f.len());
    for i in 0..f.len() {
        let g = without(&f, i);
        let (q, _) = project_to_hull(&g, &f[i]);
        altitudes.push((&f[i] - q).norm());
        g_volumes.push(linalg::simplex_volume(&g));
    }
    let a = bary.iter().zip(&altitudes).map(|(b, h)| b * h).collect();
    ApexData { height, a, altitudes, g_volumes, face_volume: linalg::simplex_volume(&f) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{random_points, regular_simplex, rng};

    #[test]
    fn regular_tetrahedron_inradius() {
        let s = Simplex::new(regular_simplex(3)).unwrap();
        let (c, r) = incenter_inradius(&s).unwrap();
        assert!((r - 1.0 / (2.0 * 6f64.sqrt())).abs() < 1e-14);
        assert!((c - s.barycenter()).norm() < 1e-14);
        assert!((boundary_volume(s.vertices()) - 3f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn incenter_is_equidistant_and_scales() {
        let mut g = rng(6);
        for n in 2..=5 {
            for _ in 0..20 {
                let s = Simplex::new(random_points(&mut g, n, n + 1)).unwrap();
                let (c, r) = incenter_inradius(&s).unwrap();
                for i in 0..=n {
                    assert!((facet_distance(s.vertices(), i, &c) - r).abs() < 1e-9);
                }
                let k = 2.5;
                let (_, rk) = incenter_inradius(&s.map_points(|p| p * k)).unwrap();
                assert!((rk - k * r).abs() < 1e-9 * k);
            }
        }
    }

    #[test]
    fn altitude_volume_identity() {
        let mut g = rng(7);
        for n in 2..=5 {
            for _ in 0..20 {
                let p = random_points(&mut g, n, n + 1);
                let d = apex_data(&p, 0);
                for i in 0..n {
                    let lhs = d.altitudes[i] * d.g_volumes[i];
                    assert!((lhs - (n as f64 - 1.0) * d.face_volume).abs() < 1e-8 * lhs.max(1.0));
                }
                let s: f64 = d.a.iter().zip(&d.altitudes).map(|(a, h)| a / h).sum();
                assert!((s - 1.0).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn regular_simplex_has_zero_residual() {
        for n in 2..=6 {
            assert!(vertex_over_incenter_residual(&regular_simplex(n)) < 1e-12);
        }
        let mut g = rng(8);
        assert!(vertex_over_incenter_residual(&random_points(&mut g, 3, 4)) > 1e-3);
    }

    #[test]
    fn degenerate_simplex_has_no_insphere() {
        let s = Simplex::from_rows(&[&[0.0, 0.0], &[1.0, 0.0], &[2.0, 0.0]]).unwrap();
        assert_eq!(incenter_inradius(&s), Err(Error::DegenerateSimplex));
    }
}
