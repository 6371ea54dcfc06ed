//! Faces of codimension one: frames, in-plane regularization, and the pivot
//! path that stands a vertex up over a face's centroid.

use alloc::vec::Vec;
use nalgebra::DVector;
#[allow(unused_imports)]
use num_traits::Float;

use crate::affine::{face_frame, induced_affine_map, AffineMap};
use crate::error::Result;
use crate::linalg;
use crate::regularize::omega_points;
use crate::simplex::Point;

/// Height of the regular `n`-simplex with unit edges: `√((n+1)/(2n))`.
pub fn regular_height(n: usize) -> f64 {
    let n = n as f64;
    ((n + 1.0) / (2.0 * n)).sqrt()
}

/// Unit normal of the hyperplane through `face` (`n` points in `Rⁿ`),
/// oriented by the vertex order.
pub fn unit_normal(face: &[Point]) -> DVector<f64> {
    linalg::cross_normal(&linalg::difference_matrix(face, 0)).normalize()
}

/// Unit normal on the side of `toward`, or the order-oriented normal when
/// `toward` lies in the hyperplane.
pub fn normal_toward(face: &[Point], toward: &Point) -> DVector<f64> {
    let nu = unit_normal(face);
    if (toward - &face[0]).dot(&nu) < 0.0 {
        -nu
    } else {
        nu
    }
}

/// The frame `z ↦ f₀ + [f₁−f₀, …, f_{n−1}−f₀, ν]·z` of a face with normal `ν`.
/// Affine coordinates in this frame are independent of how the face is
/// placed, so they transfer points between faces.
#[derive(Debug, Clone)]
pub struct FaceFrame {
    pub map: AffineMap,
    inverse: AffineMap,
}

impl FaceFrame {
    pub fn new(face: &[Point], normal: &DVector<f64>) -> Result<Self> {
        let map = face_frame(face, normal);
        let inverse = map.inverse()?;
        Ok(FaceFrame { map, inverse })
    }

    pub fn coords(&self, p: &Point) -> DVector<f64> {
        self.inverse.apply(p)
    }

    pub fn point(&self, z: &DVector<f64>) -> Point {
        self.map.apply(z)
    }
}

/// Frame coordinates of a face's centroid: `1/n` in every in-face slot.
pub fn centroid_coords(n: usize) -> DVector<f64> {
    let mut z = DVector::from_element(n, 1.0 / n as f64);
    z[n - 1] = 0.0;
    z
}

/// The map that regularizes `face` within its hyperplane by the
/// `(n−1)`-dimensional `Ω_τ` and is the identity perpendicular to it.
pub fn regularize_face_map(face: &[Point], tau: f64) -> Result<AffineMap> {
    let n = face[0].len();
    let u = linalg::orthonormal_columns(&linalg::difference_matrix(face, 0));
    let local: Vec<Point> = face.iter().map(|w| u.transpose() * (w - &face[0])).collect();
    let moved = omega_points(&local, tau)?;
    let after: Vec<Point> = moved.iter().map(|c| &face[0] + &u * c).collect();
    let nu = unit_normal(face);
    debug_assert_eq!(nu.len(), n);
    induced_affine_map(face, &after, &nu, &nu)
}

/// Path that turns the segment from `center` to `start` onto the normal `nu`
/// while its length goes linearly to `target`:
/// `center + L(τ)·e(τ)`, `L = (1−τ)|start−center| + τ·target`,
/// `e = normalize((1−τ)e₀ + τν)`.
///
/// Requires `start` strictly on the `nu` side of the face.
#[derive(Debug, Clone)]
pub struct PivotPath {
    center: Point,
    e0: DVector<f64>,
    nu: DVector<f64>,
    length: f64,
    target: f64,
}

impl PivotPath {
    pub fn new(center: &Point, start: &Point, nu: &DVector<f64>, target: f64) -> Self {
        let off = start - center;
        let length = off.norm();
        PivotPath { center: center.clone(), e0: off / length, nu: nu.clone(), length, target }
    }

    pub fn length(&self, tau: f64) -> f64 {
        (1.0 - tau) * self.length + tau * self.target
    }

    pub fn direction(&self, tau: f64) -> DVector<f64> {
        (&self.e0 * (1.0 - tau) + &self.nu * tau).normalize()
    }

    /// Offset from the center at time `τ`.
    pub fn offset(&self, tau: f64) -> DVector<f64> {
        self.direction(tau) * self.length(tau)
    }

    pub fn at(&self, tau: f64) -> Point {
        &self.center + self.offset(tau)
    }
}
