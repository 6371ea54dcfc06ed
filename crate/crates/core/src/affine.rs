use alloc::vec::Vec;
use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg;
use crate::simplex::Point;

/// `x ↦ linear·x + translation`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineMap {
    pub linear: DMatrix<f64>,
    pub translation: DVector<f64>,
}

impl AffineMap {
    pub fn identity(n: usize) -> Self {
        AffineMap { linear: DMatrix::identity(n, n), translation: DVector::zeros(n) }
    }

    pub fn new(linear: DMatrix<f64>, translation: DVector<f64>) -> Self {
        debug_assert_eq!(linear.nrows(), translation.len());
        AffineMap { linear, translation }
    }

    pub fn dim(&self) -> usize {
        self.translation.len()
    }

    pub fn apply(&self, p: &Point) -> Point {
        &self.linear * p + &self.translation
    }

    pub fn apply_all(&self, points: &[Point]) -> Vec<Point> {
        points.iter().map(|p| self.apply(p)).collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        AffineMap {
            linear: &self.linear * &other.linear,
            translation: &self.linear * &other.translation + &self.translation,
        }
    }

    pub fn inverse(&self) -> Result<AffineMap> {
        let inv = self.linear.clone().try_inverse().ok_or(Error::RankDeficient)?;
        let translation = -(&inv * &self.translation);
        Ok(AffineMap { linear: inv, translation })
    }

    pub fn determinant(&self) -> f64 {
        self.linear.determinant()
    }

    pub fn is_orientation_preserving(&self) -> bool {
        self.determinant() > 0.0
    }
}

/// The affine frame `z ↦ f₀ + [f₁−f₀, …, f_{n−1}−f₀, ν]·z` of a face with a
/// chosen normal.
pub fn face_frame(face: &[Point], normal: &DVector<f64>) -> AffineMap {
    let mut m = linalg::difference_matrix(face, 0);
    let k = m.ncols();
    m = m.insert_column(k, 0.0);
    m.set_column(k, normal);
    AffineMap::new(m, face[0].clone())
}

/// The orientation-preserving affine map carrying `face_before` pointwise to
/// `face_after` and the unit normal offset `normal_before` to `normal_after`.
///
/// Faces are `n` points in `Rⁿ`; normals are unit vectors orthogonal to them.
pub fn induced_affine_map(
    face_before: &[Point],
    face_after: &[Point],
    normal_before: &DVector<f64>,
    normal_after: &DVector<f64>,
) -> Result<AffineMap> {
    let n = normal_before.len();
    if face_before.len() != n || face_after.len() != n || normal_after.len() != n {
        return Err(Error::DimensionError { expected: n, found: face_before.len().min(face_after.len()) });
    }
    let before = face_frame(face_before, normal_before);
    let after = face_frame(face_after, normal_after);
    if linalg::rank(&before.linear, 1e-12) < n || linalg::rank(&after.linear, 1e-12) < n {
        return Err(Error::RankDeficient);
    }
    let map = after.compose(&before.inverse()?);
    if !map.is_orientation_preserving() {
        return Err(Error::InvalidConfiguration("normals are not orientation-consistent"));
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{random_orthogonal, random_points, rng};

    fn unit_normal(face: &[Point]) -> DVector<f64> {
        linalg::cross_normal(&linalg::difference_matrix(face, 0)).normalize()
    }

    #[test]
    fn unchanged_face_gives_identity() {
        let mut g = rng(1);
        let f = random_points(&mut g, 4, 4);
        let nu = unit_normal(&f);
        let m = induced_affine_map(&f, &f, &nu, &nu).unwrap();
        assert!((m.linear - DMatrix::identity(4, 4)).norm() < 1e-10);
        assert!(m.translation.norm() < 1e-10);
    }

    #[test]
    fn rotated_face_recovers_rotation() {
        let mut g = rng(2);
        for n in 2..=5 {
            let mut q = random_orthogonal(&mut g, n);
            if q.determinant() < 0.0 {
                let mut c = q.column_mut(0);
                c *= -1.0;
            }
            let f = random_points(&mut g, n, n);
            let nu = unit_normal(&f);
            let rf: Vec<Point> = f.iter().map(|p| &q * p).collect();
            let m = induced_affine_map(&f, &rf, &nu, &(&q * &nu)).unwrap();
            assert!((&m.linear - &q).norm() < 1e-9);
            assert!(m.translation.norm() < 1e-9);
        }
    }

    #[test]
    fn composition_with_inverse_is_identity() {
        let mut g = rng(3);
        for n in 2..=6 {
            let a = random_points(&mut g, n, n);
            let b = random_points(&mut g, n, n);
            let (na, nb) = (unit_normal(&a), unit_normal(&b));
            let m = induced_affine_map(&a, &b, &na, &nb).unwrap();
            let id = m.compose(&m.inverse().unwrap());
            assert!((id.linear - DMatrix::identity(n, n)).norm() < 1e-10);
            assert!(id.translation.norm() < 1e-10);
            for (p, q) in a.iter().zip(&b) {
                assert!((m.apply(p) - q).norm() < 1e-10);
            }
            assert!(m.is_orientation_preserving());
        }
    }

    #[test]
    fn inconsistent_normals_rejected() {
        let mut g = rng(4);
        let a = random_points(&mut g, 3, 3);
        let na = unit_normal(&a);
        assert!(induced_affine_map(&a, &a, &na, &(-&na)).is_err());
    }
}
