use alloc::vec::Vec;
use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg;

pub type Point = DVector<f64>;

/// Numerical thresholds shared by every module.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Relative singular-value threshold for rank and degeneracy decisions.
    pub rank: f64,
    /// Absolute threshold for geometric membership tests.
    pub geom: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { rank: 1e-9, geom: 1e-8 }
    }
}

/// Which skeleton a configuration carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComplexKind {
    /// `(n−2)`-skeleton of the `n`-simplex: `n+1` points.
    K,
    /// `(n−2)`-skeleton of the `(n+1)`-simplex: `n+2` points.
    L,
}

impl ComplexKind {
    pub fn point_count(self, n: usize) -> usize {
        match self {
            ComplexKind::K => n + 1,
            ComplexKind::L => n + 2,
        }
    }
}

/// `n+1` labeled points in `Rⁿ`, possibly flat, such that every `n` of them
/// span an `(n−1)`-simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct Simplex {
    vertices: Vec<Point>,
}

impl Simplex {
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        Self::with_tolerances(vertices, &Tolerances::default())
    }

    pub fn with_tolerances(vertices: Vec<Point>, tol: &Tolerances) -> Result<Self> {
        let n = check_points(&vertices, 1)?;
        if n < 1 {
            return Err(Error::DimensionError { expected: 2, found: n });
        }
        // every n-subset must be affinely independent
        for skip in 0..=n {
            let face: Vec<Point> = vertices
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, p)| p.clone())
                .collect();
            let d = linalg::difference_matrix(&face, 0);
            if linalg::rank(&d, tol.rank) < n - 1 {
                return Err(Error::InvalidConfiguration("n vertices fail to span an (n-1)-simplex"));
            }
        }
        Ok(Simplex { vertices })
    }

    /// Skips validation; callers guarantee the invariants.
    pub(crate) fn from_vertices_unchecked(vertices: Vec<Point>) -> Self {
        Simplex { vertices }
    }

    pub fn from_rows(rows: &[&[f64]]) -> Result<Self> {
        Self::new(rows.iter().map(|r| DVector::from_row_slice(r)).collect())
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Point> {
        self.vertices
    }

    /// Columns `v_i − v_0`, `i = 1..=n`.
    pub fn basis(&self) -> DMatrix<f64> {
        linalg::difference_matrix(&self.vertices, 0)
    }

    pub fn signed_volume(&self) -> f64 {
        self.basis().determinant() / linalg::factorial(self.dim())
    }

    pub fn volume(&self) -> f64 {
        self.signed_volume().abs()
    }

    pub fn barycenter(&self) -> Point {
        linalg::centroid(&self.vertices)
    }

    /// Vertices of the facet opposite `v`, in index order.
    pub fn facet(&self, v: usize) -> Vec<Point> {
        without(&self.vertices, v)
    }

    pub fn edge_lengths(&self) -> Vec<f64> {
        edge_lengths(&self.vertices)
    }

    /// Whether the vertices affinely span `Rⁿ` at the rank tolerance.
    pub fn is_nondegenerate(&self, tol: &Tolerances) -> bool {
        linalg::rank(&self.basis(), tol.rank) == self.dim()
    }

    pub fn map_points(&self, f: impl Fn(&Point) -> Point) -> Simplex {
        Simplex { vertices: self.vertices.iter().map(f).collect() }
    }
}

/// An unlabeled configuration of `K` or `L` in `Rⁿ`, stored with labels.
#[derive(Debug, Clone, PartialEq)]
pub struct Configuration {
    pub kind: ComplexKind,
    pub points: Vec<Point>,
}

impl Configuration {
    /// Checks point count and coordinate dimension. Embedding is checked by
    /// [`crate::classify::classify`].
    pub fn new(kind: ComplexKind, points: Vec<Point>) -> Result<Self> {
        let extra = match kind {
            ComplexKind::K => 1,
            ComplexKind::L => 2,
        };
        let n = check_points(&points, extra)?;
        if n < 2 {
            return Err(Error::DimensionError { expected: 2, found: n });
        }
        Ok(Configuration { kind, points })
    }

    pub fn dim(&self) -> usize {
        self.points[0].len()
    }

    pub fn as_simplex(&self) -> Option<Simplex> {
        match self.kind {
            ComplexKind::K => Some(Simplex::from_vertices_unchecked(self.points.clone())),
            ComplexKind::L => None,
        }
    }

    pub fn permuted(&self, perm: &[usize]) -> Configuration {
        Configuration { kind: self.kind, points: perm.iter().map(|&i| self.points[i].clone()).collect() }
    }

    pub fn map_points(&self, f: impl Fn(&Point) -> Point) -> Configuration {
        Configuration { kind: self.kind, points: self.points.iter().map(f).collect() }
    }
}

/// Validates `dim + extra` points all of dimension `dim`; returns `dim`.
fn check_points(points: &[Point], extra: usize) -> Result<usize> {
    if points.len() <= extra {
        return Err(Error::DimensionError { expected: extra + 2, found: points.len() });
    }
    let n = points.len() - extra;
    for p in points {
        if p.len() != n {
            return Err(Error::DimensionError { expected: n, found: p.len() });
        }
        if p.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidConfiguration("non-finite coordinate"));
        }
    }
    Ok(n)
}

pub(crate) fn without(points: &[Point], skip: usize) -> Vec<Point> {
    points.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, p)| p.clone()).collect()
}

pub fn edge_lengths(points: &[Point]) -> Vec<f64> {
    let mut out = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            out.push((&points[i] - &points[j]).norm());
        }
    }
    out
}

/// `(max − min) / mean` of the pairwise distances.
pub fn relative_edge_spread(points: &[Point]) -> f64 {
    let e = edge_lengths(points);
    if e.is_empty() {
        return 0.0;
    }
    let max = e.iter().copied().fold(f64::MIN, f64::max);
    let min = e.iter().copied().fold(f64::MAX, f64::min);
    let mean = e.iter().sum::<f64>() / e.len() as f64;
    (max - min) / mean
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::regular_simplex;

    #[test]
    fn rejects_wrong_shapes() {
        let e = Simplex::from_rows(&[&[0.0, 0.0], &[1.0, 0.0]]).unwrap_err();
        assert!(matches!(e, Error::DimensionError { .. }));
        let e = Configuration::new(ComplexKind::L, regular_simplex(3)).unwrap_err();
        assert!(matches!(e, Error::DimensionError { .. }));
    }

    #[test]
    fn flat_simplex_allowed_but_coincident_vertices_rejected() {
        let flat = Simplex::from_rows(&[&[0.0, 0.0], &[1.0, 0.0], &[2.0, 0.0]]).unwrap();
        assert!(!flat.is_nondegenerate(&Tolerances::default()));
        let bad = Simplex::from_rows(&[&[0.0, 0.0], &[0.0, 0.0], &[1.0, 0.0]]);
        assert!(matches!(bad, Err(Error::InvalidConfiguration(_))));
        let ok = Simplex::from_rows(&[&[0.0, 0.0, 0.0], &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.25, 0.25, 0.0]]);
        assert!(!ok.unwrap().is_nondegenerate(&Tolerances::default()));
    }

    #[test]
    fn regular_simplex_volume() {
        let s = Simplex::new(regular_simplex(3)).unwrap();
        let expect = 1.0 / (6.0 * 2f64.sqrt());
        assert!((s.volume() - expect).abs() < 1e-14);
        assert!(relative_edge_spread(s.vertices()) < 1e-14);
    }
}
