//! Affine dependencies and Radon partitions.

use alloc::vec::Vec;
use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::simplex::{Point, Tolerances};

/// A Radon partition of `n+2` points in `Rⁿ`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadonResult {
    /// Indices with positive coefficient; the smaller side of the partition.
    pub part1: Vec<usize>,
    /// Every other index (negative or numerically zero coefficient).
    pub part2: Vec<usize>,
    /// Affine dependency `λ`: `Σλ = 0`, `Σλ·p = 0`, positive entries sum to 1.
    pub coefficients: DVector<f64>,
    /// `Σ_{λᵢ>0} λᵢ pᵢ`, a point of both convex hulls.
    pub radon_point: Point,
    /// Indices whose coefficient is zero at the geometric tolerance.
    pub zero: Vec<usize>,
}

impl RadonResult {
    pub fn negative(&self) -> Vec<usize> {
        self.part2.iter().copied().filter(|i| !self.zero.contains(i)).collect()
    }

    /// Smallest nonzero `|λᵢ|` relative to the largest; distance to a change
    /// of combinatorial type.
    pub fn margin(&self) -> f64 {
        let max = self.coefficients.amax();
        (0..self.coefficients.len())
            .filter(|i| !self.zero.contains(i))
            .map(|i| self.coefficients[i].abs() / max)
            .fold(f64::INFINITY, f64::min)
    }
}

/// Homogeneous coordinate matrix: points as columns with a row of ones.
fn homogeneous(points: &[Point]) -> DMatrix<f64> {
    let n = points[0].len();
    DMatrix::from_fn(n + 1, points.len(), |r, c| if r < n { points[c][r] } else { 1.0 })
}

/// The affine dependency among `points`, if the dependency space is exactly
/// one-dimensional. `Ok(None)` means the points are affinely independent.
pub fn affine_dependency(points: &[Point], tol: &Tolerances) -> Result<Option<DVector<f64>>> {
    crate::linalg::null_vector(&homogeneous(points), tol.rank)
}

/// Orients and normalizes a dependency into a Radon partition.
pub(crate) fn partition_from_dependency(
    points: &[Point],
    mut lambda: DVector<f64>,
    tol: &Tolerances,
) -> RadonResult {
    let max = lambda.amax();
    let zero_eps = tol.geom * max;
    let count = |l: &DVector<f64>, positive: bool| {
        l.iter().filter(|&&x| if positive { x > zero_eps } else { x < -zero_eps }).count()
    };
    let first = |l: &DVector<f64>, positive: bool| {
        l.iter().position(|&x| if positive { x > zero_eps } else { x < -zero_eps })
    };
    let (np, nn) = (count(&lambda, true), count(&lambda, false));
    // smaller side positive; ties go to the side holding the lowest index
    if np > nn || (np == nn && first(&lambda, false) < first(&lambda, true)) {
        lambda = -lambda;
    }
    let pos_sum: f64 = lambda.iter().filter(|&&x| x > zero_eps).sum();
    lambda /= pos_sum;
    let zero_eps = tol.geom * lambda.amax();
    let mut part1 = Vec::new();
    let mut part2 = Vec::new();
    let mut zero = Vec::new();
    let mut radon_point = DVector::zeros(points[0].len());
    for (i, &l) in lambda.iter().enumerate() {
        if l > zero_eps {
            part1.push(i);
            radon_point += &points[i] * l;
        } else {
            part2.push(i);
            if l >= -zero_eps {
                zero.push(i);
            }
        }
    }
    RadonResult { part1, part2, coefficients: lambda, radon_point, zero }
}

/// Radon partition of exactly `n+2` points in `Rⁿ`.
///
/// Fails with `RankDeficient` when the affine dependencies form a space of
/// dimension two or more, since the partition is then not determined.
pub fn radon_partition(points: &[Point], tol: &Tolerances) -> Result<RadonResult> {
    let n = points.first().map(|p| p.len()).unwrap_or(0);
    if points.len() != n + 2 {
        return Err(Error::DimensionError { expected: n + 2, found: points.len() });
    }
    let lambda = affine_dependency(points, tol)?.ok_or(Error::RankDeficient)?;
    Ok(partition_from_dependency(points, lambda, tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{random_points, rng};
    use alloc::vec;

    fn pts(rows: &[&[f64]]) -> Vec<Point> {
        rows.iter().map(|r| DVector::from_row_slice(r)).collect()
    }

    #[test]
    fn interior_point_of_triangle() {
        let p = pts(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0], &[0.25, 0.25]]);
        let r = radon_partition(&p, &Tolerances::default()).unwrap();
        assert_eq!(r.part1, vec![3]);
        assert_eq!(r.part2, vec![0, 1, 2]);
        assert!((&r.radon_point - DVector::from_vec(vec![0.25, 0.25])).norm() < 1e-12);
    }

    #[test]
    fn square_splits_into_diagonals() {
        let p = pts(&[&[0.0, 0.0], &[1.0, 0.0], &[1.0, 1.0], &[0.0, 1.0]]);
        let r = radon_partition(&p, &Tolerances::default()).unwrap();
        assert_eq!(r.part1, vec![0, 2]);
        assert_eq!(r.part2, vec![1, 3]);
        assert!((&r.radon_point - DVector::from_vec(vec![0.5, 0.5])).norm() < 1e-12);
    }

    #[test]
    fn dependency_identities_hold() {
        let mut g = rng(7);
        for n in 2..=5 {
            for _ in 0..50 {
                let p = random_points(&mut g, n, n + 2);
                let r = radon_partition(&p, &Tolerances::default()).unwrap();
                let l = &r.coefficients;
                assert!(l.sum().abs() < 1e-12);
                let mut s = DVector::zeros(n);
                for (i, pi) in p.iter().enumerate() {
                    s += pi * l[i];
                }
                assert!(s.norm() < 1e-10);
                assert!(r.part1.len() <= r.part2.len());
                // the Radon point is also a convex combination of the other side
                let neg: f64 = r.part2.iter().map(|&i| -l[i]).sum();
                let mut q = DVector::zeros(n);
                for &i in &r.part2 {
                    q += &p[i] * (-l[i] / neg);
                }
                assert!((q - &r.radon_point).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn ambiguous_partition_is_rank_deficient() {
        // four collinear points in the plane: two independent dependencies
        let p = pts(&[&[0.0, 0.0], &[1.0, 0.0], &[2.0, 0.0], &[3.0, 0.0]]);
        assert_eq!(radon_partition(&p, &Tolerances::default()), Err(Error::RankDeficient));
        assert!(matches!(
            radon_partition(&p[..3], &Tolerances::default()),
            Err(Error::DimensionError { .. })
        ));
    }
}
