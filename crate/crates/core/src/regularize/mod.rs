//! Löwdin orthogonalization and the label-equivariant regularization of
//! simplices built on it.
//!
//! A simplex with a base vertex at the origin is the matrix `x` of its other
//! vertices. `Φ_t` moves `x` in a straight line to its nearest orthogonal
//! matrix; conjugating by the regular basis `A` gives `Ω_t`, which commutes
//! with the relabeling matrices `B_i` and so acts on unlabeled simplices.

pub mod bimedian;
pub mod flow;

use alloc::vec::Vec;
use nalgebra::{DMatrix, DVector};
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg;
use crate::simplex::Point;

pub use bimedian::{bimedian_basis, regularize_bimedian, tetra_from_bimedian, BimedianBasis};
pub use flow::{inradius_flow, inradius_flow_with, irregularity_potential, FlowOptions, FlowResult};

/// Relative eigenvalue floor for `(xᵀx)^{−1/2}`.
pub const EIGEN_FLOOR: f64 = 1e-14;

/// `Φ_t(x) = (1−t)x + t·x(xᵀx)^{−1/2}`.
pub fn phi(x: &DMatrix<f64>, t: f64) -> Result<DMatrix<f64>> {
    if !x.is_square() {
        return Err(Error::DimensionError { expected: x.nrows(), found: x.ncols() });
    }
    Ok(x * (1.0 - t) + polar_factor(x)? * t)
}

/// `x(xᵀx)^{−1/2}`, computed as `UVᵀ` from `x = UΣVᵀ`. The eigenvalues of
/// `xᵀx` are `σ²`; the floor applies to them relative to the largest.
pub fn polar_factor(x: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let svd = x.clone().svd(true, true);
    let s = &svd.singular_values;
    let top = s.max();
    if !(top > 0.0) || s.iter().any(|&v| (v / top).powi(2) <= EIGEN_FLOOR) {
        return Err(Error::SingularInput);
    }
    match (svd.u, svd.v_t) {
        (Some(u), Some(v_t)) => Ok(u * v_t),
        _ => Err(Error::SingularInput),
    }
}

/// `(μ, ν)`: diagonal and off-diagonal entries of `A`.
pub fn mu_nu(n: usize) -> (f64, f64) {
    let nf = n as f64;
    let root = (nf + 1.0).sqrt();
    let denom = 2f64.sqrt() * nf;
    ((nf + root - 1.0) / denom, (root - 1.0) / denom)
}

/// Symmetric matrix whose columns, with the origin, span a regular simplex
/// with unit edges.
pub fn standard_a(n: usize) -> DMatrix<f64> {
    let (mu, nu) = mu_nu(n);
    DMatrix::from_fn(n, n, |r, c| if r == c { mu } else { nu })
}

/// The identity with row `i` (1-based) replaced by `−1`s. Right
/// multiplication re-expresses a simplex basis from vertex `i`.
pub fn basis_swap_b(n: usize, i: usize) -> DMatrix<f64> {
    assert!((1..=n).contains(&i), "basis index {i} out of 1..={n}");
    DMatrix::from_fn(n, n, |r, c| if r == i - 1 { -1.0 } else if r == c { 1.0 } else { 0.0 })
}

/// `Ω_t(x) = Φ_t(xA^{−1})·A`.
pub fn omega(x: &DMatrix<f64>, t: f64) -> Result<DMatrix<f64>> {
    let n = x.nrows();
    let a = standard_a(n);
    let a_inv = a.clone().try_inverse().ok_or(Error::SingularInput)?;
    Ok(phi(&(x * a_inv), t)? * a)
}

/// `Ω_t` on a labeled vertex list, based at vertex 0 and translated so the
/// centroid stays put. Independent of the base vertex by equivariance.
pub fn omega_points(points: &[Point], t: f64) -> Result<Vec<Point>> {
    let n = points[0].len();
    if points.len() != n + 1 {
        return Err(Error::DimensionError { expected: n + 1, found: points.len() });
    }
    let y = omega(&linalg::difference_matrix(points, 0), t)?;
    Ok(recenter(&from_basis(&y), &linalg::centroid(points)))
}

/// Vertices `0, y₁, …, yₙ` from a basis matrix.
pub fn from_basis(y: &DMatrix<f64>) -> Vec<Point> {
    let mut out = Vec::with_capacity(y.ncols() + 1);
    out.push(DVector::zeros(y.nrows()));
    out.extend(y.column_iter().map(|c| c.into_owned()));
    out
}

/// Translates `points` so that their centroid is `center`.
pub fn recenter(points: &[Point], center: &Point) -> Vec<Point> {
    let shift = center - linalg::centroid(points);
    points.iter().map(|p| p + &shift).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{max_dist, random_matrix, random_orthogonal, rng};
    use proptest::prelude::*;
    use rand::Rng;

    #[test]
    fn diagonal_closed_form() {
        let x = DMatrix::from_diagonal(&DVector::from_vec(alloc::vec![2.0, 1.0]));
        let y = phi(&x, 0.5).unwrap();
        let expect = DMatrix::from_diagonal(&DVector::from_vec(alloc::vec![1.5, 1.0]));
        assert!((y - expect).norm() < 1e-14);
    }

    #[test]
    fn orthogonal_matrices_are_fixed() {
        let mut g = rng(1);
        for n in 2..=6 {
            let q = random_orthogonal(&mut g, n);
            for t in [0.0, 0.3, 1.0] {
                assert!((phi(&q, t).unwrap() - &q).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn mu_nu_for_three() {
        let (mu, nu) = mu_nu(3);
        assert!((mu - 4.0 / (3.0 * 2f64.sqrt())).abs() < 1e-15);
        assert!((nu - 1.0 / (3.0 * 2f64.sqrt())).abs() < 1e-15);
        assert!((mu * mu + 2.0 * nu * nu - 1.0).abs() < 1e-15);
    }

    #[test]
    fn swap_matrices() {
        for n in 2..=6 {
            let a = standard_a(n);
            let a_inv = a.clone().try_inverse().unwrap();
            for i in 1..=n {
                let b = basis_swap_b(n, i);
                assert!((&b * &b - DMatrix::identity(n, n)).norm() < 1e-14);
                let q = &a * &b * &a_inv;
                assert!((q.transpose() * &q - DMatrix::identity(n, n)).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn singular_input() {
        let x = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 4.0]);
        assert_eq!(phi(&x, 0.5), Err(Error::SingularInput));
    }

    #[test]
    fn phi_endpoint_is_closest_orthogonal() {
        let mut g = rng(2);
        for _ in 0..20 {
            let n = g.gen_range(2..=5);
            let x = random_matrix(&mut g, n);
            let d = (phi(&x, 1.0).unwrap() - &x).norm();
            for _ in 0..100 {
                let y = random_orthogonal(&mut g, n);
                assert!(d <= (y - &x).norm() + 1e-9);
            }
        }
    }

    #[test]
    fn omega_descends_to_unlabeled_simplices() {
        let mut g = rng(3);
        for n in 2..=5 {
            let x = random_matrix(&mut g, n);
            let i = g.gen_range(1..=n);
            let b = basis_swap_b(n, i);
            let t: f64 = g.gen();
            let p = from_basis(&omega(&x, t).unwrap());
            let q = from_basis(&omega(&(&x * &b), t).unwrap());
            // basis at vertex i: shift so vertex i is back at the origin
            let shifted: Vec<Point> = p.iter().map(|v| v - &p[i]).collect();
            let mut matched = 0;
            for v in &q {
                if shifted.iter().any(|w| (v - w).norm() < 1e-8) {
                    matched += 1;
                }
            }
            assert_eq!(matched, n + 1);
        }
    }

    proptest! {
        #[test]
        fn phi_right_equivariant(seed in any::<u64>(), n in 2usize..=6, t in 0.0f64..=1.0) {
            let mut g = rng(seed);
            let x = random_matrix(&mut g, n);
            let q = random_orthogonal(&mut g, n);
            let lhs = phi(&(&x * &q), t).unwrap();
            let rhs = phi(&x, t).unwrap() * &q;
            prop_assert!((lhs - rhs).norm() <= 1e-9 * x.norm());
        }

        #[test]
        fn omega_label_equivariant_and_regular(seed in any::<u64>(), n in 2usize..=6, t in 0.0f64..=1.0) {
            let mut g = rng(seed);
            let x = random_matrix(&mut g, n);
            let i = g.gen_range(1..=n);
            let b = basis_swap_b(n, i);
            let lhs = omega(&(&x * &b), t).unwrap();
            let rhs = omega(&x, t).unwrap() * &b;
            prop_assert!((lhs - rhs).norm() <= 1e-9 * x.norm().max(1.0));
            let end = from_basis(&omega(&x, 1.0).unwrap());
            prop_assert!(crate::simplex::relative_edge_spread(&end) < 1e-8);
            let same = omega_points(&end, t).unwrap();
            prop_assert!(max_dist(&same, &end) < 1e-9);
        }
    }
}
