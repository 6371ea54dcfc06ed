//! Small dense linear-algebra helpers on top of `nalgebra`'s dynamic types.

use alloc::vec::Vec;
use nalgebra::{DMatrix, DVector};
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// Matrix whose columns are `points[i] - points[base]` for every `i != base`,
/// in index order.
pub fn difference_matrix(points: &[DVector<f64>], base: usize) -> DMatrix<f64> {
    let dim = points[base].len();
    let cols: Vec<DVector<f64>> = points
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != base)
        .map(|(_, p)| p - &points[base])
        .collect();
    if cols.is_empty() {
        return DMatrix::zeros(dim, 0);
    }
    DMatrix::from_columns(&cols)
}

pub fn centroid(points: &[DVector<f64>]) -> DVector<f64> {
    let mut c = DVector::zeros(points[0].len());
    for p in points {
        c += p;
    }
    c / points.len() as f64
}

/// Singular values, sorted descending.
pub fn singular_values(m: &DMatrix<f64>) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.partial_cmp(a).unwrap_or(core::cmp::Ordering::Equal));
    s
}

/// Numerical rank with a tolerance relative to the largest singular value.
pub fn rank(m: &DMatrix<f64>, rel_eps: f64) -> usize {
    let s = singular_values(m);
    match s.first() {
        None => 0,
        Some(&top) if top == 0.0 => 0,
        Some(&top) => s.iter().filter(|&&v| v > rel_eps * top).count(),
    }
}

/// Ratio of smallest to largest singular value (0 for an empty or zero matrix).
pub fn conditioning(m: &DMatrix<f64>) -> f64 {
    let s = singular_values(m);
    match (s.first(), s.last()) {
        (Some(&hi), Some(&lo)) if hi > 0.0 => lo / hi,
        _ => 0.0,
    }
}

/// The one-dimensional right nullspace of `m`, if it has one.
///
/// Returns `Ok(None)` for full column rank, `Err(RankDeficient)` when the
/// nullspace has dimension two or more. The vector is unit-norm; its sign is
/// whatever the factorization produced.
pub fn null_vector(m: &DMatrix<f64>, rel_eps: f64) -> Result<Option<DVector<f64>>> {
    let (r, c) = m.shape();
    // pad with zero rows so that V carries a full basis of R^c
    let mut tall = DMatrix::zeros(r.max(c), c);
    tall.view_mut((0, 0), (r, c)).copy_from(m);
    let svd = tall.svd(false, true);
    let v_t = svd.v_t.ok_or(Error::RankDeficient)?;
    let sv = &svd.singular_values;
    let top = sv.iter().copied().fold(0.0_f64, f64::max);
    if top == 0.0 {
        return Err(Error::RankDeficient);
    }
    let null_idx: Vec<usize> = (0..sv.len()).filter(|&i| sv[i] <= rel_eps * top).collect();
    match null_idx.len() {
        0 => Ok(None),
        1 => {
            let v = v_t.row(null_idx[0]).transpose();
            let norm = v.norm();
            Ok(Some(v / norm))
        }
        _ => Err(Error::RankDeficient),
    }
}

/// `m^{-1/2}` for a symmetric positive definite `m`, via eigendecomposition.
///
/// Eigenvalues below `floor` times the largest eigenvalue are rejected.
pub fn inv_sqrt_spd(m: &DMatrix<f64>, floor: f64) -> Result<DMatrix<f64>> {
    let eig = m.clone().symmetric_eigen();
    let top = eig.eigenvalues.iter().copied().fold(0.0_f64, f64::max);
    if top <= 0.0 || eig.eigenvalues.iter().any(|&l| l <= floor * top) {
        return Err(Error::SingularInput);
    }
    let d = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| 1.0 / l.sqrt()));
    Ok(&eig.eigenvectors * d * eig.eigenvectors.transpose())
}

/// Principal square root of a symmetric positive semidefinite matrix.
pub fn sqrt_psd(m: &DMatrix<f64>) -> DMatrix<f64> {
    let eig = m.clone().symmetric_eigen();
    let d = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| l.max(0.0).sqrt()));
    &eig.eigenvectors * d * eig.eigenvectors.transpose()
}

pub fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * i as f64)
}

/// `k`-dimensional volume of the simplex spanned from the origin by the `k`
/// columns of `edges`.
pub fn simplex_volume_from_edges(edges: &DMatrix<f64>) -> f64 {
    let k = edges.ncols();
    if k == 0 {
        return 1.0;
    }
    let gram = edges.transpose() * edges;
    gram.determinant().max(0.0).sqrt() / factorial(k)
}

/// `(|S|-1)`-dimensional volume of the simplex with the given vertices.
pub fn simplex_volume(points: &[DVector<f64>]) -> f64 {
    simplex_volume_from_edges(&difference_matrix(points, 0))
}

/// Generalized cross product of the `n−1` columns of an `n × (n−1)` matrix.
///
/// The result is orthogonal to every column, has norm equal to the
/// `(n−1)`-volume of the spanned parallelotope, and `det([cols | result]) > 0`
/// whenever the columns are independent.
pub fn cross_normal(cols: &DMatrix<f64>) -> DVector<f64> {
    let n = cols.nrows();
    debug_assert_eq!(cols.ncols() + 1, n);
    let mut out = DVector::zeros(n);
    for i in 0..n {
        let minor = cols.clone().remove_row(i);
        let det = if minor.nrows() == 0 { 1.0 } else { minor.determinant() };
        // expansion of det([cols | e_i]) along the last column
        let sign = if (i + n - 1) % 2 == 0 { 1.0 } else { -1.0 };
        out[i] = sign * det;
    }
    out
}

/// Orthonormal basis (as columns) of the column span of `m`, assumed to have
/// full column rank.
pub fn orthonormal_columns(m: &DMatrix<f64>) -> DMatrix<f64> {
    let k = m.ncols();
    let qr = m.clone().qr();
    let q = qr.q();
    let r = qr.r();
    let mut q = q.columns(0, k).into_owned();
    // fix signs so that the factorization is continuous in m (R has positive diagonal)
    for j in 0..k {
        if r[(j, j)] < 0.0 {
            let mut c = q.column_mut(j);
            c *= -1.0;
        }
    }
    q
}

pub fn frobenius(m: &DMatrix<f64>) -> f64 {
    m.norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn cross_normal_is_orthogonal_and_positively_oriented() {
        let cols = DMatrix::from_column_slice(3, 2, &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
        let n = cross_normal(&cols);
        assert!((n - DVector::from_vec(vec![0.0, 0.0, 1.0])).norm() < 1e-14);

        let cols = DMatrix::from_column_slice(4, 3, &[
            1.0, 2.0, 0.5, -1.0, 0.3, -0.7, 2.0, 1.0, -1.2, 0.4, 0.9, 3.0,
        ]);
        let n = cross_normal(&cols);
        assert!((cols.transpose() * &n).norm() < 1e-12);
        let mut full = cols.clone().insert_column(3, 0.0);
        full.set_column(3, &n);
        assert!(full.determinant() > 0.0);
        let vol = simplex_volume_from_edges(&cols) * factorial(3);
        assert!((n.norm() - vol).abs() < 1e-12);
    }

    #[test]
    fn inverse_square_root_of_diagonal() {
        let m = DMatrix::from_diagonal(&DVector::from_vec(vec![4.0, 1.0, 0.25]));
        let r = inv_sqrt_spd(&m, 1e-14).unwrap();
        let expect = DMatrix::from_diagonal(&DVector::from_vec(vec![0.5, 1.0, 2.0]));
        assert!((r - expect).norm() < 1e-13);
        let singular = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 0.0]));
        assert_eq!(inv_sqrt_spd(&singular, 1e-14), Err(Error::SingularInput));
    }

    #[test]
    fn null_vector_detects_dimension() {
        // x + y - z = 0 style dependency among 3 columns in R^2
        let m = DMatrix::from_row_slice(2, 3, &[1.0, 0.0, 1.0, 0.0, 1.0, 1.0]);
        let v = null_vector(&m, 1e-9).unwrap().unwrap();
        assert!((&m * &v).norm() < 1e-12);
        let full = DMatrix::<f64>::identity(3, 3);
        assert_eq!(null_vector(&full, 1e-9).unwrap(), None);
        let two = DMatrix::from_row_slice(1, 3, &[1.0, 1.0, 1.0]);
        assert_eq!(null_vector(&two, 1e-9), Err(Error::RankDeficient));
    }
}
