//! Tetrahedra as bimedian bases.
//!
//! The three segments joining midpoints of opposite edges bisect each other
//! at the barycenter. Their halves `e_k = mid(v₀, v_k) − g` form a basis, and
//! the tetrahedron is recovered from `(g, E)` as `v₀ = g + Σe`,
//! `v_k = g + 2e_k − Σe`. Replacing `E` by `−E` gives the tetrahedron
//! reflected through `g`, so a tetrahedron is a basis plus a sheet sign.

use alloc::vec::Vec;
use nalgebra::DMatrix;

use super::phi;
use crate::error::{Error, Result};
use crate::simplex::{Point, Simplex};

#[derive(Debug, Clone, PartialEq)]
pub struct BimedianBasis {
    /// Barycenter of the tetrahedron.
    pub center: Point,
    /// Columns `e₁, e₂, e₃`.
    pub e: DMatrix<f64>,
}

impl BimedianBasis {
    /// `sign(det E)`; equals `−sign det[v_k − v₀]` for the tetrahedron it came from.
    pub fn sheet(&self) -> i8 {
        if self.e.determinant() >= 0.0 {
            1
        } else {
            -1
        }
    }
}

fn check_tetra(t: &Simplex) -> Result<()> {
    if t.dim() != 3 {
        return Err(Error::DimensionError { expected: 3, found: t.dim() });
    }
    Ok(())
}

pub fn bimedian_basis(t: &Simplex) -> Result<BimedianBasis> {
    check_tetra(t)?;
    let v = t.vertices();
    let g = t.barycenter();
    let cols: Vec<Point> = (1..4).map(|k| (&v[0] + &v[k]) * 0.5 - &g).collect();
    Ok(BimedianBasis { center: g, e: DMatrix::from_columns(&cols) })
}

/// The tetrahedron on the given sheet over the basis `b`.
pub fn tetra_from_bimedian(b: &BimedianBasis, sheet: i8) -> Simplex {
    let e = if b.sheet() == sheet.signum() { b.e.clone() } else { -&b.e };
    build(&b.center, &e)
}

fn build(center: &Point, e: &DMatrix<f64>) -> Simplex {
    let sum = e.column_sum();
    let mut v = Vec::with_capacity(4);
    v.push(center + &sum);
    for k in 0..3 {
        v.push(center + e.column(k) * 2.0 - &sum);
    }
    Simplex::from_vertices_unchecked(v)
}

/// Löwdin-orthogonalizes the bimedian basis and rebuilds on the same sheet.
/// At `t = 1` the bimedians are orthonormal and the tetrahedron is regular
/// with edge `2√2`.
pub fn regularize_bimedian(t: &Simplex, time: f64) -> Result<Simplex> {
    let b = bimedian_basis(t)?;
    Ok(build(&b.center, &phi(&b.e, time)?))
}
