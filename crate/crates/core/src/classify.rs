//! Degeneracy types of `K`- and `L`-configurations.
//!
//! A flat `K`-configuration has exactly one vertex in the convex hull of the
//! others. A generic `L`-configuration either has an interior vertex or an
//! edge crossing the opposite would-be `(n−1)`-face; the two meet along the
//! configurations with a vertex inside a would-be face.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg;
use crate::radon::{affine_dependency, partition_from_dependency, RadonResult};
use crate::simplex::{ComplexKind, Configuration, Point, Tolerances};

#[derive(Debug, Clone, PartialEq)]
pub enum DegeneracyClass {
    /// `K`: the points affinely span `Rⁿ`.
    NonDegenerate,
    /// `K`: flat, with the given vertex inside the hull of the others.
    Hyperplane { interior: usize },
    /// `L`: a vertex interior to the hull of the others.
    Interior { vertex: usize },
    /// `L`: an edge crossing the would-be face spanned by the other `n` points.
    EdgeFace { edge: (usize, usize), radon_point: Point },
    /// `L`: a vertex inside a would-be face; `other` is the remaining vertex.
    Boundary { vertex: usize, face: Vec<usize>, other: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub class: DegeneracyClass,
    /// Distance to the nearest change of type, relative and dimensionless.
    /// For nondegenerate `K` this is the inverse condition number of the
    /// edge matrix; otherwise the smallest nonzero Radon coefficient ratio.
    pub margin: f64,
    pub radon: Option<RadonResult>,
}

/// Classifies a configuration, rejecting it if it is not embedded.
pub fn classify(config: &Configuration, tol: &Tolerances) -> Result<Classification> {
    let n = config.dim();
    let points = &config.points;
    if points.len() != config.kind.point_count(n) {
        return Err(Error::DimensionError { expected: config.kind.point_count(n), found: points.len() });
    }
    let lambda = affine_dependency(points, tol)
        .map_err(|_| Error::InvalidConfiguration("affine dependencies are not one-dimensional"))?;
    match (config.kind, lambda) {
        (ComplexKind::K, None) => Ok(Classification {
            class: DegeneracyClass::NonDegenerate,
            margin: linalg::conditioning(&linalg::difference_matrix(points, 0)),
            radon: None,
        }),
        (ComplexKind::L, None) => Err(Error::InvalidConfiguration("n+2 points cannot be independent")),
        (kind, Some(lambda)) => {
            let radon = partition_from_dependency(points, lambda, tol);
            let p = radon.part1.len();
            let nn = radon.negative().len();
            // the two hulls meet; this is forbidden exactly when both sides are faces
            if p.max(nn) < n {
                return Err(Error::InvalidConfiguration("two disjoint faces intersect"));
            }
            let class = match kind {
                ComplexKind::K => {
                    debug_assert_eq!(p, 1);
                    DegeneracyClass::Hyperplane { interior: radon.part1[0] }
                }
                ComplexKind::L => match (p, radon.zero.len()) {
                    (1, 0) => DegeneracyClass::Interior { vertex: radon.part1[0] },
                    (1, _) => DegeneracyClass::Boundary {
                        vertex: radon.part1[0],
                        face: radon.negative(),
                        other: radon.zero[0],
                    },
                    (2, _) => DegeneracyClass::EdgeFace {
                        edge: (radon.part1[0], radon.part1[1]),
                        radon_point: radon.radon_point.clone(),
                    },
                    _ => return Err(Error::InvalidConfiguration("unexpected Radon type")),
                },
            };
            Ok(Classification { class, margin: radon.margin(), radon: Some(radon) })
        }
    }
}

/// Whether the configuration lies in `C(K)` / `C(L)` at the given tolerances.
pub fn is_embedded(config: &Configuration, tol: &Tolerances) -> bool {
    classify(config, tol).is_ok()
}

impl DegeneracyClass {
    /// The same class after relabeling point `i` as `perm_inv[i]`... i.e. the
    /// class of `config.permuted(perm)` expressed from this one.
    pub fn relabeled(&self, perm: &[usize]) -> DegeneracyClass {
        let inv = |i: usize| perm.iter().position(|&p| p == i).expect("permutation");
        match self {
            DegeneracyClass::NonDegenerate => DegeneracyClass::NonDegenerate,
            DegeneracyClass::Hyperplane { interior } => DegeneracyClass::Hyperplane { interior: inv(*interior) },
            DegeneracyClass::Interior { vertex } => DegeneracyClass::Interior { vertex: inv(*vertex) },
            DegeneracyClass::EdgeFace { edge, radon_point } => {
                let (a, b) = (inv(edge.0), inv(edge.1));
                DegeneracyClass::EdgeFace { edge: (a.min(b), a.max(b)), radon_point: radon_point.clone() }
            }
            DegeneracyClass::Boundary { vertex, face, other } => {
                let mut face: Vec<usize> = face.iter().map(|&i| inv(i)).collect();
                face.sort_unstable();
                DegeneracyClass::Boundary { vertex: inv(*vertex), face, other: inv(*other) }
            }
        }
    }

    /// Same combinatorial type, ignoring floating-point payloads.
    pub fn same_type(&self, other: &DegeneracyClass) -> bool {
        match (self, other) {
            (DegeneracyClass::EdgeFace { edge: a, .. }, DegeneracyClass::EdgeFace { edge: b, .. }) => a == b,
            _ => self == other,
        }
    }
}
