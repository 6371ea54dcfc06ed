//! Boundary-volume descent at fixed volume.
//!
//! Since `r = n·Vol/Vol(∂x)`, growing the insphere at fixed volume is the
//! same as shrinking the boundary. Each step moves along the negative
//! gradient of `Vol(∂x)` projected orthogonally to the gradient of `Vol(x)`,
//! restores the volume by scaling about the incenter and then puts the
//! incenter at the origin. Step sizes come from Armijo backtracking.

use alloc::vec::Vec;
use nalgebra::{DMatrix, DVector};
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg;
use crate::measure::{boundary_volume, incenter_inradius, vertex_over_incenter_residual};
use crate::simplex::{without, Point, Simplex};
use crate::solid_angle::sphere_volume;
use crate::trajectory::Trajectory;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowOptions {
    pub initial_step: f64,
    pub shrink: f64,
    /// Factor applied to the step after an accepted step.
    pub grow: f64,
    pub max_step: f64,
    pub armijo: f64,
    pub max_iters: usize,
    /// Stop once the vertex-over-incenter residual is below this.
    pub tolerance: f64,
}

impl Default for FlowOptions {
    fn default() -> Self {
        FlowOptions {
            initial_step: 1e-2,
            shrink: 0.5,
            grow: 2.0,
            max_step: 10.0,
            armijo: 1e-4,
            max_iters: 20_000,
            tolerance: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlowResult {
    /// One sample per accepted step; `t` counts steps.
    pub trajectory: Trajectory,
    /// Potential at each sample.
    pub potentials: Vec<f64>,
    pub iterations: usize,
    pub residual: f64,
    /// Norm of the projected gradient at the last sample.
    pub gradient_norm: f64,
}

impl FlowResult {
    pub fn terminal(&self) -> &[Point] {
        &self.trajectory.last().expect("flow keeps its start").points
    }
}

/// `Vol(x)/Vol(insphere(x)) = Vol(∂x)ⁿ / (ωₙ nⁿ Vol(x)^{n−1})`; invariant
/// under similarities and minimized exactly by regular simplices.
pub fn irregularity_potential(s: &Simplex) -> Result<f64> {
    let n = s.dim();
    let (_, r) = incenter_inradius(s)?;
    let ball = sphere_volume(n) / n as f64;
    Ok(s.volume() / (ball * r.powi(n as i32)))
}

fn boundary_gradient(points: &[Point]) -> Vec<DVector<f64>> {
    let n = points[0].len();
    let mut grad = alloc::vec![DVector::zeros(n); points.len()];
    for skip in 0..points.len() {
        let idx: Vec<usize> = (0..points.len()).filter(|&i| i != skip).collect();
        let f = without(points, skip);
        let e = linalg::difference_matrix(&f, 0);
        let gram = e.transpose() * &e;
        let Some(gi) = gram.try_inverse() else { continue };
        // d sqrt(det G)/dE = sqrt(det G)·E·G⁻¹
        let m = &e * gi * linalg::simplex_volume_from_edges(&e);
        for k in 1..idx.len() {
            grad[idx[k]] += m.column(k - 1);
            grad[idx[0]] -= m.column(k - 1);
        }
    }
    grad
}

fn volume_gradient(points: &[Point]) -> Vec<DVector<f64>> {
    let n = points[0].len();
    let d = linalg::difference_matrix(points, 0);
    let vol = (d.determinant() / linalg::factorial(n)).abs();
    let m: DMatrix<f64> = d.try_inverse().map(|i| i.transpose() * vol).unwrap_or_else(|| DMatrix::zeros(n, n));
    let mut grad = alloc::vec![DVector::zeros(n); n + 1];
    for k in 0..n {
        grad[k + 1] += m.column(k);
        grad[0] -= m.column(k);
    }
    grad
}

fn dot(a: &[DVector<f64>], b: &[DVector<f64>]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x.dot(y)).sum()
}

/// Descent direction: minus the boundary gradient, projected tangent to the
/// fixed-volume constraint.
fn direction(points: &[Point]) -> Vec<DVector<f64>> {
    let gs = boundary_gradient(points);
    let gv = volume_gradient(points);
    let k = dot(&gs, &gv) / dot(&gv, &gv);
    gs.iter().zip(&gv).map(|(s, v)| -(s - v * k)).collect()
}

/// Scales about the incenter to volume `target`, then moves the incenter to
/// the origin.
fn normalize(points: &[Point], target: f64) -> Option<Vec<Point>> {
    let s = Simplex::from_vertices_unchecked(points.to_vec());
    let (c, _) = incenter_inradius(&s).ok()?;
    let n = s.dim();
    let k = (target / s.volume()).powf(1.0 / n as f64);
    Some(points.iter().map(|p| (p - &c) * k).collect())
}

/// Runs the flow from `s` with default options apart from the initial step
/// and iteration cap.
pub fn inradius_flow(s: &Simplex, step: f64, max_iters: usize) -> Result<FlowResult> {
    inradius_flow_with(s, &FlowOptions { initial_step: step, max_iters, ..FlowOptions::default() })
}

pub fn inradius_flow_with(s: &Simplex, opts: &FlowOptions) -> Result<FlowResult> {
    let n = s.dim();
    let vol = s.volume();
    let sign = s.signed_volume().signum();
    let mut x = normalize(s.vertices(), vol).ok_or(Error::DegenerateSimplex)?;
    let mut area = boundary_volume(&x);
    let potential = |pts: &[Point]| irregularity_potential(&Simplex::from_vertices_unchecked(pts.to_vec()));
    let mut trajectory = Trajectory::new();
    let mut potentials = Vec::new();
    trajectory.push(0.0, x.clone());
    potentials.push(potential(&x)?);
    let mut h = opts.initial_step;
    let mut residual = vertex_over_incenter_residual(&x);
    let mut iterations = 0;
    let mut d = direction(&x);
    while residual >= opts.tolerance {
        if iterations >= opts.max_iters {
            return Err(Error::NonConvergence { iterations, potential: *potentials.last().unwrap_or(&0.0), residual });
        }
        let slope = dot(&d, &d);
        let mut accepted = None;
        while h > 1e-18 {
            let trial: Vec<Point> = x.iter().zip(&d).map(|(p, di)| p + di * h).collect();
            let signed = linalg::difference_matrix(&trial, 0).determinant();
            if signed.signum() == sign {
                if let Some(y) = normalize(&trial, vol) {
                    let a = boundary_volume(&y);
                    if a <= area - opts.armijo * h * slope {
                        accepted = Some((y, a));
                        break;
                    }
                }
            }
            h *= opts.shrink;
        }
        let Some((y, a)) = accepted else {
            // no further decrease is representable
            return Err(Error::NonConvergence { iterations, potential: *potentials.last().unwrap_or(&0.0), residual });
        };
        iterations += 1;
        x = y;
        area = a;
        h = (h * opts.grow).min(opts.max_step);
        residual = vertex_over_incenter_residual(&x);
        d = direction(&x);
        trajectory.push(iterations as f64, x.clone());
        potentials.push(potential(&x)?);
    }
    let gradient_norm = dot(&d, &d).sqrt();
    debug_assert_eq!(x.len(), n + 1);
    Ok(FlowResult { trajectory, potentials, iterations, residual, gradient_norm })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::relative_edge_spread;
    use crate::testutil::{random_orthogonal, random_points, regular_simplex, rng};

    #[test]
    fn regular_simplex_is_fixed() {
        for n in 2..=5 {
            let s = Simplex::new(regular_simplex(n)).unwrap();
            let r = inradius_flow(&s, 1e-2, 100).unwrap();
            assert_eq!(r.iterations, 0);
            assert!(r.gradient_norm < 1e-9);
            let p0 = irregularity_potential(&s).unwrap();
            assert!((r.potentials[0] - p0).abs() < 1e-12);
        }
    }

    #[test]
    fn gradients_match_finite_differences() {
        let mut g = rng(10);
        let p = random_points(&mut g, 3, 4);
        let gs = boundary_gradient(&p);
        let gv = volume_gradient(&p);
        let vol = |q: &[Point]| linalg::simplex_volume(q);
        let h = 1e-6;
        for i in 0..4 {
            for c in 0..3 {
                let mut a = p.clone();
                let mut b = p.clone();
                a[i][c] += h;
                b[i][c] -= h;
                let fd = (boundary_volume(&a) - boundary_volume(&b)) / (2.0 * h);
                assert!((fd - gs[i][c]).abs() < 1e-6);
                let fv = (vol(&a) - vol(&b)) / (2.0 * h);
                assert!((fv - gv[i][c]).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn random_tetrahedra_become_regular() {
        let mut g = rng(11);
        for _ in 0..10 {
            let s = Simplex::new(random_points(&mut g, 3, 4)).unwrap();
            let r = inradius_flow(&s, 1e-2, 20_000).unwrap();
            assert!(r.residual < 1e-6);
            assert!(relative_edge_spread(r.terminal()) < 1e-4);
            for w in r.potentials.windows(2) {
                assert!(w[1] <= w[0]);
            }
            assert!(r.potentials.last().unwrap() < &r.potentials[0]);
            let end = Simplex::from_vertices_unchecked(r.terminal().to_vec());
            assert!((end.volume() - s.volume()).abs() < 1e-9 * s.volume());
            let (c, _) = incenter_inradius(&end).unwrap();
            assert!(c.norm() < 1e-9);
        }
    }

    #[test]
    fn potential_is_similarity_invariant() {
        let mut g = rng(12);
        for n in 2..=5 {
            let s = Simplex::new(random_points(&mut g, n, n + 1)).unwrap();
            let q = random_orthogonal(&mut g, n);
            let shift = crate::testutil::random_point(&mut g, n);
            let moved = s.map_points(|p| (&q * p) * 3.7 + &shift);
            let a = irregularity_potential(&s).unwrap();
            let b = irregularity_potential(&moved).unwrap();
            assert!((a - b).abs() < 1e-10 * a);
        }
    }
}
