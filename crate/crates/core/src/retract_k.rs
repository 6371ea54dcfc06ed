//! Retraction of `C(K)` onto pyramids.
//!
//! The path runs in two halves. On `[0, ½]` a configuration whose greatest
//! solid angle `α` is at most `V/2` is regularized by `Ω`; otherwise the
//! vertex with that angle (the apex) is carried over the face opposite it
//! (the wide face) while the face follows `Ω` at the damped time `(1−η)τ`,
//! `η = 2α/V − 1`. A flat configuration (`η = 1`) keeps its face and slides
//! the apex straight to the face's centroid. On `[½, 1]` the wide face is
//! regularized inside its hyperplane, which leaves heights unchanged.
//!
//! The apex is placed through face-frame coordinates `(u, h)`: `u` in the
//! face, `h` along the unit normal. They are blended as
//! `u = (1−η)u_Ω + η((1−τ)u₀ + τ·ū)` and `h = (1−η)h_Ω + η(1−τ)h₀`, where
//! `(u_Ω, h_Ω)` are the apex coordinates of `Ω_τ(x)`, `(u₀, h₀)` those of
//! `x` and `ū` is the face centroid. At `η = 0` this is exactly `Ω_τ`, and
//! the endpoint is a regular face with the apex over its centroid at height
//! `(1−η)·√((n+1)/(2n))`.
//!
//! [`ScaleRule::Literal`] instead evaluates the composition
//! `Ω̄_τ ∘ ω_{ητ}^{−1} ∘ Ω_τ` with the perpendicular factor `(1−η)τ`. That
//! reading does not start at the identity and does not end on a pyramid; it
//! is kept for comparison only.

use alloc::vec::Vec;
use nalgebra::DVector;
#[allow(unused_imports)]
use num_traits::Float;

use crate::affine::induced_affine_map;
use crate::classify::classify;
use crate::error::{Error, Result};
use crate::face::{centroid_coords, regular_height, regularize_face_map, unit_normal, FaceFrame};
use crate::linalg;
use crate::regularize::{omega_points, recenter};
use crate::simplex::{without, ComplexKind, Configuration, Point, Simplex, Tolerances};
use crate::solid_angle::{half_sphere, vertex_solid_angles};
use crate::trajectory::Trajectory;

/// Which reading of the perpendicular rescaling to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScaleRule {
    #[default]
    Corrected,
    Literal,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct KOptions {
    pub tol: Tolerances,
    pub scale: ScaleRule,
}

/// Relative gap under which two solid angles above `V/2` count as tied.
pub const TIE_GAP: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KBranch {
    /// `α ≤ V/2` (or a tie above it): plain `Ω`.
    Regularize,
    /// `α > V/2` with a unique apex.
    Apex { apex: usize, eta: f64 },
}

/// `α` and its vertex for a `K`-configuration, along with the runner-up angle.
fn alpha_data(points: &[Point], tol: &Tolerances) -> Result<(f64, usize, f64)> {
    let n = points[0].len();
    let s = Simplex::from_vertices_unchecked(points.to_vec());
    if !s.is_nondegenerate(tol) {
        let (a, i) = crate::solid_angle::greatest_solid_angle_with(&s, tol)?;
        return Ok((a, i, 0.0));
    }
    let angles = vertex_solid_angles(points)?;
    let (a, i) = crate::solid_angle::argmax(&angles);
    let second = angles.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, &v)| v).fold(0.0, f64::max);
    debug_assert!(a <= 2.0 * half_sphere(n));
    Ok((a, i, second))
}

/// The apex and wide face of a configuration with `α > V/2`.
pub fn wide_face(config: &Configuration) -> Result<(usize, Vec<usize>)> {
    let n = config.dim();
    let (alpha, apex, _) = alpha_data(&config.points, &Tolerances::default())?;
    let half = 0.5 * half_sphere(n);
    if alpha <= half {
        return Err(Error::NotGated { alpha, half_v: half });
    }
    Ok((apex, (0..=n).filter(|&i| i != apex).collect()))
}

/// A precomputed retraction path for one configuration.
#[derive(Debug, Clone)]
pub struct KRetraction {
    points: Vec<Point>,
    center: Point,
    alpha: f64,
    branch: KBranch,
    opts: KOptions,
    /// Sign making the face normal point toward the apex.
    side: f64,
    stage1_end: Vec<Point>,
}

impl KRetraction {
    pub fn new(config: &Configuration, opts: KOptions) -> Result<Self> {
        check_k(config, &opts.tol)?;
        let n = config.dim();
        let v = half_sphere(n);
        let (alpha, apex, second) = alpha_data(&config.points, &opts.tol)?;
        let tied = second > 0.5 * v && (alpha - second) <= TIE_GAP * v;
        let branch = if alpha > 0.5 * v && !tied {
            KBranch::Apex { apex, eta: (2.0 * alpha / v - 1.0).clamp(0.0, 1.0) }
        } else {
            KBranch::Regularize
        };
        Self::build(config, alpha, branch, opts)
    }

    /// Forces a branch; used to compare the two formulas across `α = V/2`.
    pub fn with_branch(config: &Configuration, branch: KBranch, opts: KOptions) -> Result<Self> {
        check_k(config, &opts.tol)?;
        let (alpha, _, _) = alpha_data(&config.points, &opts.tol)?;
        Self::build(config, alpha, branch, opts)
    }

    fn build(config: &Configuration, alpha: f64, branch: KBranch, opts: KOptions) -> Result<Self> {
        let points = config.points.clone();
        let center = linalg::centroid(&points);
        let side = match branch {
            KBranch::Apex { apex, .. } => {
                let face = without(&points, apex);
                let h = (&points[apex] - &face[0]).dot(&unit_normal(&face));
                if h < 0.0 {
                    -1.0
                } else {
                    1.0
                }
            }
            KBranch::Regularize => 1.0,
        };
        let mut r = KRetraction { points, center, alpha, branch, opts, side, stage1_end: Vec::new() };
        r.stage1_end = r.stage1(1.0)?;
        Ok(r)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn branch(&self) -> KBranch {
        self.branch
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    /// `Ψ_t` as a labeled point list.
    pub fn at(&self, t: f64) -> Result<Vec<Point>> {
        let t = t.clamp(0.0, 1.0);
        if t == 0.0 && self.opts.scale == ScaleRule::Corrected {
            return Ok(self.points.clone());
        }
        if t <= 0.5 {
            self.stage1(2.0 * t)
        } else {
            self.stage2(2.0 * t - 1.0)
        }
    }

    pub fn trajectory(&self, samples: usize) -> Result<Trajectory> {
        Trajectory::sample(samples, |t| self.at(t))
    }

    /// Like [`trajectory`](Self::trajectory), failing with `EmbeddingViolated`
    /// at the first sample that leaves `C(K)`.
    pub fn trajectory_checked(&self, samples: usize) -> Result<Trajectory> {
        let traj = self.trajectory(samples)?;
        check_embedded(&traj, ComplexKind::K, &self.opts.tol)?;
        Ok(traj)
    }

    fn face_normal(&self, face: &[Point]) -> DVector<f64> {
        unit_normal(face) * self.side
    }

    fn stage1(&self, tau: f64) -> Result<Vec<Point>> {
        let out = match self.branch {
            KBranch::Regularize => omega_points(&self.points, tau)?,
            KBranch::Apex { apex, eta } => match self.opts.scale {
                ScaleRule::Corrected => self.apex_path(apex, eta, tau)?,
                ScaleRule::Literal => self.literal_path(apex, eta, tau)?,
            },
        };
        Ok(recenter(&out, &self.center))
    }

    fn stage2(&self, tau: f64) -> Result<Vec<Point>> {
        match self.branch {
            KBranch::Regularize => Ok(self.stage1_end.clone()),
            KBranch::Apex { apex, .. } => {
                let face = without(&self.stage1_end, apex);
                let map = regularize_face_map(&face, tau)?;
                Ok(recenter(&map.apply_all(&self.stage1_end), &self.center))
            }
        }
    }

    /// Straight line of the apex to the wide-face centroid; the `η = 1` case.
    fn flat_path(&self, apex: usize, tau: f64) -> Vec<Point> {
        let face = without(&self.points, apex);
        let target = linalg::centroid(&face);
        let mut out = self.points.clone();
        out[apex] = &self.points[apex] * (1.0 - tau) + target * tau;
        out
    }

    fn apex_path(&self, apex: usize, eta: f64, tau: f64) -> Result<Vec<Point>> {
        let n = self.dim();
        if eta >= 1.0 || tau == 0.0 {
            return Ok(self.flat_path(apex, tau));
        }
        let y = match omega_points(&self.points, tau) {
            Ok(y) => y,
            Err(Error::SingularInput) if eta > 1.0 - 1e-6 => return Ok(self.flat_path(apex, tau)),
            Err(e) => return Err(e),
        };
        let x_face = without(&self.points, apex);
        let y_face = without(&y, apex);
        let x0 = FaceFrame::new(&x_face, &self.face_normal(&x_face))?.coords(&self.points[apex]);
        let yc = FaceFrame::new(&y_face, &self.face_normal(&y_face))?.coords(&y[apex]);
        let bar = centroid_coords(n);
        let mut z: DVector<f64> = &yc * (1.0 - eta) + (&x0 * (1.0 - tau) + &bar * tau) * eta;
        z[n - 1] = (1.0 - eta) * yc[n - 1] + eta * (1.0 - tau) * x0[n - 1];
        let w = if eta == 0.0 { y } else { omega_points(&self.points, (1.0 - eta) * tau)? };
        let w_face = without(&w, apex);
        let mut out = w.clone();
        out[apex] = FaceFrame::new(&w_face, &self.face_normal(&w_face))?.point(&z);
        Ok(out)
    }

    fn literal_path(&self, apex: usize, eta: f64, tau: f64) -> Result<Vec<Point>> {
        let y = match omega_points(&self.points, tau) {
            Ok(y) => y,
            Err(Error::SingularInput) => return Ok(self.flat_path(apex, tau)),
            Err(e) => return Err(e),
        };
        let w = omega_points(&self.points, eta * tau)?;
        let (x_face, w_face) = (without(&self.points, apex), without(&w, apex));
        let omega_map = induced_affine_map(&x_face, &w_face, &self.face_normal(&x_face), &self.face_normal(&w_face))?;
        let z = omega_map.inverse()?.apply_all(&y);
        let z_face = without(&z, apex);
        let nu = unit_normal(&z_face);
        let k = (1.0 - eta) * tau;
        Ok(z.iter().map(|p| p - &nu * ((1.0 - k) * (p - &z_face[0]).dot(&nu))).collect())
    }
}

fn check_k(config: &Configuration, tol: &Tolerances) -> Result<()> {
    if config.kind != ComplexKind::K {
        return Err(Error::InvalidConfiguration("expected a K configuration"));
    }
    classify(config, tol).map(|_| ())
}

/// Fails with `EmbeddingViolated` at the first sample outside the
/// configuration space.
pub fn check_embedded(traj: &Trajectory, kind: ComplexKind, tol: &Tolerances) -> Result<()> {
    for s in &traj.samples {
        let c = Configuration { kind, points: s.points.clone() };
        if classify(&c, tol).is_err() {
            return Err(Error::EmbeddingViolated { t: s.t });
        }
    }
    Ok(())
}

/// `Ψ_t(config)` with default options.
pub fn psi(config: &Configuration, t: f64) -> Result<Configuration> {
    let r = KRetraction::new(config, KOptions::default())?;
    Ok(Configuration { kind: ComplexKind::K, points: r.at(t)? })
}

/// A pyramid decomposition, in units of the mean base edge.
#[derive(Debug, Clone, PartialEq)]
pub struct PyramidK {
    pub apex: usize,
    pub base: Vec<usize>,
    /// Mean base edge length.
    pub edge: f64,
    /// Apex height over the base hyperplane divided by `edge`; between 0 and
    /// the regular height `√((n+1)/(2n))`.
    pub height: f64,
    pub base_center: Point,
}

/// Finds an apex such that the other vertices form a regular simplex and the
/// apex sits on its axis no higher than the regular height. All tests are
/// relative to the base edge length.
pub fn pyramid_k(config: &Configuration, tol: f64) -> Option<PyramidK> {
    let n = config.dim();
    let p = &config.points;
    (0..p.len()).find_map(|apex| {
        let base = without(p, apex);
        let edges = crate::simplex::edge_lengths(&base);
        let edge = edges.iter().sum::<f64>() / edges.len() as f64;
        if !(edge > 0.0) || crate::simplex::relative_edge_spread(&base) >= tol {
            return None;
        }
        let c = linalg::centroid(&base);
        let nu = unit_normal(&base);
        let off = &p[apex] - &c;
        let h = off.dot(&nu);
        let lateral = (&off - &nu * h).norm() / edge;
        let height = h.abs() / edge;
        if lateral >= tol || height > regular_height(n) * (1.0 + tol) + tol {
            return None;
        }
        Some(PyramidK { apex, base: (0..p.len()).filter(|&i| i != apex).collect(), edge, height, base_center: c })
    })
}

pub fn is_pyramid_k(config: &Configuration, tol: f64) -> bool {
    pyramid_k(config, tol).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{max_dist, random_orthogonal, random_points, regular_simplex, rng};

    fn k(points: Vec<Point>) -> Configuration {
        Configuration::new(ComplexKind::K, points).unwrap()
    }

    fn pyramid(n: usize, height: f64) -> Vec<Point> {
        // regular unit base in the hyperplane x_n = 0, apex over its centroid
        let base = regular_simplex(n - 1);
        let c = linalg::centroid(&base);
        let mut pts: Vec<Point> = base.iter().map(|b| (b - &c).push(0.0)).collect();
        let mut apex = DVector::zeros(n);
        apex[n - 1] = height;
        pts.push(apex);
        pts
    }

    #[test]
    fn membership_examples() {
        assert!(is_pyramid_k(&k(pyramid(3, 0.3)), 1e-9));
        assert!(is_pyramid_k(&k(regular_simplex(4)), 1e-9));
        let mut g = rng(1);
        assert!(!is_pyramid_k(&k(random_points(&mut g, 3, 4)), 1e-6));
        assert!(!is_pyramid_k(&k(pyramid(3, 0.9)), 1e-6));
    }

    #[test]
    fn gating() {
        assert!(matches!(wide_face(&k(regular_simplex(3))), Err(Error::NotGated { .. })));
        let (apex, face) = wide_face(&k(pyramid(3, 0.05))).unwrap();
        assert_eq!(apex, 3);
        assert_eq!(face, alloc::vec![0, 1, 2]);
        let mut flat = pyramid(3, 0.0);
        flat[3][0] += 0.05;
        assert_eq!(wide_face(&k(flat)).unwrap().0, 3);
    }

    #[test]
    fn regular_simplex_stays_regular() {
        let p = regular_simplex(3);
        let r = KRetraction::new(&k(p.clone()), KOptions::default()).unwrap();
        assert_eq!(r.branch(), KBranch::Regularize);
        assert!(max_dist(&r.at(1.0).unwrap(), &p) < 1e-10);
    }

    #[test]
    fn flat_configuration_ends_at_height_zero() {
        let mut p = pyramid(3, 0.0);
        p[0] = &p[0] * 1.7;
        p[3] = DVector::from_vec(alloc::vec![0.1, -0.05, 0.0]);
        let cfg = k(p.clone());
        let r = KRetraction::new(&cfg, KOptions::default()).unwrap();
        assert!(matches!(r.branch(), KBranch::Apex { apex: 3, eta } if eta == 1.0));
        let end = k(r.at(1.0).unwrap());
        let pk = pyramid_k(&end, 1e-9).unwrap();
        assert_eq!(pk.apex, 3);
        assert!(pk.height < 1e-12);
        let mid = r.at(0.25).unwrap();
        assert!(mid[3][2].abs() < 1e-15);
        r.trajectory_checked(64).unwrap();
    }

    #[test]
    fn random_endpoints_are_pyramids_and_paths_embedded() {
        let mut g = rng(2);
        for _ in 0..40 {
            let cfg = k(random_points(&mut g, 3, 4));
            let r = KRetraction::new(&cfg, KOptions::default()).unwrap();
            let traj = r.trajectory_checked(64).unwrap();
            assert!(max_dist(&traj.samples[0].points, &cfg.points) < 1e-10);
            assert!(is_pyramid_k(&k(traj.last().unwrap().points.clone()), 1e-6));
            assert!(traj.max_step() < 0.5 * crate::measure::mean_edge(&cfg.points) + 1.0);
        }
    }

    #[test]
    fn endpoint_height_follows_eta() {
        for h in [0.05, 0.12, 0.2] {
            let cfg = k(pyramid(3, h));
            let r = KRetraction::new(&cfg, KOptions::default()).unwrap();
            if let KBranch::Apex { eta, .. } = r.branch() {
                let pk = pyramid_k(&k(r.at(1.0).unwrap()), 1e-9).unwrap();
                assert!((pk.height - (1.0 - eta) * regular_height(3)).abs() < 1e-9);
            } else {
                panic!("expected the apex branch at height {h}");
            }
        }
    }

    #[test]
    fn permutation_equivariance() {
        let mut g = rng(3);
        for _ in 0..20 {
            let cfg = k(random_points(&mut g, 3, 4));
            let perm = [2, 0, 3, 1];
            let a = KRetraction::new(&cfg, KOptions::default()).unwrap().at(1.0).unwrap();
            let b = KRetraction::new(&cfg.permuted(&perm), KOptions::default()).unwrap().at(1.0).unwrap();
            for (i, &pi) in perm.iter().enumerate() {
                assert!((&b[i] - &a[pi]).norm() < 1e-8);
            }
        }
    }

    #[test]
    fn rigid_motion_equivariance() {
        let mut g = rng(4);
        let cfg = k(random_points(&mut g, 3, 4));
        let q = random_orthogonal(&mut g, 3);
        let moved = cfg.map_points(|p| &q * p);
        let a = KRetraction::new(&cfg, KOptions::default()).unwrap().at(0.7).unwrap();
        let b = KRetraction::new(&moved, KOptions::default()).unwrap().at(0.7).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((&q * x - y).norm() < 1e-8);
        }
    }

    #[test]
    fn literal_rule_does_not_start_at_identity() {
        let cfg = k(pyramid(3, 0.2));
        let opts = KOptions { scale: ScaleRule::Literal, ..KOptions::default() };
        let r = KRetraction::new(&cfg, opts).unwrap();
        assert!(max_dist(&r.at(0.0).unwrap(), &cfg.points) > 1e-3);
    }
}
