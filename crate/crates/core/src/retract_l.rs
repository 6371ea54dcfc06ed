//! Retraction of `C(L)` onto pyramids, in three stages of equal length.
//!
//! A generic configuration of `n+2` points either has a vertex `v` inside
//! the simplex `Δ` of the others, or an edge `v₁v₂` crossing the would-be
//! face `W` spanned by the remaining `n` points; the two kinds meet where a
//! vertex lies in a would-be face.
//!
//! 1. The crossing point is pushed to the centroid `d` of `W`. An interior
//!    vertex goes straight to `(1−s)d + s·c` (`c` the centroid of `Δ`), with
//!    `s = s(m, q)` from its barycentric coordinates; an edge is translated
//!    and sheared so it passes through `d`.
//! 2. The vertex opposite `W` (the pivot) is stood up over `d` at the regular
//!    height while the rest of `Δ` follows `Ω` damped by `q`; for an edge the
//!    face stays fixed and the near endpoint mirrors the pivot through `d`.
//! 3. `W` is regularized inside its hyperplane; heights are unchanged.

use alloc::vec::Vec;
use nalgebra::DVector;
#[allow(unused_imports)]
use num_traits::Float;

use crate::classify::{classify, DegeneracyClass};
use crate::error::{Error, Result};
use crate::face::{regular_height, regularize_face_map, unit_normal, FaceFrame, PivotPath};
use crate::linalg;
use crate::measure::project_to_hull;
use crate::regularize::omega_points;
use crate::retract_k::check_embedded;
use crate::simplex::{relative_edge_spread, ComplexKind, Configuration, Point, Tolerances};
use crate::trajectory::Trajectory;

/// `s(m, q) = (1−q)(1 − n·m/(1−q))^{1/q} + q` on `0 ≤ n·m ≤ 1−q ≤ 1`,
/// extended by `s = 0` on `q = 0` and undefined at `(0, 0)`.
///
/// Boundary values: `s(0, q) = 1`, `s(m, 0) = 0`, `s((1−q)/n, q) = q`.
pub fn s_param(m: f64, q: f64, n: usize) -> Result<f64> {
    let eps = 1e-12;
    let nm = n as f64 * m;
    let inside = m >= -eps && q >= -eps && q <= 1.0 + eps && nm <= 1.0 - q + eps;
    if !inside || (m == 0.0 && q == 0.0) || !m.is_finite() || !q.is_finite() {
        return Err(Error::DomainError { m, q });
    }
    if q >= 1.0 {
        return Ok(1.0);
    }
    if q <= 0.0 {
        return Ok(0.0);
    }
    let r = (nm / (1.0 - q)).clamp(0.0, 1.0);
    Ok((1.0 - q) * (1.0 - r).powf(1.0 / q) + q)
}

/// Parameters of the first stage. Interior-vertex quantities are `None` for
/// an edge crossing and vice versa.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stage1Params {
    /// Weight of the centroid `c` in `v = q·c + Σ aᵢvᵢ`.
    pub q: Option<f64>,
    /// Smallest `aᵢ`.
    pub m: Option<f64>,
    pub s: Option<f64>,
    /// Distances from the edge endpoints to the crossing point, `ℓ₁ ≤ ℓ₂`.
    pub l1: Option<f64>,
    pub l2: Option<f64>,
}

#[derive(Debug, Clone)]
enum Plan {
    Interior {
        v: usize,
        /// The `n+1` extremal points, in index order.
        delta: Vec<usize>,
        q: f64,
        m: f64,
        s: f64,
        target: Point,
    },
    EdgeFace {
        v1: usize,
        v2: usize,
        l1: f64,
        l2: f64,
        v1_end: Point,
        v2_end: Point,
    },
    Boundary {
        v: usize,
        target: Point,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LOptions {
    pub tol: Tolerances,
}

/// A precomputed three-stage retraction for one configuration.
#[derive(Debug, Clone)]
pub struct LRetraction {
    points: Vec<Point>,
    class: DegeneracyClass,
    plan: Plan,
    /// Indices of the face `W`.
    face: Vec<usize>,
    /// The vertex stood up over `W` in stage 2.
    pivot: usize,
    /// The remaining vertex.
    follower: usize,
    opts: LOptions,
    stage1_end: Vec<Point>,
    stage2_end: Vec<Point>,
}

impl LRetraction {
    pub fn new(config: &Configuration, opts: LOptions) -> Result<Self> {
        if config.kind != ComplexKind::L {
            return Err(Error::InvalidConfiguration("expected an L configuration"));
        }
        let n = config.dim();
        let points = config.points.clone();
        let class = classify(config, &opts.tol)?.class;
        let all: Vec<usize> = (0..n + 2).collect();
        let (plan, face, pivot, follower) = match &class {
            DegeneracyClass::Interior { vertex } => {
                let v = *vertex;
                let delta: Vec<usize> = all.iter().copied().filter(|&i| i != v).collect();
                let dpts: Vec<Point> = delta.iter().map(|&i| points[i].clone()).collect();
                let (_, beta) = project_to_hull(&dpts, &points[v]);
                let (bmin, jpos) = crate::solid_angle::argmax(&beta.iter().map(|b| -b).collect::<Vec<_>>());
                let bmin = -bmin;
                let apex = delta[jpos];
                let face: Vec<usize> = delta.iter().copied().filter(|&i| i != apex).collect();
                let q = ((n + 1) as f64 * bmin).clamp(0.0, 1.0);
                let m = beta
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != jpos)
                    .map(|(_, b)| (b - bmin).max(0.0))
                    .fold(f64::INFINITY, f64::min);
                let s = s_param(m, q, n)?;
                let c = linalg::centroid(&dpts);
                let d = centroid_of(&points, &face);
                let target = &d * (1.0 - s) + &c * s;
                (Plan::Interior { v, delta, q, m, s, target }, face, apex, v)
            }
            DegeneracyClass::EdgeFace { edge, radon_point } => {
                let p = radon_point;
                let (a, b) = *edge;
                let (la, lb) = ((&points[a] - p).norm(), (&points[b] - p).norm());
                let (v1, v2, l1, l2) = if la <= lb { (a, b, la, lb) } else { (b, a, lb, la) };
                let face: Vec<usize> = all.iter().copied().filter(|&i| i != a && i != b).collect();
                let d = centroid_of(&points, &face);
                let r = l1 / l2;
                let shift = &d - p;
                let v2_end = &points[v2] + &shift * r;
                let v1_end = &points[v1] + &shift * (1.0 + r * (1.0 - r));
                (Plan::EdgeFace { v1, v2, l1, l2, v1_end, v2_end }, face, v2, v1)
            }
            DegeneracyClass::Boundary { vertex, face, other } => {
                let target = centroid_of(&points, face);
                (Plan::Boundary { v: *vertex, target }, face.clone(), *other, *vertex)
            }
            _ => return Err(Error::InvalidConfiguration("not an L configuration type")),
        };
        let mut r = LRetraction {
            points,
            class,
            plan,
            face,
            pivot,
            follower,
            opts,
            stage1_end: Vec::new(),
            stage2_end: Vec::new(),
        };
        r.stage1_end = r.step1(1.0);
        r.stage2_end = r.step2(1.0)?;
        Ok(r)
    }

    pub fn class(&self) -> &DegeneracyClass {
        &self.class
    }

    pub fn face(&self) -> &[usize] {
        &self.face
    }

    pub fn pivot(&self) -> usize {
        self.pivot
    }

    pub fn params(&self) -> Stage1Params {
        let mut p = Stage1Params { q: None, m: None, s: None, l1: None, l2: None };
        match &self.plan {
            Plan::Interior { q, m, s, .. } => {
                p.q = Some(*q);
                p.m = Some(*m);
                p.s = Some(*s);
            }
            Plan::EdgeFace { l1, l2, .. } => {
                p.l1 = Some(*l1);
                p.l2 = Some(*l2);
            }
            Plan::Boundary { .. } => {}
        }
        p
    }

    fn dim(&self) -> usize {
        self.points[0].len()
    }

    /// Stage 1 at its own time `τ ∈ [0, 1]`.
    pub fn step1(&self, tau: f64) -> Vec<Point> {
        let mut out = self.points.clone();
        let lerp = |a: &Point, b: &Point| a * (1.0 - tau) + b * tau;
        match &self.plan {
            Plan::Interior { v, target, .. } | Plan::Boundary { v, target } => {
                out[*v] = lerp(&self.points[*v], target);
            }
            Plan::EdgeFace { v1, v2, v1_end, v2_end, .. } => {
                out[*v1] = lerp(&self.points[*v1], v1_end);
                out[*v2] = lerp(&self.points[*v2], v2_end);
            }
        }
        out
    }

    /// Stage 2 at its own time, starting from the stage-1 endpoint.
    pub fn step2(&self, tau: f64) -> Result<Vec<Point>> {
        let n = self.dim();
        let start = &self.stage1_end;
        let w: Vec<Point> = self.face.iter().map(|&i| start[i].clone()).collect();
        let d = linalg::centroid(&w);
        let nu = {
            let nu = unit_normal(&w);
            if (&start[self.pivot] - &w[0]).dot(&nu) < 0.0 {
                -nu
            } else {
                nu
            }
        };
        let side = if unit_normal(&w).dot(&nu) < 0.0 { -1.0 } else { 1.0 };
        let pivot = PivotPath::new(&d, &start[self.pivot], &nu, regular_height(n));
        let mut out = start.clone();
        match &self.plan {
            Plan::Interior { delta, s, .. } if *s > 0.0 => {
                let q = *s;
                let dpts: Vec<Point> = delta.iter().map(|&i| start[i].clone()).collect();
                let apos = delta.iter().position(|&i| i == self.pivot).unwrap_or(0);
                let face_of = |pts: &[Point]| -> Vec<Point> {
                    pts.iter().enumerate().filter(|(k, _)| *k != apos).map(|(_, p)| p.clone()).collect()
                };
                let frame0 = FaceFrame::new(&w, &nu)?;
                let y = omega_points(&dpts, tau)?;
                let y_face = face_of(&y);
                let y_frame = FaceFrame::new(&y_face, &(unit_normal(&y_face) * side))?;
                let z = y_frame.coords(&y[apos]) * q + frame0.coords(&pivot.at(tau)) * (1.0 - q);
                let wq = omega_points(&dpts, q * tau)?;
                let wq_face = face_of(&wq);
                let new_apex = FaceFrame::new(&wq_face, &(unit_normal(&wq_face) * side))?.point(&z);
                let mut new_delta = wq;
                new_delta[apos] = new_apex;
                // carry the interior vertex along by barycentric coordinates
                let (_, beta) = project_to_hull(&dpts, &start[self.follower]);
                let mut f = DVector::zeros(n);
                for (b, p) in beta.iter().zip(&new_delta) {
                    f += p * *b;
                }
                for (k, &i) in delta.iter().enumerate() {
                    out[i] = new_delta[k].clone();
                }
                out[self.follower] = f;
            }
            Plan::Interior { .. } | Plan::Boundary { .. } => {
                out[self.pivot] = pivot.at(tau);
            }
            Plan::EdgeFace { .. } => {
                let rho = (&start[self.follower] - &d).norm() / (&start[self.pivot] - &d).norm();
                out[self.pivot] = pivot.at(tau);
                out[self.follower] = &d - pivot.offset(tau) * rho;
            }
        }
        Ok(out)
    }

    /// Stage 3: in-plane regularization of `W`, applied to every point.
    pub fn step3(&self, tau: f64) -> Result<Vec<Point>> {
        let w: Vec<Point> = self.face.iter().map(|&i| self.stage2_end[i].clone()).collect();
        Ok(regularize_face_map(&w, tau)?.apply_all(&self.stage2_end))
    }

    /// `Λ_t` as a labeled point list.
    pub fn at(&self, t: f64) -> Result<Vec<Point>> {
        let t = t.clamp(0.0, 1.0);
        if t <= 1.0 / 3.0 {
            Ok(self.step1((3.0 * t).min(1.0)))
        } else if t <= 2.0 / 3.0 {
            self.step2((3.0 * t - 1.0).clamp(0.0, 1.0))
        } else {
            self.step3((3.0 * t - 2.0).clamp(0.0, 1.0))
        }
    }

    pub fn trajectory(&self, samples: usize) -> Result<Trajectory> {
        Trajectory::sample(samples, |t| self.at(t))
    }

    pub fn trajectory_checked(&self, samples: usize) -> Result<Trajectory> {
        let traj = self.trajectory(samples)?;
        check_embedded(&traj, ComplexKind::L, &self.opts.tol)?;
        Ok(traj)
    }

    /// Samples one stage on its own time grid.
    pub fn stage_trajectory(&self, stage: usize, samples: usize) -> Result<Trajectory> {
        Trajectory::sample(samples, |tau| match stage {
            1 => Ok(self.step1(tau)),
            2 => self.step2(tau),
            3 => self.step3(tau),
            _ => Err(Error::InvalidConfiguration("stage must be 1, 2 or 3")),
        })
    }
}

fn centroid_of(points: &[Point], idx: &[usize]) -> Point {
    let sel: Vec<Point> = idx.iter().map(|&i| points[i].clone()).collect();
    linalg::centroid(&sel)
}

/// `Λ_t(config)` with default options.
pub fn lambda(config: &Configuration, t: f64) -> Result<Configuration> {
    let r = LRetraction::new(config, LOptions::default())?;
    Ok(Configuration { kind: ComplexKind::L, points: r.at(t)? })
}

/// A decomposition of an `L`-pyramid.
#[derive(Debug, Clone, PartialEq)]
pub struct PyramidL {
    /// The regular simplex `Δ`.
    pub delta: Vec<usize>,
    /// The point outside `Δ`'s vertex set.
    pub extra: usize,
    /// The vertex of `Δ` opposite the shared face `F`.
    pub opposite: usize,
    /// Mean edge of `Δ`.
    pub edge: f64,
    /// Signed height of the extra point over `F` toward `opposite`, in units
    /// of `edge`: in `[−h, h/(n+1)]` with `h` the regular height.
    pub height: f64,
}

/// Finds a regular `n`-simplex among the points with the last point on the
/// axis of one of its faces, either outside `Δ` no deeper than the regular
/// height or inside it no higher than `Δ`'s barycenter.
pub fn pyramid_l(config: &Configuration, tol: f64) -> Option<PyramidL> {
    let p = &config.points;
    let n = config.dim();
    let hreg = regular_height(n);
    for extra in 0..p.len() {
        let delta: Vec<usize> = (0..p.len()).filter(|&i| i != extra).collect();
        let dpts: Vec<Point> = delta.iter().map(|&i| p[i].clone()).collect();
        if relative_edge_spread(&dpts) >= tol {
            continue;
        }
        let edge = crate::measure::mean_edge(&dpts);
        for (k, &opposite) in delta.iter().enumerate() {
            let f: Vec<Point> = dpts.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, q)| q.clone()).collect();
            let c = linalg::centroid(&f);
            let mut nu = unit_normal(&f);
            if (&dpts[k] - &c).dot(&nu) < 0.0 {
                nu = -nu;
            }
            let off = &p[extra] - &c;
            let h = off.dot(&nu);
            if (&off - &nu * h).norm() / edge >= tol {
                continue;
            }
            let height = h / edge;
            let slack = tol * (1.0 + hreg);
            if height >= -hreg - slack && height <= hreg / (n as f64 + 1.0) + slack {
                return Some(PyramidL { delta, extra, opposite, edge, height });
            }
        }
    }
    None
}

pub fn is_pyramid_l(config: &Configuration, tol: f64) -> bool {
    pyramid_l(config, tol).is_some()
}
