//! Solid angles of simplicial cones and the greatest-solid-angle functional.
//!
//! `n = 2` and `n = 3` use closed forms. For `n ≥ 4` the angle is the
//! fraction of a fixed point set on `S^{n−1}` falling in the cone, so the
//! value is a deterministic function of the input: the tables are built from
//! an Owen-scrambled Sobol sequence with fixed seeds, mapped to the sphere by
//! Box–Muller, and evaluated antithetically (`p` and `−p`).

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::sync::atomic::{AtomicUsize, Ordering};

use nalgebra::{DMatrix, DVector};
#[allow(unused_imports)]
use num_traits::Float;
use once_cell::race::OnceBox;

use crate::error::{Error, Result};
use crate::linalg;
use crate::radon::{affine_dependency, partition_from_dependency};
use crate::simplex::{Point, Simplex, Tolerances};

/// Default number of points in a sphere table.
pub const DEFAULT_TABLE_SIZE: usize = 1 << 20;
/// Tables are cached per dimension up to this `n`.
pub const MAX_CACHED_DIM: usize = 8;

static TABLE_SIZE: AtomicUsize = AtomicUsize::new(DEFAULT_TABLE_SIZE);
static TABLES: [OnceBox<SphereTable>; MAX_CACHED_DIM + 1] = [const { OnceBox::new() }; MAX_CACHED_DIM + 1];

/// Sets the size used for tables that have not been built yet.
///
/// Tables already in use keep their size, so call this before the first
/// solid-angle evaluation in dimension `≥ 4`. Values below 16 are raised to 16.
pub fn set_table_size(size: usize) {
    TABLE_SIZE.store(size.max(16), Ordering::Relaxed);
}

pub fn table_size() -> usize {
    TABLE_SIZE.load(Ordering::Relaxed)
}

/// `Vol(S^{n−1})`, the surface measure of the unit sphere in `Rⁿ`.
pub fn sphere_volume(n: usize) -> f64 {
    match n {
        0 => 0.0,
        1 => 2.0,
        2 => 2.0 * PI,
        _ => 2.0 * PI / (n as f64 - 2.0) * sphere_volume(n - 2),
    }
}

/// `V = ½·Vol(S^{n−1})`, the supremum of the solid-angle sum of an `n`-simplex.
pub fn half_sphere(n: usize) -> f64 {
    0.5 * sphere_volume(n)
}

/// A fixed sample of unit vectors on `S^{n−1}`.
#[derive(Debug, Clone)]
pub struct SphereTable {
    n: usize,
    // row-major, `n` coordinates per point
    coords: Vec<f64>,
}

impl SphereTable {
    pub fn new(n: usize, size: usize) -> Self {
        assert!(n >= 2, "sphere tables need n >= 2");
        let dims = n + n % 2;
        assert!(dims as u32 <= sobol_burley::NUM_DIMENSIONS, "dimension too large for the Sobol tables");
        let mut coords = Vec::with_capacity(size * n);
        let mut g = vec![0.0; dims];
        for i in 0..size {
            // the sequence supports 2^16 indices per seed; further blocks use new seeds
            let (idx, seed) = ((i & 0xffff) as u32, (i >> 16) as u32 + 0x5eed);
            for k in (0..dims).step_by(2) {
                let u = 1.0 - sobol_burley::sample(idx, k as u32, seed) as f64;
                let v = sobol_burley::sample(idx, k as u32 + 1, seed) as f64;
                let r = (-2.0 * u.ln()).sqrt();
                g[k] = r * (2.0 * PI * v).cos();
                g[k + 1] = r * (2.0 * PI * v).sin();
            }
            let norm = g[..n].iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm == 0.0 {
                coords.extend(core::iter::once(1.0).chain(core::iter::repeat_n(0.0, n - 1)));
            } else {
                coords.extend(g[..n].iter().map(|x| x / norm));
            }
        }
        SphereTable { n, coords }
    }

    /// The shared table for dimension `n`, built on first use.
    pub fn global(n: usize) -> &'static SphereTable {
        assert!(n <= MAX_CACHED_DIM, "no cached sphere table above n = {MAX_CACHED_DIM}");
        TABLES[n].get_or_init(|| alloc::boxed::Box::new(SphereTable::new(n, table_size())))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.n
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.n..(i + 1) * self.n]
    }

    /// Solid angle of the cone spanned by the columns of `rays`.
    pub fn cone_measure(&self, rays: &DMatrix<f64>) -> Result<f64> {
        let inv = rays.clone().try_inverse().ok_or(Error::DegenerateCone)?;
        let n = self.n;
        let mut b = vec![0.0; n];
        let mut hits = 0usize;
        for i in 0..self.len() {
            apply(&inv, self.point(i), &mut b);
            if b.iter().all(|&x| x >= 0.0) {
                hits += 1;
            }
            if b.iter().all(|&x| x <= 0.0) {
                hits += 1;
            }
        }
        Ok(sphere_volume(n) * hits as f64 / (2 * self.len()) as f64)
    }

    /// Solid angles at all vertices of a nondegenerate simplex in one pass.
    pub fn vertex_measures(&self, points: &[Point]) -> Result<Vec<f64>> {
        let n = self.n;
        let inv = linalg::difference_matrix(points, 0).try_inverse().ok_or(Error::DegenerateSimplex)?;
        let mut b = vec![0.0; n];
        let mut hits = vec![0usize; n + 1];
        for i in 0..self.len() {
            apply(&inv, self.point(i), &mut b);
            count_cones(&b, &mut hits);
            b.iter_mut().for_each(|x| *x = -*x);
            count_cones(&b, &mut hits);
        }
        let scale = sphere_volume(n) / (2 * self.len()) as f64;
        Ok(hits.into_iter().map(|h| h as f64 * scale).collect())
    }
}

fn apply(m: &DMatrix<f64>, p: &[f64], out: &mut [f64]) {
    let n = p.len();
    for (r, o) in out.iter_mut().enumerate() {
        *o = (0..n).map(|c| m[(r, c)] * p[c]).sum();
    }
}

// With `b` the coordinates of a direction in the edge basis `v_i − v_0`, the
// direction lies in the cone at `v_0` iff `b ≥ 0`, and in the cone at `v_i`
// iff `b_j ≥ 0` for `j ≠ i` and `Σb ≤ 0`.
fn count_cones(b: &[f64], hits: &mut [usize]) {
    let negatives = b.iter().filter(|&&x| x < 0.0).count();
    if negatives == 0 {
        hits[0] += 1;
        return;
    }
    if negatives == 1 && b.iter().sum::<f64>() <= 0.0 {
        let i = b.iter().position(|&x| x < 0.0).unwrap_or(0);
        hits[i + 1] += 1;
    }
}

/// Solid angle of the cone spanned by `n` rays in `Rⁿ`, as `(n−1)`-volume of
/// its intersection with the unit sphere.
pub fn solid_angle(rays: &[Point]) -> Result<f64> {
    let n = rays.len();
    if n < 2 || rays.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionError { expected: n, found: rays.first().map_or(0, |r| r.len()) });
    }
    let m = DMatrix::from_columns(rays);
    if linalg::rank(&m, Tolerances::default().rank) < n {
        return Err(Error::DegenerateCone);
    }
    match n {
        2 => Ok(planar_angle(&rays[0], &rays[1])),
        3 => Ok(trihedral_angle(&rays[0], &rays[1], &rays[2])),
        _ if n <= MAX_CACHED_DIM => SphereTable::global(n).cone_measure(&m),
        _ => SphereTable::new(n, table_size()).cone_measure(&m),
    }
}

fn planar_angle(a: &Point, b: &Point) -> f64 {
    let cross = a[0] * b[1] - a[1] * b[0];
    cross.abs().atan2(a.dot(b))
}

fn trihedral_angle(a: &Point, b: &Point, c: &Point) -> f64 {
    let (a, b, c) = (a.normalize(), b.normalize(), c.normalize());
    let det = a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0]);
    2.0 * det.abs().atan2(1.0 + a.dot(&b) + b.dot(&c) + c.dot(&a))
}

/// Solid angle at every vertex of a nondegenerate simplex.
pub fn vertex_solid_angles(points: &[Point]) -> Result<Vec<f64>> {
    let n = points.len() - 1;
    match n {
        2 | 3 => (0..=n)
            .map(|i| {
                let rays: Vec<Point> =
                    (0..=n).filter(|&j| j != i).map(|j| &points[j] - &points[i]).collect();
                solid_angle(&rays).map_err(|_| Error::DegenerateSimplex)
            })
            .collect(),
        _ if n <= MAX_CACHED_DIM => SphereTable::global(n).vertex_measures(points),
        _ => SphereTable::new(n, table_size()).vertex_measures(points),
    }
}

/// `α(x)`: the greatest vertex solid angle and its vertex, ties going to the
/// lowest index. A flat simplex with one vertex inside the hull of the others
/// gets exactly `V` at that vertex.
pub fn greatest_solid_angle(s: &Simplex) -> Result<(f64, usize)> {
    greatest_solid_angle_with(s, &Tolerances::default())
}

pub fn greatest_solid_angle_with(s: &Simplex, tol: &Tolerances) -> Result<(f64, usize)> {
    let n = s.dim();
    if !s.is_nondegenerate(tol) {
        let lambda = affine_dependency(s.vertices(), tol)?.ok_or(Error::DegenerateSimplex)?;
        let radon = partition_from_dependency(s.vertices(), lambda, tol);
        if radon.part1.len() != 1 {
            return Err(Error::InvalidConfiguration("flat simplex without an interior vertex"));
        }
        return Ok((half_sphere(n), radon.part1[0]));
    }
    let angles = vertex_solid_angles(s.vertices())?;
    Ok(argmax(&angles))
}

/// Values within `1e-12` (relative) of each other count as tied.
pub(crate) fn argmax(values: &[f64]) -> (f64, usize) {
    let mut best = (values[0], 0);
    for (i, &v) in values.iter().enumerate().skip(1) {
        if v > best.0 + 1e-12 * best.0.abs().max(1.0) {
            best = (v, i);
        }
    }
    best
}

/// `η = 2α/V − 1`, defined for `α ∈ [½V, V]`.
pub fn eta_from_alpha(alpha: f64, n: usize) -> Result<f64> {
    let v = half_sphere(n);
    let slack = 1e-12 * v;
    if alpha < 0.5 * v - slack || alpha > v + slack {
        return Err(Error::OutOfRange { value: alpha, lo: 0.5 * v, hi: v });
    }
    Ok((2.0 * alpha / v - 1.0).clamp(0.0, 1.0))
}

pub fn eta(s: &Simplex) -> Result<f64> {
    eta_from_alpha(greatest_solid_angle(s)?.0, s.dim())
}

/// `β = 3 − 4α/V` on `α ∈ (−½V, ¾V]`, so that `β(¾V) = 0`.
///
/// With `clamp` set, `α` outside the domain is moved to the nearest domain
/// point and the returned flag is `true`; otherwise that case is an error.
pub fn beta_from_alpha(alpha: f64, n: usize, clamp: bool) -> Result<(f64, bool)> {
    let v = half_sphere(n);
    let (lo, hi) = (-0.5 * v, 0.75 * v);
    let inside = alpha > lo && alpha <= hi;
    if !inside && !clamp {
        return Err(Error::OutOfRange { value: alpha, lo, hi });
    }
    let a = alpha.clamp(lo, hi);
    Ok((3.0 - 4.0 * a / v, !inside))
}

pub fn beta(s: &Simplex, clamp: bool) -> Result<(f64, bool)> {
    beta_from_alpha(greatest_solid_angle(s)?.0, s.dim(), clamp)
}

/// Solid angle at vertex `i` of a simplex, used where only one vertex matters.
pub fn vertex_solid_angle(points: &[Point], i: usize) -> Result<f64> {
    let rays: Vec<DVector<f64>> = points.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p - &points[i]).collect();
    solid_angle(&rays)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{random_points, regular_simplex, rng};
    use rand::Rng;

    fn v(xs: &[f64]) -> Point {
        DVector::from_row_slice(xs)
    }

    #[test]
    fn sphere_volumes() {
        assert!((sphere_volume(3) - 4.0 * PI).abs() < 1e-14);
        assert!((sphere_volume(4) - 2.0 * PI * PI).abs() < 1e-13);
        assert!((sphere_volume(5) - 8.0 * PI * PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn quarter_plane_and_octant() {
        assert!((solid_angle(&[v(&[1.0, 0.0]), v(&[0.0, 1.0])]).unwrap() - PI / 2.0).abs() < 1e-15);
        let oct = solid_angle(&[v(&[1.0, 0.0, 0.0]), v(&[0.0, 1.0, 0.0]), v(&[0.0, 0.0, 1.0])]).unwrap();
        assert!((oct - PI / 2.0).abs() < 1e-14);
        assert_eq!(solid_angle(&[v(&[1.0, 0.0]), v(&[2.0, 0.0])]), Err(Error::DegenerateCone));
    }

    #[test]
    fn regular_tetrahedron_vertex() {
        let p = regular_simplex(3);
        let a = vertex_solid_angles(&p).unwrap();
        let expect = (23.0f64 / 27.0).acos();
        for x in &a {
            assert!((x - expect).abs() < 1e-12);
        }
        let s = Simplex::new(p).unwrap();
        assert_eq!(greatest_solid_angle(&s).unwrap().1, 0);
    }

    #[test]
    fn trihedral_formula_matches_monte_carlo() {
        let mut g = rng(3);
        let rays = random_points(&mut g, 3, 3);
        let exact = solid_angle(&rays).unwrap();
        let inv = DMatrix::from_columns(&rays).try_inverse().unwrap();
        let samples = 400_000;
        let mut hits = 0;
        for _ in 0..samples {
            let p = crate::testutil::random_point(&mut g, 3);
            if (&inv * p).iter().all(|&x| x >= 0.0) {
                hits += 1;
            }
        }
        let mc = 4.0 * PI * hits as f64 / samples as f64;
        assert!((mc - exact).abs() < 0.02, "{mc} vs {exact}");
    }

    #[test]
    fn table_agrees_with_closed_form_in_three_dimensions() {
        let t = SphereTable::new(3, 1 << 18);
        let mut g = rng(5);
        for _ in 0..20 {
            let p = random_points(&mut g, 3, 4);
            let exact = vertex_solid_angles(&p).unwrap();
            let approx = t.vertex_measures(&p).unwrap();
            for (a, b) in exact.iter().zip(&approx) {
                assert!((a - b).abs() < 5e-3, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn orthant_in_four_dimensions() {
        let t = SphereTable::new(4, 1 << 16);
        let id = DMatrix::identity(4, 4);
        let got = t.cone_measure(&id).unwrap();
        assert!((got - sphere_volume(4) / 16.0).abs() < 1e-3);
    }

    #[test]
    fn triangle_angles_sum_to_pi() {
        let mut g = rng(9);
        for _ in 0..100 {
            let p = random_points(&mut g, 2, 3);
            let s: f64 = vertex_solid_angles(&p).unwrap().iter().sum();
            assert!((s - PI).abs() < 1e-9);
        }
    }

    #[test]
    fn additivity_under_splitting() {
        let mut g = rng(21);
        for _ in 0..50 {
            let r = random_points(&mut g, 3, 3);
            let w: f64 = g.gen_range(0.1..0.9);
            let mid = &r[0] * w + &r[1] * (1.0 - w);
            let whole = solid_angle(&r).unwrap();
            let a = solid_angle(&[r[0].clone(), mid.clone(), r[2].clone()]).unwrap();
            let b = solid_angle(&[mid, r[1].clone(), r[2].clone()]).unwrap();
            assert!((a + b - whole).abs() < 1e-12);
        }
    }

    #[test]
    fn flat_simplex_gets_half_sphere() {
        let s = Simplex::from_rows(&[&[0.0, 0.0, 0.0], &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.2, 0.2, 0.0]]).unwrap();
        let (a, i) = greatest_solid_angle(&s).unwrap();
        assert_eq!(i, 3);
        assert_eq!(a, half_sphere(3));
    }

    #[test]
    fn eta_and_beta_endpoints() {
        let v = half_sphere(3);
        assert_eq!(eta_from_alpha(0.5 * v, 3).unwrap(), 0.0);
        assert_eq!(eta_from_alpha(v, 3).unwrap(), 1.0);
        assert!(eta_from_alpha(0.2 * v, 3).is_err());
        assert_eq!(beta_from_alpha(0.75 * v, 3, false).unwrap(), (0.0, false));
        assert!(beta_from_alpha(0.9 * v, 3, false).is_err());
        assert_eq!(beta_from_alpha(0.9 * v, 3, true).unwrap(), (0.0, true));
    }
}
