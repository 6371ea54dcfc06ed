use alloc::vec::Vec;
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::simplex::Point;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut impl Rng) -> f64 {
    // Box-Muller; rand_distr is not a dependency
    let u: f64 = rng.gen_range(f64::EPSILON..1.0);
    let v: f64 = rng.gen();
    (-2.0 * u.ln()).sqrt() * (2.0 * core::f64::consts::PI * v).cos()
}

pub fn random_point(rng: &mut impl Rng, n: usize) -> Point {
    DVector::from_fn(n, |_, _| gaussian(rng))
}

pub fn random_points(rng: &mut impl Rng, n: usize, count: usize) -> Vec<Point> {
    (0..count).map(|_| random_point(rng, n)).collect()
}

pub fn random_matrix(rng: &mut impl Rng, n: usize) -> DMatrix<f64> {
    DMatrix::from_fn(n, n, |_, _| gaussian(rng))
}

/// Haar-ish random orthogonal matrix via QR with sign fix.
pub fn random_orthogonal(rng: &mut impl Rng, n: usize) -> DMatrix<f64> {
    let m = random_matrix(rng, n);
    let qr = m.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            let mut c = q.column_mut(j);
            c *= -1.0;
        }
    }
    q
}

/// Unit-edge regular simplex: the origin and the columns of the standard
/// regular basis.
pub fn regular_simplex(n: usize) -> Vec<Point> {
    let a = crate::regularize::standard_a(n);
    let mut v = Vec::with_capacity(n + 1);
    v.push(DVector::zeros(n));
    for j in 0..n {
        v.push(a.column(j).into_owned());
    }
    v
}

pub fn max_dist(a: &[Point], b: &[Point]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
