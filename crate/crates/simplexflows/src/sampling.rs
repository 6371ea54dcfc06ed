//! Seeded random configurations.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use simplexflows_core::{ComplexKind, Configuration, Point};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn point(g: &mut impl Rng, n: usize) -> Point {
    DVector::from_fn(n, |_, _| g.gen_range(-1.0..1.0))
}

pub fn points(g: &mut impl Rng, n: usize, count: usize) -> Vec<Point> {
    (0..count).map(|_| point(g, n)).collect()
}

pub fn matrix(g: &mut impl Rng, n: usize) -> DMatrix<f64> {
    DMatrix::from_fn(n, n, |_, _| g.gen_range(-1.0..1.0))
}

/// Haar-distributed orthogonal matrix from the QR factorization of a
/// Gaussian matrix.
pub fn orthogonal(g: &mut impl Rng, n: usize) -> DMatrix<f64> {
    let m = DMatrix::from_fn(n, n, |_, _| gaussian(g));
    let qr = m.qr();
    let (q, r) = (qr.q(), qr.r());
    let signs = DMatrix::from_diagonal(&DVector::from_fn(n, |i, _| r[(i, i)].signum()));
    q * signs
}

pub fn gaussian(g: &mut impl Rng) -> f64 {
    let u: f64 = g.gen_range(f64::EPSILON..1.0);
    let v: f64 = g.gen();
    (-2.0 * u.ln()).sqrt() * (std::f64::consts::TAU * v).cos()
}

/// Weights in `[lo, 1)`, normalized to sum to one.
fn weights(g: &mut impl Rng, count: usize, lo: f64) -> Vec<f64> {
    let w: Vec<f64> = (0..count).map(|_| g.gen_range(lo..1.0)).collect();
    let total: f64 = w.iter().sum();
    w.into_iter().map(|x| x / total).collect()
}

fn combination(pts: &[Point], w: &[f64]) -> Point {
    pts.iter().zip(w).fold(DVector::zeros(pts[0].len()), |acc, (p, wi)| acc + p * *wi)
}

/// Random well-conditioned `K` configuration.
pub fn random_k(g: &mut impl Rng, n: usize) -> Configuration {
    loop {
        let p = points(g, n, n + 1);
        if let Ok(c) = Configuration::new(ComplexKind::K, p) {
            let m = simplexflows_core::linalg::difference_matrix(&c.points, 0);
            if simplexflows_core::linalg::conditioning(&m) > 1e-3 {
                return c;
            }
        }
    }
}

/// A `K` configuration with vertex `0` at height `delta` over an interior
/// point of the opposite face.
pub fn near_flat_k(g: &mut impl Rng, n: usize, delta: f64) -> Configuration {
    loop {
        let face = points(g, n, n);
        let inner = combination(&face, &weights(g, n, 0.2));
        let normal = simplexflows_core::face::unit_normal(&face);
        let mut p = vec![inner + normal * delta];
        p.extend(face);
        if let Ok(c) = Configuration::new(ComplexKind::K, p) {
            return c;
        }
    }
}

/// Which kind of degeneracy a random `L` configuration is built with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LKind {
    Interior,
    EdgeFace,
    Boundary,
}

/// Random `L` configuration of the given kind, with labels shuffled.
pub fn random_l(g: &mut impl Rng, n: usize, kind: LKind) -> Configuration {
    loop {
        let mut p = match kind {
            LKind::Interior => {
                let mut p = points(g, n, n + 1);
                let w = weights(g, n + 1, 0.05);
                p.push(combination(&p, &w));
                p
            }
            LKind::EdgeFace => {
                let face = points(g, n, n);
                let cross = combination(&face, &weights(g, n, 0.05));
                let dir = point(g, n);
                let mut p = face;
                p.push(&cross + &dir * g.gen_range(0.1..1.5));
                p.push(&cross - &dir * g.gen_range(0.1..1.5));
                p
            }
            LKind::Boundary => {
                let mut p = points(g, n, n + 1);
                let face = &p[1..];
                let w = weights(g, n, 0.05);
                let on = combination(face, &w);
                p.push(on);
                p
            }
        };
        let perm = shuffle(g, p.len());
        p = perm.iter().map(|&i| p[i].clone()).collect();
        if let Ok(c) = Configuration::new(ComplexKind::L, p) {
            let tol = simplexflows_core::Tolerances::default();
            if let Ok(k) = simplexflows_core::classify(&c, &tol) {
                use simplexflows_core::DegeneracyClass as D;
                let same = matches!(
                    (kind, &k.class),
                    (LKind::Interior, D::Interior { .. }) | (LKind::EdgeFace, D::EdgeFace { .. }) | (LKind::Boundary, D::Boundary { .. })
                );
                if same && k.margin > 1e-3 {
                    return c;
                }
            }
        }
    }
}

pub fn shuffle(g: &mut impl Rng, len: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..len).collect();
    for i in (1..len).rev() {
        perm.swap(i, g.gen_range(0..=i));
    }
    perm
}
