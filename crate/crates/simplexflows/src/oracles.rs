//! Independent linear-programming checks for Radon partitions and insphere
//! centers.

use minilp::{ComparisonOp, OptimizationDirection, Problem};
use nalgebra::DVector;
use simplexflows_core::measure::outward_normal;
use simplexflows_core::Point;

/// Whether the convex hulls of two point sets intersect.
pub fn hulls_intersect(a: &[Point], b: &[Point]) -> bool {
    let n = a[0].len();
    let mut lp = Problem::new(OptimizationDirection::Minimize);
    let la: Vec<_> = a.iter().map(|_| lp.add_var(0.0, (0.0, f64::INFINITY))).collect();
    let lb: Vec<_> = b.iter().map(|_| lp.add_var(0.0, (0.0, f64::INFINITY))).collect();
    lp.add_constraint(la.iter().map(|&v| (v, 1.0)).collect::<Vec<_>>(), ComparisonOp::Eq, 1.0);
    lp.add_constraint(lb.iter().map(|&v| (v, 1.0)).collect::<Vec<_>>(), ComparisonOp::Eq, 1.0);
    for k in 0..n {
        let mut row: Vec<_> = la.iter().zip(a).map(|(&v, p)| (v, p[k])).collect();
        row.extend(lb.iter().zip(b).map(|(&v, p)| (v, -p[k])));
        lp.add_constraint(row, ComparisonOp::Eq, 0.0);
    }
    lp.solve().is_ok()
}

/// Every split of the points into two nonempty parts whose hulls meet, with
/// the part containing index 0 listed second.
pub fn radon_splits(points: &[Point]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let m = points.len();
    let mut out = Vec::new();
    // masks without bit 0 select the side not containing point 0
    for mask in 1u32..(1 << m) {
        if mask & 1 != 0 {
            continue;
        }
        let (one, two): (Vec<usize>, Vec<usize>) = (0..m).partition(|&i| mask >> i & 1 == 1);
        let pa: Vec<Point> = one.iter().map(|&i| points[i].clone()).collect();
        let pb: Vec<Point> = two.iter().map(|&i| points[i].clone()).collect();
        if hulls_intersect(&pa, &pb) {
            out.push((one, two));
        }
    }
    out
}

/// Center and radius of the largest ball inside a nondegenerate simplex.
pub fn chebyshev_center(points: &[Point]) -> Option<(Point, f64)> {
    let n = points[0].len();
    let mut lp = Problem::new(OptimizationDirection::Maximize);
    let x: Vec<_> = (0..n).map(|_| lp.add_var(0.0, (f64::NEG_INFINITY, f64::INFINITY))).collect();
    let r = lp.add_var(1.0, (0.0, f64::INFINITY));
    for i in 0..points.len() {
        let nu = outward_normal(points, i);
        let on = &points[(i + 1) % points.len()];
        let mut row: Vec<_> = x.iter().enumerate().map(|(k, &v)| (v, nu[k])).collect();
        row.push((r, 1.0));
        lp.add_constraint(row, ComparisonOp::Le, nu.dot(on));
    }
    let sol = lp.solve().ok()?;
    Some((DVector::from_fn(n, |k, _| sol[x[k]]), sol[r]))
}
