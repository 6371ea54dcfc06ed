//! The verification suite behind `simplexflows selfcheck` and the
//! acceptance test. Every check is seeded and deterministic.

use std::time::Instant;

use nalgebra::DVector;
use rand::Rng;
use simplexflows_core::group;
use simplexflows_core::linalg::centroid;
use simplexflows_core::regularize::{
    basis_swap_b, bimedian_basis, from_basis, inradius_flow_with, irregularity_potential, mu_nu, omega, phi,
    regularize_bimedian, tetra_from_bimedian, FlowOptions,
};
use simplexflows_core::retract_k::{is_pyramid_k, KOptions, KRetraction};
use simplexflows_core::retract_l::{is_pyramid_l, s_param, LOptions, LRetraction};
use simplexflows_core::simplex::relative_edge_spread;
use simplexflows_core::solid_angle::{half_sphere, sphere_volume, vertex_solid_angle, vertex_solid_angles};
use simplexflows_core::{radon_partition, Point, Simplex, Tolerances, Trajectory};

use crate::oracles::radon_splits;
use crate::sampling::{self, LKind};

#[derive(Debug, Clone)]
pub struct Criterion {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl std::fmt::Display for Criterion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{mark} [{:>2}] {} ({:.2} s): {}", self.id, self.name, self.seconds, self.detail)
    }
}

type Check = fn(u64) -> (bool, String);

pub const CRITERIA: [(usize, &str, f64, Check); 11] = [
    (1, "Löwdin path is right O(n)-equivariant", 5.0, lowdin_equivariance),
    (2, "Ω is relabeling-equivariant and ends regular", f64::INFINITY, omega_equivariance),
    (3, "vertex solid angles sum to at most half the sphere", f64::INFINITY, solid_angle_bound),
    (4, "regular basis entries μ, ν", f64::INFINITY, mu_nu_identities),
    (5, "retractions end in pyramids along embedded paths", 60.0, retraction_endpoints),
    (6, "retractions glue continuously across type changes", f64::INFINITY, gluing_continuity),
    (7, "s(m, q) boundary values", f64::INFINITY, s_boundary),
    (8, "inradius flow regularizes tetrahedra", f64::INFINITY, inradius_flow_suite),
    (9, "bimedian regularization of tetrahedra", f64::INFINITY, bimedian_suite),
    (10, "π₁(C(K₄)) relations, translations and S₄ image", 2.0, group_suite),
    (11, "Radon partition matches brute-force LP oracle", f64::INFINITY, radon_oracle),
];

/// Runs one criterion by id; the time budget, where there is one, is part
/// of the verdict.
pub fn run(id: usize, seed: u64) -> Option<Criterion> {
    let &(id, name, budget, check) = CRITERIA.iter().find(|c| c.0 == id)?;
    let start = Instant::now();
    let (ok, mut detail) = check(seed);
    let seconds = start.elapsed().as_secs_f64();
    let in_time = seconds < budget;
    if !in_time {
        detail = format!("{detail}; over the {budget} s budget");
    }
    Some(Criterion { id, name, passed: ok && in_time, detail, seconds })
}

pub fn run_all(seed: u64) -> Vec<Criterion> {
    CRITERIA.iter().filter_map(|c| run(c.0, seed)).collect()
}

fn max_dist(a: &[Point], b: &[Point]) -> f64 {
    a.iter().zip(b).map(|(p, q)| (p - q).norm()).fold(0.0, f64::max)
}

fn traj_dist(a: &Trajectory, b: &Trajectory) -> f64 {
    a.samples.iter().zip(&b.samples).map(|(x, y)| max_dist(&x.points, &y.points)).fold(0.0, f64::max)
}

fn lowdin_equivariance(seed: u64) -> (bool, String) {
    let mut g = sampling::rng(seed);
    let mut worst = 0.0f64;
    let mut failures = 0;
    for k in 0..1000 {
        let n = 2 + k % 5;
        let x = sampling::matrix(&mut g, n);
        let q = sampling::orthogonal(&mut g, n);
        let t: f64 = g.gen();
        match (phi(&(&x * &q), t), phi(&x, t)) {
            (Ok(a), Ok(b)) => {
                let err = (a - b * &q).norm() / x.norm();
                worst = worst.max(err);
                failures += (err > 1e-9) as usize;
            }
            _ => failures += 1,
        }
    }
    (failures == 0, format!("1000 samples, worst relative error {worst:.2e}, {failures} over 1e-9"))
}

fn omega_equivariance(seed: u64) -> (bool, String) {
    let mut g = sampling::rng(seed ^ 2);
    let (mut worst_eq, mut worst_spread) = (0.0f64, 0.0f64);
    let mut failures = 0;
    for k in 0..1000 {
        let n = 2 + k % 5;
        let x = sampling::matrix(&mut g, n);
        let b = basis_swap_b(n, g.gen_range(1..=n));
        let t: f64 = g.gen();
        let (Ok(lhs), Ok(rhs), Ok(end)) = (omega(&(&x * &b), t), omega(&x, t), omega(&x, 1.0)) else {
            failures += 1;
            continue;
        };
        let err = (lhs - rhs * &b).norm();
        let spread = relative_edge_spread(&from_basis(&end));
        worst_eq = worst_eq.max(err);
        worst_spread = worst_spread.max(spread);
        failures += (err > 1e-9 || spread >= 1e-8) as usize;
    }
    let detail =
        format!("1000 samples, worst ‖Ω(xB)−Ω(x)B‖ {worst_eq:.2e}, worst edge spread at t=1 {worst_spread:.2e}");
    (failures == 0, detail)
}

/// `n+1` points in the hyperplane `x_n = 0` with the given Radon type, then
/// vertex `0` lifted by `delta`.
fn flattened(g: &mut impl Rng, n: usize, inside: bool, delta: f64) -> Vec<Point> {
    let lift = |p: &DVector<f64>| DVector::from_fn(n, |i, _| if i < n - 1 { p[i] } else { 0.0 });
    loop {
        let base: Vec<Point> = sampling::points(g, n, n + 1).iter().map(lift).collect();
        let mut p = base.clone();
        if inside {
            // vertex 0 strictly inside the hull of the others
            let w: Vec<f64> = (0..n).map(|_| g.gen_range(0.2..1.0)).collect();
            let total: f64 = w.iter().sum();
            p[0] = p[1..].iter().zip(&w).fold(DVector::zeros(n), |acc, (q, wi)| acc + q * (wi / total));
        } else {
            // the edge 0-1 crosses the face on the remaining points
            let face = &base[2..];
            let w: Vec<f64> = (0..n - 1).map(|_| g.gen_range(0.2..1.0)).collect();
            let total: f64 = w.iter().sum();
            let c = face.iter().zip(&w).fold(DVector::zeros(n), |acc, (q, wi)| acc + q * (wi / total));
            let dir = lift(&sampling::point(g, n));
            p[0] = &c + &dir;
            p[1] = &c - &dir * 0.7;
        }
        p[0][n - 1] = delta;
        if Simplex::new(p.clone()).is_ok() {
            return p;
        }
    }
}

fn solid_angle_bound(seed: u64) -> (bool, String) {
    let mut g = sampling::rng(seed ^ 3);
    let mut failures = 0;
    let mut worst_planar = 0.0f64;
    for n in [2, 3] {
        let full = sphere_volume(n);
        for _ in 0..1000 {
            let p = sampling::random_k(&mut g, n).points;
            let Ok(a) = vertex_solid_angles(&p) else {
                failures += 1;
                continue;
            };
            let total = 2.0 * a.iter().sum::<f64>();
            failures += !(total > 0.0 && total <= full + 1e-6) as usize;
            if n == 2 {
                worst_planar = worst_planar.max((total - full).abs());
                failures += ((total - full).abs() > 1e-9) as usize;
            }
        }
    }
    let mut worst_sampled = 0.0f64;
    for _ in 0..100 {
        let p = sampling::random_k(&mut g, 4).points;
        let Ok(a) = vertex_solid_angles(&p) else {
            failures += 1;
            continue;
        };
        let excess = 2.0 * a.iter().sum::<f64>() - sphere_volume(4);
        worst_sampled = worst_sampled.max(excess);
        failures += (excess > 1e-2 || a.iter().any(|&x| x <= 0.0)) as usize;
    }
    // near-flat witnesses for both bounds
    let mut witnesses = Vec::new();
    for n in [3, 4] {
        let v = half_sphere(n);
        let hi = flattened(&mut g, n, true, 1e-4);
        let lo = flattened(&mut g, n, false, 1e-4);
        let sum = |p: &[Point]| vertex_solid_angles(p).map(|a| a.iter().sum::<f64>()).unwrap_or(f64::NAN);
        let (h, l) = (sum(&hi) / v, sum(&lo) / v);
        failures += !(0.98..=1.0 + 1e-2).contains(&h) as usize;
        failures += !(0.0..=0.02).contains(&l) as usize;
        witnesses.push(format!("n={n}: {h:.4}V, {l:.4}V"));
    }
    let detail = format!(
        "2000 simplices n=2,3 and 100 n=4; planar sum error {worst_planar:.1e}, n=4 excess {worst_sampled:.1e}; witnesses {}",
        witnesses.join(", ")
    );
    (failures == 0, detail)
}

fn mu_nu_identities(_seed: u64) -> (bool, String) {
    let mut worst = 0.0f64;
    for n in 2..=12 {
        let (mu, nu) = mu_nu(n);
        let a = (mu * mu + (n as f64 - 1.0) * nu * nu - 1.0).abs();
        let b = (2.0 * (mu - nu).powi(2) - 1.0).abs();
        worst = worst.max(a).max(b);
    }
    (worst <= 1e-12, format!("n = 2..12, worst residual {worst:.1e}"))
}

fn retraction_endpoints(seed: u64) -> (bool, String) {
    let mut g = sampling::rng(seed ^ 5);
    let mut k_fail = Vec::new();
    for k in 0..500 {
        let n = 3 + k % 2;
        let c = match k % 10 {
            8 => sampling::near_flat_k(&mut g, n, 1e-2),
            9 => sampling::near_flat_k(&mut g, n, 1e-3),
            _ => sampling::random_k(&mut g, n),
        };
        let ok = KRetraction::new(&c, KOptions::default())
            .and_then(|r| r.trajectory_checked(64))
            .map(|t| {
                let end = simplexflows_core::Configuration { kind: c.kind, points: t.last().unwrap().points.clone() };
                is_pyramid_k(&end, 1e-6)
            });
        if !matches!(ok, Ok(true)) {
            k_fail.push(format!("K#{k}: {ok:?}"));
        }
    }
    let mut l_fail = Vec::new();
    let kinds = [LKind::Interior, LKind::EdgeFace, LKind::Boundary];
    for k in 0..500 {
        let c = sampling::random_l(&mut g, 3, kinds[k % 3]);
        let ok = LRetraction::new(&c, LOptions::default())
            .and_then(|r| r.trajectory_checked(96))
            .map(|t| {
                let end = simplexflows_core::Configuration { kind: c.kind, points: t.last().unwrap().points.clone() };
                is_pyramid_l(&end, 1e-6)
            });
        if !matches!(ok, Ok(true)) {
            l_fail.push(format!("L#{k}: {ok:?}"));
        }
    }
    let detail = format!(
        "K: {}/500 (n=3,4, 64 samples), L: {}/500 (n=3, 96 samples){}",
        500 - k_fail.len(),
        500 - l_fail.len(),
        k_fail.iter().chain(&l_fail).take(3).map(|s| format!("; {s}")).collect::<String>()
    );
    (k_fail.is_empty() && l_fail.is_empty(), detail)
}

/// Regular base triangle in `z = 0` and a slightly off-axis apex at height
/// `h`; the apex angle decreases with `h`.
fn tent(h: f64) -> Vec<Point> {
    let r = 1.0 / 3f64.sqrt();
    let mut p = vec![DVector::from_vec(vec![0.03, -0.02, h])];
    for k in 0..3 {
        let a = std::f64::consts::TAU * k as f64 / 3.0;
        p.push(DVector::from_vec(vec![r * a.cos(), r * a.sin(), 0.0]));
    }
    p
}

fn gluing_continuity(seed: u64) -> (bool, String) {
    let deltas = [1e-2, 1e-3, 1e-4];
    // height where the apex angle is V/2
    let half = 0.5 * half_sphere(3);
    let (mut lo, mut hi) = (1e-3, 10.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if vertex_solid_angle(&tent(mid), 0).unwrap_or(0.0) > half {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let h0 = 0.5 * (lo + hi);
    let k_traj = |h: f64| {
        let c = simplexflows_core::Configuration::new(simplexflows_core::ComplexKind::K, tent(h)).ok()?;
        KRetraction::new(&c, KOptions::default()).ok()?.trajectory(64).ok()
    };
    let mut k_gaps = Vec::new();
    for d in deltas {
        match (k_traj(h0 * (1.0 - d)), k_traj(h0 * (1.0 + d))) {
            (Some(a), Some(b)) => k_gaps.push(traj_dist(&a, &b)),
            _ => k_gaps.push(f64::NAN),
        }
    }
    // a vertex crossing a would-be face of a random L configuration
    let mut g = sampling::rng(seed ^ 6);
    let base = sampling::random_k(&mut g, 3).points;
    let fc = centroid(&base[1..]);
    let toward = &base[0] - &fc;
    let on = &base[1] * 0.2 + &base[2] * 0.3 + &base[3] * 0.5;
    let l_traj = |d: f64| {
        let mut p = base.clone();
        p.push(&on + &toward * d);
        let c = simplexflows_core::Configuration::new(simplexflows_core::ComplexKind::L, p).ok()?;
        LRetraction::new(&c, LOptions::default()).ok()?.trajectory(96).ok()
    };
    let mut l_gaps = Vec::new();
    for d in deltas {
        match (l_traj(d), l_traj(-d)) {
            (Some(a), Some(b)) => l_gaps.push(traj_dist(&a, &b)),
            _ => l_gaps.push(f64::NAN),
        }
    }
    let decreasing = |v: &[f64]| v.windows(2).all(|w| w[1] < w[0]) && v.iter().all(|x| x.is_finite());
    let fmt = |v: &[f64]| v.iter().map(|x| format!("{x:.2e}")).collect::<Vec<_>>().join(" > ");
    let detail = format!("K across α = V/2: {}; L across a boundary: {}", fmt(&k_gaps), fmt(&l_gaps));
    (decreasing(&k_gaps) && decreasing(&l_gaps), detail)
}

fn s_boundary(_seed: u64) -> (bool, String) {
    let mut worst = 0.0f64;
    let mut checked = 0;
    let mut failures = 0;
    for n in 2..=6 {
        let nf = n as f64;
        for i in 0..=100 {
            for j in 0..=100 {
                let q = i as f64 / 100.0;
                let m = (1.0 - q) / nf * j as f64 / 100.0;
                let s = s_param(m, q, n);
                if i == 0 && j == 0 {
                    failures += s.is_ok() as usize;
                    continue;
                }
                let Ok(s) = s else {
                    failures += 1;
                    continue;
                };
                let expect = if j == 0 {
                    Some(1.0)
                } else if i == 0 {
                    Some(0.0)
                } else if j == 100 {
                    Some(q)
                } else {
                    failures += !(s >= q - 1e-12 && s <= 1.0 + 1e-12) as usize;
                    None
                };
                if let Some(e) = expect {
                    worst = worst.max((s - e).abs());
                    checked += 1;
                }
            }
        }
    }
    let ok = failures == 0 && worst <= 1e-12;
    (ok, format!("101×101 grid for n = 2..6, {checked} boundary points, worst error {worst:.1e}"))
}

fn inradius_flow_suite(seed: u64) -> (bool, String) {
    let mut g = sampling::rng(seed ^ 8);
    let mut failures = Vec::new();
    let (mut worst_res, mut worst_spread, mut worst_sim) = (0.0f64, 0.0f64, 0.0f64);
    for k in 0..100 {
        let s = Simplex::new(sampling::random_k(&mut g, 3).points).expect("random tetrahedron");
        let res = match inradius_flow_with(&s, &FlowOptions::default()) {
            Ok(r) => r,
            Err(e) => {
                failures.push(format!("#{k}: {e}"));
                continue;
            }
        };
        let monotone = res.potentials.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-14));
        let spread = relative_edge_spread(res.terminal());
        worst_res = worst_res.max(res.residual);
        worst_spread = worst_spread.max(spread);
        let q = sampling::orthogonal(&mut g, 3);
        let shift = sampling::point(&mut g, 3);
        let scale = g.gen_range(0.2..5.0);
        let moved = s.map_points(|p| &q * p * scale + &shift);
        let (p0, p1) = (irregularity_potential(&s), irregularity_potential(&moved));
        let sim = match (p0, p1) {
            (Ok(a), Ok(b)) => (a - b).abs() / a,
            _ => f64::INFINITY,
        };
        worst_sim = worst_sim.max(sim);
        if !monotone || res.residual >= 1e-6 || spread >= 1e-4 || sim > 1e-10 {
            failures.push(format!("#{k}"));
        }
    }
    let detail = format!(
        "100 tetrahedra; worst residual {worst_res:.1e}, edge spread {worst_spread:.1e}, similarity error {worst_sim:.1e}{}",
        failures.iter().take(3).map(|s| format!("; {s}")).collect::<String>()
    );
    (failures.is_empty(), detail)
}

fn bimedian_suite(seed: u64) -> (bool, String) {
    let mut g = sampling::rng(seed ^ 9);
    let (mut worst_reg, mut worst_sheet, mut worst_trip) = (0.0f64, 0.0f64, 0.0f64);
    let mut failures = 0;
    for _ in 0..100 {
        let s = Simplex::new(sampling::random_k(&mut g, 3).points).expect("random tetrahedron");
        let (Ok(reg), Ok(b)) = (regularize_bimedian(&s, 1.0), bimedian_basis(&s)) else {
            failures += 1;
            continue;
        };
        worst_reg = worst_reg.max(relative_edge_spread(reg.vertices()));
        let back = tetra_from_bimedian(&b, b.sheet());
        worst_trip = worst_trip.max(max_dist(back.vertices(), s.vertices()));
        let other = tetra_from_bimedian(&b, -b.sheet());
        let reflected: Vec<Point> = back.vertices().iter().map(|p| &b.center * 2.0 - p).collect();
        let scale = s.edge_lengths().iter().cloned().fold(0.0, f64::max);
        worst_sheet = worst_sheet.max(max_dist(other.vertices(), &reflected) / scale);
    }
    let ok = failures == 0 && worst_reg < 1e-8 && worst_trip < 1e-10 && worst_sheet < 1e-14;
    let detail = format!(
        "100 tetrahedra; edge spread at t=1 {worst_reg:.1e}, round trip {worst_trip:.1e}, sheets vs −I {worst_sheet:.1e}"
    );
    (ok, detail)
}

fn group_suite(_seed: u64) -> (bool, String) {
    let checks = group::verify_all();
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    let detail = format!("{}/{} identities hold{}", checks.len() - failed.len(), checks.len(), if failed.is_empty() {
        String::new()
    } else {
        format!("; failing: {}", failed.join(", "))
    });
    (failed.is_empty(), detail)
}

fn radon_oracle(seed: u64) -> (bool, String) {
    let mut g = sampling::rng(seed ^ 11);
    let tol = Tolerances::default();
    let mut failures = Vec::new();
    for k in 0..200 {
        let n = 1 + k % 4;
        let p = sampling::points(&mut g, n, n + 2);
        let Ok(r) = radon_partition(&p, &tol) else {
            failures.push(format!("#{k}: no partition"));
            continue;
        };
        let splits = radon_splits(&p);
        let (mut a, mut b) = (r.part1.clone(), r.part2.clone());
        if a.contains(&0) {
            std::mem::swap(&mut a, &mut b);
        }
        a.sort_unstable();
        b.sort_unstable();
        if splits != vec![(a, b)] {
            failures.push(format!("#{k}: oracle {splits:?}"));
        }
    }
    let detail = format!(
        "{}/200 point sets, n = 1..4{}",
        200 - failures.len(),
        failures.iter().take(3).map(|s| format!("; {s}")).collect::<String>()
    );
    (failures.is_empty(), detail)
}

