use nalgebra::{DMatrix, DVector};
use simplexflows_core::classify::{classify, DegeneracyClass};
use simplexflows_core::measure::incenter_inradius;
use simplexflows_core::regularize::{bimedian_basis, omega, phi, standard_a, tetra_from_bimedian};
use simplexflows_core::retract_k::{is_pyramid_k, psi, pyramid_k, wide_face};
use simplexflows_core::retract_l::{is_pyramid_l, lambda, s_param};
use simplexflows_core::solid_angle::{beta_from_alpha, eta_from_alpha, greatest_solid_angle, half_sphere, solid_angle};
use simplexflows_core::{induced_affine_map, radon_partition, ComplexKind, Configuration, Error, Point, Simplex, Tolerances};

fn p(v: &[f64]) -> Point {
    DVector::from_column_slice(v)
}

fn regular_tetra() -> Vec<Point> {
    let a = standard_a(3);
    let mut v = vec![DVector::zeros(3)];
    v.extend(a.column_iter().map(|c| c.into_owned()));
    v
}

#[test]
fn radon_examples() {
    let tol = Tolerances::default();
    let r = radon_partition(&[p(&[0.0, 0.0]), p(&[1.0, 0.0]), p(&[0.0, 1.0]), p(&[0.25, 0.25])], &tol).unwrap();
    assert_eq!(r.part1, vec![3]);
    assert_eq!(r.part2, vec![0, 1, 2]);
    assert!((r.radon_point - p(&[0.25, 0.25])).norm() < 1e-14);
    let r = radon_partition(&[p(&[0.0, 0.0]), p(&[1.0, 0.0]), p(&[1.0, 1.0]), p(&[0.0, 1.0])], &tol).unwrap();
    let mut parts = [r.part1.clone(), r.part2.clone()];
    parts.sort();
    assert_eq!(parts, [vec![0, 2], vec![1, 3]]);
    assert!((r.radon_point - p(&[0.5, 0.5])).norm() < 1e-14);
}

#[test]
fn classification_examples() {
    let tol = Tolerances::default();
    let k = Configuration::new(ComplexKind::K, regular_tetra()).unwrap();
    assert_eq!(classify(&k, &tol).unwrap().class, DegeneracyClass::NonDegenerate);
    let flat = Configuration::new(
        ComplexKind::K,
        vec![p(&[0.0, 0.0, 0.0]), p(&[3.0, 0.0, 0.0]), p(&[0.0, 3.0, 0.0]), p(&[1.0, 1.0, 0.0])],
    )
    .unwrap();
    assert_eq!(classify(&flat, &tol).unwrap().class, DegeneracyClass::Hyperplane { interior: 3 });
    let mut pts = regular_tetra();
    pts.push(simplexflows_core::linalg::centroid(&pts));
    let l = Configuration::new(ComplexKind::L, pts).unwrap();
    assert_eq!(classify(&l, &tol).unwrap().class, DegeneracyClass::Interior { vertex: 4 });
}

#[test]
fn solid_angle_examples() {
    let half_pi = std::f64::consts::FRAC_PI_2;
    assert!((solid_angle(&[p(&[1.0, 0.0]), p(&[0.0, 1.0])]).unwrap() - half_pi).abs() < 1e-15);
    let octant = solid_angle(&[p(&[1.0, 0.0, 0.0]), p(&[0.0, 1.0, 0.0]), p(&[0.0, 0.0, 1.0])]).unwrap();
    assert!((octant - half_pi).abs() < 1e-14);
    let s = Simplex::new(regular_tetra()).unwrap();
    let (a, i) = greatest_solid_angle(&s).unwrap();
    assert!((a - (23.0f64 / 27.0).acos()).abs() < 1e-12);
    assert!((a - 0.551286).abs() < 1e-6);
    assert_eq!(i, 0);
    let v = half_sphere(3);
    assert_eq!(eta_from_alpha(0.5 * v, 3).unwrap(), 0.0);
    assert_eq!(eta_from_alpha(v, 3).unwrap(), 1.0);
    assert!(beta_from_alpha(0.75 * v, 3, false).unwrap().0.abs() < 1e-15);
}

#[test]
fn affine_map_examples() {
    let face: Vec<Point> = (0..3).map(|k| p(&[k as f64, (k * k) as f64 * 0.5, 1.0 - k as f64])).collect();
    let nu = simplexflows_core::face::unit_normal(&face);
    let id = induced_affine_map(&face, &face, &nu, &nu).unwrap();
    assert!((id.linear.clone() - DMatrix::identity(3, 3)).norm() < 1e-12);
    assert!(id.translation.norm() < 1e-12);
    let q = nalgebra::Rotation3::from_euler_angles(0.7, 0.2, -0.5).matrix().clone_owned();
    let q = DMatrix::from_iterator(3, 3, q.iter().copied());
    let moved: Vec<Point> = face.iter().map(|x| &q * x).collect();
    let m = induced_affine_map(&face, &moved, &nu, &(&q * &nu)).unwrap();
    assert!((m.linear.clone() - &q).norm() < 1e-12);
    assert!(m.translation.norm() < 1e-12);
    let back = m.inverse().unwrap().compose(&m);
    assert!((back.linear - DMatrix::identity(3, 3)).norm() < 1e-10);
}

#[test]
fn insphere_of_regular_tetrahedron() {
    let (_, r) = incenter_inradius(&Simplex::new(regular_tetra()).unwrap()).unwrap();
    assert!((r - 1.0 / (2.0 * 6f64.sqrt())).abs() < 1e-14);
}

#[test]
fn matrix_flow_examples() {
    let x = DMatrix::from_diagonal(&DVector::from_vec(vec![2.0, 1.0]));
    let y = phi(&x, 0.5).unwrap();
    assert!((y - DMatrix::from_diagonal(&DVector::from_vec(vec![1.5, 1.0]))).norm() < 1e-15);
    for n in 2..=6 {
        let a = standard_a(n);
        for t in [0.0, 0.4, 1.0] {
            assert!((omega(&a, t).unwrap() - &a).norm() < 1e-12);
        }
    }
}

#[test]
fn bimedian_examples() {
    let t = Simplex::from_rows(&[&[1.0, 1.0, 1.0], &[1.0, -1.0, -1.0], &[-1.0, 1.0, -1.0], &[-1.0, -1.0, 1.0]]).unwrap();
    let b = bimedian_basis(&t).unwrap();
    assert!((b.e.clone() - DMatrix::identity(3, 3)).norm() < 1e-15);
    let (a, c) = (tetra_from_bimedian(&b, 1), tetra_from_bimedian(&b, -1));
    for (u, v) in a.vertices().iter().zip(c.vertices()) {
        assert_eq!(u, &-v);
    }
}

#[test]
fn k_retraction_examples() {
    let reg = Configuration::new(ComplexKind::K, regular_tetra()).unwrap();
    assert!(matches!(wide_face(&reg), Err(Error::NotGated { .. })));
    let end = psi(&reg, 1.0).unwrap();
    assert!(is_pyramid_k(&end, 1e-9));
    let flat = Configuration::new(
        ComplexKind::K,
        vec![p(&[0.0, 0.0, 0.0]), p(&[3.0, 0.0, 0.0]), p(&[0.0, 3.0, 0.0]), p(&[1.0, 1.0, 0.0])],
    )
    .unwrap();
    assert_eq!(wide_face(&flat).unwrap().0, 3);
    let pk = pyramid_k(&psi(&flat, 1.0).unwrap(), 1e-6).unwrap();
    assert!(pk.height.abs() < 1e-6);
    assert_eq!(pk.apex, 3);
}

#[test]
fn l_retraction_examples() {
    assert_eq!(s_param(0.0, 0.5, 3).unwrap(), 1.0);
    assert_eq!(s_param(0.1, 0.0, 3).unwrap(), 0.0);
    assert!((s_param(0.2, 0.4, 3).unwrap() - 0.4).abs() < 1e-15);
    let mut pts = regular_tetra();
    pts.push(simplexflows_core::linalg::centroid(&pts));
    let l = Configuration::new(ComplexKind::L, pts).unwrap();
    for t in [0.2, 0.5, 0.9, 1.0] {
        assert!(is_pyramid_l(&lambda(&l, t).unwrap(), 1e-6));
    }
}
