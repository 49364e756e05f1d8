use cc4_core::dziobek::{
    cayley_menger, classify, directed_areas, distances_from_lambda, dziobek_residuals,
    embed_planar, weighted_areas, weighted_areas_along, Direction, DistanceSet, Pattern,
};
use cc4_core::tetra::{MassVector, Tetrahedron};
use proptest::prelude::*;

fn masses() -> impl Strategy<Value = [f64; 4]> {
    prop::array::uniform4(0.01f64..100.0)
}

fn direction() -> impl Strategy<Value = Direction<f64>> {
    (0.0f64..std::f64::consts::PI, 0.0f64..std::f64::consts::TAU)
        .prop_map(|(t, p)| Direction::new(t, p))
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn tetrahedron_identities(m in masses()) {
        let mv = MassVector::new(m).unwrap();
        let t = Tetrahedron::new(mv);
        let mu = mv.mu();
        let total = mv.total();
        let tol = 1e-12 * mu;

        // center of mass at the origin
        for x in t.mass_moment() {
            prop_assert!(x.abs() <= tol, "{x}");
        }
        // E M Eᵀ = μ I
        let inertia = t.inertia_matrix();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { mu } else { 0.0 };
                prop_assert!((inertia[i][j] - want).abs() <= tol, "{i}{j} {}", inertia[i][j] - want);
            }
        }
        for i in 0..4 {
            let vi = t.vertex(i);
            prop_assert!((dot(vi, vi) - mu * (1.0 / m[i] - 1.0 / total)).abs() <= tol * (1.0 + 1.0 / m[i]));
            for j in 0..4 {
                if i == j {
                    continue;
                }
                let vj = t.vertex(j);
                prop_assert!((dot(vi, vj) + mu / total).abs() <= tol);
                let edge = mu * (1.0 / m[i] + 1.0 / m[j]);
                prop_assert!((t.edge_squared(i, j) - edge).abs() <= tol * (1.0 + 1.0 / m[i] + 1.0 / m[j]));
                // orthocentric: the line from the origin through vertex i is
                // orthogonal to every edge of the opposite face
                for k in 0..4 {
                    if k == i || k == j {
                        continue;
                    }
                    let vk = t.vertex(k);
                    let edge_jk = [vj[0] - vk[0], vj[1] - vk[1], vj[2] - vk[2]];
                    prop_assert!(dot(vi, edge_jk).abs() <= tol);
                }
            }
        }
    }

    #[test]
    fn antipode_negates_areas(m in masses(), d in direction()) {
        let t = Tetrahedron::new(MassVector::new(m).unwrap());
        let a = weighted_areas(&t, &d).as_array();
        let b = weighted_areas(&t, &d.antipode()).as_array();
        let n = d.unit_vector();
        let c = weighted_areas_along(&t, n.map(|x| -x)).as_array();
        for j in 0..4 {
            prop_assert!((a[j] + b[j]).abs() <= 1e-12 * (1.0 + a[j].abs()));
            prop_assert_eq!(a[j], -c[j]);
        }
    }

    #[test]
    fn weighted_areas_balance(m in masses(), d in direction()) {
        // Σ m_j A_j = 0 and Σ m_j A_j² = m - m1
        let mv = MassVector::new(m).unwrap();
        let t = Tetrahedron::new(mv);
        let a = weighted_areas(&t, &d).as_array();
        let s1: f64 = (0..4).map(|j| m[j] * a[j]).sum();
        let s2: f64 = (0..4).map(|j| m[j] * a[j] * a[j]).sum();
        let scale = mv.total();
        prop_assert!(s1.abs() <= 1e-11 * scale);
        prop_assert!((s2 - (scale - m[0])).abs() <= 1e-11 * scale);
        prop_assert!(classify(&a) != Pattern::Boundary || a.iter().any(|x| x.abs() < 1e-9));
    }

    #[test]
    fn dziobek_relation_holds_by_construction(m in masses(), d in direction(), s in 0.01f64..0.99) {
        let t = Tetrahedron::new(MassVector::new(m).unwrap());
        let a = weighted_areas(&t, &d);
        let iv = cc4_core::dziobek::admissible_lambda_interval(&a).unwrap();
        let lambda = iv.lo + s * (iv.hi - iv.lo);
        let r = distances_from_lambda(&a, lambda).unwrap();
        for x in dziobek_residuals(&a, lambda, &r) {
            prop_assert!(x.abs() <= 1e-9 * (1.0 + lambda.abs() * a.normalization().powi(2) * 100.0));
        }
    }
}

fn planar_points() -> impl Strategy<Value = [[f64; 2]; 4]> {
    prop::array::uniform4(prop::array::uniform2(-10.0f64..10.0)).prop_filter(
        "well separated, no collinear triple",
        |p| {
            let area = |i: usize, j: usize, k: usize| {
                ((p[j][0] - p[i][0]) * (p[k][1] - p[i][1])
                    - (p[k][0] - p[i][0]) * (p[j][1] - p[i][1]))
                    .abs()
            };
            let d = |i: usize, j: usize| (p[i][0] - p[j][0]).hypot(p[i][1] - p[j][1]);
            let dmin = (0..4)
                .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                .map(|(i, j)| d(i, j))
                .fold(f64::INFINITY, f64::min);
            dmin > 0.5
                && [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
                    .iter()
                    .all(|&(i, j, k)| area(i, j, k) > 0.5)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn embedding_round_trip(p in planar_points()) {
        let d = DistanceSet::from_points(&p).unwrap();
        let cfg = embed_planar(&d).unwrap();
        let back = cfg.distances().unwrap();
        for (x, y) in d.as_array().iter().zip(back.as_array()) {
            prop_assert!((x - y).abs() <= 1e-9, "{x} {y}");
        }
        let s = directed_areas(&cfg.points);
        let scale = d.max() * d.max();
        let sum: f64 = s.iter().sum();
        let sx: f64 = (0..4).map(|i| s[i] * cfg.points[i][0]).sum();
        let sy: f64 = (0..4).map(|i| s[i] * cfg.points[i][1]).sum();
        prop_assert!(sum.abs() <= 1e-10 * scale);
        prop_assert!(sx.abs() <= 1e-10 * scale * d.max());
        prop_assert!(sy.abs() <= 1e-10 * scale * d.max());
        // the input points themselves satisfy the same identities
        let s0 = directed_areas(&p);
        prop_assert!(s0.iter().sum::<f64>().abs() <= 1e-10 * scale);
    }

    #[test]
    fn cayley_menger_is_volume_squared(p in prop::array::uniform4(prop::array::uniform3(-3.0f64..3.0))) {
        let sub = |a: [f64; 3], b: [f64; 3]| [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
        let (u, v, w) = (sub(p[1], p[0]), sub(p[2], p[0]), sub(p[3], p[0]));
        let vol = (u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0])
            + u[2] * (v[0] * w[1] - v[1] * w[0])) / 6.0;
        let dist = |i: usize, j: usize| dot(sub(p[i], p[j]), sub(p[i], p[j])).sqrt();
        prop_assume!((0..4).all(|i| (i + 1..4).all(|j| dist(i, j) > 1e-3)));
        let d = DistanceSet::new([dist(0, 1), dist(0, 2), dist(0, 3), dist(1, 2), dist(1, 3), dist(2, 3)]).unwrap();
        let cm = cayley_menger(&d);
        prop_assert!((cm - 288.0 * vol * vol).abs() <= 1e-9 * d.max().powi(6), "{cm} {}", 288.0 * vol * vol);
    }
}
