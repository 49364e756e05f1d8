use super::*;

fn tet(m: [f64; 4]) -> Tetrahedron<f64> {
    Tetrahedron::new(MassVector::new(m).unwrap())
}

fn general() -> Tetrahedron<f64> {
    tet([10.0, 13.0, 15.0, 17.0])
}

#[test]
fn settings_validation() {
    assert!(SolverSettings::<f64>::default().validate().is_ok());
    let s = SolverSettings::<f64> {
        mass_tol: 0.0,
        ..Default::default()
    };
    assert!(matches!(
        s.validate(),
        Err(Error::InvalidSetting("mass_tol"))
    ));
    let s = SolverSettings::<f64> {
        grid: (1, 8),
        ..Default::default()
    };
    assert!(matches!(s.validate(), Err(Error::InvalidSetting("grid"))));
}

#[test]
fn lambda_root_at_tabulated_direction() {
    let t = general();
    let a = weighted_areas(&t, &Direction::new(0.139240050165164, 4.8453912490189));
    let roots = lambda_roots(&a, &SolverSettings::default()).unwrap();
    assert!(
        roots.iter().any(|l| (l + 2.32656490060845).abs() < 1e-9),
        "{roots:?}"
    );
}

#[test]
fn mismatch_vanishes_at_tabulated_solution() {
    let t = general();
    let dir = Direction::new(0.861931053448714, 1.64118840218233);
    let m = mass_mismatch(&t, &dir, -0.532931485997706).unwrap();
    assert!(m.iter().all(|x| x.abs() < 1e-9), "{m:?}");
}

#[test]
fn mismatch_is_smooth_near_solution() {
    // Central differences at two step sizes agree, so Gauss–Newton is safe.
    let t = general();
    let s = SolverSettings::default();
    let at = |theta: f64| {
        let c = RootSelector::Nearest(-2.3265649)
            .pick(candidates(&t, &Direction::new(theta, 4.8453912490189), &s))
            .unwrap();
        c.mismatch[0]
    };
    let x = 0.1392;
    let d1 = (at(x + 1e-4) - at(x - 1e-4)) / 2e-4;
    let d2 = (at(x + 1e-6) - at(x - 1e-6)) / 2e-6;
    assert!((d1 - d2).abs() < 1e-5 * d1.abs().max(1.0), "{d1} {d2}");
}

#[test]
fn tune_concave_one() {
    let t = general();
    let c = tune_direction(
        &t,
        Direction::new(0.14, 4.85),
        RootSelector::BestMatch,
        &SolverSettings::default(),
    )
    .converged()
    .unwrap();
    assert_eq!(c.kind, ConfigurationType::Concave { interior: 1 });
    assert!((c.lambda + 2.32656490060845).abs() < 1e-9);
    assert!((c.direction.theta - 0.139240050165164).abs() < 1e-6);
    assert!((c.direction.phi - 4.8453912490189).abs() < 1e-6);
    let expected = [
        0.639643905964532,
        0.749352173668766,
        0.730065912777101,
        1.22971324110202,
        1.28360719430431,
        1.10420199339901,
    ];
    for (x, y) in c.distances.as_array().iter().zip(expected) {
        assert!((x - y).abs() < 1e-9, "{x} {y}");
    }
    assert!(c.residuals.worst() < 1e-9, "{:?}", c.residuals);
}

#[test]
fn tune_convex_with_diagonal_34() {
    let t = general();
    let c = tune_direction(
        &t,
        Direction::new(0.86, 1.64),
        RootSelector::BestMatch,
        &SolverSettings::default(),
    )
    .converged()
    .unwrap();
    assert_eq!(c.kind, ConfigurationType::convex_with_diagonal(3, 4));
    assert!((c.lambda + 0.532931485997706).abs() < 1e-9);
}

#[test]
fn tune_reports_boundary_start() {
    // The pole lies on no collinearity circle for these masses, but a start
    // exactly on circle 1 (the equator) does.
    let t = general();
    let out = tune_direction(
        &t,
        Direction::new(std::f64::consts::FRAC_PI_2, 1.0),
        RootSelector::BestMatch,
        &SolverSettings::default(),
    );
    assert!(matches!(out, TuneOutcome::BoundaryHit { .. }), "{out:?}");
}

#[test]
fn equal_mass_square() {
    let t = tet([1.0; 4]);
    let c = tune_direction(
        &t,
        Direction::new(0.9, 1.6),
        RootSelector::BestMatch,
        &SolverSettings::default(),
    )
    .converged()
    .unwrap();
    assert!(!c.kind.is_concave());
    // Square: |A_j| = a with 4a² = m - m1 = 3.
    let s2 = 2f64.sqrt();
    let oracle = (1.0 - 2.0 * s2) / (1.0 + 2.0 * s2);
    assert!(
        (c.lambda * 0.75 - oracle).abs() < 1e-10,
        "{}",
        c.lambda * 0.75
    );
    let d = c.distances.as_array();
    let mut sorted = d;
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let side = sorted[0];
    assert!(sorted[..4].iter().all(|x| (x - side).abs() < 1e-10));
    assert!(sorted[4..].iter().all(|x| (x - side * s2).abs() < 1e-10));
    // Neighbors carry opposite signs, diagonal partners equal ones.
    assert!((side.powi(-3) - (1.0 - oracle)).abs() < 1e-10);
    assert!(((side * s2).powi(-3) - (1.0 + oracle)).abs() < 1e-10);
}

#[test]
fn configuration_at_reproduces_table() {
    let t = general();
    let c = configuration_at(
        &t,
        Direction::new(0.833903746254753, 3.74619198490858),
        -0.59067068058041,
    )
    .unwrap();
    assert_eq!(c.kind, ConfigurationType::convex_with_diagonal(1, 4));
    assert!((c.distances.get(0, 3) - 1.26246852646001).abs() < 1e-9);
    assert!(c.residuals.sigma_minus_1.abs() < 1e-9);
}

#[test]
fn kite_rejects_unequal_pair() {
    let m = MassVector::new([1.0, 2.0, 3.0, 4.0]).unwrap();
    assert!(matches!(
        solve_kite(&m, &SolverSettings::default()),
        Err(Error::UnequalKiteMasses { .. })
    ));
}

#[test]
fn kite_sectors_and_symmetry() {
    let m = MassVector::new([10.0f64, 8.0, 9.0, 9.0]).unwrap();
    let scan = kite_scan(&m, &SolverSettings::default()).unwrap();
    let concave = scan
        .sectors
        .iter()
        .filter(|s| matches!(s.pattern.region(), Some(k) if k.is_concave()))
        .count();
    assert_eq!(scan.sectors.len(), 3);
    assert_eq!(concave, 2);
    assert_eq!(scan.solutions.len(), 3);
    for c in &scan.solutions {
        let d = &c.distances;
        assert!((d.get(0, 2) - d.get(0, 3)).abs() < 1e-12);
        assert!((d.get(1, 2) - d.get(1, 3)).abs() < 1e-12);
    }
}

#[test]
fn merge_drops_repeats_only() {
    let t = general();
    let s = SolverSettings::default();
    let a = tune_direction(&t, Direction::new(0.14, 4.85), RootSelector::BestMatch, &s)
        .converged()
        .unwrap();
    let b = tune_direction(&t, Direction::new(0.15, 4.83), RootSelector::BestMatch, &s)
        .converged()
        .unwrap();
    let c = tune_direction(&t, Direction::new(0.86, 1.64), RootSelector::BestMatch, &s)
        .converged()
        .unwrap();
    let merged = merge_solutions(vec![c, a, b], 1e-7);
    assert_eq!(merged.len(), 2);
    assert!(merged[0].lambda < merged[1].lambda);
}
