use rayon::prelude::*;

use super::{
    candidates_along, tune_direction_deflated, CentralConfiguration, RootSelector, SolverSettings,
};
use crate::dziobek::{classify, weighted_areas, ConfigurationType, Direction};
use crate::error::Result;
use crate::scalar::Real;
use crate::tetra::{MassVector, Tetrahedron};

/// A multistart seed: a grid direction that locally minimizes the mismatch
/// within its sign region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionStart<T> {
    pub region: ConfigurationType,
    pub direction: Direction<T>,
    /// Squared mismatch norm at the grid point.
    pub score: T,
}

struct Cell<T> {
    region: Option<ConfigurationType>,
    score: T,
}

/// Grid directions at cell centers: `θ_i = (i + ½) (π/2) / n_θ`, `φ_k = 2π k / n_φ`.
fn grid_direction<T: Real>(i: usize, k: usize, n_theta: usize, n_phi: usize) -> Direction<T> {
    let theta = (T::from_usize(i).unwrap() + T::lit(0.5)) * T::FRAC_PI_2()
        / T::from_usize(n_theta).unwrap();
    let phi = T::TAU() * T::from_usize(k).unwrap() / T::from_usize(n_phi).unwrap();
    Direction::new(theta, phi)
}

/// Screens the hemisphere grid and returns up to `starts_per_region` seeds
/// per sign region, best first. Output order is deterministic.
pub fn census<T: Real>(
    tetra: &Tetrahedron<T>,
    settings: &SolverSettings<T>,
) -> Vec<RegionStart<T>> {
    let (n_theta, n_phi) = settings.grid;
    let cells: Vec<Cell<T>> = (0..n_theta * n_phi)
        .into_par_iter()
        .map(|idx| {
            let dir = grid_direction::<T>(idx / n_phi, idx % n_phi, n_theta, n_phi);
            let region = classify(&weighted_areas(tetra, &dir).as_array()).region();
            let score = match region {
                None => T::infinity(),
                Some(_) => candidates_along(
                    tetra,
                    dir.unit_vector(),
                    settings.census_scan_points,
                    settings.lambda_root_tol,
                )
                .iter()
                .map(|c| c.mismatch_norm_sq())
                .fold(T::infinity(), T::min),
            };
            Cell { region, score }
        })
        .collect();

    let at = |i: isize, k: isize| -> Option<usize> {
        let n_phi_i = n_phi as isize;
        let (i, k) = if i < 0 {
            // across the pole
            (0, k + n_phi_i / 2)
        } else {
            (i, k)
        };
        if i >= n_theta as isize {
            return None;
        }
        Some(i as usize * n_phi + k.rem_euclid(n_phi_i) as usize)
    };

    let mut starts: Vec<(usize, RegionStart<T>)> = Vec::new();
    for idx in 0..cells.len() {
        let cell = &cells[idx];
        let Some(region) = cell.region else { continue };
        if !cell.score.is_finite() {
            continue;
        }
        let (i, k) = ((idx / n_phi) as isize, (idx % n_phi) as isize);
        let is_min = (-1..=1)
            .flat_map(|di| (-1..=1).map(move |dk| (di, dk)))
            .filter(|&d| d != (0, 0))
            .filter_map(|(di, dk)| at(i + di, k + dk))
            .filter(|&n| n != idx && cells[n].region == Some(region) && cells[n].score.is_finite())
            .all(|n| cell.score < cells[n].score || (cell.score == cells[n].score && idx < n));
        if is_min {
            starts.push((
                idx,
                RegionStart {
                    region,
                    direction: grid_direction(i as usize, k as usize, n_theta, n_phi),
                    score: cell.score,
                },
            ));
        }
    }

    let mut out = Vec::new();
    for region in ConfigurationType::ALL {
        let mut mine: Vec<&(usize, RegionStart<T>)> =
            starts.iter().filter(|s| s.1.region == region).collect();
        mine.sort_by(|a, b| {
            a.1.score
                .partial_cmp(&b.1.score)
                .unwrap()
                .then(a.0.cmp(&b.0))
        });
        out.extend(
            mine.into_iter()
                .take(settings.starts_per_region)
                .map(|s| s.1),
        );
    }
    out
}

/// All planar central configurations reachable from the multistart grid,
/// sorted by `λ`.
pub fn solve_all<T: Real>(
    masses: &MassVector<T>,
    settings: &SolverSettings<T>,
) -> Result<Vec<CentralConfiguration<T>>> {
    settings.validate()?;
    let tetra = Tetrahedron::new(*masses);
    let starts = census(&tetra, settings);
    let found: Vec<Vec<CentralConfiguration<T>>> = ConfigurationType::ALL
        .par_iter()
        .map(|&region| {
            let mine: Vec<&RegionStart<T>> = starts.iter().filter(|s| s.region == region).collect();
            solve_region(&tetra, &mine, settings)
        })
        .collect();
    Ok(merge_solutions(
        found.into_iter().flatten().collect(),
        settings.duplicate_tol,
    ))
}

/// Deflation rounds per start after the plain search.
const DEFLATION_ROUNDS: usize = 3;

/// Tunes every start of one region, then retries each start with the
/// region's known solutions deflated until nothing new turns up. Close
/// pairs of solutions (common for symmetric masses) share one grid basin.
fn solve_region<T: Real>(
    tetra: &Tetrahedron<T>,
    starts: &[&RegionStart<T>],
    settings: &SolverSettings<T>,
) -> Vec<CentralConfiguration<T>> {
    let mut known: Vec<CentralConfiguration<T>> = Vec::new();
    let add = |c: CentralConfiguration<T>, known: &mut Vec<CentralConfiguration<T>>| {
        let fresh = !known
            .iter()
            .any(|k| same_solution(k, &c, settings.duplicate_tol));
        if fresh {
            known.push(c);
        }
        fresh
    };
    for s in starts {
        if let Some(c) =
            tune_direction_deflated(tetra, s.direction, RootSelector::BestMatch, settings, &[])
                .converged()
        {
            add(c, &mut known);
        }
    }
    // Solutions found so far double as seeds: a neighbor in the same basin
    // is reached by pushing away from them.
    let mut seeds: Vec<Direction<T>> = starts.iter().map(|s| s.direction).collect();
    seeds.extend(known.iter().map(|k| k.direction));
    for seed in seeds {
        for _ in 0..DEFLATION_ROUNDS {
            let dirs: Vec<Direction<T>> = known.iter().map(|k| k.direction).collect();
            let next =
                tune_direction_deflated(tetra, seed, RootSelector::BestMatch, settings, &dirs)
                    .converged();
            match next {
                Some(c) if add(c, &mut known) => {}
                _ => break,
            }
        }
    }
    known
}

fn same_solution<T: Real>(
    a: &CentralConfiguration<T>,
    b: &CentralConfiguration<T>,
    tol: T,
) -> bool {
    a.kind == b.kind
        && (a.lambda - b.lambda).abs() <= tol
        && a.distances
            .as_array()
            .iter()
            .zip(b.distances.as_array())
            .all(|(x, y)| (*x - y).abs() <= tol)
}

/// Drops repeats (same type, `λ` and distances within `tol`) and sorts by `λ`.
pub(crate) fn merge_solutions<T: Real>(
    mut found: Vec<CentralConfiguration<T>>,
    tol: T,
) -> Vec<CentralConfiguration<T>> {
    found.sort_by(|a, b| {
        a.residuals
            .mass_mismatch
            .partial_cmp(&b.residuals.mass_mismatch)
            .unwrap()
            .then(a.lambda.partial_cmp(&b.lambda).unwrap())
    });
    let mut kept: Vec<CentralConfiguration<T>> = Vec::new();
    for c in found {
        let duplicate = kept.iter().any(|k| same_solution(k, &c, tol));
        if !duplicate {
            kept.push(c);
        }
    }
    kept.sort_by(|a, b| {
        a.lambda
            .partial_cmp(&b.lambda)
            .unwrap()
            .then(a.kind.cmp(&b.kind))
    });
    kept
}
