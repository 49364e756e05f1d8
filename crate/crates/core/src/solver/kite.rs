//! One-angle search for kite configurations when `m3 = m4`.
//!
//! With equal third and fourth masses the tetrahedron is symmetric about the
//! plane `a = 0`. Directions `n(t) = (0, sin t, cos t)` in that plane give
//! `A3 = A4` and therefore configurations symmetric under swapping particles
//! 3 and 4. Only the semicircle `t ∈ (-π/2, π/2)` matters; `t >= 0` is
//! `φ = π/2` and `t < 0` is `φ = 3π/2` with `θ = |t|`.

use super::{
    candidates_along, finish, merge_solutions, Candidate, CentralConfiguration, RootSelector,
    SolverSettings,
};
use crate::dziobek::{classify, weighted_areas_along, Direction, Pattern};
use crate::error::{Error, Result};
use crate::roots::brent;
use crate::scalar::Real;
use crate::tetra::{MassVector, Tetrahedron};

/// Relative tolerance on `m3 = m4`.
const EQUAL_MASS_TOL: f64 = 1e-12;

/// Samples along the semicircle.
const KITE_SAMPLES: usize = 1500;

/// An open arc of the semicircle with constant sign pattern.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KiteSector<T> {
    pub t_lo: T,
    pub t_hi: T,
    pub pattern: Pattern,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KiteScan<T> {
    pub sectors: Vec<KiteSector<T>>,
    pub solutions: Vec<CentralConfiguration<T>>,
}

fn axis<T: Real>(t: T) -> [T; 3] {
    let (s, c) = t.sin_cos();
    [T::zero(), s, c]
}

fn direction_of<T: Real>(t: T) -> Direction<T> {
    if t >= T::zero() {
        Direction::new(t, T::FRAC_PI_2())
    } else {
        Direction::new(-t, T::lit(3.0) * T::FRAC_PI_2())
    }
}

/// Scans the symmetric semicircle and solves for kite configurations.
pub fn kite_scan<T: Real>(
    masses: &MassVector<T>,
    settings: &SolverSettings<T>,
) -> Result<KiteScan<T>> {
    settings.validate()?;
    let (m3, m4) = (masses.get(2), masses.get(3));
    if (m3 - m4).abs() > T::lit(EQUAL_MASS_TOL) * m3.max(m4) {
        return Err(Error::UnequalKiteMasses {
            m3: m3.to_f64_lossy(),
            m4: m4.to_f64_lossy(),
        });
    }
    let tetra = Tetrahedron::new(*masses);
    let sectors = sectors(&tetra);

    let half_pi = T::FRAC_PI_2();
    let n = KITE_SAMPLES;
    let ts: Vec<T> = (1..n)
        .map(|k| -half_pi + T::PI() * T::from_usize(k).unwrap() / T::from_usize(n).unwrap())
        .collect();
    let eval =
        |t: T, points: usize| candidates_along(&tetra, axis(t), points, settings.lambda_root_tol);
    let samples: Vec<Vec<Candidate<T>>> = ts
        .iter()
        .map(|&t| eval(t, settings.census_scan_points))
        .collect();

    // Follow each root to the next sample by nearest λ and look for sign
    // changes of the first mismatch component; on the symmetric family the
    // mismatch has a single degree of freedom.
    let mut found = Vec::new();
    for k in 0..ts.len().saturating_sub(1) {
        for c in &samples[k] {
            let Some(next) = samples[k + 1].iter().min_by(|x, y| {
                (x.lambda - c.lambda)
                    .abs()
                    .partial_cmp(&(y.lambda - c.lambda).abs())
                    .unwrap()
            }) else {
                continue;
            };
            let jump = (next.lambda - c.lambda).abs();
            if jump > T::lit(0.05) * (T::one() + c.lambda.abs()) {
                continue;
            }
            if (c.mismatch[0] > T::zero()) == (next.mismatch[0] > T::zero()) {
                continue;
            }
            let reference = (c.lambda + next.lambda) * T::lit(0.5);
            let g = |t: T| {
                RootSelector::Nearest(reference)
                    .pick(eval(t, settings.lambda_scan_points))
                    .map(|c| c.mismatch[0])
                    .unwrap_or(T::nan())
            };
            let Some(t) = brent(g, ts[k], ts[k + 1], settings.angle_tol, 200) else {
                continue;
            };
            let Some(cand) =
                RootSelector::Nearest(reference).pick(eval(t, settings.lambda_scan_points))
            else {
                continue;
            };
            if cand.mismatch_max() <= settings.mass_tol {
                found.push(finish(&tetra, direction_of(t), &cand));
            }
        }
    }
    Ok(KiteScan {
        sectors,
        solutions: merge_solutions(found, settings.duplicate_tol),
    })
}

/// Kite configurations for masses with `m3 = m4`, sorted by `λ`.
pub fn solve_kite<T: Real>(
    masses: &MassVector<T>,
    settings: &SolverSettings<T>,
) -> Result<Vec<CentralConfiguration<T>>> {
    kite_scan(masses, settings).map(|s| s.solutions)
}

/// Sector boundaries are the zeros of `A_j(t) ∝ b_j sin t + c_j cos t`.
fn sectors<T: Real>(tetra: &Tetrahedron<T>) -> Vec<KiteSector<T>> {
    let half_pi = T::FRAC_PI_2();
    let mut cuts = vec![-half_pi, half_pi];
    for j in 0..4 {
        let [_, b, c] = tetra.vertex(j);
        if b == T::zero() {
            continue;
        }
        // b sin t + c cos t = 0  =>  tan t = -c / b
        let t = (-c / b).atan();
        if t.abs() < half_pi {
            cuts.push(t);
        }
    }
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cuts.dedup_by(|a, b| (*a - *b).abs() < T::lit(1e-12));
    cuts.windows(2)
        .map(|w| {
            let mid = (w[0] + w[1]) * T::lit(0.5);
            KiteSector {
                t_lo: w[0],
                t_hi: w[1],
                pattern: classify(&weighted_areas_along(tetra, axis(mid)).as_array()),
            }
        })
        .collect()
}
