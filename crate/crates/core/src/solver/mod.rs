//! Tuning the two angles until the recovered masses match the given ones.
//!
//! For a direction `n`, every planar root `λ` of the Cayley–Menger
//! determinant yields a candidate configuration. Its directed areas divided
//! by the weighted areas give masses; the mismatch against the input masses
//! is driven to zero by a simplex search over `n`, restricted to the sign
//! region the search started in.

mod kite;
mod multistart;

pub use kite::{kite_scan, solve_kite, KiteScan, KiteSector};
pub(crate) use multistart::merge_solutions;
pub use multistart::{census, solve_all, RegionStart};

use crate::dziobek::{
    admissible_lambda_interval, cayley_menger_normalized, classify, distances_from_lambda,
    dziobek_residuals, embed_planar, recovered_masses, sigma, weighted_areas, weighted_areas_along,
    ConfigurationType, Direction, DistanceSet, Pattern, PlanarConfig, WeightedAreas,
};
use crate::error::{Error, Result};
use crate::roots::{brent, sign_changes};
use crate::scalar::Real;
use crate::simplex::{nelder_mead, SimplexOptions};
use crate::tetra::{MassVector, Tetrahedron};

/// Distance kept from the ends of the admissible interval and from `λ = 0`.
const LAMBDA_MARGIN: f64 = 1e-9;

/// Solver tolerances and search sizes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverSettings<T> {
    /// Uniform scan points used to bracket planar roots in `λ`.
    pub lambda_scan_points: usize,
    /// Bracket width at which a `λ` root is accepted.
    pub lambda_root_tol: T,
    /// Simplex size (in radians) at which angle tuning stops.
    pub angle_tol: T,
    /// Largest accepted `|m̂_j - m_j| / m`.
    pub mass_tol: T,
    /// Multistart grid as `(n_theta, n_phi)` over the upper hemisphere.
    pub grid: (usize, usize),
    /// Scan points used while screening grid directions.
    pub census_scan_points: usize,
    /// Simplex starts tried per sign region.
    pub starts_per_region: usize,
    /// Simplex iteration cap per start.
    pub max_iterations: usize,
    /// Two solutions of the same type closer than this in `λ` are merged.
    pub duplicate_tol: T,
}

impl<T: Real> Default for SolverSettings<T> {
    fn default() -> Self {
        Self {
            lambda_scan_points: 2000,
            lambda_root_tol: T::lit(1e-13),
            angle_tol: T::lit(1e-12),
            mass_tol: T::lit(1e-10),
            grid: (64, 128),
            census_scan_points: 400,
            starts_per_region: 4,
            max_iterations: 2000,
            duplicate_tol: T::lit(1e-7),
        }
    }
}

impl<T: Real> SolverSettings<T> {
    pub fn validate(&self) -> Result<()> {
        let positive = |x: T| x > T::zero() && x.is_finite();
        let checks = [
            (self.lambda_scan_points > 1, "lambda_scan_points"),
            (positive(self.lambda_root_tol), "lambda_root_tol"),
            (positive(self.angle_tol), "angle_tol"),
            (positive(self.mass_tol), "mass_tol"),
            (self.grid.0 >= 2 && self.grid.1 >= 2, "grid"),
            (self.census_scan_points > 1, "census_scan_points"),
            (self.starts_per_region > 0, "starts_per_region"),
            (self.max_iterations > 0, "max_iterations"),
            (positive(self.duplicate_tol), "duplicate_tol"),
        ];
        match checks.iter().find(|(ok, _)| !ok) {
            Some((_, name)) => Err(Error::InvalidSetting(name)),
            None => Ok(()),
        }
    }
}

/// Residual diagnostics of a solved configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residuals<T> {
    /// `max_j |m̂_j - m_j| / m`.
    pub mass_mismatch: T,
    /// Cayley–Menger determinant divided by `(max r)⁶`.
    pub cm: T,
    pub sigma_minus_1: T,
    /// `max |r_jk⁻³ - 1 - λ A_j A_k|`.
    pub dziobek: T,
}

impl<T: Real> Residuals<T> {
    /// Largest absolute residual.
    pub fn worst(&self) -> T {
        self.mass_mismatch
            .abs()
            .max(self.cm.abs())
            .max(self.sigma_minus_1.abs())
            .max(self.dziobek.abs())
    }
}

/// A solved planar central configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CentralConfiguration<T> {
    pub kind: ConfigurationType,
    pub lambda: T,
    /// Upper-hemisphere direction (`cos θ >= 0`).
    pub direction: Direction<T>,
    pub distances: DistanceSet<T>,
    /// Masses implied by the configuration, scaled to the input total.
    pub recovered: MassVector<T>,
    pub residuals: Residuals<T>,
    /// Embedding in the fixed gauge, with directed areas.
    pub planar: PlanarConfig<T>,
}

impl<T: Real> CentralConfiguration<T> {
    /// Negative `λ` holds for every known solution; positive values are worth flagging.
    pub fn lambda_is_negative(&self) -> bool {
        self.lambda < T::zero()
    }
}

/// Planar `λ` roots for fixed weighted areas, ascending.
///
/// Scans the normalized Cayley–Menger determinant on the admissible
/// interval (minus small neighborhoods of its ends and of zero) and refines
/// each sign change with Brent's method.
pub fn lambda_roots<T: Real>(a: &WeightedAreas<T>, settings: &SolverSettings<T>) -> Result<Vec<T>> {
    lambda_roots_with(a, settings.lambda_scan_points, settings.lambda_root_tol)
}

fn lambda_roots_with<T: Real>(a: &WeightedAreas<T>, scan_points: usize, tol: T) -> Result<Vec<T>> {
    let interval = admissible_lambda_interval(a)?;
    let margin = T::lit(LAMBDA_MARGIN);
    let lo = interval.lo + margin;
    let hi = interval.hi - margin;
    let f = |lambda: T| match distances_from_lambda(a, lambda) {
        Ok(d) => cayley_menger_normalized(&d),
        Err(_) => T::nan(),
    };

    // Split the scan budget between the negative and positive sides in
    // proportion to their lengths.
    let width = hi - lo;
    let n_neg = ((-margin - lo) / width * T::from_usize(scan_points).unwrap())
        .round()
        .to_usize()
        .unwrap_or(1)
        .clamp(1, scan_points);
    let n_pos = (scan_points - n_neg).max(1);
    let mut brackets = sign_changes(f, lo, -margin, n_neg);
    brackets.extend(sign_changes(f, margin, hi, n_pos));

    let mut roots: Vec<T> = brackets
        .into_iter()
        .filter_map(|(x0, x1)| brent(f, x0, x1, tol, 200))
        .collect();
    roots.sort_by(|x, y| x.partial_cmp(y).unwrap());
    roots.dedup_by(|x, y| (*x - *y).abs() <= tol);
    Ok(roots)
}

/// One planar root for a direction, with everything derived from it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Candidate<T> {
    pub lambda: T,
    pub weighted: WeightedAreas<T>,
    pub distances: DistanceSet<T>,
    pub planar: PlanarConfig<T>,
    pub recovered: MassVector<T>,
    /// `(m̂_j - m_j) / m`.
    pub mismatch: [T; 4],
}

impl<T: Real> Candidate<T> {
    pub fn mismatch_norm_sq(&self) -> T {
        self.mismatch.iter().fold(T::zero(), |acc, &x| acc + x * x)
    }

    pub fn mismatch_max(&self) -> T {
        self.mismatch
            .iter()
            .fold(T::zero(), |acc, &x| acc.max(x.abs()))
    }
}

fn build_candidate<T: Real>(
    tetra: &Tetrahedron<T>,
    a: &WeightedAreas<T>,
    lambda: T,
) -> Result<Candidate<T>> {
    let masses = tetra.masses();
    let distances = distances_from_lambda(a, lambda)?;
    let planar = embed_planar(&distances)?;
    let recovered = recovered_masses(&planar.areas, a, masses.total())?;
    let mismatch = [0, 1, 2, 3].map(|j| (recovered.get(j) - masses.get(j)) / masses.total());
    Ok(Candidate {
        lambda,
        weighted: *a,
        distances,
        planar,
        recovered,
        mismatch,
    })
}

/// `(m̂_j - m_j) / m` for the configuration at `(dir, λ)`.
///
/// Fails when `λ` is not a planar root or the recovered masses are not all
/// of one sign.
pub fn mass_mismatch<T: Real>(
    tetra: &Tetrahedron<T>,
    dir: &Direction<T>,
    lambda: T,
) -> Result<[T; 4]> {
    let a = weighted_areas(tetra, dir);
    build_candidate(tetra, &a, lambda).map(|c| c.mismatch)
}

/// Every planar root at `dir` whose recovered masses are positive.
pub fn candidates<T: Real>(
    tetra: &Tetrahedron<T>,
    dir: &Direction<T>,
    settings: &SolverSettings<T>,
) -> Vec<Candidate<T>> {
    candidates_along(
        tetra,
        dir.unit_vector(),
        settings.lambda_scan_points,
        settings.lambda_root_tol,
    )
}

fn candidates_along<T: Real>(
    tetra: &Tetrahedron<T>,
    n: [T; 3],
    scan_points: usize,
    tol: T,
) -> Vec<Candidate<T>> {
    let a = weighted_areas_along(tetra, n);
    let Ok(roots) = lambda_roots_with(&a, scan_points, tol) else {
        return Vec::new();
    };
    roots
        .into_iter()
        .filter_map(|lambda| build_candidate(tetra, &a, lambda).ok())
        .collect()
}

/// Which planar root to follow when a direction has several.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RootSelector<T> {
    /// The root with the smallest mass mismatch.
    BestMatch,
    /// The root closest to a reference `λ`.
    Nearest(T),
}

impl<T: Real> RootSelector<T> {
    pub fn pick(&self, cands: Vec<Candidate<T>>) -> Option<Candidate<T>> {
        let key = |c: &Candidate<T>| match *self {
            RootSelector::BestMatch => c.mismatch_norm_sq(),
            RootSelector::Nearest(l) => (c.lambda - l).abs(),
        };
        cands.into_iter().min_by(|x, y| {
            key(x)
                .partial_cmp(&key(y))
                .unwrap_or(std::cmp::Ordering::Equal)
        })
    }
}

/// Outcome of tuning from one start.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TuneOutcome<T> {
    Converged(CentralConfiguration<T>),
    /// The search stalled inside the region without reaching `mass_tol`.
    NoSolution {
        direction: Direction<T>,
        mismatch: T,
    },
    /// The search ended against a collinearity great circle.
    BoundaryHit {
        direction: Direction<T>,
    },
}

impl<T: Real> TuneOutcome<T> {
    pub fn converged(self) -> Option<CentralConfiguration<T>> {
        match self {
            TuneOutcome::Converged(c) => Some(c),
            _ => None,
        }
    }
}

/// Region-restricted angle tuning from `start`.
///
/// The search runs in azimuthal-equidistant disk coordinates, which are
/// smooth through the pole. Directions outside the start's sign region are
/// infeasible. A simplex search brings the mismatch down, then a few
/// finite-difference Gauss–Newton steps on the four mismatch components
/// polish the angles to `mass_tol`.
pub fn tune_direction<T: Real>(
    tetra: &Tetrahedron<T>,
    start: Direction<T>,
    selector: RootSelector<T>,
    settings: &SolverSettings<T>,
) -> TuneOutcome<T> {
    tune_direction_deflated(tetra, start, selector, settings, &[])
}

/// Like [`tune_direction`], but the simplex objective is divided away from
/// the `known` solution directions (shifted deflation, `f · Π (1 + 1/d²)`
/// with `d` the chord distance to `±n_known`), so the search settles on a
/// different zero of the mismatch when one is nearby.
pub fn tune_direction_deflated<T: Real>(
    tetra: &Tetrahedron<T>,
    start: Direction<T>,
    selector: RootSelector<T>,
    settings: &SolverSettings<T>,
    known: &[Direction<T>],
) -> TuneOutcome<T> {
    let Some(region) = classify(&weighted_areas(tetra, &start).as_array()).region() else {
        return TuneOutcome::BoundaryHit { direction: start };
    };
    let eval = |uv: &[T; 2], sel: RootSelector<T>| -> Option<Candidate<T>> {
        let dir = Direction::from_disk(*uv);
        let a = weighted_areas(tetra, &dir);
        if classify(&a.as_array()) != Pattern::Region(region) {
            return None;
        }
        sel.pick(candidates(tetra, &dir, settings))
    };

    let known: Vec<[T; 3]> = known.iter().map(|d| d.unit_vector()).collect();
    let deflation = |uv: &[T; 2]| {
        let n = Direction::from_disk(*uv).unit_vector();
        known.iter().fold(T::one(), |acc, r| {
            let chord = |s: T| (0..3).fold(T::zero(), |d, i| d + (n[i] - s * r[i]).powi(2));
            let d2 = chord(T::one()).min(chord(-T::one()));
            acc * (T::one() + d2.recip())
        })
    };
    let objective = |uv: &[T; 2]| match eval(uv, selector) {
        Some(c) => c.mismatch_norm_sq() * deflation(uv),
        None => T::infinity(),
    };
    let step = T::lit(0.02);
    let opts = SimplexOptions {
        xtol: settings.angle_tol,
        ftol: settings.mass_tol * settings.mass_tol * T::lit(1e-4),
        max_iter: settings.max_iterations,
    };
    let mut best = nelder_mead(objective, start.to_disk(), [step, step], &opts);
    // One restart from the best vertex recovers from a collapsed simplex.
    if best.value.is_finite() {
        let again = nelder_mead(
            objective,
            best.x,
            [step * T::lit(0.1), step * T::lit(0.1)],
            &opts,
        );
        if again.value <= best.value {
            best = again;
        }
    }

    let Some(mut cand) = eval(&best.x, selector) else {
        return TuneOutcome::BoundaryHit {
            direction: Direction::from_disk(best.x),
        };
    };
    let mut uv = best.x;
    polish(&mut uv, &mut cand, &eval, settings);

    let dir = Direction::from_disk(uv);
    if cand.mismatch_max() > settings.mass_tol {
        let near_edge = cand
            .weighted
            .as_array()
            .iter()
            .any(|x| x.abs() < T::lit(1e-6) * cand.weighted.normalization());
        return if near_edge {
            TuneOutcome::BoundaryHit { direction: dir }
        } else {
            TuneOutcome::NoSolution {
                direction: dir,
                mismatch: cand.mismatch_max(),
            }
        };
    }
    TuneOutcome::Converged(finish(tetra, dir, &cand))
}

/// Gauss–Newton on the four mismatch components with central differences,
/// following the root nearest the current `λ`.
fn polish<T, F>(uv: &mut [T; 2], cand: &mut Candidate<T>, eval: &F, settings: &SolverSettings<T>)
where
    T: Real,
    F: Fn(&[T; 2], RootSelector<T>) -> Option<Candidate<T>>,
{
    let h = T::lit(1e-7);
    let two = T::lit(2.0);
    for _ in 0..30 {
        let sel = RootSelector::Nearest(cand.lambda);
        let mut jac = [[T::zero(); 2]; 4];
        for k in 0..2 {
            let mut plus = *uv;
            let mut minus = *uv;
            plus[k] = plus[k] + h;
            minus[k] = minus[k] - h;
            let (Some(cp), Some(cm)) = (eval(&plus, sel), eval(&minus, sel)) else {
                return;
            };
            for (j, row) in jac.iter_mut().enumerate() {
                row[k] = (cp.mismatch[j] - cm.mismatch[j]) / (two * h);
            }
        }
        // Normal equations of the 4×2 least-squares step.
        let (mut a11, mut a12, mut a22, mut g1, mut g2) =
            (T::zero(), T::zero(), T::zero(), T::zero(), T::zero());
        for (row, r) in jac.iter().zip(cand.mismatch.iter()) {
            a11 = a11 + row[0] * row[0];
            a12 = a12 + row[0] * row[1];
            a22 = a22 + row[1] * row[1];
            g1 = g1 + row[0] * *r;
            g2 = g2 + row[1] * *r;
        }
        let det = a11 * a22 - a12 * a12;
        if !(det.abs() > T::zero()) {
            return;
        }
        let du = -(a22 * g1 - a12 * g2) / det;
        let dv = -(a11 * g2 - a12 * g1) / det;

        // Halve the step until the mismatch decreases.
        let mut scale = T::one();
        let mut accepted = false;
        for _ in 0..20 {
            let trial = [uv[0] + scale * du, uv[1] + scale * dv];
            if let Some(c) = eval(&trial, sel) {
                if c.mismatch_norm_sq() < cand.mismatch_norm_sq() {
                    *uv = trial;
                    *cand = c;
                    accepted = true;
                    break;
                }
            }
            scale = scale * T::lit(0.5);
        }
        let moved = (scale * du).abs().max((scale * dv).abs());
        if !accepted
            || moved <= settings.angle_tol
            || cand.mismatch_max() <= settings.mass_tol * T::lit(1e-3)
        {
            return;
        }
    }
}

/// Assembles the reported configuration, moving the direction to the
/// upper hemisphere (the antipode negates every `A_j` and leaves `λ` and
/// the distances unchanged).
fn finish<T: Real>(
    tetra: &Tetrahedron<T>,
    dir: Direction<T>,
    cand: &Candidate<T>,
) -> CentralConfiguration<T> {
    let direction = dir.to_upper_hemisphere();
    let kind = classify(&cand.planar.areas)
        .region()
        .or_else(|| classify(&cand.weighted.as_array()).region())
        .expect("accepted candidate has a nondegenerate sign pattern");
    let residuals = Residuals {
        mass_mismatch: cand.mismatch_max(),
        cm: cayley_menger_normalized(&cand.distances),
        sigma_minus_1: sigma(tetra.masses(), &cand.distances) - T::one(),
        dziobek: dziobek_residuals(&cand.weighted, cand.lambda, &cand.distances)
            .iter()
            .fold(T::zero(), |acc, r| acc.max(r.abs())),
    };
    CentralConfiguration {
        kind,
        lambda: cand.lambda,
        direction,
        distances: cand.distances,
        recovered: cand.recovered,
        residuals,
        planar: cand.planar,
    }
}

/// Re-derives the diagnostics of a configuration from `(masses, direction, λ)`.
pub fn configuration_at<T: Real>(
    tetra: &Tetrahedron<T>,
    dir: Direction<T>,
    lambda: T,
) -> Result<CentralConfiguration<T>> {
    let a = weighted_areas(tetra, &dir);
    let cand = build_candidate(tetra, &a, lambda)?;
    Ok(finish(tetra, dir, &cand))
}

#[cfg(test)]
mod tests;
