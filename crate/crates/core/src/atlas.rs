//! Region map of the direction hemisphere.
//!
//! Each direction is labeled by the sign pattern of its weighted areas. The
//! zero set of `A_i` is the great circle orthogonal to tetrahedron vertex
//! `i`; on it particles other than `i` are collinear. Maps use the azimuthal
//! equidistant projection `(u, v) = θ (cos φ, sin φ)`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::dziobek::{classify, weighted_areas, ConfigurationType, Direction, Pattern};
use crate::scalar::Real;
use crate::tetra::Tetrahedron;

/// Half-width of the band drawn as boundary in rendered maps, relative to `C`.
pub const RENDER_BAND: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionSample<T> {
    pub direction: Direction<T>,
    pub pattern: Pattern,
    /// Azimuthal equidistant coordinates.
    pub projected: [T; 2],
}

/// Sign pattern at `dir`, or boundary when some `|A_j| <= 1e-14 C`.
pub fn sign_pattern<T: Real>(tetra: &Tetrahedron<T>, dir: &Direction<T>) -> Pattern {
    let a = weighted_areas(tetra, dir);
    if a.degenerate_particle().is_some() {
        return Pattern::Boundary;
    }
    classify(&a.as_array())
}

/// Like [`sign_pattern`] with a wider zero band, for rasterized maps.
pub fn render_pattern<T: Real>(tetra: &Tetrahedron<T>, dir: &Direction<T>) -> Pattern {
    let a = weighted_areas(tetra, dir);
    let band = T::lit(RENDER_BAND) * a.normalization();
    if a.as_array().iter().any(|x| x.abs() <= band) {
        return Pattern::Boundary;
    }
    classify(&a.as_array())
}

pub fn project<T: Real>(dir: &Direction<T>) -> [T; 2] {
    dir.to_disk()
}

/// The four collinearity circles clipped to `cos θ >= 0`, each as
/// `resolution` directions.
///
/// Circle 1 is the whole equator. The others are the upper half of the
/// circle orthogonal to their vertex and end on the equator.
pub fn great_circles<T: Real>(tetra: &Tetrahedron<T>, resolution: usize) -> [Vec<Direction<T>>; 4] {
    let resolution = resolution.max(3);
    [0, 1, 2, 3].map(|i| {
        let v = normalize(tetra.vertex(i));
        let z = [T::zero(), T::zero(), T::one()];
        let horizontal = cross(v, z);
        let (e1, e2, span) = if norm(horizontal) <= T::lit(1e-12) {
            (
                [T::one(), T::zero(), T::zero()],
                [T::zero(), T::one(), T::zero()],
                T::TAU(),
            )
        } else {
            let e1 = normalize(horizontal);
            let mut e2 = cross(v, e1);
            if e2[2] < T::zero() {
                e2 = e2.map(|x| -x);
            }
            (e1, e2, T::PI())
        };
        let last = T::from_usize(resolution - 1).unwrap();
        (0..resolution)
            .map(|k| {
                let s = span * T::from_usize(k).unwrap() / last;
                let (sn, cs) = s.sin_cos();
                let mut p = [0, 1, 2].map(|a| cs * e1[a] + sn * e2[a]);
                // Rounding can push the endpoints a hair below the equator.
                p[2] = p[2].max(T::zero());
                Direction::from_vector(p)
            })
            .collect()
    })
}

/// Row-major samples on `θ_i = i (π/2) / (n_θ - 1)`, `φ_k = 2π k / n_φ`.
pub fn sample_hemisphere<T: Real>(
    tetra: &Tetrahedron<T>,
    n_theta: usize,
    n_phi: usize,
) -> Vec<RegionSample<T>> {
    let n_theta = n_theta.max(2);
    let n_phi = n_phi.max(2);
    let dtheta = T::FRAC_PI_2() / T::from_usize(n_theta - 1).unwrap();
    let dphi = T::TAU() / T::from_usize(n_phi).unwrap();
    (0..n_theta * n_phi)
        .into_par_iter()
        .map(|idx| {
            let (i, k) = (idx / n_phi, idx % n_phi);
            let direction = Direction::new(
                dtheta * T::from_usize(i).unwrap(),
                dphi * T::from_usize(k).unwrap(),
            );
            RegionSample {
                direction,
                pattern: sign_pattern(tetra, &direction),
                projected: project(&direction),
            }
        })
        .collect()
}

/// Sample counts per region type; boundary samples are not counted.
pub fn census<T: Real>(samples: &[RegionSample<T>]) -> BTreeMap<ConfigurationType, usize> {
    let mut out = BTreeMap::new();
    for s in samples {
        if let Some(kind) = s.pattern.region() {
            *out.entry(kind).or_insert(0) += 1;
        }
    }
    out
}

fn cross<T: Real>(a: [T; 3], b: [T; 3]) -> [T; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn norm<T: Real>(a: [T; 3]) -> T {
    (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt()
}

fn normalize<T: Real>(a: [T; 3]) -> [T; 3] {
    let n = norm(a);
    a.map(|x| x / n)
}
