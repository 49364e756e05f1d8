//! From a direction on the sphere to a candidate planar configuration.
//!
//! A unit vector `n` rotates the tetrahedron; the vertex coordinates along `n`
//! (times `C = sqrt((m - m1)/μ)`) are the weighted areas `A_j = S_j / m_j`.
//! With `σ = 1`, Dziobek's relation `r_jk⁻³ = 1 + λ A_j A_k` turns a value of
//! `λ` into six distances. Planarity and mass recovery happen in [`planar`].

mod classify;
mod planar;

use std::fmt;

pub use classify::{classify, ConfigurationType, Pattern};
pub use planar::{
    cayley_menger, cayley_menger_normalized, directed_areas, embed_planar, recovered_masses,
    PlanarConfig, PLANARITY_TOL,
};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::tetra::{MassVector, Tetrahedron};

/// `|A_j| <= DEGENERACY_TOL * C` counts as zero: the direction is on a great circle.
pub const DEGENERACY_TOL: f64 = 1e-14;

/// Unordered pair of particles, stored 0-based with `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pair(pub usize, pub usize);

/// The six pairs in storage order: 12, 13, 14, 23, 24, 34.
pub const PAIRS: [Pair; 6] = [
    Pair(0, 1),
    Pair(0, 2),
    Pair(0, 3),
    Pair(1, 2),
    Pair(1, 3),
    Pair(2, 3),
];

impl Pair {
    /// Canonical pair from two distinct 0-based indices in any order.
    pub fn new(i: usize, j: usize) -> Self {
        assert!(i != j && i < 4 && j < 4, "invalid pair ({i}, {j})");
        if i < j {
            Pair(i, j)
        } else {
            Pair(j, i)
        }
    }

    /// Position of this pair in [`PAIRS`].
    pub fn index(self) -> usize {
        match (self.0, self.1) {
            (0, 1) => 0,
            (0, 2) => 1,
            (0, 3) => 2,
            (1, 2) => 3,
            (1, 3) => 4,
            (2, 3) => 5,
            _ => unreachable!("pair is canonical"),
        }
    }

    /// Key such as `"r13"` (1-based, ascending).
    pub fn key(self) -> String {
        format!("r{}{}", self.0 + 1, self.1 + 1)
    }

    /// Parses `"r13"` or `"r31"`.
    pub fn from_key(key: &str) -> Option<Self> {
        let digits = key.strip_prefix('r')?.as_bytes();
        if digits.len() != 2 {
            return None;
        }
        let i = (digits[0] as char).to_digit(10)? as usize;
        let j = (digits[1] as char).to_digit(10)? as usize;
        if !(1..=4).contains(&i) || !(1..=4).contains(&j) || i == j {
            return None;
        }
        Some(Pair::new(i - 1, j - 1))
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.0 + 1, self.1 + 1)
    }
}

/// Spherical angles of the rotated axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction<T> {
    pub theta: T,
    pub phi: T,
}

impl<T: Real> Direction<T> {
    /// Canonical direction: `theta` in `[0, π]`, `phi` in `[0, 2π)`.
    pub fn new(theta: T, phi: T) -> Self {
        let two_pi = T::TAU();
        let mut theta = theta % two_pi;
        let mut phi = phi;
        if theta < T::zero() {
            theta = theta + two_pi;
        }
        if theta > T::PI() {
            theta = two_pi - theta;
            phi = phi + T::PI();
        }
        Self {
            theta,
            phi: wrap_angle(phi),
        }
    }

    pub fn unit_vector(&self) -> [T; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    /// Direction of a nonzero vector.
    pub fn from_vector(v: [T; 3]) -> Self {
        let rho = (v[0] * v[0] + v[1] * v[1]).sqrt();
        Self::new(rho.atan2(v[2]), v[1].atan2(v[0]))
    }

    pub fn antipode(&self) -> Self {
        Self::new(T::PI() - self.theta, self.phi + T::PI())
    }

    pub fn in_upper_hemisphere(&self) -> bool {
        self.theta.cos() >= T::zero()
    }

    /// Azimuthal equidistant disk coordinates `(θ cos φ, θ sin φ)`.
    pub fn to_disk(&self) -> [T; 2] {
        let (sp, cp) = self.phi.sin_cos();
        [self.theta * cp, self.theta * sp]
    }

    /// Inverse of [`Direction::to_disk`]; smooth through the pole.
    pub fn from_disk(uv: [T; 2]) -> Self {
        Self::new(uv[0].hypot(uv[1]), uv[1].atan2(uv[0]))
    }

    /// This direction or its antipode, whichever has `cos θ >= 0`.
    pub fn to_upper_hemisphere(&self) -> Self {
        if self.in_upper_hemisphere() {
            *self
        } else {
            self.antipode()
        }
    }
}

fn wrap_angle<T: Real>(phi: T) -> T {
    let two_pi = T::TAU();
    let mut p = phi % two_pi;
    if p < T::zero() {
        p = p + two_pi;
    }
    // `-tiny % 2π + 2π` rounds to 2π
    if p >= two_pi {
        p = T::zero();
    }
    p
}

/// Weighted directed areas `A_1..A_4` and their normalization constant `C`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedAreas<T> {
    values: [T; 4],
    normalization: T,
}

impl<T: Real> WeightedAreas<T> {
    /// Raw weighted areas, with `normalization` as the scale for the zero test.
    pub fn new(values: [T; 4], normalization: T) -> Self {
        Self {
            values,
            normalization,
        }
    }

    #[inline]
    pub fn get(&self, j: usize) -> T {
        self.values[j]
    }

    #[inline]
    pub fn as_array(&self) -> [T; 4] {
        self.values
    }

    /// The constant `C`.
    #[inline]
    pub fn normalization(&self) -> T {
        self.normalization
    }

    /// `A_i A_j` for a pair.
    #[inline]
    pub fn product(&self, p: Pair) -> T {
        self.values[p.0] * self.values[p.1]
    }

    /// First (0-based) particle whose area is below the degeneracy threshold.
    pub fn degenerate_particle(&self) -> Option<usize> {
        let tol = T::lit(DEGENERACY_TOL) * self.normalization.abs();
        self.values.iter().position(|a| a.abs() <= tol)
    }

    pub fn negated(&self) -> Self {
        Self::new(self.values.map(|a| -a), self.normalization)
    }
}

/// `A_j = C (a_j sinθ cosφ + b_j sinθ sinφ + c_j cosθ)` with `C = sqrt((m - m1)/μ)`.
pub fn weighted_areas<T: Real>(tetra: &Tetrahedron<T>, dir: &Direction<T>) -> WeightedAreas<T> {
    let n = dir.unit_vector();
    weighted_areas_along(tetra, n)
}

/// Weighted areas along an arbitrary (not necessarily unit) vector.
pub fn weighted_areas_along<T: Real>(tetra: &Tetrahedron<T>, n: [T; 3]) -> WeightedAreas<T> {
    let masses = tetra.masses();
    let c = ((masses.total() - masses.get(0)) / masses.mu()).sqrt();
    let values = [0, 1, 2, 3].map(|j| {
        let v = tetra.vertex(j);
        c * (v[0] * n[0] + v[1] * n[1] + v[2] * n[2])
    });
    WeightedAreas::new(values, c)
}

/// Open interval of `λ` around zero on which every `1 + λ A_j A_k` is positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaInterval<T> {
    /// Lower end; `-∞` when unconstrained.
    pub lo: T,
    /// Upper end; `+∞` when unconstrained.
    pub hi: T,
}

impl<T: Real> LambdaInterval<T> {
    pub fn contains(&self, lambda: T) -> bool {
        lambda > self.lo && lambda < self.hi
    }
}

pub fn admissible_lambda_interval<T: Real>(a: &WeightedAreas<T>) -> Result<LambdaInterval<T>> {
    if let Some(j) = a.degenerate_particle() {
        return Err(Error::DegenerateDirection { particle: j + 1 });
    }
    let mut lo = T::neg_infinity();
    let mut hi = T::infinity();
    for p in PAIRS {
        let prod = a.product(p);
        let bound = -prod.recip();
        if prod > T::zero() {
            lo = lo.max(bound);
        } else {
            hi = hi.min(bound);
        }
    }
    Ok(LambdaInterval { lo, hi })
}

/// Six positive distances, indexed by [`Pair`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceSet<T> {
    r: [T; 6],
}

impl<T: Real> DistanceSet<T> {
    /// Distances in [`PAIRS`] order. Every entry must be positive and finite.
    pub fn new(r: [T; 6]) -> Option<Self> {
        r.iter()
            .all(|x| x.is_finite() && *x > T::zero())
            .then_some(Self { r })
    }

    /// Pairwise distances of four points.
    pub fn from_points(points: &[[T; 2]; 4]) -> Option<Self> {
        Self::new(PAIRS.map(|p| {
            let (a, b) = (points[p.0], points[p.1]);
            (a[0] - b[0]).hypot(a[1] - b[1])
        }))
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.r[Pair::new(i, j).index()]
    }

    #[inline]
    pub fn pair(&self, p: Pair) -> T {
        self.r[p.index()]
    }

    #[inline]
    pub fn as_array(&self) -> [T; 6] {
        self.r
    }

    pub fn max(&self) -> T {
        self.r.iter().fold(T::zero(), |acc, &x| acc.max(x))
    }

    pub fn scaled(&self, s: T) -> Self {
        Self {
            r: self.r.map(|x| x * s),
        }
    }

    /// Relabels particles: particle `perm[j]` of `self` becomes particle `j`.
    pub fn permuted(&self, perm: [usize; 4]) -> Self {
        Self {
            r: PAIRS.map(|p| self.get(perm[p.0], perm[p.1])),
        }
    }
}

/// `r_jk = (1 + λ A_j A_k)^(-1/3)`.
pub fn distances_from_lambda<T: Real>(a: &WeightedAreas<T>, lambda: T) -> Result<DistanceSet<T>> {
    let mut r = [T::zero(); 6];
    for (slot, p) in r.iter_mut().zip(PAIRS) {
        let base = T::one() + lambda * a.product(p);
        if !(base > T::zero()) || !base.is_finite() {
            return Err(Error::LambdaOutOfDomain {
                lambda: lambda.to_f64_lossy(),
                pair: p,
            });
        }
        *slot = base.cbrt().recip();
    }
    DistanceSet::new(r).ok_or(Error::LambdaOutOfDomain {
        lambda: lambda.to_f64_lossy(),
        pair: PAIRS[0],
    })
}

/// `r_jk⁻³ - 1 - λ A_j A_k` for each pair.
pub fn dziobek_residuals<T: Real>(a: &WeightedAreas<T>, lambda: T, d: &DistanceSet<T>) -> [T; 6] {
    PAIRS.map(|p| d.pair(p).powi(-3) - T::one() - lambda * a.product(p))
}

/// `σ = Σ m_j m_k / r_jk  /  Σ m_j m_k r_jk²`; equals one in the chosen length unit.
pub fn sigma<T: Real>(masses: &MassVector<T>, d: &DistanceSet<T>) -> T {
    let (mut num, mut den) = (T::zero(), T::zero());
    for p in PAIRS {
        let w = masses.get(p.0) * masses.get(p.1);
        let r = d.pair(p);
        num = num + w / r;
        den = den + w * r * r;
    }
    num / den
}
