//! The mass-dependent orthocentric tetrahedron.
//!
//! Placing mass `m_j` at vertex `j` puts the center of mass at the orthocenter
//! and makes the inertia tensor isotropic: `E · diag(m) · Eᵀ = μ I₃`. Vertex 1
//! sits on axis 3, vertex 2 in the plane of axes 2 and 3, and vertices 3 and 4
//! are split along axis 1.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Four positive masses with their total and reduced mass scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassVector<T> {
    masses: [T; 4],
    total: T,
    mu: T,
}

impl<T: Real> MassVector<T> {
    pub fn new(masses: [T; 4]) -> Result<Self> {
        let mu = reduced_mass(masses)?;
        let total = masses[0] + masses[1] + masses[2] + masses[3];
        Ok(Self { masses, total, mu })
    }

    /// Mass of particle `j` (0-based).
    #[inline]
    pub fn get(&self, j: usize) -> T {
        self.masses[j]
    }

    #[inline]
    pub fn as_array(&self) -> [T; 4] {
        self.masses
    }

    /// Total mass `m`.
    #[inline]
    pub fn total(&self) -> T {
        self.total
    }

    /// Reduced mass scale `μ = (m1 m2 m3 m4 / m)^(1/3)`.
    #[inline]
    pub fn mu(&self) -> T {
        self.mu
    }

    /// Same masses with particles reordered: slot `j` receives mass `perm[j]`.
    pub fn permuted(&self, perm: [usize; 4]) -> Self {
        let masses = perm.map(|p| self.masses[p]);
        Self::new(masses).expect("permutation of valid masses is valid")
    }

    /// Masses scaled so they sum to `total`.
    pub fn normalized_to(&self, total: T) -> Self {
        let s = total / self.total;
        Self::new(self.masses.map(|x| x * s)).expect("positive rescaling keeps masses valid")
    }
}

fn check_masses<T: Real>(masses: &[T; 4]) -> Result<()> {
    for (i, &x) in masses.iter().enumerate() {
        if !(x.is_finite() && x > T::zero()) {
            return Err(Error::InvalidMass {
                index: i + 1,
                value: x.to_f64_lossy(),
            });
        }
    }
    Ok(())
}

/// Mass scale `μ = ((m1 m2 m3 m4) / (m1 + m2 + m3 + m4))^(1/3)`.
pub fn reduced_mass<T: Real>(masses: [T; 4]) -> Result<T> {
    check_masses(&masses)?;
    let product = masses.iter().fold(T::one(), |acc, &x| acc * x);
    let total = masses.iter().fold(T::zero(), |acc, &x| acc + x);
    Ok((product / total).cbrt())
}

/// Orthocentric tetrahedron bound to its masses.
///
/// `vertices[j]` is the column `(a_j, b_j, c_j)` of the 3×4 matrix `E`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tetrahedron<T> {
    masses: MassVector<T>,
    vertices: [[T; 3]; 4],
}

impl<T: Real> Tetrahedron<T> {
    pub fn new(masses: MassVector<T>) -> Self {
        build_tetrahedron(masses)
    }

    #[inline]
    pub fn masses(&self) -> &MassVector<T> {
        &self.masses
    }

    /// Column `j` of `E` (0-based).
    #[inline]
    pub fn vertex(&self, j: usize) -> [T; 3] {
        self.vertices[j]
    }

    #[inline]
    pub fn vertices(&self) -> &[[T; 3]; 4] {
        &self.vertices
    }

    /// Row `axis` of `E`, i.e. `a`, `b` or `c` for axis 0, 1, 2.
    pub fn row(&self, axis: usize) -> [T; 4] {
        [0, 1, 2, 3].map(|j| self.vertices[j][axis])
    }

    /// `E · diag(m) · Eᵀ`, which equals `μ I₃`.
    pub fn inertia_matrix(&self) -> [[T; 3]; 3] {
        let mut out = [[T::zero(); 3]; 3];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, entry) in row.iter_mut().enumerate() {
                *entry = (0..4).fold(T::zero(), |acc, j| {
                    acc + self.masses.get(j) * self.vertices[j][r] * self.vertices[j][c]
                });
            }
        }
        out
    }

    /// `Σ_j m_j (a_j, b_j, c_j)`, which vanishes.
    pub fn mass_moment(&self) -> [T; 3] {
        let mut out = [T::zero(); 3];
        for (axis, o) in out.iter_mut().enumerate() {
            *o = (0..4).fold(T::zero(), |acc, j| {
                acc + self.masses.get(j) * self.vertices[j][axis]
            });
        }
        out
    }

    /// Squared edge length between vertices `i` and `j`.
    pub fn edge_squared(&self, i: usize, j: usize) -> T {
        let (p, q) = (self.vertices[i], self.vertices[j]);
        (0..3).fold(T::zero(), |acc, k| acc + (p[k] - q[k]) * (p[k] - q[k]))
    }

    /// Signed volume `det(v2 - v1, v3 - v1, v4 - v1) / 6`; equals `1/6`.
    pub fn signed_volume(&self) -> T {
        let v = &self.vertices;
        let d = |k: usize| [v[k][0] - v[0][0], v[k][1] - v[0][1], v[k][2] - v[0][2]];
        let (e1, e2, e3) = (d(1), d(2), d(3));
        let det = e1[0] * (e2[1] * e3[2] - e2[2] * e3[1]) - e1[1] * (e2[0] * e3[2] - e2[2] * e3[0])
            + e1[2] * (e2[0] * e3[1] - e2[1] * e3[0]);
        det / T::lit(6.0)
    }
}

/// Builds the tetrahedron with the fixed axis convention described in the module docs.
pub fn build_tetrahedron<T: Real>(masses: MassVector<T>) -> Tetrahedron<T> {
    let [m1, m2, m3, m4] = masses.as_array();
    let m = masses.total();
    let mu = masses.mu();
    let rest = m - m1;
    let pair34 = m3 + m4;
    let zero = T::zero();

    // Shared third coordinate of particles 2, 3, 4.
    let c_low = -(mu * m1 / (rest * m)).sqrt();
    // Shared second coordinate of particles 3 and 4.
    let b_low = -(mu * m2 / (pair34 * rest)).sqrt();

    let vertices = [
        [zero, zero, (mu * rest / (m1 * m)).sqrt()],
        [zero, (mu * pair34 / (m2 * rest)).sqrt(), c_low],
        [(mu * m4 / (m3 * pair34)).sqrt(), b_low, c_low],
        [-(mu * m3 / (m4 * pair34)).sqrt(), b_low, c_low],
    ];
    Tetrahedron { masses, vertices }
}
