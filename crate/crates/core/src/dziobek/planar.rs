//! Planarity test, coordinate realization, directed areas and mass recovery.

use super::{DistanceSet, WeightedAreas, PAIRS};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::tetra::MassVector;

/// Bound on `|CM| / (max r)⁶` for a distance set to count as planar.
pub const PLANARITY_TOL: f64 = 1e-10;

/// Relative slack on triangle inequalities, so exactly collinear input is accepted.
const TRIANGLE_SLACK: f64 = 1e-12;

/// Bound on the realized-minus-given distance mismatch, relative to `max r`.
const EMBED_TOL: f64 = 1e-9;

/// Cayley–Menger determinant of four points: `288 V²`.
pub fn cayley_menger<T: Real>(d: &DistanceSet<T>) -> T {
    let mut m = [[T::one(); 5]; 5];
    m[0][0] = T::zero();
    for k in 1..5 {
        m[k][k] = T::zero();
    }
    for p in PAIRS {
        let sq = d.pair(p) * d.pair(p);
        m[p.0 + 1][p.1 + 1] = sq;
        m[p.1 + 1][p.0 + 1] = sq;
    }
    determinant(m)
}

/// `cayley_menger(d) / (max r)⁶`, which is invariant under uniform scaling.
pub fn cayley_menger_normalized<T: Real>(d: &DistanceSet<T>) -> T {
    cayley_menger(&d.scaled(d.max().recip()))
}

fn determinant<T: Real, const N: usize>(mut m: [[T; N]; N]) -> T {
    let mut det = T::one();
    for col in 0..N {
        let pivot = (col..N)
            .max_by(|&a, &b| {
                m[a][col]
                    .abs()
                    .partial_cmp(&m[b][col].abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .unwrap_or(col);
        if m[pivot][col] == T::zero() {
            return T::zero();
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col];
        det = det * p;
        for row in (col + 1)..N {
            let factor = m[row][col] / p;
            if factor != T::zero() {
                for k in col..N {
                    let v = m[col][k];
                    m[row][k] = m[row][k] - factor * v;
                }
            }
        }
    }
    det
}

/// Planar coordinates of the four particles with their directed areas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanarConfig<T> {
    pub points: [[T; 2]; 4],
    pub areas: [T; 4],
}

impl<T: Real> PlanarConfig<T> {
    pub fn from_points(points: [[T; 2]; 4]) -> Self {
        Self {
            points,
            areas: directed_areas(&points),
        }
    }

    pub fn distances(&self) -> Option<DistanceSet<T>> {
        DistanceSet::from_points(&self.points)
    }

    /// `(Σ S_i, Σ S_i x_i, Σ S_i y_i)`, all zero for any planar quadruple.
    pub fn affine_residuals(&self) -> [T; 3] {
        let mut out = [T::zero(); 3];
        for (s, p) in self.areas.iter().zip(self.points.iter()) {
            out[0] = out[0] + *s;
            out[1] = out[1] + *s * p[0];
            out[2] = out[2] + *s * p[1];
        }
        out
    }
}

fn check_triangle<T: Real>(a: T, b: T, c: T, labels: [usize; 3]) -> Result<()> {
    let longest = a.max(b).max(c);
    let slack = T::lit(TRIANGLE_SLACK) * longest;
    if longest > (a + b + c - longest) + slack {
        return Err(Error::NotRealizable(labels));
    }
    Ok(())
}

/// Realizes a coplanar distance set in the fixed gauge: particle 1 at the
/// origin, particle 2 on the positive x axis, particle 3 with `y >= 0`.
pub fn embed_planar<T: Real>(d: &DistanceSet<T>) -> Result<PlanarConfig<T>> {
    let (r12, r13, r14) = (d.get(0, 1), d.get(0, 2), d.get(0, 3));
    let (r23, r24, r34) = (d.get(1, 2), d.get(1, 3), d.get(2, 3));
    check_triangle(r12, r13, r23, [1, 2, 3])?;
    check_triangle(r12, r14, r24, [1, 2, 4])?;

    let cm = cayley_menger_normalized(d);
    if !(cm.abs() <= T::lit(PLANARITY_TOL)) {
        return Err(Error::NotPlanar {
            residual: cm.to_f64_lossy(),
        });
    }

    let two = T::lit(2.0);
    let place = |ra: T, rb: T| {
        let x = (ra * ra - rb * rb + r12 * r12) / (two * r12);
        let y = (ra * ra - x * x).max(T::zero()).sqrt();
        [x, y]
    };
    let p3 = place(r13, r23);
    let mut p4 = place(r14, r24);
    let dx = p3[0] - p4[0];
    let same = (dx.hypot(p3[1] - p4[1]) - r34).abs();
    let flipped = (dx.hypot(p3[1] + p4[1]) - r34).abs();
    let residual = if flipped < same {
        p4[1] = -p4[1];
        flipped
    } else {
        same
    };
    if !(residual <= T::lit(EMBED_TOL) * d.max()) {
        return Err(Error::NotPlanar {
            residual: (residual / d.max()).to_f64_lossy(),
        });
    }
    let zero = T::zero();
    Ok(PlanarConfig::from_points([
        [zero, zero],
        [r12, zero],
        p3,
        p4,
    ]))
}

/// `det [[1,1,1],[x_i,x_j,x_k],[y_i,y_j,y_k]]`.
fn minor<T: Real>(p: &[[T; 2]; 4], i: usize, j: usize, k: usize) -> T {
    (p[j][0] - p[i][0]) * (p[k][1] - p[i][1]) - (p[k][0] - p[i][0]) * (p[j][1] - p[i][1])
}

/// Double directed areas with column orders `S1: 234`, `S2: 143`, `S3: 124`, `S4: 132`.
pub fn directed_areas<T: Real>(points: &[[T; 2]; 4]) -> [T; 4] {
    [
        minor(points, 1, 2, 3),
        minor(points, 0, 3, 2),
        minor(points, 0, 1, 3),
        minor(points, 0, 2, 1),
    ]
}

/// Masses `m̂_j ∝ S_j / A_j`, scaled to sum to `total`.
///
/// The common sign of the four ratios is divided out, so a mirrored
/// configuration gives the same masses.
pub fn recovered_masses<T: Real>(
    areas: &[T; 4],
    weighted: &WeightedAreas<T>,
    total: T,
) -> Result<MassVector<T>> {
    if let Some(j) = weighted.degenerate_particle() {
        return Err(Error::DegenerateDirection { particle: j + 1 });
    }
    let ratios = [0, 1, 2, 3].map(|j| areas[j] / weighted.get(j));
    let positive = ratios.iter().all(|&r| r > T::zero());
    let negative = ratios.iter().all(|&r| r < T::zero());
    if !(positive || negative) {
        return Err(Error::InconsistentOrientation);
    }
    let sum = ratios.iter().fold(T::zero(), |acc, &r| acc + r);
    MassVector::new(ratios.map(|r| r / sum * total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn square() -> [[f64; 2]; 4] {
        [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]
    }

    #[test]
    fn square_is_planar() {
        let d = DistanceSet::from_points(&square()).unwrap();
        assert!(cayley_menger(&d).abs() < 1e-14);
    }

    #[test]
    fn regular_unit_tetrahedron() {
        // V = 1/(6 sqrt 2), so 288 V² = 4.
        let d = DistanceSet::new([1.0; 6]).unwrap();
        assert_relative_eq!(cayley_menger(&d), 4.0, max_relative = 1e-14);
        assert_relative_eq!(cayley_menger_normalized(&d), 4.0, max_relative = 1e-14);
    }

    #[test]
    fn mass_tetrahedron_has_volume_one_sixth() {
        use crate::tetra::{MassVector, Tetrahedron};
        let t = Tetrahedron::new(MassVector::new([10.0f64, 13.0, 15.0, 17.0]).unwrap());
        let d = DistanceSet::new(PAIRS.map(|p| t.edge_squared(p.0, p.1).sqrt())).unwrap();
        assert_relative_eq!(cayley_menger(&d), 8.0, max_relative = 1e-12);
    }

    #[test]
    fn normalized_is_scale_free() {
        let d = DistanceSet::new([1.0, 1.2, 0.9, 1.1, 1.3, 0.8]).unwrap();
        let s: f64 = 7.5;
        assert_relative_eq!(
            cayley_menger(&d.scaled(s)),
            cayley_menger(&d) * s.powi(6),
            max_relative = 1e-12
        );
        assert_relative_eq!(
            cayley_menger_normalized(&d.scaled(s)),
            cayley_menger_normalized(&d),
            max_relative = 1e-12
        );
    }

    #[test]
    fn embed_square() {
        let d = DistanceSet::from_points(&square()).unwrap();
        let p = embed_planar(&d).unwrap();
        let want = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
        for j in 0..4 {
            for k in 0..2 {
                assert!((p.points[j][k] - want[j][k]).abs() < 1e-14);
            }
        }
        for (s, want) in p.areas.iter().zip([1.0, -1.0, 1.0, -1.0]) {
            assert!((s - want).abs() < 1e-14);
        }
    }

    #[test]
    fn embed_collinear() {
        let pts = [[0.0f64, 0.0], [1.0, 0.0], [2.0, 0.0], [3.0, 0.0]];
        let d = DistanceSet::from_points(&pts).unwrap();
        let p = embed_planar(&d).unwrap();
        assert_eq!(p.areas, [0.0; 4]);
        let back = p.distances().unwrap();
        for k in 0..6 {
            assert!((back.as_array()[k] - d.as_array()[k]).abs() < 1e-12);
        }
    }

    #[test]
    fn embed_rejects_bad_input() {
        // r23 too long for r12 + r13.
        let d = DistanceSet::new([1.0, 1.0, 1.0, 3.0, 1.0, 1.0]).unwrap();
        assert_eq!(embed_planar(&d), Err(Error::NotRealizable([1, 2, 3])));
        let d = DistanceSet::new([1.0, 1.0, 1.0, 1.0, 2.5, 1.0]).unwrap();
        assert_eq!(embed_planar(&d), Err(Error::NotRealizable([1, 2, 4])));
        let d = DistanceSet::new([1.0; 6]).unwrap();
        assert!(matches!(embed_planar(&d), Err(Error::NotPlanar { .. })));
    }

    #[test]
    fn directed_area_examples() {
        assert_eq!(directed_areas(&square()), [1.0, -1.0, 1.0, -1.0]);
        let mirrored = square().map(|[x, y]| [x, -y]);
        assert_eq!(directed_areas(&mirrored), [-1.0, 1.0, -1.0, 1.0]);
        let line = [[0.0, 0.0], [0.5, 0.0], [2.0, 0.0], [-1.0, 0.0]];
        assert_eq!(directed_areas(&line), [0.0; 4]);
    }

    #[test]
    fn affine_identities() {
        let p = PlanarConfig::from_points([[0.3f64, -1.2], [2.0, 0.4], [-0.7, 0.9], [1.1, 1.7]]);
        for r in p.affine_residuals() {
            assert!(r.abs() < 1e-14);
        }
    }

    #[test]
    fn mass_recovery() {
        let s = [1.0, -1.0, 1.0, -1.0];
        let a = WeightedAreas::new([0.3, -0.3, 0.3, -0.3], 1.0);
        let m = recovered_masses(&s, &a, 4.0).unwrap();
        assert_eq!(m.as_array(), [1.0; 4]);
        // mirrored configuration gives the same masses
        let m = recovered_masses(&s.map(|x: f64| -x), &a, 4.0).unwrap();
        assert_eq!(m.as_array(), [1.0; 4]);
        let bad = WeightedAreas::new([1.0; 4], 1.0);
        assert_eq!(
            recovered_masses(&s, &bad, 4.0),
            Err(Error::InconsistentOrientation)
        );
        let zero = WeightedAreas::new([1.0, 0.0, 1.0, -1.0], 1.0);
        assert_eq!(
            recovered_masses(&s, &zero, 4.0),
            Err(Error::DegenerateDirection { particle: 2 })
        );
    }
}
