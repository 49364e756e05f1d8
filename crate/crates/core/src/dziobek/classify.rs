use std::fmt;
use std::str::FromStr;

use crate::scalar::Real;

/// Shape class of a planar four-body configuration. Particles are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConfigurationType {
    /// One particle inside the triangle of the other three.
    Concave { interior: usize },
    /// Quadrilateral; `diagonals[0]` contains particle 1, both pairs ascending.
    Convex { diagonals: [[usize; 2]; 2] },
}

impl ConfigurationType {
    /// The four concave and three convex types.
    pub const ALL: [ConfigurationType; 7] = [
        ConfigurationType::Concave { interior: 1 },
        ConfigurationType::Concave { interior: 2 },
        ConfigurationType::Concave { interior: 3 },
        ConfigurationType::Concave { interior: 4 },
        ConfigurationType::Convex {
            diagonals: [[1, 2], [3, 4]],
        },
        ConfigurationType::Convex {
            diagonals: [[1, 3], [2, 4]],
        },
        ConfigurationType::Convex {
            diagonals: [[1, 4], [2, 3]],
        },
    ];

    /// Convex type whose diagonals include the pair `{i, j}` (1-based).
    pub fn convex_with_diagonal(i: usize, j: usize) -> Self {
        let partner = if i == 1 || j == 1 {
            i.max(j)
        } else {
            9 - i - j
        };
        let rest: Vec<usize> = (2..=4).filter(|&k| k != partner).collect();
        ConfigurationType::Convex {
            diagonals: [[1, partner], [rest[0], rest[1]]],
        }
    }

    pub fn is_concave(&self) -> bool {
        matches!(self, ConfigurationType::Concave { .. })
    }

    /// Applies a relabeling where new particle `j` is old particle `perm[j]` (0-based).
    pub fn relabeled(&self, perm: [usize; 4]) -> Self {
        let mut inverse = [0usize; 4];
        for (new, &old) in perm.iter().enumerate() {
            inverse[old] = new;
        }
        let map = |p: usize| inverse[p - 1] + 1;
        match *self {
            ConfigurationType::Concave { interior } => ConfigurationType::Concave {
                interior: map(interior),
            },
            ConfigurationType::Convex { diagonals } => {
                let a = map(diagonals[0][0]);
                let b = map(diagonals[0][1]);
                ConfigurationType::convex_with_diagonal(a, b)
            }
        }
    }
}

impl fmt::Display for ConfigurationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigurationType::Concave { interior } => write!(f, "concave-{interior}"),
            ConfigurationType::Convex {
                diagonals: [[a, b], [c, d]],
            } => {
                write!(f, "convex-{a}{b}-{c}{d}")
            }
        }
    }
}

impl FromStr for ConfigurationType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ConfigurationType::ALL
            .into_iter()
            .find(|t| t.to_string() == s)
            .ok_or_else(|| format!("unknown configuration type `{s}`"))
    }
}

/// Classification of a direction or of a solved configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pattern {
    Region(ConfigurationType),
    /// Some entry is zero: three particles are collinear.
    Boundary,
}

impl Pattern {
    pub fn region(&self) -> Option<ConfigurationType> {
        match self {
            Pattern::Region(t) => Some(*t),
            Pattern::Boundary => None,
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::Region(t) => t.fmt(f),
            Pattern::Boundary => f.write_str("boundary"),
        }
    }
}

/// Classifies four signed values (weighted or directed areas) by sign alone.
///
/// A 1-vs-3 split is concave with the odd particle inside; a 2-vs-2 split is
/// convex and the same-sign pairs are the diagonals.
pub fn classify<T: Real>(values: &[T; 4]) -> Pattern {
    if values.iter().any(|v| *v == T::zero() || v.is_nan()) {
        return Pattern::Boundary;
    }
    let positive: Vec<usize> = (0..4).filter(|&j| values[j] > T::zero()).collect();
    match positive.len() {
        1 => Pattern::Region(ConfigurationType::Concave {
            interior: positive[0] + 1,
        }),
        3 => Pattern::Region(ConfigurationType::Concave {
            interior: (0..4).find(|j| !positive.contains(j)).unwrap() + 1,
        }),
        2 => Pattern::Region(ConfigurationType::convex_with_diagonal(
            positive[0] + 1,
            positive[1] + 1,
        )),
        // All four of one sign cannot balance Σ m_j A_j = 0.
        _ => Pattern::Boundary,
    }
}
