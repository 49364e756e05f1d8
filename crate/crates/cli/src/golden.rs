//! Bundled reference solutions and the comparison used by `repro`.

use std::f64::consts::TAU;

use crate::document::{Document, Record};

/// The seven configurations for masses 10, 13, 15, 17.
pub const GENERAL: &str = include_str!("../golden/general.json");

/// Kite and asymmetric configurations for masses 10, 8, 9, 9.
pub const EQUAL_PAIR: &str = include_str!("../golden/equal_pair.json");

pub fn general() -> Document {
    Document::from_json(GENERAL).expect("bundled golden file parses")
}

pub fn equal_pair() -> Document {
    Document::from_json(EQUAL_PAIR).expect("bundled golden file parses")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub lambda: f64,
    pub distance: f64,
    pub angle: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            lambda: 1e-9,
            distance: 1e-9,
            angle: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Match {
    pub expected: usize,
    pub found: usize,
    pub lambda_err: f64,
    pub distance_err: f64,
    pub angle_err: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Diff {
    pub matched: Vec<Match>,
    /// Expected records with no found record of the same kind and `λ`.
    pub missing: Vec<usize>,
    /// Found records not matched to any expected one.
    pub extra: Vec<usize>,
    /// Matches outside the tolerances.
    pub out_of_tolerance: Vec<usize>,
}

impl Diff {
    /// Every expected record is reproduced within tolerance. Extra records are allowed.
    pub fn reproduced(&self) -> bool {
        self.missing.is_empty() && self.out_of_tolerance.is_empty()
    }
}

fn angle_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

fn errors(e: &Record, f: &Record) -> Option<(f64, f64, f64)> {
    let (de, df) = (e.distance_set().ok()?, f.distance_set().ok()?);
    let dist = de
        .as_array()
        .iter()
        .zip(df.as_array())
        .fold(0.0f64, |acc, (x, y)| acc.max((x - y).abs()));
    let angle = (e.theta - f.theta).abs().max(angle_gap(e.phi, f.phi));
    Some(((e.lambda - f.lambda).abs(), dist, angle))
}

/// Pairs each expected record with the closest found record of the same
/// kind (by `λ`, then distances), each found record used at most once.
pub fn compare(expected: &Document, found: &Document, tol: &Tolerances) -> Diff {
    let mut used = vec![false; found.solutions.len()];
    let mut diff = Diff::default();
    for (i, e) in expected.solutions.iter().enumerate() {
        let best = found
            .solutions
            .iter()
            .enumerate()
            .filter(|(j, f)| !used[*j] && f.kind == e.kind)
            .filter_map(|(j, f)| errors(e, f).map(|err| (j, err)))
            .min_by(|a, b| {
                let ka = a.1 .0 + a.1 .1;
                let kb = b.1 .0 + b.1 .1;
                ka.partial_cmp(&kb).unwrap()
            });
        match best {
            // Far away in λ means this kind simply lacks the solution.
            Some((j, (l, d, a))) if l <= 1e3 * tol.lambda.max(1e-6) => {
                used[j] = true;
                if l > tol.lambda || d > tol.distance || a > tol.angle {
                    diff.out_of_tolerance.push(i);
                }
                diff.matched.push(Match {
                    expected: i,
                    found: j,
                    lambda_err: l,
                    distance_err: d,
                    angle_err: a,
                });
            }
            _ => diff.missing.push(i),
        }
    }
    diff.extra = (0..found.solutions.len()).filter(|j| !used[*j]).collect();
    diff
}
