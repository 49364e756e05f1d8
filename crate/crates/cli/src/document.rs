//! The JSON solutions document shared by `solve`, `kite`, `verify` and `repro`.

use std::collections::BTreeMap;

use cc4_core::dziobek::PAIRS;
use cc4_core::{CentralConfiguration, ConfigurationType, DistanceSet, Pair};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

/// Rounds to 15 significant digits, the precision of the published tables.
pub fn round15(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub schema_version: u32,
    pub command: String,
    pub masses: [f64; 4],
    /// Slot `j` of the solver held input particle `relabeling[j]` (0-based).
    /// Angles and `lambda` refer to that ordering; everything else uses input labels.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relabeling: Option<[usize; 4]>,
    pub solutions: Vec<Record>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Record {
    pub kind: String,
    pub lambda: f64,
    pub theta: f64,
    pub phi: f64,
    /// Keyed `"r12"` … `"r34"`.
    pub distances: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recovered_masses: Option<[f64; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residuals: Option<RecordResiduals>,
    /// Groups of equal distances, e.g. `[["r13", "r14"], ["r23", "r24"]]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetry: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecordResiduals {
    pub mass_mismatch: f64,
    pub cayley_menger: f64,
    pub sigma_minus_1: f64,
    pub dziobek: f64,
}

#[derive(Debug, thiserror::Error)]
pub enum RecordError {
    #[error("unknown configuration kind `{0}`")]
    Kind(String),
    #[error("distance `{0}` is missing")]
    Missing(String),
    #[error("unexpected distance key `{0}`")]
    UnknownKey(String),
    #[error("distance `{0}` is given twice")]
    Duplicate(String),
    #[error("distances must be positive and finite")]
    NonPositive,
}

impl Document {
    pub fn new(command: &str, masses: [f64; 4], solutions: Vec<Record>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            masses: masses.map(round15),
            relabeling: None,
            solutions,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

impl Record {
    /// A rounded record of a solved configuration.
    pub fn from_solution(c: &CentralConfiguration) -> Self {
        let r = &c.residuals;
        Self {
            kind: c.kind.to_string(),
            lambda: round15(c.lambda),
            theta: round15(c.direction.theta),
            phi: round15(c.direction.phi),
            distances: distance_map(&c.distances),
            recovered_masses: Some(c.recovered.as_array().map(round15)),
            residuals: Some(RecordResiduals {
                mass_mismatch: round15(r.mass_mismatch),
                cayley_menger: round15(r.cm),
                sigma_minus_1: round15(r.sigma_minus_1),
                dziobek: round15(r.dziobek),
            }),
            symmetry: None,
        }
    }

    pub fn kind(&self) -> Result<ConfigurationType, RecordError> {
        self.kind
            .parse()
            .map_err(|_| RecordError::Kind(self.kind.clone()))
    }

    /// Distances in canonical pair order. Keys may be written either way
    /// round (`"r31"` is `"r13"`).
    pub fn distance_set(&self) -> Result<DistanceSet, RecordError> {
        let mut r = [f64::NAN; 6];
        for (key, value) in &self.distances {
            let pair = Pair::from_key(key).ok_or_else(|| RecordError::UnknownKey(key.clone()))?;
            if !r[pair.index()].is_nan() {
                return Err(RecordError::Duplicate(pair.key()));
            }
            r[pair.index()] = *value;
        }
        if let Some(i) = r.iter().position(|x| x.is_nan()) {
            return Err(RecordError::Missing(PAIRS[i].key()));
        }
        DistanceSet::new(r).ok_or(RecordError::NonPositive)
    }
}

pub fn distance_map(d: &DistanceSet) -> BTreeMap<String, f64> {
    PAIRS
        .iter()
        .map(|p| (p.key(), round15(d.pair(*p))))
        .collect()
}

/// Groups of equal distances (relative tolerance `tol`), keyed canonically.
pub fn equal_distance_groups(d: &DistanceSet, tol: f64) -> Vec<Vec<String>> {
    let mut groups: Vec<Vec<Pair>> = Vec::new();
    for p in PAIRS {
        let x = d.pair(p);
        match groups
            .iter_mut()
            .find(|g| (d.pair(g[0]) - x).abs() <= tol * x)
        {
            Some(g) => g.push(p),
            None => groups.push(vec![p]),
        }
    }
    groups
        .into_iter()
        .filter(|g| g.len() > 1)
        .map(|g| g.into_iter().map(|p| p.key()).collect())
        .collect()
}
