//! Recomputes the residuals of stored records.

use cc4_core::dziobek::{
    cayley_menger_normalized, classify, dziobek_residuals, embed_planar, recovered_masses, sigma,
    weighted_areas,
};
use cc4_core::{Direction, MassVector, Tetrahedron};

use crate::document::{Document, Record};

/// Acceptance limits for a stored record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Limits {
    pub dziobek: f64,
    pub cayley_menger: f64,
    pub sigma: f64,
    /// `max |m̂_j - m_j| / m`.
    pub mass: f64,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            dziobek: 1e-8,
            cayley_menger: 1e-10,
            sigma: 1e-9,
            mass: 1e-8,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RecordCheck {
    pub index: usize,
    pub kind: String,
    pub dziobek: f64,
    pub cayley_menger: f64,
    pub sigma_minus_1: f64,
    pub mass_mismatch: f64,
    /// Reasons the record fails; empty when it passes.
    pub failures: Vec<String>,
}

impl RecordCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Largest of the four residuals.
    pub fn worst(&self) -> f64 {
        [
            self.dziobek,
            self.cayley_menger,
            self.sigma_minus_1,
            self.mass_mismatch,
        ]
        .iter()
        .fold(0.0f64, |acc, x| {
            if x.is_nan() {
                f64::NAN
            } else {
                acc.max(x.abs())
            }
        })
    }
}

/// Checks every record of `doc`. Fails up front only when the masses or the
/// relabeling are invalid.
pub fn verify_document(doc: &Document, limits: &Limits) -> Result<Vec<RecordCheck>, String> {
    let masses = MassVector::new(doc.masses).map_err(|e| e.to_string())?;
    let perm = doc.relabeling.unwrap_or([0, 1, 2, 3]);
    let mut seen = [false; 4];
    for &p in &perm {
        if p > 3 || seen[p] {
            return Err(format!("relabeling {perm:?} is not a permutation of 0..4"));
        }
        seen[p] = true;
    }
    let tetra = Tetrahedron::new(masses.permuted(perm));
    Ok(doc
        .solutions
        .iter()
        .enumerate()
        .map(|(i, rec)| check_record(i, rec, &tetra, perm, limits))
        .collect())
}

fn check_record(
    index: usize,
    rec: &Record,
    tetra: &Tetrahedron,
    perm: [usize; 4],
    limits: &Limits,
) -> RecordCheck {
    let mut out = RecordCheck {
        index,
        kind: rec.kind.clone(),
        dziobek: f64::NAN,
        cayley_menger: f64::NAN,
        sigma_minus_1: f64::NAN,
        mass_mismatch: f64::NAN,
        failures: Vec::new(),
    };
    let kind = match rec.kind() {
        Ok(k) => Some(k),
        Err(e) => {
            out.failures.push(e.to_string());
            None
        }
    };
    let d = match rec.distance_set() {
        Ok(d) => d.permuted(perm),
        Err(e) => {
            out.failures.push(e.to_string());
            return out;
        }
    };
    let masses = tetra.masses();
    let a = weighted_areas(tetra, &Direction::new(rec.theta, rec.phi));

    out.dziobek = dziobek_residuals(&a, rec.lambda, &d)
        .iter()
        .fold(0.0f64, |acc, r| acc.max(r.abs()));
    out.cayley_menger = cayley_menger_normalized(&d);
    out.sigma_minus_1 = sigma(masses, &d) - 1.0;

    match embed_planar(&d).and_then(|cfg| {
        let m = recovered_masses(&cfg.areas, &a, masses.total())?;
        Ok((cfg, m))
    }) {
        Ok((cfg, m)) => {
            out.mass_mismatch = (0..4)
                .map(|j| (m.get(j) - masses.get(j)).abs() / masses.total())
                .fold(0.0, f64::max);
            if let (Some(kind), Some(found)) = (kind, classify(&cfg.areas).region()) {
                let found = found.relabeled(inverse(perm));
                if found != kind {
                    out.failures
                        .push(format!("kind is {found}, record says {kind}"));
                }
            }
        }
        Err(e) => out.failures.push(format!("mass recovery failed: {e}")),
    }

    let checks = [
        ("Dziobek residual", out.dziobek, limits.dziobek),
        ("Cayley-Menger", out.cayley_menger, limits.cayley_menger),
        ("sigma - 1", out.sigma_minus_1, limits.sigma),
        ("mass mismatch", out.mass_mismatch, limits.mass),
    ];
    for (name, value, limit) in checks {
        if value.is_nan() {
            continue;
        }
        if value.abs() > limit {
            out.failures
                .push(format!("{name} {value:.3e} exceeds {limit:.0e}"));
        }
    }
    out
}

pub fn inverse(perm: [usize; 4]) -> [usize; 4] {
    let mut inv = [0; 4];
    for (j, &p) in perm.iter().enumerate() {
        inv[p] = j;
    }
    inv
}
