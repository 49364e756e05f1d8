//! Optional solver overrides read from a JSON file.

use cc4_core::SolverSettings;
use serde::Deserialize;

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Overrides {
    pub lambda_scan_points: Option<usize>,
    pub lambda_root_tol: Option<f64>,
    pub angle_tol: Option<f64>,
    pub mass_tol: Option<f64>,
    pub grid: Option<(usize, usize)>,
    pub census_scan_points: Option<usize>,
    pub starts_per_region: Option<usize>,
    pub max_iterations: Option<usize>,
    pub duplicate_tol: Option<f64>,
}

impl Overrides {
    pub fn apply(&self, s: &mut SolverSettings) {
        macro_rules! set {
            ($($f:ident),*) => {
                $(if let Some(v) = self.$f { s.$f = v; })*
            };
        }
        set!(
            lambda_scan_points,
            lambda_root_tol,
            angle_tol,
            mass_tol,
            grid,
            census_scan_points,
            starts_per_region,
            max_iterations,
            duplicate_tol
        );
    }
}

/// Parses `NxM` as `(n_theta, n_phi)`.
pub fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("grid `{s}` is not of the form NxM"))?;
    let n: usize = a
        .trim()
        .parse()
        .map_err(|_| format!("bad grid size `{a}`"))?;
    let m: usize = b
        .trim()
        .parse()
        .map_err(|_| format!("bad grid size `{b}`"))?;
    if n < 2 || m < 2 {
        return Err(format!("grid `{s}` needs at least 2 points per axis"));
    }
    Ok((n, m))
}

/// Parses `a,b,c,d`.
pub fn parse_masses(s: &str) -> Result<[f64; 4], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(format!(
            "expected four comma-separated masses, got {}",
            parts.len()
        ));
    }
    let mut out = [0.0; 4];
    for (i, p) in parts.iter().enumerate() {
        out[i] = p
            .parse()
            .map_err(|_| format!("mass {} (`{p}`) is not a number", i + 1))?;
    }
    Ok(out)
}
