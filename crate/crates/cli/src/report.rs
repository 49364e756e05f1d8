//! Human-readable solution tables.

use std::fmt::Write;

use cc4_core::dziobek::PAIRS;
use cc4_core::{ConfigurationType, DistanceSet, Pair};

use crate::document::{Document, Record};
use crate::verify::RecordCheck;

/// Pair names as the tables write them: r12, r31, r41, r23, r42, r43.
fn table_label(p: Pair) -> &'static str {
    ["r12", "r31", "r41", "r23", "r42", "r43"][p.index()]
}

fn complement(p: Pair) -> Pair {
    let rest: Vec<usize> = (0..4).filter(|&k| k != p.0 && k != p.1).collect();
    Pair::new(rest[0], rest[1])
}

fn heading(kind: &ConfigurationType) -> String {
    match kind {
        ConfigurationType::Concave { interior } => format!("concave, particle {interior} inside"),
        ConfigurationType::Convex { diagonals } => format!(
            "convex, diagonals {} and {}",
            table_label(Pair::new(diagonals[0][0] - 1, diagonals[0][1] - 1)),
            table_label(Pair::new(diagonals[1][0] - 1, diagonals[1][1] - 1)),
        ),
    }
}

/// Rows of complementary pairs. The left column holds the edges at the
/// interior particle (concave) or the diagonals first and then edges at
/// particle 1 (convex).
fn rows(kind: &ConfigurationType, d: &DistanceSet) -> Vec<(Pair, Pair)> {
    match kind {
        ConfigurationType::Concave { interior } => {
            let i = interior - 1;
            let mut out: Vec<(Pair, Pair)> = (0..4)
                .filter(|&k| k != i)
                .map(|k| {
                    let p = Pair::new(i, k);
                    (p, complement(p))
                })
                .collect();
            out.sort_by(|a, b| d.pair(b.0).partial_cmp(&d.pair(a.0)).unwrap());
            out
        }
        ConfigurationType::Convex { diagonals } => {
            let diag = Pair::new(diagonals[0][0] - 1, diagonals[0][1] - 1);
            let mut out = vec![(diag, complement(diag))];
            out.extend(
                PAIRS[..3]
                    .iter()
                    .filter(|p| **p != diag)
                    .map(|p| (*p, complement(*p))),
            );
            out
        }
    }
}

pub fn solutions_table(doc: &Document) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "masses {} {} {} {}: {} configuration{}",
        doc.masses[0],
        doc.masses[1],
        doc.masses[2],
        doc.masses[3],
        doc.solutions.len(),
        if doc.solutions.len() == 1 { "" } else { "s" }
    );
    if let Some(perm) = doc.relabeling {
        let order: Vec<String> = perm.iter().map(|p| (p + 1).to_string()).collect();
        let _ = writeln!(
            s,
            "solved with particles reordered as {}; angles and lambda refer to that order",
            order.join(",")
        );
    }
    for rec in &doc.solutions {
        s.push('\n');
        record_block(&mut s, rec);
    }
    s
}

fn record_block(s: &mut String, rec: &Record) {
    let (Ok(kind), Ok(d)) = (rec.kind(), rec.distance_set()) else {
        let _ = writeln!(s, "{} (unreadable record)", rec.kind);
        return;
    };
    let _ = writeln!(s, "{} for lambda = {}", heading(&kind), rec.lambda);
    let _ = writeln!(
        s,
        "  {:<5} = {:<20} {:<5} = {}",
        "theta", rec.theta, "phi", rec.phi
    );
    for (left, right) in rows(&kind, &d) {
        let _ = writeln!(
            s,
            "  {:<5} = {:<20} {:<5} = {}",
            table_label(left),
            d.pair(left),
            table_label(right),
            d.pair(right)
        );
    }
    if let Some(groups) = &rec.symmetry {
        let g: Vec<String> = groups.iter().map(|g| g.join(" = ")).collect();
        let _ = writeln!(s, "  symmetric: {}", g.join(", "));
    }
    if let Some(r) = &rec.residuals {
        let _ = writeln!(
            s,
            "  residuals: mass {:.1e}  CM {:.1e}  sigma-1 {:.1e}  Dziobek {:.1e}",
            r.mass_mismatch, r.cayley_menger, r.sigma_minus_1, r.dziobek
        );
    }
}

pub fn verify_table(checks: &[RecordCheck]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:>3}  {:<13} {:>10} {:>10} {:>10} {:>10} {:>10}  status",
        "#", "kind", "Dziobek", "CM", "sigma-1", "mass", "worst"
    );
    for c in checks {
        let _ = writeln!(
            s,
            "{:>3}  {:<13} {:>10.2e} {:>10.2e} {:>10.2e} {:>10.2e} {:>10.2e}  {}",
            c.index + 1,
            c.kind,
            c.dziobek,
            c.cayley_menger,
            c.sigma_minus_1,
            c.mass_mismatch,
            c.worst(),
            if c.passed() {
                "ok".to_string()
            } else {
                format!("FAIL: {}", c.failures.join("; "))
            }
        );
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn concave_rows_follow_table_layout() {
        // concave, particle 1 inside, from the general-mass list
        let d = DistanceSet::new([
            0.639643905964532,
            0.749352173668766,
            0.730065912777101,
            1.22971324110202,
            1.28360719430431,
            1.10420199339901,
        ])
        .unwrap();
        let labels: Vec<(&str, &str)> = rows(&ConfigurationType::Concave { interior: 1 }, &d)
            .into_iter()
            .map(|(a, b)| (table_label(a), table_label(b)))
            .collect();
        assert_eq!(labels, vec![("r31", "r42"), ("r41", "r23"), ("r12", "r43")]);
    }

    #[test]
    fn convex_rows_start_with_diagonals() {
        let d = DistanceSet::new([1.0; 6]).unwrap();
        let labels: Vec<(&str, &str)> = rows(&ConfigurationType::convex_with_diagonal(1, 4), &d)
            .into_iter()
            .map(|(a, b)| (table_label(a), table_label(b)))
            .collect();
        assert_eq!(labels, vec![("r41", "r23"), ("r12", "r43"), ("r31", "r42")]);
    }
}
