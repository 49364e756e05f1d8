//! Command implementations. Each returns the text for stdout or a [`CliError`]
//! that carries the process exit status.

use std::fs;
use std::path::{Path, PathBuf};

use cc4_core::atlas::{census, sample_hemisphere};
use cc4_core::solver::{solve_all, solve_kite};
use cc4_core::{CentralConfiguration, MassVector, SolverSettings, Tetrahedron};

use crate::document::{equal_distance_groups, Document, Record};
use crate::golden::{self, Tolerances};
use crate::map::{render_svg, write_samples_csv, write_solutions_csv};
use crate::report::{solutions_table, verify_table};
use crate::settings::Overrides;
use crate::verify::{inverse, verify_document, Limits};

/// Relative tolerance for reporting two distances as equal.
const SYMMETRY_TOL: f64 = 1e-10;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Verification(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Verification(_) => 2,
            CliError::Io { .. } => 3,
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn validation<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Validation(e.to_string())
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(io_err(path))
}

pub fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(io_err(path))
}

/// Default settings with the optional overrides file and `--grid` applied.
pub fn load_settings(
    path: Option<&Path>,
    grid: Option<(usize, usize)>,
) -> Result<SolverSettings, CliError> {
    let mut s = SolverSettings::default();
    if let Some(path) = path {
        let text = read_file(path)?;
        let o: Overrides = serde_json::from_str(&text)
            .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
        o.apply(&mut s);
    }
    if let Some(g) = grid {
        s.grid = g;
    }
    s.validate().map_err(validation)?;
    Ok(s)
}

fn masses(m: [f64; 4]) -> Result<MassVector, CliError> {
    MassVector::new(m).map_err(validation)
}

pub fn solve_document(
    m: [f64; 4],
    settings: &SolverSettings,
) -> Result<(Document, Vec<CentralConfiguration>), CliError> {
    let mv = masses(m)?;
    let found = solve_all(&mv, settings).map_err(validation)?;
    warn_nonnegative(&found);
    let doc = Document::new(
        "solve",
        m,
        found.iter().map(Record::from_solution).collect(),
    );
    Ok((doc, found))
}

/// Every known solution has `λ < 0`; anything else is reported but kept.
fn warn_nonnegative(found: &[CentralConfiguration]) {
    for c in found.iter().filter(|c| !c.lambda_is_negative()) {
        eprintln!(
            "warning: {} solution has lambda = {} >= 0",
            c.kind, c.lambda
        );
    }
}

pub fn solve(
    m: [f64; 4],
    out: Option<&Path>,
    settings: &SolverSettings,
) -> Result<String, CliError> {
    let (doc, _) = solve_document(m, settings)?;
    emit(&doc, out)
}

fn emit(doc: &Document, out: Option<&Path>) -> Result<String, CliError> {
    match out {
        Some(p) if p.as_os_str() == "-" => Ok(doc.to_json()),
        Some(p) => {
            write_file(p, &doc.to_json())?;
            Ok(solutions_table(doc))
        }
        None => Ok(solutions_table(doc)),
    }
}

/// Ordering that puts an equal pair in slots 3 and 4, keeping the other two in order.
fn equal_pair_order(m: [f64; 4]) -> Option<[usize; 4]> {
    let same = |a: f64, b: f64| (a - b).abs() <= 1e-12 * a.max(b);
    if same(m[2], m[3]) {
        return Some([0, 1, 2, 3]);
    }
    for i in 0..4 {
        for j in i + 1..4 {
            if same(m[i], m[j]) {
                let rest: Vec<usize> = (0..4).filter(|&k| k != i && k != j).collect();
                return Some([rest[0], rest[1], i, j]);
            }
        }
    }
    None
}

pub fn kite_document(
    m: [f64; 4],
    relabel: bool,
    settings: &SolverSettings,
) -> Result<Document, CliError> {
    let mv = masses(m)?;
    let perm = if relabel {
        equal_pair_order(m).ok_or_else(|| CliError::Validation("no two masses are equal".into()))?
    } else {
        [0, 1, 2, 3]
    };
    let found = match solve_kite(&mv.permuted(perm), settings) {
        Ok(f) => f,
        Err(cc4_core::Error::UnequalKiteMasses { m3, m4 }) => {
            let hint = if equal_pair_order(m).is_some() {
                "; pass --relabel to move the equal pair to positions 3 and 4"
            } else {
                ""
            };
            return Err(CliError::Validation(format!(
                "kite needs m3 = m4, got {m3} and {m4}{hint}"
            )));
        }
        Err(e) => return Err(validation(e)),
    };
    warn_nonnegative(&found);
    let inv = inverse(perm);
    let records = found
        .iter()
        .map(|c| {
            let mut c = *c;
            c.distances = c.distances.permuted(inv);
            c.kind = c.kind.relabeled(inv);
            c.recovered = c.recovered.permuted(inv);
            let mut rec = Record::from_solution(&c);
            rec.symmetry = Some(equal_distance_groups(&c.distances, SYMMETRY_TOL));
            rec
        })
        .collect();
    let mut doc = Document::new("kite", m, records);
    if perm != [0, 1, 2, 3] {
        doc.relabeling = Some(perm);
    }
    Ok(doc)
}

pub fn kite(
    m: [f64; 4],
    relabel: bool,
    out: Option<&Path>,
    settings: &SolverSettings,
) -> Result<String, CliError> {
    let doc = kite_document(m, relabel, settings)?;
    emit(&doc, out)
}

pub struct MapRequest<'a> {
    pub masses: [f64; 4],
    pub out: &'a Path,
    pub grid: (usize, usize),
    pub with_solutions: bool,
    pub settings: &'a SolverSettings,
}

/// Writes `<out>.csv`, `<out>.svg` and, with solutions, `<out>-solutions.csv`.
pub fn map(req: &MapRequest) -> Result<String, CliError> {
    let mv = masses(req.masses)?;
    let tetra = Tetrahedron::new(mv);
    let (n_theta, n_phi) = req.grid;
    let samples = sample_hemisphere(&tetra, n_theta, n_phi);
    let solutions = if req.with_solutions {
        solve_all(&mv, req.settings).map_err(validation)?
    } else {
        Vec::new()
    };

    let with_ext = |suffix: &str| {
        let mut s = req.out.as_os_str().to_owned();
        s.push(suffix);
        PathBuf::from(s)
    };
    let csv_path = with_ext(".csv");
    let mut buf = Vec::new();
    write_samples_csv(&mut buf, &samples).map_err(|e| CliError::Validation(e.to_string()))?;
    fs::write(&csv_path, buf).map_err(io_err(&csv_path))?;
    let svg_path = with_ext(".svg");
    write_file(&svg_path, &render_svg(&tetra, n_theta, n_phi, &solutions))?;

    let mut report = format!(
        "wrote {} ({} samples)\nwrote {}\n",
        csv_path.display(),
        samples.len(),
        svg_path.display()
    );
    if req.with_solutions {
        let sol_path = with_ext("-solutions.csv");
        let mut buf = Vec::new();
        write_solutions_csv(&mut buf, &solutions)
            .map_err(|e| CliError::Validation(e.to_string()))?;
        fs::write(&sol_path, buf).map_err(io_err(&sol_path))?;
        report.push_str(&format!(
            "wrote {} ({} solutions)\n",
            sol_path.display(),
            solutions.len()
        ));
    }
    for (kind, count) in census(&samples) {
        report.push_str(&format!("  {kind:<13} {count}\n"));
    }
    Ok(report)
}

/// Parses a solutions document, reporting the line and column of syntax errors.
pub fn parse_document(text: &str, path: &Path) -> Result<Document, CliError> {
    Document::from_json(text).map_err(|e| {
        CliError::Validation(format!(
            "{}: line {}, column {}: {}",
            path.display(),
            e.line(),
            e.column(),
            e
        ))
    })
}

pub fn verify(path: &Path) -> Result<String, CliError> {
    let doc = parse_document(&read_file(path)?, path)?;
    let checks = verify_document(&doc, &Limits::default()).map_err(CliError::Validation)?;
    let table = verify_table(&checks);
    let failed = checks.iter().filter(|c| !c.passed()).count();
    if failed > 0 {
        return Err(CliError::Verification(format!(
            "{table}{failed} of {} records failed",
            checks.len()
        )));
    }
    Ok(format!("{table}all {} records pass\n", checks.len()))
}

/// Solves both reference mass sets and compares with the bundled solutions.
pub fn repro(out_dir: Option<&Path>, settings: &SolverSettings) -> Result<String, CliError> {
    let tol = Tolerances::default();
    let mut report = String::new();
    let mut ok = true;

    let general = golden::general();
    let (found, _) = solve_document(general.masses, settings)?;
    ok &= section(&mut report, "solve", &general, &found, &tol);

    let pair = golden::equal_pair();
    let (found_all, _) = solve_document(pair.masses, settings)?;
    ok &= section(&mut report, "solve", &pair, &found_all, &tol);
    let found_kite = kite_document(pair.masses, false, settings)?;
    let mut symmetric = pair.clone();
    symmetric.solutions.retain(|r| r.symmetry.is_some());
    ok &= section(&mut report, "kite", &symmetric, &found_kite, &tol);

    if let Some(dir) = out_dir {
        fs::create_dir_all(dir).map_err(io_err(dir))?;
        for (name, doc) in [
            ("general.json", &found),
            ("equal_pair.json", &found_all),
            ("equal_pair_kite.json", &found_kite),
        ] {
            write_file(&dir.join(name), &doc.to_json())?;
        }
    }
    if ok {
        Ok(report)
    } else {
        Err(CliError::Verification(report))
    }
}

fn section(
    report: &mut String,
    command: &str,
    expected: &Document,
    found: &Document,
    tol: &Tolerances,
) -> bool {
    let m = expected.masses;
    let diff = golden::compare(expected, found, tol);
    report.push_str(&format!(
        "{command} {},{},{},{}: {} of {} reference configurations reproduced, {} additional\n",
        m[0],
        m[1],
        m[2],
        m[3],
        diff.matched.len() - diff.out_of_tolerance.len(),
        expected.solutions.len(),
        diff.extra.len()
    ));
    for mt in &diff.matched {
        let rec = &expected.solutions[mt.expected];
        let status = if diff.out_of_tolerance.contains(&mt.expected) {
            "DIFF"
        } else {
            "ok"
        };
        report.push_str(&format!(
            "  {status:<4} {:<13} lambda {:<20} dlambda {:.1e}  dr {:.1e}  dangle {:.1e}\n",
            rec.kind, rec.lambda, mt.lambda_err, mt.distance_err, mt.angle_err
        ));
    }
    for &i in &diff.missing {
        let rec = &expected.solutions[i];
        report.push_str(&format!("  MISS {:<13} lambda {}\n", rec.kind, rec.lambda));
    }
    for &j in &diff.extra {
        let rec = &found.solutions[j];
        report.push_str(&format!("  new  {:<13} lambda {}\n", rec.kind, rec.lambda));
    }
    diff.reproduced()
}
