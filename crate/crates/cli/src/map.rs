//! CSV and SVG renderings of the hemisphere region map.

use std::fmt::Write as _;
use std::io::Write;

use cc4_core::atlas::{great_circles, project, render_pattern};
use cc4_core::{
    CentralConfiguration, ConfigurationType, Direction, Pattern, RegionSample, Tetrahedron,
};
use serde::Serialize;

use crate::document::round15;

#[derive(Debug, Serialize)]
struct Row<'a> {
    theta: f64,
    phi: f64,
    u: f64,
    v: f64,
    pattern_label: &'a str,
}

/// `theta,phi,u,v,pattern_label` rows in sample order.
pub fn write_samples_csv<W: Write>(out: W, samples: &[RegionSample]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for s in samples {
        let label = s.pattern.to_string();
        w.serialize(Row {
            theta: round15(s.direction.theta),
            phi: round15(s.direction.phi),
            u: round15(s.projected[0]),
            v: round15(s.projected[1]),
            pattern_label: &label,
        })?;
    }
    w.flush()?;
    Ok(())
}

/// Solution directions with their type, same columns as the sample file.
pub fn write_solutions_csv<W: Write>(
    out: W,
    solutions: &[CentralConfiguration],
) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for c in solutions {
        let p = project(&c.direction);
        let label = c.kind.to_string();
        w.serialize(Row {
            theta: round15(c.direction.theta),
            phi: round15(c.direction.phi),
            u: round15(p[0]),
            v: round15(p[1]),
            pattern_label: &label,
        })?;
    }
    w.flush()?;
    Ok(())
}

const SIZE: f64 = 640.0;
const RADIUS: f64 = 300.0;

fn color(p: Pattern) -> &'static str {
    match p.region() {
        None => "#bbbbbb",
        Some(k) => {
            let i = ConfigurationType::ALL
                .iter()
                .position(|t| *t == k)
                .unwrap_or(0);
            [
                "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#ffd92f", "#a65628",
            ][i]
        }
    }
}

fn to_px(uv: [f64; 2]) -> (f64, f64) {
    let s = RADIUS / std::f64::consts::FRAC_PI_2;
    (SIZE / 2.0 + s * uv[0], SIZE / 2.0 - s * uv[1])
}

/// Disk map: cells colored by sign pattern, collinearity circles, and
/// optional solution markers.
pub fn render_svg(
    tetra: &Tetrahedron,
    n_theta: usize,
    n_phi: usize,
    solutions: &[CentralConfiguration],
) -> String {
    let half_pi = std::f64::consts::FRAC_PI_2;
    let dtheta = half_pi / (n_theta.max(2) - 1) as f64;
    let dphi = std::f64::consts::TAU / n_phi.max(2) as f64;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r#"<g stroke="none">"#);
    for i in 0..n_theta.max(2) {
        for k in 0..n_phi.max(2) {
            let theta = i as f64 * dtheta;
            let phi = k as f64 * dphi;
            let pattern = render_pattern(tetra, &Direction::new(theta, phi));
            let t0 = (theta - dtheta / 2.0).max(0.0);
            let t1 = (theta + dtheta / 2.0).min(half_pi);
            let corners = [
                (t0, phi - dphi / 2.0),
                (t1, phi - dphi / 2.0),
                (t1, phi + dphi / 2.0),
                (t0, phi + dphi / 2.0),
            ];
            let pts: Vec<String> = corners
                .iter()
                .map(|&(t, p)| {
                    let (x, y) = to_px([t * p.cos(), t * p.sin()]);
                    format!("{x:.2},{y:.2}")
                })
                .collect();
            let _ = writeln!(
                s,
                r#"<polygon points="{}" fill="{}"/>"#,
                pts.join(" "),
                color(pattern)
            );
        }
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r#"<g fill="none" stroke="black" stroke-width="1.5">"#);
    for circle in great_circles(tetra, 361) {
        let pts: Vec<String> = circle
            .iter()
            .map(|d| {
                let (x, y) = to_px(project(d));
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(s, r#"<polyline points="{}"/>"#, pts.join(" "));
    }
    let _ = writeln!(s, "</g>");
    for c in solutions {
        let (x, y) = to_px(project(&c.direction));
        let _ = writeln!(
            s,
            r#"<circle cx="{x:.2}" cy="{y:.2}" r="4" fill="black"><title>{} lambda={}</title></circle>"#,
            c.kind,
            round15(c.lambda)
        );
    }
    // legend
    for (i, k) in ConfigurationType::ALL.iter().enumerate() {
        let y = 14.0 + 14.0 * i as f64;
        let _ = writeln!(
            s,
            r#"<rect x="8" y="{}" width="10" height="10" fill="{}"/><text x="22" y="{}" font-size="11" font-family="sans-serif">{}</text>"#,
            y - 9.0,
            color(Pattern::Region(*k)),
            y,
            k
        );
    }
    s.push_str("</svg>\n");
    s
}
