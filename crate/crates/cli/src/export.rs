//! Trajectory and spectrum writers: CSV, JSON and a two-panel SVG.

use std::fmt::Write as _;
use std::io::{Read, Write};

use noncentral::{OrbitSample, PotentialKind, Trajectory};
use serde::{Deserialize, Serialize};

use crate::{CliResult, RunConfig, SpectrumRow};

pub const CSV_HEADER: [&str; 7] = ["t", "r", "theta", "phi", "x", "y", "z"];

/// 15 significant digits.
pub fn fmt15(v: f64) -> String {
    format!("{v:.14e}")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleRow {
    pub t: f64,
    pub r: f64,
    pub theta: f64,
    pub phi: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl From<&OrbitSample> for SampleRow {
    fn from(s: &OrbitSample) -> Self {
        Self {
            t: s.t,
            r: s.r,
            theta: s.theta,
            phi: s.phi,
            x: s.x,
            y: s.y,
            z: s.z,
        }
    }
}

impl From<SampleRow> for OrbitSample {
    fn from(s: SampleRow) -> Self {
        OrbitSample {
            t: s.t,
            r: s.r,
            theta: s.theta,
            phi: s.phi,
            x: s.x,
            y: s.y,
            z: s.z,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamBlock {
    pub mu: f64,
    pub kappa: f64,
    pub rho: f64,
    pub gamma: f64,
    pub hbar: f64,
    pub energy_abs: f64,
    pub alpha_theta: f64,
    pub alpha_phi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub potential: String,
    pub parameters: ParamBlock,
    pub samples: usize,
    pub radial_cycles: f64,
    /// The orbit variable sampled on a uniform grid: `phi` or `psi`.
    pub grid_variable: String,
}

impl Metadata {
    pub fn new(cfg: &RunConfig, traj: &Trajectory, cycles: f64) -> CliResult<Self> {
        let (p, c) = (cfg.params()?, cfg.constants()?);
        Ok(Self {
            potential: cfg.kind.to_string(),
            parameters: ParamBlock {
                mu: p.mu,
                kappa: p.kappa,
                rho: p.rho,
                gamma: p.gamma,
                hbar: p.hbar,
                energy_abs: c.energy_abs,
                alpha_theta: c.alpha_theta,
                alpha_phi: c.alpha_phi,
            },
            samples: traj.len(),
            radial_cycles: cycles,
            grid_variable: match cfg.kind {
                PotentialKind::Cotangent => "phi",
                PotentialKind::Kibler => "psi",
            }
            .into(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitDocument {
    pub metadata: Metadata,
    pub samples: Vec<SampleRow>,
}

pub fn write_csv<W: Write>(w: W, traj: &Trajectory) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(CSV_HEADER)?;
    for s in &traj.samples {
        out.write_record([s.t, s.r, s.theta, s.phi, s.x, s.y, s.z].map(fmt15))?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(r: R) -> csv::Result<Vec<SampleRow>> {
    csv::Reader::from_reader(r).deserialize().collect()
}

pub fn write_json<W: Write>(w: W, metadata: &Metadata, traj: &Trajectory) -> serde_json::Result<()> {
    let doc = OrbitDocument {
        metadata: metadata.clone(),
        samples: traj.samples.iter().map(SampleRow::from).collect(),
    };
    serde_json::to_writer(w, &doc)
}

pub fn write_spectrum_csv<W: Write>(w: W, rows: &[SpectrumRow]) -> csv::Result<()> {
    const NO_BOUND: &str = "no_bound";
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["n_r", "n_theta", "n_phi", "e_bsq", "e_qm", "rel_diff"])?;
    let cell = |v: Option<f64>| v.map_or_else(|| NO_BOUND.to_string(), fmt15);
    for row in rows {
        out.write_record([
            row.n_r.to_string(),
            row.n_theta.to_string(),
            row.n_phi.to_string(),
            cell(row.e_bsq),
            cell(row.e_qm),
            cell(row.rel_diff),
        ])?;
    }
    out.flush()?;
    Ok(())
}

const PANEL: f64 = 400.0;
const PAD: f64 = 20.0;

fn polyline(points: impl Iterator<Item = (f64, f64)>, scale: f64, x0: f64) -> String {
    let half = 0.5 * PANEL;
    let mut s = String::new();
    for (u, v) in points {
        let px = x0 + half + u * scale;
        let py = PAD + half - v * scale;
        let _ = write!(s, "{px:.2},{py:.2} ");
    }
    s.trim_end().to_string()
}

/// Orthographic projections onto the xz and xy planes, side by side, with a
/// shared viewport scaled to the largest coordinate magnitude.
pub fn svg(meta: &Metadata, traj: &Trajectory) -> String {
    let extent = traj
        .samples
        .iter()
        .flat_map(|s| [s.x.abs(), s.y.abs(), s.z.abs()])
        .fold(0.0f64, f64::max);
    let scale = if extent > 0.0 { 0.45 * PANEL / extent } else { 1.0 };
    let width = 2.0 * PANEL + 3.0 * PAD;
    let height = PANEL + 2.0 * PAD + 20.0;
    let p = &meta.parameters;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        s,
        "<title>{} potential: mu={} kappa={} rho={} gamma={} |eps|={} alpha_theta={} alpha_phi={}</title>",
        meta.potential, p.mu, p.kappa, p.rho, p.gamma, p.energy_abs, p.alpha_theta, p.alpha_phi
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let panels: [(&str, f64, fn(&OrbitSample) -> (f64, f64)); 2] = [
        ("x-z", PAD, |q| (q.x, q.z)),
        ("x-y", 2.0 * PAD + PANEL, |q| (q.x, q.y)),
    ];
    for (label, x0, project) in panels {
        let c = 0.5 * PANEL;
        let _ = writeln!(
            s,
            r#"<rect x="{x0}" y="{PAD}" width="{PANEL}" height="{PANEL}" fill="none" stroke="black"/>"#
        );
        let _ = writeln!(
            s,
            r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#bbb"/><line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#bbb"/>"##,
            x0,
            PAD + c,
            x0 + PANEL,
            PAD + c,
            x0 + c,
            PAD,
            x0 + c,
            PAD + PANEL
        );
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="navy" stroke-width="0.6" points="{}"/>"#,
            polyline(traj.samples.iter().map(project), scale, x0)
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="14" text-anchor="middle">{label} projection</text>"#,
            x0 + c,
            PAD + PANEL + 20.0
        );
    }
    s.push_str("</svg>\n");
    s
}
