//! Front end for the `noncentral` library: parameter validation, orbit export,
//! surfaces, action variables, spectra and the oracle verification suite.
//!
//! Exit codes are a stable contract: 0 on success, 1 when the parameters are
//! outside the physical domain (or a verification fails), 2 on usage errors.

pub mod export;
pub mod verify;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use noncentral::actions::{actions, frequencies, hamiltonian, bsq_level};
use noncentral::config::ParamFile;
use noncentral::cotangent::cone_geometry;
use noncentral::kibler::quadric_surface;
use noncentral::model::validate;
use noncentral::quantum::qm_level;
use noncentral::{
    CotangentOrbit, KiblerOrbit, PhysicalParams, PotentialKind, QuantumNumbers, SeparationConstants,
    Trajectory,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Samples per radial period when `--samples` is not given.
pub const SAMPLES_PER_PERIOD: f64 = 4000.0;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(noncentral::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

impl From<noncentral::Error> for CliError {
    fn from(e: noncentral::Error) -> Self {
        match e {
            noncentral::Error::Config(msg) => CliError::Usage(msg),
            e @ noncentral::Error::InvalidParameter { .. } => CliError::Usage(e.to_string()),
            e => CliError::Domain(e),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

#[derive(Debug, Parser)]
#[command(name = "noncentral", version, about = "Orbits, surfaces and spectra of the cotangent and Makarov-Kibler potentials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PotentialArg {
    Cotangent,
    Kibler,
}

impl From<PotentialArg> for PotentialKind {
    fn from(p: PotentialArg) -> Self {
        match p {
            PotentialArg::Cotangent => PotentialKind::Cotangent,
            PotentialArg::Kibler => PotentialKind::Kibler,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
}

/// Parameter sources. Flags override values read from `--config`.
#[derive(Debug, Clone, Default, Args)]
pub struct ParamArgs {
    /// Key-value parameter file
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub potential: Option<PotentialArg>,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub kappa: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub rho: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub hbar: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub energy_abs: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha_theta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha_phi: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the bound-orbit inequalities
    Validate {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Sample an orbit and write it as CSV, JSON or SVG
    Orbit {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Total number of samples [default: 4000 per radial period]
        #[arg(long)]
        samples: Option<usize>,
        /// Number of radial periods to cover
        #[arg(long, default_value_t = 1.0)]
        cycles: f64,
        /// Also write the two-panel SVG projection here
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Describe the cone or quadric carrying the orbit (JSON)
    Surface {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Action variables, energy and frequencies (JSON)
    Actions {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Semiclassical and quantum energies side by side
    Spectrum {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
        /// Largest n_r, n_theta and |n_phi|
        #[arg(long, default_value_t = 4)]
        nmax: u32,
    },
    /// Compare every closed form with its numerical oracle
    Verify {
        #[command(flatten)]
        params: ParamArgs,
        /// Scale closed-form values by (1 + delta) before comparison
        #[arg(long, hide = true, allow_hyphen_values = true)]
        perturb_closed_form: Option<f64>,
    },
}

/// The potential plus the merged parameter file.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub kind: PotentialKind,
    pub file: ParamFile,
}

impl RunConfig {
    pub fn resolve(args: &ParamArgs) -> CliResult<Self> {
        let mut file = match &args.config {
            Some(path) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
                ParamFile::parse(&text)?
            }
            None => ParamFile::default(),
        };
        let overrides = [
            ("mu", args.mu),
            ("kappa", args.kappa),
            ("rho", args.rho),
            ("gamma", args.gamma),
            ("hbar", args.hbar),
            ("energy_abs", args.energy_abs),
            ("alpha_theta", args.alpha_theta),
            ("alpha_phi", args.alpha_phi),
        ];
        for (key, value) in overrides {
            if let Some(v) = value {
                file.set(key, v)?;
            }
        }
        if let Some(p) = args.potential {
            file.set_potential(p.into());
        }
        let kind = file
            .potential()
            .ok_or_else(|| CliError::Usage("no potential given (config key `potential` or --potential)".into()))?;
        Ok(Self { kind, file })
    }

    pub fn params(&self) -> CliResult<PhysicalParams> {
        Ok(self.file.physical_params()?)
    }

    pub fn constants(&self) -> CliResult<SeparationConstants> {
        Ok(self.file.separation_constants()?)
    }
}

fn open_output(out: Option<&Path>) -> CliResult<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(io::BufWriter::new(fs::File::create(path).map_err(io_err(path))?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn finish(mut w: Box<dyn Write>, out: Option<&Path>) -> CliResult<()> {
    w.flush().map_err(io_err(out.unwrap_or(Path::new("<stdout>"))))
}

pub fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Validate { params } => cmd_validate(&RunConfig::resolve(&params)?),
        Command::Orbit {
            params,
            out,
            format,
            samples,
            cycles,
            svg,
        } => cmd_orbit(&RunConfig::resolve(&params)?, out.as_deref(), format, samples, cycles, svg.as_deref()),
        Command::Surface { params, out } => cmd_surface(&RunConfig::resolve(&params)?, out.as_deref()),
        Command::Actions { params, out } => cmd_actions(&RunConfig::resolve(&params)?, out.as_deref()),
        Command::Spectrum {
            params,
            out,
            format,
            nmax,
        } => cmd_spectrum(&RunConfig::resolve(&params)?, out.as_deref(), format, nmax),
        Command::Verify {
            params,
            perturb_closed_form,
        } => cmd_verify(&RunConfig::resolve(&params)?, perturb_closed_form.unwrap_or(0.0)),
    }
}

pub fn cmd_validate(cfg: &RunConfig) -> CliResult<()> {
    let (p, c) = (cfg.params()?, cfg.constants()?);
    let report = validate(cfg.kind, &p, &c);
    let mut out = io::stdout().lock();
    let w = |out: &mut io::StdoutLock, s: String| -> CliResult<()> {
        writeln!(out, "{s}").map_err(io_err(Path::new("<stdout>")))
    };
    w(&mut out, format!("potential: {}", cfg.kind))?;
    for check in &report.checks {
        let status = if !check.holds() {
            "VIOLATED"
        } else if check.is_tight() {
            "tight"
        } else {
            "ok"
        };
        w(
            &mut out,
            format!(
                "{:<8} {:<32} {:<64} lhs = {:.12e}  rhs = {:.12e}",
                status,
                check.constraint.label(),
                check.constraint.formula(cfg.kind),
                check.lhs,
                check.rhs
            ),
        )?;
    }
    if report.is_bound {
        w(&mut out, "bound: yes".into())
    } else {
        let names: Vec<_> = report.violated_constraints.iter().map(|c| c.constraint.label()).collect();
        w(&mut out, "bound: no".into())?;
        Err(CliError::Failed(format!("unbound: violates {}", names.join(", "))))
    }
}

/// Samples the orbit over `cycles` radial periods.
pub fn sample_orbit(cfg: &RunConfig, samples: Option<usize>, cycles: f64) -> CliResult<Trajectory> {
    if !(cycles > 0.0 && cycles.is_finite()) {
        return Err(CliError::Usage(format!("--cycles must be positive, got {cycles}")));
    }
    let n = samples.unwrap_or((SAMPLES_PER_PERIOD * cycles).ceil() as usize);
    if n < 2 {
        return Err(CliError::Usage(format!("--samples must be at least 2, got {n}")));
    }
    let (p, c) = (cfg.params()?, cfg.constants()?);
    Ok(match cfg.kind {
        PotentialKind::Cotangent => {
            let orbit = CotangentOrbit::new(&p, &c)?;
            orbit.sample(orbit.phi_for_radial_cycles(cycles)?, n)?
        }
        PotentialKind::Kibler => KiblerOrbit::new(&p, &c)?.sample(std::f64::consts::TAU * cycles, n)?,
    })
}

pub fn cmd_orbit(
    cfg: &RunConfig,
    out: Option<&Path>,
    format: Format,
    samples: Option<usize>,
    cycles: f64,
    svg: Option<&Path>,
) -> CliResult<()> {
    let traj = sample_orbit(cfg, samples, cycles)?;
    let meta = export::Metadata::new(cfg, &traj, cycles)?;
    let mut w = open_output(out)?;
    let path = out.unwrap_or(Path::new("<stdout>"));
    match format {
        Format::Csv => export::write_csv(&mut w, &traj).map_err(|e| CliError::Failed(format!("{}: {e}", path.display())))?,
        Format::Json => export::write_json(&mut w, &meta, &traj).map_err(|e| CliError::Failed(format!("{}: {e}", path.display())))?,
        Format::Svg => w.write_all(export::svg(&meta, &traj).as_bytes()).map_err(io_err(path))?,
    }
    finish(w, out)?;
    if let Some(svg_path) = svg {
        fs::write(svg_path, export::svg(&meta, &traj)).map_err(io_err(svg_path))?;
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SurfaceReport {
    EllipticCone {
        theta_c: f64,
        theta_xz: f64,
        theta_yz: f64,
        rotation: [[f64; 3]; 3],
        coefficients: [f64; 3],
    },
    Ellipsoid(QuadricReport),
    HyperboloidTwoSheets(QuadricReport),
    Paraboloid(QuadricReport),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuadricReport {
    pub p: f64,
    pub q: f64,
    pub r1: f64,
    pub r2: f64,
    pub z_shift: Option<f64>,
    pub semi_axis_xy: Option<f64>,
    pub semi_axis_z: Option<f64>,
    pub kepler_limit: bool,
}

pub fn surface_report(cfg: &RunConfig) -> CliResult<SurfaceReport> {
    let (p, c) = (cfg.params()?, cfg.constants()?);
    validate(cfg.kind, &p, &c).into_result()?;
    Ok(match cfg.kind {
        PotentialKind::Cotangent => {
            let cone = cone_geometry(&p, &c)?;
            SurfaceReport::EllipticCone {
                theta_c: cone.theta_c,
                theta_xz: cone.theta_xz,
                theta_yz: cone.theta_yz,
                rotation: cone.rotation,
                coefficients: cone.coefficients,
            }
        }
        PotentialKind::Kibler => {
            let s = quadric_surface(&p, &c)?;
            let q = QuadricReport {
                p: s.p,
                q: s.q,
                r1: s.r1,
                r2: s.r2,
                z_shift: s.z_shift,
                semi_axis_xy: s.semi_axis_xy,
                semi_axis_z: s.semi_axis_z,
                kepler_limit: s.kepler_limit,
            };
            match s.kind {
                noncentral::QuadricKind::Ellipsoid => SurfaceReport::Ellipsoid(q),
                noncentral::QuadricKind::HyperboloidTwoSheets => SurfaceReport::HyperboloidTwoSheets(q),
                noncentral::QuadricKind::Paraboloid => SurfaceReport::Paraboloid(q),
            }
        }
    })
}

fn write_json_value<T: Serialize>(value: &T, out: Option<&Path>) -> CliResult<()> {
    let mut w = open_output(out)?;
    let path = out.unwrap_or(Path::new("<stdout>"));
    serde_json::to_writer_pretty(&mut w, value).map_err(|e| CliError::Failed(format!("{}: {e}", path.display())))?;
    writeln!(w).map_err(io_err(path))?;
    finish(w, out)
}

pub fn cmd_surface(cfg: &RunConfig, out: Option<&Path>) -> CliResult<()> {
    write_json_value(&surface_report(cfg)?, out)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ActionReport {
    pub potential: String,
    pub j_r: f64,
    pub j_theta: f64,
    pub j_phi: f64,
    pub hamiltonian: f64,
    pub omega_r: f64,
    pub omega_theta: f64,
    pub omega_phi: f64,
}

pub fn cmd_actions(cfg: &RunConfig, out: Option<&Path>) -> CliResult<()> {
    let (p, c) = (cfg.params()?, cfg.constants()?);
    let a = actions(cfg.kind, &p, &c)?;
    let w = frequencies(&p, &a)?;
    let report = ActionReport {
        potential: cfg.kind.to_string(),
        j_r: a.j_r,
        j_theta: a.j_theta,
        j_phi: a.j_phi,
        hamiltonian: hamiltonian(&p, &a)?,
        omega_r: w.omega_r,
        omega_theta: w.omega_theta,
        omega_phi: w.omega_phi,
    };
    write_json_value(&report, out)
}

/// One spectrum row; energies are `None` for triples without a bound state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub n_r: u32,
    pub n_theta: u32,
    pub n_phi: i32,
    pub e_bsq: Option<f64>,
    pub e_qm: Option<f64>,
    pub rel_diff: Option<f64>,
}

pub fn spectrum_rows(kind: PotentialKind, p: &PhysicalParams, n_max: u32) -> Vec<SpectrumRow> {
    let m = n_max as i32;
    let mut rows = Vec::new();
    for n_r in 0..=n_max {
        for n_theta in 0..=n_max {
            for n_phi in -m..=m {
                let qn = QuantumNumbers::new(n_r, n_theta, n_phi);
                let e_bsq = bsq_level(kind, p, qn).ok().map(|e| e.energy);
                let e_qm = qm_level(kind, p, qn).ok().map(|e| e.energy);
                let rel_diff = match (e_bsq, e_qm) {
                    (Some(b), Some(q)) => Some((b - q).abs() / q.abs()),
                    _ => None,
                };
                rows.push(SpectrumRow {
                    n_r,
                    n_theta,
                    n_phi,
                    e_bsq,
                    e_qm,
                    rel_diff,
                });
            }
        }
    }
    rows
}

pub fn cmd_spectrum(cfg: &RunConfig, out: Option<&Path>, format: TableFormat, n_max: u32) -> CliResult<()> {
    let p = cfg.params()?;
    let rows = spectrum_rows(cfg.kind, &p, n_max);
    match format {
        TableFormat::Csv => {
            let mut w = open_output(out)?;
            export::write_spectrum_csv(&mut w, &rows)
                .map_err(|e| CliError::Failed(format!("{}: {e}", out.unwrap_or(Path::new("<stdout>")).display())))?;
            finish(w, out)?;
        }
        TableFormat::Json => write_json_value(&rows, out)?,
    }
    let worst = rows.iter().filter_map(|r| r.rel_diff).fold(0.0, f64::max);
    let missing = rows.iter().filter(|r| r.e_bsq.is_none() || r.e_qm.is_none()).count();
    eprintln!("max |E_bsq - E_qm|/|E_qm| = {worst:.3e}; {missing} triples without a bound state");
    Ok(())
}

pub fn cmd_verify(cfg: &RunConfig, perturb: f64) -> CliResult<()> {
    let (p, c) = (cfg.params()?, cfg.constants()?);
    validate(cfg.kind, &p, &c).into_result()?;
    let report = verify::run_checks(cfg.kind, &p, &c, perturb);
    print!("{report}");
    let (mismatch, oracle) = (report.mismatches(), report.oracle_failures());
    if mismatch == 0 && oracle == 0 {
        Ok(())
    } else {
        Err(CliError::Failed(format!(
            "verification failed: {mismatch} mismatch(es), {oracle} oracle failure(s)"
        )))
    }
}
