//! Shared domain types: physical parameters, separation constants, quantum
//! numbers, and the bound-orbit constraint checks for both potentials.
//!
//! Both potentials have the form `V(r, θ) = -κ/r + V₂(θ)/r²` with
//!
//! ```text
//! cotangent:      V₂(θ) = -ρ cot θ        + γ cosec² θ
//! Makarov-Kibler: V₂(θ) = -ρ cot θ cosec θ + γ cosec² θ
//! ```
//!
//! The `γ cosec² θ` term only ever enters through the effective azimuthal
//! constant `α̃_φ = sqrt(α_φ² + 2μγ)`.

use std::fmt;

use crate::error::{Error, Result};

/// Relative slack used when deciding whether an inequality holds with equality.
pub const BOUNDARY_RTOL: f64 = 1e-12;

/// Which of the two non-central potentials is being solved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PotentialKind {
    Cotangent,
    Kibler,
}

impl PotentialKind {
    pub fn name(self) -> &'static str {
        match self {
            PotentialKind::Cotangent => "cotangent",
            PotentialKind::Kibler => "kibler",
        }
    }
}

impl fmt::Display for PotentialKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for PotentialKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "cotangent" | "a" | "v_a" => Ok(PotentialKind::Cotangent),
            "kibler" | "makarov-kibler" | "b" | "v_b" => Ok(PotentialKind::Kibler),
            other => Err(Error::Config(format!("unknown potential `{other}`"))),
        }
    }
}

/// Mass, Coulomb strength, the two non-central strengths, and ħ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    pub mu: f64,
    pub kappa: f64,
    pub rho: f64,
    pub gamma: f64,
    pub hbar: f64,
}

impl PhysicalParams {
    /// Builds a parameter set with `ħ = 1`.
    pub fn new(mu: f64, kappa: f64, rho: f64, gamma: f64) -> Result<Self> {
        Self::with_hbar(mu, kappa, rho, gamma, 1.0)
    }

    pub fn with_hbar(mu: f64, kappa: f64, rho: f64, gamma: f64, hbar: f64) -> Result<Self> {
        positive("mu", mu)?;
        positive("kappa", kappa)?;
        non_negative("rho", rho)?;
        non_negative("gamma", gamma)?;
        positive("hbar", hbar)?;
        Ok(Self {
            mu,
            kappa,
            rho,
            gamma,
            hbar,
        })
    }

    /// Potential energy at `(r, θ)`.
    pub fn potential(&self, kind: PotentialKind, r: f64, theta: f64) -> f64 {
        let (s, c) = theta.sin_cos();
        let angular = match kind {
            PotentialKind::Cotangent => -self.rho * c / s,
            PotentialKind::Kibler => -self.rho * c / (s * s),
        } + self.gamma / (s * s);
        -self.kappa / r + angular / (r * r)
    }
}

/// Energy magnitude `|ε|` and the polar and azimuthal separation constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeparationConstants {
    pub energy_abs: f64,
    pub alpha_theta: f64,
    /// Magnitude of the z angular momentum; the sense of rotation is carried
    /// separately by [`crate::trajectory::Trajectory::reversed`].
    pub alpha_phi: f64,
}

impl SeparationConstants {
    pub fn new(energy_abs: f64, alpha_theta: f64, alpha_phi: f64) -> Result<Self> {
        positive("energy_abs", energy_abs)?;
        non_negative("alpha_theta", alpha_theta)?;
        non_negative("alpha_phi", alpha_phi)?;
        Ok(Self {
            energy_abs,
            alpha_theta,
            alpha_phi,
        })
    }

    /// The (negative) orbit energy ε.
    pub fn energy(&self) -> f64 {
        -self.energy_abs
    }
}

/// Radial, polar and azimuthal quantum numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuantumNumbers {
    pub n_r: u32,
    pub n_theta: u32,
    pub n_phi: i32,
}

impl QuantumNumbers {
    pub const fn new(n_r: u32, n_theta: u32, n_phi: i32) -> Self {
        Self {
            n_r,
            n_theta,
            n_phi,
        }
    }

    pub fn abs_n_phi(&self) -> f64 {
        f64::from(self.n_phi.unsigned_abs())
    }
}

impl fmt::Display for QuantumNumbers {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n_r={}, n_theta={}, n_phi={})", self.n_r, self.n_theta, self.n_phi)
    }
}

/// Maslov indices for (r, θ, φ): two turning points in r and θ, none in φ.
pub const MASLOV: (f64, f64, f64) = (0.5, 0.5, 0.0);

/// The named bound-orbit inequalities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Constraint {
    /// (i) `0 ≤ α_θ² ≤ κ²μ / 2|ε|`: real, positive radial turning points.
    RadialBound,
    /// (ii) real polar turning points.
    PolarReal,
    /// (iii) cotangent: `α_φ² ≥ 0`.
    AzimuthalNonNegative,
    /// (iii) Makarov-Kibler: `α̃_φ² ≥ 2μρ`, periodic φ(ψ).
    AzimuthalPeriodic,
    /// Makarov-Kibler: `μρ ≤ α_θ²`, so that `cos θ = M + N cos ψ` stays in [-1, 1].
    PolarRange,
}

impl Constraint {
    pub fn label(self) -> &'static str {
        match self {
            Constraint::RadialBound => "(i) radial bound",
            Constraint::PolarReal => "(ii) real polar turning points",
            Constraint::AzimuthalNonNegative => "(iii) non-negative alpha_phi^2",
            Constraint::AzimuthalPeriodic => "(iii) periodic azimuth",
            Constraint::PolarRange => "(iv) polar range",
        }
    }

    pub fn formula(self, kind: PotentialKind) -> &'static str {
        match (self, kind) {
            (Constraint::RadialBound, _) => "alpha_theta^2 <= kappa^2 mu / (2|eps|)",
            (Constraint::PolarReal, PotentialKind::Cotangent) => {
                "alpha_phi~^2 (alpha_theta^2 - alpha_phi~^2) + mu^2 rho^2 >= 0"
            }
            (Constraint::PolarReal, PotentialKind::Kibler) => {
                "alpha_theta^2 (alpha_theta^2 - alpha_phi~^2) + mu^2 rho^2 >= 0"
            }
            (Constraint::AzimuthalNonNegative, _) => "alpha_phi^2 >= 0",
            (Constraint::AzimuthalPeriodic, _) => "alpha_phi~^2 >= 2 mu rho",
            (Constraint::PolarRange, _) => "mu rho <= alpha_theta^2",
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// One evaluated inequality `lhs ≥ rhs` (every constraint is normalised to that orientation).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstraintCheck {
    pub constraint: Constraint,
    pub lhs: f64,
    pub rhs: f64,
}

impl ConstraintCheck {
    fn scale(&self) -> f64 {
        self.lhs.abs().max(self.rhs.abs()).max(f64::MIN_POSITIVE)
    }

    pub fn holds(&self) -> bool {
        self.lhs >= self.rhs - BOUNDARY_RTOL * self.scale()
    }

    /// True when the inequality holds with equality (within [`BOUNDARY_RTOL`]).
    pub fn is_tight(&self) -> bool {
        (self.lhs - self.rhs).abs() <= BOUNDARY_RTOL * self.scale()
    }
}

/// Outcome of a bound-orbit check.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub kind: PotentialKind,
    pub is_bound: bool,
    pub checks: Vec<ConstraintCheck>,
    pub violated_constraints: Vec<ConstraintCheck>,
    /// Constraints satisfied with equality: circular radius, pinned θ, and so on.
    pub degenerate: Vec<Constraint>,
}

impl ValidationReport {
    fn from_checks(kind: PotentialKind, checks: Vec<ConstraintCheck>) -> Self {
        let violated_constraints: Vec<_> = checks.iter().copied().filter(|c| !c.holds()).collect();
        let degenerate = checks
            .iter()
            .filter(|c| c.is_tight())
            .map(|c| c.constraint)
            .collect();
        Self {
            kind,
            is_bound: violated_constraints.is_empty(),
            checks,
            violated_constraints,
            degenerate,
        }
    }

    pub fn violates(&self, constraint: Constraint) -> bool {
        self.violated_constraints
            .iter()
            .any(|c| c.constraint == constraint)
    }

    /// Turns the first violation into an [`Error::Unbound`].
    pub fn into_result(self) -> Result<()> {
        match self.violated_constraints.first() {
            None => Ok(()),
            Some(c) => Err(Error::Unbound {
                constraint: c.constraint,
                lhs: c.lhs,
                rhs: c.rhs,
            }),
        }
    }
}

/// `α̃_φ = sqrt(α_φ² + 2μγ)`.
pub fn effective_alpha_phi(params: &PhysicalParams, consts: &SeparationConstants) -> f64 {
    if params.gamma == 0.0 {
        consts.alpha_phi
    } else {
        (consts.alpha_phi * consts.alpha_phi + 2.0 * params.mu * params.gamma).sqrt()
    }
}

fn radial_check(params: &PhysicalParams, consts: &SeparationConstants) -> ConstraintCheck {
    ConstraintCheck {
        constraint: Constraint::RadialBound,
        lhs: params.kappa * params.kappa * params.mu / (2.0 * consts.energy_abs),
        rhs: consts.alpha_theta * consts.alpha_theta,
    }
}

/// Bound-orbit constraints for the cotangent potential.
pub fn validate_cotangent(params: &PhysicalParams, consts: &SeparationConstants) -> ValidationReport {
    let at2 = consts.alpha_theta * consts.alpha_theta;
    let ap_eff = effective_alpha_phi(params, consts);
    let ap2 = ap_eff * ap_eff;
    let mr = params.mu * params.rho;
    let checks = vec![
        radial_check(params, consts),
        ConstraintCheck {
            constraint: Constraint::PolarReal,
            lhs: ap2 * at2 + mr * mr,
            rhs: ap2 * ap2,
        },
        ConstraintCheck {
            constraint: Constraint::AzimuthalNonNegative,
            lhs: consts.alpha_phi * consts.alpha_phi,
            rhs: 0.0,
        },
    ];
    ValidationReport::from_checks(PotentialKind::Cotangent, checks)
}

/// Bound-orbit constraints for the Makarov-Kibler potential.
pub fn validate_kibler(params: &PhysicalParams, consts: &SeparationConstants) -> ValidationReport {
    let at2 = consts.alpha_theta * consts.alpha_theta;
    let ap_eff = effective_alpha_phi(params, consts);
    let ap2 = ap_eff * ap_eff;
    let mr = params.mu * params.rho;
    let checks = vec![
        radial_check(params, consts),
        ConstraintCheck {
            constraint: Constraint::PolarReal,
            lhs: at2 * at2 + mr * mr,
            rhs: at2 * ap2,
        },
        ConstraintCheck {
            constraint: Constraint::AzimuthalPeriodic,
            lhs: ap2,
            rhs: 2.0 * mr,
        },
        ConstraintCheck {
            constraint: Constraint::PolarRange,
            lhs: at2,
            rhs: mr,
        },
    ];
    ValidationReport::from_checks(PotentialKind::Kibler, checks)
}

pub fn validate(
    kind: PotentialKind,
    params: &PhysicalParams,
    consts: &SeparationConstants,
) -> ValidationReport {
    match kind {
        PotentialKind::Cotangent => validate_cotangent(params, consts),
        PotentialKind::Kibler => validate_kibler(params, consts),
    }
}

fn positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite and > 0",
        })
    }
}

fn non_negative(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite and >= 0",
        })
    }
}
