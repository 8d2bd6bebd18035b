//! Action variables, the Hamiltonian in action form, Bohr-Sommerfeld spectra
//! and the angle-variable frequencies `ω_i = ∂H/∂J_i`.

use crate::error::{Error, Result};
use crate::model::{
    effective_alpha_phi, validate, validate_cotangent, validate_kibler, Constraint, PhysicalParams,
    PotentialKind, QuantumNumbers, SeparationConstants, MASLOV,
};

/// `(J_r, J_θ, J_φ)` for one potential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ActionSet {
    pub j_r: f64,
    pub j_theta: f64,
    pub j_phi: f64,
    pub kind: PotentialKind,
}

impl ActionSet {
    pub fn new(kind: PotentialKind, j_r: f64, j_theta: f64, j_phi: f64) -> Self {
        Self {
            j_r,
            j_theta,
            j_phi,
            kind,
        }
    }

    /// The Bohr-Sommerfeld actions `((n_r + ½)ħ, (n_θ + ½)ħ, |n_φ|ħ)`.
    pub fn quantized(kind: PotentialKind, qn: QuantumNumbers, hbar: f64) -> Self {
        Self::new(
            kind,
            (qn.n_r as f64 + MASLOV.0) * hbar,
            (qn.n_theta as f64 + MASLOV.1) * hbar,
            (qn.abs_n_phi() + MASLOV.2) * hbar,
        )
    }
}

/// One line of a spectrum: BSQ energy and its effective orbital parameter `l`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumEntry {
    pub quantum_numbers: QuantumNumbers,
    pub energy: f64,
    pub l_value: f64,
}

fn require(report_ok: bool, params: &PhysicalParams, consts: &SeparationConstants, kind: PotentialKind, which: Constraint) -> Result<()> {
    if report_ok {
        return Ok(());
    }
    let report = validate(kind, params, consts);
    let c = report
        .checks
        .iter()
        .find(|c| c.constraint == which)
        .copied()
        .expect("constraint present in report");
    Err(Error::Unbound {
        constraint: which,
        lhs: c.lhs,
        rhs: c.rhs,
    })
}

/// `J_r = κ sqrt(μ / 2|ε|) − α_θ`.
pub fn j_r(params: &PhysicalParams, consts: &SeparationConstants) -> Result<f64> {
    let report = validate_cotangent(params, consts);
    require(
        !report.violates(Constraint::RadialBound),
        params,
        consts,
        PotentialKind::Cotangent,
        Constraint::RadialBound,
    )?;
    let v = params.kappa * (params.mu / (2.0 * consts.energy_abs)).sqrt() - consts.alpha_theta;
    Ok(v.max(0.0))
}

/// `J_θ = sqrt(½(sqrt(α_θ⁴ + 4μ²ρ²) + α_θ²)) − α̃_φ`.
pub fn j_theta_cotangent(params: &PhysicalParams, consts: &SeparationConstants) -> Result<f64> {
    let report = validate_cotangent(params, consts);
    require(
        !report.violates(Constraint::PolarReal),
        params,
        consts,
        PotentialKind::Cotangent,
        Constraint::PolarReal,
    )?;
    let at2 = consts.alpha_theta * consts.alpha_theta;
    let mr = params.mu * params.rho;
    let s = (at2 * at2 + 4.0 * mr * mr).sqrt();
    let v = (0.5 * (s + at2)).sqrt() - effective_alpha_phi(params, consts);
    Ok(v.max(0.0))
}

/// `J_θ = α_θ − ½(sqrt(α̃_φ² + 2μρ) + sqrt(α̃_φ² − 2μρ))`.
pub fn j_theta_kibler(params: &PhysicalParams, consts: &SeparationConstants) -> Result<f64> {
    let report = validate_kibler(params, consts);
    for which in [Constraint::AzimuthalPeriodic, Constraint::PolarReal] {
        require(!report.violates(which), params, consts, PotentialKind::Kibler, which)?;
    }
    let ap = effective_alpha_phi(params, consts);
    let ap2 = ap * ap;
    let two_mr = 2.0 * params.mu * params.rho;
    let v = consts.alpha_theta - 0.5 * ((ap2 + two_mr).sqrt() + (ap2 - two_mr).max(0.0).sqrt());
    Ok(v.max(0.0))
}

/// `J_φ = α_φ`.
pub fn j_phi(consts: &SeparationConstants) -> f64 {
    consts.alpha_phi
}

pub fn actions(
    kind: PotentialKind,
    params: &PhysicalParams,
    consts: &SeparationConstants,
) -> Result<ActionSet> {
    let j_theta = match kind {
        PotentialKind::Cotangent => j_theta_cotangent(params, consts)?,
        PotentialKind::Kibler => j_theta_kibler(params, consts)?,
    };
    Ok(ActionSet::new(kind, j_r(params, consts)?, j_theta, j_phi(consts)))
}

fn check_actions(a: &ActionSet) -> Result<()> {
    if [a.j_r, a.j_theta, a.j_phi]
        .iter()
        .all(|j| j.is_finite() && *j >= 0.0)
    {
        Ok(())
    } else {
        Err(Error::InvalidAction("actions must be finite and non-negative"))
    }
}

/// `J̃_φ = sqrt(J_φ² + 2μγ)`, exactly `J_φ` when γ = 0.
fn effective_j_phi(params: &PhysicalParams, j_phi: f64) -> Result<f64> {
    if params.gamma == 0.0 {
        return Ok(j_phi);
    }
    let sq = j_phi * j_phi + 2.0 * params.mu * params.gamma;
    if sq < 0.0 {
        return Err(Error::InvalidAction("J_phi^2 + 2 mu gamma < 0"));
    }
    Ok(sq.sqrt())
}

/// The bracket `Q` in `H = −μκ²/(2Q²)` together with `∂Q/∂J_θ` and `∂Q/∂J_φ`
/// (`∂Q/∂J_r = 1` for both potentials).
struct Bracket {
    q: f64,
    dq_dtheta: f64,
    dq_dphi: f64,
}

fn bracket_cotangent(params: &PhysicalParams, a: &ActionSet) -> Result<Bracket> {
    check_actions(a)?;
    let jt = effective_j_phi(params, a.j_phi)?;
    let x = a.j_theta + jt;
    let mr = params.mu * params.rho;
    // g(X) = X sqrt(1 − μ²ρ²/X⁴) = sqrt(X² − μ²ρ²/X²)
    let (g, dg) = if mr == 0.0 {
        (x, 1.0)
    } else {
        let g2 = x * x - mr * mr / (x * x);
        if !(g2 >= 0.0) {
            return Err(Error::InvalidAction(
                "(J_theta + J_phi~)^2 < mu rho: the polar bracket is imaginary",
            ));
        }
        let g = g2.sqrt();
        let dg = if g == 0.0 {
            f64::INFINITY
        } else {
            (x + mr * mr / (x * x * x)) / g
        };
        (g, dg)
    };
    // ∂J̃/∂J_φ = J_φ/J̃; exactly 1 at γ = 0.
    let djt = if params.gamma == 0.0 {
        1.0
    } else if jt == 0.0 {
        0.0
    } else {
        a.j_phi / jt
    };
    Ok(Bracket {
        q: a.j_r + g,
        dq_dtheta: dg,
        dq_dphi: if params.gamma == 0.0 { dg } else { dg * djt },
    })
}

fn bracket_kibler(params: &PhysicalParams, a: &ActionSet) -> Result<Bracket> {
    check_actions(a)?;
    let jp2 = a.j_phi * a.j_phi;
    let plus = jp2 + 2.0 * params.mu * (params.gamma + params.rho);
    let minus = jp2 + 2.0 * params.mu * (params.gamma - params.rho);
    if plus < 0.0 || minus < 0.0 {
        return Err(Error::InvalidAction(
            "J_phi^2 + 2 mu (gamma - rho) < 0: the azimuthal bracket is imaginary",
        ));
    }
    let (sp, sm) = (plus.sqrt(), minus.sqrt());
    let half_deriv = |s: f64| if s == 0.0 { f64::INFINITY } else { a.j_phi / s };
    Ok(Bracket {
        q: a.j_r + a.j_theta + 0.5 * (sp + sm),
        dq_dtheta: 1.0,
        dq_dphi: 0.5 * (half_deriv(sp) + half_deriv(sm)),
    })
}

fn bracket(params: &PhysicalParams, a: &ActionSet) -> Result<Bracket> {
    match a.kind {
        PotentialKind::Cotangent => bracket_cotangent(params, a),
        PotentialKind::Kibler => bracket_kibler(params, a),
    }
}

fn energy_from_bracket(params: &PhysicalParams, q: f64) -> Result<f64> {
    if !(q > 0.0) {
        return Err(Error::InvalidAction("the action bracket must be positive"));
    }
    Ok(-params.mu * params.kappa * params.kappa / (2.0 * q * q))
}

/// `H(J) = −μκ² / (2 [J_r + (J_θ + J̃_φ) sqrt(1 − μ²ρ²/(J_θ + J̃_φ)⁴)]²)`.
pub fn hamiltonian_cotangent(params: &PhysicalParams, actions: &ActionSet) -> Result<f64> {
    let a = ActionSet {
        kind: PotentialKind::Cotangent,
        ..*actions
    };
    energy_from_bracket(params, bracket_cotangent(params, &a)?.q)
}

/// `H(J) = −μκ² / (2 [J_r + J_θ + ½(sqrt(J_φ² + 2μ(γ+ρ)) + sqrt(J_φ² + 2μ(γ−ρ)))]²)`.
pub fn hamiltonian_kibler(params: &PhysicalParams, actions: &ActionSet) -> Result<f64> {
    let a = ActionSet {
        kind: PotentialKind::Kibler,
        ..*actions
    };
    energy_from_bracket(params, bracket_kibler(params, &a)?.q)
}

pub fn hamiltonian(params: &PhysicalParams, actions: &ActionSet) -> Result<f64> {
    energy_from_bracket(params, bracket(params, actions)?.q)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frequencies {
    pub omega_r: f64,
    pub omega_theta: f64,
    pub omega_phi: f64,
}

/// `ω_i = ∂H/∂J_i`, differentiated analytically: `ω_r = μκ²/Q³` and
/// `ω_θ, ω_φ = ω_r ∂Q/∂J_θ, ω_r ∂Q/∂J_φ`.
pub fn frequencies(params: &PhysicalParams, actions: &ActionSet) -> Result<Frequencies> {
    let b = bracket(params, actions)?;
    energy_from_bracket(params, b.q)?;
    let omega_r = params.mu * params.kappa * params.kappa / (b.q * b.q * b.q);
    Ok(Frequencies {
        omega_r,
        omega_theta: omega_r * b.dq_dtheta,
        omega_phi: omega_r * b.dq_dphi,
    })
}

fn no_bound_state(qn: QuantumNumbers, reason: &'static str) -> Error {
    Error::NoBoundState { qn, reason }
}

/// Bohr-Sommerfeld energy and effective `l` (`Q/ħ = n_r + l + 1`).
pub fn bsq_level(kind: PotentialKind, params: &PhysicalParams, qn: QuantumNumbers) -> Result<SpectrumEntry> {
    let a = ActionSet::quantized(kind, qn, params.hbar);
    let b = bracket(params, &a).map_err(|_| {
        no_bound_state(
            qn,
            match kind {
                PotentialKind::Cotangent => "(n_theta + n_phi~ + 1/2)^2 hbar^2 < mu rho",
                PotentialKind::Kibler => "n_phi^2 + 2 mu (gamma - rho)/hbar^2 < 0",
            },
        )
    })?;
    let energy = energy_from_bracket(params, b.q)?;
    Ok(SpectrumEntry {
        quantum_numbers: qn,
        energy,
        l_value: (b.q - a.j_r) / params.hbar - 0.5,
    })
}

pub fn bsq_energy_cotangent(params: &PhysicalParams, qn: QuantumNumbers) -> Result<f64> {
    Ok(bsq_level(PotentialKind::Cotangent, params, qn)?.energy)
}

pub fn bsq_energy_kibler(params: &PhysicalParams, qn: QuantumNumbers) -> Result<f64> {
    Ok(bsq_level(PotentialKind::Kibler, params, qn)?.energy)
}

/// All bound levels with `n_r, n_θ ≤ n_max` and `|n_φ| ≤ n_max`, sorted by energy.
/// Triples without a bound state are returned separately.
pub fn bsq_spectrum(
    kind: PotentialKind,
    params: &PhysicalParams,
    n_max: u32,
) -> (Vec<SpectrumEntry>, Vec<QuantumNumbers>) {
    let mut levels = Vec::new();
    let mut missing = Vec::new();
    let m = n_max as i32;
    for n_r in 0..=n_max {
        for n_theta in 0..=n_max {
            for n_phi in -m..=m {
                let qn = QuantumNumbers::new(n_r, n_theta, n_phi);
                match bsq_level(kind, params, qn) {
                    Ok(e) => levels.push(e),
                    Err(_) => missing.push(qn),
                }
            }
        }
    }
    levels.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    (levels, missing)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn p(mu: f64, kappa: f64, rho: f64, gamma: f64) -> PhysicalParams {
        PhysicalParams::new(mu, kappa, rho, gamma).unwrap()
    }

    fn c(e: f64, at: f64, ap: f64) -> SeparationConstants {
        SeparationConstants::new(e, at, ap).unwrap()
    }

    #[test]
    fn radial_action_examples() {
        let v = j_r(&p(1.0, 20.0, 10.0, 0.0), &c(3.0, 3.0, 2.0)).unwrap();
        assert_relative_eq!(v, 20.0 / 6f64.sqrt() - 3.0, max_relative = 1e-15);
        assert!((v - 5.1650).abs() < 1e-4);
        // circular: α_θ² = κ²μ/(2|ε|)
        let at = (400.0f64 / 6.0).sqrt();
        assert!(j_r(&p(1.0, 20.0, 0.0, 0.0), &c(3.0, at, 1.0)).unwrap() < 1e-14);
        assert!(matches!(
            j_r(&p(1.0, 20.0, 0.0, 0.0), &c(3.0, 9.0, 1.0)),
            Err(Error::Unbound { constraint: Constraint::RadialBound, .. })
        ));
    }

    #[test]
    fn polar_action_examples() {
        let v = j_theta_cotangent(&p(1.0, 20.0, 10.0, 0.0), &c(3.0, 3.0, 2.0)).unwrap();
        assert_relative_eq!(v, (0.5 * (481f64.sqrt() + 9.0)).sqrt() - 2.0, max_relative = 1e-15);
        assert_eq!(j_theta_cotangent(&p(1.0, 20.0, 0.0, 0.0), &c(3.0, 3.0, 2.0)).unwrap(), 1.0);

        let v = j_theta_kibler(&p(1.0, 20.0, 3.0, 0.0), &c(3.0, 8.0, 5.0)).unwrap();
        assert_relative_eq!(v, 8.0 - 0.5 * (31f64.sqrt() + 19f64.sqrt()), max_relative = 1e-15);
        assert_eq!(j_theta_kibler(&p(1.0, 20.0, 0.0, 0.0), &c(3.0, 8.0, 5.0)).unwrap(), 3.0);
        // α̃_φ² = 2μρ boundary
        let v = j_theta_kibler(&p(1.0, 20.0, 8.0, 0.0), &c(3.0, 8.0, 4.0)).unwrap();
        assert_relative_eq!(v, 8.0 - 8f64.sqrt(), max_relative = 1e-15);
        assert_eq!(j_phi(&c(3.0, 8.0, 5.0)), 5.0);
        assert_eq!(j_phi(&c(3.0, 8.0, 0.0)), 0.0);
    }

    #[test]
    fn pinned_polar_motion_has_zero_action() {
        let at: f64 = 3.0;
        let s = (at.powi(4) + 400.0).sqrt();
        let ap = (0.5 * (s + at * at)).sqrt();
        let v = j_theta_cotangent(&p(1.0, 20.0, 10.0, 0.0), &c(3.0, at, ap)).unwrap();
        assert!(v.abs() < 1e-14);
    }

    #[test]
    fn hamiltonian_round_trips() {
        let cases = [
            (PotentialKind::Cotangent, p(1.0, 20.0, 10.0, 0.0), c(3.0, 3.0, 2.0)),
            (PotentialKind::Cotangent, p(1.0, 10.0, 20.0, 4.0), c(3.0, 3.0, 2.0)),
            (PotentialKind::Kibler, p(1.0, 20.0, 3.0, 0.0), c(3.0, 8.0, 5.0)),
            (PotentialKind::Kibler, p(1.0, 30.0, 30.0, 0.0), c(3.0, 10.0, 8.0)),
        ];
        for (kind, params, consts) in cases {
            let a = actions(kind, &params, &consts).unwrap();
            let h = hamiltonian(&params, &a).unwrap();
            assert_relative_eq!(h, -3.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn kepler_hamiltonian_and_frequencies() {
        let params = p(1.0, 2.0, 0.0, 0.0);
        for kind in [PotentialKind::Cotangent, PotentialKind::Kibler] {
            let a = ActionSet::new(kind, 1.5, 0.5, 2.0);
            let h = hamiltonian(&params, &a).unwrap();
            assert_relative_eq!(h, -4.0 / (2.0 * 16.0), max_relative = 1e-15);
            let w = frequencies(&params, &a).unwrap();
            assert_relative_eq!(w.omega_r, 4.0 / 64.0, max_relative = 1e-15);
            assert_relative_eq!(w.omega_theta, w.omega_r, max_relative = 1e-15);
            assert_relative_eq!(w.omega_phi, w.omega_r, max_relative = 1e-15);
        }
    }

    #[test]
    fn degeneracy_structure() {
        let a = ActionSet::new(PotentialKind::Cotangent, 5.0, 1.5, 2.0);
        let w = frequencies(&p(1.0, 20.0, 10.0, 0.0), &a).unwrap();
        assert_eq!(w.omega_theta, w.omega_phi);
        assert!((w.omega_r - w.omega_theta).abs() / w.omega_r > 1e-6);

        let w = frequencies(&p(1.0, 20.0, 10.0, 4.0), &a).unwrap();
        assert!(w.omega_r != w.omega_theta && w.omega_theta != w.omega_phi && w.omega_r != w.omega_phi);

        let k = ActionSet::new(PotentialKind::Kibler, 5.0, 1.5, 5.0);
        for gamma in [0.0, 2.0] {
            let w = frequencies(&p(1.0, 20.0, 3.0, gamma), &k).unwrap();
            assert_eq!(w.omega_r, w.omega_theta);
            assert!((w.omega_phi - w.omega_r).abs() / w.omega_r > 1e-6);
        }
    }

    #[test]
    fn analytic_frequencies_match_central_differences() {
        let cases = [
            (p(1.0, 20.0, 10.0, 0.0), ActionSet::new(PotentialKind::Cotangent, 5.0, 1.5, 2.0)),
            (p(1.0, 10.0, 20.0, 4.0), ActionSet::new(PotentialKind::Cotangent, 2.0, 2.0, 2.0)),
            (p(1.0, 20.0, 3.0, 0.0), ActionSet::new(PotentialKind::Kibler, 5.0, 1.5, 5.0)),
            (p(0.7, 20.0, 3.0, 1.5), ActionSet::new(PotentialKind::Kibler, 3.0, 2.5, 4.0)),
        ];
        for (params, a) in cases {
            let w = frequencies(&params, &a).unwrap();
            let fd = |shift: [f64; 3]| {
                let scale = a.j_r.max(a.j_theta).max(a.j_phi);
                let h = 1e-6 * scale;
                let at = |s: f64| {
                    let b = ActionSet::new(
                        a.kind,
                        a.j_r + s * h * shift[0],
                        a.j_theta + s * h * shift[1],
                        a.j_phi + s * h * shift[2],
                    );
                    hamiltonian(&params, &b).unwrap()
                };
                (at(1.0) - at(-1.0)) / (2.0 * h)
            };
            assert_relative_eq!(fd([1.0, 0.0, 0.0]), w.omega_r, max_relative = 1e-7);
            assert_relative_eq!(fd([0.0, 1.0, 0.0]), w.omega_theta, max_relative = 1e-7);
            assert_relative_eq!(fd([0.0, 0.0, 1.0]), w.omega_phi, max_relative = 1e-7);
        }
    }

    #[test]
    fn imaginary_brackets_are_invalid_actions() {
        let a = ActionSet::new(PotentialKind::Cotangent, 1.0, 0.5, 0.0);
        assert!(matches!(
            hamiltonian_cotangent(&p(1.0, 1.0, 10.0, 0.0), &a),
            Err(Error::InvalidAction(_))
        ));
        assert!(matches!(
            hamiltonian_kibler(&p(1.0, 1.0, 1.0, 0.0), &a),
            Err(Error::InvalidAction(_))
        ));
        let neg = ActionSet::new(PotentialKind::Kibler, -1.0, 0.5, 1.0);
        assert!(hamiltonian(&p(1.0, 1.0, 0.0, 0.0), &neg).is_err());
    }

    #[test]
    fn hydrogen_spectrum_in_the_kepler_limit() {
        let params = PhysicalParams::with_hbar(1.0, 1.0, 0.0, 0.0, 1.0).unwrap();
        for kind in [PotentialKind::Cotangent, PotentialKind::Kibler] {
            for n_r in 0..4 {
                for n_theta in 0..4 {
                    for n_phi in -3..=3 {
                        let qn = QuantumNumbers::new(n_r, n_theta, n_phi);
                        let n = (n_r + n_theta) as f64 + n_phi.abs() as f64 + 1.0;
                        let e = bsq_level(kind, &params, qn).unwrap();
                        assert_relative_eq!(e.energy, -0.5 / (n * n), max_relative = 1e-14);
                        assert_relative_eq!(e.l_value, (n_theta as i32 + n_phi.abs()) as f64, epsilon = 1e-14);
                    }
                }
            }
        }
    }

    #[test]
    fn kibler_without_azimuthal_quantum_has_no_bound_state() {
        let params = p(1.0, 1.0, 0.3, 0.0);
        let e = bsq_energy_kibler(&params, QuantumNumbers::new(0, 0, 0));
        assert!(matches!(e, Err(Error::NoBoundState { .. })));
        let (levels, missing) = bsq_spectrum(PotentialKind::Kibler, &params, 2);
        assert_eq!(missing.len(), 9);
        assert!(levels.windows(2).all(|w| w[0].energy <= w[1].energy));
    }
}
