//! Quantum bound states: polar-equation parameters, unnormalised wavefunctions
//! and the energy `E = −μκ² / (2ħ²(n_r + l + 1)²)`.

use crate::actions::SpectrumEntry;
use crate::error::{Error, Result};
use crate::model::{PhysicalParams, PotentialKind, QuantumNumbers};
use crate::polynomial::{jacobi, laguerre, laguerre_value, romanovski, Polynomial};

/// `n_φ² + 2μγ/ħ²`, the squared azimuthal number seen by the polar equation.
pub fn n_phi_sq_eff(params: &PhysicalParams, n_phi: i32) -> f64 {
    let n = n_phi as f64;
    if params.gamma == 0.0 {
        n * n
    } else {
        n * n + 2.0 * params.mu * params.gamma / (params.hbar * params.hbar)
    }
}

/// Romanovski parameters `(α, β)` and the effective `l` of a cotangent polar state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CotangentPolarParams {
    pub alpha_r: f64,
    pub beta_r: f64,
    pub l_eff: f64,
    /// `ñ_φ = sqrt(n_φ² + 2μγ/ħ²)`
    pub n_phi_eff: f64,
}

/// Jacobi parameters `(α, β)` and the effective `l` of a Kibler polar state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KiblerPolarParams {
    pub alpha_j: f64,
    pub beta_j: f64,
    pub l_eff: f64,
}

fn no_bound(n_theta: u32, n_phi_sq: f64, reason: &'static str) -> Error {
    Error::NoBoundState {
        qn: QuantumNumbers::new(0, n_theta, n_phi_sq.sqrt().round() as i32),
        reason,
    }
}

/// `β = ½ − n_θ − ñ`, `α = 2μρ/(ħ² (n_θ + ñ + ½))`,
/// `l + ½ = (n_θ + ñ + ½) sqrt(1 − μ²ρ²/(ħ⁴ (n_θ + ñ + ½)⁴))`.
pub fn cotangent_polar_params(
    params: &PhysicalParams,
    n_theta: u32,
    n_phi_sq_eff: f64,
) -> Result<CotangentPolarParams> {
    let n_phi_eff = n_phi_sq_eff.sqrt();
    let big_n = n_theta as f64 + n_phi_eff + 0.5;
    let h2 = params.hbar * params.hbar;
    let mr = params.mu * params.rho / h2;
    let ratio = mr / (big_n * big_n);
    let radicand = 1.0 - ratio * ratio;
    if radicand < 0.0 {
        return Err(no_bound(
            n_theta,
            n_phi_sq_eff,
            "(n_theta + n_phi~ + 1/2)^2 < mu rho / hbar^2",
        ));
    }
    Ok(CotangentPolarParams {
        alpha_r: 2.0 * mr / big_n,
        beta_r: 0.5 - n_theta as f64 - n_phi_eff,
        l_eff: big_n * radicand.sqrt() - 0.5,
        n_phi_eff,
    })
}

/// `α = sqrt(ñ² − 2μρ/ħ²)`, `β = sqrt(ñ² + 2μρ/ħ²)`, `l = n_θ + ½(α + β)`.
pub fn kibler_polar_params(
    params: &PhysicalParams,
    n_theta: u32,
    n_phi_sq_eff: f64,
) -> Result<KiblerPolarParams> {
    let two_mr = 2.0 * params.mu * params.rho / (params.hbar * params.hbar);
    let a2 = n_phi_sq_eff - two_mr;
    if a2 < 0.0 {
        return Err(no_bound(n_theta, n_phi_sq_eff, "n_phi~^2 < 2 mu rho / hbar^2"));
    }
    let alpha_j = a2.sqrt();
    let beta_j = (n_phi_sq_eff + two_mr).sqrt();
    Ok(KiblerPolarParams {
        alpha_j,
        beta_j,
        l_eff: n_theta as f64 + 0.5 * (alpha_j + beta_j),
    })
}

fn with_qn(e: Error, qn: QuantumNumbers) -> Error {
    match e {
        Error::NoBoundState { reason, .. } => Error::NoBoundState { qn, reason },
        other => other,
    }
}

/// Effective `l` for a quantum-number triple.
pub fn l_effective(kind: PotentialKind, params: &PhysicalParams, qn: QuantumNumbers) -> Result<f64> {
    let n2 = n_phi_sq_eff(params, qn.n_phi);
    match kind {
        PotentialKind::Cotangent => cotangent_polar_params(params, qn.n_theta, n2).map(|p| p.l_eff),
        PotentialKind::Kibler => kibler_polar_params(params, qn.n_theta, n2).map(|p| p.l_eff),
    }
    .map_err(|e| with_qn(e, qn))
}

pub fn qm_level(kind: PotentialKind, params: &PhysicalParams, qn: QuantumNumbers) -> Result<SpectrumEntry> {
    let l = l_effective(kind, params, qn)?;
    let n = qn.n_r as f64 + l + 1.0;
    Ok(SpectrumEntry {
        quantum_numbers: qn,
        energy: -params.mu * params.kappa * params.kappa / (2.0 * params.hbar * params.hbar * n * n),
        l_value: l,
    })
}

pub fn qm_energy_cotangent(params: &PhysicalParams, qn: QuantumNumbers) -> Result<f64> {
    Ok(qm_level(PotentialKind::Cotangent, params, qn)?.energy)
}

pub fn qm_energy_kibler(params: &PhysicalParams, qn: QuantumNumbers) -> Result<f64> {
    Ok(qm_level(PotentialKind::Kibler, params, qn)?.energy)
}

/// `R(r) = (Qr)^l e^{−Qr} L_{n_r}^{2l+1}(2Qr)` with `Q = sqrt(2μ|E|)/ħ`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialWavefunction {
    pub q: f64,
    pub l: f64,
    pub laguerre: Polynomial<f64>,
}

impl RadialWavefunction {
    pub fn eval(&self, r: f64) -> f64 {
        let x = self.q * r;
        let n = self.laguerre.degree().unwrap_or(0);
        x.powf(self.l) * (-x).exp() * laguerre_value(n, 2.0 * self.l + 1.0, 2.0 * x)
    }
}

pub fn radial_wavefunction(params: &PhysicalParams, n_r: u32, l_eff: f64, energy: f64) -> Result<RadialWavefunction> {
    if !(energy < 0.0) {
        return Err(Error::InvalidParameter {
            name: "energy",
            value: energy,
            reason: "bound states need E < 0",
        });
    }
    Ok(RadialWavefunction {
        q: (2.0 * params.mu * -energy).sqrt() / params.hbar,
        l: l_eff,
        laguerre: laguerre(n_r as usize, 2.0 * l_eff + 1.0),
    })
}

/// `Θ(θ) = e^{−αθ/2} sin^{n_θ+ñ}θ R_{n_θ}^{(α, β)}(cot θ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CotangentPolarWavefunction {
    pub params: CotangentPolarParams,
    pub power: f64,
    pub romanovski: Polynomial<f64>,
}

impl CotangentPolarWavefunction {
    pub fn eval(&self, theta: f64) -> f64 {
        let (s, c) = theta.sin_cos();
        (-0.5 * self.params.alpha_r * theta).exp() * s.powf(self.power) * self.romanovski.eval(&(c / s))
    }
}

pub fn polar_wavefunction_cotangent(
    params: &PhysicalParams,
    n_theta: u32,
    n_phi: i32,
) -> Result<CotangentPolarWavefunction> {
    let qn = QuantumNumbers::new(0, n_theta, n_phi);
    let p = cotangent_polar_params(params, n_theta, n_phi_sq_eff(params, n_phi))
        .map_err(|e| with_qn(e, qn))?;
    Ok(CotangentPolarWavefunction {
        params: p,
        power: n_theta as f64 + p.n_phi_eff,
        romanovski: romanovski(n_theta as usize, p.alpha_r, p.beta_r),
    })
}

/// `Θ(θ) = (1 − cos θ)^{α/2} (1 + cos θ)^{β/2} P_{n_θ}^{(α, β)}(cos θ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct KiblerPolarWavefunction {
    pub params: KiblerPolarParams,
    pub jacobi: Polynomial<f64>,
}

impl KiblerPolarWavefunction {
    pub fn eval(&self, theta: f64) -> f64 {
        // 1 ∓ cos θ = 2 sin²(θ/2), 2 cos²(θ/2) without cancellation near the poles
        let (sh, ch) = (0.5 * theta).sin_cos();
        let v = theta.cos();
        (2.0 * sh * sh).powf(0.5 * self.params.alpha_j)
            * (2.0 * ch * ch).powf(0.5 * self.params.beta_j)
            * self.jacobi.eval(&v)
    }
}

pub fn polar_wavefunction_kibler(
    params: &PhysicalParams,
    n_theta: u32,
    n_phi: i32,
) -> Result<KiblerPolarWavefunction> {
    let qn = QuantumNumbers::new(0, n_theta, n_phi);
    let p = kibler_polar_params(params, n_theta, n_phi_sq_eff(params, n_phi))
        .map_err(|e| with_qn(e, qn))?;
    Ok(KiblerPolarWavefunction {
        params: p,
        jacobi: jacobi(n_theta as usize, p.alpha_j, p.beta_j),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn p(rho: f64, gamma: f64) -> PhysicalParams {
        PhysicalParams::with_hbar(1.0, 1.0, rho, gamma, 1.0).unwrap()
    }

    #[test]
    fn cotangent_parameter_examples() {
        let c = cotangent_polar_params(&p(0.0, 0.0), 2, 9.0).unwrap();
        assert_eq!((c.alpha_r, c.beta_r, c.l_eff), (0.0, -4.5, 5.0));

        let c = cotangent_polar_params(&p(1.0, 0.0), 0, 1.0).unwrap();
        assert_relative_eq!(c.alpha_r, 4.0 / 3.0, max_relative = 1e-15);
        assert_relative_eq!(c.l_eff + 0.5, 1.5 * (1.0 - 1.0 / 1.5f64.powi(4)).sqrt(), max_relative = 1e-15);
        assert_relative_eq!(c.alpha_r * (c.beta_r - 1.0), -2.0, max_relative = 1e-14);
        let lhs = (c.beta_r - 1.0).powi(2) - c.alpha_r.powi(2) / 4.0;
        assert_relative_eq!(lhs, (c.l_eff + 0.5).powi(2), max_relative = 1e-12);
    }

    #[test]
    fn kibler_parameter_examples() {
        let k = kibler_polar_params(&p(0.0, 0.0), 1, 4.0).unwrap();
        assert_eq!((k.alpha_j, k.beta_j, k.l_eff), (2.0, 2.0, 3.0));
        let k = kibler_polar_params(&p(0.3, 0.0), 0, 1.0).unwrap();
        assert_relative_eq!(k.alpha_j, 0.4f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(k.beta_j, 1.6f64.sqrt(), max_relative = 1e-15);
        let k = kibler_polar_params(&p(0.5, 0.0), 0, 1.0).unwrap();
        assert_eq!(k.alpha_j, 0.0);
        assert!(matches!(
            kibler_polar_params(&p(0.3, 0.0), 0, 0.0),
            Err(Error::NoBoundState { .. })
        ));
    }

    #[test]
    fn energy_examples() {
        let e = qm_energy_kibler(&p(0.3, 0.0), QuantumNumbers::new(0, 0, 1)).unwrap();
        let expected = -1.0 / (2.0 * (1.0 + 0.5 * (1.6f64.sqrt() + 0.4f64.sqrt())).powi(2));
        assert_relative_eq!(e, expected, max_relative = 1e-15);
        for kind in [PotentialKind::Cotangent, PotentialKind::Kibler] {
            let e = qm_level(kind, &p(0.0, 0.0), QuantumNumbers::new(1, 2, -1)).unwrap();
            assert_relative_eq!(e.energy, -1.0 / 50.0, max_relative = 1e-15);
        }
    }

    #[test]
    fn gamma_enters_through_the_effective_azimuthal_number() {
        let params = p(0.1, 0.5);
        assert_relative_eq!(n_phi_sq_eff(&params, 2), 5.0, max_relative = 1e-15);
        let a = cotangent_polar_params(&params, 1, 5.0).unwrap();
        let b = polar_wavefunction_cotangent(&params, 1, 2).unwrap().params;
        assert_eq!(a, b);
    }

    #[test]
    fn ground_states_have_closed_forms() {
        let r = radial_wavefunction(&p(0.0, 0.0), 0, 0.0, -0.5).unwrap();
        for &x in &[0.1, 1.0, 3.0] {
            assert_relative_eq!(r.eval(x), (-x).exp(), max_relative = 1e-15);
        }
        let k = polar_wavefunction_kibler(&p(0.0, 0.0), 0, 3).unwrap();
        for &t in &[0.2, 1.0, 2.5] {
            // (1−c)^{3/2}(1+c)^{3/2} = sin³θ
            assert_relative_eq!(k.eval(t), t.sin().powi(3), max_relative = 1e-13);
        }
    }
}
