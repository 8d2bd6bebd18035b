//! Radial motion shared by both potentials: `V₁(r) = −κ/r` leaves the radial
//! problem identical to Kepler's.
//!
//! Two parametrisations are available. The "eccentric" angle `w` gives
//! `r(w)` and `t(w)` directly; the polar-integral angle `ψ` (the true anomaly
//! of the radial ellipse) gives `r(ψ)`, and is what the angular solutions of
//! both potentials are written in terms of.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::model::{Constraint, PhysicalParams, SeparationConstants, BOUNDARY_RTOL};

/// Turning radii and period of the radial libration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialOrbit {
    pub r1: f64,
    pub r2: f64,
    /// Time for `w` (equivalently `ψ`) to advance by 2π.
    pub period_t: f64,
    /// `sqrt(μ (r1 + r2)³ / 8κ)`.
    time_scale: f64,
}

/// Roots of `2μ|ε| r² − 2μκ r + α_θ² = 0`.
pub fn radial_turning_points(
    params: &PhysicalParams,
    consts: &SeparationConstants,
) -> Result<RadialOrbit> {
    let half_sum = params.kappa / (2.0 * consts.energy_abs);
    let product = consts.alpha_theta * consts.alpha_theta / (2.0 * params.mu * consts.energy_abs);
    let mut disc = half_sum * half_sum - product;
    if disc < 0.0 {
        if -disc > BOUNDARY_RTOL * half_sum * half_sum {
            return Err(Error::Unbound {
                constraint: Constraint::RadialBound,
                lhs: params.kappa * params.kappa * params.mu / (2.0 * consts.energy_abs),
                rhs: consts.alpha_theta * consts.alpha_theta,
            });
        }
        disc = 0.0;
    }
    let r2 = half_sum + disc.sqrt();
    // Vieta for the small root avoids cancellation for nearly radial orbits.
    let r1 = product / r2;
    Ok(RadialOrbit::from_turning_points(params, r1, r2))
}

impl RadialOrbit {
    pub fn from_turning_points(params: &PhysicalParams, r1: f64, r2: f64) -> Self {
        let s = r1 + r2;
        let time_scale = (params.mu * s * s * s / (8.0 * params.kappa)).sqrt();
        Self {
            r1,
            r2,
            period_t: TAU * time_scale,
            time_scale,
        }
    }

    /// `(r2 − r1)/(r2 + r1)`, the eccentricity of the radial ellipse.
    pub fn eccentricity(&self) -> f64 {
        (self.r2 - self.r1) / (self.r2 + self.r1)
    }

    pub fn r_of_w(&self, w: f64) -> f64 {
        0.5 * (self.r1 + self.r2) - 0.5 * (self.r2 - self.r1) * w.cos()
    }

    pub fn t_of_w(&self, w: f64) -> f64 {
        self.time_scale * (w - self.eccentricity() * w.sin())
    }

    /// `dt/dw`, strictly positive since the eccentricity is below one.
    pub fn dt_dw(&self, w: f64) -> f64 {
        self.time_scale * (1.0 - self.eccentricity() * w.cos())
    }

    fn require_psi_parametrisation(&self) -> Result<()> {
        if self.r1 > 0.0 {
            Ok(())
        } else {
            Err(Error::DegenerateOrbit(
                "alpha_theta = 0 gives r1 = 0; the psi parametrisation is singular",
            ))
        }
    }

    /// `r(ψ) = 2 r1 r2 / (r1 + r2 + (r2 − r1) cos ψ)`, with `r(0) = r1`.
    pub fn r_of_psi(&self, psi: f64) -> Result<f64> {
        self.require_psi_parametrisation()?;
        Ok(self.r_of_psi_unchecked(psi))
    }

    pub(crate) fn r_of_psi_unchecked(&self, psi: f64) -> f64 {
        2.0 * self.r1 * self.r2 / (self.r1 + self.r2 + (self.r2 - self.r1) * psi.cos())
    }

    /// The `w` with `r(w) = r(ψ)`, continued so that `w` and `ψ` advance
    /// together: `w(2πk) = 2πk`, `w(π + 2πk) = π + 2πk`.
    ///
    /// Within a cycle, `tan(w/2) = sqrt(r1/r2) tan(ψ/2)`.
    pub fn w_of_psi(&self, psi: f64) -> Result<f64> {
        self.require_psi_parametrisation()?;
        Ok(self.w_of_psi_unchecked(psi))
    }

    pub(crate) fn w_of_psi_unchecked(&self, psi: f64) -> f64 {
        let cycles = (psi / TAU).round();
        let reduced = psi - cycles * TAU;
        let (s, c) = (0.5 * reduced).sin_cos();
        let w = 2.0 * (self.r1.sqrt() * s).atan2(self.r2.sqrt() * c);
        debug_assert!(w.abs() <= PI + 1e-12);
        w + cycles * TAU
    }

    pub fn t_of_psi(&self, psi: f64) -> Result<f64> {
        Ok(self.t_of_w(self.w_of_psi(psi)?))
    }
}
