//! Classical orbits of the cotangent potential
//! `V_A = −κ/r − ρ cot θ / r² + γ cosec² θ / r²`.
//!
//! With `u = cot θ` the polar/azimuthal equation integrates to
//! `cot θ = B + C cos(kφ)`, `k = α̃_φ/α_φ`, and the polar integral ψ, which
//! drives `r(ψ)` and `t(ψ)`, becomes a rational integral in the half-angle
//! variable `s = tan(kφ/2)`:
//!
//! ```text
//! ψ = 2A/((B−C)²+1) ∫ (s²+1) ds / (s⁴ + 2D s² + E)
//!   = A/((B−C)²+1) { (G−1)/(4FG) ln[(s²−2Fs+G)/(s²+2Fs+G)]
//!                    + (G+1)/(2GH) [atan((s+F)/H) + atan((s−F)/H)] }
//! ```
//!
//! For γ = 0 the orbit lies on an elliptic cone whose axis is tilted by θ_c
//! in the xz-plane.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::model::{
    effective_alpha_phi, validate_cotangent, Constraint, PhysicalParams, PotentialKind,
    SeparationConstants, BOUNDARY_RTOL,
};
use crate::radial::{radial_turning_points, RadialOrbit};
use crate::trajectory::{uniform_grid, OrbitSample, Trajectory};

/// Dimensionless constants of the cotangent orbit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CotangentOrbitConstants {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub h: f64,
    pub alpha_phi_eff: f64,
    /// `α̃_φ / α_φ`: the polar motion's angular frequency in φ.
    pub ratio: f64,
}

pub fn cotangent_constants(
    params: &PhysicalParams,
    consts: &SeparationConstants,
) -> Result<CotangentOrbitConstants> {
    if consts.alpha_phi <= 0.0 {
        return Err(Error::DegenerateOrbit(
            "alpha_phi = 0: phi is constant and cannot drive the cotangent orbit",
        ));
    }
    let ap_eff = effective_alpha_phi(params, consts);
    let a = consts.alpha_theta / ap_eff;
    let b = params.mu * params.rho / (ap_eff * ap_eff);
    let mut c2 = a * a + b * b - 1.0;
    if c2 < 0.0 {
        if -c2 > BOUNDARY_RTOL * (a * a + b * b).max(1.0) {
            let report = validate_cotangent(params, consts);
            let check = report
                .checks
                .iter()
                .find(|c| c.constraint == Constraint::PolarReal)
                .copied()
                .expect("cotangent report carries the polar check");
            return Err(Error::Unbound {
                constraint: Constraint::PolarReal,
                lhs: check.lhs,
                rhs: check.rhs,
            });
        }
        c2 = 0.0;
    }
    let c = c2.sqrt();
    let x = (b - c) * (b - c) + 1.0;
    let y = (b + c) * (b + c) + 1.0;
    let d = (2.0 - a * a) / x;
    let e = y / x;
    let g = e.sqrt();
    // G − D = 4C²/(X² (G + D)) exactly; this form keeps F accurate as C → 0.
    let g_plus_d = g + d;
    let f = if c == 0.0 {
        0.0
    } else {
        (2.0 * c2 / (x * x * g_plus_d)).sqrt()
    };
    let h = (0.5 * g_plus_d).sqrt();
    Ok(CotangentOrbitConstants {
        a,
        b,
        c,
        d,
        e,
        f,
        g,
        h,
        alpha_phi_eff: ap_eff,
        ratio: ap_eff / consts.alpha_phi,
    })
}

impl CotangentOrbitConstants {
    /// `cot θ = B + C cos(kφ)`, θ in (0, π).
    pub fn theta_of_phi(&self, phi: f64) -> f64 {
        arccot(self.b + self.c * (self.ratio * phi).cos())
    }

    /// `(θ1, θ2) = (arccot(B + C), arccot(B − C))`.
    pub fn theta_extrema(&self) -> (f64, f64) {
        (arccot(self.b + self.c), arccot(self.b - self.c))
    }

    fn prefactor(&self) -> f64 {
        self.a / ((self.b - self.c) * (self.b - self.c) + 1.0)
    }

    /// Closed form on one half-angle branch, `kφ = 2·half`, `|half| ≤ π/2`.
    fn psi_branch(&self, half: f64) -> f64 {
        let (sn, cs) = half.sin_cos();
        let (f, g, h) = (self.f, self.g, self.h);
        // All in homogeneous form (s = sn/cs) so the branch end s → ±∞ is regular.
        let den = sn * sn + 2.0 * f * sn * cs + g * cs * cs;
        let log_part = if f > 0.0 {
            (g - 1.0) / (4.0 * f * g) * (-4.0 * f * sn * cs / den).ln_1p()
        } else {
            -(g - 1.0) * sn * cs / (g * den)
        };
        let atan_part = (g + 1.0) / (2.0 * g * h)
            * ((sn + f * cs).atan2(h * cs) + (sn - f * cs).atan2(h * cs));
        self.prefactor() * (log_part + atan_part)
    }

    /// Advance of ψ while the polar motion completes one cycle (`kφ` by 2π).
    pub fn psi_period(&self) -> f64 {
        self.prefactor() * PI * (self.g + 1.0) / (self.g * self.h)
    }

    /// ψ(φ), continuous and increasing, with ψ(0) = 0.
    pub fn psi_of_phi(&self, phi: f64) -> f64 {
        let u = self.ratio * phi;
        let cycles = (u / TAU).round();
        let reduced = u - cycles * TAU;
        cycles * self.psi_period() + self.psi_branch(0.5 * reduced)
    }

    /// `dψ/dφ = k A / (1 + (B + C cos kφ)²)`.
    pub fn dpsi_dphi(&self, phi: f64) -> f64 {
        let cot = self.b + self.c * (self.ratio * phi).cos();
        self.ratio * self.a / (1.0 + cot * cot)
    }

    /// The φ at which ψ(φ) reaches `psi ≥ 0`.
    pub fn phi_of_psi(&self, psi: f64) -> Result<f64> {
        let steepest = self.b.abs() + self.c;
        let min_slope = self.ratio * self.a / (1.0 + steepest * steepest);
        let upper = psi / min_slope * (1.0 + 1e-12) + 1e-12;
        crate::oracle::invert_monotone(|phi| self.psi_of_phi(phi), psi, (0.0, upper))
    }
}

/// arccot with range (0, π).
fn arccot(x: f64) -> f64 {
    1.0f64.atan2(x)
}

/// The elliptic cone carrying a γ = 0 cotangent orbit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticCone {
    /// Tilt of the cone axis from the z axis (the axis lies at azimuth π).
    pub theta_c: f64,
    /// Half-angle in the x′z′ plane.
    pub theta_xz: f64,
    /// Half-angle in the y′z′ plane.
    pub theta_yz: f64,
    /// Maps `(x, y, z)` to the principal frame `(x′, y′, z′)`.
    pub rotation: [[f64; 3]; 3],
    /// Coefficients of `cx x′² + cy y′² + cz z′² = 0`.
    pub coefficients: [f64; 3],
    /// `B` and `C` of the pre-diagonal form `C x + B sqrt(x² + y²) = z`.
    pub b: f64,
    pub c: f64,
}

pub fn cone_geometry(params: &PhysicalParams, consts: &SeparationConstants) -> Result<EllipticCone> {
    if params.gamma != 0.0 {
        return Err(Error::NotACone { gamma: params.gamma });
    }
    let k = cotangent_constants(params, consts)?;
    let at2 = consts.alpha_theta * consts.alpha_theta;
    let ap2 = consts.alpha_phi * consts.alpha_phi;
    let mr = params.mu * params.rho;
    let s = (at2 * at2 + 4.0 * mr * mr).sqrt();
    // tan θ_c = (S + α_θ² − 2α_φ²) / (2 sqrt(α_φ²(α_θ² − α_φ²) + μ²ρ²)); the radicand
    // factors as ½(S + α_θ² − 2α_φ²)(α_φ² + 2μ²ρ²/(S + α_θ²)), which removes the
    // 0/0 at the pinned-θ limit.
    let lift = (0.5 * (s + at2 - 2.0 * ap2)).max(0.0);
    let theta_c = lift.sqrt().atan2((ap2 + 2.0 * mr * mr / (s + at2)).sqrt());
    let theta_xz = (s + at2).atan2(2.0 * mr);
    let theta_yz = (consts.alpha_phi * (0.5 * (s + at2)).sqrt()).atan2(mr);
    let (sn, cs) = theta_c.sin_cos();
    let rotation = [[cs, 0.0, sn], [0.0, 1.0, 0.0], [-sn, 0.0, cs]];
    // S − α_θ² = 4μ²ρ²/(S + α_θ²) avoids cancellation for small ρ.
    let coefficients = [
        4.0 * mr * mr / ((s + at2) * ap2),
        2.0 * mr * mr / (ap2 * ap2),
        -(at2 + s) / ap2,
    ];
    Ok(EllipticCone {
        theta_c,
        theta_xz,
        theta_yz,
        rotation,
        coefficients,
        b: k.b,
        c: k.c,
    })
}

impl EllipticCone {
    pub fn to_principal(&self, p: [f64; 3]) -> [f64; 3] {
        let m = &self.rotation;
        [0, 1, 2].map(|i| m[i][0] * p[0] + m[i][1] * p[1] + m[i][2] * p[2])
    }

    /// Residual of the diagonal cone equation, relative to its largest term.
    pub fn relative_residual(&self, p: [f64; 3]) -> f64 {
        let q = self.to_principal(p);
        let terms = [0, 1, 2].map(|i| self.coefficients[i] * q[i] * q[i]);
        let scale = terms.iter().fold(0.0f64, |m, t| m.max(t.abs()));
        if scale == 0.0 {
            0.0
        } else {
            terms.iter().sum::<f64>().abs() / scale
        }
    }

    /// Residual of `C x + B sqrt(x² + y²) − z`, relative to `|(x, y, z)|`.
    pub fn prediagonal_residual(&self, p: [f64; 3]) -> f64 {
        let rho_xy = p[0].hypot(p[1]);
        let norm = rho_xy.hypot(p[2]);
        (self.c * p[0] + self.b * rho_xy - p[2]).abs() / norm
    }
}

/// A fully constructed cotangent orbit: radial sector plus angular constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CotangentOrbit {
    pub radial: RadialOrbit,
    pub constants: CotangentOrbitConstants,
    pub energy_abs: f64,
}

impl CotangentOrbit {
    pub fn new(params: &PhysicalParams, consts: &SeparationConstants) -> Result<Self> {
        validate_cotangent(params, consts).into_result()?;
        let radial = radial_turning_points(params, consts)?;
        let constants = cotangent_constants(params, consts)?;
        if radial.r1 <= 0.0 {
            return Err(Error::DegenerateOrbit(
                "alpha_theta = 0 gives r1 = 0; the psi parametrisation is singular",
            ));
        }
        Ok(Self {
            radial,
            constants,
            energy_abs: consts.energy_abs,
        })
    }

    pub fn sample_at(&self, phi: f64) -> OrbitSample {
        let theta = self.constants.theta_of_phi(phi);
        let psi = self.constants.psi_of_phi(phi);
        let r = self.radial.r_of_psi_unchecked(psi);
        let t = self.radial.t_of_w(self.radial.w_of_psi_unchecked(psi));
        OrbitSample::from_spherical(t, r, theta, phi)
    }

    /// `n` samples evenly spaced in φ over `[0, phi_max]`.
    pub fn sample(&self, phi_max: f64, n: usize) -> Result<Trajectory> {
        if n < 2 {
            return Err(Error::InvalidParameter {
                name: "n_samples",
                value: n as f64,
                reason: "need at least 2 samples",
            });
        }
        let samples = uniform_grid(phi_max, n).map(|phi| self.sample_at(phi)).collect();
        Ok(Trajectory {
            kind: PotentialKind::Cotangent,
            energy_abs: self.energy_abs,
            samples,
        })
    }

    /// φ covered by `cycles` radial periods (ψ advancing by `2π·cycles`).
    pub fn phi_for_radial_cycles(&self, cycles: f64) -> Result<f64> {
        self.constants.phi_of_psi(TAU * cycles)
    }
}

pub fn sample_orbit_cotangent(
    params: &PhysicalParams,
    consts: &SeparationConstants,
    phi_max: f64,
    n_samples: usize,
) -> Result<Trajectory> {
    CotangentOrbit::new(params, consts)?.sample(phi_max, n_samples)
}
