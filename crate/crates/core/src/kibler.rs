//! Classical orbits of the Makarov-Kibler potential
//! `V_B = −κ/r + (γ − ρ cos θ) / (r² sin² θ)`.
//!
//! The polar motion follows the radial anomaly ψ directly, `cos θ = M + N cos ψ`,
//! and the azimuth is a sum of two half-angle arctangents. Every γ = 0 or
//! γ ≠ 0 orbit lies on the quadric of revolution `p r + q r cos θ = 2 r1 r2`.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::model::{
    effective_alpha_phi, validate_kibler, Constraint, PhysicalParams, PotentialKind,
    SeparationConstants, BOUNDARY_RTOL,
};
use crate::radial::{radial_turning_points, RadialOrbit};
use crate::trajectory::{uniform_grid, OrbitSample, Trajectory};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KiblerOrbitConstants {
    /// `μρ / α_θ²`
    pub m: f64,
    /// `sqrt(1 − α̃_φ²/α_θ² + M²)`
    pub n: f64,
    pub alpha_phi_eff: f64,
    /// `α_φ / α_θ`, the prefactor of φ(ψ).
    pub ratio: f64,
}

fn polar_error(params: &PhysicalParams, consts: &SeparationConstants, which: Constraint) -> Error {
    let report = validate_kibler(params, consts);
    let c = report
        .checks
        .iter()
        .find(|c| c.constraint == which)
        .copied()
        .expect("Kibler report carries every polar check");
    Error::Unbound {
        constraint: which,
        lhs: c.lhs,
        rhs: c.rhs,
    }
}

pub fn kibler_constants(
    params: &PhysicalParams,
    consts: &SeparationConstants,
) -> Result<KiblerOrbitConstants> {
    if consts.alpha_theta <= 0.0 {
        return Err(Error::DegenerateOrbit(
            "alpha_theta = 0: the polar motion is undefined",
        ));
    }
    let report = validate_kibler(params, consts);
    for which in [Constraint::PolarRange, Constraint::AzimuthalPeriodic] {
        if report.violates(which) {
            return Err(polar_error(params, consts, which));
        }
    }
    let at2 = consts.alpha_theta * consts.alpha_theta;
    let ap_eff = effective_alpha_phi(params, consts);
    let m = params.mu * params.rho / at2;
    let mut n2 = 1.0 - ap_eff * ap_eff / at2 + m * m;
    if n2 < 0.0 {
        if -n2 > BOUNDARY_RTOL * (1.0 + m * m) {
            return Err(polar_error(params, consts, Constraint::PolarReal));
        }
        n2 = 0.0;
    }
    Ok(KiblerOrbitConstants {
        m,
        n: n2.sqrt(),
        alpha_phi_eff: ap_eff,
        ratio: consts.alpha_phi / consts.alpha_theta,
    })
}

impl KiblerOrbitConstants {
    pub fn cos_theta_of_psi(&self, psi: f64) -> f64 {
        (self.m + self.n * psi.cos()).clamp(-1.0, 1.0)
    }

    pub fn theta_of_psi(&self, psi: f64) -> f64 {
        self.cos_theta_of_psi(psi).acos()
    }

    /// `(θ1, θ2) = (arccos(M + N), arccos(M − N))`.
    pub fn theta_extrema(&self) -> (f64, f64) {
        (
            (self.m + self.n).clamp(-1.0, 1.0).acos(),
            (self.m - self.n).clamp(-1.0, 1.0).acos(),
        )
    }

    /// Weights and slopes `(c1, k1, c2, k2)` of the two arctangent terms.
    fn arctan_terms(&self) -> Result<(f64, f64, f64, f64)> {
        let (m, n) = (self.m, self.n);
        let upper = 1.0 - m - n;
        if upper <= 0.0 {
            return Err(Error::DegenerateOrbit(
                "(1 - M)^2 = N^2: the orbit reaches the polar axis",
            ));
        }
        let lower = 1.0 + m - n;
        // (1 ± M)² − N² = (1 ± M − N)(1 ± M + N)
        let c1 = 1.0 / (lower * (1.0 + m + n)).sqrt();
        let k1 = (lower / (1.0 + m + n)).sqrt();
        let c2 = 1.0 / (upper * (1.0 - m + n)).sqrt();
        let k2 = ((1.0 - m + n) / upper).sqrt();
        Ok((c1, k1, c2, k2))
    }

    /// Advance of φ while ψ advances by 2π.
    pub fn phi_period(&self) -> Result<f64> {
        let (c1, _, c2, _) = self.arctan_terms()?;
        Ok(PI * self.ratio * (c1 + c2))
    }

    /// φ(ψ), continuous and increasing, with φ(0) = 0.
    pub fn phi_of_psi(&self, psi: f64) -> Result<f64> {
        let (c1, k1, c2, k2) = self.arctan_terms()?;
        let cycles = (psi / TAU).round();
        let (sh, ch) = (0.5 * (psi - cycles * TAU)).sin_cos();
        let branch = c1 * (k1 * sh).atan2(ch) + c2 * (k2 * sh).atan2(ch);
        Ok(self.ratio * (cycles * PI * (c1 + c2) + branch))
    }

    /// `dφ/dψ = (α_φ/α_θ) / (1 − (M + N cos ψ)²)`.
    pub fn dphi_dpsi(&self, psi: f64) -> f64 {
        let u = self.m + self.n * psi.cos();
        self.ratio / (1.0 - u * u)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadricKind {
    Ellipsoid,
    HyperboloidTwoSheets,
    Paraboloid,
}

impl QuadricKind {
    pub fn name(self) -> &'static str {
        match self {
            QuadricKind::Ellipsoid => "ellipsoid",
            QuadricKind::HyperboloidTwoSheets => "hyperboloid of two sheets",
            QuadricKind::Paraboloid => "paraboloid",
        }
    }
}

/// Relative threshold on `(p² − q²)/p²` below which the surface is a paraboloid.
pub const PARABOLOID_RTOL: f64 = 1e-10;

/// The surface of revolution `p² (x² + y²) + (p² − q²) z² + 4 q r1 r2 z = 4 r1² r2²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadricSurface {
    pub p: f64,
    pub q: f64,
    pub r1: f64,
    pub r2: f64,
    pub kind: QuadricKind,
    /// The centre sits at `z = −z_shift`; absent for a paraboloid.
    pub z_shift: Option<f64>,
    /// Semi-axes in the xy-plane and along z (for an ellipsoid or hyperboloid).
    pub semi_axis_xy: Option<f64>,
    pub semi_axis_z: Option<f64>,
    /// ρ = 0: the orbit is planar and the quadric is merely one surface containing it.
    pub kepler_limit: bool,
}

/// Sign of `p² − q²`, with a relative dead band of [`PARABOLOID_RTOL`].
pub fn classify_quadric(p: f64, q: f64) -> QuadricKind {
    let disc = p * p - q * q;
    if disc.abs() <= PARABOLOID_RTOL * p * p {
        QuadricKind::Paraboloid
    } else if disc > 0.0 {
        QuadricKind::Ellipsoid
    } else {
        QuadricKind::HyperboloidTwoSheets
    }
}

pub fn quadric_surface(params: &PhysicalParams, consts: &SeparationConstants) -> Result<QuadricSurface> {
    let k = kibler_constants(params, consts)?;
    if k.n == 0.0 {
        return Err(Error::DegenerateOrbit(
            "N = 0: theta is constant and the orbit lies on a cone",
        ));
    }
    let radial = radial_turning_points(params, consts)?;
    let (r1, r2) = (radial.r1, radial.r2);
    let p = r1 + r2 - (r2 - r1) * k.m / k.n;
    let q = (r2 - r1) / k.n;
    let disc = p * p - q * q;
    let kind = classify_quadric(p, q);
    let (z_shift, semi_axis_xy, semi_axis_z) = match kind {
        QuadricKind::Paraboloid => (None, None, None),
        _ => (
            Some(2.0 * r1 * r2 * q / disc),
            Some(2.0 * r1 * r2 / disc.abs().sqrt()),
            Some(2.0 * p.abs() * r1 * r2 / disc.abs()),
        ),
    };
    Ok(QuadricSurface {
        p,
        q,
        r1,
        r2,
        kind,
        z_shift,
        semi_axis_xy,
        semi_axis_z,
        kepler_limit: params.rho == 0.0,
    })
}

impl QuadricSurface {
    /// Residual of `p r + q z − 2 r1 r2`, relative to `2 r1 r2`.
    pub fn relative_residual(&self, point: [f64; 3]) -> f64 {
        let [x, y, z] = point;
        let r = x.hypot(y).hypot(z);
        let target = 2.0 * self.r1 * self.r2;
        (self.p * r + self.q * z - target).abs() / target
    }

    /// Residual of the polynomial (pre-shift) form, relative to its largest term.
    pub fn polynomial_residual(&self, point: [f64; 3]) -> f64 {
        let [x, y, z] = point;
        let rr = self.r1 * self.r2;
        let terms = [
            self.p * self.p * (x * x + y * y),
            (self.p * self.p - self.q * self.q) * z * z,
            4.0 * self.q * rr * z,
            -4.0 * rr * rr,
        ];
        let scale = terms.iter().fold(0.0f64, |m, t| m.max(t.abs()));
        terms.iter().sum::<f64>().abs() / scale
    }
}

/// A fully constructed Kibler orbit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KiblerOrbit {
    pub radial: RadialOrbit,
    pub constants: KiblerOrbitConstants,
    pub energy_abs: f64,
}

impl KiblerOrbit {
    pub fn new(params: &PhysicalParams, consts: &SeparationConstants) -> Result<Self> {
        validate_kibler(params, consts).into_result()?;
        let constants = kibler_constants(params, consts)?;
        constants.arctan_terms()?;
        let radial = radial_turning_points(params, consts)?;
        Ok(Self {
            radial,
            constants,
            energy_abs: consts.energy_abs,
        })
    }

    pub fn sample_at(&self, psi: f64) -> OrbitSample {
        let theta = self.constants.theta_of_psi(psi);
        let phi = self
            .constants
            .phi_of_psi(psi)
            .expect("arctan terms checked at construction");
        let r = self.radial.r_of_psi_unchecked(psi);
        let t = self.radial.t_of_w(self.radial.w_of_psi_unchecked(psi));
        OrbitSample::from_spherical(t, r, theta, phi)
    }

    /// `n` samples evenly spaced in ψ over `[0, psi_max]`.
    pub fn sample(&self, psi_max: f64, n: usize) -> Result<Trajectory> {
        if n < 2 {
            return Err(Error::InvalidParameter {
                name: "n_samples",
                value: n as f64,
                reason: "need at least 2 samples",
            });
        }
        let samples = uniform_grid(psi_max, n).map(|psi| self.sample_at(psi)).collect();
        Ok(Trajectory {
            kind: PotentialKind::Kibler,
            energy_abs: self.energy_abs,
            samples,
        })
    }
}

pub fn sample_orbit_kibler(
    params: &PhysicalParams,
    consts: &SeparationConstants,
    psi_max: f64,
    n_samples: usize,
) -> Result<Trajectory> {
    KiblerOrbit::new(params, consts)?.sample(psi_max, n_samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{energy_along_orbit, integrate};
    use approx::assert_relative_eq;

    fn fig3a() -> (PhysicalParams, SeparationConstants) {
        (
            PhysicalParams::new(1.0, 20.0, 3.0, 0.0).unwrap(),
            SeparationConstants::new(3.0, 8.0, 5.0).unwrap(),
        )
    }

    fn fig4a() -> (PhysicalParams, SeparationConstants) {
        (
            PhysicalParams::new(1.0, 30.0, 20.0, 0.0).unwrap(),
            SeparationConstants::new(3.0, 10.0, 8.0).unwrap(),
        )
    }

    fn with_gamma() -> (PhysicalParams, SeparationConstants) {
        (
            PhysicalParams::new(1.0, 20.0, 3.0, 2.5).unwrap(),
            SeparationConstants::new(3.0, 8.0, 5.0).unwrap(),
        )
    }

    #[test]
    fn figure_three_constants() {
        let (p, c) = fig3a();
        let k = kibler_constants(&p, &c).unwrap();
        assert_eq!(k.m, 3.0 / 64.0);
        assert_relative_eq!(k.n, (1.0 - 25.0 / 64.0 + 9.0 / 4096.0f64).sqrt(), max_relative = 1e-15);
        assert_eq!(k.ratio, 5.0 / 8.0);
        let (t1, t2) = k.theta_extrema();
        assert!(0.0 < t1 && t1 < t2 && t2 < PI);
        assert_relative_eq!(k.theta_of_psi(0.0), t1, max_relative = 1e-14);
        assert_relative_eq!(k.theta_of_psi(PI), t2, max_relative = 1e-14);
    }

    #[test]
    fn phi_period_matches_the_closed_sum() {
        let (p, c) = fig3a();
        let k = kibler_constants(&p, &c).unwrap();
        let (m, n) = (k.m, k.n);
        let expected = PI * k.ratio
            * (1.0 / ((1.0 + m).powi(2) - n * n).sqrt() + 1.0 / ((1.0 - m).powi(2) - n * n).sqrt());
        assert_relative_eq!(k.phi_period().unwrap(), expected, max_relative = 1e-14);
        assert_relative_eq!(k.phi_of_psi(TAU).unwrap(), expected, max_relative = 1e-14);
        let quad = integrate(|s| k.dphi_dpsi(s), 0.0, TAU, 1e-13).unwrap().value;
        assert!((quad - expected).abs() < 1e-10);
    }

    #[test]
    fn kepler_limit_advances_phi_by_two_pi() {
        let p = PhysicalParams::new(1.0, 20.0, 0.0, 0.0).unwrap();
        let c = SeparationConstants::new(3.0, 8.0, 5.0).unwrap();
        let k = kibler_constants(&p, &c).unwrap();
        assert_relative_eq!(k.phi_period().unwrap(), TAU, max_relative = 1e-14);
    }

    #[test]
    fn phi_matches_quadrature() {
        for (p, c) in [fig3a(), fig4a(), with_gamma()] {
            let k = kibler_constants(&p, &c).unwrap();
            assert_eq!(k.phi_of_psi(0.0).unwrap(), 0.0);
            for i in 1..=60 {
                let psi = 6.0 * PI * i as f64 / 60.0;
                let quad = integrate(|s| k.dphi_dpsi(s), 0.0, psi, 1e-13).unwrap().value;
                let d = (k.phi_of_psi(psi).unwrap() - quad).abs();
                assert!(d < 1e-9, "psi={psi} diff={d}");
            }
        }
    }

    #[test]
    fn phi_slope_matches_the_orbit_integrand() {
        let (p, c) = fig4a();
        let k = kibler_constants(&p, &c).unwrap();
        let mut x = 0.42f64;
        for _ in 0..200 {
            x = (x * 5.17 + 0.331).fract();
            let psi = x * 6.0 * PI;
            let h = 1e-5;
            let fd = (k.phi_of_psi(psi + h).unwrap() - k.phi_of_psi(psi - h).unwrap()) / (2.0 * h);
            assert_relative_eq!(fd, k.dphi_dpsi(psi), max_relative = 1e-6);
        }
    }

    #[test]
    fn polar_range_violation_is_reported() {
        // μρ > α_θ²
        let p = PhysicalParams::new(1.0, 20.0, 70.0, 0.0).unwrap();
        let c = SeparationConstants::new(3.0, 8.0, 12.0).unwrap();
        assert!(matches!(
            kibler_constants(&p, &c),
            Err(Error::Unbound { constraint: Constraint::PolarRange, .. })
        ));
    }

    #[test]
    fn azimuthal_periodicity_violation_is_reported() {
        let p = PhysicalParams::new(1.0, 20.0, 20.0, 0.0).unwrap();
        let c = SeparationConstants::new(3.0, 8.0, 5.0).unwrap();
        assert!(matches!(
            kibler_constants(&p, &c),
            Err(Error::Unbound { constraint: Constraint::AzimuthalPeriodic, .. })
        ));
    }

    #[test]
    fn figure_surfaces_are_classified() {
        let (p, c) = fig3a();
        let s = quadric_surface(&p, &c).unwrap();
        let k = kibler_constants(&p, &c).unwrap();
        let r = radial_turning_points(&p, &c).unwrap();
        assert_relative_eq!(s.p, r.r1 + r.r2 - (r.r2 - r.r1) * k.m / k.n, max_relative = 1e-14);
        assert_relative_eq!(s.q, (r.r2 - r.r1) / k.n, max_relative = 1e-14);
        assert!(!s.kepler_limit);
        for (p, c) in [fig3a(), fig4a(), with_gamma()] {
            let s = quadric_surface(&p, &c).unwrap();
            let disc = s.p * s.p - s.q * s.q;
            let expected = if disc > 0.0 {
                QuadricKind::Ellipsoid
            } else {
                QuadricKind::HyperboloidTwoSheets
            };
            assert_eq!(s.kind, expected);
        }
    }

    #[test]
    fn ellipsoid_axes_describe_the_shifted_surface() {
        let (p, c) = fig3a();
        let s = quadric_surface(&p, &c).unwrap();
        if let (Some(zs), Some(axy), Some(az)) = (s.z_shift, s.semi_axis_xy, s.semi_axis_z) {
            // Points on the principal axes of the shifted surface satisfy the original equation.
            let sign = if s.kind == QuadricKind::Ellipsoid { 1.0 } else { -1.0 };
            assert!(s.polynomial_residual([0.0, 0.0, az - zs]) < 1e-12);
            assert!(s.polynomial_residual([0.0, 0.0, -az - zs]) < 1e-12);
            if sign > 0.0 {
                assert!(s.polynomial_residual([axy, 0.0, -zs]) < 1e-12);
            }
        } else {
            panic!("figure 3 surface is not a paraboloid");
        }
    }

    #[test]
    fn classification_dead_band() {
        assert_eq!(classify_quadric(3.0, 3.0), QuadricKind::Paraboloid);
        assert_eq!(classify_quadric(3.0, -3.0 * (1.0 + 1e-12)), QuadricKind::Paraboloid);
        assert_eq!(classify_quadric(3.0, 2.9), QuadricKind::Ellipsoid);
        assert_eq!(classify_quadric(-3.0, 3.1), QuadricKind::HyperboloidTwoSheets);
    }

    #[test]
    fn sampled_orbits_lie_on_the_quadric() {
        for (p, c) in [fig3a(), fig4a(), with_gamma()] {
            let orbit = KiblerOrbit::new(&p, &c).unwrap();
            let s = quadric_surface(&p, &c).unwrap();
            let (t1, t2) = orbit.constants.theta_extrema();
            let traj = orbit.sample(6.0 * PI, 2000).unwrap();
            for pt in &traj.samples {
                assert!(s.relative_residual([pt.x, pt.y, pt.z]) < 1e-9);
                assert!(s.polynomial_residual([pt.x, pt.y, pt.z]) < 1e-8);
                assert!(pt.theta >= t1 - 1e-12 && pt.theta <= t2 + 1e-12);
            }
            assert!(traj.samples.windows(2).all(|w| w[1].t > w[0].t && w[1].phi > w[0].phi));
        }
    }

    #[test]
    fn energy_is_conserved_along_sampled_orbits() {
        for (p, c) in [fig3a(), with_gamma()] {
            let orbit = KiblerOrbit::new(&p, &c).unwrap();
            let traj = orbit.sample(TAU, 4001).unwrap();
            let dev = energy_along_orbit(&p, &traj).unwrap();
            assert!(dev < 1e-5, "{dev}");
        }
    }

    #[test]
    fn orbit_reaching_the_axis_is_degenerate() {
        // α̃_φ² = 2μρ makes 1 − M = N.
        let p = PhysicalParams::new(1.0, 20.0, 2.0, 0.0).unwrap();
        let c = SeparationConstants::new(3.0, 8.0, 2.0).unwrap();
        let k = kibler_constants(&p, &c).unwrap();
        assert!(matches!(k.phi_of_psi(1.0), Err(Error::DegenerateOrbit(_))));
    }
}
