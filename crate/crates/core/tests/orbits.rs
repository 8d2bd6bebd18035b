mod common;

use noncentral::cotangent::{cone_geometry, cotangent_constants};
use noncentral::kibler::{kibler_constants, quadric_surface};
use noncentral::oracle::{energy_along_orbit, integrate};
use noncentral::{CotangentOrbit, KiblerOrbit, PhysicalParams, QuadricKind, SeparationConstants};
use std::f64::consts::{PI, TAU};

use common::*;

fn cotangent_sets() -> Vec<(PhysicalParams, SeparationConstants)> {
    let mut r = rng(21);
    let mut sets = vec![fig1a(), fig2a()];
    sets.extend((0..20).map(|i| random_cotangent(&mut r, i % 2 == 0)));
    sets
}

fn kibler_sets() -> Vec<(PhysicalParams, SeparationConstants)> {
    let mut r = rng(22);
    let mut sets = vec![fig3a(), fig4a()];
    sets.extend((0..20).map(|i| random_kibler(&mut r, i % 2 == 0)));
    sets
}

/// `∫₀^b f` accumulated panel by panel over `[0, 6π]`.
fn running_integrals(f: impl Fn(f64) -> f64, panels: usize) -> Vec<(f64, f64)> {
    let mut acc = 0.0;
    let mut out = Vec::with_capacity(panels);
    for i in 0..panels {
        let (a, b) = (6.0 * PI * i as f64 / panels as f64, 6.0 * PI * (i + 1) as f64 / panels as f64);
        acc += integrate(&f, a, b, 1e-14).unwrap().value;
        out.push((b, acc));
    }
    out
}

#[test]
fn psi_of_phi_matches_quadrature_of_the_orbit_equation() {
    for (p, c) in cotangent_sets() {
        let k = cotangent_constants(&p, &c).unwrap();
        // the bare α_φ sets the azimuthal rate; γ only reshapes θ
        let ratio = c.alpha_theta / c.alpha_phi;
        let dpsi = |phi: f64| ratio * k.theta_of_phi(phi).sin().powi(2);
        for (phi, quad) in running_integrals(dpsi, 48) {
            let d = (k.psi_of_phi(phi) - quad).abs();
            assert!(d < 1e-9, "{p:?} {c:?} phi={phi} diff={d:e}");
            assert!((k.phi_of_psi(quad).unwrap() - phi).abs() < 1e-9);
        }
    }
}

#[test]
fn phi_of_psi_matches_quadrature_of_the_orbit_equation() {
    for (p, c) in kibler_sets() {
        let k = kibler_constants(&p, &c).unwrap();
        let ratio = c.alpha_phi / c.alpha_theta;
        let dphi = |psi: f64| ratio / k.theta_of_psi(psi).sin().powi(2);
        for (psi, quad) in running_integrals(dphi, 48) {
            let d = (k.phi_of_psi(psi).unwrap() - quad).abs();
            assert!(d < 1e-9, "{p:?} {c:?} psi={psi} diff={d:e}");
        }
    }
}

#[test]
fn cotangent_orbits_stay_on_their_cone() {
    let mut r = rng(23);
    let mut sets = vec![fig1a()];
    sets.extend((0..20).map(|_| random_cotangent(&mut r, false)));
    for (p, c) in sets {
        let orbit = CotangentOrbit::new(&p, &c).unwrap();
        let cone = cone_geometry(&p, &c).unwrap();
        let traj = orbit.sample(6.0 * PI, 3000).unwrap();
        for s in &traj.samples {
            let res = cone.relative_residual([s.x, s.y, s.z]);
            assert!(res < 1e-8, "{p:?} {c:?}: {res:e}");
        }
    }
}

#[test]
fn kibler_orbits_stay_on_their_quadric() {
    for (p, c) in kibler_sets() {
        let orbit = KiblerOrbit::new(&p, &c).unwrap();
        let surface = quadric_surface(&p, &c).unwrap();
        let traj = orbit.sample(6.0 * PI, 3000).unwrap();
        for s in &traj.samples {
            let res = surface.relative_residual([s.x, s.y, s.z]);
            assert!(res < 1e-9, "{p:?} {c:?}: {res:e}");
        }
    }
    assert_eq!(quadric_surface(&fig3a().0, &fig3a().1).unwrap().kind, QuadricKind::Ellipsoid);
    assert_eq!(quadric_surface(&fig4a().0, &fig4a().1).unwrap().kind, QuadricKind::HyperboloidTwoSheets);
}

#[test]
fn energy_is_conserved_over_one_radial_period() {
    for (p, c) in [fig1a(), fig2a()] {
        let orbit = CotangentOrbit::new(&p, &c).unwrap();
        let traj = orbit.sample(orbit.phi_for_radial_cycles(1.0).unwrap(), 4000).unwrap();
        let dev = energy_along_orbit(&p, &traj).unwrap();
        assert!(dev < 1e-5, "{dev:e}");
    }
    for (p, c) in [fig3a(), fig4a()] {
        let traj = KiblerOrbit::new(&p, &c).unwrap().sample(TAU, 4000).unwrap();
        let dev = energy_along_orbit(&p, &traj).unwrap();
        assert!(dev < 1e-5, "{dev:e}");
    }
}

#[test]
fn cone_angles_follow_from_the_polar_extrema() {
    let mut r = rng(24);
    for _ in 0..50 {
        let (p, c) = random_cotangent(&mut r, false);
        let cone = cone_geometry(&p, &c).unwrap();
        let (t1, t2) = cotangent_constants(&p, &c).unwrap().theta_extrema();
        assert!((cone.theta_c - 0.5 * (t2 - t1)).abs() < 1e-12);
        assert!((cone.theta_xz - 0.5 * (t2 + t1)).abs() < 1e-12);
    }
}

#[test]
fn kepler_limit_is_symmetric_about_the_equator() {
    let mut r = rng(25);
    for _ in 0..20 {
        let (p, c) = random_cotangent(&mut r, false);
        let p0 = PhysicalParams::new(p.mu, p.kappa, 0.0, 0.0).unwrap();
        let c0 = SeparationConstants::new(c.energy_abs, c.alpha_theta, c.alpha_phi.min(0.99 * c.alpha_theta)).unwrap();
        let (t1, t2) = cotangent_constants(&p0, &c0).unwrap().theta_extrema();
        assert!((t1 + t2 - PI).abs() < 1e-12);
        let (k1, k2) = kibler_constants(&p0, &c0).unwrap().theta_extrema();
        assert!((k1 + k2 - PI).abs() < 1e-12);
    }
}
