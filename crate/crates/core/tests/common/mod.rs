#![allow(dead_code)]

use noncentral::{PhysicalParams, SeparationConstants};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn fig1a() -> (PhysicalParams, SeparationConstants) {
    (
        PhysicalParams::new(1.0, 20.0, 10.0, 0.0).unwrap(),
        SeparationConstants::new(3.0, 3.0, 2.0).unwrap(),
    )
}

pub fn fig2a() -> (PhysicalParams, SeparationConstants) {
    (
        PhysicalParams::new(1.0, 10.0, 20.0, 4.0).unwrap(),
        SeparationConstants::new(3.0, 3.0, 2.0).unwrap(),
    )
}

pub fn fig3a() -> (PhysicalParams, SeparationConstants) {
    (
        PhysicalParams::new(1.0, 20.0, 3.0, 0.0).unwrap(),
        SeparationConstants::new(3.0, 8.0, 5.0).unwrap(),
    )
}

pub fn fig4a() -> (PhysicalParams, SeparationConstants) {
    (
        PhysicalParams::new(1.0, 30.0, 20.0, 0.0).unwrap(),
        SeparationConstants::new(3.0, 10.0, 8.0).unwrap(),
    )
}

/// A bound, non-degenerate cotangent parameter set.
pub fn random_cotangent(rng: &mut StdRng, with_gamma: bool) -> (PhysicalParams, SeparationConstants) {
    loop {
        let mu = rng.gen_range(0.5..2.0);
        let kappa = rng.gen_range(5.0..30.0);
        let eabs = rng.gen_range(0.5..5.0);
        let rho = rng.gen_range(0.0..20.0);
        let gamma = if with_gamma { rng.gen_range(0.1..5.0) } else { 0.0 };
        let at2 = rng.gen_range(0.05..0.95) * kappa * kappa * mu / (2.0 * eabs);
        let s = (at2 * at2 + 4.0f64 * mu * mu * rho * rho).sqrt();
        let ap_eff2 = rng.gen_range(0.05..0.95) * 0.5 * (s + at2);
        let ap2 = ap_eff2 - 2.0 * mu * gamma;
        if ap2 <= 0.05 {
            continue;
        }
        return (
            PhysicalParams::new(mu, kappa, rho, gamma).unwrap(),
            SeparationConstants::new(eabs, at2.sqrt(), ap2.sqrt()).unwrap(),
        );
    }
}

/// A bound Kibler parameter set whose orbit stays clear of the polar axis.
pub fn random_kibler(rng: &mut StdRng, with_gamma: bool) -> (PhysicalParams, SeparationConstants) {
    loop {
        let mu = rng.gen_range(0.5..2.0);
        let kappa = rng.gen_range(5.0..30.0);
        let eabs = rng.gen_range(0.5..5.0);
        let gamma = if with_gamma { rng.gen_range(0.1..5.0) } else { 0.0 };
        let at2 = rng.gen_range(0.05..0.95) * kappa * kappa * mu / (2.0 * eabs);
        let rho = rng.gen_range(0.0..0.9) * at2 / mu;
        let lo = 2.0 * mu * rho;
        let hi = at2 + mu * mu * rho * rho / at2;
        let ap_eff2 = lo + rng.gen_range(0.05..0.95) * (hi - lo);
        let ap2 = ap_eff2 - 2.0 * mu * gamma;
        if ap2 <= 0.05 {
            continue;
        }
        return (
            PhysicalParams::new(mu, kappa, rho, gamma).unwrap(),
            SeparationConstants::new(eabs, at2.sqrt(), ap2.sqrt()).unwrap(),
        );
    }
}
