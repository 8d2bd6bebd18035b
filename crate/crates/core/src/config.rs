//! Plain-text parameter files: one `key = value` pair per line.
//!
//! ```text
//! # fig. 1(a)
//! potential   = cotangent
//! mu          = 1
//! kappa       = 20
//! rho         = 10
//! gamma       = 0
//! energy_abs  = 3
//! alpha_theta = 3
//! alpha_phi   = 2
//! ```
//!
//! `#` starts a comment. `rho` and `gamma` default to 0, `hbar` to 1.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::model::{PhysicalParams, PotentialKind, SeparationConstants};

pub const NUMERIC_KEYS: [&str; 8] = [
    "mu",
    "kappa",
    "rho",
    "gamma",
    "hbar",
    "energy_abs",
    "alpha_theta",
    "alpha_phi",
];

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParamFile {
    values: BTreeMap<String, f64>,
    potential: Option<PotentialKind>,
}

impl ParamFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = ParamFile::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected `key = value`, got `{line}`", idx + 1))
            })?;
            let key = key.trim();
            let value = value.trim();
            if key == "potential" {
                out.potential = Some(value.parse()?);
                continue;
            }
            if !NUMERIC_KEYS.contains(&key) {
                return Err(Error::Config(format!("line {}: unknown key `{key}`", idx + 1)));
            }
            let v: f64 = value.parse().map_err(|_| {
                Error::Config(format!("line {}: `{value}` is not a number", idx + 1))
            })?;
            if out.values.insert(key.to_string(), v).is_some() {
                return Err(Error::Config(format!("line {}: duplicate key `{key}`", idx + 1)));
            }
        }
        Ok(out)
    }

    pub fn get(&self, key: &str) -> Option<f64> {
        self.values.get(key).copied()
    }

    /// Overrides (or adds) a numeric value.
    pub fn set(&mut self, key: &str, value: f64) -> Result<()> {
        if !NUMERIC_KEYS.contains(&key) {
            return Err(Error::Config(format!("unknown key `{key}`")));
        }
        self.values.insert(key.to_string(), value);
        Ok(())
    }

    pub fn potential(&self) -> Option<PotentialKind> {
        self.potential
    }

    pub fn set_potential(&mut self, kind: PotentialKind) {
        self.potential = Some(kind);
    }

    fn require(&self, key: &str) -> Result<f64> {
        self.get(key)
            .ok_or_else(|| Error::Config(format!("missing required key `{key}`")))
    }

    pub fn physical_params(&self) -> Result<PhysicalParams> {
        PhysicalParams::with_hbar(
            self.require("mu")?,
            self.require("kappa")?,
            self.get("rho").unwrap_or(0.0),
            self.get("gamma").unwrap_or(0.0),
            self.get("hbar").unwrap_or(1.0),
        )
    }

    pub fn separation_constants(&self) -> Result<SeparationConstants> {
        SeparationConstants::new(
            self.require("energy_abs")?,
            self.require("alpha_theta")?,
            self.require("alpha_phi")?,
        )
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if let Some(p) = self.potential {
            let _ = writeln!(s, "potential = {p}");
        }
        for key in NUMERIC_KEYS {
            if let Some(v) = self.get(key) {
                let _ = writeln!(s, "{key} = {v}");
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIG1: &str = "# fig 1(a)\npotential = cotangent\nmu = 1\nkappa = 20\nrho = 10 # dipole\n\nenergy_abs = 3\nalpha_theta = 3\nalpha_phi = 2\n";

    #[test]
    fn parses_a_figure_config() {
        let f = ParamFile::parse(FIG1).unwrap();
        assert_eq!(f.potential(), Some(PotentialKind::Cotangent));
        let p = f.physical_params().unwrap();
        assert_eq!((p.mu, p.kappa, p.rho, p.gamma, p.hbar), (1.0, 20.0, 10.0, 0.0, 1.0));
        let c = f.separation_constants().unwrap();
        assert_eq!((c.energy_abs, c.alpha_theta, c.alpha_phi), (3.0, 3.0, 2.0));
    }

    #[test]
    fn missing_kappa_is_an_error() {
        let f = ParamFile::parse("mu = 1\nenergy_abs = 3\n").unwrap();
        let e = f.physical_params().unwrap_err();
        assert!(e.to_string().contains("kappa"), "{e}");
    }

    #[test]
    fn malformed_lines_are_rejected() {
        assert!(ParamFile::parse("mu 1").is_err());
        assert!(ParamFile::parse("mu = one").is_err());
        assert!(ParamFile::parse("nu = 1").is_err());
        assert!(ParamFile::parse("mu = 1\nmu = 2").is_err());
        assert!(ParamFile::parse("potential = harmonic").is_err());
    }

    #[test]
    fn text_round_trip() {
        let f = ParamFile::parse(FIG1).unwrap();
        assert_eq!(ParamFile::parse(&f.to_text()).unwrap(), f);
    }
}
