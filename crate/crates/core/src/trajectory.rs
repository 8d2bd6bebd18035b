use crate::model::PotentialKind;

/// One point of a sampled orbit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitSample {
    pub t: f64,
    pub r: f64,
    pub theta: f64,
    pub phi: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl OrbitSample {
    pub fn from_spherical(t: f64, r: f64, theta: f64, phi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Self {
            t,
            r,
            theta,
            phi,
            x: r * st * cp,
            y: r * st * sp,
            z: r * ct,
        }
    }
}

/// An ordered sequence of orbit samples, together with the orbit's energy.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub kind: PotentialKind,
    pub energy_abs: f64,
    pub samples: Vec<OrbitSample>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// The same orbit traversed with the opposite sign of `α_φ` (φ → -φ).
    pub fn reversed(&self) -> Self {
        let samples = self
            .samples
            .iter()
            .map(|s| OrbitSample {
                phi: -s.phi,
                y: -s.y,
                ..*s
            })
            .collect();
        Self {
            kind: self.kind,
            energy_abs: self.energy_abs,
            samples,
        }
    }

    /// Largest `|coordinate|` over all samples, used to scale plots.
    pub fn extent(&self) -> f64 {
        self.samples
            .iter()
            .map(|s| s.x.abs().max(s.y.abs()).max(s.z.abs()))
            .fold(0.0, f64::max)
    }
}

/// Evenly spaced grid of `n` points on `[0, max]`; `n = 1` gives `[0]`.
pub(crate) fn uniform_grid(max: f64, n: usize) -> impl Iterator<Item = f64> {
    let step = if n > 1 { max / (n - 1) as f64 } else { 0.0 };
    (0..n).map(move |i| if i + 1 == n && n > 1 { max } else { i as f64 * step })
}
