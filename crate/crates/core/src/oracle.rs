//! Independent numerical machinery used to check every closed form:
//! adaptive Gauss-Kronrod quadrature (with a cosine substitution that removes
//! inverse-square-root turning-point singularities), a safeguarded monotone
//! inverse, energy reconstruction along sampled orbits, and finite-difference
//! ODE residuals.
//!
//! Nothing in here knows about the closed-form solutions it is used to check.

use std::collections::BinaryHeap;
use std::cmp::Ordering;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::{PhysicalParams, PotentialKind, SeparationConstants};
use crate::trajectory::Trajectory;

// 15-point Kronrod abscissae and weights, with the embedded 7-point Gauss weights.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_PANELS: usize = 20_000;

/// A quadrature result with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let sum = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * sum;
        if j % 2 == 1 {
            gauss += WG[j / 2] * sum;
        }
    }
    Panel {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

/// Globally adaptive G7-K15 quadrature of `f` over `[a, b]` to absolute tolerance `tol`.
///
/// A panel whose bisection fails to reduce the error estimate is treated as
/// round-off limited: it is kept but no longer refined, and its error does not
/// count towards `tol` (it is still included in the returned `error`).
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<Estimate> {
    if a == b {
        return Ok(Estimate { value: 0.0, error: 0.0 });
    }
    let initial = 8;
    let width = (b - a) / initial as f64;
    let mut heap: BinaryHeap<Panel> = (0..initial)
        .map(|i| {
            let lo = a + i as f64 * width;
            let hi = if i + 1 == initial { b } else { lo + width };
            gauss_kronrod(&f, lo, hi)
        })
        .collect();
    let (mut value, mut error) = heap
        .iter()
        .fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error));
    let mut noise = 0.0;
    let mut panels = initial;

    loop {
        if !value.is_finite() {
            return Err(Error::OracleNonConvergence { achieved: f64::INFINITY, tol });
        }
        // Below ~100 ulp of the result the K15-G7 difference is pure round-off.
        let floor = 100.0 * f64::EPSILON * value.abs();
        if error <= tol || error <= floor || heap.is_empty() {
            return Ok(Estimate { value, error: error + noise });
        }
        if panels >= MAX_PANELS {
            return Err(Error::OracleNonConvergence { achieved: error, tol });
        }
        let worst = heap.pop().expect("checked non-empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            return Err(Error::OracleNonConvergence { achieved: error, tol });
        }
        let left = gauss_kronrod(&f, worst.a, mid);
        let right = gauss_kronrod(&f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error -= worst.error;
        panels += 1;
        let split_error = left.error + right.error;
        let shift = (left.value + right.value - worst.value).abs();
        // Round-off signature: refinement moves the value far less than the
        // estimate claims and the estimate does not shrink.
        if split_error >= worst.error && shift <= 1e-5 * split_error {
            noise += split_error;
        } else {
            error += split_error;
            heap.push(left);
            heap.push(right);
        }
        error = error.max(0.0);
    }
}

/// An integral over a libration between turning points `lower < upper`, where the
/// integrand may behave like `(x - a)^{±1/2}` at both ends.
pub struct TurningPointIntegral<F: Fn(f64) -> f64> {
    pub integrand: F,
    pub lower: f64,
    pub upper: f64,
}

impl<F: Fn(f64) -> f64> TurningPointIntegral<F> {
    pub fn new(integrand: F, lower: f64, upper: f64) -> Self {
        Self {
            integrand,
            lower,
            upper,
        }
    }
}

/// Integrates across a libration using `x = ½(a+b) − ½(b−a) cos τ`, `τ ∈ [0, π]`.
///
/// The Jacobian `½(b−a) sin τ` cancels an inverse square root at either end and
/// turns a square-root zero into a smooth function of τ.
pub fn integrate_turning_point<F: Fn(f64) -> f64>(
    integral: &TurningPointIntegral<F>,
    tol: f64,
) -> Result<Estimate> {
    let (a, b) = (integral.lower, integral.upper);
    if !(a < b) {
        return Err(Error::InvalidParameter {
            name: "turning points",
            value: b - a,
            reason: "require lower < upper",
        });
    }
    let half = 0.5 * (b - a);
    integrate(
        |tau: f64| {
            // Measure from the nearer end so x − a and b − x keep full relative precision.
            let x = if tau <= 0.5 * PI {
                a + 2.0 * half * (0.5 * tau).sin().powi(2)
            } else {
                b - 2.0 * half * (0.5 * tau).cos().powi(2)
            };
            if x <= a || x >= b {
                // The substituted integrand is bounded; a single node landing on an end is negligible.
                return 0.0;
            }
            // half·sin τ re-evaluated at the rounded x, so the Jacobian cancels the
            // integrand's end behaviour exactly rather than to within rounding of x.
            (integral.integrand)(x) * ((x - a) * (b - x)).sqrt()
        },
        0.0,
        PI,
        tol,
    )
}

/// Solves `f(x) = target` for `f` continuous and monotone on `bracket`.
///
/// Illinois-modified regula falsi with a bisection step whenever the secant
/// stalls; stops once `|f(x) − target| < 1e-12 · max(1, |target|)` or the
/// bracket collapses to adjacent floats.
pub fn invert_monotone<F: Fn(f64) -> f64>(f: F, target: f64, bracket: (f64, f64)) -> Result<f64> {
    let (mut lo, mut hi) = bracket;
    let mut g_lo = f(lo) - target;
    let mut g_hi = f(hi) - target;
    let tol = 1e-12 * target.abs().max(1.0);
    if g_lo.abs() < tol {
        return Ok(lo);
    }
    if g_hi.abs() < tol {
        return Ok(hi);
    }
    if g_lo.signum() == g_hi.signum() {
        return Err(Error::BracketViolation {
            target,
            f_lo: g_lo + target,
            f_hi: g_hi + target,
        });
    }
    let mut side = 0i8;
    for iter in 0..400 {
        let width = hi - lo;
        let mut x = lo - g_lo * width / (g_hi - g_lo);
        if iter % 4 == 3 || !(x > lo && x < hi) {
            x = 0.5 * (lo + hi);
        }
        let g = f(x) - target;
        if g.abs() < tol || x <= lo || x >= hi {
            return Ok(x);
        }
        if g.signum() == g_lo.signum() {
            lo = x;
            g_lo = g;
            if side == -1 {
                g_hi *= 0.5;
            }
            side = -1;
        } else {
            hi = x;
            g_hi = g;
            if side == 1 {
                g_lo *= 0.5;
            }
            side = 1;
        }
        if hi - lo <= 4.0 * f64::EPSILON * lo.abs().max(hi.abs()) {
            return Ok(0.5 * (lo + hi));
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Finite-difference weights for derivatives `0..=order` at `z` on arbitrary nodes (Fornberg).
///
/// Returns `w[k][j]`, the weight of node `j` in the `k`-th derivative.
pub fn fd_weights(z: f64, nodes: &[f64], order: usize) -> Vec<Vec<f64>> {
    let n = nodes.len();
    let mut c = vec![vec![0.0; n]; order + 1];
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - z;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - z;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

/// Maximum relative deviation of the reconstructed total energy from `-|ε|`.
///
/// Cartesian velocities are taken from seven-point finite differences in `t`
/// on the (non-uniform) sample times, or five-point ones for very short
/// trajectories; samples too close to either end for a centred stencil are skipped.
pub fn energy_along_orbit(params: &PhysicalParams, traj: &Trajectory) -> Result<f64> {
    const MIN: usize = 5;
    let s = &traj.samples;
    if s.len() < MIN {
        return Err(Error::TrajectoryTooShort { len: s.len(), min: MIN });
    }
    let half = if s.len() >= 7 { 3 } else { 2 };
    let mut worst: f64 = 0.0;
    for i in half..s.len() - half {
        let window = &s[i - half..=i + half];
        let times: Vec<f64> = window.iter().map(|p| p.t).collect();
        let w = &fd_weights(s[i].t, &times, 1)[1];
        let d = |coord: fn(&crate::trajectory::OrbitSample) -> f64| -> f64 {
            window.iter().zip(w).map(|(p, wj)| coord(p) * wj).sum()
        };
        let vx = d(|p| p.x);
        let vy = d(|p| p.y);
        let vz = d(|p| p.z);
        let kinetic = 0.5 * params.mu * (vx * vx + vy * vy + vz * vz);
        let energy = kinetic + params.potential(traj.kind, s[i].r, s[i].theta);
        worst = worst.max((energy + traj.energy_abs).abs() / traj.energy_abs);
    }
    Ok(worst)
}

/// Bracketing interval `(a, b)` of the positive region of `f` on `(lo, hi)`.
///
/// `f` must be negative at both ends with a single hump in between; the hump
/// is located on a uniform scan and each edge refined by [`invert_monotone`].
pub fn libration_interval<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> Result<(f64, f64)> {
    const SCAN: usize = 4000;
    let step = (hi - lo) / SCAN as f64;
    let (peak, fmax) = (0..=SCAN)
        .map(|i| lo + i as f64 * step)
        .map(|x| (x, f(x)))
        .fold((lo, f64::NEG_INFINITY), |best, cur| if cur.1 > best.1 { cur } else { best });
    if !(fmax > 0.0) {
        return Err(Error::DegenerateOrbit("no classically allowed region"));
    }
    if !(f(lo) < 0.0 && f(hi) < 0.0) {
        return Err(Error::BracketViolation {
            target: 0.0,
            f_lo: f(lo),
            f_hi: f(hi),
        });
    }
    let a = invert_monotone(&f, 0.0, (lo, peak))?;
    let b = invert_monotone(&f, 0.0, (peak, hi))?;
    Ok((a, b))
}

/// `J_r = (1/π) ∫ sqrt(2μ(κ/r − |ε|) − α_θ²/r²) dr` between the radial turning points.
pub fn radial_action_quadrature(
    params: &PhysicalParams,
    consts: &SeparationConstants,
    tol: f64,
) -> Result<Estimate> {
    if consts.alpha_theta <= 0.0 {
        return Err(Error::DegenerateOrbit("alpha_theta = 0: r1 = 0"));
    }
    let (mu, kappa) = (params.mu, params.kappa);
    let at2 = consts.alpha_theta * consts.alpha_theta;
    let f = move |r: f64| 2.0 * mu * (kappa / r - consts.energy_abs) - at2 / (r * r);
    let hi = kappa / consts.energy_abs;
    let mut lo = hi * 1e-3;
    while f(lo) >= 0.0 {
        lo *= 1e-3;
    }
    let (a, b) = libration_interval(f, lo, hi)?;
    let est = integrate_turning_point(
        &TurningPointIntegral::new(|r| f(r).max(0.0).sqrt(), a, b),
        tol * PI,
    )?;
    Ok(Estimate {
        value: est.value / PI,
        error: est.error / PI,
    })
}

/// `J_θ = (1/π) ∫ sqrt(α_θ² − 2μ V_θ(θ) − α_φ²/sin²θ) dθ` between the polar turning
/// points, where `V_θ` is the angular part of the potential (times r²).
pub fn polar_action_quadrature(
    kind: PotentialKind,
    params: &PhysicalParams,
    consts: &SeparationConstants,
    tol: f64,
) -> Result<Estimate> {
    let p = *params;
    let at2 = consts.alpha_theta * consts.alpha_theta;
    let ap2 = consts.alpha_phi * consts.alpha_phi;
    let f = move |theta: f64| {
        let s = theta.sin();
        let angular = p.potential(kind, 1.0, theta) + p.kappa;
        at2 - 2.0 * p.mu * angular - ap2 / (s * s)
    };
    let edge = 1e-9;
    let (a, b) = libration_interval(f, edge, PI - edge)?;
    let est = integrate_turning_point(
        &TurningPointIntegral::new(|t| f(t).max(0.0).sqrt(), a, b),
        tol * PI,
    )?;
    Ok(Estimate {
        value: est.value / PI,
        error: est.error / PI,
    })
}

/// Coefficients of a linear second-order ODE `p2(x) y'' + p1(x) y' + p0(x) y = 0`.
pub struct LinearOde2<'a> {
    pub p2: &'a dyn Fn(f64) -> f64,
    pub p1: &'a dyn Fn(f64) -> f64,
    pub p0: &'a dyn Fn(f64) -> f64,
}

fn central_derivatives<F: Fn(f64) -> f64>(y: &F, x: f64, h: f64) -> (f64, f64) {
    let (ym2, ym1, y0, yp1, yp2) = (y(x - 2.0 * h), y(x - h), y(x), y(x + h), y(x + 2.0 * h));
    let d1 = (ym2 - 8.0 * ym1 + 8.0 * yp1 - yp2) / (12.0 * h);
    let d2 = (-ym2 + 16.0 * ym1 - 30.0 * y0 + 16.0 * yp1 - yp2) / (12.0 * h * h);
    (d1, d2)
}

/// First and second derivatives from fourth-order central differences with two
/// Richardson step-halvings, leaving an `O(h⁸)` truncation error.
pub fn derivatives<F: Fn(f64) -> f64>(y: &F, x: f64, h: f64) -> (f64, f64) {
    let a = central_derivatives(y, x, h);
    let b = central_derivatives(y, x, 0.5 * h);
    let c = central_derivatives(y, x, 0.25 * h);
    let ab = ((16.0 * b.0 - a.0) / 15.0, (16.0 * b.1 - a.1) / 15.0);
    let bc = ((16.0 * c.0 - b.0) / 15.0, (16.0 * c.1 - b.1) / 15.0);
    ((64.0 * bc.0 - ab.0) / 63.0, (64.0 * bc.1 - ab.1) / 63.0)
}

/// Largest residual of `ode` applied to `y` over `grid`, each scaled by the
/// largest magnitude among the three individual terms at that point.
pub fn ode_residual<F: Fn(f64) -> f64>(ode: &LinearOde2<'_>, y: F, grid: &[f64], h: f64) -> f64 {
    ode_residual_with_step(ode, y, grid, |_| h)
}

/// As [`ode_residual`], with a point-dependent difference step. Near a regular
/// singular point the step should shrink with the distance to it.
pub fn ode_residual_with_step<F, S>(ode: &LinearOde2<'_>, y: F, grid: &[f64], step: S) -> f64
where
    F: Fn(f64) -> f64,
    S: Fn(f64) -> f64,
{
    grid.iter()
        .map(|&x| {
            let (d1, d2) = derivatives(&y, x, step(x));
            let terms = [(ode.p2)(x) * d2, (ode.p1)(x) * d1, (ode.p0)(x) * y(x)];
            let scale = terms.iter().fold(0.0f64, |m, t| m.max(t.abs()));
            if scale == 0.0 {
                0.0
            } else {
                terms.iter().sum::<f64>().abs() / scale
            }
        })
        .fold(0.0, f64::max)
}
