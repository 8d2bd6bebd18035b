//! Dense univariate polynomials over any field-like scalar, and the three
//! classical families the bound states need.
//!
//! Everything is generic so tests can build the same polynomials in exact
//! rational arithmetic and compare coefficient by coefficient.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{FromPrimitive, Num};

pub trait Scalar: Num + Neg<Output = Self> + FromPrimitive + Clone + Debug + PartialEq {}

impl<T> Scalar for T where T: Num + Neg<Output = T> + FromPrimitive + Clone + Debug + PartialEq {}

fn int<T: Scalar>(k: usize) -> T {
    T::from_usize(k).expect("small integers are representable")
}

/// Coefficients in ascending degree, with no trailing zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `a + b x`
    pub fn linear(a: T, b: T) -> Self {
        Self::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * int(k))
                .collect(),
        )
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn pow(&self, n: usize) -> Self {
        (0..n).fold(Self::constant(T::one()), |acc, _| &acc * self)
    }
}

impl<T: Scalar> Add for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn add(self, rhs: Self) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new(
            (0..n)
                .map(|k| {
                    let a = self.coeffs.get(k).cloned().unwrap_or_else(T::zero);
                    let b = rhs.coeffs.get(k).cloned().unwrap_or_else(T::zero);
                    a + b
                })
                .collect(),
        )
    }
}

impl<T: Scalar> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn neg(self) -> Polynomial<T> {
        Polynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: Scalar> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn sub(self, rhs: Self) -> Polynomial<T> {
        self + &(-rhs)
    }
}

impl<T: Scalar> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn mul(self, rhs: Self) -> Polynomial<T> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }
}

/// Associated Laguerre polynomial `L_n^a` by the three-term recurrence
/// `(k+1) L_{k+1} = (2k + 1 + a − x) L_k − (k + a) L_{k−1}`; `a` need not be an integer.
pub fn laguerre<T: Scalar>(n: usize, a: T) -> Polynomial<T> {
    let mut prev = Polynomial::zero();
    let mut cur = Polynomial::constant(T::one());
    for k in 0..n {
        let lin = Polynomial::linear(int::<T>(2 * k + 1) + a.clone(), -T::one());
        let next = &(&lin * &cur) - &prev.scale(&(int::<T>(k) + a.clone()));
        prev = cur;
        cur = next.scale(&(T::one() / int(k + 1)));
    }
    cur
}

/// Value of `L_n^a(x)` straight from the recurrence, without forming coefficients.
/// Far better conditioned than Horner on the expanded form once `x` passes the roots.
pub fn laguerre_value(n: usize, a: f64, x: f64) -> f64 {
    let (mut prev, mut cur) = (0.0, 1.0);
    for k in 0..n {
        let next = ((2 * k + 1) as f64 + a - x) * cur - (k as f64 + a) * prev;
        prev = cur;
        cur = next / (k + 1) as f64;
    }
    cur
}

/// Generalised binomial coefficient `C(z, k)` for any scalar `z`.
fn binomial<T: Scalar>(z: T, k: usize) -> T {
    (0..k).fold(T::one(), |acc, i| {
        acc * (z.clone() - int(i)) / int(i + 1)
    })
}

/// Jacobi polynomial `P_n^{(α, β)}` from the Leibniz expansion of its Rodrigues formula:
/// `Σ_s C(n+α, n−s) C(n+β, s) ((v−1)/2)^s ((v+1)/2)^{n−s}`.
pub fn jacobi<T: Scalar>(n: usize, alpha: T, beta: T) -> Polynomial<T> {
    let half = T::one() / int(2);
    let minus = Polynomial::linear(-half.clone(), half.clone());
    let plus = Polynomial::linear(half.clone(), half);
    let mut out = Polynomial::zero();
    for s in 0..=n {
        let c = binomial(int::<T>(n) + alpha.clone(), n - s) * binomial(int::<T>(n) + beta.clone(), s);
        let term = &minus.pow(s) * &plus.pow(n - s);
        out = &out + &term.scale(&c);
    }
    out
}

/// Romanovski polynomial `R_n^{(α, β)}` with weight `(1+u²)^{β−1} e^{−α arccot u}`.
///
/// Rodrigues: `R_n = W⁻¹ dⁿ/duⁿ [W (1+u²)ⁿ] / (2ⁿ n!)`. Writing each intermediate
/// derivative as `(1+u²)^{β−1+m−1} e^{−α arccot u} p(u)` with `m` the remaining
/// exponent gives the step `p ← (1+u²) p′ + (2(β−1+m) u + α) p`.
pub fn romanovski<T: Scalar>(n: usize, alpha: T, beta: T) -> Polynomial<T> {
    let one_plus_u2 = Polynomial::new(vec![T::one(), T::zero(), T::one()]);
    let mut p = Polynomial::constant(T::one());
    for k in 0..n {
        let m = n - k;
        let two = int::<T>(2);
        let lin = Polynomial::linear(alpha.clone(), two * (beta.clone() - T::one() + int(m)));
        p = &(&one_plus_u2 * &p.derivative()) + &(&lin * &p);
    }
    let norm = (1..=n).fold(T::one(), |acc, k| acc * int(2 * k));
    p.scale(&(T::one() / norm))
}

/// `p2 y″ + p1 y′ + p0 y` for polynomial coefficients, as a polynomial.
pub fn ode_image<T: Scalar>(
    p2: &Polynomial<T>,
    p1: &Polynomial<T>,
    p0: &Polynomial<T>,
    y: &Polynomial<T>,
) -> Polynomial<T> {
    let d1 = y.derivative();
    let d2 = d1.derivative();
    &(&(p2 * &d2) + &(p1 * &d1)) + &(p0 * y)
}

/// The Laguerre operator image `x y″ + (a + 1 − x) y′ + n y`.
pub fn laguerre_residual<T: Scalar>(n: usize, a: T, y: &Polynomial<T>) -> Polynomial<T> {
    ode_image(
        &Polynomial::linear(T::zero(), T::one()),
        &Polynomial::linear(a + T::one(), -T::one()),
        &Polynomial::constant(int(n)),
        y,
    )
}

/// The Jacobi operator image `(1−v²) y″ + (β − α − (α+β+2) v) y′ + n(n+α+β+1) y`.
pub fn jacobi_residual<T: Scalar>(n: usize, alpha: T, beta: T, y: &Polynomial<T>) -> Polynomial<T> {
    let two = int::<T>(2);
    ode_image(
        &Polynomial::new(vec![T::one(), T::zero(), -T::one()]),
        &Polynomial::linear(
            beta.clone() - alpha.clone(),
            -(alpha.clone() + beta.clone() + two),
        ),
        &Polynomial::constant(int::<T>(n) * (int::<T>(n + 1) + alpha + beta)),
        y,
    )
}

/// The Romanovski operator image `(1+u²) χ″ + (2βu + α) χ′ − n(n + 2β − 1) χ`.
pub fn romanovski_residual<T: Scalar>(n: usize, alpha: T, beta: T, y: &Polynomial<T>) -> Polynomial<T> {
    let two = int::<T>(2);
    ode_image(
        &Polynomial::new(vec![T::one(), T::zero(), T::one()]),
        &Polynomial::linear(alpha, two.clone() * beta.clone()),
        &Polynomial::constant(-(int::<T>(n) * (int::<T>(n) + two * beta - T::one()))),
        y,
    )
}

/// Largest coefficient magnitude of `residual` relative to the largest of `reference`.
pub fn relative_coefficient_residual(residual: &Polynomial<f64>, reference: &Polynomial<f64>) -> f64 {
    let max = |p: &Polynomial<f64>| p.coeffs().iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let scale = max(reference);
    if scale == 0.0 {
        max(residual)
    } else {
        max(residual) / scale
    }
}
