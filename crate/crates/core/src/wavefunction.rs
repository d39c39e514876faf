//! Radial eigenfunctions `u(z) = C z^eps (1-z)^q P_n^(2eps, 2q)(1 - 2z)` with
//! `z = 1/(1 + e^t)`, `t = (r - R0)/a`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{logistic_tail, WoodsSaxonSystem};
use crate::spectrum::BoundState;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WavefunctionSpec {
    pub state: BoundState,
    pub eps: f64,
    pub q: f64,
    /// `C_nl`, set by [`normalization_constant`].
    pub norm: Option<f64>,
    pub system: WoodsSaxonSystem,
}

impl WavefunctionSpec {
    pub fn new(system: &WoodsSaxonSystem, state: &BoundState) -> Result<Self> {
        if !state.valid {
            return Err(Error::InvalidState);
        }
        let eps = state.params.eps2.sqrt();
        let q2 = state.params.q2();
        if !(eps > 0.0) || q2 < 0.0 {
            return Err(Error::InvalidState);
        }
        Ok(Self {
            state: *state,
            eps,
            q: q2.sqrt(),
            norm: None,
            system: *system,
        })
    }

    /// Jacobi parameters `(2 eps, 2 q)`.
    pub fn jacobi_params(&self) -> (f64, f64) {
        (2.0 * self.eps, 2.0 * self.q)
    }

    /// `ln |u/C|` pieces at `t`: returns `(eps ln z + q ln(1-z), P(1-2z))`.
    fn log_envelope_and_poly(&self, t: f64) -> (f64, f64) {
        let (a, b) = self.jacobi_params();
        let z = logistic_tail(t);
        let log_env = -self.eps * softplus(t) - self.q * softplus(-t);
        (log_env, jacobi_in_z(self.state.n, a, b, z))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialSample {
    pub r: f64,
    pub z: f64,
    pub u: f64,
}

/// `ln(1 + e^x)` without overflow.
fn softplus(x: f64) -> f64 {
    x.max(0.0) + (-x.abs()).exp().ln_1p()
}

pub fn z_of_r(system: &WoodsSaxonSystem, r: f64) -> f64 {
    logistic_tail((r - system.radius()) / system.diffuseness())
}

/// `P_n^(a,b)` as a polynomial in `z = (1 - x)/2`:
/// `(a+1)_n/n! * 2F1(-n, n+a+b+1; a+1; z)`.
fn jacobi_in_z(n: u32, a: f64, b: f64, z: f64) -> f64 {
    let nf = f64::from(n);
    let mut lead = 1.0;
    for j in 0..n {
        lead *= (a + 1.0 + f64::from(j)) / f64::from(j + 1);
    }
    let mut term = lead;
    let mut sum = term;
    for k in 0..n {
        let kf = f64::from(k);
        term *= (kf - nf) * (nf + a + b + 1.0 + kf) / ((a + 1.0 + kf) * (kf + 1.0)) * z;
        sum += term;
    }
    sum
}

pub fn jacobi(n: u32, a: f64, b: f64, x: f64) -> Result<f64> {
    if !(a > -1.0) || !(b > -1.0) {
        return Err(Error::InvalidParameter(format!(
            "Jacobi parameters must exceed -1, got ({a}, {b})"
        )));
    }
    Ok(jacobi_in_z(n, a, b, 0.5 * (1.0 - x)))
}

/// `z^eps (1-z)^q P_n^(2eps, 2q)(1 - 2z)`, without `C_nl`.
pub fn radial_u_unnormalized(spec: &WavefunctionSpec, z: f64) -> Result<f64> {
    if !(z > 0.0 && z < 1.0) {
        return Err(Error::Domain(format!("z = {z} outside (0, 1)")));
    }
    let (a, b) = spec.jacobi_params();
    Ok(z.powf(spec.eps) * (1.0 - z).powf(spec.q) * jacobi_in_z(spec.state.n, a, b, z))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    /// Trapezoid step in `t`.
    pub step: f64,
    /// Lower bound on the half-width `L` of the `t` interval.
    pub min_half_width: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            step: 0.05,
            min_half_width: 40.0,
        }
    }
}

impl QuadratureConfig {
    /// `L = max(40, 30/min(2 eps, 2 q))`.
    fn half_width(&self, spec: &WavefunctionSpec) -> f64 {
        let slow = (2.0 * spec.eps).min(2.0 * spec.q);
        self.min_half_width.max(30.0 / slow)
    }
}

fn check_normalizable(spec: &WavefunctionSpec) -> Result<()> {
    if !(spec.q > 0.0) {
        return Err(Error::NonNormalizable(format!(
            "q = {} gives a divergent integral at z = 1",
            spec.q
        )));
    }
    if !(spec.eps > 0.0) {
        return Err(Error::NonNormalizable(format!(
            "eps = {} gives a divergent integral at z = 0",
            spec.eps
        )));
    }
    Ok(())
}

/// `∫_0^1 z^(2eps-1) (1-z)^(2q-1) P^2 dz`, evaluated as the smooth integral
/// `∫ z^(2eps) (1-z)^(2q) P^2 dt` over the whole real `t` axis.
pub fn normalization_integral(spec: &WavefunctionSpec, config: &QuadratureConfig) -> Result<f64> {
    check_normalizable(spec)?;
    if !(config.step > 0.0) {
        return Err(Error::InvalidParameter(format!("step must be positive, got {}", config.step)));
    }
    let half = config.half_width(spec);
    let steps = (half / config.step).ceil() as i64;
    let h = half / steps as f64;
    let integrand = |t: f64| {
        let (log_env, p) = spec.log_envelope_and_poly(t);
        (2.0 * log_env).exp() * p * p
    };
    let mut sum = 0.5 * (integrand(-half) + integrand(half));
    for i in (1 - steps)..steps {
        sum += integrand(i as f64 * h);
    }
    Ok(sum * h)
}

/// Returns `C_nl = 1/sqrt(a I)` and stores it in `spec`.
pub fn normalization_constant(spec: &mut WavefunctionSpec, config: &QuadratureConfig) -> Result<f64> {
    let integral = normalization_integral(spec, config)?;
    let c = 1.0 / (spec.system.diffuseness() * integral).sqrt();
    spec.norm = Some(c);
    Ok(c)
}

/// `∫_0^∞ u^2 dr` with the stored `C_nl`, i.e. over the physical half-line only.
/// It falls short of one by the part of the paper's integral with `r < 0`.
pub fn physical_domain_integral(spec: &WavefunctionSpec, config: &QuadratureConfig) -> Result<f64> {
    check_normalizable(spec)?;
    let c = spec.norm.ok_or_else(not_normalized)?;
    let lo = -spec.system.alpha();
    let hi = config.half_width(spec);
    // Composite Simpson: the integrand does not vanish at t = -alpha.
    let mut steps = ((hi - lo) / config.step).ceil() as usize;
    steps += steps % 2;
    let h = (hi - lo) / steps as f64;
    let integrand = |t: f64| {
        let (log_env, p) = spec.log_envelope_and_poly(t);
        (2.0 * log_env).exp() * p * p
    };
    let mut sum = integrand(lo) + integrand(hi);
    for i in 1..steps {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * integrand(lo + i as f64 * h);
    }
    Ok(c * c * spec.system.diffuseness() * sum * h / 3.0)
}

fn not_normalized() -> Error {
    Error::InvalidParameter("wavefunction has not been normalized".into())
}

/// `C_nl u` at every radius of `grid`.
pub fn sample_wavefunction(spec: &WavefunctionSpec, grid: &[f64]) -> Result<Vec<RadialSample>> {
    let c = spec.norm.ok_or_else(not_normalized)?;
    let (r0, a) = (spec.system.radius(), spec.system.diffuseness());
    grid.iter()
        .map(|&r| {
            if !r.is_finite() {
                return Err(Error::Domain(format!("radius must be finite, got {r}")));
            }
            let t = (r - r0) / a;
            let (log_env, p) = spec.log_envelope_and_poly(t);
            Ok(RadialSample {
                r,
                z: logistic_tail(t),
                u: c * log_env.exp() * p,
            })
        })
        .collect()
}
