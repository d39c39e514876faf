//! Closed-form Klein-Gordon spectrum of the Pekeris-approximated Woods-Saxon
//! well.
//!
//! In `t = (r - R0)/a` the radial equation reads
//! `u'' + [-eps^2 + beta^2 g - gamma^2 g^2] u = 0` with `g = 1/(1 + e^t)`.
//! The quantization condition is `eps + sqrt(eps^2 - beta^2 + gamma^2) = n'`;
//! squaring it gives a quadratic in `E` whose roots are reported together
//! with a flag telling whether they satisfy the unsquared condition.

use serde::{Deserialize, Serialize};

use crate::error::{Error, ExistenceCondition, Result};
use crate::model::WoodsSaxonSystem;
use crate::pekeris::{angular_factor, pekeris_coefficients, PekerisCoefficients};

/// Largest quantization residual a state may carry and still be valid.
pub const RESIDUAL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DimensionlessParams {
    pub eps2: f64,
    pub beta2: f64,
    pub gamma2: f64,
    pub alpha: f64,
}

impl DimensionlessParams {
    /// `eps^2 - beta^2 + gamma^2`, the square of the `z -> 1` exponent.
    pub fn q2(&self) -> f64 {
        self.eps2 - self.beta2 + self.gamma2
    }
}

fn coefficients(system: &WoodsSaxonSystem) -> PekerisCoefficients {
    // alpha = R0/a > 1 by construction of the system.
    pekeris_coefficients(system.alpha()).expect("alpha is positive for a valid system")
}

/// Energy-independent pieces of the dimensionless parameters:
/// `eps^2 = w - s E^2`, `beta^2 = p E + b0`.
#[derive(Debug, Clone, Copy)]
struct Pieces {
    s: f64,
    p: f64,
    b0: f64,
    w: f64,
    gamma2: f64,
}

fn pieces(system: &WoodsSaxonSystem, l: u32) -> Pieces {
    let c = coefficients(system);
    let hc = system.hbar_c();
    let a = system.diffuseness();
    let m = system.rest_energy();
    let v0 = system.depth();
    let ll = angular_factor(l);
    let al2 = c.alpha * c.alpha;
    let s = a * a / (hc * hc);
    Pieces {
        s,
        p: 2.0 * v0 * s,
        b0: -ll * c.c1 / al2,
        w: m * m * s + ll * c.c0 / al2,
        gamma2: -(v0 * v0 * s - ll * c.c2 / al2),
    }
}

pub fn dimensionless_parameters(system: &WoodsSaxonSystem, energy: f64, l: u32) -> DimensionlessParams {
    let c = coefficients(system);
    let hc = system.hbar_c();
    let a = system.diffuseness();
    let m = system.rest_energy();
    let v0 = system.depth();
    let ll = angular_factor(l);
    let al2 = c.alpha * c.alpha;
    let scale = a * a / (hc * hc);
    DimensionlessParams {
        eps2: -((energy * energy - m * m) * scale - ll * c.c0 / al2),
        beta2: 2.0 * energy * v0 * scale - ll * c.c1 / al2,
        gamma2: -(v0 * v0 * scale - ll * c.c2 / al2),
        alpha: c.alpha,
    }
}

/// `1 + 192 a^4 l(l+1)/R0^4 - 4 V0^2 a^2/(hbar c)^2`.
fn radial_radicand(system: &WoodsSaxonSystem, l: u32) -> f64 {
    let ratio = system.diffuseness() / system.radius();
    let va = system.depth() * system.diffuseness() / system.hbar_c();
    1.0 + 192.0 * ratio.powi(4) * angular_factor(l) - 4.0 * va * va
}

fn radial_radicand_checked(system: &WoodsSaxonSystem, l: u32) -> Result<f64> {
    let rad = radial_radicand(system, l);
    if rad < 0.0 {
        return Err(Error::Domain(format!(
            "over-deep potential: n' radicand {rad:e} < 0 for l = {l}"
        )));
    }
    Ok(rad)
}

/// `n' = -n + (sqrt(1 + 192 a^4 l(l+1)/R0^4 - 4 V0^2 a^2/(hbar c)^2) - 1)/2`.
pub fn n_prime(system: &WoodsSaxonSystem, n: u32, l: u32) -> Result<f64> {
    let rad = radial_radicand_checked(system, l)?;
    Ok(-f64::from(n) + 0.5 * (rad.sqrt() - 1.0))
}

/// Number of radial quantum numbers `n` with `n' > 0`.
pub fn allowed_radial_count(system: &WoodsSaxonSystem, l: u32) -> Result<u32> {
    let bound = n_prime(system, 0, l)?;
    if bound <= 0.0 {
        return Ok(0);
    }
    let mut count = bound.ceil() as u32;
    // Guard the boundary case bound == integer against rounding.
    while count > 0 && n_prime(system, count - 1, l)? <= 0.0 {
        count -= 1;
    }
    Ok(count)
}

/// Open interval `(0, V0_max)` of depths that keep `gamma^2 > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DepthWindow {
    pub upper: f64,
}

impl DepthWindow {
    pub fn is_empty(&self) -> bool {
        self.upper <= 0.0
    }

    pub fn contains(&self, depth: f64) -> bool {
        depth > 0.0 && depth < self.upper
    }
}

/// `V0_max = 4 hbar c a sqrt(3 l(l+1)) / R0^2`.
pub fn depth_window(radius: f64, diffuseness: f64, hbar_c: f64, l: u32) -> DepthWindow {
    DepthWindow {
        upper: 4.0 * hbar_c * diffuseness * (3.0 * angular_factor(l)).sqrt() / (radius * radius),
    }
}

fn system_depth_window(system: &WoodsSaxonSystem, l: u32) -> DepthWindow {
    depth_window(system.radius(), system.diffuseness(), system.hbar_c(), l)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Admissibility {
    Admissible,
    /// `eps^2 < 0`: no decay at large r.
    NegativeEps2,
    /// `eps^2 - beta^2 + gamma^2 < 0`.
    NegativeRadicand,
    /// `n'` itself is complex.
    UndefinedNPrime,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuantizationResidual {
    /// `|eps + sqrt(eps^2 - beta^2 + gamma^2) - n'|`, infinite when inadmissible.
    pub value: f64,
    pub admissibility: Admissibility,
}

/// Signed `eps + sqrt(q^2) - n'`, `None` when any square root is complex.
fn signed_residual(params: &DimensionlessParams, n_prime: f64) -> Option<f64> {
    if params.eps2 < 0.0 || params.q2() < 0.0 {
        return None;
    }
    Some(params.eps2.sqrt() + params.q2().sqrt() - n_prime)
}

pub fn quantization_residual(system: &WoodsSaxonSystem, energy: f64, n: u32, l: u32) -> QuantizationResidual {
    let inadmissible = |admissibility| QuantizationResidual {
        value: f64::INFINITY,
        admissibility,
    };
    let params = dimensionless_parameters(system, energy, l);
    if params.eps2 < 0.0 {
        return inadmissible(Admissibility::NegativeEps2);
    }
    if params.q2() < 0.0 {
        return inadmissible(Admissibility::NegativeRadicand);
    }
    let Ok(np) = n_prime(system, n, l) else {
        return inadmissible(Admissibility::UndefinedNPrime);
    };
    QuantizationResidual {
        value: signed_residual(&params, np).map_or(f64::INFINITY, f64::abs),
        admissibility: Admissibility::Admissible,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundState {
    pub n: u32,
    pub l: u32,
    /// Total energy `E_nl` in MeV.
    pub energy: f64,
    /// `E_nl - m0c2` in MeV.
    pub binding: f64,
    pub n_prime: f64,
    /// `+1` for the upper root of the energy quadratic, `-1` for the lower.
    pub root_sign: i8,
    pub residual: f64,
    pub valid: bool,
    pub params: DimensionlessParams,
}

impl BoundState {
    fn new(system: &WoodsSaxonSystem, energy: f64, n: u32, l: u32, n_prime: f64, root_sign: i8) -> Self {
        let params = dimensionless_parameters(system, energy, l);
        let residual = quantization_residual(system, energy, n, l).value;
        let valid = residual <= RESIDUAL_TOL
            && params.eps2 > 0.0
            && params.eps2.sqrt() <= n_prime + 1e-12;
        Self {
            n,
            l,
            energy,
            binding: binding_energy(energy, system.rest_energy()),
            n_prime,
            root_sign,
            residual,
            valid,
            params,
        }
    }

    /// `eps = sqrt(eps^2)` at the state's energy.
    pub fn eps(&self) -> f64 {
        self.params.eps2.max(0.0).sqrt()
    }

    /// Whether the energy lies inside `(-m0c2, m0c2)`.
    pub fn is_particle_branch(&self, rest_energy: f64) -> bool {
        self.energy.abs() < rest_energy
    }
}

pub fn binding_energy(energy: f64, rest_energy: f64) -> f64 {
    energy - rest_energy
}

/// Checks the two existence conditions for `(n, l)` and returns `n'`.
fn check_existence(system: &WoodsSaxonSystem, n: u32, l: u32) -> Result<f64> {
    if l == 0 {
        return Err(Error::NoBoundState(ExistenceCondition::RadialCount));
    }
    if !system_depth_window(system, l).contains(system.depth()) {
        return Err(Error::NoBoundState(ExistenceCondition::DepthWindow));
    }
    let np = n_prime(system, n, l)?;
    if np <= 0.0 {
        return Err(Error::NoBoundState(ExistenceCondition::RadialCount));
    }
    Ok(np)
}

/// Both energies from the closed form, upper root first:
/// `E = -V0/2 F ± T sqrt{(m0^2c^4 + (hbar c)^2 l(l+1) C0/R0^2)/D - (hbar c)^2 F^2/(16 a^2)}`
/// with `T = 2n'`, `D = T^2 + 4 V0^2 a^2/(hbar c)^2`, `F = 1 - 32 l(l+1) a^3/(R0^3 D)`.
pub fn closed_form_roots(system: &WoodsSaxonSystem, n: u32, l: u32) -> Result<(f64, f64)> {
    let rad = radial_radicand_checked(system, l)?;
    let (v0, r0, a, m, hc) = (
        system.depth(),
        system.radius(),
        system.diffuseness(),
        system.rest_energy(),
        system.hbar_c(),
    );
    let ll = angular_factor(l);
    let t = rad.sqrt() - 2.0 * f64::from(n) - 1.0;
    let d = t * t + 4.0 * v0 * v0 * a * a / (hc * hc);
    let f = 1.0 - 32.0 * ll * a.powi(3) / (r0.powi(3) * d);
    let c0 = 1.0 - 4.0 * a / r0 + 12.0 * a * a / (r0 * r0);
    let inner = (m * m + hc * hc * ll * c0 / (r0 * r0)) / d - hc * hc * f * f / (16.0 * a * a);
    if inner < 0.0 {
        return Err(Error::NoRealRoot(inner));
    }
    let center = -0.5 * v0 * f;
    let half_gap = t * inner.sqrt();
    Ok((center + half_gap, center - half_gap))
}

/// Both roots of `(p^2 + 4n'^2 s) E^2 + 2pK E + K^2 - 4n'^2 w = 0`, the square
/// of `2n' eps = n'^2 + beta^2 - gamma^2` with `eps^2 = w - s E^2`,
/// `beta^2 = pE + b0` and `K = n'^2 + b0 - gamma^2`. Upper root first.
pub fn quadratic_roots(system: &WoodsSaxonSystem, n: u32, l: u32) -> Result<(f64, f64)> {
    let pc = pieces(system, l);
    let one_plus = 1.0 + 4.0 * pc.gamma2;
    if one_plus < 0.0 {
        return Err(Error::Domain(format!("1 + 4 gamma^2 = {one_plus:e} < 0")));
    }
    let np = -f64::from(n) + 0.5 * (one_plus.sqrt() - 1.0);
    let k = np * np + pc.b0 - pc.gamma2;
    let qa = pc.p * pc.p + 4.0 * np * np * pc.s;
    let qb = 2.0 * pc.p * k;
    let qc = k * k - 4.0 * np * np * pc.w;
    let disc = qb * qb - 4.0 * qa * qc;
    if disc < 0.0 {
        return Err(Error::NoRealRoot(disc));
    }
    let sq = disc.sqrt();
    let q = -0.5 * (qb + if qb >= 0.0 { sq } else { -sq });
    let (r1, r2) = if q == 0.0 { (0.0, 0.0) } else { (q / qa, qc / q) };
    Ok((r1.max(r2), r1.min(r2)))
}

/// Both roots of the energy quadratic for `(n, l)`, upper root first, each
/// checked against the unsquared quantization condition.
pub fn energy_roots(system: &WoodsSaxonSystem, n: u32, l: u32) -> Result<[BoundState; 2]> {
    let np = check_existence(system, n, l)?;
    let (plus, minus) = closed_form_roots(system, n, l)?;
    Ok([
        BoundState::new(system, plus, n, l, np, 1),
        BoundState::new(system, minus, n, l, np, -1),
    ])
}

/// Upper edge of `eps^2 > 0`:
/// `E_max = sqrt(m0^2c^4 + l(l+1) C0 (hbar c)^2 / (alpha^2 a^2))`.
pub fn bound_state_ceiling(system: &WoodsSaxonSystem, l: u32) -> f64 {
    let pc = pieces(system, l);
    (pc.w / pc.s).sqrt()
}

/// Closed energy interval on which both `eps^2 >= 0` and
/// `eps^2 - beta^2 + gamma^2 >= 0`; `None` when empty.
pub fn admissible_window(system: &WoodsSaxonSystem, l: u32) -> Option<(f64, f64)> {
    let pc = pieces(system, l);
    let e_max = (pc.w / pc.s).sqrt();
    // q^2(E) = -s E^2 - p E + (w - b0 + gamma^2)
    let c = pc.w - pc.b0 + pc.gamma2;
    let disc = pc.p * pc.p + 4.0 * pc.s * c;
    if disc < 0.0 {
        return None;
    }
    let sq = disc.sqrt();
    let lo = (-pc.p - sq) / (2.0 * pc.s);
    let hi = (-pc.p + sq) / (2.0 * pc.s);
    let lo = lo.max(-e_max);
    let hi = hi.min(e_max);
    (lo < hi).then_some((lo, hi))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    /// Number of initial samples across the admissible window.
    pub samples: usize,
    /// Bisection stops once the bracket is narrower than this (MeV).
    pub tolerance: f64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            samples: 10_000,
            tolerance: 1e-10,
        }
    }
}

/// Roots of the unsquared condition `eps + sqrt(eps^2 - beta^2 + gamma^2) = n'`
/// found by sampling the admissible window and bisecting every sign change.
pub fn solve_quantization_scan(
    system: &WoodsSaxonSystem,
    n: u32,
    l: u32,
    config: &ScanConfig,
) -> Vec<BoundState> {
    if l == 0 {
        return Vec::new();
    }
    let Ok(np) = n_prime(system, n, l) else {
        return Vec::new();
    };
    let Some((lo, hi)) = admissible_window(system, l) else {
        return Vec::new();
    };
    let f = |e: f64| signed_residual(&dimensionless_parameters(system, e, l), np);
    let samples = config.samples.max(2);
    let grid: Vec<(f64, Option<f64>)> = (0..=samples)
        .map(|i| {
            let e = if i == samples {
                hi
            } else {
                lo + (hi - lo) * i as f64 / samples as f64
            };
            (e, f(e))
        })
        .collect();

    // The center of the closed form separates the two roots.
    let center = closed_form_roots(system, n, l)
        .map(|(p, m)| 0.5 * (p + m))
        .unwrap_or(0.0);

    let mut roots: Vec<f64> = Vec::new();
    for pair in grid.windows(2) {
        let ((e0, Some(f0)), (e1, Some(f1))) = (pair[0], pair[1]) else {
            continue;
        };
        if f0 == 0.0 {
            roots.push(e0);
            continue;
        }
        if f0.signum() == f1.signum() || f1 == 0.0 {
            continue;
        }
        let (mut a, mut b, mut fa) = (e0, e1, f0);
        while b - a > config.tolerance {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            let Some(fm) = f(mid) else { break };
            if fm == 0.0 {
                a = mid;
                b = mid;
                break;
            }
            if fm.signum() == fa.signum() {
                a = mid;
                fa = fm;
            } else {
                b = mid;
            }
        }
        roots.push(0.5 * (a + b));
    }
    if let Some(&(e, Some(fe))) = grid.last() {
        if fe == 0.0 {
            roots.push(e);
        }
    }

    roots
        .into_iter()
        .map(|e| BoundState::new(system, e, n, l, np, if e >= center { 1 } else { -1 }))
        .filter(|s| {
            if !s.valid {
                log::debug!("scan root E = {} rejected, residual {:e}", s.energy, s.residual);
            }
            s.valid
        })
        .collect()
}

/// Nonrelativistic limit of the spectrum in MeV (energy above `m0c2`).
pub fn energy_nonrelativistic(system: &WoodsSaxonSystem, n: u32, l: u32) -> Result<f64> {
    let (v0, r0, a, m, hc) = (
        system.depth(),
        system.radius(),
        system.diffuseness(),
        system.rest_energy(),
        system.hbar_c(),
    );
    let ll = angular_factor(l);
    let t = (1.0 + 192.0 * ll * (a / r0).powi(4)).sqrt() - 2.0 * f64::from(n) - 1.0;
    if t <= 0.0 {
        return Err(Error::NoBoundState(ExistenceCondition::RadialCount));
    }
    // hbar^2/(2 m0) in MeV fm^2.
    let kinetic = hc * hc / (2.0 * m);
    let coupling = m * v0 * a * a / (hc * hc);
    let x = coupling - 4.0 * ll * (a / r0).powi(3);
    Ok(kinetic * ll / (r0 * r0) * (1.0 + 12.0 * a * a / (r0 * r0))
        - kinetic / (a * a) * (t * t / 16.0 + 4.0 * x * x / (t * t) + coupling))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExclusionReason {
    Condition(ExistenceCondition),
    ComplexRoots,
}

impl std::fmt::Display for ExclusionReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExclusionReason::Condition(c) => write!(f, "{c}"),
            ExclusionReason::ComplexRoots => f.write_str("energy quadratic has complex roots"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exclusion {
    pub n: u32,
    pub l: u32,
    pub reason: ExclusionReason,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumTable {
    pub system: WoodsSaxonSystem,
    /// Both roots of every admissible `(n, l)`, sorted by `(l, n, energy)`.
    pub rows: Vec<BoundState>,
    pub diagnostics: Vec<Exclusion>,
}

impl SpectrumTable {
    /// The `(upper, lower)` root pair for `(n, l)`.
    pub fn pair(&self, n: u32, l: u32) -> Option<(&BoundState, &BoundState)> {
        let plus = self.rows.iter().find(|s| s.n == n && s.l == l && s.root_sign == 1)?;
        let minus = self.rows.iter().find(|s| s.n == n && s.l == l && s.root_sign == -1)?;
        Some((plus, minus))
    }

    pub fn valid_states(&self) -> impl Iterator<Item = &BoundState> {
        self.rows.iter().filter(|s| s.valid)
    }
}

pub fn enumerate_spectrum(system: &WoodsSaxonSystem, l_max: u32) -> SpectrumTable {
    let mut rows = Vec::new();
    let mut diagnostics = Vec::new();
    for l in 0..=l_max {
        let excluded = |reason| Exclusion { n: 0, l, reason };
        if l == 0 {
            diagnostics.push(excluded(ExclusionReason::Condition(ExistenceCondition::RadialCount)));
            continue;
        }
        if !system_depth_window(system, l).contains(system.depth()) {
            diagnostics.push(excluded(ExclusionReason::Condition(ExistenceCondition::DepthWindow)));
            continue;
        }
        let count = match allowed_radial_count(system, l) {
            Ok(c) => c,
            Err(_) => {
                diagnostics.push(excluded(ExclusionReason::Condition(ExistenceCondition::DepthWindow)));
                continue;
            }
        };
        if count == 0 {
            diagnostics.push(excluded(ExclusionReason::Condition(ExistenceCondition::RadialCount)));
            continue;
        }
        for n in 0..count {
            match energy_roots(system, n, l) {
                Ok(pair) => rows.extend(pair),
                Err(Error::NoBoundState(c)) => diagnostics.push(Exclusion {
                    n,
                    l,
                    reason: ExclusionReason::Condition(c),
                }),
                Err(_) => diagnostics.push(Exclusion {
                    n,
                    l,
                    reason: ExclusionReason::ComplexRoots,
                }),
            }
        }
    }
    rows.sort_by(|a, b| {
        (a.l, a.n)
            .cmp(&(b.l, b.n))
            .then(a.energy.total_cmp(&b.energy))
    });
    SpectrumTable {
        system: *system,
        rows,
        diagnostics,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{system_from_mass_number, NuclearInput, PhysicalConstants};
    use approx::assert_relative_eq;

    fn nucleus(a: u32) -> WoodsSaxonSystem {
        system_from_mass_number(&NuclearInput::new(a), PhysicalConstants::default()).unwrap()
    }

    /// Light synthetic system with valid states for l = 2.
    fn synthetic() -> WoodsSaxonSystem {
        WoodsSaxonSystem::new(10.0, 4.0, 1.0, 938.0, PhysicalConstants::default()).unwrap()
    }

    #[test]
    fn eps2_vanishes_at_rest_energy() {
        let s = nucleus(40);
        let p = dimensionless_parameters(&s, s.rest_energy(), 0);
        assert!(p.eps2.abs() < 1e-15);
    }

    #[test]
    fn gamma2_values() {
        let s = nucleus(40);
        let p = dimensionless_parameters(&s, 10.0, 1);
        let np = n_prime(&s, 0, 1).unwrap();
        // n' (n' + 1) = gamma^2 at n = 0.
        assert_relative_eq!(p.gamma2, np * (np + 1.0), epsilon = 1e-14);
        assert!((p.gamma2 - 0.023283).abs() < 1e-6);
        let p0 = dimensionless_parameters(&s, 10.0, 0);
        let va = s.depth() * s.diffuseness() / s.hbar_c();
        assert_relative_eq!(p0.gamma2, -va * va, epsilon = 1e-15);
        assert!(p0.gamma2 < 0.0);
    }

    #[test]
    fn n_prime_values() {
        assert!((n_prime(&nucleus(40), 0, 1).unwrap() - 0.022765).abs() < 1e-6);
        assert!((n_prime(&nucleus(56), 0, 2).unwrap() - 0.059674).abs() < 2e-6);
        let s = nucleus(40);
        let va = s.depth() * s.diffuseness() / s.hbar_c();
        let expected = 0.5 * ((1.0 - 4.0 * va * va).sqrt() - 1.0);
        assert_relative_eq!(n_prime(&s, 0, 0).unwrap(), expected, epsilon = 1e-15);
        assert!(expected < 0.0);
    }

    #[test]
    fn over_deep_potential_is_a_domain_error() {
        let s = WoodsSaxonSystem::new(400.0, 5.0, 0.65, 139.57, PhysicalConstants::default())
            .unwrap();
        assert!(matches!(n_prime(&s, 0, 1), Err(Error::Domain(_))));
        assert!(allowed_radial_count(&s, 1).is_err());
    }

    #[test]
    fn radial_counts() {
        assert_eq!(allowed_radial_count(&nucleus(40), 1).unwrap(), 1);
        for a in [40, 56, 208] {
            assert_eq!(allowed_radial_count(&nucleus(a), 0).unwrap(), 0);
        }
        // Above the depth window gamma^2 < 0 and n' < 0.
        let s = nucleus(40);
        let deep = WoodsSaxonSystem::new(
            70.0,
            s.radius(),
            s.diffuseness(),
            s.rest_energy(),
            s.constants(),
        )
        .unwrap();
        assert_eq!(allowed_radial_count(&deep, 1).unwrap(), 0);
    }

    #[test]
    fn depth_windows() {
        let hc = crate::model::HBAR_C_CODATA;
        assert!(depth_window(4.0, 0.65, hc, 0).is_empty());
        let a40 = nucleus(40);
        let w = depth_window(a40.radius(), 0.65, hc, 1);
        assert!((w.upper - 65.07).abs() < 5e-3);
        let a208 = nucleus(208);
        let w = depth_window(a208.radius(), 0.65, hc, 5);
        assert!((w.upper - 83.97).abs() < 5e-3);
        assert!(w.contains(67.54));
    }

    #[test]
    fn residual_classification() {
        let s = nucleus(40);
        let r = quantization_residual(&s, s.rest_energy(), 0, 0);
        assert_eq!(r.value, f64::INFINITY);
        assert_eq!(r.admissibility, Admissibility::NegativeRadicand);
        let r = quantization_residual(&s, 1000.0, 0, 1);
        assert_eq!(r.admissibility, Admissibility::NegativeEps2);
        // A quadratic root that fails the unsquared condition.
        let r = quantization_residual(&s, 50.0446658874855, 0, 1);
        assert_eq!(r.admissibility, Admissibility::Admissible);
        assert!((r.value - 0.87869).abs() < 1e-4);
    }

    #[test]
    fn calcium_roots_are_spurious() {
        let s = nucleus(40);
        let [plus, minus] = energy_roots(&s, 0, 1).unwrap();
        assert!((plus.energy - 50.0447).abs() < 1e-3);
        assert!((minus.energy - 6.3260).abs() < 1e-3);
        assert!((plus.binding + 89.525).abs() < 1e-3);
        assert!((minus.binding + 133.244).abs() < 1e-3);
        assert!(!plus.valid && !minus.valid);
        assert_eq!((plus.root_sign, minus.root_sign), (1, -1));
        assert!(solve_quantization_scan(&s, 0, 1, &ScanConfig::default()).is_empty());
    }

    #[test]
    fn closed_form_matches_quadratic() {
        for (s, n, l) in [(nucleus(40), 0, 1), (nucleus(208), 0, 5), (synthetic(), 0, 2)] {
            let (p1, m1) = closed_form_roots(&s, n, l).unwrap();
            let (p2, m2) = quadratic_roots(&s, n, l).unwrap();
            assert_relative_eq!(p1, p2, max_relative = 1e-10);
            assert_relative_eq!(m1, m2, max_relative = 1e-10);
        }
    }

    #[test]
    fn existence_failures() {
        let s = nucleus(40);
        assert_eq!(
            energy_roots(&s, 0, 0).unwrap_err(),
            Error::NoBoundState(ExistenceCondition::RadialCount)
        );
        let upper = system_depth_window(&s, 1).upper;
        let deep = WoodsSaxonSystem::new(
            2.0 * upper,
            s.radius(),
            s.diffuseness(),
            s.rest_energy(),
            s.constants(),
        )
        .unwrap();
        assert_eq!(
            energy_roots(&deep, 0, 1).unwrap_err(),
            Error::NoBoundState(ExistenceCondition::DepthWindow)
        );
        assert_eq!(
            energy_roots(&s, 1, 1).unwrap_err(),
            Error::NoBoundState(ExistenceCondition::RadialCount)
        );
    }

    #[test]
    fn synthetic_valid_state_found_by_scan() {
        let s = synthetic();
        let states = solve_quantization_scan(&s, 0, 2, &ScanConfig::default());
        assert_eq!(states.len(), 1);
        let st = states[0];
        assert!(st.valid && st.residual <= RESIDUAL_TOL);
        let [plus, _] = energy_roots(&s, 0, 2).unwrap();
        assert!(plus.valid);
        assert!((plus.energy - st.energy).abs() <= 1e-8);
        assert!((plus.energy - 943.41494705).abs() < 1e-6);
        assert_eq!(st.root_sign, 1);
        // eps = (n' + (beta^2 - gamma^2)/n') / 2
        let p = plus.params;
        let eps = 0.5 * (plus.n_prime + (p.beta2 - p.gamma2) / plus.n_prime);
        assert_relative_eq!(eps, plus.eps(), epsilon = 1e-10);
        assert!(plus.energy < bound_state_ceiling(&s, 2));
    }

    #[test]
    fn scan_without_angular_momentum_is_empty() {
        assert!(solve_quantization_scan(&nucleus(40), 0, 0, &ScanConfig::default()).is_empty());
    }

    #[test]
    fn binding_energies() {
        assert_eq!(binding_energy(139.57, 139.57), 0.0);
        assert_relative_eq!(binding_energy(50.045, 139.570), -89.525, epsilon = 1e-12);
    }

    #[test]
    fn nonrelativistic_values() {
        let e = energy_nonrelativistic(&nucleus(56), 0, 2).unwrap();
        assert!(e.is_finite());
        // Golden value, frozen from direct evaluation.
        assert!((e - GOLDEN_NR_A56_L2).abs() < 1e-6, "{e}");
        assert_eq!(
            energy_nonrelativistic(&nucleus(56), 0, 0).unwrap_err(),
            Error::NoBoundState(ExistenceCondition::RadialCount)
        );
    }

    const GOLDEN_NR_A56_L2: f64 = 3.236_722_408_678_83;

    #[test]
    fn spectrum_enumeration() {
        let t = enumerate_spectrum(&nucleus(40), 2);
        assert!(t.diagnostics.iter().any(|d| d.l == 0
            && d.reason == ExclusionReason::Condition(ExistenceCondition::RadialCount)));
        let t1 = enumerate_spectrum(&nucleus(40), 1);
        assert_eq!(t1.rows.len(), 2);
        assert!(t1.pair(0, 1).is_some());
        let sorted = t.rows.windows(2).all(|w| {
            (w[0].l, w[0].n) < (w[1].l, w[1].n)
                || ((w[0].l, w[0].n) == (w[1].l, w[1].n) && w[0].energy <= w[1].energy)
        });
        assert!(sorted);
        let s = nucleus(40);
        let deep = WoodsSaxonSystem::new(500.0, s.radius(), 0.65, 139.57, s.constants()).unwrap();
        let empty = enumerate_spectrum(&deep, 1);
        assert!(empty.rows.is_empty());
        assert_eq!(empty.diagnostics.len(), 2);
    }

    #[test]
    fn admissible_window_contains_valid_states() {
        let s = synthetic();
        let (lo, hi) = admissible_window(&s, 2).unwrap();
        let [plus, _] = energy_roots(&s, 0, 2).unwrap();
        assert!(lo < plus.energy && plus.energy < hi);
        assert!(hi <= bound_state_ceiling(&s, 2));
    }
}
