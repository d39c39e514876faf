//! Physical constants, potential parameters and the Woods-Saxon well itself.
//!
//! Every quantity is carried in MeV and fm; `hbar c` is the only conversion
//! constant, so `hbar^2 c^2` in the radial equation becomes `hbar_c^2`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// CODATA value of `hbar c` in MeV fm.
pub const HBAR_C_CODATA: f64 = 197.326_980_4;

/// Charged pion rest energy in MeV.
pub const PION_REST_ENERGY: f64 = 139.570;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    /// `hbar c` in MeV fm.
    pub hbar_c: f64,
}

impl PhysicalConstants {
    pub fn new(hbar_c: f64) -> Result<Self> {
        if !(hbar_c.is_finite() && hbar_c > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "hbar c must be a positive number of MeV fm, got {hbar_c}"
            )));
        }
        Ok(Self { hbar_c })
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self {
            hbar_c: HBAR_C_CODATA,
        }
    }
}

/// A spherical Woods-Saxon well `V(r) = -V0 / (1 + exp((r - R0)/a))` binding a
/// spin-0 particle of rest energy `m0c2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WoodsSaxonSystem {
    depth: f64,
    radius: f64,
    diffuseness: f64,
    rest_energy: f64,
    constants: PhysicalConstants,
}

impl WoodsSaxonSystem {
    pub fn new(
        depth: f64,
        radius: f64,
        diffuseness: f64,
        rest_energy: f64,
        constants: PhysicalConstants,
    ) -> Result<Self> {
        for (name, value) in [
            ("potential depth V0", depth),
            ("radius R0", radius),
            ("diffuseness a", diffuseness),
            ("rest energy m0c2", rest_energy),
        ] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be positive, got {value}"
                )));
            }
        }
        // Re-validate in case the caller built the constants by hand.
        PhysicalConstants::new(constants.hbar_c)?;
        if diffuseness >= radius {
            return Err(Error::InvalidParameter(format!(
                "diffuseness a = {diffuseness} fm must be smaller than R0 = {radius} fm"
            )));
        }
        if radius / diffuseness < 3.0 {
            log::warn!(
                "R0/a = {:.4} < 3: the Pekeris expansion around R0 is poorly justified",
                radius / diffuseness
            );
        }
        Ok(Self {
            depth,
            radius,
            diffuseness,
            rest_energy,
            constants,
        })
    }

    /// `V0` in MeV.
    pub fn depth(&self) -> f64 {
        self.depth
    }

    /// `R0` in fm.
    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// `a` in fm.
    pub fn diffuseness(&self) -> f64 {
        self.diffuseness
    }

    /// `m0 c^2` in MeV.
    pub fn rest_energy(&self) -> f64 {
        self.rest_energy
    }

    pub fn constants(&self) -> PhysicalConstants {
        self.constants
    }

    pub fn hbar_c(&self) -> f64 {
        self.constants.hbar_c
    }

    /// `alpha = R0 / a`.
    pub fn alpha(&self) -> f64 {
        self.radius / self.diffuseness
    }

    /// Same well and particle with `hbar c` replaced.
    pub fn with_constants(&self, constants: PhysicalConstants) -> Result<Self> {
        Self::new(
            self.depth,
            self.radius,
            self.diffuseness,
            self.rest_energy,
            constants,
        )
    }

    /// The system seen with the speed of light scaled by `kappa` at fixed
    /// `m0`, `hbar`, `V0`, `R0`, `a`: `hbar c -> kappa hbar c` and
    /// `m0 c^2 -> kappa^2 m0 c^2`.
    pub fn with_light_speed_scaled(&self, kappa: f64) -> Result<Self> {
        if !(kappa.is_finite() && kappa > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "light-speed scale must be positive, got {kappa}"
            )));
        }
        Self::new(
            self.depth,
            self.radius,
            self.diffuseness,
            self.rest_energy * kappa * kappa,
            PhysicalConstants::new(self.constants.hbar_c * kappa)?,
        )
    }
}

/// Empirical nuclear parameterisation keyed by mass number.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NuclearInput {
    pub mass_number: u32,
    /// Radius constant `r0` in fm.
    pub radius_constant: f64,
    /// Diffuseness `a` in fm.
    pub diffuseness: f64,
    /// Projectile rest energy in MeV.
    pub rest_energy: f64,
}

impl NuclearInput {
    pub const DEFAULT_RADIUS_CONSTANT: f64 = 1.285;
    pub const DEFAULT_DIFFUSENESS: f64 = 0.65;

    /// Pion projectile with the default nuclear geometry.
    pub fn new(mass_number: u32) -> Self {
        Self {
            mass_number,
            radius_constant: Self::DEFAULT_RADIUS_CONSTANT,
            diffuseness: Self::DEFAULT_DIFFUSENESS,
            rest_energy: PION_REST_ENERGY,
        }
    }

    /// `V0 = 40.5 + 0.13 A` MeV.
    pub fn depth(&self) -> f64 {
        40.5 + 0.13 * f64::from(self.mass_number)
    }

    /// `R0 = r0 A^(1/3)` fm.
    pub fn radius(&self) -> f64 {
        self.radius_constant * f64::from(self.mass_number).cbrt()
    }
}

pub fn system_from_mass_number(
    input: &NuclearInput,
    constants: PhysicalConstants,
) -> Result<WoodsSaxonSystem> {
    if input.mass_number < 1 {
        return Err(Error::InvalidParameter("mass number must be ≥ 1".into()));
    }
    if !(input.radius_constant.is_finite() && input.radius_constant > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "radius constant r0 must be positive, got {}",
            input.radius_constant
        )));
    }
    if !(input.diffuseness.is_finite() && input.diffuseness > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "diffuseness a must be positive, got {}",
            input.diffuseness
        )));
    }
    WoodsSaxonSystem::new(
        input.depth(),
        input.radius(),
        input.diffuseness,
        input.rest_energy,
        constants,
    )
}

/// `V(r)` in MeV. Requires `r >= 0`.
pub fn potential_value(system: &WoodsSaxonSystem, r: f64) -> Result<f64> {
    if !(r >= 0.0) {
        return Err(Error::Domain(format!("radius must be non-negative, got {r}")));
    }
    let x = (r - system.radius) / system.diffuseness;
    Ok(-system.depth * logistic_tail(x))
}

/// `1 / (1 + e^x)` without overflow for large `|x|`.
pub(crate) fn logistic_tail(x: f64) -> f64 {
    if x > 0.0 {
        let e = (-x).exp();
        e / (1.0 + e)
    } else {
        1.0 / (1.0 + x.exp())
    }
}
