//! Published pionic Woods-Saxon bound states (Table 1 of the source article)
//! and a side-by-side comparison against what this crate computes.
//!
//! The published numbers are reference data only. Nothing here feeds them
//! into a computation.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::model::{system_from_mass_number, NuclearInput, PhysicalConstants, WoodsSaxonSystem};
use crate::output::nearest_to_pair;
use crate::oracle::{eigenvalues, OracleConfig, OracleReport};
use crate::spectrum::{energy_roots, solve_quantization_scan, BoundState, ScanConfig};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PublishedRow {
    pub mass_number: u32,
    /// `R0` in fm, as printed.
    pub radius: f64,
    /// `V0` in MeV, as printed.
    pub depth: f64,
    pub n: u32,
    pub l: u32,
    /// Published binding energy `E_b` in MeV.
    pub binding: f64,
}

const fn row(mass_number: u32, radius: f64, depth: f64, n: u32, l: u32, binding: f64) -> PublishedRow {
    PublishedRow {
        mass_number,
        radius,
        depth,
        n,
        l,
        binding,
    }
}

pub const PUBLISHED_TABLE: [PublishedRow; 8] = [
    row(40, 4.3946, 45.70, 0, 1, -107.8777),
    row(56, 4.9162, 47.78, 0, 1, -127.5238),
    row(56, 4.9162, 47.78, 0, 2, -17.5985),
    row(66, 5.1930, 49.08, 0, 2, -50.3359),
    row(92, 5.8010, 52.46, 0, 2, -101.8967),
    row(140, 6.6724, 58.70, 0, 3, -92.5327),
    row(208, 7.6136, 67.54, 0, 4, -105.0865),
    row(208, 7.6136, 67.54, 0, 5, -33.6014),
];

pub fn published_binding(mass_number: u32, n: u32, l: u32) -> Option<f64> {
    PUBLISHED_TABLE
        .iter()
        .find(|r| r.mass_number == mass_number && r.n == n && r.l == l)
        .map(|r| r.binding)
}

/// Whether the published `E_b` grows with `l` for every `(A, n)` that
/// appears with more than one `l`.
pub fn published_monotone_in_l() -> bool {
    PUBLISHED_TABLE.iter().all(|a| {
        PUBLISHED_TABLE
            .iter()
            .filter(|b| b.mass_number == a.mass_number && b.n == a.n && b.l > a.l)
            .all(|b| b.binding > a.binding)
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub published: PublishedRow,
    pub system: WoodsSaxonSystem,
    pub n_prime: f64,
    /// Upper and lower roots of the energy quadratic.
    pub plus: BoundState,
    pub minus: BoundState,
    /// Roots of the unsquared quantization condition.
    pub scan: Vec<BoundState>,
    pub oracle: Option<OracleReport>,
}

impl ComparisonRow {
    /// Oracle eigenvalue closest to either quadratic root.
    pub fn oracle_energy(&self) -> Option<f64> {
        let report = self.oracle.as_ref()?;
        nearest_to_pair(&report.eigenvalues, self.plus.energy, self.minus.energy)
    }
}

/// Recomputes every published configuration. `oracle = None` skips the
/// shooting solver.
pub fn published_comparison(
    constants: PhysicalConstants,
    oracle: Option<&OracleConfig>,
) -> Result<Vec<ComparisonRow>> {
    PUBLISHED_TABLE
        .iter()
        .map(|p| {
            let system = system_from_mass_number(&NuclearInput::new(p.mass_number), constants)?;
            let [plus, minus] = energy_roots(&system, p.n, p.l)?;
            let scan = solve_quantization_scan(&system, p.n, p.l, &ScanConfig::default());
            let oracle = oracle.map(|cfg| eigenvalues(&system, p.l, cfg)).transpose()?;
            Ok(ComparisonRow {
                published: *p,
                system,
                n_prime: plus.n_prime,
                plus,
                minus,
                scan,
                oracle,
            })
        })
        .collect()
}
