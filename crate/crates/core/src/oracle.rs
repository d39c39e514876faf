//! Shooting eigensolver for the Pekeris-approximated radial equation
//! `u'' + [-eps^2 + beta^2 g - gamma^2 g^2] u = 0`, `g = 1/(1 + e^t)`,
//! `t = (r - R0)/a`. Numerov from both ends, matched at `t = 0`; eigenvalues
//! are extrapolated from steps `h` and `h/2`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{logistic_tail, WoodsSaxonSystem};
use crate::spectrum::{
    admissible_window, allowed_radial_count, bound_state_ceiling, dimensionless_parameters,
    energy_roots, BoundState, DimensionlessParams, SpectrumTable,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum OracleDomain {
    /// `t` over the whole real line (`z` over `(0, 1)`), truncated to `[-L, L]`
    /// with asymptotic starts at both ends.
    Mathematical,
    /// `r >= 0` with `u(0) = 0`, i.e. `t` in `[-R0/a, L]`.
    Physical,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleConfig {
    pub domain: OracleDomain,
    /// Right end `L` of the `t` interval, and the left end `-L` on the
    /// mathematical domain.
    pub half_width: f64,
    /// Numerov step in `t`.
    pub step: f64,
    pub scan_points: usize,
    /// Bisection stops once the bracket is narrower than this (MeV).
    pub refine_tol: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            domain: OracleDomain::Mathematical,
            half_width: 40.0,
            step: 1e-3,
            scan_points: 20_000,
            refine_tol: 1e-9,
        }
    }
}

impl OracleConfig {
    pub fn physical() -> Self {
        Self {
            domain: OracleDomain::Physical,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.step > 0.0 && self.step.is_finite()) {
            return Err(Error::InvalidParameter(format!("oracle step must be positive, got {}", self.step)));
        }
        if !(self.half_width > 0.0 && self.half_width.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "oracle half-width must be positive, got {}",
                self.half_width
            )));
        }
        if self.scan_points < 100 {
            return Err(Error::InvalidParameter(format!(
                "oracle needs at least 100 scan points, got {}",
                self.scan_points
            )));
        }
        if !(self.refine_tol > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "refine tolerance must be positive, got {}",
                self.refine_tol
            )));
        }
        Ok(())
    }
}

/// Profile `g(t_i)` on a uniform grid that contains `t = 0`.
struct Grid {
    h: f64,
    g: Vec<f64>,
    g2: Vec<f64>,
    /// Index of `t = 0`.
    zero: usize,
    domain: OracleDomain,
}

impl Grid {
    fn new(system: &WoodsSaxonSystem, config: &OracleConfig) -> Result<Self> {
        config.validate()?;
        Ok(Self::with_step(system, config, config.step))
    }

    /// Same interval at exactly half the step.
    fn halved(&self, system: &WoodsSaxonSystem, config: &OracleConfig) -> Self {
        Self::with_step(system, config, 0.5 * self.h)
    }

    fn with_step(system: &WoodsSaxonSystem, config: &OracleConfig, step: f64) -> Self {
        let l = config.half_width;
        let (h, left, right) = match config.domain {
            OracleDomain::Mathematical => {
                let n = (l / step).round().max(2.0) as usize;
                (l / n as f64, n, n)
            }
            OracleDomain::Physical => {
                let alpha = system.alpha();
                let n = (alpha / step).round().max(2.0) as usize;
                let h = alpha / n as f64;
                (h, n, (l / h).ceil().max(2.0) as usize)
            }
        };
        let g: Vec<f64> = (0..=left + right)
            .map(|i| logistic_tail((i as f64 - left as f64) * h))
            .collect();
        let g2 = g.iter().map(|x| x * x).collect();
        Self {
            h,
            g,
            g2,
            zero: left,
            domain: config.domain,
        }
    }

    /// Numerov in `y = c u`, `c = 1 + h^2 w/12`, carried in difference form
    /// `d_{i+1} = d_i - 12 (c_i - 1)/c_i y_i`, `y_{i+1} = y_i + d_{i+1}` so the
    /// `O(h^2)` coupling is not swamped by roundoff.
    /// Runs `steps` steps along `index(0), index(1), ...` for `N` parameter
    /// sets at once and returns `u` at the last two nodes. The lanes are
    /// independent recurrences, so interleaving them hides latency.
    fn shoot<const N: usize>(
        &self,
        p: &[DimensionlessParams; N],
        index: impl Fn(usize) -> usize,
        steps: usize,
        u0: [f64; N],
        u1: [f64; N],
    ) -> ([f64; N], [f64; N]) {
        let h12 = self.h * self.h / 12.0;
        let e = p.map(|q| -q.eps2 * h12);
        let b = p.map(|q| q.beta2 * h12);
        let g = p.map(|q| -q.gamma2 * h12);
        let cm1 = |lane: usize, i: usize| e[lane] + b[lane] * self.g[i] + g[lane] * self.g2[i];
        let (i0, i1) = (index(0), index(1));
        let y0: [f64; N] = std::array::from_fn(|k| (1.0 + cm1(k, i0)) * u0[k]);
        let mut y: [f64; N] = std::array::from_fn(|k| (1.0 + cm1(k, i1)) * u1[k]);
        let mut d: [f64; N] = std::array::from_fn(|k| y[k] - y0[k]);
        for j in 1..steps {
            let i = index(j);
            let (gi, g2i) = (self.g[i], self.g2[i]);
            let mut big = false;
            for k in 0..N {
                let c = e[k] + b[k] * gi + g[k] * g2i;
                d[k] -= 12.0 * c / (1.0 + c) * y[k];
                y[k] += d[k];
                big |= y[k].abs() > 1e100;
            }
            if big {
                for k in 0..N {
                    if y[k].abs() > 1e100 {
                        y[k] *= 1e-100;
                        d[k] *= 1e-100;
                    }
                }
            }
        }
        let (ia, ib) = (index(steps - 1), index(steps));
        (
            std::array::from_fn(|k| (y[k] - d[k]) / (1.0 + cm1(k, ia))),
            std::array::from_fn(|k| y[k] / (1.0 + cm1(k, ib))),
        )
    }

    /// Normalized Wronskian of the left and right solutions at `t = 0` for
    /// `N` parameter sets. Sets without a decaying left start come back as
    /// errors.
    fn mismatch<const N: usize>(&self, p: &[DimensionlessParams; N]) -> [Result<f64>; N] {
        let h = self.h;
        let last = self.g.len() - 1;
        let starts: [Result<(f64, f64)>; N] = std::array::from_fn(|k| match self.domain {
            OracleDomain::Mathematical => {
                let q2 = p[k].q2();
                if q2 > 0.0 {
                    Ok((1.0, (q2.sqrt() * h).exp()))
                } else {
                    Err(Error::Domain(format!(
                        "eps^2 - beta^2 + gamma^2 = {q2:e}: no decaying start at t -> -inf"
                    )))
                }
            }
            OracleDomain::Physical => Ok((0.0, h)),
        });
        let u0 = std::array::from_fn(|k| starts[k].as_ref().map_or(0.0, |s| s.0));
        let u1 = std::array::from_fn(|k| starts[k].as_ref().map_or(h, |s| s.1));
        // Left: nodes 0 ..= zero + 1, ending at (t = 0, t = h).
        let (l0, l1) = self.shoot(p, |j| j, self.zero + 1, u0, u1);
        // Right: nodes last down to zero, ending at (t = h, t = 0).
        let v1 = p.map(|q| (q.eps2.sqrt() * h).exp());
        let (r1, r0) = self.shoot(p, |j| last - j, last - self.zero, [1.0; N], v1);
        std::array::from_fn(|k| {
            starts[k].clone()?;
            let norm = l0[k].hypot(l1[k]) * r0[k].hypot(r1[k]);
            Ok((l0[k] * r1[k] - l1[k] * r0[k]) / norm)
        })
    }
}

fn residual_at(grid: &Grid, system: &WoodsSaxonSystem, l: u32, energy: f64) -> Result<f64> {
    let p = dimensionless_parameters(system, energy, l);
    if !(p.eps2 > 0.0) {
        return Err(Error::NonDecaying {
            energy,
            eps2: p.eps2,
        });
    }
    let [r] = grid.mismatch(&[p]);
    r
}

const LANES: usize = 8;

/// Residuals at many energies, `LANES` at a time.
fn residuals_batched(grid: &Grid, system: &WoodsSaxonSystem, l: u32, energies: &[f64]) -> Vec<Result<f64>> {
    let mut out = Vec::with_capacity(energies.len());
    for chunk in energies.chunks(LANES) {
        let params: [DimensionlessParams; LANES] =
            std::array::from_fn(|k| dimensionless_parameters(system, chunk[k.min(chunk.len() - 1)], l));
        let res = grid.mismatch(&params);
        for (k, &e) in chunk.iter().enumerate() {
            out.push(if params[k].eps2 > 0.0 {
                res[k].clone()
            } else {
                Err(Error::NonDecaying {
                    energy: e,
                    eps2: params[k].eps2,
                })
            });
        }
    }
    out
}

/// Mismatch between the solutions started at the two boundaries, measured
/// at `t = 0`. Zero exactly at eigenvalues of the discretized problem.
pub fn matching_residual(system: &WoodsSaxonSystem, l: u32, energy: f64, config: &OracleConfig) -> Result<f64> {
    let grid = Grid::new(system, config)?;
    residual_at(&grid, system, l, energy)
}

fn bisect(grid: &Grid, system: &WoodsSaxonSystem, l: u32, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    let (mut a, mut b) = (lo, hi);
    let mut fa = residual_at(grid, system, l, a)?;
    let fb = residual_at(grid, system, l, b)?;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Domain(format!("no sign change of the matching residual on [{lo}, {hi}]")));
    }
    while b - a > tol {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = residual_at(grid, system, l, mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

/// Bisects on the grid and on its halved copy, then removes the leading
/// `h^4` Numerov error: `E = E_{h/2} + (E_{h/2} - E_h)/15`.
fn refine(
    grid: &Grid,
    fine: &Grid,
    system: &WoodsSaxonSystem,
    l: u32,
    (lo, hi): (f64, f64),
    tol: f64,
) -> Result<f64> {
    let coarse = bisect(grid, system, l, lo, hi, tol)?;
    match bisect(fine, system, l, lo, hi, tol) {
        Ok(e) => Ok(e + (e - coarse) / 15.0),
        Err(err) => {
            log::warn!("no extrapolation for the root near {coarse} MeV: {err}");
            Ok(coarse)
        }
    }
}

/// Refines a single eigenvalue inside a bracket `[lo, hi]` whose ends have
/// opposite residual signs.
pub fn refine_eigenvalue(
    system: &WoodsSaxonSystem,
    l: u32,
    lo: f64,
    hi: f64,
    config: &OracleConfig,
) -> Result<f64> {
    let grid = Grid::new(system, config)?;
    let fine = grid.halved(system, config);
    refine(&grid, &fine, system, l, (lo, hi), config.refine_tol)
}

/// Energy window the oracle scans for a given domain, ends nudged inward.
pub fn scan_window(system: &WoodsSaxonSystem, l: u32, domain: OracleDomain) -> Option<(f64, f64)> {
    let (lo, hi) = match domain {
        OracleDomain::Mathematical => admissible_window(system, l)?,
        OracleDomain::Physical => {
            let e = bound_state_ceiling(system, l);
            (-e, e)
        }
    };
    let nudge = 1e-9 * (hi - lo).max(hi.abs().max(lo.abs()) * 1e-6);
    let (lo, hi) = (lo + nudge, hi - nudge);
    (lo < hi).then_some((lo, hi))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MatchedPair {
    pub analytic: f64,
    pub oracle: f64,
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub l: u32,
    pub domain: OracleDomain,
    /// Strictly increasing.
    pub eigenvalues: Vec<f64>,
    /// Scan interval that bracketed each eigenvalue.
    pub brackets: Vec<(f64, f64)>,
    /// Valid analytic states paired with an eigenvalue within 1e-4 MeV.
    pub analytic_deltas: Vec<MatchedPair>,
    /// Valid analytic energies with no eigenvalue nearby.
    pub unmatched_analytic: Vec<f64>,
    /// Eigenvalues with no valid analytic state nearby.
    pub unmatched_oracle: Vec<f64>,
}

/// Tolerance for pairing oracle eigenvalues with analytic states (MeV).
pub const PAIRING_TOL: f64 = 1e-4;

fn valid_analytic_states(system: &WoodsSaxonSystem, l: u32) -> Vec<BoundState> {
    let count = allowed_radial_count(system, l).unwrap_or(0);
    (0..count)
        .filter_map(|n| energy_roots(system, n, l).ok())
        .flatten()
        .filter(|s| s.valid)
        .collect()
}

/// Greedy nearest-energy pairing; returns (pairs, unmatched left, unmatched right).
fn pair_energies(left: &[f64], right: &[f64], tol: f64) -> (Vec<(usize, usize)>, Vec<usize>, Vec<usize>) {
    let mut candidates: Vec<(f64, usize, usize)> = Vec::new();
    for (i, a) in left.iter().enumerate() {
        for (j, b) in right.iter().enumerate() {
            let d = (a - b).abs();
            if d <= tol {
                candidates.push((d, i, j));
            }
        }
    }
    candidates.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut used_l = vec![false; left.len()];
    let mut used_r = vec![false; right.len()];
    let mut pairs = Vec::new();
    for (_, i, j) in candidates {
        if !used_l[i] && !used_r[j] {
            used_l[i] = true;
            used_r[j] = true;
            pairs.push((i, j));
        }
    }
    pairs.sort();
    let free_l = (0..left.len()).filter(|&i| !used_l[i]).collect();
    let free_r = (0..right.len()).filter(|&j| !used_r[j]).collect();
    (pairs, free_l, free_r)
}

pub fn eigenvalues(system: &WoodsSaxonSystem, l: u32, config: &OracleConfig) -> Result<OracleReport> {
    let grid = Grid::new(system, config)?;
    let mut fine: Option<Grid> = None;
    let mut eigen = Vec::new();
    let mut brackets = Vec::new();
    if let Some((lo, hi)) = scan_window(system, l, config.domain) {
        let n = config.scan_points;
        let energy = |i: usize| if i == n { hi } else { lo + (hi - lo) * i as f64 / n as f64 };
        let energies: Vec<f64> = (0..=n).map(energy).collect();
        let residuals = residuals_batched(&grid, system, l, &energies);
        let mut prev: Option<(f64, f64)> = None;
        for (&e, f) in energies.iter().zip(residuals) {
            let Ok(f) = f else {
                prev = None;
                continue;
            };
            if let Some((e0, f0)) = prev {
                if f0 != 0.0 && f != 0.0 && f0.signum() != f.signum() {
                    let fine = fine.get_or_insert_with(|| grid.halved(system, config));
                    let root = refine(&grid, fine, system, l, (e0, e), config.refine_tol)?;
                    eigen.push(root);
                    brackets.push((e0, e));
                } else if f == 0.0 {
                    eigen.push(e);
                    brackets.push((e0, e));
                }
            }
            prev = Some((e, f));
        }
    }
    log::debug!("oracle l = {l} ({:?}): {} eigenvalue(s)", config.domain, eigen.len());

    let analytic: Vec<f64> = valid_analytic_states(system, l).iter().map(|s| s.energy).collect();
    let (pairs, free_a, free_o) = pair_energies(&analytic, &eigen, PAIRING_TOL);
    Ok(OracleReport {
        l,
        domain: config.domain,
        analytic_deltas: pairs
            .iter()
            .map(|&(i, j)| MatchedPair {
                analytic: analytic[i],
                oracle: eigen[j],
                delta: (analytic[i] - eigen[j]).abs(),
            })
            .collect(),
        unmatched_analytic: free_a.iter().map(|&i| analytic[i]).collect(),
        unmatched_oracle: free_o.iter().map(|&j| eigen[j]).collect(),
        eigenvalues: eigen,
        brackets,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StateClass {
    /// A numerical eigenvalue lies within tolerance.
    Confirmed,
    /// Flagged invalid and absent from the numerical spectrum.
    SpuriousQuadraticRoot,
    /// Flagged valid but absent from the numerical spectrum.
    Unconfirmed,
    /// Flagged invalid yet a numerical eigenvalue lies within tolerance.
    InvalidButMatched,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassifiedState {
    pub state: BoundState,
    pub class: StateClass,
    pub oracle_energy: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumComparison {
    pub l: u32,
    pub states: Vec<ClassifiedState>,
    /// Oracle eigenvalues without an analytic partner.
    pub missed: Vec<f64>,
}

impl SpectrumComparison {
    pub fn max_delta(&self) -> f64 {
        self.states
            .iter()
            .filter_map(|c| c.oracle_energy.map(|e| (e - c.state.energy).abs()))
            .fold(0.0, f64::max)
    }
}

/// Pairs the `l = oracle.l` rows of `analytic` with oracle eigenvalues by
/// nearest energy within `tol`.
pub fn compare_spectra(analytic: &SpectrumTable, oracle: &OracleReport, tol: f64) -> SpectrumComparison {
    let rows: Vec<BoundState> = analytic.rows.iter().filter(|s| s.l == oracle.l).copied().collect();
    let energies: Vec<f64> = rows.iter().map(|s| s.energy).collect();
    let (pairs, _, free_o) = pair_energies(&energies, &oracle.eigenvalues, tol);
    let states = rows
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let partner = pairs.iter().find(|p| p.0 == i).map(|p| oracle.eigenvalues[p.1]);
            let class = match (s.valid, partner.is_some()) {
                (true, true) => StateClass::Confirmed,
                (true, false) => StateClass::Unconfirmed,
                (false, false) => StateClass::SpuriousQuadraticRoot,
                (false, true) => StateClass::InvalidButMatched,
            };
            ClassifiedState {
                state: *s,
                class,
                oracle_energy: partner,
            }
        })
        .collect();
    SpectrumComparison {
        l: oracle.l,
        states,
        missed: free_o.iter().map(|&j| oracle.eigenvalues[j]).collect(),
    }
}
