//! Acceptance checks 1 to 11. Each runs standalone, times itself and reports
//! a one-line detail. `verify` and the acceptance test target share them.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, ExistenceCondition, Result};
use crate::model::{system_from_mass_number, NuclearInput, PhysicalConstants, WoodsSaxonSystem};
use crate::nu::{nu_lambda_n, nu_select_branch, NUProblem};
use crate::oracle::{eigenvalues, refine_eigenvalue, OracleConfig};
use crate::output::{format_number, Format, SpectrumDocument, SPECTRUM_HEADER};
use crate::pekeris::pekeris_coefficients;
use crate::reference::{published_comparison, published_monotone_in_l, PUBLISHED_TABLE};
use crate::spectrum::{
    allowed_radial_count, closed_form_roots, depth_window, energy_nonrelativistic, energy_roots,
    enumerate_spectrum, quadratic_roots, solve_quantization_scan, BoundState, ExclusionReason,
    ScanConfig, RESIDUAL_TOL,
};
use crate::wavefunction::{
    jacobi, normalization_constant, normalization_integral, radial_u_unnormalized,
    QuadratureConfig, WavefunctionSpec,
};

const SEED: u64 = 0x5eed_0f_3a11;

#[derive(Debug, Clone, Serialize)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_s: f64,
    pub budget_s: f64,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!(
            "{} [{:>2}] {} ({:.2} s of {:.0} s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed_s,
            self.budget_s,
            self.detail
        )
    }
}

type Check = fn() -> (bool, String);

pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    pub budget: Duration,
    check: Check,
}

impl Criterion {
    pub fn run(&self) -> Outcome {
        let start = Instant::now();
        let (ok, mut detail) = self.check();
        let elapsed = start.elapsed();
        let in_budget = elapsed <= self.budget;
        if !in_budget {
            detail.push_str("; over runtime budget");
        }
        Outcome {
            id: self.id,
            name: self.name,
            passed: ok && in_budget,
            detail,
            elapsed_s: elapsed.as_secs_f64(),
            budget_s: self.budget.as_secs_f64(),
        }
    }

    fn check(&self) -> (bool, String) {
        (self.check)()
    }
}

const fn criterion(id: u8, name: &'static str, secs: u64, check: Check) -> Criterion {
    Criterion {
        id,
        name,
        budget: Duration::from_secs(secs),
        check,
    }
}

pub const CRITERIA: [Criterion; 11] = [
    criterion(1, "pekeris sum rules", 1, pekeris_sum_rules),
    criterion(2, "NU branch consistency", 5, nu_consistency),
    criterion(3, "closed form vs quadratic", 5, closed_form_vs_quadratic),
    criterion(4, "published table comparison", 120, published_table),
    criterion(5, "quantization root certification", 60, root_certification),
    criterion(6, "shooting oracle agreement", 300, oracle_agreement),
    criterion(7, "jacobi vs rodrigues", 10, jacobi_vs_rodrigues),
    criterion(8, "wavefunction ODE residual", 10, ode_residual),
    criterion(9, "normalization", 10, normalization),
    criterion(10, "nonrelativistic limit", 30, nonrelativistic_limit),
    criterion(11, "existence windows", 1, existence_windows),
];

pub fn criterion_by_id(id: u8) -> Option<&'static Criterion> {
    CRITERIA.iter().find(|c| c.id == id)
}

pub fn run_all() -> Vec<Outcome> {
    CRITERIA
        .iter()
        .map(|c| {
            let o = c.run();
            log::info!("{}", o.line());
            o
        })
        .collect()
}

fn synthetic(depth: f64, radius: f64, diffuseness: f64, rest_energy: f64) -> WoodsSaxonSystem {
    WoodsSaxonSystem::new(depth, radius, diffuseness, rest_energy, PhysicalConstants::default())
        .expect("synthetic system parameters are valid")
}

/// Hand-picked wells with valid states, with the `l` values that have them.
fn synthetic_cases() -> Vec<(WoodsSaxonSystem, Vec<u32>)> {
    vec![
        (synthetic(40.0, 2.5, 1.0, 139.57), (1..=4).collect()),
        (synthetic(30.0, 5.0, 1.0, 500.0), vec![3]),
        (synthetic(20.0, 4.0, 1.0, 938.0), vec![8]),
        (synthetic(10.0, 4.0, 1.0, 938.0), vec![2]),
        (synthetic(60.0, 5.0, 1.0, 139.57), vec![3, 4]),
    ]
}

fn table_systems() -> Vec<WoodsSaxonSystem> {
    PUBLISHED_TABLE
        .iter()
        .map(|p| {
            system_from_mass_number(&NuclearInput::new(p.mass_number), PhysicalConstants::default())
                .expect("published mass numbers are valid")
        })
        .collect()
}

fn valid_states(system: &WoodsSaxonSystem, l: u32) -> Vec<BoundState> {
    let count = allowed_radial_count(system, l).unwrap_or(0);
    (0..count)
        .filter_map(|n| energy_roots(system, n, l).ok())
        .flatten()
        .filter(|s| s.valid)
        .collect()
}

/// A random well and `(n, l)` with real quadratic roots.
fn random_admissible(rng: &mut ChaCha8Rng) -> (WoodsSaxonSystem, u32, u32) {
    loop {
        let radius = rng.gen_range(2.0..8.0);
        let diffuseness = rng.gen_range(0.3..1.2_f64).min(radius / 3.0);
        let Ok(system) = WoodsSaxonSystem::new(
            rng.gen_range(5.0..80.0),
            radius,
            diffuseness,
            rng.gen_range(100.0..1000.0),
            PhysicalConstants::default(),
        ) else {
            continue;
        };
        let l = rng.gen_range(1..=8);
        let count = allowed_radial_count(&system, l).unwrap_or(0);
        if count == 0 {
            continue;
        }
        let n = rng.gen_range(0..count);
        if energy_roots(&system, n, l).is_ok() && quadratic_roots(&system, n, l).is_ok() {
            return (system, n, l);
        }
    }
}

fn pekeris_sum_rules() -> (bool, String) {
    let mut worst: f64 = 0.0;
    for alpha in [3.0, 6.76092, 10.0, 100.0] {
        let c = match pekeris_coefficients(alpha) {
            Ok(c) => c,
            Err(e) => return (false, format!("alpha = {alpha}: {e}")),
        };
        worst = worst
            .max((c.c0 + c.c1 / 2.0 + c.c2 / 4.0 - 1.0).abs())
            .max((c.c1 + c.c2 - 8.0 / alpha).abs())
            .max((c.c2 - 48.0 / (alpha * alpha)).abs());
    }
    (worst <= 1e-12, format!("max deviation {worst:.2e} over 4 alpha values"))
}

fn nu_consistency() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let eps: f64 = rng.gen_range(0.01..3.0);
        let q: f64 = rng.gen_range(0.01..3.0);
        let gamma2: f64 = rng.gen_range(0.0..5.0);
        let beta2 = eps * eps + gamma2 - q * q;
        let problem = NUProblem::woods_saxon(eps * eps, beta2, gamma2);
        let branch = match nu_select_branch(&problem) {
            Ok(b) => b,
            Err(e) => return (false, format!("(eps, q, gamma^2) = ({eps}, {q}, {gamma2}): {e}")),
        };
        let expected = [
            (branch.pi.intercept, eps),
            (branch.pi.slope, -(eps + q)),
            (branch.tau.intercept, 1.0 + 2.0 * eps),
            (branch.tau.slope, -2.0 * (1.0 + eps + q)),
            (branch.k, beta2 - 2.0 * eps * eps - 2.0 * eps * q),
            (branch.lambda, beta2 - 2.0 * eps * eps - 2.0 * eps * q - eps - q),
        ];
        for (got, want) in expected {
            worst = worst.max((got - want).abs() / want.abs().max(1.0));
        }
        let n = rng.gen_range(0..6u32);
        let nf = f64::from(n);
        let want = 2.0 * nf * (1.0 + eps + q) + nf * (nf - 1.0);
        worst = worst.max((nu_lambda_n(&branch, &problem, n) - want).abs() / want.max(1.0));
    }
    (worst <= 1e-10, format!("1000 draws, max relative deviation {worst:.2e}"))
}

fn closed_form_vs_quadratic() -> (bool, String) {
    let mut cases: Vec<(WoodsSaxonSystem, u32, u32)> = table_systems()
        .into_iter()
        .zip(PUBLISHED_TABLE.iter())
        .map(|(s, p)| (s, p.n, p.l))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    cases.extend((0..100).map(|_| random_admissible(&mut rng)));
    let mut worst: f64 = 0.0;
    for (system, n, l) in &cases {
        let (Ok(closed), Ok(quad)) = (closed_form_roots(system, *n, *l), quadratic_roots(system, *n, *l)) else {
            return (false, format!("no real roots for {system:?} n={n} l={l}"));
        };
        let scale = |e: f64| e.abs().max(system.rest_energy());
        worst = worst
            .max((closed.0 - quad.0).abs() / scale(quad.0))
            .max((closed.1 - quad.1).abs() / scale(quad.1));
    }
    (
        worst <= 1e-10,
        format!("{} configurations, max relative deviation {worst:.2e}", cases.len()),
    )
}

fn published_table() -> (bool, String) {
    let rows = match published_comparison(PhysicalConstants::default(), Some(&OracleConfig::default())) {
        Ok(r) => r,
        Err(e) => return (false, format!("comparison failed: {e}")),
    };
    let doc = SpectrumDocument::from_comparison(&rows);
    let mut csv = Vec::new();
    if let Err(e) = doc.write(Format::Csv, &mut csv) {
        return (false, format!("emission failed: {e}"));
    }
    let csv = String::from_utf8_lossy(&csv);
    let lines: Vec<&str> = csv.lines().collect();
    let emitted = lines.len() == 9
        && lines.iter().all(|l| l.split(',').count() == SPECTRUM_HEADER.len())
        && doc.rows.iter().all(|r| r.published_binding.is_some())
        && rows.iter().all(|r| r.oracle.is_some());

    let (mut worst_r, mut worst_v): (f64, f64) = (0.0, 0.0);
    for r in &rows {
        worst_r = worst_r.max((r.system.radius() - r.published.radius).abs());
        worst_v = worst_v.max((r.system.depth() - r.published.depth).abs());
    }
    let geometry = worst_r <= 1e-4 && worst_v <= 1e-4;

    // Computed valid energies, where any exist, must rise with l as the
    // published ones do.
    let mut computed_order = true;
    for a in &rows {
        for b in rows.iter().filter(|b| {
            b.published.mass_number == a.published.mass_number && b.published.n == a.published.n && b.published.l > a.published.l
        }) {
            for sa in [&a.plus, &a.minus].into_iter().filter(|s| s.valid) {
                for sb in [&b.plus, &b.minus].into_iter().filter(|s| s.valid && s.root_sign == sa.root_sign) {
                    computed_order &= sb.energy > sa.energy;
                }
            }
        }
    }
    let monotone = published_monotone_in_l();
    let valid = rows.iter().filter(|r| r.plus.valid || r.minus.valid).count();
    let scanned = rows.iter().filter(|r| !r.scan.is_empty()).count();
    let with_oracle = rows.iter().filter(|r| r.oracle_energy().is_some()).count();
    let worst_binding = rows
        .iter()
        .map(|r| {
            (r.plus.binding - r.published.binding)
                .abs()
                .min((r.minus.binding - r.published.binding).abs())
        })
        .fold(0.0, f64::max);
    (
        emitted && geometry && monotone && computed_order,
        format!(
            "8 rows emitted: {emitted}; max |dR0| {worst_r:.1e} fm, |dV0| {worst_v:.1e} MeV; published E_b monotone in l: {monotone}; \
             rows with a valid root {valid}/8, nonempty scans {scanned}/8, oracle eigenvalues in {with_oracle}/8; \
             closest root misses published E_b by up to {} MeV",
            format_number(worst_binding)
        ),
    )
}

fn root_certification() -> (bool, String) {
    let mut configs: Vec<(WoodsSaxonSystem, Vec<u32>)> = table_systems()
        .into_iter()
        .zip(PUBLISHED_TABLE.iter())
        .map(|(s, p)| (s, vec![p.l]))
        .collect();
    configs.extend(synthetic_cases());
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    let mut random = 0;
    let mut attempts = 0;
    while random < 5 && attempts < 100_000 {
        attempts += 1;
        let (system, _, l) = random_admissible(&mut rng);
        if !valid_states(&system, l).is_empty() {
            configs.push((system, vec![l]));
            random += 1;
        }
    }
    let mut states = 0;
    let (mut worst_res, mut worst_dist): (f64, f64) = (0.0, 0.0);
    for (system, ls) in &configs {
        for &l in ls {
            let count = allowed_radial_count(system, l).unwrap_or(0);
            for n in 0..count {
                let roots = closed_form_roots(system, n, l).ok();
                for s in solve_quantization_scan(system, n, l, &ScanConfig::default()) {
                    states += 1;
                    worst_res = worst_res.max(s.residual);
                    let dist = roots.map_or(f64::INFINITY, |(p, m)| {
                        (s.energy - p).abs().min((s.energy - m).abs())
                    });
                    worst_dist = worst_dist.max(dist);
                }
            }
        }
    }
    let synthetic_count = configs.len() - PUBLISHED_TABLE.len();
    (
        worst_res <= RESIDUAL_TOL && worst_dist <= 1e-8 && synthetic_count >= 10,
        format!(
            "{states} scanned states over 8 table rows and {synthetic_count} synthetic wells; \
             max residual {worst_res:.1e}, max distance to a quadratic root {worst_dist:.1e} MeV"
        ),
    )
}

fn oracle_agreement() -> (bool, String) {
    let cases = [
        (synthetic(40.0, 2.5, 1.0, 139.57), 1),
        (synthetic(40.0, 2.5, 1.0, 139.57), 2),
        (synthetic(30.0, 5.0, 1.0, 500.0), 3),
        (synthetic(10.0, 4.0, 1.0, 938.0), 2),
    ];
    let config = OracleConfig::default();
    let fine = OracleConfig {
        step: config.step / 2.0,
        ..config
    };
    let mut matched = 0;
    let mut ok = true;
    let (mut worst_rel, mut worst_shift): (f64, f64) = (0.0, 0.0);
    let mut extra = 0;
    for (system, l) in &cases {
        let report = match eigenvalues(system, *l, &config) {
            Ok(r) => r,
            Err(e) => return (false, format!("oracle failed for l = {l}: {e}")),
        };
        ok &= report.unmatched_analytic.is_empty();
        extra += report.unmatched_oracle.len();
        for pair in &report.analytic_deltas {
            matched += 1;
            worst_rel = worst_rel.max(pair.delta / pair.analytic.abs().max(1.0));
        }
        for (&e, &(lo, hi)) in report.eigenvalues.iter().zip(&report.brackets) {
            match refine_eigenvalue(system, *l, lo, hi, &fine) {
                Ok(e2) => worst_shift = worst_shift.max((e2 - e).abs()),
                Err(err) => return (false, format!("halved grid lost the root near {e} MeV: {err}")),
            }
        }
    }
    ok &= matched > 0 && worst_rel <= 1e-6 && worst_shift <= 1e-8;
    (
        ok,
        format!(
            "{matched} valid states matched on 3 wells, max |dE|/max(1,|E|) {worst_rel:.1e}; \
             grid-halving shift {worst_shift:.1e} MeV; {extra} oracle eigenvalue(s) without an analytic partner"
        ),
    )
}

fn falling(x: f64, k: u32) -> f64 {
    (0..k).map(|i| x - f64::from(i)).product()
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).map(|i| f64::from(n - i) / f64::from(i + 1)).product()
}

/// `P_n^(a,b)(1 - 2z)` from Rodrigues' formula with the `n`-th derivative of
/// `z^(n+a) (1-z)^(n+b)` expanded by Leibniz. Returns the value and the sum
/// of absolute terms.
fn rodrigues(n: u32, a: f64, b: f64, z: f64) -> (f64, f64) {
    let nf = f64::from(n);
    let fact: f64 = (1..=n).map(f64::from).product();
    let (mut sum, mut abs) = (0.0, 0.0);
    for j in 0..=n {
        let term = binomial(n, j)
            * falling(nf + a, n - j)
            * if j % 2 == 0 { 1.0 } else { -1.0 }
            * falling(nf + b, j)
            * z.powi(j as i32)
            * (1.0 - z).powi((n - j) as i32);
        sum += term;
        abs += term.abs();
    }
    (sum / fact, abs / fact)
}

fn jacobi_vs_rodrigues() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 7);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let n = rng.gen_range(0..=8u32);
        let a = rng.gen_range(-0.9..5.0);
        let b = rng.gen_range(-0.9..5.0);
        let x: f64 = rng.gen_range(-1.0..1.0);
        let got = match jacobi(n, a, b, x) {
            Ok(v) => v,
            Err(e) => return (false, e.to_string()),
        };
        let (want, scale) = rodrigues(n, a, b, 0.5 * (1.0 - x));
        worst = worst.max((got - want).abs() / scale.max(f64::MIN_POSITIVE));
    }
    (worst <= 1e-10, format!("1000 draws, n <= 8, max relative deviation {worst:.2e}"))
}

fn synthetic_valid_states() -> Vec<(WoodsSaxonSystem, BoundState)> {
    synthetic_cases()
        .into_iter()
        .flat_map(|(system, ls)| {
            ls.into_iter()
                .flat_map(move |l| valid_states(&system, l).into_iter().map(move |s| (system, s)))
        })
        .collect()
}

/// Second-order (`points = 3`) or fourth-order (`points = 5`) central
/// differences `(u', u'')` at `z`.
fn central_differences(u: impl Fn(f64) -> f64, z: f64, h: f64, points: u8) -> (f64, f64) {
    let (um, u0, up) = (u(z - h), u(z), u(z + h));
    if points == 3 {
        return ((up - um) / (2.0 * h), (up - 2.0 * u0 + um) / (h * h));
    }
    let (umm, upp) = (u(z - 2.0 * h), u(z + 2.0 * h));
    (
        (umm - 8.0 * um + 8.0 * up - upp) / (12.0 * h),
        (-umm + 16.0 * um - 30.0 * u0 + 16.0 * up - upp) / (12.0 * h * h),
    )
}

/// Largest relative residual of the radial equation in `z` over `points`.
fn worst_ode_residual(spec: &WavefunctionSpec, zs: &[f64], step: impl Fn(f64) -> f64, points: u8) -> f64 {
    let p = spec.state.params;
    let u = |z: f64| radial_u_unnormalized(spec, z).unwrap_or(f64::NAN);
    zs.iter()
        .map(|&z| {
            let (d1, d2) = central_differences(u, z, step(z), points);
            let sigma = z * (1.0 - z);
            let t1 = (1.0 - 2.0 * z) / sigma * d1;
            let t2 = (-p.eps2 + p.beta2 * z - p.gamma2 * z * z) / (sigma * sigma) * u(z);
            let rel = (d2 + t1 + t2).abs() / (d2.abs() + t1.abs() + t2.abs());
            if rel.is_nan() {
                f64::INFINITY
            } else {
                rel
            }
        })
        .fold(0.0, f64::max)
}

fn ode_residual() -> (bool, String) {
    // Three-point differences at 1e-5 leave ~4 ulp / h^2 of roundoff in u'',
    // which is 1e-5-level wherever the three terms nearly cancel. Five-point
    // differences allow a step of 1e-3, shrunk near the ends where u ~ z^eps.
    let step = |z: f64| (1e-2 * z.min(1.0 - z)).min(1e-3);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 8);
    let states = synthetic_valid_states();
    let (mut worst, mut worst_three): (f64, f64) = (0.0, 0.0);
    for (system, state) in &states {
        let spec = match WavefunctionSpec::new(system, state) {
            Ok(s) => s,
            Err(e) => return (false, e.to_string()),
        };
        let zs: Vec<f64> = (0..100).map(|_| rng.gen_range(0.01..0.99)).collect();
        worst = worst.max(worst_ode_residual(&spec, &zs, step, 5));
        worst_three = worst_three.max(worst_ode_residual(&spec, &zs, |_| 1e-5, 3));
    }
    (
        !states.is_empty() && worst <= 1e-6,
        format!(
            "{} valid states x 100 points, max relative residual {worst:.2e} with five-point differences \
             ({worst_three:.2e} with three-point differences at 1e-5)",
            states.len()
        ),
    )
}

fn normalization() -> (bool, String) {
    let states = synthetic_valid_states();
    let config = QuadratureConfig::default();
    let halved = QuadratureConfig {
        step: config.step / 2.0,
        ..config
    };
    let (mut worst_norm, mut worst_beta): (f64, f64) = (0.0, 0.0);
    let mut ground = 0;
    for (system, state) in &states {
        let run = || -> Result<(f64, Option<f64>)> {
            let mut spec = WavefunctionSpec::new(system, state)?;
            let c = normalization_constant(&mut spec, &config)?;
            let recheck = system.diffuseness() * c * c * normalization_integral(&spec, &halved)?;
            let beta = if state.n == 0 {
                let (a, b) = spec.jacobi_params();
                let exact = statrs::function::beta::ln_beta(a, b).exp();
                Some((normalization_integral(&spec, &config)? - exact).abs() / exact)
            } else {
                None
            };
            Ok(((recheck - 1.0).abs(), beta))
        };
        match run() {
            Ok((dn, beta)) => {
                worst_norm = worst_norm.max(dn);
                if let Some(db) = beta {
                    ground += 1;
                    worst_beta = worst_beta.max(db);
                }
            }
            Err(e) => return (false, format!("E = {} MeV: {e}", state.energy)),
        }
    }
    (
        !states.is_empty() && ground > 0 && worst_norm <= 1e-8 && worst_beta <= 1e-10,
        format!(
            "{} states: max |norm - 1| {worst_norm:.1e} on a halved grid; {ground} n=0 states, max Beta relative deviation {worst_beta:.1e}",
            states.len()
        ),
    )
}

/// `|E_rel(kappa) - kappa^2 m - E_nr|` for `n = 0` using the root closest to
/// the scaled rest energy.
fn nonrel_gap(base: &WoodsSaxonSystem, l: u32, kappa: f64, e_nr: f64) -> Result<f64> {
    let scaled = base.with_light_speed_scaled(kappa)?;
    let m = scaled.rest_energy();
    let (plus, minus) = closed_form_roots(&scaled, 0, l)?;
    let e = if (plus - m).abs() <= (minus - m).abs() { plus } else { minus };
    Ok((e - m - e_nr).abs())
}

fn nonrelativistic_limit() -> (bool, String) {
    let cases = [
        (synthetic(10.0, 4.0, 1.0, 938.0), 2),
        (synthetic(5.0, 4.0, 1.0, 938.0), 1),
        (synthetic(20.0, 4.0, 1.0, 500.0), 3),
    ];
    let mut ratios = Vec::new();
    for (system, l) in &cases {
        let run = || -> Result<f64> {
            let e_nr = energy_nonrelativistic(system, 0, *l)?;
            Ok(nonrel_gap(system, *l, 10.0, e_nr)? / nonrel_gap(system, *l, 20.0, e_nr)?)
        };
        match run() {
            Ok(r) => ratios.push(r),
            Err(e) => return (false, format!("V0 = {} l = {l}: {e}", system.depth())),
        }
    }
    let ok = ratios.len() >= 2 && ratios.iter().all(|r| (3.5..=4.5).contains(r));
    let shown: Vec<String> = ratios.iter().map(|r| format!("{r:.4}")).collect();
    (ok, format!("gap ratios at kappa 10/20: [{}]", shown.join(", ")))
}

fn existence_windows() -> (bool, String) {
    let s40 = match system_from_mass_number(&NuclearInput::new(40), PhysicalConstants::default()) {
        Ok(s) => s,
        Err(e) => return (false, e.to_string()),
    };
    let zero_l = enumerate_spectrum(&s40, 0);
    let radial = ExclusionReason::Condition(ExistenceCondition::RadialCount);
    let l0_ok = zero_l.rows.is_empty()
        && zero_l.diagnostics.iter().any(|d| d.l == 0 && d.reason == radial)
        && energy_roots(&s40, 0, 0) == Err(Error::NoBoundState(ExistenceCondition::RadialCount));

    let window = depth_window(s40.radius(), s40.diffuseness(), s40.hbar_c(), 1);
    let deep = match WoodsSaxonSystem::new(
        2.0 * window.upper,
        s40.radius(),
        s40.diffuseness(),
        s40.rest_energy(),
        s40.constants(),
    ) {
        Ok(s) => s,
        Err(e) => return (false, e.to_string()),
    };
    let deep_table = enumerate_spectrum(&deep, 1);
    let depth = ExclusionReason::Condition(ExistenceCondition::DepthWindow);
    let deep_ok = deep_table.rows.is_empty()
        && deep_table.diagnostics.iter().any(|d| d.l == 1 && d.reason == depth)
        && energy_roots(&deep, 0, 1) == Err(Error::NoBoundState(ExistenceCondition::DepthWindow));
    (
        l0_ok && deep_ok,
        format!(
            "l = 0: empty with radial-count diagnostic: {l0_ok}; V0 = 2 x {:.4} MeV: empty with depth-window diagnostic: {deep_ok}",
            window.upper
        ),
    )
}
