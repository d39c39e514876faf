//! `wskg` command line: argument parsing, dispatch and exit codes.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::acceptance::{criterion_by_id, CRITERIA};
use crate::error::{Error, Result};
use crate::model::{
    system_from_mass_number, NuclearInput, PhysicalConstants, WoodsSaxonSystem, HBAR_C_CODATA,
    PION_REST_ENERGY,
};
use crate::oracle::{eigenvalues, OracleConfig, OracleDomain};
use crate::output::{
    round_sig10, write_json, write_nonrel, Format, NonrelRow, SpectrumDocument,
    WavefunctionDocument, WavefunctionRow,
};
use crate::reference::published_comparison;
use crate::spectrum::{energy_nonrelativistic, energy_roots, enumerate_spectrum, BoundState};
use crate::wavefunction::{
    normalization_constant, physical_domain_integral, sample_wavefunction, QuadratureConfig,
    WavefunctionSpec,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_ERROR: u8 = 1;
pub const EXIT_VERIFY_FAILED: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "wskg",
    version,
    about = "Klein-Gordon bound states of a spin-0 particle in a Woods-Saxon well"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// hbar c in MeV fm
    #[arg(long, global = true, env = "WSKG_HBAR_C", default_value_t = HBAR_C_CODATA)]
    pub hbar_c: f64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Write to this file instead of standard output
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Both energy roots for every admissible (n, l) up to --l-max
    Spectrum {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, default_value_t = 3)]
        l_max: u32,
        /// Fill the oracle column with the nearest shooting eigenvalue
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_enum, default_value_t = OracleDomain::Mathematical)]
        oracle_domain: OracleDomain,
    },
    /// Published bound states next to recomputed roots and oracle eigenvalues
    Table1 {
        #[arg(long)]
        no_oracle: bool,
        #[arg(long, value_enum, default_value_t = OracleDomain::Mathematical)]
        oracle_domain: OracleDomain,
    },
    /// Normalized radial function u(r) of one valid state
    Wavefunction {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        l: u32,
        /// Which quadratic root; defaults to the valid one inside (-m0c2, m0c2)
        #[arg(long, value_enum)]
        root: Option<Root>,
        #[arg(long, default_value_t = 200)]
        points: usize,
        /// Largest radius in fm
        #[arg(long)]
        r_max: Option<f64>,
    },
    /// Run the acceptance checks; exit 2 if any fails
    Verify {
        /// Run only these criteria
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
    /// Nonrelativistic energies for every (n, l) up to --l-max
    Nonrel {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, default_value_t = 3)]
        l_max: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Root {
    Plus,
    Minus,
}

/// Either `--A` (with optional `--r0`, `--a`, `--m0c2`) or explicit
/// `--V0 --R0` (with optional `--a`, `--m0c2`).
#[derive(Debug, Args)]
pub struct SystemArgs {
    /// Mass number
    #[arg(long = "A", allow_negative_numbers = true)]
    pub mass_number: Option<i64>,
    /// Radius constant in fm, R0 = r0 A^(1/3)
    #[arg(long = "r0")]
    pub radius_constant: Option<f64>,
    /// Depth in MeV
    #[arg(long = "V0", allow_negative_numbers = true)]
    pub depth: Option<f64>,
    /// Radius in fm
    #[arg(long = "R0", allow_negative_numbers = true)]
    pub radius: Option<f64>,
    /// Diffuseness in fm [default: 0.65]
    #[arg(long = "a", allow_negative_numbers = true)]
    pub diffuseness: Option<f64>,
    /// Rest energy in MeV [default: 139.57]
    #[arg(long = "m0c2", allow_negative_numbers = true)]
    pub rest_energy: Option<f64>,
}

impl SystemArgs {
    fn resolve(&self, constants: PhysicalConstants) -> Result<(WoodsSaxonSystem, Option<u32>)> {
        let explicit = self.depth.is_some() || self.radius.is_some();
        match (self.mass_number, explicit) {
            (Some(_), true) => Err(Error::InvalidParameter(
                "give either --A or --V0/--R0, not both".into(),
            )),
            (None, false) => Err(Error::InvalidParameter(
                "a system is required: --A, or --V0 with --R0".into(),
            )),
            (Some(a), false) => {
                let a = u32::try_from(a)
                    .ok()
                    .filter(|&a| a >= 1)
                    .ok_or_else(|| Error::InvalidParameter("mass number must be ≥ 1".into()))?;
                let mut input = NuclearInput::new(a);
                if let Some(r0) = self.radius_constant {
                    input.radius_constant = r0;
                }
                if let Some(d) = self.diffuseness {
                    input.diffuseness = d;
                }
                if let Some(m) = self.rest_energy {
                    input.rest_energy = m;
                }
                Ok((system_from_mass_number(&input, constants)?, Some(a)))
            }
            (None, true) => {
                if self.radius_constant.is_some() {
                    return Err(Error::InvalidParameter("--r0 only applies with --A".into()));
                }
                let (Some(v0), Some(r0)) = (self.depth, self.radius) else {
                    return Err(Error::InvalidParameter("--V0 and --R0 must be given together".into()));
                };
                let system = WoodsSaxonSystem::new(
                    v0,
                    r0,
                    self.diffuseness.unwrap_or(NuclearInput::DEFAULT_DIFFUSENESS),
                    self.rest_energy.unwrap_or(PION_REST_ENERGY),
                    constants,
                )?;
                Ok((system, None))
            }
        }
    }
}

/// Parses `args` and runs the command. Returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            report_error(&e, cli.format);
            EXIT_ERROR
        }
    }
}

fn report_error(e: &Error, format: Format) {
    let mut stderr = std::io::stderr().lock();
    match format {
        Format::Csv => {
            let _ = writeln!(stderr, "error: {e}");
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Body<'a> {
                kind: &'a str,
                message: String,
            }
            #[derive(Serialize)]
            struct Doc<'a> {
                error: Body<'a>,
            }
            let doc = Doc {
                error: Body {
                    kind: error_kind(e),
                    message: e.to_string(),
                },
            };
            let _ = write_json(&doc, &mut stderr);
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidParameter(_) => "invalid-parameter",
        Error::Domain(_) => "domain",
        Error::DegenerateProblem
        | Error::NotPerfectSquare { .. }
        | Error::NoValidBranch
        | Error::AmbiguousBranch { .. } => "nu-branch",
        Error::NoBoundState(_) => "no-bound-state",
        Error::NoRealRoot(_) => "no-real-root",
        Error::NonNormalizable(_) => "non-normalizable",
        Error::NonDecaying { .. } => "non-decaying",
        Error::InvalidState => "invalid-state",
        Error::Io(_) => "io",
    }
}

pub fn run(cli: &Cli) -> Result<u8> {
    let constants = PhysicalConstants::new(cli.hbar_c)?;
    let mut buf: Vec<u8> = Vec::new();
    let code = match &cli.command {
        Command::Spectrum {
            system,
            l_max,
            oracle,
            oracle_domain,
        } => {
            let (system, mass_number) = system.resolve(constants)?;
            let table = enumerate_spectrum(&system, *l_max);
            let config = OracleConfig {
                domain: *oracle_domain,
                ..OracleConfig::default()
            };
            let mut eigen: BTreeMap<u32, Vec<f64>> = BTreeMap::new();
            if *oracle {
                for row in &table.rows {
                    if !eigen.contains_key(&row.l) {
                        eigen.insert(row.l, eigenvalues(&system, row.l, &config)?.eigenvalues);
                    }
                }
            }
            let doc = SpectrumDocument::from_table(&table, mass_number, oracle.then_some(&eigen));
            if cli.format == Format::Csv {
                for d in &doc.diagnostics {
                    eprintln!("note: n={} l={}: {}", d.n, d.l, d.reason);
                }
            }
            doc.write(cli.format, &mut buf)?;
            EXIT_OK
        }
        Command::Table1 {
            no_oracle,
            oracle_domain,
        } => {
            let config = OracleConfig {
                domain: *oracle_domain,
                ..OracleConfig::default()
            };
            let rows = published_comparison(constants, (!no_oracle).then_some(&config))?;
            SpectrumDocument::from_comparison(&rows).write(cli.format, &mut buf)?;
            EXIT_OK
        }
        Command::Wavefunction {
            system,
            n,
            l,
            root,
            points,
            r_max,
        } => {
            let (system, _) = system.resolve(constants)?;
            wavefunction(&system, *n, *l, *root, *points, *r_max)?.write(cli.format, &mut buf)?;
            EXIT_OK
        }
        Command::Verify { only } => {
            let selected: Vec<_> = if only.is_empty() {
                CRITERIA.iter().collect()
            } else {
                only.iter()
                    .map(|&id| {
                        criterion_by_id(id)
                            .ok_or_else(|| Error::InvalidParameter(format!("no criterion {id}")))
                    })
                    .collect::<Result<_>>()?
            };
            let outcomes: Vec<_> = selected.iter().map(|c| c.run()).collect();
            match cli.format {
                Format::Csv => {
                    for o in &outcomes {
                        writeln!(buf, "{}", o.line())?;
                    }
                }
                Format::Json => write_json(&outcomes, &mut buf)?,
            }
            if outcomes.iter().all(|o| o.passed) {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            }
        }
        Command::Nonrel { system, l_max } => {
            let (system, mass_number) = system.resolve(constants)?;
            let mut rows = Vec::new();
            for l in 0..=*l_max {
                for n in 0.. {
                    match energy_nonrelativistic(&system, n, l) {
                        Ok(e) => rows.push(NonrelRow::new(&system, mass_number, n, l, e)),
                        Err(_) => break,
                    }
                }
            }
            write_nonrel(&rows, cli.format, &mut buf)?;
            EXIT_OK
        }
    };
    match &cli.output {
        Some(path) => std::fs::write(path, &buf)?,
        None => std::io::stdout().lock().write_all(&buf)?,
    }
    Ok(code)
}

fn pick_state(system: &WoodsSaxonSystem, n: u32, l: u32, root: Option<Root>) -> Result<BoundState> {
    let [plus, minus] = energy_roots(system, n, l)?;
    let chosen = match root {
        Some(Root::Plus) => Some(plus).filter(|s| s.valid),
        Some(Root::Minus) => Some(minus).filter(|s| s.valid),
        None => [plus, minus]
            .into_iter()
            .filter(|s| s.valid)
            .min_by_key(|s| !s.is_particle_branch(system.rest_energy())),
    };
    chosen.ok_or_else(|| {
        Error::InvalidParameter(format!(
            "no valid state for n={n}, l={l}: roots {} and {} MeV fail the quantization check",
            plus.energy, minus.energy
        ))
    })
}

fn wavefunction(
    system: &WoodsSaxonSystem,
    n: u32,
    l: u32,
    root: Option<Root>,
    points: usize,
    r_max: Option<f64>,
) -> Result<WavefunctionDocument> {
    if points < 2 {
        return Err(Error::InvalidParameter(format!("need at least 2 points, got {points}")));
    }
    let state = pick_state(system, n, l, root)?;
    let mut spec = WavefunctionSpec::new(system, &state)?;
    let config = QuadratureConfig::default();
    let norm = normalization_constant(&mut spec, &config)?;
    let r_max = r_max.unwrap_or(system.radius() + system.diffuseness() * 20.0_f64.max(20.0 / spec.eps));
    if !(r_max > 0.0 && r_max.is_finite()) {
        return Err(Error::InvalidParameter(format!("r-max must be positive, got {r_max}")));
    }
    let grid: Vec<f64> = (0..points)
        .map(|i| r_max * i as f64 / (points - 1) as f64)
        .collect();
    let samples = sample_wavefunction(&spec, &grid)?
        .into_iter()
        .map(|s| WavefunctionRow {
            r: round_sig10(s.r),
            z: round_sig10(s.z),
            u: round_sig10(s.u),
        })
        .collect();
    Ok(WavefunctionDocument {
        n,
        l,
        energy: round_sig10(state.energy),
        norm: round_sig10(norm),
        physical_norm: round_sig10(physical_domain_integral(&spec, &config)?),
        samples,
    })
}
