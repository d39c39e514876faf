//! CSV and JSON emission. Floats are rounded to 10 significant digits when a
//! row is built, so a JSON row parses back to exactly the value emitted.

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Result;
use crate::model::WoodsSaxonSystem;
use crate::reference::{published_binding, ComparisonRow};
use crate::spectrum::{BoundState, Exclusion, SpectrumTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

pub const SPECTRUM_HEADER: [&str; 16] = [
    "A",
    "R0_fm",
    "V0_MeV",
    "n",
    "l",
    "n_prime",
    "E_plus_MeV",
    "E_minus_MeV",
    "Eb_plus_MeV",
    "Eb_minus_MeV",
    "valid_plus",
    "valid_minus",
    "residual_plus",
    "residual_minus",
    "oracle_E_MeV",
    "published_Eb_MeV",
];

pub fn round_sig10(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.9e}").parse().unwrap_or(x)
}

/// Ten significant digits: fixed notation for `1e-4 <= |x| < 1e10`,
/// scientific otherwise.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.9e}");
    let exp: i32 = sci
        .rsplit('e')
        .next()
        .and_then(|e| e.parse().ok())
        .unwrap_or(0);
    if (-4..10).contains(&exp) {
        let rounded: f64 = sci.parse().unwrap_or(x);
        format!("{:.*}", (9 - exp) as usize, rounded)
    } else {
        sci
    }
}

fn ser_f64<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(*x)
    } else {
        s.serialize_str(&format_number(*x))
    }
}

fn ser_opt_f64<S: Serializer>(x: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => ser_f64(v, s),
        None => s.serialize_none(),
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum JsonFloat {
    Number(f64),
    Text(String),
}

impl JsonFloat {
    fn value<E: serde::de::Error>(self) -> std::result::Result<f64, E> {
        match self {
            JsonFloat::Number(v) => Ok(v),
            JsonFloat::Text(t) => match t.as_str() {
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                "nan" => Ok(f64::NAN),
                other => Err(E::custom(format!("not a number: {other}"))),
            },
        }
    }
}

fn de_f64<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
    JsonFloat::deserialize(d)?.value()
}

fn de_opt_f64<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<f64>, D::Error> {
    Option::<JsonFloat>::deserialize(d)?
        .map(JsonFloat::value)
        .transpose()
}

/// One `(n, l)` pair of quadratic roots.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    #[serde(rename = "A")]
    pub mass_number: Option<u32>,
    #[serde(rename = "R0_fm", serialize_with = "ser_f64", deserialize_with = "de_f64")]
    pub radius: f64,
    #[serde(rename = "V0_MeV", serialize_with = "ser_f64", deserialize_with = "de_f64")]
    pub depth: f64,
    pub n: u32,
    pub l: u32,
    #[serde(serialize_with = "ser_f64", deserialize_with = "de_f64")]
    pub n_prime: f64,
    #[serde(rename = "E_plus_MeV", serialize_with = "ser_f64", deserialize_with = "de_f64")]
    pub energy_plus: f64,
    #[serde(rename = "E_minus_MeV", serialize_with = "ser_f64", deserialize_with = "de_f64")]
    pub energy_minus: f64,
    #[serde(rename = "Eb_plus_MeV", serialize_with = "ser_f64", deserialize_with = "de_f64")]
    pub binding_plus: f64,
    #[serde(rename = "Eb_minus_MeV", serialize_with = "ser_f64", deserialize_with = "de_f64")]
    pub binding_minus: f64,
    pub valid_plus: bool,
    pub valid_minus: bool,
    #[serde(serialize_with = "ser_f64", deserialize_with = "de_f64")]
    pub residual_plus: f64,
    #[serde(serialize_with = "ser_f64", deserialize_with = "de_f64")]
    pub residual_minus: f64,
    #[serde(rename = "oracle_E_MeV", serialize_with = "ser_opt_f64", deserialize_with = "de_opt_f64")]
    pub oracle_energy: Option<f64>,
    #[serde(rename = "published_Eb_MeV", serialize_with = "ser_opt_f64", deserialize_with = "de_opt_f64")]
    pub published_binding: Option<f64>,
}

impl SpectrumRow {
    pub fn new(
        system: &WoodsSaxonSystem,
        mass_number: Option<u32>,
        plus: &BoundState,
        minus: &BoundState,
        oracle_energy: Option<f64>,
    ) -> Self {
        Self {
            mass_number,
            radius: round_sig10(system.radius()),
            depth: round_sig10(system.depth()),
            n: plus.n,
            l: plus.l,
            n_prime: round_sig10(plus.n_prime),
            energy_plus: round_sig10(plus.energy),
            energy_minus: round_sig10(minus.energy),
            binding_plus: round_sig10(plus.binding),
            binding_minus: round_sig10(minus.binding),
            valid_plus: plus.valid,
            valid_minus: minus.valid,
            residual_plus: round_sig10(plus.residual),
            residual_minus: round_sig10(minus.residual),
            oracle_energy: oracle_energy.map(round_sig10),
            published_binding: mass_number.and_then(|a| published_binding(a, plus.n, plus.l)),
        }
    }

    fn csv_fields(&self) -> [String; 16] {
        let opt = |x: Option<f64>| x.map(format_number).unwrap_or_default();
        [
            self.mass_number.map(|a| a.to_string()).unwrap_or_default(),
            format_number(self.radius),
            format_number(self.depth),
            self.n.to_string(),
            self.l.to_string(),
            format_number(self.n_prime),
            format_number(self.energy_plus),
            format_number(self.energy_minus),
            format_number(self.binding_plus),
            format_number(self.binding_minus),
            self.valid_plus.to_string(),
            self.valid_minus.to_string(),
            format_number(self.residual_plus),
            format_number(self.residual_minus),
            opt(self.oracle_energy),
            opt(self.published_binding),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub n: u32,
    pub l: u32,
    pub reason: String,
}

impl From<&Exclusion> for Diagnostic {
    fn from(e: &Exclusion) -> Self {
        Self {
            n: e.n,
            l: e.l,
            reason: e.reason.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumDocument {
    pub rows: Vec<SpectrumRow>,
    pub diagnostics: Vec<Diagnostic>,
}

impl SpectrumDocument {
    /// `oracle` maps `l` to shooting eigenvalues. Each eigenvalue goes to
    /// the row of that `l` whose roots lie closest, and each row reports the
    /// closest eigenvalue it received.
    pub fn from_table(
        table: &SpectrumTable,
        mass_number: Option<u32>,
        oracle: Option<&BTreeMap<u32, Vec<f64>>>,
    ) -> Self {
        let mut keys: Vec<(u32, u32)> = table.rows.iter().map(|s| (s.l, s.n)).collect();
        keys.dedup();
        let pairs: Vec<(&BoundState, &BoundState)> =
            keys.iter().filter_map(|&(l, n)| table.pair(n, l)).collect();
        let dist = |e: f64, (p, m): (&BoundState, &BoundState)| (e - p.energy).abs().min((e - m.energy).abs());
        let mut assigned: Vec<Vec<f64>> = vec![Vec::new(); pairs.len()];
        for (&l, eigen) in oracle.into_iter().flatten() {
            for &e in eigen {
                let best = (0..pairs.len())
                    .filter(|&i| pairs[i].0.l == l)
                    .min_by(|&i, &j| dist(e, pairs[i]).total_cmp(&dist(e, pairs[j])));
                if let Some(i) = best {
                    assigned[i].push(e);
                }
            }
        }
        let rows = pairs
            .iter()
            .zip(&assigned)
            .map(|(&(plus, minus), eigen)| {
                let o = nearest_to_pair(eigen, plus.energy, minus.energy);
                SpectrumRow::new(&table.system, mass_number, plus, minus, o)
            })
            .collect();
        Self {
            rows,
            diagnostics: table.diagnostics.iter().map(Diagnostic::from).collect(),
        }
    }

    pub fn from_comparison(rows: &[ComparisonRow]) -> Self {
        Self {
            rows: rows
                .iter()
                .map(|r| {
                    SpectrumRow::new(
                        &r.system,
                        Some(r.published.mass_number),
                        &r.plus,
                        &r.minus,
                        r.oracle_energy(),
                    )
                })
                .collect(),
            diagnostics: Vec::new(),
        }
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> Result<()> {
        match format {
            Format::Csv => {
                writeln!(out, "{}", SPECTRUM_HEADER.join(","))?;
                for row in &self.rows {
                    writeln!(out, "{}", row.csv_fields().join(","))?;
                }
            }
            Format::Json => write_json(self, out)?,
        }
        Ok(())
    }
}

/// Nearest entry of `candidates` to either energy.
pub fn nearest_to_pair(candidates: &[f64], plus: f64, minus: f64) -> Option<f64> {
    let dist = |e: f64| (e - plus).abs().min((e - minus).abs());
    candidates
        .iter()
        .copied()
        .min_by(|a, b| dist(*a).total_cmp(&dist(*b)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NonrelRow {
    #[serde(rename = "A")]
    pub mass_number: Option<u32>,
    #[serde(rename = "R0_fm", serialize_with = "ser_f64", deserialize_with = "de_f64")]
    pub radius: f64,
    #[serde(rename = "V0_MeV", serialize_with = "ser_f64", deserialize_with = "de_f64")]
    pub depth: f64,
    pub n: u32,
    pub l: u32,
    #[serde(rename = "E_nr_MeV", serialize_with = "ser_f64", deserialize_with = "de_f64")]
    pub energy: f64,
}

impl NonrelRow {
    pub fn new(system: &WoodsSaxonSystem, mass_number: Option<u32>, n: u32, l: u32, energy: f64) -> Self {
        Self {
            mass_number,
            radius: round_sig10(system.radius()),
            depth: round_sig10(system.depth()),
            n,
            l,
            energy: round_sig10(energy),
        }
    }
}

pub fn write_nonrel(rows: &[NonrelRow], format: Format, out: &mut dyn Write) -> Result<()> {
    match format {
        Format::Csv => {
            writeln!(out, "A,R0_fm,V0_MeV,n,l,E_nr_MeV")?;
            for r in rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    r.mass_number.map(|a| a.to_string()).unwrap_or_default(),
                    format_number(r.radius),
                    format_number(r.depth),
                    r.n,
                    r.l,
                    format_number(r.energy)
                )?;
            }
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                rows: &'a [NonrelRow],
            }
            write_json(&Doc { rows }, out)?;
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WavefunctionRow {
    #[serde(rename = "r_fm", serialize_with = "ser_f64", deserialize_with = "de_f64")]
    pub r: f64,
    #[serde(serialize_with = "ser_f64", deserialize_with = "de_f64")]
    pub z: f64,
    #[serde(serialize_with = "ser_f64", deserialize_with = "de_f64")]
    pub u: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WavefunctionDocument {
    pub n: u32,
    pub l: u32,
    #[serde(rename = "E_MeV", serialize_with = "ser_f64", deserialize_with = "de_f64")]
    pub energy: f64,
    #[serde(serialize_with = "ser_f64", deserialize_with = "de_f64")]
    pub norm: f64,
    /// `∫_0^∞ u^2 dr`, short of one by the `r < 0` part of the normalization.
    #[serde(serialize_with = "ser_f64", deserialize_with = "de_f64")]
    pub physical_norm: f64,
    pub samples: Vec<WavefunctionRow>,
}

impl WavefunctionDocument {
    pub fn write(&self, format: Format, out: &mut dyn Write) -> Result<()> {
        match format {
            Format::Csv => {
                writeln!(out, "r_fm,z,u")?;
                for s in &self.samples {
                    writeln!(out, "{},{},{}", format_number(s.r), format_number(s.z), format_number(s.u))?;
                }
            }
            Format::Json => write_json(self, out)?,
        }
        Ok(())
    }
}

pub fn write_json<T: Serialize + ?Sized>(value: &T, out: &mut dyn Write) -> Result<()> {
    serde_json::to_writer(&mut *out, value).map_err(|e| crate::Error::Io(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}
