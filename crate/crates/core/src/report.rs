//! Report envelopes and serialization conventions. Reports are the public
//! API of the tool: JSON with a top-level schema version, spectra encoded
//! as sorted [value, count] pairs, and a manifest sufficient to reproduce
//! the run bit-for-bit.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::closed_forms::PredictionReport;
use crate::lemmas::LemmaTally;
use crate::niho::NihoParams;
use crate::spectra::{BoomSpectrum, DiffSpectrum};
use crate::survey::SurveyReport;

pub const SCHEMA_VERSION: u32 = 1;

/// Serializes a count map as a sorted array of [value, count] pairs.
pub mod pairs {
    use super::BTreeMap;
    use serde::de::Deserializer;
    use serde::ser::Serializer;
    use serde::{Deserialize, Serialize};

    pub fn serialize<S: Serializer>(
        map: &BTreeMap<u64, u64>,
        ser: S,
    ) -> Result<S::Ok, S::Error> {
        let rows: Vec<[u64; 2]> = map.iter().map(|(&k, &v)| [k, v]).collect();
        rows.serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        de: D,
    ) -> Result<BTreeMap<u64, u64>, D::Error> {
        let rows = Vec::<[u64; 2]>::deserialize(de)?;
        Ok(rows.into_iter().map(|[k, v]| (k, v)).collect())
    }
}

/// Reproducibility manifest attached to every report file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool_version: String,
    /// Hex bit patterns of the moduli in play, keyed by degree.
    pub field_moduli_used: BTreeMap<u32, String>,
    pub seed: u64,
    pub command_line: String,
    pub wall_clock: f64,
}

impl RunManifest {
    pub fn new(seed: u64) -> RunManifest {
        RunManifest {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            field_moduli_used: BTreeMap::new(),
            seed,
            command_line: std::env::args().collect::<Vec<_>>().join(" "),
            wall_clock: 0.0,
        }
    }

    pub fn record_modulus(&mut self, n: u32, modulus: u64) {
        self.field_moduli_used.insert(n, format!("{modulus:#x}"));
    }
}

/// Output of the `spectrum` command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub schema_version: u32,
    pub manifest: RunManifest,
    pub n: u32,
    pub d: u64,
    pub modulus: String,
    pub niho: Option<NihoParams>,
    pub diff: DiffSpectrum,
    pub boom: BoomSpectrum,
    pub locally_apn: bool,
    pub permutation: bool,
    pub prediction: Option<PredictionReport>,
}

/// Output of the `lemmas` command.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LemmaReport {
    pub schema_version: u32,
    pub manifest: RunManifest,
    /// Tallies keyed by "lemma<i>/n=<n>".
    pub tallies: BTreeMap<String, LemmaTally>,
    pub total_failures: u64,
    /// Set when the run had nothing to check (samples = 0).
    pub vacuous: bool,
}

/// Output of the `survey` command (one per m).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SurveyReportFile {
    pub schema_version: u32,
    pub manifest: RunManifest,
    #[serde(flatten)]
    pub survey: SurveyReport,
}

/// Output of the `verify` command.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub manifest: RunManifest,
    pub reports: Vec<PredictionReport>,
    pub all_match: bool,
}

/// CSV rows for a survey report, matching the documented column set.
pub fn survey_csv(report: &SurveyReport) -> String {
    let mut out = String::from("s,d,delta,locally_apn,in_theorem_orbit\n");
    for row in &report.rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            row.s, row.d, row.delta, row.locally_apn, row.in_theorem_orbit
        ));
    }
    out
}

/// Plain-text table for a spectrum pair.
pub fn spectrum_table(diff: &DiffSpectrum, boom: &BoomSpectrum) -> String {
    let mut out = String::new();
    out.push_str("differential spectrum (i, omega_i):\n");
    for (i, w) in &diff.omega {
        out.push_str(&format!("  {i:>6}  {w}\n"));
    }
    out.push_str(&format!("delta = {}\n", diff.delta));
    out.push_str("boomerang spectrum (i, nu_i):\n");
    for (i, w) in &boom.nu {
        out.push_str(&format!("  {i:>6}  {w}\n"));
    }
    out.push_str(&format!("beta = {}\n", boom.beta));
    out
}

/// Both spectra as CSV rows: kind is "diff" or "boom".
pub fn spectrum_csv(diff: &DiffSpectrum, boom: &BoomSpectrum) -> String {
    let mut out = String::from("kind,value,count\n");
    for (i, w) in &diff.omega {
        out.push_str(&format!("diff,{i},{w}\n"));
    }
    for (i, w) in &boom.nu {
        out.push_str(&format!("boom,{i},{w}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_forms::verify_theorems;
    use crate::spectra::{boom_spectrum, diff_spectrum, PowerFunction};

    #[test]
    fn spectrum_report_round_trips() {
        let ctx = crate::field::FieldCtx::new(4).unwrap();
        let f = PowerFunction::new(&ctx, 7).unwrap();
        let mut manifest = RunManifest::new(0);
        manifest.record_modulus(4, ctx.modulus());
        let report = SpectrumReport {
            schema_version: SCHEMA_VERSION,
            manifest,
            n: 4,
            d: 7,
            modulus: format!("{:#x}", ctx.modulus()),
            niho: None,
            diff: diff_spectrum(&f),
            boom: boom_spectrum(&f),
            locally_apn: true,
            permutation: false,
            prediction: Some(verify_theorems(2, 1).unwrap()),
        };
        let json = serde_json::to_string_pretty(&report).unwrap();
        let parsed: SpectrumReport = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed, report);
        // spectra are emitted as sorted pairs
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["diff"]["omega"][0][0], 0);
        assert_eq!(v["diff"]["omega"][0][1], 9);
        assert_eq!(v["schema_version"], SCHEMA_VERSION);
    }

    #[test]
    fn survey_csv_has_the_documented_columns() {
        let report = crate::survey::survey_niho(2).unwrap();
        let csv = survey_csv(&report);
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "s,d,delta,locally_apn,in_theorem_orbit"
        );
        assert_eq!(csv.lines().count(), 5);
    }
}
