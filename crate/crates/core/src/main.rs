//! Command-line front end: spectrum computation, theorem verification,
//! coverage survey and lemma suites, with JSON/CSV report files.
//!
//! Exit codes: 0 success (and match, where a match is checked), 1 mismatch
//! or property failure, 2 usage or parameter error.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use locapn::closed_forms::{verify_params_in, verify_theorems, PredictionReport};
use locapn::field::FieldCtx;
use locapn::lemmas;
use locapn::niho::build_niho;
use locapn::report::{
    spectrum_csv, spectrum_table, survey_csv, LemmaReport, RunManifest, SpectrumReport,
    SurveyReportFile, VerifyReport, SCHEMA_VERSION,
};
use locapn::spectra::{boom_spectrum, diff_spectrum, is_locally_apn, PowerFunction};
use locapn::survey::survey_niho;

#[derive(Parser)]
#[command(name = "locapn", version, about = "Differential and boomerang spectra of Niho power functions over GF(2^n)")]
struct Cli {
    /// Worker threads for parallel sweeps (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the differential and boomerang spectrum of one power
    /// function, either raw (--n, --d) or in Niho mode (--m, --k) where the
    /// result is also checked against the closed forms.
    #[command(visible_alias = "boomerang")]
    Spectrum(SpectrumArgs),
    /// Exhaustive locally-APN coverage sweep over s in [1, 2^m].
    Survey(SurveyArgs),
    /// Run the lemma checker suites.
    Lemmas(LemmaArgs),
    /// Verify the closed-form spectra over a grid of (m, k).
    Verify(VerifyArgs),
}

#[derive(Args)]
struct SpectrumArgs {
    /// Extension degree (raw mode, with --d).
    #[arg(long)]
    n: Option<u32>,
    /// Exponent (raw mode, with --n).
    #[arg(long)]
    d: Option<u64>,
    /// Subfield degree (Niho mode, with --k).
    #[arg(long)]
    m: Option<u32>,
    /// Frobenius parameter (Niho mode, with --m).
    #[arg(long)]
    k: Option<u32>,
    /// Override the field modulus (hex bit pattern, e.g. 0x13).
    #[arg(long)]
    modulus: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SurveyArgs {
    /// Single m to sweep.
    #[arg(long)]
    m: Option<u32>,
    /// Sweep every m from 2 through this bound.
    #[arg(long)]
    max_m: Option<u32>,
    /// Allow the minutes-to-hours runs m = 9, 10.
    #[arg(long)]
    slow: bool,
    /// Directory for the JSON and CSV report files.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Args)]
struct LemmaArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Random samples per field for the sampled checkers.
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    /// Restrict to one checker: lemma1 .. lemma5.
    #[arg(long)]
    only: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 6)]
    max_m: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            return usage_error(&e.to_string());
        }
    }
    let outcome = match cli.command {
        Command::Spectrum(args) => cmd_spectrum(args),
        Command::Survey(args) => cmd_survey(args),
        Command::Lemmas(args) => cmd_lemmas(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => usage_error(&e.to_string()),
    }
}

/// Machine-readable error on stderr, exit 2.
fn usage_error(message: &str) -> ExitCode {
    eprintln!(
        "{}",
        serde_json::json!({ "error": message, "schema_version": SCHEMA_VERSION })
    );
    ExitCode::from(2)
}

fn emit(out: Option<&Path>, content: &str) -> anyhow_free::Result<()> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| locapn::Error::Parameter(format!("write {path:?}: {e}"))),
        None => {
            println!("{content}");
            Ok(())
        }
    }
}

/// Local alias so the binary shares the library error type.
mod anyhow_free {
    pub type Result<T> = locapn::Result<T>;
}

fn parse_modulus(s: &str) -> anyhow_free::Result<u64> {
    let trimmed = s.trim_start_matches("0x").trim_start_matches("0X");
    u64::from_str_radix(trimmed, 16)
        .map_err(|e| locapn::Error::Parameter(format!("bad modulus {s:?}: {e}")))
}

fn cmd_spectrum(args: SpectrumArgs) -> anyhow_free::Result<ExitCode> {
    let started = Instant::now();
    let (n, d, niho) = match (args.n, args.d, args.m, args.k) {
        (Some(n), Some(d), None, None) => (n, d, None),
        (None, None, Some(m), Some(k)) => {
            let p = build_niho(m, k)?;
            (2 * m, p.d, Some(p))
        }
        _ => {
            return Err(locapn::Error::Parameter(
                "pass either --n with --d or --m with --k".into(),
            ))
        }
    };
    let ctx = match &args.modulus {
        Some(s) => FieldCtx::with_modulus(n, parse_modulus(s)?)?,
        None => FieldCtx::new(n)?,
    };
    let f = PowerFunction::new(&ctx, d)?;
    let diff = diff_spectrum(&f);
    let boom = boom_spectrum(&f);
    let prediction: Option<PredictionReport> = match &niho {
        Some(p) => Some(verify_params_in(p, &ctx)?),
        None => None,
    };
    let permutation = {
        let mut seen = vec![false; ctx.order() as usize];
        f.table()
            .iter()
            .all(|&y| !std::mem::replace(&mut seen[y as usize], true))
    };
    let mut manifest = RunManifest::new(0);
    manifest.record_modulus(n, ctx.modulus());
    manifest.wall_clock = started.elapsed().as_secs_f64();
    let report = SpectrumReport {
        schema_version: SCHEMA_VERSION,
        manifest,
        n,
        d,
        modulus: format!("{:#x}", ctx.modulus()),
        niho,
        locally_apn: is_locally_apn(&f),
        permutation,
        prediction,
        diff,
        boom,
    };
    let matched = report
        .prediction
        .as_ref()
        .is_none_or(|p| p.match_ds && p.match_bs);
    let rendered = match args.format {
        Format::Json => serde_json::to_string_pretty(&report)
            .expect("report serialization is infallible"),
        Format::Table => spectrum_table(&report.diff, &report.boom),
        Format::Csv => spectrum_csv(&report.diff, &report.boom),
    };
    emit(args.out.as_deref(), &rendered)?;
    Ok(if matched {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_survey(args: SurveyArgs) -> anyhow_free::Result<ExitCode> {
    let ms: Vec<u32> = match (args.m, args.max_m) {
        (Some(m), None) => vec![m],
        (None, Some(max)) => (2..=max).collect(),
        (None, None) => (2..=8).collect(),
        _ => {
            return Err(locapn::Error::Parameter(
                "pass --m or --max-m, not both".into(),
            ))
        }
    };
    if let Some(&m) = ms.iter().find(|&&m| m > 8 && !args.slow) {
        return Err(locapn::Error::Parameter(format!(
            "m = {m} takes minutes to hours; rerun with --slow"
        )));
    }
    let mut all_covered = true;
    for &m in &ms {
        let started = Instant::now();
        let survey = survey_niho(m)?;
        let mut manifest = RunManifest::new(0);
        manifest.record_modulus(2 * m, FieldCtx::new(2 * m)?.modulus());
        manifest.wall_clock = started.elapsed().as_secs_f64();
        let file = SurveyReportFile {
            schema_version: SCHEMA_VERSION,
            manifest,
            survey,
        };
        let json = serde_json::to_string_pretty(&file)
            .expect("report serialization is infallible");
        let base = args.out.join(format!("survey_m{m}"));
        emit(Some(&base.with_extension("json")), &json)?;
        emit(
            Some(&base.with_extension("csv")),
            &survey_csv(&file.survey),
        )?;
        println!(
            "m = {m}: covered = {} ({:.2}s, reports at {})",
            file.survey.covered,
            file.survey.wall_seconds,
            base.display()
        );
        all_covered &= file.survey.covered;
    }
    Ok(if all_covered {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_lemmas(args: LemmaArgs) -> anyhow_free::Result<ExitCode> {
    let started = Instant::now();
    let wanted = |name: &str| args.only.as_deref().is_none_or(|o| o == name);
    if let Some(only) = &args.only {
        if !["lemma1", "lemma2", "lemma3", "lemma4", "lemma5"]
            .contains(&only.as_str())
        {
            return Err(locapn::Error::Parameter(format!(
                "unknown checker {only:?}; expected lemma1 .. lemma5"
            )));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut tallies = BTreeMap::new();
    let mut manifest = RunManifest::new(args.seed);
    for n in [4u32, 6, 8] {
        let ctx = FieldCtx::new(n)?;
        manifest.record_modulus(n, ctx.modulus());
        if wanted("lemma1") {
            tallies.insert(format!("lemma1/n={n}"), lemmas::lemma1_suite(&ctx)?);
        }
        if wanted("lemma2") {
            tallies.insert(format!("lemma2/n={n}"), lemmas::lemma2_suite(&ctx)?);
        }
        if wanted("lemma3") {
            tallies.insert(format!("lemma3/n={n}"), lemmas::lemma3_suite(&ctx)?);
        }
    }
    for n in [4u32, 6, 8, 10] {
        let ctx = FieldCtx::new(n)?;
        manifest.record_modulus(n, ctx.modulus());
        if wanted("lemma4") {
            tallies.insert(
                format!("lemma4/n={n}"),
                lemmas::lemma4_suite(&ctx, &mut rng, args.samples),
            );
        }
        if wanted("lemma5") {
            tallies.insert(
                format!("lemma5/n={n}"),
                lemmas::lemma5_suite(&ctx, &mut rng, args.samples),
            );
        }
    }
    let total_failures: u64 = tallies.values().map(|t| t.failures).sum();
    let total_cases: u64 = tallies.values().map(|t| t.cases).sum();
    let vacuous = total_cases == 0;
    if vacuous {
        eprintln!("warning: zero cases executed; the pass is vacuous");
    }
    manifest.wall_clock = started.elapsed().as_secs_f64();
    let report = LemmaReport {
        schema_version: SCHEMA_VERSION,
        manifest,
        tallies,
        total_failures,
        vacuous,
    };
    let json = serde_json::to_string_pretty(&report)
        .expect("report serialization is infallible");
    emit(args.out.as_deref(), &json)?;
    Ok(if total_failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_verify(args: VerifyArgs) -> anyhow_free::Result<ExitCode> {
    if !(2..=10).contains(&args.max_m) {
        return Err(locapn::Error::Parameter(format!(
            "--max-m {} out of range (2..=10)",
            args.max_m
        )));
    }
    let started = Instant::now();
    let mut manifest = RunManifest::new(0);
    let mut reports = Vec::new();
    for m in 2..=args.max_m {
        manifest.record_modulus(2 * m, FieldCtx::new(2 * m)?.modulus());
        let mut seen_s = std::collections::BTreeSet::new();
        for k in 1..2 * m {
            let Ok(p) = build_niho(m, k) else { continue };
            if !seen_s.insert(p.s) {
                continue;
            }
            let report = verify_theorems(m, k)?;
            println!(
                "m = {m}, k = {k}: diff {} boom {}",
                if report.match_ds { "ok" } else { "MISMATCH" },
                if report.match_bs { "ok" } else { "MISMATCH" },
            );
            reports.push(report);
        }
    }
    manifest.wall_clock = started.elapsed().as_secs_f64();
    let all_match = reports.iter().all(|r| r.match_ds && r.match_bs);
    let report = VerifyReport {
        schema_version: SCHEMA_VERSION,
        manifest,
        reports,
        all_match,
    };
    if let Some(out) = &args.out {
        let json = serde_json::to_string_pretty(&report)
            .expect("report serialization is infallible");
        emit(Some(out), &json)?;
    }
    Ok(if all_match {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
