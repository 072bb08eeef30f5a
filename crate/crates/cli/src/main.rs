//! `cograde` — grade-distribution assessment from the command line.

mod error;
mod input;
mod plot;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cograde_core::comparison::{compare, Winner, DEFAULT_EPS};
use cograde_core::models::{self, triangle_frame, Variant};
use cograde_core::oracle::{run_sweep, SweepConfig};
use serde::Serialize;

use error::CliError;
use input::InputKind;
use report::{build_models, build_report, cog_config, render_table, variant_name, ModelChoice};

#[derive(Parser)]
#[command(name = "cograde", version, about = "Fuzzy center-of-gravity assessment of grade distributions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CogChoice {
    Rm,
    Grm,
    Tfam,
    Tpfam,
}

impl CogChoice {
    fn variant(self) -> Variant {
        match self {
            CogChoice::Rm => Variant::Rm,
            CogChoice::Grm => Variant::Grm,
            CogChoice::Tfam => Variant::Tfam,
            CogChoice::Tpfam => Variant::Tpfam,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PlotKind {
    BarsRm,
    BarsGrm,
    Triangle,
}

#[derive(Subcommand)]
enum Command {
    /// Assess one cohort under the selected models.
    Assess {
        /// Cohort CSV: `grade,count` or `student_id,score`.
        #[arg(long)]
        input: PathBuf,
        /// Force the scores layout instead of detecting it from the header.
        #[arg(long, conflicts_with = "counts")]
        scores: bool,
        /// Force the counts layout instead of detecting it from the header.
        #[arg(long)]
        counts: bool,
        /// Grade scale JSON; the built-in five-grade scale when omitted.
        #[arg(long)]
        scale: Option<PathBuf>,
        /// Models to run.
        #[arg(long, value_delimiter = ',', default_value = "mean,gpa,rm,grm,tfam,tpfam")]
        models: Vec<ModelChoice>,
        /// Overlap percentage for the overlapping models.
        #[arg(long, default_value_t = 30)]
        k: u32,
        /// Base length of each grade's interval.
        #[arg(long, default_value_t = 1.0)]
        base: f64,
        /// Emit the full-precision JSON report instead of the table.
        #[arg(long)]
        json: bool,
    },
    /// Compare two cohorts under one defuzzification model.
    Compare {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, value_enum, default_value = "grm")]
        model: CogChoice,
        /// Equality slack for the lexicographic criterion.
        #[arg(long, default_value_t = DEFAULT_EPS)]
        eps: f64,
        #[arg(long)]
        scale: Option<PathBuf>,
        #[arg(long, default_value_t = 30)]
        k: u32,
        #[arg(long, default_value_t = 1.0)]
        base: f64,
        #[arg(long)]
        json: bool,
    },
    /// Cross-check the closed-form centers of gravity against exact
    /// geometric integration; emits one JSON line per check.
    Validate {
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long, default_value_t = 17)]
        seed: u64,
        /// Overlap percentages to sweep.
        #[arg(long, value_delimiter = ',', default_values_t = vec![10.0, 20.0, 30.0, 40.0, 49.0])]
        k: Vec<f64>,
        /// Base lengths to sweep.
        #[arg(long, value_delimiter = ',', default_values_t = vec![1.0, 10.0])]
        base: Vec<f64>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Write the JSON lines here instead of stdout (the summary then
        /// moves from stderr to stdout).
        #[arg(long)]
        jsonl: Option<PathBuf>,
    },
    /// Draw a cohort figure as SVG.
    Plot {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        kind: PlotKind,
        #[arg(long)]
        out: PathBuf,
        /// Also write the plotted numbers as CSV.
        #[arg(long)]
        data: Option<PathBuf>,
        #[arg(long)]
        scale: Option<PathBuf>,
        #[arg(long, conflicts_with = "counts")]
        scores: bool,
        #[arg(long)]
        counts: bool,
        #[arg(long, default_value_t = 30)]
        k: u32,
        #[arg(long, default_value_t = 1.0)]
        base: f64,
    },
}

fn forced_kind(scores: bool, counts: bool) -> Option<InputKind> {
    match (scores, counts) {
        (true, _) => Some(InputKind::Scores),
        (_, true) => Some(InputKind::Counts),
        _ => None,
    }
}

#[derive(Serialize)]
struct CompareOutput<'a> {
    first_cohort: &'a str,
    second_cohort: &'a str,
    model: &'static str,
    verdict: &'a cograde_core::ComparisonVerdict,
}

fn run() -> Result<(), CliError> {
    match Cli::parse().command {
        Command::Assess { input, scores, counts, scale, models, k, base, json } => {
            let scale = input::load_scale(scale.as_deref())?;
            let cohort = input::load_cohort(&input, forced_kind(scores, counts), &scale)?;
            let selected = build_models(&models, scale.len(), f64::from(k), base)?;
            let report = build_report(&cohort, &scale, &selected, f64::from(k), base)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report).expect("report is serializable"));
            } else {
                print!("{}", render_table(&report));
            }
            Ok(())
        }
        Command::Compare { first, second, model, eps, scale, k, base, json } => {
            let scale = input::load_scale(scale.as_deref())?;
            let a = input::load_cohort(&first, None, &scale)?;
            let b = input::load_cohort(&second, None, &scale)?;
            let cfg = cog_config(model.variant(), scale.len(), f64::from(k), base)?;
            let verdict = compare(&a.to_distribution()?, &b.to_distribution()?, &cfg, eps)?;
            if json {
                let out = CompareOutput {
                    first_cohort: a.name(),
                    second_cohort: b.name(),
                    model: variant_name(cfg.variant()),
                    verdict: &verdict,
                };
                println!("{}", serde_json::to_string_pretty(&out).expect("verdict is serializable"));
            } else {
                let winner = match verdict.winner {
                    Winner::First => a.name(),
                    Winner::Second => b.name(),
                    Winner::Tie => "tie",
                };
                println!(
                    "winner: {winner} (basis: {})",
                    serde_plain(&verdict.basis)
                );
                for (name, side) in [(a.name(), &verdict.first), (b.name(), &verdict.second)] {
                    println!(
                        "  {name}: xc={:.6} yc={:.6}  Σi·y_i={:.6}  Σy_i²={:.6}",
                        side.cog.xc, side.cog.yc, side.mean_value, side.sum_squares
                    );
                }
                println!("  half-extent threshold: {:.6}", verdict.threshold);
                if verdict.winner == Winner::Tie {
                    println!(
                        "  note: both coordinates agree within eps; the criterion does not \
                         rank such groups"
                    );
                }
            }
            Ok(())
        }
        Command::Validate { samples, seed, k, base, tol, jsonl } => {
            let cfg = SweepConfig {
                samples: samples as usize,
                seed,
                grades: 5,
                overlaps: k,
                bases: base,
                tolerance: tol,
            };
            let summary = run_sweep(&cfg)?;
            let mut lines = String::new();
            for record in &summary.records {
                lines.push_str(&serde_json::to_string(record).expect("record is serializable"));
                lines.push('\n');
            }
            let text = format!(
                "validated {} records over {} distributions: {} failed, max |Δxc| = {:.3e}, \
                 max |Δyc| = {:.3e}",
                summary.records.len(),
                summary.distributions,
                summary.failures,
                summary.max_delta_xc,
                summary.max_delta_yc
            );
            match jsonl {
                Some(path) => {
                    std::fs::write(&path, lines)
                        .map_err(|e| CliError::io(&format!("writing {}", path.display()), e))?;
                    println!("{text}");
                }
                None => {
                    let mut stdout = std::io::stdout().lock();
                    stdout
                        .write_all(lines.as_bytes())
                        .map_err(|e| CliError::io("writing records", e))?;
                    eprintln!("{text}");
                }
            }
            if summary.failures > 0 {
                return Err(CliError::Validation(text));
            }
            Ok(())
        }
        Command::Plot { input, kind, out, data, scale, scores, counts, k, base } => {
            let scale = input::load_scale(scale.as_deref())?;
            let cohort = input::load_cohort(&input, forced_kind(scores, counts), &scale)?;
            let dist = cohort.to_distribution()?;
            let labels: Vec<String> = scale.labels().map(str::to_string).collect();
            let (svg, csv_data) = match kind {
                PlotKind::BarsRm => {
                    let cfg = cog_config(Variant::Rm, scale.len(), f64::from(k), base)?;
                    (plot::bars_svg(&dist, &cfg, &labels), plot::bars_data(&dist, &cfg, &labels))
                }
                PlotKind::BarsGrm => {
                    let cfg = cog_config(Variant::Grm, scale.len(), f64::from(k), base)?;
                    (plot::bars_svg(&dist, &cfg, &labels), plot::bars_data(&dist, &cfg, &labels))
                }
                PlotKind::Triangle => {
                    let cfg = cog_config(Variant::Grm, scale.len(), f64::from(k), base)?;
                    let frame = triangle_frame(&cfg)?;
                    let cog = models::cog(&dist, &cfg)?;
                    (plot::triangle_svg(&frame, cog), plot::triangle_data(&frame, cog))
                }
            };
            std::fs::write(&out, svg)
                .map_err(|e| CliError::io(&format!("writing {}", out.display()), e))?;
            if let Some(path) = data {
                std::fs::write(&path, csv_data)
                    .map_err(|e| CliError::io(&format!("writing {}", path.display()), e))?;
            }
            Ok(())
        }
    }
}

/// Kebab-case name of a serde-serializable unit enum value.
fn serde_plain<T: Serialize>(value: &T) -> String {
    serde_json::to_value(value)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_else(|| "unknown".into())
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}
