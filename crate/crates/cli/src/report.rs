//! Assessment reports: full precision for JSON, two decimals for people.

use cograde_core::comparison::{characterize, Characterization, PerformanceLabel};
use cograde_core::models::{self, Model, Variant};
use cograde_core::{Cohort, GradeScale, ModelConfig};
use serde::Serialize;

use crate::error::CliError;

#[derive(Debug, Clone, Serialize)]
pub struct GradeRow {
    pub label: String,
    pub count: u64,
    pub frequency: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    pub n: usize,
    pub k: f64,
    pub b: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Statistics {
    pub mean: f64,
    pub variance: f64,
    /// Fraction of the cohort at the second-best grade or better.
    pub quality_of_knowledge: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ModelRow {
    pub model: String,
    /// The model's headline number: the value itself for mean/gpa, the
    /// abscissa for the defuzzification models.
    pub score: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xc: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub yc: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    pub characterization: Characterization,
}

#[derive(Debug, Clone, Serialize)]
pub struct AssessmentReport {
    pub cohort: String,
    pub total: u64,
    pub grades: Vec<GradeRow>,
    pub config: ConfigEcho,
    pub statistics: Statistics,
    pub models: Vec<ModelRow>,
}

pub fn build_report(
    cohort: &Cohort,
    scale: &GradeScale,
    models: &[Model],
    k: f64,
    b: f64,
) -> Result<AssessmentReport, CliError> {
    let dist = cohort.to_distribution()?;
    let n = scale.len();
    let grades = scale
        .labels()
        .zip(cohort.counts())
        .zip(dist.values())
        .map(|((label, &count), &frequency)| GradeRow { label: label.to_string(), count, frequency })
        .collect();
    let statistics = Statistics {
        mean: models::mean_value(&dist),
        variance: models::variance(&dist),
        quality_of_knowledge: models::quality_of_knowledge(&dist, n.saturating_sub(2))?,
    };
    let mut rows = Vec::with_capacity(models.len());
    for model in models {
        let characterization = characterize(&dist, model)?;
        let row = match model {
            Model::Mean => ModelRow {
                model: "mean".into(),
                score: characterization.score,
                xc: None,
                yc: None,
                a: None,
                characterization,
            },
            Model::Gpa => ModelRow {
                model: "gpa".into(),
                score: characterization.score,
                xc: None,
                yc: None,
                a: None,
                characterization,
            },
            Model::Cog(cfg) => {
                let cog = models::cog(&dist, cfg)?;
                ModelRow {
                    model: variant_name(cfg.variant()).into(),
                    score: cog.xc,
                    xc: Some(cog.xc),
                    yc: Some(cog.yc),
                    a: Some(cfg.a()),
                    characterization,
                }
            }
        };
        rows.push(row);
    }
    Ok(AssessmentReport {
        cohort: cohort.name().to_string(),
        total: cohort.total(),
        grades,
        config: ConfigEcho { n, k, b },
        statistics,
        models: rows,
    })
}

pub fn variant_name(variant: Variant) -> &'static str {
    match variant {
        Variant::Rm => "rm",
        Variant::Grm => "grm",
        Variant::Tfam => "tfam",
        Variant::Tpfam => "tpfam",
    }
}

/// Round half away from zero to two decimals, the precision used in the
/// human-readable table.
pub fn round2(x: f64) -> f64 {
    (x * 100.0).round() / 100.0
}

fn fmt2(x: f64) -> String {
    format!("{:.2}", round2(x))
}

pub fn render_table(report: &AssessmentReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("cohort: {} ({} students)\n\n", report.cohort, report.total));
    out.push_str(&format!("{:<8}{:>8}{:>12}\n", "grade", "count", "frequency"));
    for row in &report.grades {
        out.push_str(&format!("{:<8}{:>8}{:>12}\n", row.label, row.count, fmt2(row.frequency)));
    }
    out.push('\n');
    out.push_str(&format!(
        "mean {}  variance {}  quality of knowledge {}\n\n",
        fmt2(report.statistics.mean),
        fmt2(report.statistics.variance),
        fmt2(report.statistics.quality_of_knowledge)
    ));
    out.push_str(&format!(
        "{:<8}{:>8}{:>8}{:>8}   {}\n",
        "model", "score", "xc", "yc", "characterization"
    ));
    for row in &report.models {
        let xc = row.xc.map(fmt2).unwrap_or_else(|| "-".into());
        let yc = row.yc.map(fmt2).unwrap_or_else(|| "-".into());
        let label = match row.characterization.label {
            PerformanceLabel::Satisfactory => "satisfactory",
            PerformanceLabel::Unsatisfactory => "unsatisfactory",
        };
        let note = if row.characterization.midpoint_heuristic { " (midpoint heuristic)" } else { "" };
        out.push_str(&format!(
            "{:<8}{:>8}{:>8}{:>8}   {}{}\n",
            row.model,
            fmt2(row.score),
            xc,
            yc,
            label,
            note
        ));
    }
    out
}

/// The selected models in a stable order, each configured with the scale's
/// grade count and the shared overlap and base parameters.
pub fn build_models(
    selected: &[ModelChoice],
    n: usize,
    k: f64,
    b: f64,
) -> Result<Vec<Model>, CliError> {
    let mut out = Vec::with_capacity(selected.len());
    for choice in selected {
        out.push(match choice {
            ModelChoice::Mean => Model::Mean,
            ModelChoice::Gpa => Model::Gpa,
            ModelChoice::Rm => Model::Cog(cog_config(Variant::Rm, n, k, b)?),
            ModelChoice::Grm => Model::Cog(cog_config(Variant::Grm, n, k, b)?),
            ModelChoice::Tfam => Model::Cog(cog_config(Variant::Tfam, n, k, b)?),
            ModelChoice::Tpfam => Model::Cog(cog_config(Variant::Tpfam, n, k, b)?),
        });
    }
    Ok(out)
}

pub fn cog_config(variant: Variant, n: usize, k: f64, b: f64) -> Result<ModelConfig, CliError> {
    Ok(ModelConfig::of(variant).with_grades(n)?.with_overlap(k)?.with_base(b)?)
}

/// CLI-facing model names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ModelChoice {
    Mean,
    Gpa,
    Rm,
    Grm,
    Tfam,
    Tpfam,
}
