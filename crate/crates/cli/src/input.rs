//! Cohort and scale ingestion.
//!
//! Two CSV layouts are accepted: pre-tallied counts (`grade,count`, rows in
//! any order) and raw scores (`student_id,score`, bucketed through the
//! grade scale). Unless forced by a flag, the layout is detected from the
//! header line.

use std::path::Path;

use cograde_core::distributions::classify_scores;
use cograde_core::{Cohort, GradeBand, GradeScale};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputKind {
    Counts,
    Scores,
}

/// Default five-grade scale, or a JSON array of `{label, lo, hi}` bands.
pub fn load_scale(path: Option<&Path>) -> Result<GradeScale, CliError> {
    let Some(path) = path else {
        return Ok(GradeScale::default_five());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::io(&format!("reading scale {}", path.display()), e))?;
    let bands: Vec<GradeBand> = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("scale {}: {e}", path.display())))?;
    Ok(GradeScale::new(bands)?)
}

pub fn load_cohort(
    path: &Path,
    forced: Option<InputKind>,
    scale: &GradeScale,
) -> Result<Cohort, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| match e.kind() {
            csv::ErrorKind::Io(_) => {
                CliError::Io(format!("reading {}: {e}", path.display()))
            }
            _ => CliError::Input(format!("{}: {e}", path.display())),
        })?;
    let headers: Vec<String> =
        reader.headers()?.iter().map(|h| h.trim().to_string()).collect();
    let detected = match headers.iter().map(String::as_str).collect::<Vec<_>>()[..] {
        ["grade", "count"] => InputKind::Counts,
        ["student_id", "score"] => InputKind::Scores,
        _ => {
            return Err(CliError::Input(format!(
                "{}: unrecognized header {:?}; expected grade,count or student_id,score",
                path.display(),
                headers.join(",")
            )))
        }
    };
    if let Some(forced) = forced {
        if forced != detected {
            return Err(CliError::Input(format!(
                "{}: header says {:?} but the flags asked for {:?}",
                path.display(),
                detected,
                forced
            )));
        }
    }

    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "cohort".to_string());
    match detected {
        InputKind::Counts => read_counts(&mut reader, path, name, scale),
        InputKind::Scores => read_scores(&mut reader, path, name, scale),
    }
}

fn read_counts(
    reader: &mut csv::Reader<std::fs::File>,
    path: &Path,
    name: String,
    scale: &GradeScale,
) -> Result<Cohort, CliError> {
    let mut counts = vec![0u64; scale.len()];
    let mut seen = vec![false; scale.len()];
    for (row, record) in reader.records().enumerate() {
        let record = record?;
        if record.len() != 2 {
            return Err(CliError::Input(format!(
                "{} row {}: expected grade,count, got {} fields",
                path.display(),
                row + 2,
                record.len()
            )));
        }
        let label = record[0].trim();
        let idx = scale.index_of(label).ok_or_else(|| {
            CliError::Input(format!(
                "{} row {}: unknown grade {label:?} (scale has {:?})",
                path.display(),
                row + 2,
                scale.labels().collect::<Vec<_>>()
            ))
        })?;
        if seen[idx] {
            return Err(CliError::Input(format!(
                "{} row {}: grade {label:?} listed twice",
                path.display(),
                row + 2
            )));
        }
        seen[idx] = true;
        counts[idx] = record[1].trim().parse().map_err(|e| {
            CliError::Input(format!(
                "{} row {}: count {:?}: {e}",
                path.display(),
                row + 2,
                &record[1]
            ))
        })?;
    }
    Ok(Cohort::new(name, counts))
}

fn read_scores(
    reader: &mut csv::Reader<std::fs::File>,
    path: &Path,
    name: String,
    scale: &GradeScale,
) -> Result<Cohort, CliError> {
    let mut scores = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record = record?;
        if record.len() != 2 {
            return Err(CliError::Input(format!(
                "{} row {}: expected student_id,score, got {} fields",
                path.display(),
                row + 2,
                record.len()
            )));
        }
        let score: f64 = record[1].trim().parse().map_err(|e| {
            CliError::Input(format!(
                "{} row {}: score {:?}: {e}",
                path.display(),
                row + 2,
                &record[1]
            ))
        })?;
        scores.push(score);
    }
    Ok(classify_scores(&scores, scale)?.with_name(name))
}
