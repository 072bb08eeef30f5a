//! Pairwise group comparison and single-group characterization.
//!
//! Two groups are ordered lexicographically on their COGs: the greater
//! abscissa wins outright; at equal abscissa the ordinate breaks the tie,
//! and which way it points depends on where the shared abscissa sits.
//! Right of the figure's midpoint both groups lean toward the high grades,
//! so the larger `Σ y_i²` (more mass concentrated up there) is better; left
//! of it the same concentration pins mass on the low grades, so the lower
//! ordinate is better.

use serde::{Deserialize, Serialize};

use crate::distributions::Distribution;
use crate::models::{self, CogPoint, Model, ModelConfig, Variant};
use crate::{Error, Result};

/// Default tolerance for "equal" abscissas and ordinates.
pub const DEFAULT_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Winner {
    First,
    Second,
    Tie,
}

/// Which rule decided the comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Basis {
    /// Abscissas differed by more than `eps`.
    PrimaryXc,
    /// Equal abscissa at or right of the midpoint: greater ordinate wins.
    SecondaryYcHighBranch,
    /// Equal abscissa left of the midpoint: lower ordinate wins.
    SecondaryYcLowBranch,
    /// Abscissa and ordinate both equal within `eps`.
    ExactTie,
}

/// Key figures of one side of a comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComparisonSide {
    pub cog: CogPoint,
    /// `Σ i·y_i` — drives the abscissa.
    pub mean_value: f64,
    /// `Σ y_i²` — drives the ordinate.
    pub sum_squares: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComparisonVerdict {
    pub winner: Winner,
    pub basis: Basis,
    pub first: ComparisonSide,
    pub second: ComparisonSide,
    /// Midpoint abscissa separating the two secondary branches.
    pub threshold: f64,
}

fn side(dist: &Distribution, cfg: &ModelConfig) -> Result<ComparisonSide> {
    Ok(ComparisonSide {
        cog: models::cog(dist, cfg)?,
        mean_value: models::mean_value(dist),
        sum_squares: models::sum_squares(dist),
    })
}

/// Orders two distributions under `cfg`.
///
/// For overlapping variants the branch midpoint is half the figure extent
/// (exactly the balanced abscissa); for `rm` it is half the ideal abscissa.
/// A shared abscissa exactly on the midpoint uses the high branch.
pub fn compare(
    first: &Distribution,
    second: &Distribution,
    cfg: &ModelConfig,
    eps: f64,
) -> Result<ComparisonVerdict> {
    if first.len() != second.len() {
        return Err(Error::GradeCountMismatch(first.len(), second.len()));
    }
    let a = side(first, cfg)?;
    let b = side(second, cfg)?;
    let threshold = match cfg.variant() {
        Variant::Rm => 0.5 * cfg.ideal_xc(),
        _ => 0.5 * cfg.extent(),
    };

    let (winner, basis) = if (a.cog.xc - b.cog.xc).abs() > eps {
        let winner = if a.cog.xc > b.cog.xc { Winner::First } else { Winner::Second };
        (winner, Basis::PrimaryXc)
    } else if (a.cog.yc - b.cog.yc).abs() <= eps {
        (Winner::Tie, Basis::ExactTie)
    } else {
        let shared = 0.5 * (a.cog.xc + b.cog.xc);
        if shared >= threshold {
            let winner = if a.cog.yc > b.cog.yc { Winner::First } else { Winner::Second };
            (winner, Basis::SecondaryYcHighBranch)
        } else {
            let winner = if a.cog.yc < b.cog.yc { Winner::First } else { Winner::Second };
            (winner, Basis::SecondaryYcLowBranch)
        }
    };
    Ok(ComparisonVerdict { winner, basis, first: a, second: b, threshold })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PerformanceLabel {
    Satisfactory,
    Unsatisfactory,
}

/// How one group's score relates to the best score its model can award.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Characterization {
    pub label: PerformanceLabel,
    /// `score / ideal`; satisfactory means at least one half.
    pub ratio: f64,
    pub score: f64,
    pub ideal: f64,
    /// True when the half-of-ideal rule is a heuristic rather than part of
    /// the model (only the plain mean, whose scores start at 1, not 0).
    pub midpoint_heuristic: bool,
}

/// Labels a group satisfactory when its score reaches half the ideal score.
///
/// Scores and ideals per model: mean `Σ i·y_i` against `n` (midpoint
/// heuristic, flagged); GPA against `n - 1`; COG abscissa against the
/// all-mass-on-best abscissa (4.5 for `rm`, 3.3 for the overlapping
/// defaults, halving to 2.25 and 1.65).
pub fn characterize(dist: &Distribution, model: &Model) -> Result<Characterization> {
    let (score, ideal, midpoint_heuristic) = match model {
        Model::Mean => (models::mean_value(dist), dist.len() as f64, true),
        Model::Gpa => (models::gpa_index(dist), (dist.len() - 1) as f64, false),
        Model::Cog(cfg) => (models::cog(dist, cfg)?.xc, cfg.ideal_xc(), false),
    };
    let ratio = score / ideal;
    let label = if score >= 0.5 * ideal {
        PerformanceLabel::Satisfactory
    } else {
        PerformanceLabel::Unsatisfactory
    };
    Ok(Characterization { label, ratio, score, ideal, midpoint_heuristic })
}
