use thiserror::Error;

/// Everything that can go wrong while building scales, distributions,
/// model configurations, or figures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid grade scale: {0}")]
    InvalidScale(String),
    #[error("score {0} is outside the 0..=100 percent range")]
    ScoreOutOfRange(f64),
    #[error("cohort '{0}' has no students")]
    EmptyCohort(String),
    #[error("membership value {0} is not a finite nonnegative number")]
    InvalidMembership(f64),
    #[error("membership vector needs at least one positive entry")]
    DegenerateMembership,
    #[error("frequency {0} is outside [0, 1]")]
    FrequencyOutOfRange(f64),
    #[error("frequencies must sum to 1, got {0}")]
    UnnormalizedDistribution(f64),
    #[error("invalid model config: {0}")]
    InvalidConfig(String),
    #[error("threshold grade {index} is out of range for {count} grades")]
    ThresholdOutOfRange { index: usize, count: usize },
    #[error("the rectangular variant has juxtaposed bases; use rm_cog for it")]
    NotAnOverlappingVariant,
    #[error("distribution has {0} grades but the model expects {1}")]
    GradeCountMismatch(usize, usize),
    #[error("invalid region segment: {0}")]
    InvalidSegment(String),
    #[error("figure has zero mass")]
    ZeroMassFigure,
    #[error("the geometric cross-check covers only the rm and grm variants")]
    UnsupportedOracleVariant,
}
