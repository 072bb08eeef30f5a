//! Grade scales, cohort tallies, and normalized frequency distributions.
//!
//! Grades are ordered worst first everywhere: index 0 is the lowest grade
//! and index `n - 1` the highest. A score scale maps raw percent scores to
//! those indices; a [`Cohort`] counts students per grade; a [`Distribution`]
//! is the normalized frequency vector the assessment models consume.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Two adjacent band edges closer than this are treated as touching.
const BOUNDARY_TOL: f64 = 1e-9;

/// Largest deviation from unit sum a [`Distribution`] accepts.
pub const SUM_TOLERANCE: f64 = 1e-12;

/// Score band for one grade on the 0..=100 percent axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GradeBand {
    pub label: String,
    pub lo: f64,
    pub hi: f64,
}

/// Ordered linguistic grades with contiguous score bands covering `[0, 100]`.
///
/// Bands are half-open `[lo, hi)`; the top band also contains 100. The
/// five-grade default is F `[0,50)`, D `[50,60)`, C `[60,75)`, B `[75,85)`,
/// A `[85,100]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GradeScale {
    bands: Vec<GradeBand>,
}

impl GradeScale {
    /// Builds a scale from bands given in any order. Bands are sorted by
    /// lower bound (worst grade first) and their shared edges snapped
    /// together, so lookups are total over `[0, 100]`.
    pub fn new(mut bands: Vec<GradeBand>) -> Result<Self> {
        if bands.len() < 2 {
            return Err(Error::InvalidScale("at least 2 grades are required".into()));
        }
        for band in &bands {
            if !band.lo.is_finite() || !band.hi.is_finite() || band.lo >= band.hi {
                return Err(Error::InvalidScale(format!(
                    "band '{}' has an empty or non-finite interval [{}, {})",
                    band.label, band.lo, band.hi
                )));
            }
        }
        for (i, a) in bands.iter().enumerate() {
            for b in &bands[i + 1..] {
                if a.label == b.label {
                    return Err(Error::InvalidScale(format!("duplicate label '{}'", a.label)));
                }
            }
        }
        bands.sort_by(|a, b| a.lo.partial_cmp(&b.lo).expect("finite bounds"));
        if bands[0].lo.abs() > BOUNDARY_TOL {
            return Err(Error::InvalidScale("lowest band must start at 0".into()));
        }
        if (bands[bands.len() - 1].hi - 100.0).abs() > BOUNDARY_TOL {
            return Err(Error::InvalidScale("highest band must end at 100".into()));
        }
        for pair in bands.windows(2) {
            let (hi, lo) = (pair[0].hi, pair[1].lo);
            if (hi - lo).abs() > BOUNDARY_TOL {
                return Err(Error::InvalidScale(format!(
                    "bands '{}' and '{}' {} at {}",
                    pair[0].label,
                    pair[1].label,
                    if hi < lo { "leave a gap" } else { "overlap" },
                    hi.min(lo)
                )));
            }
        }
        // Snap edges exactly so classification has no cracks.
        bands[0].lo = 0.0;
        for i in 1..bands.len() {
            bands[i].lo = bands[i - 1].hi;
        }
        if let Some(last) = bands.last_mut() {
            last.hi = 100.0;
        }
        Ok(Self { bands })
    }

    /// The built-in five-grade scale, F through A.
    pub fn default_five() -> Self {
        let labels = ["F", "D", "C", "B", "A"];
        let edges = [0.0, 50.0, 60.0, 75.0, 85.0, 100.0];
        let bands = labels
            .iter()
            .zip(edges.windows(2))
            .map(|(label, e)| GradeBand { label: (*label).into(), lo: e[0], hi: e[1] })
            .collect();
        Self { bands }
    }

    pub fn len(&self) -> usize {
        self.bands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bands.is_empty()
    }

    pub fn bands(&self) -> &[GradeBand] {
        &self.bands
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.bands.iter().map(|b| b.label.as_str())
    }

    /// Position of the grade called `label`, if present.
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.bands.iter().position(|b| b.label == label)
    }

    /// Index of the grade whose band contains `score`.
    ///
    /// Every score in `[0, 100]` lands in exactly one band; anything else
    /// (including NaN) is rejected with the offending value.
    pub fn grade_of(&self, score: f64) -> Result<usize> {
        if !(0.0..=100.0).contains(&score) {
            return Err(Error::ScoreOutOfRange(score));
        }
        for (i, band) in self.bands.iter().enumerate() {
            if score < band.hi {
                return Ok(i);
            }
        }
        Ok(self.bands.len() - 1) // score == 100
    }
}

/// Per-grade student tally for one named group, worst grade first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cohort {
    name: String,
    counts: Vec<u64>,
}

impl Cohort {
    pub fn new(name: impl Into<String>, counts: Vec<u64>) -> Self {
        Self { name: name.into(), counts }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Normalized frequencies `y_i = counts_i / total`.
    ///
    /// A cohort with no students has no distribution; that is where an
    /// all-zero tally (for example from classifying an empty score list)
    /// surfaces as an error.
    pub fn to_distribution(&self) -> Result<Distribution> {
        let total = self.total();
        if total == 0 {
            return Err(Error::EmptyCohort(self.name.clone()));
        }
        let t = total as f64;
        Ok(Distribution::from_raw(self.counts.iter().map(|&c| c as f64 / t).collect()))
    }
}

/// Tallies raw percent scores into per-grade counts.
///
/// Total and deterministic: every score in `[0, 100]` increments exactly one
/// grade; any score outside the range aborts with [`Error::ScoreOutOfRange`].
pub fn classify_scores(scores: &[f64], scale: &GradeScale) -> Result<Cohort> {
    let mut counts = vec![0u64; scale.len()];
    for &score in scores {
        counts[scale.grade_of(score)?] += 1;
    }
    Ok(Cohort::new("scores", counts))
}

/// Normalized grade-frequency vector; entries are in `[0, 1]` and sum to 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Distribution {
    y: Vec<f64>,
}

impl Distribution {
    /// Validates that every entry lies in `[0, 1]` and the sum is within
    /// [`SUM_TOLERANCE`] of 1.
    pub fn new(y: Vec<f64>) -> Result<Self> {
        for &v in &y {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::FrequencyOutOfRange(v));
            }
        }
        let sum: f64 = y.iter().sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::UnnormalizedDistribution(sum));
        }
        Ok(Self { y })
    }

    /// Internal constructor for vectors that are normalized by construction.
    pub(crate) fn from_raw(y: Vec<f64>) -> Self {
        debug_assert!((y.iter().sum::<f64>() - 1.0).abs() <= 1e-9, "not normalized");
        Self { y }
    }

    /// Equal mass `1/n` on every grade.
    pub fn uniform(n: usize) -> Self {
        assert!(n >= 1, "need at least one grade");
        Self::from_raw(vec![1.0 / n as f64; n])
    }

    /// All mass on one grade (0 = worst, `n - 1` = best).
    pub fn single(n: usize, grade: usize) -> Self {
        assert!(grade < n, "grade {grade} out of range for {n} grades");
        let mut y = vec![0.0; n];
        y[grade] = 1.0;
        Self::from_raw(y)
    }

    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.y
    }
}

impl TryFrom<Vec<f64>> for Distribution {
    type Error = Error;

    fn try_from(y: Vec<f64>) -> Result<Self> {
        Self::new(y)
    }
}

impl From<Distribution> for Vec<f64> {
    fn from(d: Distribution) -> Self {
        d.y
    }
}

/// Scales a nonnegative membership vector to unit sum.
///
/// Accepts any finite nonnegative vector with positive total, so raw fuzzy
/// memberships that were never normalized can feed the same models as
/// frequency data.
pub fn normalize_membership(membership: &[f64]) -> Result<Distribution> {
    for &v in membership {
        if !v.is_finite() || v < 0.0 {
            return Err(Error::InvalidMembership(v));
        }
    }
    let sum: f64 = membership.iter().sum();
    if sum <= 0.0 {
        return Err(Error::DegenerateMembership);
    }
    Ok(Distribution::from_raw(membership.iter().map(|&v| v / sum).collect()))
}

/// Draws a frequency vector uniformly from the probability simplex
/// (normalized exponential spacings).
pub fn random_distribution<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Distribution {
    assert!(n >= 1, "need at least one grade");
    loop {
        let mut g: Vec<f64> = (0..n).map(|_| -f64::ln_1p(-rng.gen::<f64>())).collect();
        let sum: f64 = g.iter().sum();
        if sum > 0.0 && sum.is_finite() {
            for v in &mut g {
                *v /= sum;
            }
            return Distribution::from_raw(g);
        }
    }
}
