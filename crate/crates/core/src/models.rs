//! Assessment models over grade distributions.
//!
//! Besides the classical mean/variance and the GPA index, this module
//! evaluates the center-of-gravity (COG) family: each grade carries a
//! rectangle of base `b` and height `y_i` on the horizontal axis, and the
//! group's performance is read off the centroid of the resulting figure.
//!
//! * `rm` — juxtaposed rectangles, grade `i` on `[b(i-1), b·i]`.
//! * `grm`, `tfam`, `tpfam` — each base shifted left so that adjacent
//!   rectangles share `k` percent of their length. All three share the same
//!   abscissa; the ordinate is `a · Σ y_i²` with a model-specific
//!   coefficient `a` (1/2, 1/5 and 3/7 respectively).

use serde::{Deserialize, Serialize};

use crate::distributions::Distribution;
use crate::{Error, Result};

/// Figure family used by the COG models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Juxtaposed rectangles.
    Rm,
    /// Overlapping rectangles.
    Grm,
    /// Triangular reading of the same figure.
    Tfam,
    /// Trapezoidal reading of the same figure.
    Tpfam,
}

impl Variant {
    /// Ordinate coefficient `a` in `yc = a · Σ y_i²`.
    pub fn default_shape_coefficient(self) -> f64 {
        match self {
            Variant::Rm | Variant::Grm => 0.5,
            Variant::Tfam => 0.2,
            Variant::Tpfam => 3.0 / 7.0,
        }
    }

    pub fn is_overlapping(self) -> bool {
        self != Variant::Rm
    }
}

/// Parameters of a COG model evaluation.
///
/// `n` grades, bases of length `b`, adjacent bases overlapping by `k`
/// percent (ignored by `rm`), ordinate coefficient `a`. Constructors
/// enforce `n >= 2`, `0 < k < 50`, `a > 0`, `b > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelConfig {
    variant: Variant,
    n: usize,
    k: f64,
    a: f64,
    b: f64,
}

impl ModelConfig {
    pub fn new(variant: Variant, n: usize, k: f64, a: f64, b: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidConfig(format!("need at least 2 grades, got {n}")));
        }
        if !k.is_finite() || k <= 0.0 || k >= 50.0 {
            return Err(Error::InvalidConfig(format!(
                "overlap percent must lie strictly between 0 and 50, got {k}"
            )));
        }
        if !a.is_finite() || a <= 0.0 {
            return Err(Error::InvalidConfig(format!("shape coefficient must be positive, got {a}")));
        }
        if !b.is_finite() || b <= 0.0 {
            return Err(Error::InvalidConfig(format!("base length must be positive, got {b}")));
        }
        // The juxtaposed figure's ordinate coefficient is intrinsically 1/2.
        let a = if variant == Variant::Rm { 0.5 } else { a };
        Ok(Self { variant, n, k, a, b })
    }

    fn defaults(variant: Variant) -> Self {
        Self { variant, n: 5, k: 30.0, a: variant.default_shape_coefficient(), b: 1.0 }
    }

    /// Juxtaposed rectangles, five grades, unit base.
    pub fn rm() -> Self {
        Self::defaults(Variant::Rm)
    }

    /// Overlapping rectangles with `a = 1/2`, five grades, `k = 30`, unit base.
    pub fn grm() -> Self {
        Self::defaults(Variant::Grm)
    }

    /// Same figure read with `a = 1/5`.
    pub fn tfam() -> Self {
        Self::defaults(Variant::Tfam)
    }

    /// Same figure read with `a = 3/7`.
    pub fn tpfam() -> Self {
        Self::defaults(Variant::Tpfam)
    }

    /// Default configuration for `variant`.
    pub fn of(variant: Variant) -> Self {
        Self::defaults(variant)
    }

    pub fn with_grades(self, n: usize) -> Result<Self> {
        Self::new(self.variant, n, self.k, self.a, self.b)
    }

    pub fn with_overlap(self, k: f64) -> Result<Self> {
        Self::new(self.variant, self.n, k, self.a, self.b)
    }

    pub fn with_shape_coefficient(self, a: f64) -> Result<Self> {
        Self::new(self.variant, self.n, self.k, a, self.b)
    }

    pub fn with_base(self, b: f64) -> Result<Self> {
        Self::new(self.variant, self.n, self.k, self.a, b)
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// Start of grade `i`'s base (0-based grade).
    pub fn base_start(&self, grade: usize) -> f64 {
        match self.variant {
            Variant::Rm => self.b * grade as f64,
            _ => self.b * (1.0 - self.k / 100.0) * grade as f64,
        }
    }

    /// Base interval `[start, start + b]` of grade `i`.
    pub fn base_interval(&self, grade: usize) -> (f64, f64) {
        let start = self.base_start(grade);
        (start, start + self.b)
    }

    /// Abscissa of grade `i`'s own rectangle centroid,
    /// `x_ci = b·((1 - k/100)(i - 1) + 1/2)` in 1-based terms.
    pub fn centroid_x(&self, grade: usize) -> f64 {
        self.base_start(grade) + 0.5 * self.b
    }

    /// Horizontal extent of the whole figure.
    pub fn extent(&self) -> f64 {
        match self.variant {
            Variant::Rm => self.b * self.n as f64,
            _ => figure_extent(self.n, self.k, self.b),
        }
    }

    /// Abscissa reached when all mass sits on the best grade.
    pub fn ideal_xc(&self) -> f64 {
        self.centroid_x(self.n - 1)
    }
}

/// Extent `m = b·(n - (n-1)·k/100)` of the overlapped figure.
///
/// Free function so the `k -> 0` limit (the juxtaposed figure) can be
/// queried without constructing a config.
pub fn figure_extent(n: usize, k: f64, b: f64) -> f64 {
    b * (n as f64 - (n as f64 - 1.0) * k / 100.0)
}

/// Center of gravity of an assessment figure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CogPoint {
    pub xc: f64,
    pub yc: f64,
}

/// Extreme centers of gravity of an overlapping model: all mass on the
/// worst grade, the uniform distribution, and all mass on the best grade.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TriangleFrame {
    pub worst: CogPoint,
    pub balanced: CogPoint,
    pub ideal: CogPoint,
}

impl TriangleFrame {
    /// Barycentric coordinates of `p` with respect to (worst, balanced, ideal).
    pub fn barycentric(&self, p: CogPoint) -> (f64, f64, f64) {
        let (w, m, i) = (self.worst, self.balanced, self.ideal);
        let det = (m.xc - w.xc) * (i.yc - w.yc) - (i.xc - w.xc) * (m.yc - w.yc);
        let beta = ((p.xc - w.xc) * (i.yc - w.yc) - (i.xc - w.xc) * (p.yc - w.yc)) / det;
        let gamma = ((m.xc - w.xc) * (p.yc - w.yc) - (p.xc - w.xc) * (m.yc - w.yc)) / det;
        (1.0 - beta - gamma, beta, gamma)
    }

    /// Whether `p` lies inside or on the triangle, allowing each
    /// barycentric coordinate to dip `tol` below zero.
    pub fn contains(&self, p: CogPoint, tol: f64) -> bool {
        let (alpha, beta, gamma) = self.barycentric(p);
        alpha >= -tol && beta >= -tol && gamma >= -tol
    }
}

/// Model selector for score extraction, weights, and characterization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Model {
    /// Mean grade value `Σ i·y_i`.
    Mean,
    /// GPA index `Σ (i-1)·y_i`.
    Gpa,
    /// A COG model (juxtaposed or overlapping).
    Cog(ModelConfig),
}

/// Mean grade value `Σ i·y_i` on the 1..=n grade values.
pub fn mean_value(dist: &Distribution) -> f64 {
    dist.values().iter().enumerate().map(|(i, y)| (i + 1) as f64 * y).sum()
}

/// Variance `Σ i²·y_i - (Σ i·y_i)²` of the grade values.
pub fn variance(dist: &Distribution) -> f64 {
    let mean = mean_value(dist);
    let second: f64 = dist
        .values()
        .iter()
        .enumerate()
        .map(|(i, y)| {
            let v = (i + 1) as f64;
            v * v * y
        })
        .sum();
    second - mean * mean
}

/// Fraction of mass at grade `threshold` (0-based) or better.
///
/// `threshold = n - 2` — "second-best grade or better" — is the usual
/// reading of a group's quality of knowledge.
pub fn quality_of_knowledge(dist: &Distribution, threshold: usize) -> Result<f64> {
    if threshold >= dist.len() {
        return Err(Error::ThresholdOutOfRange { index: threshold, count: dist.len() });
    }
    Ok(dist.values()[threshold..].iter().sum())
}

/// GPA index `Σ (i-1)·y_i`: grade values 0..=n-1, so the worst grade
/// contributes nothing and the best contributes `n - 1` (4 on five grades).
pub fn gpa_index(dist: &Distribution) -> f64 {
    dist.values().iter().enumerate().map(|(i, y)| i as f64 * y).sum()
}

/// COG of the juxtaposed figure:
/// `xc = (b/2)·Σ (2i-1)·y_i`, `yc = (1/2)·Σ y_i²`.
pub fn rm_cog(dist: &Distribution, b: f64) -> CogPoint {
    debug_assert!(b > 0.0);
    let xc = dist
        .values()
        .iter()
        .enumerate()
        .map(|(i, y)| y * (b * i as f64 + 0.5 * b))
        .sum();
    let yc = 0.5 * sum_squares(dist);
    CogPoint { xc, yc }
}

/// COG of an overlapping figure: `xc = Σ y_i·x_ci`, `yc = a·Σ y_i²`.
///
/// Overlapped ground is deliberately counted once per rectangle, which is
/// what makes the total mass `b` and the resultant this simple.
pub fn overlapping_cog(dist: &Distribution, cfg: &ModelConfig) -> Result<CogPoint> {
    if !cfg.variant().is_overlapping() {
        return Err(Error::NotAnOverlappingVariant);
    }
    if dist.len() != cfg.n() {
        return Err(Error::GradeCountMismatch(dist.len(), cfg.n()));
    }
    let xc = dist.values().iter().enumerate().map(|(i, y)| y * cfg.centroid_x(i)).sum();
    let yc = cfg.a() * sum_squares(dist);
    Ok(CogPoint { xc, yc })
}

/// COG under `cfg`, dispatching on the variant.
pub fn cog(dist: &Distribution, cfg: &ModelConfig) -> Result<CogPoint> {
    if dist.len() != cfg.n() {
        return Err(Error::GradeCountMismatch(dist.len(), cfg.n()));
    }
    match cfg.variant() {
        Variant::Rm => Ok(rm_cog(dist, cfg.b())),
        _ => overlapping_cog(dist, cfg),
    }
}

/// Extreme COGs of an overlapping model (errors on the `rm` variant, whose
/// comparison threshold is taken from the ideal abscissa instead).
pub fn triangle_frame(cfg: &ModelConfig) -> Result<TriangleFrame> {
    let n = cfg.n();
    Ok(TriangleFrame {
        worst: overlapping_cog(&Distribution::single(n, 0), cfg)?,
        balanced: overlapping_cog(&Distribution::uniform(n), cfg)?,
        ideal: overlapping_cog(&Distribution::single(n, n - 1), cfg)?,
    })
}

/// Per-grade coefficient of `y_i` in the model's score, worst grade first.
///
/// Shows how strongly each model rewards mass on the higher grades: on the
/// defaults the best grade weighs 4.5 under `rm`, 4 under `gpa` and only
/// 3.3 under `grm`.
pub fn grade_weights(model: &Model, n: usize) -> Vec<f64> {
    match model {
        Model::Mean => (1..=n).map(|i| i as f64).collect(),
        Model::Gpa => (0..n).map(|i| i as f64).collect(),
        Model::Cog(cfg) => (0..n).map(|i| cfg.centroid_x(i)).collect(),
    }
}

pub(crate) fn sum_squares(dist: &Distribution) -> f64 {
    dist.values().iter().map(|y| y * y).sum()
}
