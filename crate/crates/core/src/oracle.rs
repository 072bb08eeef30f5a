//! Geometric cross-check for the closed-form centers of gravity.
//!
//! Each model's figure is rebuilt as an explicit list of rectangular
//! pieces sitting on the x-axis and integrated piecewise — exactly, not by
//! quadrature — so the closed forms can be validated against an
//! independent computation. Where two overlapped rectangles share ground
//! the region keeps both pieces, one per rectangle, which realizes the
//! convention that shared ground counts once per rectangle.

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::distributions::{random_distribution, Cohort, Distribution};
use crate::models::{self, CogPoint, ModelConfig, Variant};
use crate::{Error, Result};

/// One rectangular piece: `[x0, x1] × [0, height]`, counted
/// `multiplicity` times.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Segment {
    pub x0: f64,
    pub x1: f64,
    pub height: f64,
    pub multiplicity: u32,
}

/// A multiset of rectangular pieces on the x-axis.
///
/// After decomposition any two piece intervals are either identical or
/// non-overlapping, so piecewise integration never double-counts by
/// accident — only deliberately, via coincident pieces or multiplicity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightedRegion {
    segments: Vec<Segment>,
}

impl WeightedRegion {
    pub fn new(segments: Vec<Segment>) -> Result<Self> {
        for s in &segments {
            if !s.x0.is_finite() || !s.x1.is_finite() || !s.height.is_finite() {
                return Err(Error::InvalidSegment("non-finite coordinate".into()));
            }
            if s.x1 <= s.x0 {
                return Err(Error::InvalidSegment(format!("empty interval [{}, {}]", s.x0, s.x1)));
            }
            if s.height < 0.0 {
                return Err(Error::InvalidSegment(format!("negative height {}", s.height)));
            }
            if s.multiplicity == 0 {
                return Err(Error::InvalidSegment("zero multiplicity".into()));
            }
        }
        for (i, a) in segments.iter().enumerate() {
            for b in &segments[i + 1..] {
                let identical = a.x0 == b.x0 && a.x1 == b.x1;
                let disjoint = a.x1 <= b.x0 || b.x1 <= a.x0;
                if !identical && !disjoint {
                    return Err(Error::InvalidSegment(format!(
                        "intervals [{}, {}] and [{}, {}] partially overlap",
                        a.x0, a.x1, b.x0, b.x1
                    )));
                }
            }
        }
        Ok(Self { segments })
    }

    fn from_raw(segments: Vec<Segment>) -> Self {
        Self { segments }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Total mass `Σ multiplicity · height · width`.
    pub fn mass(&self) -> f64 {
        self.segments
            .iter()
            .map(|s| s.multiplicity as f64 * s.height * (s.x1 - s.x0))
            .sum()
    }
}

/// The juxtaposed figure: one piece per grade, bases `[b·(i-1), b·i]`.
/// Zero-height grades keep their (massless) piece.
pub fn build_rm_figure(dist: &Distribution, b: f64) -> WeightedRegion {
    let segments = dist
        .values()
        .iter()
        .enumerate()
        .map(|(i, &y)| Segment {
            x0: b * i as f64,
            x1: b * (i + 1) as f64,
            height: y,
            multiplicity: 1,
        })
        .collect();
    WeightedRegion::from_raw(segments)
}

/// The overlapped figure, decomposed on the grid of all base boundaries.
///
/// Within each elementary interval, every covering rectangle contributes
/// its own multiplicity-1 piece, so each rectangle's full area — and its
/// own centroid height — is preserved through the overlaps.
pub fn build_grm_figure(dist: &Distribution, cfg: &ModelConfig) -> Result<WeightedRegion> {
    if cfg.variant() != Variant::Grm {
        return Err(Error::UnsupportedOracleVariant);
    }
    if dist.len() != cfg.n() {
        return Err(Error::GradeCountMismatch(dist.len(), cfg.n()));
    }
    let n = cfg.n();
    let mut cuts: Vec<f64> = Vec::with_capacity(2 * n);
    for i in 0..n {
        let (s, e) = cfg.base_interval(i);
        cuts.push(s);
        cuts.push(e);
    }
    cuts.sort_by(|a, b| a.partial_cmp(b).expect("finite cuts"));
    cuts.dedup();

    let mut segments = Vec::new();
    for w in cuts.windows(2) {
        let (x0, x1) = (w[0], w[1]);
        let mid = 0.5 * (x0 + x1);
        for (i, &y) in dist.values().iter().enumerate() {
            let (s, e) = cfg.base_interval(i);
            if s < mid && mid < e {
                segments.push(Segment { x0, x1, height: y, multiplicity: 1 });
            }
        }
    }
    Ok(WeightedRegion::from_raw(segments))
}

/// Exact piecewise COG of a weighted region.
///
/// Per piece, mass is `m·h·w`, the x-moment is mass times the interval
/// midpoint, and the y-moment is `m·w·h²/2`. Errors on zero total mass.
pub fn integrate_cog(region: &WeightedRegion) -> Result<CogPoint> {
    let mut mass = 0.0;
    let mut moment_x = 0.0;
    let mut moment_y = 0.0;
    for s in region.segments() {
        let w = s.x1 - s.x0;
        let m = s.multiplicity as f64 * s.height * w;
        mass += m;
        moment_x += m * 0.5 * (s.x0 + s.x1);
        moment_y += s.multiplicity as f64 * w * s.height * s.height * 0.5;
    }
    if mass <= 0.0 {
        return Err(Error::ZeroMassFigure);
    }
    Ok(CogPoint { xc: moment_x / mass, yc: moment_y / mass })
}

/// Monte Carlo COG estimate: uniform points over the bounding box,
/// weighted by how many pieces cover them. A demonstration mode — expect
/// agreement around 1e-2 at a million samples, nowhere near the exact
/// integration above.
pub fn monte_carlo_cog(region: &WeightedRegion, samples: usize, seed: u64) -> Result<CogPoint> {
    let segs = region.segments();
    let x_lo = segs.iter().map(|s| s.x0).fold(f64::INFINITY, f64::min);
    let x_hi = segs.iter().map(|s| s.x1).fold(f64::NEG_INFINITY, f64::max);
    let h_max = segs.iter().map(|s| s.height).fold(0.0, f64::max);
    if segs.is_empty() || h_max <= 0.0 {
        return Err(Error::ZeroMassFigure);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut weight, mut wx, mut wy) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..samples {
        let x = x_lo + (x_hi - x_lo) * rng.gen::<f64>();
        let y = h_max * rng.gen::<f64>();
        let w: u32 = segs
            .iter()
            .filter(|s| s.x0 <= x && x < s.x1 && y < s.height)
            .map(|s| s.multiplicity)
            .sum();
        if w > 0 {
            let w = w as f64;
            weight += w;
            wx += w * x;
            wy += w * y;
        }
    }
    if weight <= 0.0 {
        return Err(Error::ZeroMassFigure);
    }
    Ok(CogPoint { xc: wx / weight, yc: wy / weight })
}

/// One closed-form-versus-geometry comparison, ready to serialize as a
/// JSON line.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationRecord {
    pub distribution: Vec<f64>,
    pub model: ModelConfig,
    pub closed_form: CogPoint,
    pub oracle: CogPoint,
    pub delta_xc: f64,
    pub delta_yc: f64,
    pub pass: bool,
}

/// Recomputes `cfg`'s COG by geometric integration and compares it with
/// the closed form at `tolerance`. Only `rm` and `grm` have figures to
/// rebuild; the scaled-ordinate variants are rejected.
pub fn cross_validate(
    dist: &Distribution,
    cfg: &ModelConfig,
    tolerance: f64,
) -> Result<ValidationRecord> {
    let region = match cfg.variant() {
        Variant::Rm => {
            if dist.len() != cfg.n() {
                return Err(Error::GradeCountMismatch(dist.len(), cfg.n()));
            }
            build_rm_figure(dist, cfg.b())
        }
        Variant::Grm => build_grm_figure(dist, cfg)?,
        _ => return Err(Error::UnsupportedOracleVariant),
    };
    let closed_form = models::cog(dist, cfg)?;
    let oracle = integrate_cog(&region)?;
    let delta_xc = (closed_form.xc - oracle.xc).abs();
    let delta_yc = (closed_form.yc - oracle.yc).abs();
    Ok(ValidationRecord {
        distribution: dist.values().to_vec(),
        model: *cfg,
        closed_form,
        oracle,
        delta_xc,
        delta_yc,
        pass: delta_xc <= tolerance && delta_yc <= tolerance,
    })
}

/// Parameters of a randomized validation sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    /// Number of distributions; the uniform and the single-grade corners
    /// are injected first, random simplex draws fill the rest.
    pub samples: usize,
    pub seed: u64,
    pub grades: usize,
    /// Overlap percents to try for `grm`.
    pub overlaps: Vec<f64>,
    /// Base lengths to try for both variants.
    pub bases: Vec<f64>,
    pub tolerance: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            samples: 10_000,
            seed: 17,
            grades: 5,
            overlaps: vec![10.0, 20.0, 30.0, 40.0, 49.0],
            bases: vec![1.0, 10.0],
            tolerance: 1e-9,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSummary {
    pub records: Vec<ValidationRecord>,
    pub distributions: usize,
    pub failures: usize,
    pub max_delta_xc: f64,
    pub max_delta_yc: f64,
}

/// Cross-validates `rm` and `grm` over seeded distributions and the whole
/// overlap/base grid. Deterministic for a fixed config.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepSummary> {
    let n = cfg.grades;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut dists = Vec::with_capacity(cfg.samples);
    dists.push(Distribution::uniform(n));
    for g in 0..n {
        dists.push(Distribution::single(n, g));
    }
    dists.truncate(cfg.samples);
    while dists.len() < cfg.samples {
        dists.push(random_distribution(n, &mut rng));
    }

    let mut records = Vec::new();
    let mut failures = 0;
    let (mut max_dx, mut max_dy) = (0.0f64, 0.0f64);
    for dist in &dists {
        for &b in &cfg.bases {
            let rm = ModelConfig::new(Variant::Rm, n, 30.0, 0.5, b)?;
            let mut batch = vec![cross_validate(dist, &rm, cfg.tolerance)?];
            for &k in &cfg.overlaps {
                let grm = ModelConfig::new(Variant::Grm, n, k, 0.5, b)?;
                batch.push(cross_validate(dist, &grm, cfg.tolerance)?);
            }
            for rec in batch {
                failures += usize::from(!rec.pass);
                max_dx = max_dx.max(rec.delta_xc);
                max_dy = max_dy.max(rec.delta_yc);
                records.push(rec);
            }
        }
    }
    Ok(SweepSummary {
        records,
        distributions: dists.len(),
        failures,
        max_delta_xc: max_dx,
        max_delta_yc: max_dy,
    })
}

/// `Σ i·y_i` and `Σ y_i²` as exact rationals straight from the integer
/// counts, for tests that must not inherit float rounding.
pub fn exact_key_expressions(cohort: &Cohort) -> Result<(Ratio<u128>, Ratio<u128>)> {
    let total = cohort.total() as u128;
    if total == 0 {
        return Err(Error::EmptyCohort(cohort.name().to_string()));
    }
    let weighted: u128 = cohort
        .counts()
        .iter()
        .enumerate()
        .map(|(i, &c)| (i as u128 + 1) * c as u128)
        .sum();
    let squares: u128 = cohort.counts().iter().map(|&c| (c as u128) * (c as u128)).sum();
    Ok((Ratio::new(weighted, total), Ratio::new(squares, total * total)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shelter() -> Distribution {
        Cohort::new("shelter", vec![18, 9, 6, 5, 0]).to_distribution().unwrap()
    }

    #[test]
    fn rm_figure_layout() {
        let region = build_rm_figure(&shelter(), 1.0);
        let segs = region.segments();
        assert_eq!(segs.len(), 5);
        assert_eq!((segs[0].x0, segs[0].x1), (0.0, 1.0));
        assert_eq!((segs[4].x0, segs[4].x1), (4.0, 5.0));
        // The empty top grade keeps its massless piece.
        assert_eq!(segs[4].height, 0.0);
        assert!((region.mass() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn grm_figure_counts_overlaps_once_per_rectangle() {
        let region = build_grm_figure(&shelter(), &ModelConfig::grm()).unwrap();
        // Bases [0,1], [0.7,1.7], ..., [2.8,3.8]: 9 elementary intervals,
        // of which 4 are overlaps carrying two pieces each.
        assert_eq!(region.segments().len(), 13);
        // Full per-rectangle area survives, so the mass is b = 1.
        assert!((region.mass() - 1.0).abs() < 1e-12);
        let twice: Vec<_> = region
            .segments()
            .iter()
            .filter(|s| {
                region
                    .segments()
                    .iter()
                    .filter(|t| t.x0 == s.x0 && t.x1 == s.x1)
                    .count()
                    == 2
            })
            .collect();
        assert_eq!(twice.len(), 8); // 4 shared intervals × 2 pieces
    }

    #[test]
    fn grm_figure_rejects_other_variants() {
        assert_eq!(
            build_grm_figure(&shelter(), &ModelConfig::tfam()),
            Err(Error::UnsupportedOracleVariant)
        );
        assert_eq!(
            build_grm_figure(&shelter(), &ModelConfig::rm()),
            Err(Error::UnsupportedOracleVariant)
        );
    }

    #[test]
    fn integration_matches_closed_forms() {
        let d = shelter();
        let rm = integrate_cog(&build_rm_figure(&d, 1.0)).unwrap();
        let closed = models::rm_cog(&d, 1.0);
        assert!((rm.xc - closed.xc).abs() < 1e-12);
        assert!((rm.yc - closed.yc).abs() < 1e-12);

        let cfg = ModelConfig::grm();
        let grm = integrate_cog(&build_grm_figure(&d, &cfg).unwrap()).unwrap();
        let closed = models::overlapping_cog(&d, &cfg).unwrap();
        assert!((grm.xc - closed.xc).abs() < 1e-12);
        assert!((grm.yc - closed.yc).abs() < 1e-12);
    }

    #[test]
    fn zero_mass_is_an_error() {
        assert_eq!(integrate_cog(&WeightedRegion::from_raw(vec![])), Err(Error::ZeroMassFigure));
        let flat = WeightedRegion::from_raw(vec![Segment {
            x0: 0.0,
            x1: 1.0,
            height: 0.0,
            multiplicity: 1,
        }]);
        assert_eq!(integrate_cog(&flat), Err(Error::ZeroMassFigure));
    }

    #[test]
    fn region_validation() {
        let seg = |x0: f64, x1: f64, h: f64, m: u32| Segment { x0, x1, height: h, multiplicity: m };
        assert!(WeightedRegion::new(vec![seg(0.0, 1.0, 0.5, 1), seg(1.0, 2.0, 0.5, 1)]).is_ok());
        // Identical intervals may coexist (that is how overlaps are kept).
        assert!(WeightedRegion::new(vec![seg(0.0, 1.0, 0.5, 1), seg(0.0, 1.0, 0.2, 1)]).is_ok());
        assert!(WeightedRegion::new(vec![seg(0.0, 1.0, 0.5, 1), seg(0.5, 2.0, 0.2, 1)]).is_err());
        assert!(WeightedRegion::new(vec![seg(1.0, 1.0, 0.5, 1)]).is_err());
        assert!(WeightedRegion::new(vec![seg(0.0, 1.0, -0.5, 1)]).is_err());
        assert!(WeightedRegion::new(vec![seg(0.0, 1.0, 0.5, 0)]).is_err());
    }

    #[test]
    fn multiplicity_equals_repeated_pieces() {
        let seg = |m: u32| Segment { x0: 2.0, x1: 3.0, height: 0.4, multiplicity: m };
        let doubled = WeightedRegion::new(vec![seg(2)]).unwrap();
        let repeated = WeightedRegion::new(vec![seg(1), seg(1)]).unwrap();
        assert_eq!(doubled.mass(), repeated.mass());
        assert_eq!(integrate_cog(&doubled).unwrap(), integrate_cog(&repeated).unwrap());
    }

    #[test]
    fn cross_validation_passes_for_both_variants() {
        let d = shelter();
        for cfg in [ModelConfig::rm(), ModelConfig::grm()] {
            let rec = cross_validate(&d, &cfg, 1e-9).unwrap();
            assert!(rec.pass, "delta_xc={} delta_yc={}", rec.delta_xc, rec.delta_yc);
        }
        assert_eq!(
            cross_validate(&d, &ModelConfig::tpfam(), 1e-9),
            Err(Error::UnsupportedOracleVariant)
        );
    }

    #[test]
    fn validation_record_serializes_flat() {
        let rec = cross_validate(&Distribution::uniform(5), &ModelConfig::grm(), 1e-9).unwrap();
        let json = serde_json::to_string(&rec).unwrap();
        assert!(json.contains("\"variant\":\"grm\""));
        assert!(json.contains("\"pass\":true"));
        assert!(json.contains("\"closed_form\""));
    }

    #[test]
    fn single_sample_sweep_reports_the_uniform() {
        let summary = run_sweep(&SweepConfig { samples: 1, ..SweepConfig::default() }).unwrap();
        assert_eq!(summary.distributions, 1);
        assert_eq!(summary.failures, 0);
        // 2 bases × (1 rm + 5 grm) records for the single (uniform) sample.
        assert_eq!(summary.records.len(), 12);
        // The uniform distribution sits at the middle of every figure.
        for rec in &summary.records {
            assert!((rec.closed_form.xc - 0.5 * rec.model.extent()).abs() < 1e-12);
        }
    }

    #[test]
    fn small_sweep_is_clean_and_deterministic() {
        let cfg = SweepConfig { samples: 40, seed: 99, ..SweepConfig::default() };
        let a = run_sweep(&cfg).unwrap();
        let b = run_sweep(&cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.failures, 0);
        assert!(a.max_delta_xc <= 1e-12);
        assert!(a.max_delta_yc <= 1e-12);
        assert_eq!(a.records.len(), 40 * 2 * 6);
    }

    #[test]
    fn monte_carlo_is_roughly_right() {
        let d = shelter();
        let region = build_grm_figure(&d, &ModelConfig::grm()).unwrap();
        let exact = integrate_cog(&region).unwrap();
        let mc = monte_carlo_cog(&region, 1_000_000, 4242).unwrap();
        assert!((mc.xc - exact.xc).abs() < 1e-2, "xc off by {}", (mc.xc - exact.xc).abs());
        assert!((mc.yc - exact.yc).abs() < 1e-2, "yc off by {}", (mc.yc - exact.yc).abs());
        // Deterministic for a fixed seed.
        let again = monte_carlo_cog(&region, 10_000, 4242).unwrap();
        let same = monte_carlo_cog(&region, 10_000, 4242).unwrap();
        assert_eq!(again, same);
    }

    #[test]
    fn exact_key_expressions_from_counts() {
        let (mean, squares) = exact_key_expressions(&Cohort::new("i", vec![0, 0, 10, 0, 50])).unwrap();
        assert_eq!(mean, Ratio::new(14u128, 3u128));
        assert_eq!(squares, Ratio::new(26u128, 36u128));
        let (mean, squares) =
            exact_key_expressions(&Cohort::new("ii", vec![0, 0, 0, 20, 40])).unwrap();
        assert_eq!(mean, Ratio::new(14u128, 3u128));
        assert_eq!(squares, Ratio::new(20u128, 36u128));
        assert!(exact_key_expressions(&Cohort::new("none", vec![0, 0])).is_err());
    }
}
