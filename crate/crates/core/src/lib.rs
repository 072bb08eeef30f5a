//! Fuzzy assessment of grade distributions by center-of-gravity
//! defuzzification.
//!
//! A cohort's marks are bucketed into linguistic grades (F up to A) and the
//! resulting frequency vector is read as a fuzzy subset of the grade set.
//! Each assessment model raises a bar to height `y_i` over each grade's
//! base interval — side by side in the rectangular model, overlapped in the
//! generalized ones — and scores the cohort by the center of gravity of
//! that figure. Larger abscissas mean a heavier tail of high grades; for
//! equally placed abscissas the ordinate breaks the tie by how the mass is
//! concentrated.
//!
//! The crate provides the grade bookkeeping ([`distributions`]), the
//! closed-form models and classical indices ([`models`]), the
//! lexicographic comparison rule and performance labels ([`comparison`]),
//! and a geometric oracle that re-derives the closed forms by exact
//! piecewise integration ([`oracle`]).
//!
//! ```
//! use cograde_core::{Cohort, ModelConfig};
//! use cograde_core::models;
//!
//! let shelter = Cohort::new("shelter", vec![18, 9, 6, 5, 0]);
//! let dist = shelter.to_distribution()?;
//! let cog = models::cog(&dist, &ModelConfig::grm())?;
//! assert!((cog.xc - 1.1632).abs() < 5e-5);
//! # Ok::<(), cograde_core::Error>(())
//! ```

pub mod comparison;
pub mod distributions;
mod error;
pub mod models;
pub mod oracle;

pub use comparison::{compare, Basis, Characterization, ComparisonVerdict, Winner, DEFAULT_EPS};
pub use distributions::{classify_scores, Cohort, Distribution, GradeBand, GradeScale};
pub use error::Error;
pub use models::{CogPoint, Model, ModelConfig, TriangleFrame, Variant};
pub use oracle::{cross_validate, run_sweep, SweepConfig, SweepSummary, ValidationRecord};

pub type Result<T> = std::result::Result<T, Error>;
