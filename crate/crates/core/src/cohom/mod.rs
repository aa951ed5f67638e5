//! Cohomology with explicit truncation bounds. Every rank is computed over
//! the ground field inside a box of word lengths and coefficient degrees,
//! and is labelled stable only if widening the box leaves it unchanged.

mod complex;
mod h0;
mod localization;
mod truncated;

pub use complex::{sphere_complex, FreeComplex, SphereVariant};
pub use h0::{
    august_presentation, august_relations, char2_pagoda_check, h0_presentation, name_august_cosets, pagoda,
    pagoda_class, Char2Verdict, H0Presentation, RelationVerdict,
};
pub use localization::{localization_consistency, DEFAULT_LOCALIZATION_BOUNDS, LocalizationReport, LocalizationRow};
pub use truncated::{truncated_cohomology, truncated_cohomology_with, Bounds, Grading, CohomologyReport, Status, SLACK};
