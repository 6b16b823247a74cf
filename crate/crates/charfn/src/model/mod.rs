//! Candidate functions, spectral measures and the catalog.

pub mod candidate;
pub mod catalog;
pub mod measure;

pub use candidate::{
    char_function_from_measure, classify_decay, hermitian_screen, screen_grid, CandidateFunction,
    DecayClass, SampledData, ScreenReport, Source, SpectralParts, TailModel, TwoAtomFamily,
};
pub use catalog::{catalog_entry, CATALOG};
pub use measure::{
    Atom, DensityComponent, DensityShape, HalfLine, SpectralMeasure, Support, MASS_TOL_ANALYTIC,
    MASS_TOL_SAMPLED,
};
