//! Harmonic extension and Cauchy-transform machinery on the imaginary axis.

pub mod engine;
pub mod kernel;
pub mod quad;
pub mod table;

pub use engine::{
    cauchy_transform, cauchy_transform_at, modified_cauchy_transform,
    modified_transform_from_measure, modified_transform_from_parts, offset_from_measure,
    plain_transform_from_parts, poisson_cauchy_identity_check, poisson_extension,
    poisson_extension_dy, poisson_from_parts, IdentityCheck, Transformed,
};
pub use kernel::{
    cauchy_kernel_dy, cauchy_kernel_fourier, modified_cauchy_kernel, modified_kernel_fourier,
    modified_kernel_fourier_dy, poisson_kernel, poisson_kernel_dy,
};
pub use quad::{
    integrate_interval, integrate_over, integrate_real_line, integrate_real_line_oscillatory,
    probe_oscillation, OscillationProbe, QuadOutcome, QuadratureConfig,
};
pub use table::{build_table, ImaginaryAxisGrid, Side, TableKind, TransformTable};
